#include <random>

#include "dihedral/graded.hpp"
#include "doctest.h"

using namespace dihedral;

namespace {

const RingSpec Q = RingSpec::rationals();

ModulePtr small_module() {
  auto m = std::make_shared<BigradedModule>(Q);
  m->add_piece({0, 0}, {"a", "b"});
  m->add_piece({1, 0}, {"c"});
  m->add_piece({1, 1}, {"e", "f", "g"});
  m->add_piece({2, 0}, {"h", "i"});
  return m;
}

SignedMap random_map(std::mt19937& rng, const ModulePtr& m, Bidegree shift) {
  std::uniform_int_distribution<int> v(-2, 2);
  SignedMap f(m, m, shift);
  for (auto d : m->degrees()) {
    std::size_t r = m->dim(d + shift), c = m->dim(d);
    if (!r) continue;
    std::vector<std::vector<long>> dense(r, std::vector<long>(c));
    for (auto& row : dense)
      for (auto& x : row) x = v(rng);
    f.set_block(d, SparseMatrix::from_dense(Q, dense));
  }
  return f;
}

}  // namespace

TEST_CASE("bigraded module bookkeeping") {
  auto m = small_module();
  CHECK(m->dim({1, 1}) == 3);
  CHECK(m->dim({5, 5}) == 0);
  CHECK(m->index_of({1, 1}, "f") == 1u);
  CHECK_FALSE(m->index_of({1, 1}, "a").has_value());
  CHECK(m->max_n() == 2);
  CHECK(m->max_total() == 2);
  CHECK(m->basis().size() == 8);
  auto bad = std::make_shared<BigradedModule>(Q);
  CHECK_THROWS(bad->add_piece({0, 0}, {"x", "x"}));
}

TEST_CASE("signed maps: shapes, composition and identities") {
  auto m = small_module();
  SignedMap f(m, m, {1, 0});
  CHECK_THROWS_AS(f.set_block({0, 0}, SparseMatrix(Q, 2, 2)), ShapeMismatch);
  f.set_block({0, 0}, SparseMatrix::from_dense(Q, {{1, 2}}));
  CHECK(f.nnz() == 2);
  SignedMap id = SignedMap::identity(m);
  CHECK(map_equal(map_compose(f, id), f));
  CHECK(map_equal(map_compose(id, f), f));
  SignedMap z(m, m, {1, 0});
  z.set_block({0, 0}, SparseMatrix(Q, 1, 2));
  CHECK(z.is_zero());
  SignedMap g(m, m, {0, 1});
  CHECK_THROWS_AS(map_equal(f, g), BidegreeMismatch);
  auto other = small_module();
  CHECK(same_module(m, other));
}

TEST_CASE("randomized: algebra of signed maps") {
  std::mt19937 rng(11);
  auto m = small_module();
  for (int trial = 0; trial < 20; ++trial) {
    SignedMap f = random_map(rng, m, {1, 0});
    SignedMap g = random_map(rng, m, {0, 0});
    SignedMap h = random_map(rng, m, {0, 0});
    CHECK(map_equal(map_compose(map_compose(f, g), h), map_compose(f, map_compose(g, h))));
    CHECK(map_equal(map_add(g, h), map_add(h, g)));
    CHECK(map_equal(map_scale(mpq_class(3), map_add(g, h)),
                    map_add(map_scale(mpq_class(3), g), map_scale(mpq_class(3), h))));
    CHECK(map_equal(map_transpose(map_transpose(f)), f));
    CHECK(map_subtract(g, g).is_zero());
  }
}

TEST_CASE("graded commutator of a chain map vanishes") {
  auto m = std::make_shared<BigradedModule>(Q);
  m->add_piece({0, 0}, {"x"});
  m->add_piece({0, 1}, {"y"});
  SignedMap d(m, m, {0, -1});
  d.set_block({0, 1}, SparseMatrix::from_dense(Q, {{1}}));
  SignedMap f = map_scale(mpq_class(5), SignedMap::identity(m));
  CHECK(graded_commutator_check(d, f, 1).is_zero());
  CHECK_FALSE(graded_commutator_check(d, f, -1).is_zero());
}
