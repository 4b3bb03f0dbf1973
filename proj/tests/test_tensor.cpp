#include "dihedral/tensor_construction.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace dihedral;

namespace {

std::uint32_t at(const TensorModuleBundle& B, Bidegree deg, const std::string& label) {
  auto i = B.module->index_of(deg, label);
  REQUIRE(i.has_value());
  return *i;
}

}  // namespace

TEST_CASE("ground field: rank-one pieces and trivial rotation") {
  auto p = testing::fixture("ground_field");
  auto B = build_tensor_module(p.algebra, 5);
  for (int n = 0; n <= 5; ++n) {
    CHECK(B.module->dim({n, 0}) == 1);
    CHECK(B.structure->t().block_or_zero({n, 0}) == SparseMatrix::identity(B.module->ring(), 1));
  }
}

TEST_CASE("dual numbers at n = 1") {
  auto p = testing::fixture("dual_numbers");
  auto B = build_tensor_module(p.algebra, 2);
  CHECK(B.module->labels({1, 0}) == std::vector<std::string>{"e|e", "e|x", "x|e", "x|x"});
  SparseMatrix t = B.structure->t().block_or_zero({1, 0});
  CHECK(t == SparseMatrix::from_dense(B.module->ring(), {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
}

TEST_CASE("odd generator: t_1(h|h) = -h|h") {
  auto p = testing::fixture("hu_exterior");
  auto B = build_tensor_module(p.algebra, 3);
  auto i = at(B, {1, 2}, "h|h");
  CHECK(B.structure->t().block_or_zero({1, 2}).at(i, i) == -1);
}

TEST_CASE("faces against the classical Hochschild faces") {
  for (const char* name : {"dual_numbers", "matrices"}) {
    auto p = testing::fixture(name);
    testing::ClassicalOracle oracle(p.algebra);
    auto B = build_tensor_module(p.algebra, 3);
    auto d0 = dq_differentials(*B.faces, 0).component(1);
    auto d1 = dq_differentials(*B.faces, 1).component(1);
    // the face sign (-1)^{k(p-1)} is -1 at k = 1, p = 0
    for (int n = 1; n <= 3; ++n) {
      CHECK(d0.block_or_zero({n, 0}).to_dense() == testing::negate(oracle.b(n, true)));
      CHECK(d1.block_or_zero({n, 0}).to_dense() == testing::negate(oracle.b(n, false)));
    }
  }
}

TEST_CASE("face shapes") {
  auto p = testing::fixture("ainf3");
  auto B = build_tensor_module(p.algebra, 4);
  // non-consecutive, non-wrapping tuple
  CHECK(B.faces->face(3, {0, 2}) == nullptr);
  // consecutive and wrap-around k = 2 tuples at n = 3
  for (FaceIndex idx : {FaceIndex{0, 1}, FaceIndex{1, 2}, FaceIndex{2, 3}, FaceIndex{0, 3}})
    CHECK(B.faces->face(3, idx) != nullptr);
  // the wrap tuple (n-k+1..n) comes from the q = k branch
  SignedMap first = *B.faces->face(3, {0, 1});
  SignedMap t = restrict_to_n(B.structure->t(), 3);
  SignedMap expect = map_scale(mpq_class(1), map_compose(first, map_compose(t, t)));
  CHECK(map_equal(*B.faces->face(3, {2, 3}), expect));
  // (0, n) is the q = 1 wrap: sign (-1)^{1*(2-1)}
  CHECK(map_equal(*B.faces->face(3, {0, 3}), map_scale(mpq_class(-1), map_compose(first, t))));
  // pi_1 with sign (-1)^{k(p-1)} = +1 at k = 2, p = 0
  auto aaaa = at(B, {3, 0}, "a|a|a|a");
  auto ca = at(B, {1, 1}, "c|a");
  CHECK(first.block_or_zero({3, 0}).at(ca, aaaa) == 1);
}

TEST_CASE("rho only changes r, by a global sign") {
  auto p = testing::fixture("ainf3");
  auto plus = build_tensor_module(p.algebra, 3, 1);
  auto minus = build_tensor_module(p.algebra, 3, -1);
  CHECK(map_equal(plus.structure->t(), minus.structure->t()));
  CHECK(map_equal(plus.d, minus.d));
  CHECK(map_equal(plus.structure->r(), map_scale(mpq_class(-1), minus.structure->r())));
  for (const auto& [key, f] : plus.faces->faces()) CHECK(map_equal(f, *minus.faces->face(key.first, key.second)));
  CHECK_THROWS_AS(build_tensor_module(p.algebra, 3, 2), SemanticError);
}

TEST_CASE("s maps: unit insertion and s^0 = -tau_1^1 on A") {
  auto p = testing::fixture("hu_exterior");
  auto B = build_tensor_module(p.algebra, 3);
  auto s = build_s_maps(B, *p.hu);
  REQUIRE(s.size() == 5);
  // s^{-1} on X_{0,0}: eps = -0 + 0 + 0 + 1, so a -> -(a|(u + x))
  SparseMatrix sm1 = s[0].block_or_zero({0, 0});
  auto u = at(B, {0, 0}, "u");
  CHECK(sm1.at(at(B, {1, 0}, "u|u"), u) == -1);
  CHECK(sm1.at(at(B, {1, 0}, "u|x"), u) == -1);
  // k = 1, n = 0, p = 0: eps = 1
  SparseMatrix s0 = s[1].block_or_zero({0, 0});
  CHECK(s0.at(at(B, {0, 1}, "h"), u) == -1);
  CHECK(validate_contracting(B, s).passed());

  auto strict = testing::fixture("dual_numbers");
  auto Bs = build_tensor_module(strict.algebra, 3);
  auto ss = build_s_maps(Bs, *strict.hu);
  for (std::size_t k = 1; k < ss.size(); ++k) CHECK(ss[k].is_zero());
  CHECK(validate_contracting(Bs, ss).passed());
}

TEST_CASE("contracting homotopy on every hu fixture and under the epsilon mutation") {
  for (const auto& name : testing::all_fixtures()) {
    CAPTURE(name);
    auto p = testing::fixture(name);
    auto B = build_tensor_module(p.algebra, 4);
    CHECK(validate_contracting(B, build_s_maps(B, *p.hu)).passed());
    SignConventions c;
    c.s_epsilon = false;
    auto Bm = build_tensor_module(p.algebra, 4, 0, c);
    auto rep = validate_contracting(Bm, build_s_maps(Bm, *p.hu));
    CHECK_FALSE(rep.passed());
  }
}

TEST_CASE("missing homotopy unit") {
  auto p = testing::fixture("dual_numbers");
  auto B = build_tensor_module(p.algebra, 2);
  CHECK_THROWS_AS(build_s_maps(B, HuStructureDesc{}), MissingTau);
}
