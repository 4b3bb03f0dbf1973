#include "dihedral/symmetry.hpp"
#include "dihedral/tensor_construction.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace dihedral;

namespace {

SparseMatrix block(const SignedMap& f, int n) { return f.block_or_zero({n, 0}); }

SparseMatrix power(const SparseMatrix& a, int e) {
  SparseMatrix out = SparseMatrix::identity(a.ring(), a.rows());
  for (int i = 0; i < e; ++i) out = compose(a, out);
  return out;
}

}  // namespace

TEST_CASE("norm operator expands as 1 - t + t^2 - t^3 at n = 3") {
  auto p = testing::fixture("dual_numbers");
  auto B = build_tensor_module(p.algebra, 3);
  auto ops = build_operators(*B.structure);
  SparseMatrix t = block(B.structure->t(), 3);
  SparseMatrix expect = subtract(add(SparseMatrix::identity(t.ring(), t.rows()), power(t, 2)),
                                 add(t, power(t, 3)));
  CHECK(block(ops.N, 3) == expect);
  CHECK(block(ops.T, 3) == t.negated());
}

TEST_CASE("T, N and R against the classical operators") {
  for (const char* name : {"dual_numbers", "matrices"}) {
    auto p = testing::fixture(name);
    testing::ClassicalOracle oracle(p.algebra);
    for (int rho : {1, -1}) {
      auto B = build_tensor_module(p.algebra, 3, rho);
      auto ops = build_operators(*B.structure);
      for (int n = 0; n <= 3; ++n) {
        CHECK(block(ops.T, n).to_dense() == oracle.T(n));
        CHECK(block(ops.R, n).to_dense() == oracle.R(n, rho));
      }
    }
  }
}

TEST_CASE("worked identities for i = 2, n = 3") {
  for (const char* name : {"dual_numbers", "ainf3"}) {
    auto p = testing::fixture(name);
    auto B = build_tensor_module(p.algebra, 5);
    auto ops = build_operators(*B.structure);
    auto d0 = dq_differentials(*B.faces, 0).component(2);
    auto d1 = dq_differentials(*B.faces, 1).component(2);
    SignedMap omt3 = restrict_to_n(ops.one_minus_T, 3);
    SignedMap omt1 = restrict_to_n(ops.one_minus_T, 1);
    SignedMap n3 = restrict_to_n(ops.N, 3);
    SignedMap n1 = restrict_to_n(ops.N, 1);
    SignedMap d0_3 = restrict_to_n(d0, 3), d1_3 = restrict_to_n(d1, 3);
    CHECK(map_equal(map_compose(d0, omt3), map_compose(omt1, d1_3)));
    CHECK(map_equal(map_compose(d1, n3), map_compose(n1, d0_3)));
    if (std::string(name) == "ainf3") CHECK_FALSE(map_compose(d0, omt3).is_zero());
  }
}

TEST_CASE("dihedral relations on every fixture") {
  for (const auto& name : testing::all_fixtures()) {
    CAPTURE(name);
    auto p = testing::fixture(name);
    auto B = build_tensor_module(p.algebra, 4);
    CHECK(B.structure->check(&B.d).passed());
    CHECK(validate_df_relations(*B.faces, *B.structure).passed());
    auto ops = build_operators(*B.structure);
    auto d0 = dq_differentials(*B.faces, 0), d1 = dq_differentials(*B.faces, 1);
    CHECK(validate_interchange(ops, d0, d1).passed());
    CHECK(validate_barred(build_barred(ops, d0, d1)).passed());
  }
}

TEST_CASE("prefactor mutations break the interchange relations") {
  auto p = testing::fixture("dual_numbers");
  auto B = build_tensor_module(p.algebra, 4);
  auto d0 = dq_differentials(*B.faces, 0), d1 = dq_differentials(*B.faces, 1);
  SignConventions c;
  c.t_prefactor = false;
  CHECK_FALSE(validate_interchange(build_operators(*B.structure, c), d0, d1).passed());
  c = {};
  c.r_prefactor = false;
  CHECK_FALSE(validate_interchange(build_operators(*B.structure, c), d0, d1).passed());
}

TEST_CASE("structure errors") {
  auto p = testing::fixture("dual_numbers");
  auto B = build_tensor_module(p.algebra, 2);
  SignedMap twice = map_scale(mpq_class(2), SignedMap::identity(B.module));
  DihedralStructure bad(B.module, twice, std::nullopt);
  CHECK_FALSE(bad.check().passed());
  CHECK_THROWS_AS(build_operators(bad), StructureInvalid);
  DihedralStructure cyclic_only(B.module, B.structure->t(), std::nullopt);
  CHECK_THROWS_AS(cyclic_only.r(), MissingReflection);
  CHECK_THROWS_AS(validate_df_relations(*B.faces, cyclic_only), MissingReflection);
  CHECK(validate_df_relations(*B.faces, cyclic_only, {true, false}).passed());
  SignedMap shifted(B.module, B.module, {0, 1});
  CHECK_THROWS_AS(DihedralStructure(B.module, shifted, std::nullopt), BidegreeMismatch);
}
