#include "dihedral/ainfinity.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace dihedral;

namespace {

bool has_note(const ValidationReport& r, const std::string& s) {
  for (const auto& n : r.notes())
    if (n.find(s) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("A-infinity and involution relations hold on every fixture") {
  for (const auto& name : testing::all_fixtures()) {
    CAPTURE(name);
    auto p = testing::fixture(name);
    CHECK(validate_ainf(p.algebra).passed());
    CHECK(validate_involution(p.algebra).passed());
    REQUIRE(p.hu);
    CHECK(validate_hu(p.algebra, *p.hu).passed());
    CHECK(validate_involutive_hu(p.algebra, *p.hu).passed());
  }
}

TEST_CASE("a nonassociative product is rejected") {
  auto p = testing::parse_algebra_string(R"(
generators
  a 0
  b 0
pi 0
  a a -> a
  a b -> b
  b a -> a
)");
  CHECK_FALSE(validate_ainf(p.algebra).passed());
}

TEST_CASE("pi_1 without a matching unit law is rejected") {
  auto p = testing::fixture("ainf3");
  auto& pi0 = p.algebra.pi.at(0);
  pi0.table.erase({p.algebra.index_of("e"), p.algebra.index_of("c")});
  CHECK_FALSE(validate_ainf(p.algebra).passed());
}

TEST_CASE("the involution sign on the pi_1 fixture matters") {
  auto p = testing::fixture("ainf3");
  p.algebra.involution.clear();
  CHECK_FALSE(validate_involution(p.algebra).passed());
}

TEST_CASE("tensor powers: Koszul signs and the reversed involution") {
  auto p = testing::fixture("hu_exterior");
  TensorPowers tp(p.algebra);
  CHECK(tp.dim(2) == 16);
  int h = p.algebra.index_of("h");
  std::size_t hh = tp.encode({h, h});
  // reversing two odd factors costs a sign
  CHECK(tp.reverse_star(2).at(hh, hh) == -1);
  auto d = tp.differential(2);
  CHECK(compose(d, d).is_zero());
  CHECK(tp.degree({h, h}) == 2);
}

TEST_CASE("homotopy unit relations: the expanded tau_2^0 form") {
  auto p = testing::fixture("hu_exterior");
  TensorPowers tp(p.algebra);
  const auto& t10 = p.hu->tau.at({1, {0}});
  SparseMatrix pi0 = tp.map(p.algebra.pi.at(0));
  SparseMatrix a = compose(pi0, tp.extend(t10, 0, 1));
  SparseMatrix b = compose(tp.map(t10), pi0);
  // tau_2^0 = 0 here and pi_1 = 0, so d(tau_2^0) = 0 singles out the sign of tau_1^0 pi_0
  CHECK(subtract(a, b).is_zero());
  CHECK_FALSE(add(a, b).is_zero());
}

TEST_CASE("homotopy unit errors") {
  auto p = testing::fixture("hu_exterior");
  HuStructureDesc no_unit = *p.hu;
  no_unit.tau.erase({0, {0}});
  CHECK_THROWS_AS(no_unit.tau_kk(0), MissingTau);
  CHECK_THROWS_AS(validate_hu(p.algebra, no_unit), MissingTau);
  CHECK(no_unit.tau_kk(2).is_zero());

  HuStructureDesc lonely = *p.hu;
  lonely.tau.erase({1, {1}});
  CHECK_THROWS_AS(validate_involutive_hu(p.algebra, lonely), MissingPartner);
  CHECK_FALSE(validate_hu(p.algebra, lonely).passed());

  HuStructureDesc extra = *p.hu;
  MultilinearMap z;
  z.arity = 1;
  z.degree = 5;
  extra.tau[{3, {3, 2, 0}}] = z;
  auto rep = validate_hu(p.algebra, extra);
  CHECK(rep.passed());
  CHECK(has_note(rep, "UnsupportedSignature"));
}

TEST_CASE("consistency checks") {
  auto p = testing::fixture("dual_numbers");
  AInfAlgebraDesc a = p.algebra;
  a.generators[1].degree = -1;
  CHECK_THROWS_AS(a.check_consistency(), SemanticError);
  a = p.algebra;
  a.pi[1].arity = 2;
  CHECK_THROWS_AS(a.check_consistency(), SemanticError);
  a = p.algebra;
  a.rho = 3;
  CHECK_THROWS_AS(a.check_consistency(), SemanticError);
  CHECK(p.algebra.effective_order() == 0);
  CHECK(testing::fixture("ainf3").algebra.effective_order() == 1);
}
