#include "doctest.h"
#include "support.hpp"

using namespace dihedral;

namespace {

const char* kDual = R"(name dual
ring Q
rho +1
truncation 0
generators
  e 0
  x 0
pi 0
  e e -> e
  e x -> x
  x e -> x
  x x -> 0
tau 0 [ 0 ]
  -> e
)";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("parse dual numbers") {
  auto p = parse_algebra_string(kDual);
  CHECK(p.algebra.name == "dual");
  CHECK(p.algebra.dim() == 2);
  CHECK(p.algebra.rho == 1);
  CHECK(p.algebra.truncation == 0);
  REQUIRE(p.algebra.pi_map(0));
  // x x -> 0 is read and dropped
  CHECK(p.algebra.pi_map(0)->table.size() == 3);
  CHECK(p.algebra.pi_map(0)->arity == 2);
  REQUIRE(p.hu);
  CHECK(p.hu->tau_kk(0).table.size() == 1);
  CHECK(p.algebra.star(1) == Combination{{1, 1}});
}

TEST_CASE("coefficients, comments and rings") {
  auto text = replace(kDual, "  e x -> x", "  e x -> 2*x - 1/2*x  # three halves");
  auto p = parse_algebra_string(text);
  CHECK(p.algebra.pi_map(0)->table.at({0, 1}) == Combination{{1, mpq_class(3, 2)}});
  auto z = parse_algebra_string(replace(kDual, "ring Q", "ring Z"));
  CHECK(z.algebra.ring == RingSpec::integers());
  auto f = parse_algebra_string(replace(kDual, "ring Q", "ring Fp:3"));
  CHECK(f.algebra.ring == RingSpec::prime_field(3));
  CHECK_THROWS_AS(parse_algebra_string(replace(kDual, "ring Q", "ring Fp:4")), SemanticError);
}

TEST_CASE("hu block of the exterior fixture") {
  auto p = testing::fixture("hu_exterior");
  REQUIRE(p.hu);
  CHECK(p.hu->find({1, {0}}) != nullptr);
  CHECK(p.hu->find({1, {1}}) != nullptr);
  CHECK(p.hu->tau_kk(1).table.size() == 2);
  CHECK(p.algebra.differential.at(p.algebra.index_of("h")) == Combination{{p.algebra.index_of("x"), 1}});
}

TEST_CASE("degree violations are semantic errors naming the entry") {
  auto a3 = serialize_algebra(testing::fixture("ainf3").algebra);
  auto bad = replace(a3, "a a a -> c", "a a a -> a");
  try {
    parse_algebra_string(bad);
    FAIL("accepted a degree-violating pi_1");
  } catch (const SemanticError& e) {
    std::string w = e.what();
    CHECK(w.find("pi 1") != std::string::npos);
    CHECK(w.find("a|a|a -> a") != std::string::npos);
  }
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_algebra_string(replace(kDual, "  e x -> x", "  e x => x"));
    FAIL("accepted '=>'");
  } catch (const ParseError& e) {
    CHECK(e.line() == 10);
    CHECK(e.column() >= 5);
  }
  CHECK_THROWS_AS(parse_algebra_string(replace(kDual, "  x 0\n", "  x zero\n")), ParseError);
  CHECK_THROWS_AS(parse_algebra_string(""), ParseError);
  CHECK_THROWS_AS(parse_algebra_string(replace(kDual, "  x x -> 0", "  x y -> 0")), SemanticError);
  CHECK_THROWS_AS(parse_algebra_string(replace(kDual, "  x 0\n", "  x 0\n  e 1\n")), SemanticError);
  CHECK_THROWS_AS(parse_algebra_file("/nonexistent/none.alg"), ParseError);
}

TEST_CASE("round trip on every fixture") {
  for (const auto& name : testing::all_fixtures()) {
    CAPTURE(name);
    auto p = testing::fixture(name);
    std::string text = serialize_algebra(p.algebra, p.hu ? &*p.hu : nullptr);
    auto q = parse_algebra_string(text);
    CHECK(q.algebra == p.algebra);
    REQUIRE(q.hu.has_value() == p.hu.has_value());
    if (p.hu) CHECK(*q.hu == *p.hu);
    CHECK(serialize_algebra(q.algebra, q.hu ? &*q.hu : nullptr) == text);
  }
}
