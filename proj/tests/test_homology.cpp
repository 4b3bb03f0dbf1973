#include <algorithm>
#include <numeric>

#include "dihedral/homology.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace dihedral;
using testing::Dense;

namespace {

const RingSpec Q = RingSpec::rationals();
const RingSpec Z = RingSpec::integers();

std::vector<std::size_t> betti_of(const HomologyResult& r) { return r.betti(); }

// Betti numbers of the classical cyclic bicomplex of an ungraded algebra,
// assembled densely and ranked by plain elimination.
std::vector<std::size_t> oracle_hc(const AInfAlgebraDesc& a, int top, int hi) {
  testing::ClassicalOracle o(a);
  auto cells = [&](int N) {
    std::vector<std::pair<int, int>> out;
    for (int n = 0; n <= N; ++n) out.push_back({n, N - n});
    return out;
  };
  auto diff = [&](int N) -> Dense {
    if (N == 0 || N > top) return {};
    auto src = cells(N), tgt = cells(N - 1);
    std::size_t R = 0, C = 0;
    for (auto [n, m] : tgt) R += o.dim(n);
    for (auto [n, m] : src) C += o.dim(n);
    Dense out = testing::zeros(R, C);
    std::size_t co = 0;
    for (auto [n, m] : src) {
      std::size_t ro = 0;
      for (auto [n2, m2] : tgt) {
        Dense blk;
        // classical conventions: b and -b' columns, 1 - t and N rows
        if (n2 == n - 1 && m2 == m) blk = m % 2 ? testing::negate(o.b(n, false)) : o.b(n, true);
        if (n2 == n && m2 == m - 1) {
          Dense T = o.T(n), p = testing::identity(T.size()), acc = p;
          if (m % 2) {
            blk = testing::dense_add(acc, T, -1);
          } else {
            for (int i = 1; i <= n; ++i) acc = testing::dense_add(acc, p = testing::dense_mul(T, p));
            blk = acc;
          }
        }
        for (std::size_t i = 0; i < blk.size(); ++i)
          for (std::size_t j = 0; j < blk[i].size(); ++j) out[ro + i][co + j] = blk[i][j];
        ro += o.dim(n2);
      }
      co += o.dim(n);
    }
    return out;
  };
  std::vector<std::size_t> out;
  for (int N = 0; N <= hi; ++N) {
    std::size_t dim = 0;
    for (auto [n, m] : cells(N)) dim += o.dim(n);
    out.push_back(dim - testing::dense_rank(diff(N)) - testing::dense_rank(diff(N + 1)));
  }
  return out;
}

// Same algebra with the generators listed in another order.
AInfAlgebraDesc permuted(const AInfAlgebraDesc& a, const std::vector<int>& perm) {
  AInfAlgebraDesc b = a;
  auto map_combo = [&](const Combination& c) {
    Combination out;
    for (const auto& [g, x] : c) out.push_back({perm[g], x});
    std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    return out;
  };
  for (std::size_t g = 0; g < a.dim(); ++g) b.generators[perm[g]] = a.generators[g];
  b.differential.clear();
  for (const auto& [g, c] : a.differential) b.differential[perm[g]] = map_combo(c);
  b.involution.clear();
  for (const auto& [g, c] : a.involution) b.involution[perm[g]] = map_combo(c);
  for (auto& [n, f] : b.pi) {
    f.table.clear();
    for (const auto& [in, c] : a.pi.at(n).table) {
      std::vector<int> k;
      for (int g : in) k.push_back(perm[g]);
      f.table[k] = map_combo(c);
    }
  }
  return b;
}

ChainComplex small(const RingSpec& ring, std::vector<std::size_t> dims,
                   std::vector<std::vector<std::vector<long>>> d, int window) {
  std::vector<SparseMatrix> diffs{SparseMatrix(ring, 0, dims[0])};
  for (std::size_t N = 1; N < dims.size(); ++N)
    diffs.push_back(d[N - 1].empty() ? SparseMatrix(ring, dims[N - 1], dims[N])
                                     : SparseMatrix::from_dense(ring, d[N - 1]));
  return ChainComplex("small", ring, dims, diffs, window);
}

}  // namespace

TEST_CASE("elementary complexes") {
  auto zero = small(Q, {0, 0, 0}, {{}, {}}, 1);
  CHECK(betti_of(homology(zero)) == std::vector<std::size_t>{0, 0});

  auto twice = small(Z, {1, 1, 0}, {{{2}}, {}}, 1);
  auto h = homology(twice);
  CHECK(h.degrees[0].betti == 0);
  CHECK(h.degrees[0].torsion == std::vector<mpz_class>{2});
  CHECK(h.degrees[1].betti == 0);
  CHECK(h.degrees[1].torsion.empty());
  CHECK(betti_of(homology(twice.with_ring(RingSpec::prime_field(2)))) == std::vector<std::size_t>{1, 1});
  CHECK(betti_of(homology(twice.with_ring(Q))) == std::vector<std::size_t>{0, 0});

  CHECK_THROWS_AS(homology(twice, Q), RingMismatch);
  CHECK_THROWS_AS(homology(twice, 2), WindowExceeded);
}

TEST_CASE("cyclic homology of the ground field") {
  auto k = testing::fixture("ground_field").algebra;
  CHECK(betti_of(cyclic_homology(k, 5, Q)) == std::vector<std::size_t>{1, 0, 1, 0, 1});
  auto hz = cyclic_homology(k, 5, Z);
  CHECK(betti_of(hz) == std::vector<std::size_t>{1, 0, 1, 0, 1});
  for (const auto& d : hz.degrees) CHECK(d.torsion.empty());
  CHECK(betti_of(cyclic_homology(k, 5, RingSpec::prime_field(2))) == std::vector<std::size_t>{1, 0, 1, 0, 1});
  // matrices are Morita equivalent to the ground field
  auto m = testing::fixture("matrices").algebra;
  CHECK(betti_of(cyclic_homology(m, 5, Q)) == std::vector<std::size_t>{1, 0, 1, 0, 1});
}

TEST_CASE("cyclic homology against the classical bicomplex") {
  for (const char* name : {"ground_field", "dual_numbers", "matrices"}) {
    CAPTURE(name);
    auto a = testing::fixture(name).algebra;
    CHECK(betti_of(cyclic_homology(a, 4, Q)) == oracle_hc(a, 4, 3));
  }
}

TEST_CASE("reflexive homology of the ground field over Z, Q and F_2") {
  // the columns leave only n = 0, where the rows alternate 0 and 2
  auto k = testing::fixture("ground_field").algebra;
  auto hz = reflexive_homology(k, 1, 5, Z);
  CHECK(betti_of(hz) == std::vector<std::size_t>{1, 0, 0, 0, 0});
  CHECK(hz.degrees[1].torsion == std::vector<mpz_class>{2});
  CHECK(hz.degrees[2].torsion.empty());
  CHECK(hz.degrees[3].torsion == std::vector<mpz_class>{2});
  CHECK(betti_of(reflexive_homology(k, 1, 5, Q)) == std::vector<std::size_t>{1, 0, 0, 0, 0});
  auto h2 = reflexive_homology(k, 1, 5, RingSpec::prime_field(2));
  CHECK(betti_of(h2) == std::vector<std::size_t>{1, 1, 1, 1, 1});
  CHECK_FALSE(h2.notes.empty());
}

TEST_CASE("truncated Euler characteristic") {
  for (const auto& name : testing::all_fixtures()) {
    CAPTURE(name);
    auto a = testing::fixture(name).algebra;
    auto d = prepare(a, 1, 4, Q);
    for (const ChainComplex& c : {build_cyclic_bicomplex(d).total(), build_dihedral_triple(d).total()}) {
      auto h = homology(c);
      const int w = c.window_hi();
      long chain = 0, betti = 0;
      for (int N = 0; N <= w; ++N) {
        long s = N % 2 ? -1 : 1;
        chain += s * static_cast<long>(c.dim(N));
        betti += s * static_cast<long>(h.degrees[N].betti);
      }
      long edge = static_cast<long>(testing::dense_rank(c.differential(w + 1).to_dense()));
      CHECK(chain == betti + (w % 2 ? -1 : 1) * edge);
    }
  }
}

TEST_CASE("betti numbers over Q never exceed those over F_p") {
  for (const auto& name : testing::all_fixtures()) {
    CAPTURE(name);
    auto a = testing::fixture(name).algebra;
    for (std::uint64_t p : {2, 3}) {
      auto q = dihedral_homology(a, 1, 4, Q).betti();
      auto f = dihedral_homology(a, 1, 4, RingSpec::prime_field(p)).betti();
      for (std::size_t i = 0; i < q.size(); ++i) CHECK(q[i] <= f[i]);
    }
  }
}

TEST_CASE("generator order does not matter") {
  auto m = testing::fixture("matrices").algebra;
  auto pm = permuted(m, {2, 0, 3, 1});
  CHECK(validate_ainf(pm).passed());
  CHECK(cyclic_homology(pm, 4, Q).betti() == cyclic_homology(m, 4, Q).betti());
  for (int rho : {1, -1}) {
    CHECK(dihedral_homology(pm, rho, 4, Q).betti() == dihedral_homology(m, rho, 4, Q).betti());
    CHECK(reflexive_homology(pm, rho, 4, Q).betti() == reflexive_homology(m, rho, 4, Q).betti());
  }
  auto a3 = testing::fixture("ainf3").algebra;
  auto p3 = permuted(a3, {1, 2, 0});
  CHECK(dihedral_homology(p3, -1, 4, Q).betti() == dihedral_homology(a3, -1, 4, Q).betti());
}

TEST_CASE("homology bases and induced maps") {
  auto k = testing::fixture("ground_field").algebra;
  auto c = build_cyclic_bicomplex(prepare(k, 1, 5, Q)).total();
  HomologyBasis b2(c, 2);
  REQUIRE(b2.dim() == 1);
  auto self = b2.coordinates(b2.representatives()[0]);
  REQUIRE(self.size() == 1);
  CHECK(self[0].index == 0);
  CHECK(self[0].value == 1);
  // boundaries have zero class
  auto bd = multiply(c.differential(3), SparseVector{{0, 1}});
  CHECK(b2.coordinates(bd).empty());
  // (2,0) alone is not a cycle: b_2 = -1
  CHECK_THROWS_AS(b2.coordinates(SparseVector{{2, 1}}), SemanticError);
  auto id = SparseMatrix::identity(Q, c.dim(2));
  CHECK(induced_map(b2, b2, id) == SparseMatrix::identity(Q, 1));
  CHECK(induced_map(b2, b2, id.negated()) == SparseMatrix::identity(Q, 1).negated());
  CHECK_THROWS_AS(HomologyBasis(c.with_ring(Z), 2), NotAField);
  CHECK_THROWS_AS(HomologyBasis(c, 5), WindowExceeded);
}

TEST_CASE("long exact sequence on small fixtures") {
  for (const char* name : {"ground_field", "dual_numbers", "hu_exterior"})
    for (int rho : {1, -1}) {
      CAPTURE(name);
      CAPTURE(rho);
      auto p = testing::fixture(name);
      LESReport rep = verify_les(p.algebra, *p.hu, rho, 4, Q);
      CHECK(rep.chain_level.passed());
      CHECK(rep.exact());
      CHECK(rep.alpha_isomorphism());
      CHECK(rep.q_acyclic());
      CHECK(rep.nodes.size() == 3 * 3 - 2);
    }
  auto p = testing::fixture("dual_numbers");
  CHECK_THROWS_AS(verify_les(p.algebra, *p.hu, 1, 4, Z), NotAField);
  CHECK_THROWS_AS(verify_les(p.algebra, *p.hu, 1, 3, Q, 2), WindowExceeded);
}
