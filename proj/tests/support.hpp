#pragma once

#include <string>
#include <vector>

#include "dihedral/io.hpp"
#include "dihedral/linalg.hpp"

#ifndef DIHEDRAL_FIXTURE_DIR
#error "DIHEDRAL_FIXTURE_DIR must be defined"
#endif

namespace testing {

using namespace dihedral;
using Dense = std::vector<std::vector<mpq_class>>;

inline ParsedAlgebra fixture(const std::string& name) {
  return parse_algebra_file(std::string(DIHEDRAL_FIXTURE_DIR) + "/" + name + ".alg");
}

inline const std::vector<std::string>& all_fixtures() {
  static const std::vector<std::string> names{"ground_field", "dual_numbers", "matrices", "ainf3",
                                              "hu_exterior"};
  return names;
}

// Plain Gaussian elimination on a dense copy, rows x cols.
inline std::size_t dense_rank(Dense a, const RingSpec& ring = RingSpec::rationals()) {
  const bool modp = ring.kind() == RingSpec::Kind::prime_field;
  const mpz_class p = static_cast<unsigned long>(ring.modulus());
  auto red = [&](mpq_class x) {
    if (!modp) return x;
    mpz_class num = x.get_num() % p, den = x.get_den() % p, inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    mpz_class r = (num * inv) % p;
    if (r < 0) r += p;
    return mpq_class(r);
  };
  for (auto& row : a)
    for (auto& x : row) x = red(x);
  std::size_t r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      if (modp) f = red(f);
      for (std::size_t j = c; j < cols; ++j) a[i][j] = red(a[i][j] - f * a[r][j]);
    }
    ++r;
  }
  return r;
}

inline Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<mpq_class>(c, 0)); }

inline Dense to_dense(const SparseMatrix& m) { return m.to_dense(); }

inline Dense dense_mul(const Dense& a, const Dense& b) {
  std::size_t r = a.size(), k = b.size(), c = k ? b[0].size() : 0;
  Dense out = zeros(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
  return out;
}

// Classical Hochschild operators of an associative algebra concentrated in
// degree 0, on A^{⊗(n+1)} with lexicographic tuple order.
class ClassicalOracle {
 public:
  explicit ClassicalOracle(const AInfAlgebraDesc& a) : a_(a), d_(a.dim()) {
    const auto* mult = a.pi_map(0);
    for (const auto& [in, out] : mult->table) mult_[{in[0], in[1]}] = out;
  }

  std::size_t dim(int n) const {
    std::size_t s = 1;
    for (int i = 0; i <= n; ++i) s *= d_;
    return s;
  }

  // sum_{i=0}^{n-1} (-1)^i d_i, plus (-1)^n d_n when cyclic
  Dense b(int n, bool cyclic) const {
    Dense m = zeros(dim(n - 1), dim(n));
    for (std::size_t c = 0; c < dim(n); ++c) {
      auto t = decode(n, c);
      for (int i = 0; i < n; ++i)
        for (const auto& [g, x] : product(t[i], t[i + 1])) {
          std::vector<int> v(t.begin(), t.begin() + i);
          v.push_back(g);
          v.insert(v.end(), t.begin() + i + 2, t.end());
          m[encode(v)][c] += (i % 2 ? -x : x);
        }
      if (cyclic)
        for (const auto& [g, x] : product(t[n], t[0])) {
          std::vector<int> v{g};
          v.insert(v.end(), t.begin() + 1, t.begin() + n);
          m[encode(v)][c] += (n % 2 ? -x : x);
        }
    }
    return m;
  }

  // (-1)^n times the cyclic shift a_n a_0 ... a_{n-1}
  Dense T(int n) const {
    Dense m = zeros(dim(n), dim(n));
    for (std::size_t c = 0; c < dim(n); ++c) {
      auto t = decode(n, c);
      std::vector<int> v{t[n]};
      v.insert(v.end(), t.begin(), t.begin() + n);
      m[encode(v)][c] = n % 2 ? -1 : 1;
    }
    return m;
  }

  // rho (-1)^{n(n+1)/2} a_0* a_n* ... a_1*
  Dense R(int n, int rho) const {
    Dense m = zeros(dim(n), dim(n));
    int s = rho * ((n * (n + 1) / 2) % 2 ? -1 : 1);
    for (std::size_t c = 0; c < dim(n); ++c) {
      auto t = decode(n, c);
      std::vector<std::pair<std::vector<int>, mpq_class>> acc{{{}, mpq_class(s)}};
      std::vector<int> order{0};
      for (int i = n; i >= 1; --i) order.push_back(i);
      for (int i : order) {
        decltype(acc) next;
        for (const auto& [pre, x] : acc)
          for (const auto& [g, y] : a_.star(t[i])) {
            auto v = pre;
            v.push_back(g);
            next.emplace_back(v, x * y);
          }
        acc = next;
      }
      for (const auto& [v, x] : acc) m[encode(v)][c] += x;
    }
    return m;
  }

  std::vector<int> decode(int n, std::size_t c) const {
    std::vector<int> t(n + 1);
    for (int i = n; i >= 0; --i) {
      t[i] = static_cast<int>(c % d_);
      c /= d_;
    }
    return t;
  }
  std::size_t encode(const std::vector<int>& t) const {
    std::size_t c = 0;
    for (int g : t) c = c * d_ + g;
    return c;
  }

 private:
  Combination product(int x, int y) const {
    auto it = mult_.find({x, y});
    return it == mult_.end() ? Combination{} : it->second;
  }
  const AInfAlgebraDesc& a_;
  std::size_t d_;
  std::map<std::pair<int, int>, Combination> mult_;
};

inline Dense negate(Dense a) {
  for (auto& r : a)
    for (auto& x : r) x = -x;
  return a;
}

inline Dense identity(std::size_t n) {
  Dense m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Dense dense_add(Dense a, const Dense& b, int s = 1) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] += s * b[i][j];
  return a;
}

}  // namespace testing
