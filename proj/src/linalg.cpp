#include "dihedral/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dihedral/detail/echelon.hpp"

namespace dihedral {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

RingSpec RingSpec::prime_field(std::uint64_t p) {
  if (!is_prime(p)) throw SemanticError("modulus " + std::to_string(p) + " is not prime");
  if (p >= (1ULL << 62)) throw SemanticError("modulus too large");
  return RingSpec(Kind::prime_field, p);
}

RingSpec RingSpec::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text == "Z") return integers();
  std::string_view digits;
  if (text.rfind("Fp:", 0) == 0)
    digits = text.substr(3);
  else if (text.rfind("F", 0) == 0)
    digits = text.substr(1);
  else
    throw SemanticError("unknown ring '" + std::string(text) + "'");
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
    throw SemanticError("bad modulus in '" + std::string(text) + "'");
  return prime_field(std::stoull(std::string(digits)));
}

std::string RingSpec::name() const {
  switch (kind_) {
    case Kind::rationals: return "Q";
    case Kind::integers: return "Z";
    case Kind::prime_field: return "Fp:" + std::to_string(p_);
  }
  return "?";
}

mpq_class RingSpec::canonical(const mpq_class& q) const {
  switch (kind_) {
    case Kind::rationals: return q;
    case Kind::integers:
      if (q.get_den() != 1) throw RingMismatch(q.get_str() + " is not an integer");
      return q;
    case Kind::prime_field: {
      mpz_class p(static_cast<unsigned long>(p_));
      mpz_class den = q.get_den() % p;
      if (den == 0) throw RingMismatch(q.get_str() + " has no image in " + name());
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
      mpz_class r = (q.get_num() * inv) % p;
      if (r < 0) r += p;
      return mpq_class(r);
    }
  }
  return q;
}

mpq_class RingSpec::add(const mpq_class& a, const mpq_class& b) const { return canonical(a + b); }
mpq_class RingSpec::sub(const mpq_class& a, const mpq_class& b) const { return canonical(a - b); }
mpq_class RingSpec::mul(const mpq_class& a, const mpq_class& b) const { return canonical(a * b); }

mpq_class RingSpec::inverse(const mpq_class& a) const {
  if (sgn(a) == 0) throw std::domain_error("inverse of zero");
  if (kind_ == Kind::integers) {
    if (a == 1 || a == -1) return a;
    throw NotAField(a.get_str() + " is not a unit in Z");
  }
  return canonical(1 / a);
}

namespace {
void same_ring(const RingSpec& a, const RingSpec& b) {
  if (!(a == b)) throw RingMismatch(a.name() + " vs " + b.name());
}
}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  same_ring(ring_, o.ring_);
  return Scalar(ring_, value_ + o.value_);
}
Scalar Scalar::operator-(const Scalar& o) const {
  same_ring(ring_, o.ring_);
  return Scalar(ring_, value_ - o.value_);
}
Scalar Scalar::operator*(const Scalar& o) const {
  same_ring(ring_, o.ring_);
  return Scalar(ring_, value_ * o.value_);
}
Scalar Scalar::operator/(const Scalar& o) const {
  same_ring(ring_, o.ring_);
  return Scalar(ring_, value_ * ring_.inverse(o.value_));
}
Scalar Scalar::operator-() const { return Scalar(ring_, -value_); }

// ---------------------------------------------------------------- matrices

SparseMatrix::SparseMatrix(RingSpec ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), columns_(cols) {}

SparseMatrix SparseMatrix::identity(RingSpec ring, std::size_t n) {
  SparseMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.columns_[i].push_back({static_cast<std::uint32_t>(i), mpq_class(1)});
  return m;
}

SparseMatrix SparseMatrix::from_triplets(RingSpec ring, std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> triplets) {
  SparseMatrix m(ring, rows, cols);
  std::vector<SparseVector> cols_raw(cols);
  for (auto& t : triplets) {
    if (t.row >= rows || t.col >= cols) throw ShapeMismatch("triplet out of range");
    cols_raw[t.col].push_back({t.row, std::move(t.value)});
  }
  for (std::size_t j = 0; j < cols; ++j) m.set_column(j, std::move(cols_raw[j]));
  return m;
}

SparseMatrix SparseMatrix::from_dense(RingSpec ring, const std::vector<std::vector<long>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows[0].size() : 0;
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ShapeMismatch("ragged dense matrix");
    for (std::size_t j = 0; j < c; ++j)
      if (rows[i][j] != 0)
        t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                     mpq_class(rows[i][j])});
  }
  return from_triplets(ring, r, c, std::move(t));
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

void SparseMatrix::set_column(std::size_t j, SparseVector col) {
  std::sort(col.begin(), col.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  SparseVector out;
  out.reserve(col.size());
  for (auto& e : col) {
    if (e.index >= rows_) throw ShapeMismatch("row index out of range");
    if (!out.empty() && out.back().index == e.index)
      out.back().value += e.value;
    else
      out.push_back(std::move(e));
  }
  SparseVector clean;
  clean.reserve(out.size());
  for (auto& e : out) {
    mpq_class v = ring_.canonical(e.value);
    if (sgn(v) != 0) clean.push_back({e.index, std::move(v)});
  }
  columns_[j] = std::move(clean);
}

mpq_class SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto& c = columns_[j];
  auto it = std::lower_bound(c.begin(), c.end(), i,
                             [](const Entry& e, std::size_t r) { return e.index < r; });
  if (it != c.end() && it->index == i) return it->value;
  return 0;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(ring_, cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (const auto& e : columns_[j])
      t.columns_[e.index].push_back({static_cast<std::uint32_t>(j), e.value});
  return t;
}

SparseMatrix SparseMatrix::with_ring(RingSpec ring) const {
  SparseMatrix m(ring, rows_, cols_);
  for (std::size_t j = 0; j < cols_; ++j) m.set_column(j, columns_[j]);
  return m;
}

SparseMatrix SparseMatrix::negated() const { return scale(mpq_class(-1), *this); }

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  for (std::size_t j = 0; j < cols_; ++j)
    for (const auto& e : columns_[j])
      out.push_back({e.index, static_cast<std::uint32_t>(j), e.value});
  return out;
}

std::vector<std::vector<mpq_class>> SparseMatrix::to_dense() const {
  std::vector<std::vector<mpq_class>> d(rows_, std::vector<mpq_class>(cols_));
  for (std::size_t j = 0; j < cols_; ++j)
    for (const auto& e : columns_[j]) d[e.index][j] = e.value;
  return d;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (!(a.ring_ == b.ring_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t j = 0; j < a.cols_; ++j) {
    const auto& x = a.columns_[j];
    const auto& y = b.columns_[j];
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k].index != y[k].index || x[k].value != y[k].value) return false;
  }
  return true;
}

namespace {
void check_product(const SparseMatrix& a, const SparseMatrix& b) {
  same_ring(a.ring(), b.ring());
  if (a.cols() != b.rows())
    throw ShapeMismatch(std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " * " +
                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}
}  // namespace

SparseMatrix compose(const SparseMatrix& a, const SparseMatrix& b) {
  check_product(a, b);
  SparseMatrix out(a.ring(), a.rows(), b.cols());
  const std::int64_t ncols = static_cast<std::int64_t>(b.cols());
#pragma omp parallel
  {
    std::vector<mpq_class> acc(a.rows());
    std::vector<char> mark(a.rows(), 0);
    std::vector<std::uint32_t> touched;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t j = 0; j < ncols; ++j) {
      for (const auto& eb : b.column(j)) {
        for (const auto& ea : a.column(eb.index)) {
          if (!mark[ea.index]) {
            mark[ea.index] = 1;
            touched.push_back(ea.index);
            acc[ea.index] = ea.value * eb.value;
          } else {
            acc[ea.index] += ea.value * eb.value;
          }
        }
      }
      SparseVector col;
      col.reserve(touched.size());
      for (std::uint32_t i : touched) {
        col.push_back({i, std::move(acc[i])});
        mark[i] = 0;
      }
      touched.clear();
      out.set_column(j, std::move(col));
    }
  }
  return out;
}

SparseMatrix compose_reference(const SparseMatrix& a, const SparseMatrix& b) {
  check_product(a, b);
  std::map<std::pair<std::uint32_t, std::uint32_t>, mpq_class> acc;
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (const auto& eb : b.column(j))
      for (const auto& ea : a.column(eb.index))
        acc[{static_cast<std::uint32_t>(j), ea.index}] += ea.value * eb.value;
  std::vector<Triplet> t;
  for (auto& [k, v] : acc) t.push_back({k.second, k.first, v});
  return SparseMatrix::from_triplets(a.ring(), a.rows(), b.cols(), std::move(t));
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b) {
  same_ring(a.ring(), b.ring());
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("add");
  SparseMatrix out(a.ring(), a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    SparseVector col(a.column(j).begin(), a.column(j).end());
    col.insert(col.end(), b.column(j).begin(), b.column(j).end());
    out.set_column(j, std::move(col));
  }
  return out;
}

SparseMatrix subtract(const SparseMatrix& a, const SparseMatrix& b) {
  return add(a, b.negated());
}

SparseMatrix scale(const mpq_class& c, const SparseMatrix& a) {
  SparseMatrix out(a.ring(), a.rows(), a.cols());
  mpq_class cc = a.ring().canonical(c);
  if (sgn(cc) == 0) return out;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    SparseVector col;
    col.reserve(a.column(j).size());
    for (const auto& e : a.column(j)) col.push_back({e.index, e.value * cc});
    out.set_column(j, std::move(col));
  }
  return out;
}

SparseMatrix scale(const Scalar& c, const SparseMatrix& a) {
  same_ring(c.ring(), a.ring());
  return scale(c.value(), a);
}

SparseMatrix hstack(const std::vector<const SparseMatrix*>& blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = blocks[0]->rows();
  std::size_t cols = 0;
  for (const auto* b : blocks) {
    if (b->rows() != rows) throw ShapeMismatch("hstack");
    same_ring(b->ring(), blocks[0]->ring());
    cols += b->cols();
  }
  SparseMatrix out(blocks[0]->ring(), rows, cols);
  std::size_t off = 0;
  for (const auto* b : blocks) {
    for (std::size_t j = 0; j < b->cols(); ++j)
      out.set_column(off + j, SparseVector(b->column(j).begin(), b->column(j).end()));
    off += b->cols();
  }
  return out;
}

SparseVector multiply(const SparseMatrix& a, const SparseVector& v) {
  std::map<std::uint32_t, mpq_class> acc;
  for (const auto& e : v) {
    if (e.index >= a.cols()) throw ShapeMismatch("vector length");
    for (const auto& ea : a.column(e.index)) acc[ea.index] += ea.value * e.value;
  }
  SparseVector out;
  for (auto& [i, x] : acc) {
    mpq_class y = a.ring().canonical(x);
    if (sgn(y) != 0) out.push_back({i, std::move(y)});
  }
  return out;
}

// ---------------------------------------------------------------- field kernels

namespace {

template <class F>
std::size_t rank_impl(const F& f, const SparseMatrix& m) {
  std::vector<std::size_t> order(m.cols());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return m.column(a).size() < m.column(b).size();
  });
  detail::Echelon<F> e(f, m.rows(), m.rows());
  for (std::size_t j : order) {
    if (m.column(j).empty()) continue;
    e.insert(detail::to_field(f, m.column(j)));
    if (e.rank() == m.rows()) break;
  }
  return e.rank();
}

}  // namespace

std::size_t rank_serial(const SparseMatrix& m) {
  return detail::with_field(m.ring(), [&](auto f) { return rank_impl(f, m); });
}

std::size_t rank_split(const SparseMatrix& m) {
  if (!m.ring().is_field()) throw NotAField("rank over " + m.ring().name());
  // union-find over rows [0, R) and columns [R, R + C)
  const std::size_t R = m.rows();
  std::vector<std::size_t> parent(R + m.cols());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) {
      std::size_t a = find(e.index), b = find(R + j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<std::size_t, std::vector<std::size_t>> comp_cols;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!m.column(j).empty()) comp_cols[find(R + j)].push_back(j);
  std::vector<std::vector<std::size_t>> groups;
  for (auto& [k, v] : comp_cols) groups.push_back(std::move(v));
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });

  std::size_t total = 0;
  const std::int64_t ng = static_cast<std::int64_t>(groups.size());
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total)
  for (std::int64_t g = 0; g < ng; ++g) {
    const auto& cols = groups[g];
    std::map<std::uint32_t, std::uint32_t> rowmap;
    for (std::size_t j : cols)
      for (const auto& e : m.column(j)) rowmap.emplace(e.index, 0);
    std::uint32_t k = 0;
    for (auto& [r, idx] : rowmap) idx = k++;
    SparseMatrix sub(m.ring(), rowmap.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      SparseVector col;
      for (const auto& e : m.column(cols[c])) col.push_back({rowmap[e.index], e.value});
      sub.set_column(c, std::move(col));
    }
    total += rank_serial(sub);
  }
  return total;
}

std::size_t rank(const SparseMatrix& m) {
  if (!m.ring().is_field()) throw NotAField("rank over " + m.ring().name());
  if (m.cols() < 64) return rank_serial(m);
  return rank_split(m);
}

std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
  return detail::with_field(m.ring(), [&](auto f) {
    using F = decltype(f);
    SparseMatrix t = m.transpose();
    detail::Echelon<F> e(f, m.cols(), m.cols());
    for (std::size_t i = 0; i < t.cols(); ++i) e.insert(detail::to_field(f, t.column(i)));
    e.back_substitute();
    std::vector<typename detail::Echelon<F>::Vec> ker(m.cols());
    std::vector<char> is_free(m.cols(), 1);
    for (std::size_t r = 0; r < e.rank(); ++r) is_free[e.pivot_column(r)] = 0;
    for (std::size_t r = 0; r < e.rank(); ++r) {
      std::uint32_t pc = e.pivot_column(r);
      for (const auto& [j, x] : e.rows()[r])
        if (j != pc) ker[j].emplace_back(pc, f.neg(x));
    }
    std::vector<SparseVector> out;
    for (std::uint32_t j = 0; j < m.cols(); ++j) {
      if (!is_free[j]) continue;
      auto& v = ker[j];
      v.emplace_back(j, F::one());
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      out.push_back(detail::from_field(f, v));
    }
    return out;
  });
}

bool solve(const SparseMatrix& m, const SparseVector& b, SparseVector& x) {
  return detail::with_field(m.ring(), [&](auto f) {
    using F = decltype(f);
    // columns of m augmented with a tag e_j in positions rows + j
    const std::size_t R = m.rows();
    detail::Echelon<F> e(f, R + m.cols(), R);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto v = detail::to_field(f, m.column(j));
      v.emplace_back(static_cast<std::uint32_t>(R + j), F::one());
      e.insert(v);
    }
    auto res = e.reduce(detail::to_field(f, std::span<const Entry>(b)));
    typename detail::Echelon<F>::Vec sol;
    for (const auto& [i, v] : res) {
      if (i < R) return false;
      sol.emplace_back(static_cast<std::uint32_t>(i - R), f.neg(v));
    }
    x = detail::from_field(f, sol);
    return true;
  });
}

SparseMatrix inverse(const SparseMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("inverse of non-square matrix");
  SparseMatrix out(m.ring(), m.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    SparseVector x;
    if (!solve(m, {{static_cast<std::uint32_t>(j), mpq_class(1)}}, x))
      throw std::domain_error("matrix is singular");
    out.set_column(j, std::move(x));
  }
  return out;
}

}  // namespace dihedral
