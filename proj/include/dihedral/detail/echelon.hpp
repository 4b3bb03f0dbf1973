#pragma once

// Incremental sparse row echelon form over a field. Not thread-safe:
// reduce() uses scratch buffers, so give each thread its own instance.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "dihedral/linalg.hpp"

namespace dihedral::detail {

struct RationalField {
  using value_type = mpq_class;
  value_type from(const mpq_class& q) const { return q; }
  mpq_class to(const value_type& v) const { return v; }
  static bool is_zero(const value_type& v) { return sgn(v) == 0; }
  static value_type zero() { return 0; }
  static value_type one() { return 1; }
  // dst -= c * x
  static void sub_mul(value_type& dst, const value_type& c, const value_type& x) {
    dst -= c * x;
  }
  static value_type mul(const value_type& a, const value_type& b) { return a * b; }
  static value_type neg(const value_type& a) { return -a; }
  static value_type inv(const value_type& a) { return 1 / a; }
};

struct PrimeField {
  std::uint64_t p;
  using value_type = std::uint64_t;
  value_type from(const mpq_class& q) const {
    mpz_class n = q.get_num() % p;
    if (n < 0) n += p;
    mpz_class d = q.get_den() % p;
    std::uint64_t a = n.get_ui();
    std::uint64_t b = d.get_ui();
    return mul(a, inv(b));
  }
  mpq_class to(value_type v) const { return mpq_class(static_cast<unsigned long>(v)); }
  static bool is_zero(value_type v) { return v == 0; }
  static value_type zero() { return 0; }
  static value_type one() { return 1; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % p);
  }
  void sub_mul(value_type& dst, value_type c, value_type x) const {
    value_type t = mul(c, x);
    dst = dst >= t ? dst - t : dst + (p - t);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type inv(value_type a) const {
    // Fermat
    value_type r = 1, b = a;
    std::uint64_t e = p - 2;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
};

template <class F>
class Echelon {
 public:
  using T = typename F::value_type;
  using Vec = std::vector<std::pair<std::uint32_t, T>>;

  // Positions >= pivot_limit are carried along but never chosen as pivots.
  Echelon(F field, std::size_t dim, std::size_t pivot_limit)
      : f_(field),
        dim_(dim),
        limit_(pivot_limit),
        pivot_of_(dim, -1),
        dense_(dim, F::zero()),
        mark_(dim, 0) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Vec>& rows() const { return rows_; }
  std::uint32_t pivot_column(std::size_t r) const { return pivot_col_[r]; }
  std::int64_t pivot_row(std::uint32_t col) const { return pivot_of_[col]; }
  const F& field() const { return f_; }

  // Returns v minus a combination of stored rows; the residual vanishes on
  // every pivot column. coeffs (if given) receives the combination used.
  Vec reduce(const Vec& v, Vec* coeffs = nullptr) const {
    std::priority_queue<std::int64_t, std::vector<std::int64_t>, std::greater<>> heap;
    for (const auto& [i, x] : v) {
      if (F::is_zero(x)) continue;
      if (!mark_[i]) {
        mark_[i] = 1;
        touched_.push_back(i);
        if (pivot_of_[i] >= 0) heap.push(pivot_of_[i]);
      }
      dense_[i] = x;
    }
    while (!heap.empty()) {
      std::int64_t r = heap.top();
      heap.pop();
      std::uint32_t c = pivot_col_[r];
      if (F::is_zero(dense_[c])) continue;
      T coef = dense_[c];
      if (coeffs) coeffs->emplace_back(static_cast<std::uint32_t>(r), coef);
      for (const auto& [j, x] : rows_[r]) {
        if (!mark_[j]) {
          mark_[j] = 1;
          touched_.push_back(j);
          if (pivot_of_[j] >= 0) heap.push(pivot_of_[j]);
        }
        f_.sub_mul(dense_[j], coef, x);
      }
    }
    Vec out;
    std::sort(touched_.begin(), touched_.end());
    for (std::uint32_t i : touched_) {
      if (!F::is_zero(dense_[i])) out.emplace_back(i, std::move(dense_[i]));
      dense_[i] = F::zero();
      mark_[i] = 0;
    }
    touched_.clear();
    return out;
  }

  // Adds the residual of v as a new row if it is nonzero below the pivot
  // limit. Returns the new row index or -1.
  std::int64_t insert(const Vec& v) { return insert_reduced(reduce(v)); }

  std::int64_t insert_reduced(Vec res) {
    std::size_t best = res.size();
    for (std::size_t k = 0; k < res.size(); ++k) {
      if (res[k].first >= limit_) break;
      best = k;
      break;
    }
    if (best == res.size()) return -1;
    T inv = f_.inv(res[best].second);
    for (auto& e : res) e.second = f_.mul(e.second, inv);
    std::int64_t r = static_cast<std::int64_t>(rows_.size());
    pivot_col_.push_back(res[best].first);
    pivot_of_[res[best].first] = r;
    rows_.push_back(std::move(res));
    return r;
  }

  // Clears every pivot column from every other row (reduced echelon form).
  void back_substitute() {
    for (std::size_t r = rows_.size(); r-- > 0;) {
      Vec row = rows_[r];
      std::uint32_t pc = pivot_col_[r];
      rows_[r].clear();
      pivot_of_[pc] = -1;
      Vec red = reduce(row);
      pivot_of_[pc] = static_cast<std::int64_t>(r);
      rows_[r] = std::move(red);
    }
  }

 private:
  F f_;
  std::size_t dim_;
  std::size_t limit_;
  std::vector<Vec> rows_;
  std::vector<std::uint32_t> pivot_col_;
  std::vector<std::int64_t> pivot_of_;
  mutable std::vector<T> dense_;
  mutable std::vector<char> mark_;
  mutable std::vector<std::uint32_t> touched_;
};

template <class F>
typename Echelon<F>::Vec to_field(const F& f, std::span<const Entry> v) {
  typename Echelon<F>::Vec out;
  out.reserve(v.size());
  for (const auto& e : v) {
    auto x = f.from(e.value);
    if (!F::is_zero(x)) out.emplace_back(e.index, std::move(x));
  }
  return out;
}

template <class F>
SparseVector from_field(const F& f, const typename Echelon<F>::Vec& v) {
  SparseVector out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.push_back({i, f.to(x)});
  return out;
}

// Calls fn(field) with the field policy matching ring; NotAField over Z.
template <class Fn>
decltype(auto) with_field(const RingSpec& ring, Fn&& fn) {
  if (ring.kind() == RingSpec::Kind::integers)
    throw NotAField("operation requires a field, got " + ring.name());
  if (ring.kind() == RingSpec::Kind::prime_field) return fn(PrimeField{ring.modulus()});
  return fn(RationalField{});
}

}  // namespace dihedral::detail
