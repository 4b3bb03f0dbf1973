#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dihedral/errors.hpp"

namespace dihedral {

class RingSpec {
 public:
  enum class Kind { rationals, integers, prime_field };

  RingSpec() = default;
  static RingSpec rationals() { return RingSpec(Kind::rationals, 0); }
  static RingSpec integers() { return RingSpec(Kind::integers, 0); }
  // throws SemanticError unless p is prime
  static RingSpec prime_field(std::uint64_t p);
  // "Q", "Z", "Fp:<p>" (also "F<p>")
  static RingSpec parse(std::string_view text);

  Kind kind() const { return kind_; }
  std::uint64_t modulus() const { return p_; }
  std::uint64_t characteristic() const { return p_; }
  bool is_field() const { return kind_ != Kind::integers; }
  std::string name() const;

  // Canonical representative in this ring; throws if q has no image
  // (non-integer over Z, denominator divisible by p over Fp).
  mpq_class canonical(const mpq_class& q) const;
  mpq_class add(const mpq_class& a, const mpq_class& b) const;
  mpq_class sub(const mpq_class& a, const mpq_class& b) const;
  mpq_class mul(const mpq_class& a, const mpq_class& b) const;
  mpq_class inverse(const mpq_class& a) const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  RingSpec(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
  Kind kind_ = Kind::rationals;
  std::uint64_t p_ = 0;
};

bool is_prime(std::uint64_t p);

class Scalar {
 public:
  Scalar(RingSpec ring, const mpq_class& v) : ring_(ring), value_(ring.canonical(v)) {}
  Scalar(RingSpec ring, long v) : Scalar(ring, mpq_class(v)) {}

  const RingSpec& ring() const { return ring_; }
  const mpq_class& value() const { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }
  std::string str() const { return value_.get_str(); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  bool operator==(const Scalar& o) const { return ring_ == o.ring_ && value_ == o.value_; }

 private:
  RingSpec ring_;
  mpq_class value_;
};

struct Entry {
  std::uint32_t index;
  mpq_class value;
};

using SparseVector = std::vector<Entry>;

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  mpq_class value;
};

// Column-major; each column sorted by row with no zero entries.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(RingSpec ring, std::size_t rows, std::size_t cols);

  static SparseMatrix identity(RingSpec ring, std::size_t n);
  static SparseMatrix from_triplets(RingSpec ring, std::size_t rows, std::size_t cols,
                                    std::vector<Triplet> triplets);
  static SparseMatrix from_dense(RingSpec ring, const std::vector<std::vector<long>>& rows);

  const RingSpec& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  std::span<const Entry> column(std::size_t j) const { return columns_[j]; }
  // Takes an unsorted column with possible duplicates and zeros.
  void set_column(std::size_t j, SparseVector col);
  mpq_class at(std::size_t i, std::size_t j) const;

  SparseMatrix transpose() const;
  SparseMatrix with_ring(RingSpec ring) const;
  SparseMatrix negated() const;
  std::vector<Triplet> triplets() const;
  std::vector<std::vector<mpq_class>> to_dense() const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  RingSpec ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector> columns_;
};

// a * b; OpenMP over columns of b.
SparseMatrix compose(const SparseMatrix& a, const SparseMatrix& b);
// Serial map-based product kept as the reference for compose.
SparseMatrix compose_reference(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix subtract(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix scale(const mpq_class& c, const SparseMatrix& a);
SparseMatrix scale(const Scalar& c, const SparseMatrix& a);
// [a b c ...] side by side
SparseMatrix hstack(const std::vector<const SparseMatrix*>& blocks);
SparseVector multiply(const SparseMatrix& a, const SparseVector& v);

// Field kernels; NotAField over Z.
std::size_t rank(const SparseMatrix& m);
// Splits m into connected blocks of its bipartite row/column graph and
// ranks them in parallel. Same value as rank_serial.
std::size_t rank_split(const SparseMatrix& m);
std::size_t rank_serial(const SparseMatrix& m);
std::vector<SparseVector> kernel_basis(const SparseMatrix& m);
// Dense inverse of a square invertible matrix over a field.
SparseMatrix inverse(const SparseMatrix& m);
// Solve m x = b; returns false if b is not in the column space.
bool solve(const SparseMatrix& m, const SparseVector& b, SparseVector& x);

struct SmithResult {
  std::vector<mpz_class> invariant_factors;
  std::size_t rank = 0;
};

struct SmithAudit {
  SmithResult result;
  // u * m * v = diagonal with the invariant factors
  std::vector<std::vector<mpz_class>> u, v, diagonal;
};

SmithResult smith_normal_form(const SparseMatrix& m);
SmithAudit smith_normal_form_audited(const SparseMatrix& m);

}  // namespace dihedral
