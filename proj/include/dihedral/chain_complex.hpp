#pragma once

#include <string>
#include <vector>

#include "dihedral/linalg.hpp"
#include "dihedral/report.hpp"

namespace dihedral {

// Degrees 0..top. differential(N) : C_N -> C_{N-1}; differential(0) has no rows.
// Homology is certified for degrees 0..window_hi().
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(std::string name, RingSpec ring, std::vector<std::size_t> dims,
               std::vector<SparseMatrix> diffs, int window_hi);

  const std::string& name() const { return name_; }
  const RingSpec& ring() const { return ring_; }
  int top() const { return static_cast<int>(dims_.size()) - 1; }
  int window_hi() const { return window_hi_; }
  std::size_t dim(int N) const;
  const SparseMatrix& differential(int N) const;

  ChainComplex with_ring(RingSpec ring) const;
  ValidationReport check_square_zero() const;

 private:
  std::string name_;
  RingSpec ring_;
  std::vector<std::size_t> dims_;
  std::vector<SparseMatrix> diffs_;
  int window_hi_ = -1;
};

}  // namespace dihedral
