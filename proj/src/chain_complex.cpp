#include "dihedral/chain_complex.hpp"

namespace dihedral {

ChainComplex::ChainComplex(std::string name, RingSpec ring, std::vector<std::size_t> dims,
                           std::vector<SparseMatrix> diffs, int window_hi)
    : name_(std::move(name)),
      ring_(ring),
      dims_(std::move(dims)),
      diffs_(std::move(diffs)),
      window_hi_(window_hi) {
  if (diffs_.size() != dims_.size()) throw ShapeMismatch("one differential per degree expected");
  for (std::size_t N = 0; N < dims_.size(); ++N) {
    std::size_t rows = N == 0 ? 0 : dims_[N - 1];
    if (diffs_[N].rows() != rows || diffs_[N].cols() != dims_[N])
      throw ShapeMismatch(name_ + ": differential " + std::to_string(N) + " has wrong shape");
    if (!(diffs_[N].ring() == ring_)) throw RingMismatch(name_);
  }
  if (window_hi_ > top() - 1) window_hi_ = top() - 1;
}

std::size_t ChainComplex::dim(int N) const {
  if (N < 0) return 0;
  if (N > top()) throw WindowExceeded(name_ + ": degree " + std::to_string(N));
  return dims_[N];
}

const SparseMatrix& ChainComplex::differential(int N) const {
  if (N < 0 || N > top()) throw WindowExceeded(name_ + ": differential " + std::to_string(N));
  return diffs_[N];
}

ChainComplex ChainComplex::with_ring(RingSpec ring) const {
  std::vector<SparseMatrix> d;
  for (const auto& m : diffs_) d.push_back(m.with_ring(ring));
  return ChainComplex(name_, ring, dims_, std::move(d), window_hi_);
}

ValidationReport ChainComplex::check_square_zero() const {
  ValidationReport rep(name_ + " d^2");
  for (int N = 2; N <= top(); ++N) {
    SparseMatrix sq = compose(diffs_[N - 1], diffs_[N]);
    rep.record("d^2=0", name_ + " degree " + std::to_string(N),
               SparseMatrix(ring_, sq.rows(), sq.cols()), sq);
  }
  return rep;
}

}  // namespace dihedral
