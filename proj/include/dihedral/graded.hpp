#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dihedral/linalg.hpp"

namespace dihedral {

struct Bidegree {
  int n = 0;
  int m = 0;
  auto operator<=>(const Bidegree&) const = default;
  Bidegree operator+(const Bidegree& o) const { return {n + o.n, m + o.m}; }
};

std::string to_string(const Bidegree& b);

struct BasisElement {
  std::string label;
  int n;
  int m;
};

class BigradedModule {
 public:
  explicit BigradedModule(RingSpec ring) : ring_(ring) {}

  // Labels must be unique within the piece; n, m >= 0.
  void add_piece(Bidegree deg, std::vector<std::string> labels);

  const RingSpec& ring() const { return ring_; }
  std::size_t dim(Bidegree deg) const;
  const std::vector<std::string>& labels(Bidegree deg) const;
  std::optional<std::uint32_t> index_of(Bidegree deg, const std::string& label) const;
  std::vector<Bidegree> degrees() const;
  std::vector<BasisElement> basis() const;
  int max_n() const;
  int max_total() const;

  bool same_as(const BigradedModule& other) const;

 private:
  RingSpec ring_;
  std::map<Bidegree, std::vector<std::string>> pieces_;
  std::map<Bidegree, std::unordered_map<std::string, std::uint32_t>> index_;
};

using ModulePtr = std::shared_ptr<const BigradedModule>;

// Morphism of fixed bidegree; absent blocks are zero.
class SignedMap {
 public:
  SignedMap() = default;
  SignedMap(ModulePtr source, ModulePtr target, Bidegree shift);
  static SignedMap identity(ModulePtr m);

  const ModulePtr& source() const { return source_; }
  const ModulePtr& target() const { return target_; }
  Bidegree shift() const { return shift_; }
  const RingSpec& ring() const { return source_->ring(); }

  // Shape must be dim(target, src + shift) x dim(source, src). Zero blocks
  // and blocks into empty pieces are dropped.
  void set_block(Bidegree src, SparseMatrix m);
  void add_to_block(Bidegree src, const SparseMatrix& m);
  const SparseMatrix* block(Bidegree src) const;
  SparseMatrix block_or_zero(Bidegree src) const;
  const std::map<Bidegree, SparseMatrix>& blocks() const { return blocks_; }
  std::size_t nnz() const;
  bool is_zero() const { return blocks_.empty(); }

 private:
  ModulePtr source_;
  ModulePtr target_;
  Bidegree shift_;
  std::map<Bidegree, SparseMatrix> blocks_;
};

bool same_module(const ModulePtr& a, const ModulePtr& b);

// f after g
SignedMap map_compose(const SignedMap& f, const SignedMap& g);
SignedMap map_add(const SignedMap& f, const SignedMap& g);
SignedMap map_subtract(const SignedMap& f, const SignedMap& g);
SignedMap map_scale(const Scalar& c, const SignedMap& f);
SignedMap map_scale(const mpq_class& c, const SignedMap& f);
bool map_equal(const SignedMap& f, const SignedMap& g);
// Blockwise transpose: a map target -> source of the opposite bidegree.
SignedMap map_transpose(const SignedMap& f);

// d_target o f - sign * f o d_source
SignedMap graded_commutator_check(const SignedMap& d_target, const SignedMap& f,
                                  const SignedMap& d_source, int sign);
SignedMap graded_commutator_check(const SignedMap& d, const SignedMap& f, int sign);

}  // namespace dihedral
