#pragma once

#include <map>
#include <vector>

#include "dihedral/chain_complex.hpp"
#include "dihedral/conventions.hpp"
#include "dihedral/graded.hpp"
#include "dihedral/report.hpp"

namespace dihedral {

using FaceIndex = std::vector<int>;

std::string to_string(const FaceIndex& idx);
// 0 <= i1 < ... < ik <= n and 1 <= k <= n
bool valid_face_index(const FaceIndex& idx, int n);

// Faces are keyed by ambient degree n: the same tuple names different maps
// at different n. A face at n only has blocks with source simplicial degree n.
class FaceFamily {
 public:
  FaceFamily(ModulePtr module, SignedMap d);

  const ModulePtr& module() const { return module_; }
  const SignedMap& d() const { return d_; }
  int max_n() const { return module_->max_n(); }

  void set_face(int n, FaceIndex idx, SignedMap f);
  // nullptr means the zero map
  const SignedMap* face(int n, const FaceIndex& idx) const;
  const std::map<std::pair<int, FaceIndex>, SignedMap>& faces() const { return faces_; }

 private:
  ModulePtr module_;
  SignedMap d_;
  std::map<std::pair<int, FaceIndex>, SignedMap> faces_;
};

// sigma[s] is the position of indices placed at slot s. Each permuted entry
// is lowered by the number of smaller entries to its right.
std::vector<int> hat_action(const std::vector<int>& sigma, const FaceIndex& indices);

// d(f) = d o f + f o d for a face f (faces are odd maps).
SignedMap face_differential(const FaceFamily& ff, const FaceIndex& indices, int n);
SignedMap rhs_of_1_1(const FaceFamily& ff, const FaceIndex& indices, int n);
ValidationReport validate_f_module(const FaceFamily& ff);

class DInfinityModule {
 public:
  DInfinityModule(ModulePtr module, std::vector<SignedMap> components);

  const ModulePtr& module() const { return module_; }
  std::size_t size() const { return components_.size(); }
  // d^i; zero map for i past the stored range
  SignedMap component(std::size_t i) const;
  const std::vector<SignedMap>& components() const { return components_; }
  // sum_{i+j=k} d^i d^j = 0 for k = 0..k_max
  ValidationReport check_relations(int k_max) const;

 private:
  ModulePtr module_;
  std::vector<SignedMap> components_;
};

DInfinityModule dq_differentials(const FaceFamily& ff, int q, const SignConventions& c = {});

// X̄_N = ⊕_{k=0}^{N} X_{k,N-k}, pieces ordered by k.
class TotalLayout {
 public:
  TotalLayout(const BigradedModule& m, int top);
  int top() const { return static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int N) const { return N < 0 || N > top() ? 0 : dims_[N]; }
  std::size_t offset(Bidegree b) const;
  const std::vector<std::pair<Bidegree, std::size_t>>& pieces(int N) const { return pieces_[N]; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::vector<std::pair<Bidegree, std::size_t>>> pieces_;
};

// Sum of the maps as an operator X̄_N -> X̄_{N+s}, s the common total degree.
SparseMatrix totalize_maps(const std::vector<const SignedMap*>& maps, const TotalLayout& layout,
                           int N);

// top = largest total degree of the module; window = top - 1.
ChainComplex totalize(const DInfinityModule& dm, const std::string& name = "Xbar");

}  // namespace dihedral
