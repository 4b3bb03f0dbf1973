#pragma once

#include <memory>

#include "dihedral/ainfinity.hpp"
#include "dihedral/conventions.hpp"
#include "dihedral/symmetry.hpp"

namespace dihedral {

// Basis of the tensor module: X_{n,m} = (A^{⊗(n+1)})_m restricted to n + m <= n_max.
class TensorIndex {
 public:
  TensorIndex(const AInfAlgebraDesc& a, int n_max);

  int n_max() const { return n_max_; }
  std::size_t gens() const { return d_; }
  std::uint64_t encode(const std::vector<int>& t) const;
  std::vector<int> decode(int n, std::uint64_t code) const;
  // position inside its piece, or -1 if the tuple is outside the truncation
  std::int64_t position(int n, std::uint64_t code) const { return pos_[n][code]; }
  int internal_degree(int n, std::uint64_t code) const { return deg_[n][code]; }
  const std::vector<std::uint64_t>& piece(Bidegree b) const;

 private:
  int n_max_;
  std::size_t d_;
  std::vector<std::vector<std::int64_t>> pos_;
  std::vector<std::vector<int>> deg_;
  std::map<Bidegree, std::vector<std::uint64_t>> pieces_;
};

struct TensorModuleBundle {
  AInfAlgebraDesc algebra;
  int rho = 1;
  int n_max = 0;
  SignConventions conventions;
  std::shared_ptr<const TensorIndex> index;
  ModulePtr module;
  SignedMap d;
  std::shared_ptr<const DihedralStructure> structure;
  std::shared_ptr<const FaceFamily> faces;
};

// rho = 0 takes rho from the description. Asserts t^{n+1} = 1, r^2 = 1,
// r t = t^{-1} r and compatibility with d (StructureInvalid otherwise).
TensorModuleBundle build_tensor_module(const AInfAlgebraDesc& a, int n_max, int rho = 0,
                                       const SignConventions& c = {});
FaceFamily build_faces(const TensorModuleBundle& bundle, const AInfAlgebraDesc& a);

// s[k] is s^{k-1}, k = 0..n_max+1, of bidegree (1-k, k).
std::vector<SignedMap> build_s_maps(const TensorModuleBundle& bundle, const HuStructureDesc& h);
ValidationReport validate_contracting(const TensorModuleBundle& bundle,
                                      const std::vector<SignedMap>& s_maps);

}  // namespace dihedral
