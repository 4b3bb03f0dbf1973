#pragma once

#include <string>
#include <vector>

#include "dihedral/complexes.hpp"

namespace dihedral {

struct DegreeHomology {
  int degree = 0;
  std::size_t betti = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1, integer case only
  std::size_t chain_rank = 0;      // dim of the chain group
};

struct HomologyResult {
  std::string complex;
  RingSpec ring;
  int window_lo = 0;
  int window_hi = -1;
  std::vector<DegreeHomology> degrees;
  std::vector<std::string> notes;

  std::vector<std::size_t> betti() const;
  std::string to_text() const;
};

// Degrees lo..hi (hi = -1 means the certified window). RingMismatch if ring
// differs from the complex's ring; WindowExceeded beyond the window.
HomologyResult homology(const ChainComplex& c, const RingSpec& ring, int lo = 0, int hi = -1);
HomologyResult homology(const ChainComplex& c, int hi = -1);

HomologyResult cyclic_homology(const AInfAlgebraDesc& a, int n_max, const RingSpec& ring);
HomologyResult dihedral_homology(const AInfAlgebraDesc& a, int rho, int n_max, const RingSpec& ring);
HomologyResult reflexive_homology(const AInfAlgebraDesc& a, int rho, int n_max, const RingSpec& ring);

// Homology with explicit bases over a field: representatives of H_N and
// coordinates of cycles in that basis.
class HomologyBasis {
 public:
  HomologyBasis(const ChainComplex& c, int N);
  ~HomologyBasis();
  HomologyBasis(HomologyBasis&&) noexcept;
  HomologyBasis& operator=(HomologyBasis&&) noexcept;

  std::size_t dim() const;
  const std::vector<SparseVector>& representatives() const;
  // Coordinates of the class of a cycle; SemanticError if v is not a cycle.
  SparseVector coordinates(const SparseVector& v) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Matrix of the map induced by a chain map f : C_N -> D_M.
SparseMatrix induced_map(const HomologyBasis& src, const HomologyBasis& tgt, const SparseMatrix& f);

struct LESNode {
  std::string name;  // e.g. "HR_2"
  std::size_t dim = 0;
  std::size_t rank_in = 0, rank_out = 0;
  bool composite_zero = false;
  bool exact = false;
};

struct LESReport {
  RingSpec ring;
  int rho = 1;
  int n_max = 0;
  int degree_hi = 0;
  // per N: HR_N -i*-> HD_N -p*-> HD^{-rho}_{N-2} -delta*-> HR_{N-1}
  std::vector<SparseMatrix> i_star, p_star, delta_star, alpha_star;
  std::vector<std::size_t> hr, hd, hd_minus, hp;
  std::vector<LESNode> nodes;
  std::vector<bool> alpha_iso;
  std::vector<std::size_t> hq;  // betti of Tot Q
  ValidationReport chain_level{"P structure"};

  bool exact() const;
  bool alpha_isomorphism() const;
  bool q_acyclic() const;
  std::string to_text() const;
};

// Nodes for N = 0..degree_hi; needs n_max >= degree_hi + 2. degree_hi = -1
// picks n_max - 2.
LESReport verify_les(const AInfAlgebraDesc& a, const HuStructureDesc& h, int rho, int n_max,
                     const RingSpec& field, int degree_hi = -1);

}  // namespace dihedral
