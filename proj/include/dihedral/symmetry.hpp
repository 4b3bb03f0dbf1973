#pragma once

#include <optional>

#include "dihedral/conventions.hpp"
#include "dihedral/simplicial.hpp"

namespace dihedral {

// t and r are bidegree (0,0) maps with a block per populated piece; r may be
// absent (cyclic structure only).
class DihedralStructure {
 public:
  DihedralStructure(ModulePtr module, SignedMap t, std::optional<SignedMap> r);

  const ModulePtr& module() const { return module_; }
  const SignedMap& t() const { return t_; }
  bool has_r() const { return r_.has_value(); }
  const SignedMap& r() const;

  // t^{n+1} = 1, r^2 = 1, r t = t^{-1} r, and d t = t d, d r = r d if d given.
  ValidationReport check(const SignedMap* d = nullptr) const;

 private:
  ModulePtr module_;
  SignedMap t_;
  std::optional<SignedMap> r_;
};

struct SymmetryOperators {
  ModulePtr module;
  SignedMap T;
  SignedMap N;
  SignedMap one_minus_T;
  bool has_r = false;
  SignedMap R;   // zero without r
  SignedMap RT;  // R o T
};

// Throws StructureInvalid if (1 - T) N = 0 = N (1 - T) fails.
SymmetryOperators build_operators(const DihedralStructure& ds, const SignConventions& c = {});

struct DfChecks {
  bool cyclic = true;
  bool reflexive = true;
};

ValidationReport validate_df_relations(const FaceFamily& ff, const DihedralStructure& ds,
                                       DfChecks which = {});
ValidationReport validate_interchange(const SymmetryOperators& ops, const DInfinityModule& d0,
                                      const DInfinityModule& d1);

// Blocks of f with source simplicial degree n.
SignedMap restrict_to_n(const SignedMap& f, int n);

struct BarredOperators {
  RingSpec ring;
  int top = -1;
  bool has_r = false;
  std::vector<std::size_t> dims;
  // b[N], bp[N] : X̄_N -> X̄_{N-1}; the rest are endomorphisms of X̄_N
  std::vector<SparseMatrix> b, bp, T, N, one_minus_T, R, RT;
};

BarredOperators build_barred(const SymmetryOperators& ops, const DInfinityModule& d0,
                             const DInfinityModule& d1);
ValidationReport validate_barred(const BarredOperators& bar);

}  // namespace dihedral
