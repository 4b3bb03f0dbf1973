#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>

#include "dihedral/ainfinity.hpp"
#include "dihedral/chain_complex.hpp"
#include "dihedral/tensor_construction.hpp"

namespace dihedral {

using MultiDegree = std::vector<int>;

// Cells with block arrows, each arrow lowering the total degree by one.
// Tot is built per total degree with a caller-chosen cell order.
class MultiComplex {
 public:
  using Order = std::function<bool(const MultiDegree&, const MultiDegree&)>;

  struct Arrow {
    MultiDegree from, to;
    std::shared_ptr<const SparseMatrix> block;
    int sign = 1;
  };

  MultiComplex(std::string name, RingSpec ring, int axes, int top);

  const std::string& name() const { return name_; }
  const RingSpec& ring() const { return ring_; }
  int axes() const { return axes_; }
  int top() const { return top_; }

  void add_cell(const MultiDegree& deg, std::size_t dim);
  void add_arrow(const MultiDegree& from, const MultiDegree& to,
                 std::shared_ptr<const SparseMatrix> block, int sign = 1);
  const std::map<MultiDegree, std::size_t>& cells() const { return cells_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  // cells and arrows among cells satisfying keep
  MultiComplex restricted(const std::function<bool(const MultiDegree&)>& keep,
                          std::string name) const;

  struct Layout {
    std::vector<std::pair<MultiDegree, std::size_t>> cells;  // degree, offset
    std::size_t dim = 0;
    std::optional<std::size_t> offset(const MultiDegree& d) const;
  };
  Layout layout(int N, const Order& order = {}) const;
  SparseMatrix total_differential(int N, const Order& order = {}) const;
  // degrees 0..top, homology window top-1
  ChainComplex total(const Order& order = {}) const;

 private:
  std::string name_;
  RingSpec ring_;
  int axes_;
  int top_;
  std::map<MultiDegree, std::size_t> cells_;
  std::vector<Arrow> arrows_;
  std::map<MultiDegree, std::vector<std::size_t>> out_;
};

// Block map between totalizations that sends cell c to cell f(c) by
// identity blocks times a sign; cells with f(c) = nullopt go to zero.
using CellCorrespondence =
    std::function<std::optional<std::pair<MultiDegree, int>>(const MultiDegree&)>;
SparseMatrix cell_map(const RingSpec& ring, const MultiComplex::Layout& src,
                      const MultiComplex::Layout& tgt, const CellCorrespondence& f);

// The tensor module with its barred operators, ready for assembly.
struct DihedralData {
  TensorModuleBundle bundle;
  BarredOperators bar;
  int top() const { return bar.top; }
  int window_hi() const { return bar.top - 1; }
};

DihedralData prepare(const AInfAlgebraDesc& a, int rho, int n_max, const RingSpec& ring,
                     const SignConventions& conv = {});
// Same data with rho replaced by -rho (R and RT negated).
DihedralData flip_rho(const DihedralData& d);

MultiComplex build_cyclic_bicomplex(const DihedralData& d);
MultiComplex build_dihedral_triple(const DihedralData& d);
MultiComplex build_reflexive_bicomplex(const DihedralData& d);
// needs_hu: the homotopy unit that makes the columns contractible
MultiComplex build_q_bicomplex(const DihedralData& d, const HuStructureDesc* hu);

// Order of Tot(D̃): by a = n + l, then n. Tot(D) uses the lexicographic order.
bool dtilde_order(const MultiDegree& x, const MultiDegree& y);

struct Quotients {
  ChainComplex L, M, N;
  ValidationReport descends{"quotients"};
};
// Over a field only (NotAField).
Quotients build_quotient_complexes(const DihedralData& d);
// Over Z the quotients are cokernels, not free modules, so they are checked
// as such: b b = 0 and b maps each submodule into itself (lattice membership
// through Smith normal form). NotIntegerRing for other rings.
ValidationReport validate_integral_quotients(const DihedralData& d);

// The P-subcomplex of Tot(D̃) and the maps of the two short exact sequences
// 0 -> P -> Tot D̃ -> Tot D̃^{-rho}[-2] -> 0 and 0 -> Tot R -> P -> Tot Q[-1] -> 0.
struct PStructure {
  MultiComplex triple;        // D(rho)
  MultiComplex triple_minus;  // D(-rho)
  MultiComplex reflexive;     // R(rho)
  MultiComplex q;             // Q(rho)
  MultiComplex p;             // cells with m <= 1
  ChainComplex tot_d, tot_d_minus, tot_r, tot_q, tot_p;
  // per degree N
  std::vector<SparseMatrix> j;      // P_N -> Tot D̃_N
  std::vector<SparseMatrix> proj;   // Tot D̃_N -> Tot D̃^{-rho}_{N-2}
  std::vector<SparseMatrix> alpha;  // Tot R_N -> P_N
  std::vector<SparseMatrix> beta;   // P_N -> Tot Q_{N-1}
};
PStructure build_p_structure(const DihedralData& d, const HuStructureDesc* hu);
ValidationReport validate_p_structure(const PStructure& ps);

// Tot(D̃) and Tot(D) agree up to the cell permutation.
ValidationReport validate_dtilde_permutation(const MultiComplex& triple);

// matrix-market style dump: "degree N rows cols nnz" then "i j value" lines
void dump_complex(std::ostream& out, const ChainComplex& c);

}  // namespace dihedral
