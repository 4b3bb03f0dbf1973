#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "dihedral/linalg.hpp"
#include "dihedral/report.hpp"

namespace dihedral {

struct Generator {
  std::string name;
  int degree = 0;
};

// generator index -> coefficient; no zero coefficients, sorted by index
using Combination = std::vector<std::pair<int, mpq_class>>;

Combination normalize(Combination c, const RingSpec& ring);

// Structure constants of a map A^{⊗arity} -> A of the given degree on basis
// tensors; missing inputs map to zero.
struct MultilinearMap {
  int arity = 0;
  int degree = 0;
  std::map<std::vector<int>, Combination> table;

  bool is_zero() const { return table.empty(); }
  friend bool operator==(const MultilinearMap&, const MultilinearMap&) = default;
};

class AInfAlgebraDesc {
 public:
  std::string name;
  RingSpec ring = RingSpec::rationals();
  std::vector<Generator> generators;
  std::map<int, Combination> differential;  // absent: d = 0 on that generator
  std::map<int, MultilinearMap> pi;         // key n: arity n+2, degree n
  std::map<int, Combination> involution;    // absent: a* = a
  int rho = 1;
  int truncation = 3;  // declared P: pi_n = 0 for n > P

  std::size_t dim() const { return generators.size(); }
  int index_of(const std::string& name) const;  // -1 if unknown
  int degree(int g) const { return generators[g].degree; }
  // largest n with pi_n nonzero, -1 if none
  int effective_order() const;
  Combination star(int g) const;
  const MultilinearMap* pi_map(int n) const;

  // SemanticError on degree bookkeeping or arity mismatches.
  void check_consistency() const;
  AInfAlgebraDesc with_ring(RingSpec r) const;

  friend bool operator==(const AInfAlgebraDesc&, const AInfAlgebraDesc&);
};

struct TauSignature {
  int n = 0;
  std::vector<int> js;  // j_q > ... > j_1
  int q() const { return static_cast<int>(js.size()); }
  int arity() const { return n - q() + 1; }
  int degree() const { return n + q() - 1; }
  std::string str() const;
  auto operator<=>(const TauSignature&) const = default;
};

struct HuStructureDesc {
  std::map<TauSignature, MultilinearMap> tau;

  bool empty() const { return tau.empty(); }
  const MultilinearMap* find(const TauSignature& s) const;
  // tau_k^k, zero map of the right shape when absent (tau_0^0 is required)
  MultilinearMap tau_kk(int k) const;
  void check_consistency(const AInfAlgebraDesc& a) const;
  HuStructureDesc with_ring(RingSpec r) const;
  friend bool operator==(const HuStructureDesc&, const HuStructureDesc&) = default;
};

// Operators between tensor powers of A on the basis of all generator tuples
// (lexicographic, first factor most significant).
class TensorPowers {
 public:
  explicit TensorPowers(const AInfAlgebraDesc& a);

  std::size_t dim(int arity) const;
  std::vector<int> decode(int arity, std::size_t idx) const;
  std::size_t encode(const std::vector<int>& tuple) const;
  int degree(const std::vector<int>& tuple) const;

  SparseMatrix identity(int arity) const;
  SparseMatrix zero(int rows_arity, int cols_arity) const;
  SparseMatrix map(const MultilinearMap& f) const { return extend(f, 0, 0); }
  // 1^{⊗left} ⊗ f ⊗ 1^{⊗right} with sign (-1)^{|f|(|a_0|+...+|a_{left-1}|)}
  SparseMatrix extend(const MultilinearMap& f, int left, int right) const;
  // tensor-extended differential on A^{⊗arity}
  SparseMatrix differential(int arity) const;
  // a_0⊗...⊗a_{k-1} -> (-1)^{sum_{i<j}|a_i||a_j|} a_{k-1}*⊗...⊗a_0*
  SparseMatrix reverse_star(int arity) const;
  SparseMatrix star() const;
  // d o f - (-1)^{|f|} f o d
  SparseMatrix d_of(const SparseMatrix& f, int arity, int degree) const;

  MultilinearMap identity_map() const;
  MultilinearMap d_map() const;

 private:
  const AInfAlgebraDesc& a_;
  std::size_t d_;
};

ValidationReport validate_ainf(const AInfAlgebraDesc& a);
ValidationReport validate_involution(const AInfAlgebraDesc& a);
ValidationReport validate_hu(const AInfAlgebraDesc& a, const HuStructureDesc& h);
ValidationReport validate_involutive_hu(const AInfAlgebraDesc& a, const HuStructureDesc& h);

}  // namespace dihedral
