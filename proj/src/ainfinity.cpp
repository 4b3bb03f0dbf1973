#include "dihedral/ainfinity.hpp"

#include <algorithm>
#include <set>

#include "dihedral/conventions.hpp"

namespace dihedral {

Combination normalize(Combination c, const RingSpec& ring) {
  std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Combination out;
  for (auto& [g, x] : c) {
    if (!out.empty() && out.back().first == g)
      out.back().second += x;
    else
      out.emplace_back(g, x);
  }
  Combination clean;
  for (auto& [g, x] : out) {
    mpq_class y = ring.canonical(x);
    if (sgn(y) != 0) clean.emplace_back(g, y);
  }
  return clean;
}

int AInfAlgebraDesc::index_of(const std::string& n) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == n) return static_cast<int>(i);
  return -1;
}

int AInfAlgebraDesc::effective_order() const {
  int r = -1;
  for (const auto& [n, f] : pi)
    if (!f.is_zero()) r = std::max(r, n);
  return r;
}

Combination AInfAlgebraDesc::star(int g) const {
  auto it = involution.find(g);
  if (it == involution.end()) return {{g, mpq_class(1)}};
  return it->second;
}

const MultilinearMap* AInfAlgebraDesc::pi_map(int n) const {
  auto it = pi.find(n);
  return it == pi.end() || it->second.is_zero() ? nullptr : &it->second;
}

namespace {

void check_table(const AInfAlgebraDesc& a, const MultilinearMap& f, const std::string& what) {
  for (const auto& [in, out] : f.table) {
    if (static_cast<int>(in.size()) != f.arity)
      throw SemanticError(what + ": entry with " + std::to_string(in.size()) + " inputs, arity is " +
                          std::to_string(f.arity));
    int deg = f.degree;
    std::string label;
    for (int g : in) {
      if (g < 0 || g >= static_cast<int>(a.dim())) throw SemanticError(what + ": unknown generator");
      deg += a.degree(g);
      label += (label.empty() ? "" : "|") + a.generators[g].name;
    }
    for (const auto& [g, c] : out) {
      if (g < 0 || g >= static_cast<int>(a.dim())) throw SemanticError(what + ": unknown generator");
      if (a.degree(g) != deg)
        throw SemanticError(what + " entry " + (label.empty() ? "()" : label) + " -> " +
                            a.generators[g].name + ": degree " + std::to_string(a.degree(g)) +
                            " but expected " + std::to_string(deg));
    }
  }
}

}  // namespace

void AInfAlgebraDesc::check_consistency() const {
  std::set<std::string> names;
  for (const auto& g : generators) {
    if (g.name.empty() || g.name.find_first_of("|,*() \t") != std::string::npos)
      throw SemanticError("bad generator name '" + g.name + "'");
    if (!names.insert(g.name).second) throw SemanticError("duplicate generator " + g.name);
    if (g.degree < 0) throw SemanticError("negative degree for " + g.name);
  }
  if (rho != 1 && rho != -1) throw SemanticError("rho must be +1 or -1");
  for (const auto& [g, c] : differential)
    for (const auto& [h, x] : c)
      if (degree(h) != degree(g) - 1)
        throw SemanticError("differential of " + generators[g].name + " has wrong degree");
  for (const auto& [n, f] : pi) {
    if (f.arity != n + 2 || f.degree != n) throw SemanticError("pi " + std::to_string(n) + " shape");
    if (n > truncation && !f.is_zero())
      throw SemanticError("pi " + std::to_string(n) + " beyond declared truncation " +
                          std::to_string(truncation));
    check_table(*this, f, "pi " + std::to_string(n));
  }
  for (const auto& [g, c] : involution)
    for (const auto& [h, x] : c)
      if (degree(h) != degree(g))
        throw SemanticError("involution of " + generators[g].name + " changes degree");
}

AInfAlgebraDesc AInfAlgebraDesc::with_ring(RingSpec r) const {
  AInfAlgebraDesc out = *this;
  out.ring = r;
  for (auto& [g, c] : out.differential) c = normalize(c, r);
  for (auto& [g, c] : out.involution) c = normalize(c, r);
  for (auto& [n, f] : out.pi) {
    for (auto& [in, c] : f.table) c = normalize(c, r);
    std::erase_if(f.table, [](const auto& kv) { return kv.second.empty(); });
  }
  return out;
}

bool operator==(const AInfAlgebraDesc& a, const AInfAlgebraDesc& b) {
  if (a.generators.size() != b.generators.size()) return false;
  for (std::size_t i = 0; i < a.generators.size(); ++i)
    if (a.generators[i].name != b.generators[i].name ||
        a.generators[i].degree != b.generators[i].degree)
      return false;
  return a.ring == b.ring && a.differential == b.differential && a.pi == b.pi &&
         a.involution == b.involution && a.rho == b.rho && a.truncation == b.truncation;
}

std::string TauSignature::str() const {
  std::string s = "tau_" + std::to_string(n) + "^{";
  for (std::size_t i = 0; i < js.size(); ++i) s += (i ? "," : "") + std::to_string(js[i]);
  return s + "}";
}

const MultilinearMap* HuStructureDesc::find(const TauSignature& s) const {
  auto it = tau.find(s);
  return it == tau.end() ? nullptr : &it->second;
}

MultilinearMap HuStructureDesc::tau_kk(int k) const {
  if (const auto* f = find({k, {k}})) return *f;
  if (k == 0) throw MissingTau("tau_0^0 (the homotopy unit) is required");
  MultilinearMap z;
  z.arity = k;
  z.degree = k;
  return z;
}

void HuStructureDesc::check_consistency(const AInfAlgebraDesc& a) const {
  for (const auto& [s, f] : tau) {
    if (s.q() < 1) throw SemanticError(s.str() + ": q = 0 maps are given as pi tables");
    for (std::size_t i = 0; i < s.js.size(); ++i) {
      if (s.js[i] < 0 || s.js[i] > s.n) throw SemanticError(s.str() + ": index out of range");
      if (i && s.js[i] >= s.js[i - 1]) throw SemanticError(s.str() + ": indices must decrease");
    }
    if (s.arity() < 0) throw SemanticError(s.str() + ": negative arity");
    if (f.arity != s.arity() || f.degree != s.degree())
      throw SemanticError(s.str() + ": arity/degree mismatch");
    check_table(a, f, s.str());
  }
}

HuStructureDesc HuStructureDesc::with_ring(RingSpec r) const {
  HuStructureDesc out = *this;
  for (auto& [s, f] : out.tau) {
    for (auto& [in, c] : f.table) c = normalize(c, r);
    std::erase_if(f.table, [](const auto& kv) { return kv.second.empty(); });
  }
  return out;
}

// ------------------------------------------------------------- tensor powers

TensorPowers::TensorPowers(const AInfAlgebraDesc& a) : a_(a), d_(a.dim()) {}

std::size_t TensorPowers::dim(int arity) const {
  std::size_t r = 1;
  for (int i = 0; i < arity; ++i) r *= d_;
  return r;
}

std::vector<int> TensorPowers::decode(int arity, std::size_t idx) const {
  std::vector<int> t(arity);
  for (int i = arity - 1; i >= 0; --i) {
    t[i] = static_cast<int>(idx % d_);
    idx /= d_;
  }
  return t;
}

std::size_t TensorPowers::encode(const std::vector<int>& t) const {
  std::size_t idx = 0;
  for (int g : t) idx = idx * d_ + static_cast<std::size_t>(g);
  return idx;
}

int TensorPowers::degree(const std::vector<int>& t) const {
  int s = 0;
  for (int g : t) s += a_.degree(g);
  return s;
}

SparseMatrix TensorPowers::identity(int arity) const {
  return SparseMatrix::identity(a_.ring, dim(arity));
}

SparseMatrix TensorPowers::zero(int rows_arity, int cols_arity) const {
  return SparseMatrix(a_.ring, dim(rows_arity), dim(cols_arity));
}

SparseMatrix TensorPowers::extend(const MultilinearMap& f, int left, int right) const {
  const int in_ar = left + f.arity + right, out_ar = left + 1 + right;
  std::vector<SparseVector> cols(dim(in_ar));
  const std::size_t nl = dim(left), nr = dim(right);
  for (const auto& [in, out] : f.table) {
    for (std::size_t li = 0; li < nl; ++li) {
      auto L = decode(left, li);
      int sg = sign_of(static_cast<long>(f.degree) * degree(L));
      for (std::size_t ri = 0; ri < nr; ++ri) {
        auto R = decode(right, ri);
        std::vector<int> src = L;
        src.insert(src.end(), in.begin(), in.end());
        src.insert(src.end(), R.begin(), R.end());
        std::size_t col = encode(src);
        for (const auto& [g, c] : out) {
          std::vector<int> tgt = L;
          tgt.push_back(g);
          tgt.insert(tgt.end(), R.begin(), R.end());
          cols[col].push_back({static_cast<std::uint32_t>(encode(tgt)), sg > 0 ? c : mpq_class(-c)});
        }
      }
    }
  }
  SparseMatrix m(a_.ring, dim(out_ar), dim(in_ar));
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, std::move(cols[j]));
  return m;
}

MultilinearMap TensorPowers::identity_map() const {
  MultilinearMap f;
  f.arity = 1;
  f.degree = 0;
  for (std::size_t g = 0; g < d_; ++g) f.table[{static_cast<int>(g)}] = {{static_cast<int>(g), 1}};
  return f;
}

MultilinearMap TensorPowers::d_map() const {
  MultilinearMap f;
  f.arity = 1;
  f.degree = -1;
  for (const auto& [g, c] : a_.differential)
    if (!c.empty()) f.table[{g}] = c;
  return f;
}

SparseMatrix TensorPowers::differential(int arity) const {
  SparseMatrix m = zero(arity, arity);
  MultilinearMap dm = d_map();
  for (int i = 0; i < arity; ++i) m = add(m, extend(dm, i, arity - i - 1));
  return m;
}

SparseMatrix TensorPowers::star() const {
  std::vector<SparseVector> cols(d_);
  for (std::size_t g = 0; g < d_; ++g)
    for (const auto& [h, c] : a_.star(static_cast<int>(g)))
      cols[g].push_back({static_cast<std::uint32_t>(h), c});
  SparseMatrix m(a_.ring, d_, d_);
  for (std::size_t j = 0; j < d_; ++j) m.set_column(j, std::move(cols[j]));
  return m;
}

SparseMatrix TensorPowers::reverse_star(int arity) const {
  std::vector<SparseVector> cols(dim(arity));
  for (std::size_t idx = 0; idx < dim(arity); ++idx) {
    auto t = decode(arity, idx);
    long e = 0;
    for (int i = 0; i < arity; ++i)
      for (int j = i + 1; j < arity; ++j) e += static_cast<long>(a_.degree(t[i])) * a_.degree(t[j]);
    // expand the product of star combinations over reversed factors
    std::vector<std::pair<std::vector<int>, mpq_class>> terms{{{}, mpq_class(sign_of(e))}};
    for (int i = arity - 1; i >= 0; --i) {
      std::vector<std::pair<std::vector<int>, mpq_class>> next;
      for (const auto& [pre, c] : terms)
        for (const auto& [h, x] : a_.star(t[i])) {
          auto v = pre;
          v.push_back(h);
          next.emplace_back(std::move(v), c * x);
        }
      terms = std::move(next);
    }
    for (const auto& [v, c] : terms) cols[idx].push_back({static_cast<std::uint32_t>(encode(v)), c});
  }
  SparseMatrix m(a_.ring, dim(arity), dim(arity));
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, std::move(cols[j]));
  return m;
}

SparseMatrix TensorPowers::d_of(const SparseMatrix& f, int arity, int degree) const {
  SparseMatrix left = compose(differential(1), f);
  SparseMatrix right = compose(f, differential(arity));
  return subtract(left, sign_of(degree) > 0 ? right : right.negated());
}

// ------------------------------------------------------------- validators

namespace {

MultilinearMap zero_map(int arity, int degree) {
  MultilinearMap z;
  z.arity = arity;
  z.degree = degree;
  return z;
}

MultilinearMap pi_or_zero(const AInfAlgebraDesc& a, int n) {
  if (const auto* p = a.pi_map(n)) return *p;
  return zero_map(n + 2, n);
}

}  // namespace

ValidationReport validate_ainf(const AInfAlgebraDesc& a) {
  a.check_consistency();
  ValidationReport rep("A-infinity relations");
  TensorPowers tp(a);
  const int P = a.effective_order();
  const int nmax = 2 * std::max(P, 0) + 2;
  SparseMatrix d1 = tp.differential(1);
  rep.record("d^2=0", "A", tp.zero(1, 1), compose(d1, d1));
  for (int k = 2; k <= std::min(nmax + 1, 6); ++k) {
    if (tp.dim(k) > 5000) break;
    SparseMatrix dk = tp.differential(k);
    rep.record("extended d^2=0", "A^" + std::to_string(k), tp.zero(k, k), compose(dk, dk));
  }
  if (P < 0) return rep;
  for (int n = 1; n <= nmax; ++n) {
    // d(pi_{n-1}) on A^{⊗(n+1)}
    SparseMatrix lhs = tp.d_of(tp.map(pi_or_zero(a, n - 1)), n + 1, n - 1);
    SparseMatrix rhs = tp.zero(1, n + 1);
    for (int m = 1; m <= n - 1; ++m) {
      const auto* outer = a.pi_map(m - 1);
      const auto* inner = a.pi_map(n - m - 1);
      if (!outer || !inner) continue;
      SparseMatrix po = tp.map(*outer);
      for (int t = 1; t <= m + 1; ++t) {
        SparseMatrix term = compose(po, tp.extend(*inner, t - 1, m - t + 1));
        long e = static_cast<long>(t) * (n - m) + n + 1;
        rhs = add(rhs, sign_of(e) > 0 ? term : term.negated());
      }
    }
    rep.record("A-infinity", "n=" + std::to_string(n), rhs, lhs);
  }
  return rep;
}

ValidationReport validate_involution(const AInfAlgebraDesc& a) {
  a.check_consistency();
  ValidationReport rep("involution");
  TensorPowers tp(a);
  SparseMatrix s = tp.star();
  rep.record("a**=a", "A", tp.identity(1), compose(s, s));
  SparseMatrix d = tp.differential(1);
  rep.record("d(a*)=d(a)*", "A", compose(s, d), compose(d, s));
  for (const auto& [n, f] : a.pi) {
    if (f.is_zero()) continue;
    SparseMatrix p = tp.map(f);
    SparseMatrix rhs = compose(p, tp.reverse_star(n + 2));
    if ((static_cast<long>(n) * (n + 1) / 2) % 2) rhs = rhs.negated();
    rep.record("involution", "pi_" + std::to_string(n), rhs, compose(s, p));
  }
  return rep;
}

ValidationReport validate_hu(const AInfAlgebraDesc& a, const HuStructureDesc& h) {
  h.check_consistency(a);
  ValidationReport rep("homotopy unit");
  TensorPowers tp(a);
  auto tau = [&](int n, std::vector<int> js) {
    TauSignature s{n, std::move(js)};
    if (const auto* f = h.find(s)) return *f;
    if (s.n == 0 && s.js == std::vector<int>{0}) throw MissingTau("tau_0^0");
    return zero_map(s.arity(), s.degree());
  };
  auto pi = [&](int n) { return pi_or_zero(a, n); };
  auto M = [&](const MultilinearMap& f) { return tp.map(f); };
  auto X = [&](const MultilinearMap& f, int l, int r) { return tp.extend(f, l, r); };
  auto C = [](const SparseMatrix& x, const SparseMatrix& y) { return compose(x, y); };

  const MultilinearMap U = tau(0, {0});
  const MultilinearMap t10 = tau(1, {0}), t11 = tau(1, {1});
  const MultilinearMap t20 = tau(2, {0}), t22 = tau(2, {2}), t220 = tau(2, {2, 0});

  rep.record("d(tau_0^0)=0", "tau_0^0", tp.zero(1, 0), tp.d_of(M(U), 0, 0));
  rep.record("d(tau_1^0)=pi_0(tau_0^0⊗1)-1", "tau_1^0",
             subtract(C(M(pi(0)), X(U, 0, 1)), tp.identity(1)), tp.d_of(M(t10), 1, 1));
  rep.record("d(tau_1^1)=pi_0(1⊗tau_0^0)-1", "tau_1^1",
             subtract(C(M(pi(0)), X(U, 1, 0)), tp.identity(1)), tp.d_of(M(t11), 1, 1));
  {
    SparseMatrix rhs = C(M(pi(0)), X(t10, 0, 1));
    rhs = subtract(rhs, C(M(t10), M(pi(0))));
    rhs = subtract(rhs, C(M(pi(1)), X(U, 0, 2)));
    rep.record("d(tau_2^0)", "tau_2^0", rhs, tp.d_of(M(t20), 2, 2));
  }
  {
    SparseMatrix rhs = C(M(t11), M(t10)).negated();
    rhs = subtract(rhs, C(M(t10), M(t11)));
    rhs = subtract(rhs, C(M(t22), X(U, 0, 1)));
    rhs = add(rhs, C(M(t20), X(U, 1, 0)));
    rep.record("d(tau_2^{2,0})", "tau_2^{2,0}", rhs, tp.d_of(M(t220), 1, 3));
  }
  {
    // displayed tau_3^3 relation
    SparseMatrix rhs = C(M(pi(0)), X(t22, 1, 0));
    rhs = subtract(rhs, C(M(pi(1)), X(t11, 2, 0)));
    rhs = subtract(rhs, C(M(t11), M(pi(1))));
    rhs = subtract(rhs, C(M(t22), X(pi(0), 0, 1)));
    rhs = add(rhs, C(M(t22), X(pi(0), 1, 0)));
    rhs = add(rhs, C(M(pi(2)), X(U, 3, 0)));
    rep.record("d(tau_3^3) display", "tau_3^3", rhs, tp.d_of(M(tau(3, {3})), 3, 3));
  }
  // homotopy unit tau_n^n family
  int K = 0;
  for (const auto& [s, f] : h.tau)
    if (s.q() == 1 && s.js[0] == s.n && !f.is_zero()) K = std::max(K, s.n);
  const int bound = std::max(3, K + std::max(a.effective_order(), 0) + 1);
  for (int n = 2; n <= bound; ++n) {
    if (tp.dim(n) > 20000) {
      rep.note("d(tau_n^n) not checked for n >= " + std::to_string(n) + " (tensor power too large)");
      break;
    }
    SparseMatrix rhs = tp.zero(1, n);
    for (int m = 1; m <= n - 1; ++m) {
      MultilinearMap tm = tau(m, {m});
      const auto* p = a.pi_map(n - m - 1);
      if (tm.is_zero() || !p) continue;
      for (int t = 0; t <= m - 1; ++t) {
        SparseMatrix term = C(M(tm), X(*p, t, m - t - 1));
        rhs = add(rhs, sign_of(static_cast<long>(t) * (n - m) + n) > 0 ? term : term.negated());
      }
    }
    for (int m = 1; m <= n; ++m) {
      const auto* p = a.pi_map(m - 1);
      MultilinearMap tk = tau(n - m, {n - m});
      if (!p || tk.is_zero()) continue;
      SparseMatrix term = C(M(*p), X(tk, m, 0));
      rhs = add(rhs, sign_of(static_cast<long>(m) * n + 1) > 0 ? term : term.negated());
    }
    rep.record("d(tau_n^n)", "n=" + std::to_string(n), rhs,
               tp.d_of(M(tau(n, {n})), n, n));
  }
  for (const auto& [s, f] : h.tau) {
    bool covered = (s.n == 0 && s.js == std::vector<int>{0}) || (s.n == 1 && s.q() == 1) ||
                   (s.n == 2 && s.js == std::vector<int>{0}) ||
                   (s.n == 2 && s.js == std::vector<int>{2, 0}) || (s.q() == 1 && s.js[0] == s.n);
    if (!covered) rep.note("UnsupportedSignature " + s.str() + ": differential relation not validated");
  }
  return rep;
}

ValidationReport validate_involutive_hu(const AInfAlgebraDesc& a, const HuStructureDesc& h) {
  h.check_consistency(a);
  ValidationReport rep("involutive homotopy unit");
  TensorPowers tp(a);
  SparseMatrix s = tp.star();
  for (const auto& [sig, f] : h.tau) {
    if (sig.n < 1 || sig.q() < 1) continue;
    TauSignature partner{sig.n, {}};
    for (auto it = sig.js.rbegin(); it != sig.js.rend(); ++it) partner.js.push_back(sig.n - *it);
    const MultilinearMap* g = h.find(partner);
    MultilinearMap zero = zero_map(sig.arity(), sig.degree());
    if (!g) {
      if (!f.is_zero()) throw MissingPartner(partner.str() + " (partner of " + sig.str() + ")");
      g = &zero;
    }
    long e = static_cast<long>(sig.n) * (sig.n - 1) / 2 + static_cast<long>(sig.q()) * (sig.q() - 1) / 2;
    SparseMatrix rhs = compose(tp.map(*g), tp.reverse_star(sig.arity()));
    if (e % 2) rhs = rhs.negated();
    rep.record("involutive tau", sig.str(), rhs, compose(s, tp.map(f)));
  }
  return rep;
}

}  // namespace dihedral
