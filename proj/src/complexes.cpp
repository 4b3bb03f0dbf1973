#include "dihedral/complexes.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "dihedral/detail/echelon.hpp"

namespace dihedral {

MultiComplex::MultiComplex(std::string name, RingSpec ring, int axes, int top)
    : name_(std::move(name)), ring_(ring), axes_(axes), top_(top) {}

void MultiComplex::add_cell(const MultiDegree& deg, std::size_t dim) {
  if (static_cast<int>(deg.size()) != axes_) throw ShapeMismatch(name_ + ": cell arity");
  cells_[deg] = dim;
}

void MultiComplex::add_arrow(const MultiDegree& from, const MultiDegree& to,
                             std::shared_ptr<const SparseMatrix> block, int sign) {
  auto f = cells_.find(from);
  auto t = cells_.find(to);
  if (f == cells_.end() || t == cells_.end()) throw ShapeMismatch(name_ + ": arrow between unknown cells");
  if (block->cols() != f->second || block->rows() != t->second)
    throw ShapeMismatch(name_ + ": arrow block shape");
  int sf = std::accumulate(from.begin(), from.end(), 0);
  int st = std::accumulate(to.begin(), to.end(), 0);
  if (st != sf - 1) throw BidegreeMismatch(name_ + ": arrows must lower total degree by one");
  out_[from].push_back(arrows_.size());
  arrows_.push_back({from, to, std::move(block), sign});
}

MultiComplex MultiComplex::restricted(const std::function<bool(const MultiDegree&)>& keep,
                                      std::string name) const {
  MultiComplex out(std::move(name), ring_, axes_, top_);
  for (const auto& [d, dim] : cells_)
    if (keep(d)) out.add_cell(d, dim);
  for (const auto& a : arrows_)
    if (keep(a.from) && keep(a.to)) out.add_arrow(a.from, a.to, a.block, a.sign);
  return out;
}

std::optional<std::size_t> MultiComplex::Layout::offset(const MultiDegree& d) const {
  for (const auto& [c, off] : cells)
    if (c == d) return off;
  return std::nullopt;
}

MultiComplex::Layout MultiComplex::layout(int N, const Order& order) const {
  Layout l;
  if (N < 0) return l;
  std::vector<MultiDegree> ds;
  for (const auto& [d, dim] : cells_)
    if (std::accumulate(d.begin(), d.end(), 0) == N) ds.push_back(d);
  if (order) std::stable_sort(ds.begin(), ds.end(), order);
  for (const auto& d : ds) {
    l.cells.emplace_back(d, l.dim);
    l.dim += cells_.at(d);
  }
  return l;
}

SparseMatrix MultiComplex::total_differential(int N, const Order& order) const {
  Layout src = layout(N, order);
  Layout tgt = layout(N - 1, order);
  SparseMatrix out(ring_, tgt.dim, src.dim);
  for (const auto& [cell, off] : src.cells) {
    auto it = out_.find(cell);
    if (it == out_.end()) continue;
    std::vector<std::pair<const Arrow*, std::size_t>> arrows;
    for (std::size_t a : it->second) arrows.emplace_back(&arrows_[a], *tgt.offset(arrows_[a].to));
    const std::int64_t C = static_cast<std::int64_t>(cells_.at(cell));
    std::vector<SparseVector> cols(C);
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t j = 0; j < C; ++j)
      for (const auto& [a, roff] : arrows)
        for (const auto& e : a->block->column(j))
          cols[j].push_back({static_cast<std::uint32_t>(roff + e.index),
                             a->sign > 0 ? e.value : mpq_class(-e.value)});
    for (std::int64_t j = 0; j < C; ++j) out.set_column(off + j, std::move(cols[j]));
  }
  return out;
}

ChainComplex MultiComplex::total(const Order& order) const {
  std::vector<std::size_t> dims;
  std::vector<SparseMatrix> diffs;
  for (int N = 0; N <= top_; ++N) {
    dims.push_back(layout(N, order).dim);
    diffs.push_back(total_differential(N, order));
  }
  return ChainComplex("Tot " + name_, ring_, std::move(dims), std::move(diffs), top_ - 1);
}

SparseMatrix cell_map(const RingSpec& ring, const MultiComplex::Layout& src,
                      const MultiComplex::Layout& tgt, const CellCorrespondence& f) {
  SparseMatrix out(ring, tgt.dim, src.dim);
  for (std::size_t c = 0; c < src.cells.size(); ++c) {
    const auto& [cell, off] = src.cells[c];
    std::size_t end = c + 1 < src.cells.size() ? src.cells[c + 1].second : src.dim;
    auto image = f(cell);
    if (!image) continue;
    auto toff = tgt.offset(image->first);
    if (!toff) throw ShapeMismatch("cell_map: target cell missing");
    for (std::size_t j = off; j < end; ++j)
      out.set_column(j, {{static_cast<std::uint32_t>(*toff + j - off), mpq_class(image->second)}});
  }
  return out;
}

DihedralData prepare(const AInfAlgebraDesc& a, int rho, int n_max, const RingSpec& ring,
                     const SignConventions& conv) {
  DihedralData d;
  d.bundle = build_tensor_module(a.with_ring(ring), n_max, rho, conv);
  SymmetryOperators ops = build_operators(*d.bundle.structure, conv);
  DInfinityModule d0 = dq_differentials(*d.bundle.faces, 0, conv);
  DInfinityModule d1 = dq_differentials(*d.bundle.faces, 1, conv);
  d.bar = build_barred(ops, d0, d1);
  return d;
}

DihedralData flip_rho(const DihedralData& d) {
  DihedralData out = d;
  out.bundle.rho = -d.bundle.rho;
  for (auto& m : out.bar.R) m = m.negated();
  for (auto& m : out.bar.RT) m = m.negated();
  return out;
}

namespace {

class Blocks {
 public:
  explicit Blocks(const BarredOperators& bar) : bar_(bar) {}

  std::shared_ptr<const SparseMatrix> get(const std::string& kind, int n) {
    auto key = std::make_pair(kind, n);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    SparseMatrix m;
    SparseMatrix id = SparseMatrix::identity(bar_.ring, bar_.dims[n]);
    if (kind == "b") m = bar_.b[n];
    else if (kind == "bp") m = bar_.bp[n];
    else if (kind == "1-T") m = bar_.one_minus_T[n];
    else if (kind == "N") m = bar_.N[n];
    else if (kind == "1+R") m = add(id, bar_.R[n]);
    else if (kind == "1-R") m = subtract(id, bar_.R[n]);
    else if (kind == "1+RT") m = add(id, bar_.RT[n]);
    else m = subtract(id, bar_.RT[n]);
    auto p = std::make_shared<const SparseMatrix>(std::move(m));
    cache_[key] = p;
    return p;
  }

 private:
  const BarredOperators& bar_;
  std::map<std::pair<std::string, int>, std::shared_ptr<const SparseMatrix>> cache_;
};

int parity_sign(int e) { return e % 2 ? -1 : 1; }

void require_r(const DihedralData& d, const char* what) {
  if (!d.bar.has_r) throw MissingReflection(std::string(what) + " needs r");
}

// Columns alternate b and -b' with m; rows alternate 1-T and N.
void add_cyclic_arrows(MultiComplex& c, Blocks& blk, const MultiDegree& deg, int n, int m,
                       const std::function<MultiDegree(int, int)>& at) {
  if (n >= 1) {
    if (m % 2 == 0) c.add_arrow(deg, at(n - 1, m), blk.get("b", n), 1);
    else c.add_arrow(deg, at(n - 1, m), blk.get("bp", n), -1);
  }
  if (m >= 1) c.add_arrow(deg, at(n, m - 1), blk.get(m % 2 ? "1-T" : "N", n), 1);
}

}  // namespace

MultiComplex build_cyclic_bicomplex(const DihedralData& d) {
  MultiComplex c("C", d.bar.ring, 2, d.top());
  Blocks blk(d.bar);
  for (int n = 0; n <= d.top(); ++n)
    for (int m = 0; n + m <= d.top(); ++m) c.add_cell({n, m}, d.bar.dims[n]);
  auto at = [](int n, int m) { return MultiDegree{n, m}; };
  for (int n = 0; n <= d.top(); ++n)
    for (int m = 0; n + m <= d.top(); ++m) add_cyclic_arrows(c, blk, {n, m}, n, m, at);
  return c;
}

MultiComplex build_dihedral_triple(const DihedralData& d) {
  require_r(d, "dihedral triple complex");
  MultiComplex c("D", d.bar.ring, 3, d.top());
  Blocks blk(d.bar);
  const int top = d.top();
  for (int n = 0; n <= top; ++n)
    for (int m = 0; n + m <= top; ++m)
      for (int l = 0; n + m + l <= top; ++l) c.add_cell({n, m, l}, d.bar.dims[n]);
  for (int n = 0; n <= top; ++n)
    for (int m = 0; n + m <= top; ++m)
      for (int l = 0; n + m + l <= top; ++l) {
        MultiDegree deg{n, m, l};
        add_cyclic_arrows(c, blk, deg, n, m, [l](int a, int b) { return MultiDegree{a, b, l}; });
        if (l == 0) continue;
        const bool le = l % 2 == 0;
        std::string kind;
        int sign;
        switch (m % 4) {
          case 0: kind = le ? "1+R" : "1-R"; sign = parity_sign(n); break;
          case 1: kind = le ? "1-RT" : "1+RT"; sign = parity_sign(n + 1); break;
          case 2: kind = le ? "1-R" : "1+R"; sign = parity_sign(n); break;
          default: kind = le ? "1+RT" : "1-RT"; sign = parity_sign(n + 1); break;
        }
        c.add_arrow(deg, {n, m, l - 1}, blk.get(kind, n), sign);
      }
  return c;
}

MultiComplex build_reflexive_bicomplex(const DihedralData& d) {
  require_r(d, "reflexive bicomplex");
  MultiComplex c("R", d.bar.ring, 2, d.top());
  Blocks blk(d.bar);
  for (int n = 0; n <= d.top(); ++n)
    for (int m = 0; n + m <= d.top(); ++m) c.add_cell({n, m}, d.bar.dims[n]);
  for (int n = 0; n <= d.top(); ++n)
    for (int m = 0; n + m <= d.top(); ++m) {
      if (n >= 1) c.add_arrow({n, m}, {n - 1, m}, blk.get("b", n), 1);
      if (m >= 1) c.add_arrow({n, m}, {n, m - 1}, blk.get(m % 2 ? "1-R" : "1+R", n), parity_sign(n));
    }
  return c;
}

MultiComplex build_q_bicomplex(const DihedralData& d, const HuStructureDesc* hu) {
  if (!hu || hu->empty()) throw MissingHuStructure("Q bicomplex needs a homotopy unit");
  require_r(d, "Q bicomplex");
  MultiComplex c("Q", d.bar.ring, 2, d.top());
  Blocks blk(d.bar);
  for (int n = 0; n <= d.top(); ++n)
    for (int m = 0; n + m <= d.top(); ++m) c.add_cell({n, m}, d.bar.dims[n]);
  for (int n = 0; n <= d.top(); ++n)
    for (int m = 0; n + m <= d.top(); ++m) {
      if (n >= 1) c.add_arrow({n, m}, {n - 1, m}, blk.get("bp", n), -1);
      if (m >= 1)
        c.add_arrow({n, m}, {n, m - 1}, blk.get(m % 2 ? "1+RT" : "1-RT", n), parity_sign(n + 1));
    }
  return c;
}

bool dtilde_order(const MultiDegree& x, const MultiDegree& y) {
  int ax = x[0] + x[2], ay = y[0] + y[2];
  if (ax != ay) return ax < ay;
  return x[0] < y[0];
}

namespace {

template <class F>
struct QuotientSpace {
  detail::Echelon<F> ech;
  std::vector<std::int64_t> coord;  // column -> quotient coordinate, -1 on pivots
  std::size_t dim = 0;

  QuotientSpace(const F& f, std::size_t n, const std::vector<const SparseMatrix*>& gens)
      : ech(f, n, n), coord(n, -1) {
    for (const auto* g : gens)
      for (std::size_t j = 0; j < g->cols(); ++j) ech.insert(detail::to_field(f, g->column(j)));
    for (std::size_t c = 0; c < n; ++c)
      if (ech.pivot_row(static_cast<std::uint32_t>(c)) < 0) coord[c] = static_cast<std::int64_t>(dim++);
  }

  SparseVector project(std::span<const Entry> v) const {
    auto res = ech.reduce(detail::to_field(ech.field(), v));
    SparseVector out;
    for (const auto& [i, x] : res) out.push_back({static_cast<std::uint32_t>(coord[i]), ech.field().to(x)});
    return out;
  }
};

template <class F>
ChainComplex quotient_complex(const F& f, const std::string& name, const BarredOperators& bar,
                              const std::vector<std::vector<const SparseMatrix*>>& gens,
                              ValidationReport& rep) {
  std::vector<QuotientSpace<F>> qs;
  for (int N = 0; N <= bar.top; ++N) qs.emplace_back(f, bar.dims[N], gens[N]);
  std::vector<std::size_t> dims;
  std::vector<SparseMatrix> diffs;
  for (int N = 0; N <= bar.top; ++N) {
    dims.push_back(qs[N].dim);
    if (N == 0) {
      diffs.emplace_back(bar.ring, 0, qs[0].dim);
      continue;
    }
    SparseMatrix m(bar.ring, qs[N - 1].dim, qs[N].dim);
    for (std::size_t c = 0; c < bar.dims[N]; ++c)
      if (qs[N].coord[c] >= 0) m.set_column(qs[N].coord[c], qs[N - 1].project(bar.b[N].column(c)));
    diffs.push_back(std::move(m));
    // b maps the subspace into the subspace
    bool ok = true;
    for (const auto* g : gens[N]) {
      SparseMatrix bg = compose(bar.b[N], *g);
      for (std::size_t j = 0; j < bg.cols() && ok; ++j) ok = qs[N - 1].project(bg.column(j)).empty();
    }
    rep.record_bool("b descends to " + name, "N=" + std::to_string(N), ok);
  }
  return ChainComplex(name, bar.ring, std::move(dims), std::move(diffs), bar.top - 1);
}

}  // namespace

Quotients build_quotient_complexes(const DihedralData& d) {
  const auto& bar = d.bar;
  require_r(d, "quotient complexes");
  std::vector<SparseMatrix> one_minus_R;
  for (int N = 0; N <= bar.top; ++N)
    one_minus_R.push_back(subtract(SparseMatrix::identity(bar.ring, bar.dims[N]), bar.R[N]));
  std::vector<std::vector<const SparseMatrix*>> gl, gm, gn;
  for (int N = 0; N <= bar.top; ++N) {
    gl.push_back({&bar.one_minus_T[N]});
    gm.push_back({&bar.one_minus_T[N], &one_minus_R[N]});
    gn.push_back({&one_minus_R[N]});
  }
  Quotients q;
  detail::with_field(bar.ring, [&](const auto& f) {
    q.L = quotient_complex(f, "L", bar, gl, q.descends);
    q.M = quotient_complex(f, "M", bar, gm, q.descends);
    q.N = quotient_complex(f, "N", bar, gn, q.descends);
    return 0;
  });
  return q;
}

PStructure build_p_structure(const DihedralData& d, const HuStructureDesc* hu) {
  DihedralData minus = flip_rho(d);
  PStructure ps{build_dihedral_triple(d),
                build_dihedral_triple(minus),
                build_reflexive_bicomplex(d),
                build_q_bicomplex(d, hu),
                MultiComplex("P", d.bar.ring, 3, d.top()),
                {}, {}, {}, {}, {}, {}, {}, {}, {}};
  ps.triple_minus = ps.triple_minus.restricted([](const MultiDegree&) { return true; }, "D(-rho)");
  ps.p = ps.triple.restricted([](const MultiDegree& x) { return x[1] <= 1; }, "P");
  ps.tot_d = ps.triple.total(dtilde_order);
  ps.tot_d_minus = ps.triple_minus.total(dtilde_order);
  ps.tot_r = ps.reflexive.total();
  ps.tot_q = ps.q.total();
  ps.tot_p = ps.p.total(dtilde_order);
  const RingSpec& ring = d.bar.ring;
  for (int N = 0; N <= d.top(); ++N) {
    auto lp = ps.p.layout(N, dtilde_order);
    auto ld = ps.triple.layout(N, dtilde_order);
    ps.j.push_back(cell_map(ring, lp, ld, [](const MultiDegree& x) {
      return std::optional<std::pair<MultiDegree, int>>({x, 1});
    }));
    ps.proj.push_back(cell_map(ring, ld, ps.triple_minus.layout(N - 2, dtilde_order),
                               [](const MultiDegree& x) -> std::optional<std::pair<MultiDegree, int>> {
                                 if (x[1] < 2) return std::nullopt;
                                 return std::make_pair(MultiDegree{x[0], x[1] - 2, x[2]}, 1);
                               }));
    ps.alpha.push_back(cell_map(ring, ps.reflexive.layout(N), lp, [](const MultiDegree& x) {
      return std::optional<std::pair<MultiDegree, int>>({MultiDegree{x[0], 0, x[1]}, 1});
    }));
    ps.beta.push_back(cell_map(ring, lp, ps.q.layout(N - 1),
                               [](const MultiDegree& x) -> std::optional<std::pair<MultiDegree, int>> {
                                 if (x[1] != 1) return std::nullopt;
                                 return std::make_pair(MultiDegree{x[0], x[2]}, 1);
                               }));
  }
  return ps;
}

ValidationReport validate_p_structure(const PStructure& ps) {
  ValidationReport rep("P structure");
  const int top = ps.tot_p.top();
  const RingSpec& ring = ps.tot_p.ring();
  auto zero = [&](std::size_t r, std::size_t c) { return SparseMatrix(ring, r, c); };
  for (int N = 0; N <= top; ++N) {
    std::string at = "N=" + std::to_string(N);
    rep.record("p j = 0", at, zero(ps.proj[N].rows(), ps.j[N].cols()), compose(ps.proj[N], ps.j[N]));
    rep.record("beta alpha = 0", at, zero(ps.beta[N].rows(), ps.alpha[N].cols()),
               compose(ps.beta[N], ps.alpha[N]));
    rep.record_bool("dim P = dim R + dim Q[-1]", at,
                    ps.tot_p.dim(N) == ps.tot_r.dim(N) + ps.tot_q.dim(N - 1));
    rep.record_bool("dim D = dim P + dim D(-rho)[-2]", at,
                    ps.tot_d.dim(N) == ps.tot_p.dim(N) + ps.tot_d_minus.dim(N - 2));
    if (N == 0) continue;
    rep.record("j chain map", at, compose(ps.j[N - 1], ps.tot_p.differential(N)),
               compose(ps.tot_d.differential(N), ps.j[N]));
    rep.record("alpha chain map", at, compose(ps.alpha[N - 1], ps.tot_r.differential(N)),
               compose(ps.tot_p.differential(N), ps.alpha[N]));
    if (N >= 2) {
      rep.record("p chain map", at, compose(ps.proj[N - 1], ps.tot_d.differential(N)),
                 compose(ps.tot_d_minus.differential(N - 2), ps.proj[N]));
      rep.record("beta chain map", at, compose(ps.beta[N - 1], ps.tot_p.differential(N)),
                 compose(ps.tot_q.differential(N - 1), ps.beta[N]));
    }
  }
  return rep;
}

ValidationReport validate_dtilde_permutation(const MultiComplex& triple) {
  ValidationReport rep("D vs D~");
  auto perm = [&](int N) {
    return cell_map(triple.ring(), triple.layout(N), triple.layout(N, dtilde_order),
                    [](const MultiDegree& x) {
                      return std::optional<std::pair<MultiDegree, int>>({x, 1});
                    });
  };
  SparseMatrix prev = perm(0);
  for (int N = 1; N <= triple.top(); ++N) {
    SparseMatrix cur = perm(N);
    rep.record("Tot D~ = permuted Tot D", "N=" + std::to_string(N),
               compose(prev, triple.total_differential(N)),
               compose(triple.total_differential(N, dtilde_order), cur));
    prev = std::move(cur);
  }
  return rep;
}

void dump_complex(std::ostream& out, const ChainComplex& c) {
  out << "% complex " << c.name() << " ring " << c.ring().name() << " window 0.." << c.window_hi()
      << "\n";
  for (int N = 0; N <= c.top(); ++N) {
    const auto& m = c.differential(N);
    out << "degree " << N << " " << m.rows() << " " << m.cols() << " " << m.nnz() << "\n";
    for (const auto& t : m.triplets()) out << t.row + 1 << " " << t.col + 1 << " " << t.value.get_str() << "\n";
  }
}

}  // namespace dihedral

namespace dihedral {

namespace {

SparseMatrix hcat(const std::vector<const SparseMatrix*>& ms) {
  std::size_t cols = 0;
  for (const auto* m : ms) cols += m->cols();
  SparseMatrix out(ms[0]->ring(), ms[0]->rows(), cols);
  std::size_t at = 0;
  for (const auto* m : ms)
    for (std::size_t j = 0; j < m->cols(); ++j) {
      auto c = m->column(j);
      out.set_column(at++, SparseVector(c.begin(), c.end()));
    }
  return out;
}

// Is every column of w in the Z-span of the columns of a?
bool in_lattice(const SmithAudit& a, const SparseMatrix& w) {
  const auto& f = a.result.invariant_factors;
  for (std::size_t j = 0; j < w.cols(); ++j) {
    auto col = w.column(j);
    for (std::size_t i = 0; i < a.u.size(); ++i) {
      mpz_class y = 0;
      for (const auto& e : col) y += a.u[i][e.index] * e.value.get_num();
      if (i < a.result.rank ? y % f[i] != 0 : y != 0) return false;
    }
  }
  return true;
}

}  // namespace

ValidationReport validate_integral_quotients(const DihedralData& d) {
  const auto& bar = d.bar;
  if (bar.ring.kind() != RingSpec::Kind::integers) throw NotIntegerRing("integral quotients need Z");
  require_r(d, "quotient complexes");
  ValidationReport rep("integral quotients");
  std::vector<SparseMatrix> one_minus_R;
  for (int N = 0; N <= bar.top; ++N)
    one_minus_R.push_back(subtract(SparseMatrix::identity(bar.ring, bar.dims[N]), bar.R[N]));
  auto gens = [&](const std::string& q, int N) {
    if (q == "L") return hcat({&bar.one_minus_T[N]});
    if (q == "N") return hcat({&one_minus_R[N]});
    return hcat({&bar.one_minus_T[N], &one_minus_R[N]});
  };
  for (int N = 2; N <= bar.top; ++N)
    rep.record("b b = 0", "N=" + std::to_string(N), SparseMatrix(bar.ring, bar.dims[N - 2], bar.dims[N]),
               compose(bar.b[N - 1], bar.b[N]));
  for (const std::string q : {"L", "M", "N"}) {
    SmithAudit below = smith_normal_form_audited(gens(q, 0));
    for (int N = 1; N <= bar.top; ++N) {
      SparseMatrix g = gens(q, N);
      rep.record_bool("b descends to " + q + " over Z", "N=" + std::to_string(N),
                      in_lattice(below, compose(bar.b[N], g)));
      if (N < bar.top) below = smith_normal_form_audited(g);
    }
  }
  return rep;
}

}  // namespace dihedral
