#include "dihedral/symmetry.hpp"

#include <algorithm>

namespace dihedral {

DihedralStructure::DihedralStructure(ModulePtr module, SignedMap t, std::optional<SignedMap> r)
    : module_(std::move(module)), t_(std::move(t)), r_(std::move(r)) {
  if (t_.shift() != Bidegree{0, 0}) throw BidegreeMismatch("t must have bidegree (0,0)");
  if (r_ && r_->shift() != Bidegree{0, 0}) throw BidegreeMismatch("r must have bidegree (0,0)");
}

const SignedMap& DihedralStructure::r() const {
  if (!r_) throw MissingReflection("structure has no r");
  return *r_;
}

namespace {

SparseMatrix power(const SparseMatrix& a, int e) {
  SparseMatrix out = SparseMatrix::identity(a.ring(), a.rows());
  for (int i = 0; i < e; ++i) out = compose(a, out);
  return out;
}

SignedMap zero_like(const ModulePtr& m, Bidegree s) { return SignedMap(m, m, s); }

}  // namespace

ValidationReport DihedralStructure::check(const SignedMap* d) const {
  ValidationReport rep("dihedral structure");
  const RingSpec ring = module_->ring();
  for (const auto& deg : module_->degrees()) {
    std::size_t dim = module_->dim(deg);
    SparseMatrix id = SparseMatrix::identity(ring, dim);
    SparseMatrix t = t_.block_or_zero(deg);
    std::string at = to_string(deg);
    rep.record("t^{n+1}=1", at, id, power(t, deg.n + 1));
    if (r_) {
      SparseMatrix r = r_->block_or_zero(deg);
      rep.record("r^2=1", at, id, compose(r, r));
      rep.record("rt=t^{-1}r", at, compose(power(t, deg.n), r), compose(r, t));
    }
  }
  if (d) {
    rep.record("dt=td", "all", map_compose(t_, *d), map_compose(*d, t_));
    if (r_) rep.record("dr=rd", "all", map_compose(*r_, *d), map_compose(*d, *r_));
  }
  return rep;
}

SymmetryOperators build_operators(const DihedralStructure& ds, const SignConventions& c) {
  const auto& M = ds.module();
  const RingSpec ring = M->ring();
  SymmetryOperators ops;
  ops.module = M;
  ops.T = zero_like(M, {0, 0});
  ops.N = zero_like(M, {0, 0});
  ops.one_minus_T = zero_like(M, {0, 0});
  ops.R = zero_like(M, {0, 0});
  ops.RT = zero_like(M, {0, 0});
  ops.has_r = ds.has_r();
  for (const auto& deg : M->degrees()) {
    const int n = deg.n;
    SparseMatrix id = SparseMatrix::identity(ring, M->dim(deg));
    SparseMatrix t = ds.t().block_or_zero(deg);
    SparseMatrix T = (c.t_prefactor && n % 2) ? t.negated() : t;
    // Horner: N = 1 + T(1 + T(...))
    SparseMatrix N = id;
    for (int j = 0; j < n; ++j) N = add(id, compose(T, N));
    SparseMatrix omt = subtract(id, T);
    SparseMatrix z(ring, id.rows(), id.cols());
    if (!(compose(omt, N) == z) || !(compose(N, omt) == z))
      throw StructureInvalid("(1 - T)N = 0 = N(1 - T) fails at " + to_string(deg));
    ops.T.set_block(deg, T);
    ops.N.set_block(deg, N);
    ops.one_minus_T.set_block(deg, omt);
    if (ds.has_r()) {
      SparseMatrix r = ds.r().block_or_zero(deg);
      long e = static_cast<long>(n) * (n + 1) / 2;
      SparseMatrix R = (c.r_prefactor && e % 2) ? r.negated() : r;
      ops.RT.set_block(deg, compose(R, T));
      ops.R.set_block(deg, std::move(R));
    }
  }
  return ops;
}

SignedMap restrict_to_n(const SignedMap& f, int n) {
  SignedMap out(f.source(), f.target(), f.shift());
  for (const auto& [d, b] : f.blocks())
    if (d.n == n) out.set_block(d, b);
  return out;
}

namespace {

std::vector<std::pair<int, FaceIndex>> all_tuples(int max_n) {
  std::vector<std::pair<int, FaceIndex>> work;
  for (int n = 1; n <= max_n; ++n)
    for (int k = 1; k <= n; ++k) {
      std::vector<int> sel(n + 1, 0);
      std::fill(sel.end() - k, sel.end(), 1);
      do {
        FaceIndex idx;
        for (int i = 0; i <= n; ++i)
          if (sel[i]) idx.push_back(i);
        work.emplace_back(n, std::move(idx));
      } while (std::next_permutation(sel.begin(), sel.end()));
    }
  return work;
}

SignedMap face_or_zero(const FaceFamily& ff, int n, const FaceIndex& idx) {
  int k = static_cast<int>(idx.size());
  if (const SignedMap* f = ff.face(n, idx)) return *f;
  return SignedMap(ff.module(), ff.module(), {-k, k - 1});
}

}  // namespace

ValidationReport validate_df_relations(const FaceFamily& ff, const DihedralStructure& ds,
                                       DfChecks which) {
  if (which.reflexive && !ds.has_r()) throw MissingReflection("reflexive checks need r");
  auto work = all_tuples(ff.max_n());
  std::vector<ValidationReport> parts(work.size());
  const std::int64_t W = static_cast<std::int64_t>(work.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t w = 0; w < W; ++w) {
    const auto& [n, idx] = work[w];
    const int k = static_cast<int>(idx.size());
    std::string at = "n=" + std::to_string(n) + " " + to_string(idx);
    SignedMap f = face_or_zero(ff, n, idx);
    auto& rep = parts[w];
    if (which.cyclic) {
      SignedMap lhs = map_compose(f, restrict_to_n(ds.t(), n));
      if (idx[0] > 0) {
        FaceIndex shifted = idx;
        for (auto& i : shifted) --i;
        rep.record("face-rotation", at, map_compose(ds.t(), face_or_zero(ff, n, shifted)),
                   lhs);
      } else {
        FaceIndex wrapped(idx.begin() + 1, idx.end());
        for (auto& i : wrapped) --i;
        wrapped.push_back(n);
        SignedMap rhs = face_or_zero(ff, n, wrapped);
        if (k % 2 == 0) rhs = map_scale(mpq_class(-1), rhs);
        rep.record("face-rotation wrap", at, rhs, lhs);
      }
    }
    if (which.reflexive) {
      FaceIndex mirrored;
      for (auto it = idx.rbegin(); it != idx.rend(); ++it) mirrored.push_back(n - *it);
      SignedMap rhs = map_compose(ds.r(), face_or_zero(ff, n, mirrored));
      if ((static_cast<long>(k) * (k - 1) / 2) % 2) rhs = map_scale(mpq_class(-1), rhs);
      rep.record("face-reflection", at, rhs, map_compose(f, restrict_to_n(ds.r(), n)));
    }
  }
  ValidationReport rep(which.cyclic && which.reflexive ? "DF-module"
                       : which.cyclic                  ? "CF-module"
                                                       : "RF-module");
  for (const auto& p : parts) rep.merge(p);
  return rep;
}

ValidationReport validate_interchange(const SymmetryOperators& ops, const DInfinityModule& d0,
                                      const DInfinityModule& d1) {
  ValidationReport rep("interchange");
  const auto& M = ops.module;
  const int top = M->max_n();
  const std::size_t imax = std::max(d0.size(), d1.size());
  std::vector<std::pair<std::size_t, int>> work;
  for (std::size_t i = 0; i < imax; ++i)
    for (int n = 0; n <= top; ++n) work.emplace_back(i, n);
  std::vector<ValidationReport> parts(work.size());
  const std::int64_t W = static_cast<std::int64_t>(work.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t w = 0; w < W; ++w) {
    auto [i, n] = work[w];
    auto& r = parts[w];
    std::string at = "i=" + std::to_string(i) + " n=" + std::to_string(n);
    SignedMap a = restrict_to_n(d0.component(i), n);
    SignedMap b = restrict_to_n(d1.component(i), n);
    SignedMap omt = restrict_to_n(ops.one_minus_T, n);
    SignedMap N = restrict_to_n(ops.N, n);
    r.record("d0(1-T)=(1-T)d1", at, map_compose(ops.one_minus_T, b), map_compose(a, omt));
    r.record("d1 N = N d0", at, map_compose(ops.N, a), map_compose(b, N));
    if (ops.has_r) {
      SignedMap R = restrict_to_n(ops.R, n);
      SignedMap RT = restrict_to_n(ops.RT, n);
      r.record("d0 R = R d0", at, map_compose(ops.R, a), map_compose(a, R));
      r.record("d1 RT = RT d1", at, map_compose(ops.RT, b), map_compose(b, RT));
      if (i == 0) {
        std::string atn = "n=" + std::to_string(n);
        r.record("(1-T)RT = -R(1-T)", atn, map_scale(mpq_class(-1), map_compose(R, omt)),
                 map_compose(omt, RT));
        r.record("N R = RT N", atn, map_compose(RT, N), map_compose(N, R));
      }
    }
  }
  for (const auto& p : parts) rep.merge(p);
  return rep;
}

BarredOperators build_barred(const SymmetryOperators& ops, const DInfinityModule& d0,
                             const DInfinityModule& d1) {
  const auto& M = *ops.module;
  BarredOperators bar;
  bar.ring = M.ring();
  bar.top = std::max(M.max_total(), 0);
  bar.has_r = ops.has_r;
  TotalLayout layout(M, bar.top);
  std::vector<const SignedMap*> m0, m1;
  for (const auto& c : d0.components()) m0.push_back(&c);
  for (const auto& c : d1.components()) m1.push_back(&c);
  for (int N = 0; N <= bar.top; ++N) {
    bar.dims.push_back(layout.dim(N));
    if (N == 0) {
      bar.b.emplace_back(bar.ring, 0, layout.dim(0));
      bar.bp.emplace_back(bar.ring, 0, layout.dim(0));
    } else {
      bar.b.push_back(totalize_maps(m0, layout, N));
      bar.bp.push_back(totalize_maps(m1, layout, N));
    }
    bar.T.push_back(totalize_maps({&ops.T}, layout, N));
    bar.N.push_back(totalize_maps({&ops.N}, layout, N));
    bar.one_minus_T.push_back(totalize_maps({&ops.one_minus_T}, layout, N));
    bar.R.push_back(totalize_maps({&ops.R}, layout, N));
    bar.RT.push_back(totalize_maps({&ops.RT}, layout, N));
  }
  return bar;
}

ValidationReport validate_barred(const BarredOperators& bar) {
  ValidationReport rep("barred");
  for (int N = 0; N <= bar.top; ++N) {
    std::string at = "N=" + std::to_string(N);
    const auto& omt = bar.one_minus_T[N];
    if (bar.has_r) {
      rep.record("(1-T)RT = -R(1-T)", at, compose(bar.R[N], omt).negated(),
                 compose(omt, bar.RT[N]));
      rep.record("N R = RT N", at, compose(bar.RT[N], bar.N[N]), compose(bar.N[N], bar.R[N]));
    }
    if (N == 0) continue;
    if (bar.has_r) {
      rep.record("b R = R b", at, compose(bar.R[N - 1], bar.b[N]),
                 compose(bar.b[N], bar.R[N]));
      rep.record("b' RT = RT b'", at, compose(bar.RT[N - 1], bar.bp[N]),
                 compose(bar.bp[N], bar.RT[N]));
    }
    rep.record("b(1-T) = (1-T)b'", at, compose(bar.one_minus_T[N - 1], bar.bp[N]),
               compose(bar.b[N], omt));
    rep.record("b' N = N b", at, compose(bar.N[N - 1], bar.b[N]), compose(bar.bp[N], bar.N[N]));
  }
  return rep;
}

}  // namespace dihedral
