#include "dihedral/simplicial.hpp"

#include <algorithm>
#include <numeric>

namespace dihedral {

std::string to_string(const FaceIndex& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s + ")";
}

bool valid_face_index(const FaceIndex& idx, int n) {
  int k = static_cast<int>(idx.size());
  if (k < 1 || k > n) return false;
  for (int s = 0; s < k; ++s) {
    if (idx[s] < 0 || idx[s] > n) return false;
    if (s && idx[s] <= idx[s - 1]) return false;
  }
  return true;
}

FaceFamily::FaceFamily(ModulePtr module, SignedMap d) : module_(std::move(module)), d_(std::move(d)) {
  if (d_.shift() != Bidegree{0, -1}) throw BidegreeMismatch("differential must have bidegree (0,-1)");
}

void FaceFamily::set_face(int n, FaceIndex idx, SignedMap f) {
  if (!valid_face_index(idx, n)) throw InvalidIndices(to_string(idx) + " at n=" + std::to_string(n));
  int k = static_cast<int>(idx.size());
  if (f.shift() != Bidegree{-k, k - 1}) throw BidegreeMismatch("face " + to_string(idx));
  for (const auto& [d, b] : f.blocks())
    if (d.n != n) throw BidegreeMismatch("face " + to_string(idx) + " has a block off degree n");
  if (f.is_zero()) {
    faces_.erase({n, idx});
    return;
  }
  faces_[{n, std::move(idx)}] = std::move(f);
}

const SignedMap* FaceFamily::face(int n, const FaceIndex& idx) const {
  auto it = faces_.find({n, idx});
  return it == faces_.end() ? nullptr : &it->second;
}

std::vector<int> hat_action(const std::vector<int>& sigma, const FaceIndex& indices) {
  const std::size_t k = indices.size();
  std::vector<int> permuted(k);
  for (std::size_t s = 0; s < k; ++s) permuted[s] = indices[sigma[s]];
  std::vector<int> out(k);
  for (std::size_t s = 0; s < k; ++s) {
    int smaller = 0;
    for (std::size_t t = s + 1; t < k; ++t)
      if (permuted[t] < permuted[s]) ++smaller;
    out[s] = permuted[s] - smaller;
  }
  return out;
}

namespace {

bool strictly_increasing(const std::vector<int>& v, std::size_t b, std::size_t e) {
  for (std::size_t i = b + 1; i < e; ++i)
    if (v[i] <= v[i - 1]) return false;
  return true;
}

int permutation_parity(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2;
}

}  // namespace

SignedMap face_differential(const FaceFamily& ff, const FaceIndex& indices, int n) {
  int k = static_cast<int>(indices.size());
  const auto& M = ff.module();
  const SignedMap* f = ff.face(n, indices);
  if (!f) return SignedMap(M, M, {-k, k - 2});
  return map_add(map_compose(ff.d(), *f), map_compose(*f, ff.d()));
}

SignedMap rhs_of_1_1(const FaceFamily& ff, const FaceIndex& indices, int n) {
  if (!valid_face_index(indices, n))
    throw InvalidIndices(to_string(indices) + " at n=" + std::to_string(n));
  const int k = static_cast<int>(indices.size());
  const auto& M = ff.module();
  SignedMap out(M, M, {-k, k - 2});
  std::vector<int> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    std::vector<int> h = hat_action(sigma, indices);
    int sgn = sign_of(permutation_parity(sigma) + 1);
    for (int m = 1; m < k; ++m) {
      if (!strictly_increasing(h, 0, m) || !strictly_increasing(h, m, k)) continue;
      FaceIndex prefix(h.begin(), h.begin() + m), suffix(h.begin() + m, h.end());
      const SignedMap* g = ff.face(n, suffix);
      if (!g) continue;
      const SignedMap* f = ff.face(n - (k - m), prefix);
      if (!f) continue;
      SignedMap term = map_compose(*f, *g);
      out = map_add(out, sgn > 0 ? term : map_scale(mpq_class(-1), term));
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

ValidationReport validate_f_module(const FaceFamily& ff) {
  std::vector<std::pair<int, FaceIndex>> work;
  for (int n = 1; n <= ff.max_n(); ++n)
    for (int k = 1; k <= n; ++k) {
      // all k-subsets of [0, n]
      std::vector<int> sel(n + 1, 0);
      std::fill(sel.end() - k, sel.end(), 1);
      do {
        FaceIndex idx;
        for (int i = 0; i <= n; ++i)
          if (sel[i]) idx.push_back(i);
        work.emplace_back(n, std::move(idx));
      } while (std::next_permutation(sel.begin(), sel.end()));
    }
  std::vector<ValidationReport> parts(work.size());
  const std::int64_t W = static_cast<std::int64_t>(work.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t w = 0; w < W; ++w) {
    const auto& [n, idx] = work[w];
    parts[w].record("face hierarchy", "n=" + std::to_string(n) + " " + to_string(idx),
                    rhs_of_1_1(ff, idx, n), face_differential(ff, idx, n));
  }
  ValidationReport rep("F-module");
  for (const auto& p : parts) rep.merge(p);
  return rep;
}

DInfinityModule::DInfinityModule(ModulePtr module, std::vector<SignedMap> components)
    : module_(std::move(module)), components_(std::move(components)) {
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (components_[i].shift() != Bidegree{-static_cast<int>(i), static_cast<int>(i) - 1})
      throw BidegreeMismatch("d^" + std::to_string(i));
}

SignedMap DInfinityModule::component(std::size_t i) const {
  if (i < components_.size()) return components_[i];
  int ii = static_cast<int>(i);
  return SignedMap(module_, module_, {-ii, ii - 1});
}

ValidationReport DInfinityModule::check_relations(int k_max) const {
  ValidationReport rep("D-infinity relations");
  for (int k = 0; k <= k_max; ++k) {
    SignedMap sum(module_, module_, {-k, k - 2});
    for (int i = 0; i <= k; ++i) {
      if (i >= static_cast<int>(components_.size()) || k - i >= static_cast<int>(components_.size()))
        continue;
      sum = map_add(sum, map_compose(components_[i], components_[k - i]));
    }
    rep.record("sum d^i d^j = 0", "k=" + std::to_string(k), SignedMap(module_, module_, {-k, k - 2}),
               sum);
  }
  return rep;
}

DInfinityModule dq_differentials(const FaceFamily& ff, int q, const SignConventions& c) {
  const auto& M = ff.module();
  std::vector<SignedMap> comps;
  comps.push_back(ff.d());
  int top = std::max(ff.max_n(), 0);
  for (int k = 1; k <= top; ++k) comps.emplace_back(M, M, Bidegree{-k, k - 1});
  for (const auto& [key, f] : ff.faces()) {
    const auto& [n, idx] = key;
    if (idx.back() > n - q) continue;
    long s = std::accumulate(idx.begin(), idx.end(), 0L);
    int sg = c.alternate_dq ? sign_of(s) : 1;
    auto& target = comps[idx.size()];
    target = map_add(target, sg > 0 ? f : map_scale(mpq_class(-1), f));
  }
  while (comps.size() > 1 && comps.back().is_zero()) comps.pop_back();
  return DInfinityModule(M, std::move(comps));
}

TotalLayout::TotalLayout(const BigradedModule& m, int top) : dims_(top + 1, 0), pieces_(top + 1) {
  for (int N = 0; N <= top; ++N)
    for (int k = 0; k <= N; ++k) {
      Bidegree b{k, N - k};
      std::size_t d = m.dim(b);
      if (!d) continue;
      pieces_[N].emplace_back(b, dims_[N]);
      dims_[N] += d;
    }
}

std::size_t TotalLayout::offset(Bidegree b) const {
  int N = b.n + b.m;
  for (const auto& [d, off] : pieces_.at(N))
    if (d == b) return off;
  throw ModuleMismatch("piece " + to_string(b) + " not in layout");
}

SparseMatrix totalize_maps(const std::vector<const SignedMap*>& maps, const TotalLayout& layout,
                           int N) {
  if (maps.empty()) throw ModuleMismatch("totalize_maps needs at least one map");
  const RingSpec ring = maps[0]->ring();
  int s = maps[0]->shift().n + maps[0]->shift().m;
  for (const auto* f : maps)
    if (f->shift().n + f->shift().m != s) throw BidegreeMismatch("mixed total degrees");
  std::size_t rows = layout.dim(N + s), cols = layout.dim(N);
  std::vector<SparseVector> columns(cols);
  for (const auto* f : maps)
    for (const auto& [b, off] : layout.pieces(N)) {
      const SparseMatrix* blk = f->block(b);
      if (!blk) continue;
      std::size_t roff = layout.offset(b + f->shift());
      for (std::size_t j = 0; j < blk->cols(); ++j)
        for (const auto& e : blk->column(j))
          columns[off + j].push_back({static_cast<std::uint32_t>(roff + e.index), e.value});
    }
  SparseMatrix out(ring, rows, cols);
  for (std::size_t j = 0; j < cols; ++j) out.set_column(j, std::move(columns[j]));
  return out;
}

ChainComplex totalize(const DInfinityModule& dm, const std::string& name) {
  const auto& M = *dm.module();
  int top = std::max(M.max_total(), 0);
  TotalLayout layout(M, top);
  std::vector<const SignedMap*> maps;
  for (const auto& c : dm.components()) maps.push_back(&c);
  std::vector<std::size_t> dims;
  std::vector<SparseMatrix> diffs;
  for (int N = 0; N <= top; ++N) {
    dims.push_back(layout.dim(N));
    if (N == 0)
      diffs.emplace_back(M.ring(), 0, layout.dim(0));
    else
      diffs.push_back(totalize_maps(maps, layout, N));
  }
  ChainComplex c(name, M.ring(), std::move(dims), std::move(diffs), top - 1);
  auto sq = c.check_square_zero();
  if (!sq.passed()) throw NotADifferential(sq.to_text());
  return c;
}

}  // namespace dihedral
