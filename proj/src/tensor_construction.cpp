#include "dihedral/tensor_construction.hpp"

#include <algorithm>

namespace dihedral {

TensorIndex::TensorIndex(const AInfAlgebraDesc& a, int n_max) : n_max_(n_max), d_(a.dim()) {
  if (n_max < 0) throw SemanticError("n_max must be >= 0");
  if (d_ == 0) {
    pos_.resize(n_max + 1);
    deg_.resize(n_max + 1);
    return;
  }
  for (int n = 0; n <= n_max; ++n) {
    std::uint64_t size = 1;
    for (int i = 0; i <= n; ++i) {
      size *= d_;
      if (size > (1ULL << 26)) throw SemanticError("tensor power too large for n_max");
    }
    pos_.emplace_back(size, -1);
    deg_.emplace_back(size, 0);
    for (std::uint64_t code = 0; code < size; ++code) {
      auto t = decode(n, code);
      int m = 0;
      for (int g : t) m += a.degree(g);
      deg_[n][code] = m;
      if (n + m > n_max) continue;
      auto& p = pieces_[{n, m}];
      pos_[n][code] = static_cast<std::int64_t>(p.size());
      p.push_back(code);
    }
  }
}

std::uint64_t TensorIndex::encode(const std::vector<int>& t) const {
  std::uint64_t c = 0;
  for (int g : t) c = c * d_ + static_cast<std::uint64_t>(g);
  return c;
}

std::vector<int> TensorIndex::decode(int n, std::uint64_t code) const {
  std::vector<int> t(n + 1);
  for (int i = n; i >= 0; --i) {
    t[i] = static_cast<int>(code % d_);
    code /= d_;
  }
  return t;
}

const std::vector<std::uint64_t>& TensorIndex::piece(Bidegree b) const {
  static const std::vector<std::uint64_t> empty;
  auto it = pieces_.find(b);
  return it == pieces_.end() ? empty : it->second;
}

namespace {

using Terms = std::vector<std::pair<std::vector<int>, mpq_class>>;

struct Ctx {
  const AInfAlgebraDesc& a;
  const TensorIndex& idx;
  const ModulePtr& module;
};

// Builds a map of the given bidegree column by column; fn(n, m, tuple)
// returns target tuples with coefficients. Targets outside the truncation
// are dropped. only_n < 0 means all simplicial degrees.
template <class Fn>
SignedMap build_map(const Ctx& ctx, Bidegree shift, int only_n, Fn fn) {
  SignedMap out(ctx.module, ctx.module, shift);
  for (const auto& deg : ctx.module->degrees()) {
    if (only_n >= 0 && deg.n != only_n) continue;
    Bidegree tgt = deg + shift;
    std::size_t rows = ctx.module->dim(tgt);
    if (rows == 0 || tgt.n < 0) continue;
    const auto& codes = ctx.idx.piece(deg);
    std::vector<SparseVector> cols(codes.size());
    const std::int64_t C = static_cast<std::int64_t>(codes.size());
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t j = 0; j < C; ++j) {
      auto t = ctx.idx.decode(deg.n, codes[j]);
      for (auto& [v, c] : fn(deg.n, deg.m, t)) {
        std::int64_t p = ctx.idx.position(tgt.n, ctx.idx.encode(v));
        if (p < 0) continue;
        cols[j].push_back({static_cast<std::uint32_t>(p), std::move(c)});
      }
    }
    SparseMatrix m(ctx.module->ring(), rows, codes.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, std::move(cols[j]));
    out.set_block(deg, std::move(m));
  }
  return out;
}

long prefix_degree(const AInfAlgebraDesc& a, const std::vector<int>& t, int upto) {
  long s = 0;
  for (int i = 0; i < upto; ++i) s += a.degree(t[i]);
  return s;
}

mpq_class signed_coeff(long e, const mpq_class& c) { return sign_of(e) > 0 ? c : mpq_class(-c); }

}  // namespace

TensorModuleBundle build_tensor_module(const AInfAlgebraDesc& a_in, int n_max, int rho,
                                       const SignConventions& conv) {
  a_in.check_consistency();
  TensorModuleBundle B;
  B.algebra = a_in;
  B.rho = rho == 0 ? a_in.rho : rho;
  if (B.rho != 1 && B.rho != -1) throw SemanticError("rho must be +1 or -1");
  B.n_max = n_max;
  B.conventions = conv;
  const AInfAlgebraDesc& a = B.algebra;
  auto index = std::make_shared<TensorIndex>(a, n_max);
  B.index = index;

  auto module = std::make_shared<BigradedModule>(a.ring);
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; n + m <= n_max; ++m) {
      const auto& codes = index->piece({n, m});
      if (codes.empty()) continue;
      std::vector<std::string> labels;
      labels.reserve(codes.size());
      for (auto code : codes) {
        std::string s;
        for (int g : index->decode(n, code)) s += (s.empty() ? "" : "|") + a.generators[g].name;
        labels.push_back(std::move(s));
      }
      module->add_piece({n, m}, std::move(labels));
    }
  B.module = module;
  Ctx ctx{a, *index, B.module};

  B.d = build_map(ctx, {0, -1}, -1, [&](int n, int, const std::vector<int>& t) {
    Terms out;
    for (int i = 0; i <= n; ++i) {
      auto it = a.differential.find(t[i]);
      if (it == a.differential.end()) continue;
      long e = prefix_degree(a, t, i);
      for (const auto& [h, c] : it->second) {
        auto v = t;
        v[i] = h;
        out.emplace_back(std::move(v), signed_coeff(e, c));
      }
    }
    return out;
  });

  SignedMap t = build_map(ctx, {0, 0}, -1, [&](int n, int, const std::vector<int>& x) {
    std::vector<int> v;
    v.push_back(x[n]);
    v.insert(v.end(), x.begin(), x.begin() + n);
    long e = static_cast<long>(a.degree(x[n])) * prefix_degree(a, x, n);
    return Terms{{std::move(v), mpq_class(sign_of(e))}};
  });

  SignedMap r = build_map(ctx, {0, 0}, -1, [&](int n, int, const std::vector<int>& x) {
    long e = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) e += static_cast<long>(a.degree(x[i])) * a.degree(x[j]);
    // factors in order a0*, an*, ..., a1*
    std::vector<int> order{0};
    for (int i = n; i >= 1; --i) order.push_back(i);
    Terms terms{{{}, mpq_class(B.rho * sign_of(e))}};
    for (int i : order) {
      Terms next;
      for (const auto& [pre, c] : terms)
        for (const auto& [h, y] : a.star(x[i])) {
          auto v = pre;
          v.push_back(h);
          next.emplace_back(std::move(v), c * y);
        }
      terms = std::move(next);
    }
    return terms;
  });

  auto ds = std::make_shared<DihedralStructure>(B.module, std::move(t), std::move(r));
  auto chk = ds->check(&B.d);
  if (!chk.passed()) throw StructureInvalid(chk.to_text());
  B.structure = ds;
  B.faces = std::make_shared<FaceFamily>(build_faces(B, a));
  return B;
}

FaceFamily build_faces(const TensorModuleBundle& B, const AInfAlgebraDesc& a) {
  Ctx ctx{a, *B.index, B.module};
  FaceFamily ff(B.module, B.d);
  for (int n = 1; n <= B.n_max; ++n) {
    for (int k = 1; k <= n; ++k) {
      const MultilinearMap* p = a.pi_map(k - 1);
      if (!p) continue;
      auto consecutive = [&](int j) {
        return build_map(ctx, {-k, k - 1}, n, [&, j](int, int m, const std::vector<int>& x) {
          Terms out;
          std::vector<int> in(x.begin() + j, x.begin() + j + k + 1);
          auto it = p->table.find(in);
          if (it == p->table.end()) return out;
          long e = static_cast<long>(k) * (m - 1) + static_cast<long>(k - 1) * prefix_degree(a, x, j);
          for (const auto& [g, c] : it->second) {
            std::vector<int> v(x.begin(), x.begin() + j);
            v.push_back(g);
            v.insert(v.end(), x.begin() + j + k + 1, x.end());
            out.emplace_back(std::move(v), signed_coeff(e, c));
          }
          return out;
        });
      };
      SignedMap first = consecutive(0);
      for (int j = 0; j <= n - k; ++j) {
        FaceIndex idx;
        for (int i = j; i < j + k; ++i) idx.push_back(i);
        ff.set_face(n, idx, j == 0 ? first : consecutive(j));
      }
      // wrap-around tuples (0..k-q-1, n-q+1..n) = ±∂_(0..k-1) t^q
      SignedMap tn = restrict_to_n(B.structure->t(), n);
      SignedMap tq = tn;
      for (int q = 1; q <= k; ++q) {
        if (q > 1) tq = map_compose(tn, tq);
        FaceIndex idx;
        for (int i = 0; i < k - q; ++i) idx.push_back(i);
        for (int i = n - q + 1; i <= n; ++i) idx.push_back(i);
        SignedMap f = map_compose(first, tq);
        if (B.conventions.wrap_sign && (static_cast<long>(q) * (k - 1)) % 2)
          f = map_scale(mpq_class(-1), f);
        ff.set_face(n, idx, std::move(f));
      }
    }
  }
  return ff;
}

std::vector<SignedMap> build_s_maps(const TensorModuleBundle& B, const HuStructureDesc& h) {
  const AInfAlgebraDesc& a = B.algebra;
  Ctx ctx{a, *B.index, B.module};
  HuStructureDesc hr = h.with_ring(a.ring);
  std::vector<SignedMap> s;
  for (int k = 0; k <= B.n_max + 1; ++k) {
    MultilinearMap tau = hr.tau_kk(k);
    if (tau.is_zero()) {
      s.emplace_back(B.module, B.module, Bidegree{1 - k, k});
      continue;
    }
    s.push_back(build_map(ctx, {1 - k, k}, -1, [&](int n, int p, const std::vector<int>& x) {
      Terms out;
      if (k > n + 1) return out;
      std::vector<int> in(x.begin() + (n - k + 1), x.end());
      auto it = tau.table.find(in);
      if (it == tau.table.end()) return out;
      long eps = static_cast<long>(k - 1) * p + static_cast<long>(n - k + 1) * k +
                 static_cast<long>(k) * (k - 1) / 2 + n + 1;
      long e = B.conventions.s_epsilon ? eps : 0;
      e += static_cast<long>(k) * prefix_degree(a, x, n - k + 1);
      for (const auto& [g, c] : it->second) {
        std::vector<int> v(x.begin(), x.begin() + (n - k + 1));
        v.push_back(g);
        out.emplace_back(std::move(v), signed_coeff(e, c));
      }
      return out;
    }));
  }
  return s;
}

ValidationReport validate_contracting(const TensorModuleBundle& B,
                                      const std::vector<SignedMap>& s) {
  ValidationReport rep("contracting homotopy");
  const auto& M = B.module;
  DInfinityModule d1 = dq_differentials(*B.faces, 1, B.conventions);
  const int limit = B.n_max - 1;
  auto in_window = [&](const SignedMap& f) {
    SignedMap out(f.source(), f.target(), f.shift());
    for (const auto& [d, b] : f.blocks())
      if (d.n + d.m <= limit) out.set_block(d, b);
    return out;
  };
  for (int k = 0; k <= B.n_max + 1; ++k) {
    SignedMap sum(M, M, {1 - k, k - 1});
    for (int j = 0; j <= k; ++j) {
      int i = k - j;
      if (j >= static_cast<int>(s.size())) continue;
      SignedMap di = d1.component(i);
      sum = map_add(sum, map_compose(di, s[j]));
      sum = map_add(sum, map_compose(s[j], di));
    }
    SignedMap expect(M, M, {1 - k, k - 1});
    if (k == 1) expect = SignedMap::identity(M);
    rep.record("contracting", "k=" + std::to_string(k), in_window(expect), in_window(sum));
  }
  // totalized: b' s + s b' = 1 on X̄_N, N <= n_max - 1
  TotalLayout layout(*M, B.n_max);
  std::vector<const SignedMap*> bp_maps, s_maps;
  for (const auto& c : d1.components()) bp_maps.push_back(&c);
  for (const auto& c : s) s_maps.push_back(&c);
  for (int N = 0; N <= limit; ++N) {
    SparseMatrix sN = totalize_maps(s_maps, layout, N);
    SparseMatrix sNm1 = N > 0 ? totalize_maps(s_maps, layout, N - 1)
                              : SparseMatrix(M->ring(), layout.dim(0), 0);
    SparseMatrix bpN1 = totalize_maps(bp_maps, layout, N + 1);
    SparseMatrix lhs = compose(bpN1, sN);
    if (N > 0) lhs = add(lhs, compose(sNm1, totalize_maps(bp_maps, layout, N)));
    rep.record("b's + sb' = 1", "N=" + std::to_string(N),
               SparseMatrix::identity(M->ring(), layout.dim(N)), lhs);
  }
  rep.note("b's + sb' = 1 untested at N = " + std::to_string(B.n_max) + " (s leaves the truncation)");
  return rep;
}

}  // namespace dihedral
