#include "dihedral/homology.hpp"

#include <sstream>
#include <variant>

#include "dihedral/detail/echelon.hpp"

namespace dihedral {

std::vector<std::size_t> HomologyResult::betti() const {
  std::vector<std::size_t> out;
  for (const auto& d : degrees) out.push_back(d.betti);
  return out;
}

std::string HomologyResult::to_text() const {
  std::ostringstream o;
  o << complex << " over " << ring.name() << ", window " << window_lo << ".." << window_hi << "\n";
  for (const auto& d : degrees) {
    o << "  H_" << d.degree << ": betti " << d.betti;
    if (!d.torsion.empty()) {
      o << ", torsion";
      for (const auto& t : d.torsion) o << " Z/" << t.get_str();
    }
    o << "\n";
  }
  for (const auto& n : notes) o << "  note: " << n << "\n";
  return o.str();
}

namespace {

std::size_t field_rank(const SparseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (m.ring().is_field()) return rank(m);
  return rank(m.with_ring(RingSpec::rationals()));
}

bool same_vector(SparseVector a, SparseVector b) {
  auto by_index = [](const Entry& x, const Entry& y) { return x.index < y.index; };
  std::sort(a.begin(), a.end(), by_index);
  std::sort(b.begin(), b.end(), by_index);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].index != b[i].index || a[i].value != b[i].value) return false;
  return true;
}

}  // namespace

HomologyResult homology(const ChainComplex& c, const RingSpec& ring, int lo, int hi) {
  if (!(ring == c.ring()))
    throw RingMismatch(c.name() + " is over " + c.ring().name() + ", asked for " + ring.name());
  if (hi < 0) hi = c.window_hi();
  if (hi > c.window_hi() || lo < 0)
    throw WindowExceeded(c.name() + ": degrees " + std::to_string(lo) + ".." + std::to_string(hi) +
                         " outside window 0.." + std::to_string(c.window_hi()));
  HomologyResult r;
  r.complex = c.name();
  r.ring = ring;
  r.window_lo = lo;
  r.window_hi = hi;
  std::vector<std::size_t> rk(hi + 2, 0);
  std::vector<SmithResult> snf(hi + 2);
  for (int N = lo; N <= hi + 1; ++N) {
    if (ring.is_field() || N == lo) {
      rk[N] = field_rank(c.differential(N));
    } else {
      snf[N] = smith_normal_form(c.differential(N));
      rk[N] = snf[N].rank;
    }
  }
  for (int N = lo; N <= hi; ++N) {
    DegreeHomology d;
    d.degree = N;
    d.chain_rank = c.dim(N);
    d.betti = c.dim(N) - rk[N] - rk[N + 1];
    if (!ring.is_field())
      for (const auto& f : snf[N + 1].invariant_factors)
        if (f > 1) d.torsion.push_back(f);
    r.degrees.push_back(std::move(d));
  }
  return r;
}

HomologyResult homology(const ChainComplex& c, int hi) { return homology(c, c.ring(), 0, hi); }

HomologyResult cyclic_homology(const AInfAlgebraDesc& a, int n_max, const RingSpec& ring) {
  DihedralData d = prepare(a, a.rho, n_max, ring);
  HomologyResult r = homology(build_cyclic_bicomplex(d).total());
  r.complex = "HC(" + a.name + ")";
  return r;
}

HomologyResult dihedral_homology(const AInfAlgebraDesc& a, int rho, int n_max, const RingSpec& ring) {
  DihedralData d = prepare(a, rho, n_max, ring);
  HomologyResult r = homology(build_dihedral_triple(d).total());
  r.complex = (d.bundle.rho > 0 ? "+" : "-") + std::string("HD(") + a.name + ")";
  return r;
}

HomologyResult reflexive_homology(const AInfAlgebraDesc& a, int rho, int n_max,
                                  const RingSpec& ring) {
  DihedralData d = prepare(a, rho, n_max, ring);
  HomologyResult r = homology(build_reflexive_bicomplex(d).total());
  r.complex = (d.bundle.rho > 0 ? "+" : "-") + std::string("HR(") + a.name + ")";
  if (ring.kind() == RingSpec::Kind::prime_field && ring.modulus() == 2)
    r.notes.push_back("characteristic 2: no comparison with the N-quotient");
  return r;
}

// ---------------------------------------------------------------------------

namespace {

template <class F>
struct BasisData {
  detail::Echelon<F> ech;
  SparseMatrix d;  // differential out of degree N
  std::vector<std::int64_t> coord_of_row;
  std::vector<SparseVector> reps;

  BasisData(const F& f, const ChainComplex& c, int N)
      : ech(f, c.dim(N), c.dim(N)), d(c.differential(N)) {
    if (N + 1 <= c.top()) {
      const auto& up = c.differential(N + 1);
      for (std::size_t j = 0; j < up.cols(); ++j) {
        ech.insert(detail::to_field(f, up.column(j)));
        coord_of_row.resize(ech.rank(), -1);
      }
    }
    for (const auto& z : kernel_basis(d)) {
      std::int64_t r = ech.insert(detail::to_field(f, z));
      coord_of_row.resize(ech.rank(), -1);
      if (r < 0) continue;
      coord_of_row[r] = static_cast<std::int64_t>(reps.size());
      reps.push_back(detail::from_field(f, ech.rows()[r]));
    }
  }

  SparseVector coordinates(const SparseVector& v) const {
    if (!multiply(d, v).empty()) throw SemanticError("coordinates of a non-cycle");
    typename detail::Echelon<F>::Vec coeffs;
    auto res = ech.reduce(detail::to_field(ech.field(), v), &coeffs);
    if (!res.empty()) throw SemanticError("cycle outside the computed span");
    SparseVector out;
    for (const auto& [r, x] : coeffs)
      if (coord_of_row[r] >= 0) out.push_back({static_cast<std::uint32_t>(coord_of_row[r]), ech.field().to(x)});
    return out;
  }
};

}  // namespace

struct HomologyBasis::Impl {
  std::variant<BasisData<detail::RationalField>, BasisData<detail::PrimeField>> data;
  RingSpec ring;
};

HomologyBasis::HomologyBasis(const ChainComplex& c, int N) {
  if (N > c.window_hi()) throw WindowExceeded(c.name() + ": basis in degree " + std::to_string(N));
  const RingSpec& ring = c.ring();
  if (!ring.is_field()) throw NotAField("homology bases need a field");
  if (ring.kind() == RingSpec::Kind::prime_field)
    impl_.reset(new Impl{BasisData<detail::PrimeField>(detail::PrimeField{ring.modulus()}, c, N), ring});
  else
    impl_.reset(new Impl{BasisData<detail::RationalField>(detail::RationalField{}, c, N), ring});
}

HomologyBasis::~HomologyBasis() = default;
HomologyBasis::HomologyBasis(HomologyBasis&&) noexcept = default;
HomologyBasis& HomologyBasis::operator=(HomologyBasis&&) noexcept = default;

std::size_t HomologyBasis::dim() const { return representatives().size(); }

const std::vector<SparseVector>& HomologyBasis::representatives() const {
  return std::visit([](const auto& d) -> const std::vector<SparseVector>& { return d.reps; }, impl_->data);
}

SparseVector HomologyBasis::coordinates(const SparseVector& v) const {
  SparseVector out = std::visit([&](const auto& d) { return d.coordinates(v); }, impl_->data);
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  return out;
}

SparseMatrix induced_map(const HomologyBasis& src, const HomologyBasis& tgt, const SparseMatrix& f) {
  SparseMatrix out(f.ring(), tgt.dim(), src.dim());
  const auto& reps = src.representatives();
  for (std::size_t i = 0; i < reps.size(); ++i) out.set_column(i, tgt.coordinates(multiply(f, reps[i])));
  return out;
}

// ---------------------------------------------------------------------------

bool LESReport::exact() const {
  for (const auto& n : nodes)
    if (!n.exact) return false;
  return !nodes.empty();
}

bool LESReport::alpha_isomorphism() const {
  for (bool b : alpha_iso)
    if (!b) return false;
  return true;
}

bool LESReport::q_acyclic() const {
  for (auto b : hq)
    if (b) return false;
  return true;
}

std::string LESReport::to_text() const {
  std::ostringstream o;
  o << "long exact sequence over " << ring.name() << ", rho " << (rho > 0 ? "+1" : "-1")
    << ", n_max " << n_max << ", degrees 0.." << degree_hi << "\n";
  for (int N = 0; N <= degree_hi; ++N) {
    o << "  N=" << N << ": dim HR " << hr[N] << ", HD " << hd[N] << ", HD(-rho)_{N-2} "
      << hd_minus[N] << ", H(P) " << hp[N] << ", alpha* iso " << (alpha_iso[N] ? "yes" : "no")
      << ", rank i* " << field_rank(i_star[N]) << ", rank p* " << field_rank(p_star[N])
      << ", rank delta* " << field_rank(delta_star[N]) << "\n";
  }
  for (const auto& n : nodes)
    o << "  node " << n.name << ": dim " << n.dim << ", rank in " << n.rank_in << ", rank out "
      << n.rank_out << (n.exact ? ", exact" : ", NOT exact") << "\n";
  o << "  H(Tot Q):";
  for (auto b : hq) o << " " << b;
  o << "\n";
  return o.str();
}

LESReport verify_les(const AInfAlgebraDesc& a, const HuStructureDesc& h, int rho, int n_max,
                     const RingSpec& field, int degree_hi) {
  if (!field.is_field()) throw NotAField("verify_les works over fields only");
  if (degree_hi < 0) degree_hi = n_max - 2;
  if (degree_hi + 2 > n_max)
    throw WindowExceeded("LES up to degree " + std::to_string(degree_hi) + " needs n_max >= " +
                         std::to_string(degree_hi + 2));
  DihedralData d = prepare(a, rho, n_max, field);
  HuStructureDesc hf = h.with_ring(field);
  PStructure ps = build_p_structure(d, &hf);

  LESReport rep;
  rep.ring = field;
  rep.rho = d.bundle.rho;
  rep.n_max = n_max;
  rep.degree_hi = degree_hi;
  rep.chain_level = validate_p_structure(ps);

  const int D = degree_hi;
  std::vector<HomologyBasis> hr, hp, hd, hdm;
  for (int N = 0; N <= D; ++N) {
    hr.emplace_back(ps.tot_r, N);
    hp.emplace_back(ps.tot_p, N);
    hd.emplace_back(ps.tot_d, N);
    hdm.emplace_back(ps.tot_d_minus, N);
  }
  HomologyResult hq = homology(ps.tot_q, field, 0, std::min(D + 1, ps.tot_q.window_hi()));
  rep.hq = hq.betti();

  std::vector<SparseMatrix> alpha_inv(D + 1);
  for (int N = 0; N <= D; ++N) {
    SparseMatrix as = induced_map(hr[N], hp[N], ps.alpha[N]);
    bool iso = as.rows() == as.cols() && field_rank(as) == as.rows();
    rep.alpha_iso.push_back(iso);
    if (iso) alpha_inv[N] = as.rows() ? inverse(as) : as;
    SparseMatrix js = induced_map(hp[N], hd[N], ps.j[N]);
    rep.i_star.push_back(compose(js, as));
    rep.alpha_star.push_back(std::move(as));
    rep.hr.push_back(hr[N].dim());
    rep.hp.push_back(hp[N].dim());
    rep.hd.push_back(hd[N].dim());
    rep.hd_minus.push_back(N >= 2 ? hdm[N - 2].dim() : 0);
    rep.p_star.push_back(N >= 2 ? induced_map(hd[N], hdm[N - 2], ps.proj[N])
                                : SparseMatrix(field, 0, hd[N].dim()));
  }
  // delta*_N : H_{N-2}(D^{-rho}) -> HR_{N-1}, N = 0..D+1
  for (int N = 0; N <= D + 1; ++N) {
    std::size_t src = N >= 2 ? hdm[N - 2].dim() : 0;
    std::size_t tgt = N >= 1 ? hr[N - 1].dim() : 0;
    SparseMatrix conn(field, N >= 1 ? hp[N - 1].dim() : 0, src);
    if (src) {
      SparseMatrix lift = ps.proj[N].transpose();
      SparseMatrix jt = ps.j[N - 1].transpose();
      const auto& reps = hdm[N - 2].representatives();
      for (std::size_t i = 0; i < reps.size(); ++i) {
        SparseVector w = multiply(ps.tot_d.differential(N), multiply(lift, reps[i]));
        SparseVector wp = multiply(jt, w);
        SparseVector back = multiply(ps.j[N - 1], wp);
        if (!same_vector(w, back))
          throw NonExactNode("connecting map: boundary of the lift leaves P in degree " +
                             std::to_string(N - 1));
        conn.set_column(i, hp[N - 1].coordinates(wp));
      }
    }
    if (N >= 1 && !rep.alpha_iso[N - 1])
      rep.delta_star.push_back(SparseMatrix(field, tgt, src));
    else
      rep.delta_star.push_back(N >= 1 && tgt ? compose(alpha_inv[N - 1], conn)
                                             : SparseMatrix(field, tgt, src));
  }

  auto node = [&](std::string name, std::size_t dim, const SparseMatrix& in, const SparseMatrix& out) {
    LESNode n;
    n.name = std::move(name);
    n.dim = dim;
    n.rank_in = field_rank(in);
    n.rank_out = field_rank(out);
    SparseMatrix comp = compose(out, in);
    n.composite_zero = comp.is_zero();
    n.exact = n.composite_zero && n.rank_in + n.rank_out == dim;
    rep.nodes.push_back(std::move(n));
  };
  for (int N = 0; N <= D; ++N) {
    std::string s = std::to_string(N);
    node("HR_" + s, rep.hr[N], rep.delta_star[N + 1], rep.i_star[N]);
    node("HD_" + s, rep.hd[N], rep.i_star[N], rep.p_star[N]);
    if (N >= 2)
      node("HD(-rho)_" + std::to_string(N - 2), rep.hd_minus[N], rep.p_star[N], rep.delta_star[N]);
  }
  return rep;
}

}  // namespace dihedral
