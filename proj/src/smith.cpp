#include <algorithm>
#include <map>
#include <set>

#include "dihedral/linalg.hpp"

namespace dihedral {

namespace {

using Dense = std::vector<std::vector<mpz_class>>;

struct DenseSnf {
  Dense a;
  Dense u, v;  // left (rows x rows), right (cols x cols); only if tracking
  bool track = false;
  std::size_t R = 0, C = 0;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    if (track) std::swap(u[i], u[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    if (track)
      for (auto& row : v) std::swap(row[i], row[j]);
  }
  // row_i -= q * row_j
  void row_axpy(std::size_t i, std::size_t j, const mpz_class& q) {
    for (std::size_t c = 0; c < C; ++c)
      if (a[j][c] != 0) a[i][c] -= q * a[j][c];
    if (track)
      for (std::size_t c = 0; c < R; ++c)
        if (u[j][c] != 0) u[i][c] -= q * u[j][c];
  }
  // col_i -= q * col_j
  void col_axpy(std::size_t i, std::size_t j, const mpz_class& q) {
    for (std::size_t r = 0; r < R; ++r)
      if (a[r][j] != 0) a[r][i] -= q * a[r][j];
    if (track)
      for (std::size_t r = 0; r < C; ++r)
        if (v[r][j] != 0) v[r][i] -= q * v[r][j];
  }
  void negate_row(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    if (track)
      for (auto& x : u[i]) x = -x;
  }

  bool min_abs(std::size_t t, std::size_t& bi, std::size_t& bj) const {
    bool found = false;
    mpz_class best;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (a[i][j] != 0 && (!found || abs(a[i][j]) < best)) {
          best = abs(a[i][j]);
          bi = i;
          bj = j;
          found = true;
          if (best == 1) return true;
        }
    return found;
  }

  std::vector<mpz_class> run() {
    std::vector<mpz_class> diag;
    std::size_t t = 0;
    while (t < R && t < C) {
      std::size_t bi, bj;
      if (!min_abs(t, bi, bj)) break;
      swap_rows(t, bi);
      swap_cols(t, bj);
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < R; ++i) {
          if (a[i][t] == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
          row_axpy(i, t, q);
          if (a[i][t] != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < C; ++j) {
          if (a[t][j] == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
          col_axpy(j, t, q);
          if (a[t][j] != 0) dirty = true;
        }
        if (dirty) {
          // bring the smallest remainder in row/column t to the pivot
          std::size_t bi2 = t, bj2 = t;
          mpz_class best = abs(a[t][t]);
          for (std::size_t i = t + 1; i < R; ++i)
            if (a[i][t] != 0 && abs(a[i][t]) < best) best = abs(a[i][t]), bi2 = i, bj2 = t;
          for (std::size_t j = t + 1; j < C; ++j)
            if (a[t][j] != 0 && abs(a[t][j]) < best) best = abs(a[t][j]), bi2 = t, bj2 = j;
          swap_rows(t, bi2);
          swap_cols(t, bj2);
          continue;
        }
        // divisibility of the remaining block
        bool fixed = false;
        for (std::size_t i = t + 1; i < R && !fixed; ++i)
          for (std::size_t j = t + 1; j < C; ++j)
            if (a[i][j] != 0 && !mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
              row_axpy(t, i, -1);
              fixed = true;
              break;
            }
        if (!fixed) break;
      }
      if (a[t][t] < 0) negate_row(t);
      diag.push_back(a[t][t]);
      ++t;
    }
    return diag;
  }
};

Dense to_dense_z(const SparseMatrix& m) {
  Dense d(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) d[e.index][j] = e.value.get_num();
  return d;
}

Dense identity_z(std::size_t n) {
  Dense d(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
  return d;
}

}  // namespace

SmithAudit smith_normal_form_audited(const SparseMatrix& m) {
  if (m.ring().kind() != RingSpec::Kind::integers)
    throw NotIntegerRing("Smith normal form over " + m.ring().name());
  DenseSnf s;
  s.R = m.rows();
  s.C = m.cols();
  s.a = to_dense_z(m);
  s.track = true;
  s.u = identity_z(s.R);
  s.v = identity_z(s.C);
  SmithAudit out;
  out.result.invariant_factors = s.run();
  out.result.rank = out.result.invariant_factors.size();
  out.u = std::move(s.u);
  out.v = std::move(s.v);
  out.diagonal = std::move(s.a);
  return out;
}

SmithResult smith_normal_form(const SparseMatrix& m) {
  if (m.ring().kind() != RingSpec::Kind::integers)
    throw NotIntegerRing("Smith normal form over " + m.ring().name());
  // Sparse phase: pivot on unit entries, each contributing an invariant
  // factor 1 and a Schur complement of the same shape minus one.
  std::vector<std::map<std::uint32_t, mpz_class>> rows(m.rows());
  std::vector<std::set<std::uint32_t>> col_rows(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) {
      rows[e.index][static_cast<std::uint32_t>(j)] = e.value.get_num();
      col_rows[j].insert(e.index);
    }
  std::size_t units = 0;
  for (;;) {
    std::size_t best_cost = SIZE_MAX, pr = 0, pc = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& [j, x] : rows[i])
        if (x == 1 || x == -1) {
          std::size_t cost = (rows[i].size() - 1) * (col_rows[j].size() - 1);
          if (cost < best_cost) best_cost = cost, pr = i, pc = j;
        }
    if (best_cost == SIZE_MAX) break;
    ++units;
    auto prow = rows[pr];
    mpz_class pv = prow[static_cast<std::uint32_t>(pc)];
    std::vector<std::uint32_t> others(col_rows[pc].begin(), col_rows[pc].end());
    for (std::uint32_t i : others) {
      if (i == pr) continue;
      mpz_class q = rows[i][static_cast<std::uint32_t>(pc)] * pv;  // pv = ±1
      for (const auto& [j, x] : prow) {
        mpz_class& y = rows[i][j];
        y -= q * x;
        if (y == 0) {
          rows[i].erase(j);
          col_rows[j].erase(i);
        } else {
          col_rows[j].insert(i);
        }
      }
    }
    for (const auto& [j, x] : prow) col_rows[j].erase(static_cast<std::uint32_t>(pr));
    rows[pr].clear();
  }
  // Dense phase on the remaining core.
  std::vector<std::uint32_t> live_rows, live_cols;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!rows[i].empty()) live_rows.push_back(static_cast<std::uint32_t>(i));
  std::map<std::uint32_t, std::size_t> colmap;
  for (std::uint32_t i : live_rows)
    for (const auto& [j, x] : rows[i]) colmap.emplace(j, 0);
  std::size_t k = 0;
  for (auto& [j, idx] : colmap) idx = k++;
  DenseSnf s;
  s.R = live_rows.size();
  s.C = colmap.size();
  s.a.assign(s.R, std::vector<mpz_class>(s.C));
  for (std::size_t r = 0; r < s.R; ++r)
    for (const auto& [j, x] : rows[live_rows[r]]) s.a[r][colmap[j]] = x;
  SmithResult out;
  out.invariant_factors.assign(units, mpz_class(1));
  for (auto& d : s.run()) out.invariant_factors.push_back(d);
  std::sort(out.invariant_factors.begin(), out.invariant_factors.end());
  out.rank = out.invariant_factors.size();
  return out;
}

}  // namespace dihedral
