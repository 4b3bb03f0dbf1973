// Parallel kernels against their serial references on tensor-module sized
// operators of the 2x2 matrix algebra.

#include <benchmark/benchmark.h>

#include "dihedral/complexes.hpp"
#include "dihedral/io.hpp"

using namespace dihedral;

namespace {

const DihedralData& data(int n_max) {
  static std::map<int, DihedralData> cache;
  auto it = cache.find(n_max);
  if (it == cache.end()) {
    auto p = parse_algebra_file(std::string(DIHEDRAL_FIXTURE_DIR) + "/matrices.alg");
    it = cache.emplace(n_max, prepare(p.algebra, 1, n_max, RingSpec::rationals())).first;
  }
  return it->second;
}

// b' RT on the top barred degree
void BM_Compose(benchmark::State& st) {
  const auto& d = data(static_cast<int>(st.range(0)));
  const int N = d.bar.top;
  for (auto _ : st) benchmark::DoNotOptimize(compose(d.bar.bp[N], d.bar.RT[N]));
}

void BM_ComposeReference(benchmark::State& st) {
  const auto& d = data(static_cast<int>(st.range(0)));
  const int N = d.bar.top;
  for (auto _ : st) benchmark::DoNotOptimize(compose_reference(d.bar.bp[N], d.bar.RT[N]));
}

// differential of Tot D in its top certified degree
void BM_RankSplit(benchmark::State& st) {
  static std::map<int, SparseMatrix> m;
  const int n = static_cast<int>(st.range(0));
  if (!m.count(n)) m[n] = build_dihedral_triple(data(n)).total_differential(n - 1);
  for (auto _ : st) benchmark::DoNotOptimize(rank_split(m[n]));
}

void BM_RankSerial(benchmark::State& st) {
  static std::map<int, SparseMatrix> m;
  const int n = static_cast<int>(st.range(0));
  if (!m.count(n)) m[n] = build_dihedral_triple(data(n)).total_differential(n - 1);
  for (auto _ : st) benchmark::DoNotOptimize(rank_serial(m[n]));
}

}  // namespace

BENCHMARK(BM_Compose)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComposeReference)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankSplit)->DenseRange(4, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankSerial)->DenseRange(4, 5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
