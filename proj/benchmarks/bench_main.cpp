#include <random>

#include <benchmark/benchmark.h>

#include "framecomplex/frames.hpp"
#include "framecomplex/homology.hpp"
#include "framecomplex/smith.hpp"
#include "framecomplex/symplectic.hpp"

namespace fc = framecomplex;

namespace {

fc::SparseIntMatrix random_sparse(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> val(-3, 3);
  std::uniform_int_distribution<std::uint32_t> idx(0, static_cast<std::uint32_t>(n - 1));
  std::vector<fc::SparseColumn> cols(n);
  for (std::size_t c = 0; c < n; ++c)
    for (int e = 0; e < 4; ++e) cols[c].emplace_back(idx(rng), val(rng));
  return fc::SparseIntMatrix::from_columns(n, std::move(cols));
}

void BM_SmithSparse(benchmark::State& state) {
  const auto a = random_sparse(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(fc::smith_normal_form(a));
}
BENCHMARK(BM_SmithSparse)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_EnumerateIU(benchmark::State& state) {
  const fc::SymplecticSpace space(fc::ModulusRing(2), static_cast<std::size_t>(state.range(0)));
  fc::FrameQuery q;
  q.family = fc::FrameFamily::kIU;
  for (auto _ : state) benchmark::DoNotOptimize(fc::enumerate_poset(space, q).size());
}
BENCHMARK(BM_EnumerateIU)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_HomologyU4(benchmark::State& state) {
  const auto u = fc::enumerate_unimodular(fc::ModulusRing(2), 4, 4);
  for (auto _ : state) benchmark::DoNotOptimize(fc::integer_homology(u, 2, true).groups.size());
}
BENCHMARK(BM_HomologyU4)->Unit(benchmark::kMillisecond);

void BM_OrbitIU(benchmark::State& state) {
  const fc::SymplecticSpace space(fc::ModulusRing(2), 3);
  const fc::Sequence seed{fc::encode_vector(space.ring(), space.basis_vector(1)),
                          fc::encode_vector(space.ring(), space.basis_vector(3))};
  for (auto _ : state) benchmark::DoNotOptimize(fc::esp_orbit(space, fc::FrameFamily::kIU, seed, false).orbit_size);
}
BENCHMARK(BM_OrbitIU)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
