#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <string>

#include "exdr/cech.hpp"
#include "exdr/integer_matrix.hpp"
#include "exdr/quadrature.hpp"
#include "exdr/text_format.hpp"

using namespace exdr;

static void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 g(5);
  std::uniform_int_distribution<int> u(-5, 5);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = u(g);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16);

static void BM_TotalBetti(benchmark::State& state, const std::string& name) {
  const CoverManifest m = parse_manifest(read_file(std::string(EXDR_DATA_DIR) + "/manifests/" + name + ".manifest"));
  for (auto _ : state) benchmark::DoNotOptimize(total_betti(m));
}
BENCHMARK_CAPTURE(BM_TotalBetti, p2, std::string("p2"));
BENCHMARK_CAPTURE(BM_TotalBetti, f1, std::string("f1"));
BENCHMARK_CAPTURE(BM_TotalBetti, tetrahedron, std::string("tetrahedron_quadrants"));

static void BM_RadialAxis(benchmark::State& state) {
  QuadratureSpec s;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        integrate_axis([](double r) { return Estimate{std::exp(r - std::exp(r)), 0.0}; }, Axis::Radial, 1e-9, s));
}
BENCHMARK(BM_RadialAxis);
BENCHMARK_MAIN();
