#include <benchmark/benchmark.h>

#include <random>

#include "mplex/certificate.hpp"
#include "mplex/formation.hpp"
#include "mplex/halanay.hpp"
#include "mplex/norms.hpp"
#include "mplex/simulate.hpp"

namespace {

using namespace mplex;

Matrix random_matrix(std::mt19937_64& rng, int n) {
  Vec entries(static_cast<std::size_t>(n) * n);
  for (double& v : entries) v = static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
  return Matrix(n, n, std::move(entries));
}

NetworkSystem formation(int circles) {
  const FormationSpec spec = FormationSpec::concentric(circles, 2.0);
  const LeaderPath leader(0.3, 0.7, 20.0);
  return build_formation(spec, GainSet{}, leader, DelayFunction::constant(0.33),
                         {reference_disturbance()}, InitialState{0.0, 1});
}

void BM_MatMeasure2(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Matrix a = random_matrix(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mat_measure(PNorm::Two, a));
  }
}
BENCHMARK(BM_MatMeasure2)->Arg(6)->Arg(12);

void BM_HalanayRate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(halanay_rate(-0.436, 0.218, 0.33));
  }
}
BENCHMARK(BM_HalanayRate);

void BM_ClosedLoopRhs(benchmark::State& state) {
  const NetworkSystem sys = formation(static_cast<int>(state.range(0)));
  const Vec z = sys.history(0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(closed_loop_rhs(sys, z, z, 1.0));
  }
  state.SetItemsProcessed(state.iterations() * sys.N);
}
BENCHMARK(BM_ClosedLoopRhs)->Arg(3)->Arg(10);

void BM_IntegrateSecond(benchmark::State& state) {
  const NetworkSystem sys = formation(static_cast<int>(state.range(0)));
  IntegrateOptions opt;
  opt.t_end = 1.0;
  opt.dt = 1e-3;
  opt.record_every = 1000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(sys, opt));
  }
}
BENCHMARK(BM_IntegrateSecond)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CertifyAnalytic(benchmark::State& state) {
  const NetworkSystem sys = formation(3);
  const TransformT t = TransformT::homogeneous(sys.N, -0.6, -1.6);
  CertifyOptions opt;
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify(sys, t, opt, 0.33));
  }
  state.SetLabel("includes the C1 grid");
}
BENCHMARK(BM_CertifyAnalytic)->Unit(benchmark::kMillisecond);

void BM_AlphaGridSearch(benchmark::State& state) {
  const NetworkSystem sys = formation(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_alpha(sys, PNorm::Two));
  }
}
BENCHMARK(BM_AlphaGridSearch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
