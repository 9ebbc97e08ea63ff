#include <benchmark/benchmark.h>

#include <duogame/asym.hpp>
#include <duogame/auction.hpp>
#include <duogame/market.hpp>
#include <duogame/oracle.hpp>
#include <duogame/revenue.hpp>
#include <duogame/sym.hpp>
#include <duogame/trajectory.hpp>

namespace {

using namespace duogame;

MarketParams desk_params() {
  MarketParams p;
  p.u0 = 10.0;
  p.eta = 0.5;
  p.rho = 0.5;
  p.s_lo = 5.0;
  p.s_hi = 10.0;
  return p;
}

void bm_riccati_roots(benchmark::State& state) {
  const MarketParams p = desk_params();
  for (auto _ : state)
    benchmark::DoNotOptimize(riccati_roots(p, RiccatiMode::matched));
}
BENCHMARK(bm_riccati_roots);

void bm_symmetric_coeffs(benchmark::State& state) {
  const MarketParams p = desk_params();
  for (auto _ : state) benchmark::DoNotOptimize(solve_symmetric_coeffs(p));
}
BENCHMARK(bm_symmetric_coeffs);

void bm_asym_coefficients(benchmark::State& state) {
  const MarketParams p = desk_params();
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_asym_coefficients(p, 1.5));
}
BENCHMARK(bm_asym_coefficients)->Unit(benchmark::kMicrosecond);

void bm_solve_asymmetric(benchmark::State& state) {
  const MarketParams p = desk_params();
  for (auto _ : state) benchmark::DoNotOptimize(solve_asymmetric(p, 0.5, 1.5));
}
BENCHMARK(bm_solve_asymmetric)->Unit(benchmark::kMillisecond);

void bm_backward_induction_finite(benchmark::State& state) {
  DiscreteGameSetup setup;
  setup.params = desk_params();
  setup.phase = {Phase::asymmetric, 1};
  setup.dt = 1e-3;
  setup.horizon = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(backward_induction(setup));
}
BENCHMARK(bm_backward_induction_finite)->Unit(benchmark::kMillisecond);

void bm_backward_induction_stationary(benchmark::State& state) {
  DiscreteGameSetup setup;
  setup.params = desk_params();
  setup.phase = {Phase::symmetric, 1};
  setup.dt = 1e-2;
  for (auto _ : state) benchmark::DoNotOptimize(backward_induction(setup));
}
BENCHMARK(bm_backward_induction_stationary)->Unit(benchmark::kMillisecond);

void bm_finite_phase_revenue(benchmark::State& state) {
  const MarketParams p = desk_params();
  const AsymSolution sol = solve_asymmetric(p, 0.5, 1.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(phase_revenue(sol.trajectory, p, 1));
}
BENCHMARK(bm_finite_phase_revenue)->Unit(benchmark::kMicrosecond);

void bm_full_revenue_report(benchmark::State& state) {
  const MarketParams p = desk_params();
  for (auto _ : state)
    benchmark::DoNotOptimize(full_revenue_report(p, 0.5, 1.5));
}
BENCHMARK(bm_full_revenue_report)->Unit(benchmark::kMillisecond);

void bm_equilibrium_bids(benchmark::State& state) {
  AuctionInputs in;
  in.r1_A = 8.8;
  in.r2_A = 8.5;
  in.r1_B = 5.1;
  in.r2_B = 4.9;
  in.gamma = 0.35;
  for (auto _ : state) benchmark::DoNotOptimize(equilibrium_bids(in));
}
BENCHMARK(bm_equilibrium_bids);

void bm_auction_best_response(benchmark::State& state) {
  AuctionInputs in;
  in.r1_A = 8.8;
  in.r2_A = 8.5;
  in.r1_B = 5.1;
  in.r2_B = 4.9;
  in.gamma = 0.35;
  for (auto _ : state)
    benchmark::DoNotOptimize(auction_best_response(in, 1, 10000));
}
BENCHMARK(bm_auction_best_response)->Unit(benchmark::kMicrosecond);

void bm_residual_report(benchmark::State& state) {
  const MarketParams p = desk_params();
  const AsymSolution sol = solve_asymmetric(p, 0.5, 1.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(residual_report(sol.trajectory, p));
}
BENCHMARK(bm_residual_report)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
