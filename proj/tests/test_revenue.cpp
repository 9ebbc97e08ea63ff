#include <doctest.h>

#include <duogame/asym.hpp>
#include <duogame/errors.hpp>
#include <duogame/market.hpp>
#include <duogame/revenue.hpp>
#include <duogame/sym.hpp>
#include <duogame/trajectory.hpp>

#include <cmath>

#include "support.hpp"

using namespace duogame;
using testing::desk_params;

TEST_CASE("an empty finite phase integrates to zero") {
  const MarketParams p = desk_params();
  const AsymSolution sol = solve_asymmetric(p, 0.5, 0.0);
  CHECK(phase_revenue(sol.trajectory, p, 1) == 0.0);
  CHECK(phase_revenue(sol.trajectory, p, 2) == 0.0);
}

TEST_CASE("pinned even split gives the explicit continuation value") {
  // From T = 1 with x1 pinned at 1/2 the rate is constant, so the value is
  // exp(-rho T) * p * x / rho with p the even-split price.
  const MarketParams p = desk_params();
  const SymCoefficients s = solve_symmetric_coeffs(p);
  const PhaseTrajectory tr = sample_symmetric_phase(p, s, 1.0, 0.5, 6.0, 129);
  const double expected = std::exp(-0.5) * 6.388888888889 * 0.5 / 0.5;
  const double r1 = phase_revenue(tr, p, 1);
  const double r2 = phase_revenue(tr, p, 2);
  CHECK(r1 == doctest::Approx(3.8750570).epsilon(1e-6));
  CHECK(r1 == doctest::Approx(expected).epsilon(1e-9));
  CHECK(r2 == doctest::Approx(r1).epsilon(1e-12));
}

TEST_CASE("analytic continuation value agrees with truncated quadrature") {
  const MarketParams p = desk_params();
  const SymCoefficients s = solve_symmetric_coeffs(p);
  const PhaseTrajectory tr = sample_symmetric_phase(p, s, 0.8, 0.62, 8.0, 129);
  for (const int op : {1, 2}) {
    const double exact = phase_revenue(tr, p, op);
    double err = 0.0;
    const double brute = truncated_tail_revenue(tr, p, op, 1e-12, &err);
    CHECK(std::abs(exact - brute) < 1e-8);
    CHECK(err < 1e-8);
  }
}

TEST_CASE("finite-phase value is stable under grid doubling") {
  const MarketParams p = desk_params();
  AsymSolveOptions coarse, fine;
  coarse.grid_n = 1000;
  fine.grid_n = 2000;
  const AsymSolution a = solve_asymmetric(p, 0.5, 1.5, coarse);
  const AsymSolution b = solve_asymmetric(p, 0.5, 1.5, fine);
  for (const int op : {1, 2}) {
    const double ra = phase_revenue(a.trajectory, p, op);
    const double rb = phase_revenue(b.trajectory, p, op);
    CHECK(std::abs(ra - rb) / std::abs(rb) < 1e-7);
  }
}

TEST_CASE("discounting harder lowers the value of the same path") {
  const MarketParams p = desk_params();
  MarketParams heavier = p;
  heavier.rho = 0.75;
  const AsymSolution sol = solve_asymmetric(p, 0.5, 1.5);
  CHECK(phase_revenue(sol.trajectory, heavier, 1) <
        phase_revenue(sol.trajectory, p, 1));

  const SymCoefficients s = solve_symmetric_coeffs(p);
  const PhaseTrajectory tail = sample_symmetric_phase(p, s, 1.5, 0.6, 8.0, 129);
  CHECK(phase_revenue(tail, heavier, 2) < phase_revenue(tail, p, 2));
}

TEST_CASE("finite phase requires dense accessors, continuation the tail") {
  const MarketParams p = desk_params();
  const AsymSolution sol = solve_asymmetric(p, 0.5, 0.5);
  PhaseTrajectory stripped = sol.trajectory;
  stripped.dense = nullptr;
  CHECK_THROWS_AS(phase_revenue(stripped, p, 1), std::invalid_argument);

  const SymCoefficients s = solve_symmetric_coeffs(p);
  PhaseTrajectory tail = sample_symmetric_phase(p, s, 0.5, 0.55, 6.0, 129);
  tail.tail = nullptr;
  CHECK_THROWS_AS(phase_revenue(tail, p, 1), std::invalid_argument);
  CHECK_THROWS_AS(phase_revenue(sol.trajectory, p, 3), std::invalid_argument);
}

TEST_CASE("role swap is a bit-for-bit involution") {
  const MarketParams p = desk_params();
  const OrientationRevenues r = aggregate_revenues(p, 0.6, 0.5, 1);
  const OrientationRevenues twice = role_swap(role_swap(r));
  CHECK(twice.holder_of_A == r.holder_of_A);
  CHECK(twice.x1_0 == r.x1_0);
  CHECK(twice.x2_0 == r.x2_0);
  CHECK(twice.r_ap_1 == r.r_ap_1);
  CHECK(twice.r_ap_2 == r.r_ap_2);
  CHECK(twice.r_sp_1 == r.r_sp_1);
  CHECK(twice.r_sp_2 == r.r_sp_2);
  CHECK(twice.total_1 == r.total_1);
  CHECK(twice.total_2 == r.total_2);
  CHECK(twice.x1_T == r.x1_T);
  CHECK(twice.x2_T == r.x2_T);

  const OrientationRevenues once = role_swap(r);
  CHECK(once.holder_of_A == 2);
  CHECK(once.total_1 == r.total_2);
  CHECK(once.r_ap_2 == r.r_ap_1);
  CHECK(once.x1_0 == r.x2_0);
}

TEST_CASE("opposite orientation equals a reformulated solve by hand") {
  // Giving block A to operator 2 from share x1_0 must be the relabeling of
  // the canonical solve started from the complementary share.
  const MarketParams p = desk_params();
  const double x1_0 = 0.6, T = 0.5;
  const OrientationRevenues swapped = aggregate_revenues(p, x1_0, T, 2);

  const AsymSolution sol = solve_asymmetric(p, 1.0 - x1_0, T);
  double e_ap = 0.0;
  const double ap_adv = phase_revenue(sol.trajectory, p, 1, &e_ap);
  const double ap_other = phase_revenue(sol.trajectory, p, 2);
  const SymCoefficients s = solve_symmetric_coeffs(p);
  const PhaseTrajectory tail = sample_symmetric_phase(p, s, T, sol.x1_T, 8.0, 129);
  const double sp_adv = phase_revenue(tail, p, 1);
  const double sp_other = phase_revenue(tail, p, 2);

  CHECK(swapped.holder_of_A == 2);
  CHECK(swapped.x1_0 == doctest::Approx(x1_0).epsilon(1e-15));
  CHECK(swapped.r_ap_2 == doctest::Approx(ap_adv).epsilon(1e-12));
  CHECK(swapped.r_ap_1 == doctest::Approx(ap_other).epsilon(1e-12));
  CHECK(swapped.r_sp_2 == doctest::Approx(sp_adv).epsilon(1e-12));
  CHECK(swapped.r_sp_1 == doctest::Approx(sp_other).epsilon(1e-12));
  CHECK(swapped.total_2 == doctest::Approx(ap_adv + sp_adv).epsilon(1e-12));
  CHECK(swapped.x2_T == doctest::Approx(sol.x1_T).epsilon(1e-15));
}

TEST_CASE("an even start makes the two orientations mirror images exactly") {
  const MarketParams p = desk_params();
  const RevenueReport rep = full_revenue_report(p, 0.5, 1.0);
  CHECK(rep.r_total_A_to_1.first == rep.r_total_A_to_2.second);
  CHECK(rep.r_total_A_to_1.second == rep.r_total_A_to_2.first);
}

TEST_CASE("holding the premium block pays at the desk parameter set") {
  const MarketParams p = desk_params();

  const RevenueReport r05 = full_revenue_report(p, 0.6, 0.5);
  CHECK(r05.r_total_A_to_1.first == doctest::Approx(7.5610801585).epsilon(1e-6));
  CHECK(r05.r_total_A_to_1.second == doctest::Approx(5.7620617695).epsilon(1e-6));
  CHECK(r05.r_total_A_to_2.first == doctest::Approx(5.9648031308).epsilon(1e-6));
  CHECK(r05.r_total_A_to_2.second == doctest::Approx(7.3013227769).epsilon(1e-6));
  CHECK(r05.quadrature_error <= 1e-8);

  const RevenueReport r15 = full_revenue_report(p, 0.6, 1.5);
  CHECK(r15.r_total_A_to_1.first == doctest::Approx(8.8015017643).epsilon(1e-6));
  CHECK(r15.r_total_A_to_1.second == doctest::Approx(4.8858993981).epsilon(1e-6));
  CHECK(r15.r_total_A_to_2.first == doctest::Approx(5.0651484367).epsilon(1e-6));
  CHECK(r15.r_total_A_to_2.second == doctest::Approx(8.5205574326).epsilon(1e-6));

  // Every entry is a positive discounted revenue.
  for (const RevenueReport* r : {&r05, &r15}) {
    CHECK(r->r_ap.first > 0.0);
    CHECK(r->r_ap.second > 0.0);
    CHECK(r->r_sp.first > 0.0);
    CHECK(r->r_sp.second > 0.0);
  }
}

TEST_CASE("the advantage gain grows with the horizon") {
  const MarketParams p = desk_params();
  const double expected[] = {1.267419, 1.513822, 1.740852, 1.946842};
  const double horizons[] = {0.5, 1.0, 1.5, 2.0};
  double prev = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double g = revenue_gain(full_revenue_report(p, 0.5, horizons[i]));
    CHECK(g == doctest::Approx(expected[i]).epsilon(1e-5));
    CHECK(g > prev);
    prev = g;
  }
}

TEST_CASE("the gain grows with the premium factor and the initial share") {
  MarketParams lo = desk_params();
  lo.eta = 0.25;
  MarketParams hi = desk_params();
  hi.eta = 0.75;
  CHECK(revenue_gain(full_revenue_report(hi, 0.5, 1.0)) >
        revenue_gain(full_revenue_report(lo, 0.5, 1.0)));

  const MarketParams p = desk_params();
  CHECK(revenue_gain(full_revenue_report(p, 0.6, 1.0)) >
        revenue_gain(full_revenue_report(p, 0.5, 1.0)));
}

TEST_CASE("no premium equalizes the blocks") {
  MarketParams p = desk_params();
  p.eta = 0.0;
  const double g = revenue_gain(full_revenue_report(p, 0.5, 0.7));
  CHECK(std::abs(g - 1.0) < 1e-8);
}

TEST_CASE("gain rejects a nonpositive denominator") {
  RevenueReport r;
  r.r_total_A_to_1 = {1.0, 0.0};
  CHECK_THROWS_AS(revenue_gain(r), degenerate_parameters_error);
}
