#pragma once

#include <utility>

#include "duogame/asym.hpp"
#include "duogame/market.hpp"
#include "duogame/trajectory.hpp"

namespace duogame {

// Discounted revenue functionals. The per-operator revenue rate is
// r_i = p_i (x_i + x_i_dot); its discounted integral runs over [0, T) for the
// finite phase and [T, inf) for the symmetric continuation. The finite phase
// is integrated adaptively through the trajectory's dense accessors; the
// infinite phase evaluates exactly, since prices are affine in a share that
// is a constant plus one decaying exponential.

// Discounted revenue of one operator (1 or 2) over the trajectory's phase.
// Finite phase requires dense accessors, infinite phase the closed-form tail
// (std::invalid_argument otherwise). error_out, when given, receives the
// quadrature error estimate (0 for the analytic branch). An empty
// finite-phase trajectory integrates to 0. Throws quadrature_failure if the
// adaptive integral cannot reach tolerance.
double phase_revenue(const PhaseTrajectory& traj, const MarketParams& params,
                     int op, double* error_out = nullptr);

// Brute-force cross-check of the analytic infinite-horizon value: quadrature
// over [T, T_c], with T_c chosen so the discounted integrand beyond it is
// below cutoff. Exposed for tests.
double truncated_tail_revenue(const PhaseTrajectory& traj,
                              const MarketParams& params, int op,
                              double cutoff = 1e-12,
                              double* error_out = nullptr);

// Revenues of one allocation orientation. Fields come in operator pairs and
// the role swap is a pure field permutation, so applying it twice restores
// the struct bit for bit.
struct OrientationRevenues {
  int holder_of_A = 1;
  double x1_0 = 0.5, x2_0 = 0.5;  // initial shares of operators 1 and 2
  double r_ap_1 = 0.0, r_ap_2 = 0.0;  // finite-phase discounted revenue
  double r_sp_1 = 0.0, r_sp_2 = 0.0;  // symmetric-continuation revenue
  double total_1 = 0.0, total_2 = 0.0;
  double x1_T = 0.5, x2_T = 0.5;  // shares at the phase boundary
  double quadrature_error = 0.0;
};

// Relabels the two operators (1 <-> 2). Involution.
OrientationRevenues role_swap(const OrientationRevenues& r);

// Solves both phases with the given operator holding block A, chains the
// share at the boundary, and integrates. The opposite orientation is the
// relabeling of the canonical solve started from the complementary share.
OrientationRevenues aggregate_revenues(const MarketParams& params, double x1_0,
                                       double T, int holder_of_A,
                                       const AsymSolveOptions& options = {});

struct RevenueReport {
  std::pair<double, double> r_ap;  // asymmetric-phase revenues, A held by 1
  std::pair<double, double> r_sp;  // symmetric-phase revenues, A held by 1
  std::pair<double, double> r_total_A_to_1;  // (operator 1 holding A, operator 2 holding B)
  std::pair<double, double> r_total_A_to_2;  // (operator 1 holding B, operator 2 holding A)
  double gain = 0.0;               // A-holder aggregate over B-holder aggregate
  double quadrature_error = 0.0;   // max achieved estimate across entries
};

// Both orientations from one market configuration.
RevenueReport full_revenue_report(const MarketParams& params, double x1_0,
                                  double T, const AsymSolveOptions& options = {});

// gain = r_total_A_to_1.first / r_total_A_to_1.second. Throws
// degenerate_parameters_error when the denominator is not positive.
double revenue_gain(const RevenueReport& report);

}  // namespace duogame
