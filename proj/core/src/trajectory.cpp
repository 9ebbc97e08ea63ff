#include "duogame/trajectory.hpp"

#include <stdexcept>

#include "duogame/errors.hpp"

namespace duogame {

bool prices_in_strategy_space(const MarketParams& params, const PhaseKind& phase,
                              double p1, double p2) {
  const double premium_cap = (1.0 + params.eta) * params.u0;
  double cap1 = params.u0, cap2 = params.u0;
  if (phase.tag == Phase::asymmetric) {
    (phase.advantaged == 1 ? cap1 : cap2) = premium_cap;
  }
  return p1 >= 0.0 && p1 <= cap1 && p2 >= 0.0 && p2 <= cap2;
}

bool sample_valid(const MarketParams& params, const PhaseKind& phase, double p1,
                  double p2) {
  const GapInterval iv = validity_interval(params, phase);
  const double dp = p1 - p2;
  return dp > iv.lo && dp < iv.hi && prices_in_strategy_space(params, phase, p1, p2);
}

PhaseTrajectory sample_symmetric_phase(const MarketParams& params,
                                       const SymCoefficients& coeffs, double T,
                                       double x1_T, double window,
                                       std::size_t grid_n) {
  if (!(x1_T >= 0.0 && x1_T <= 1.0)) {
    throw validity_error("x1_T: must lie in [0, 1]");
  }
  if (!(window > 0.0) || grid_n < 2) {
    throw std::invalid_argument("sample_symmetric_phase needs window > 0 and grid_n >= 2");
  }
  const PhaseKind phase{Phase::symmetric, 1};

  auto x_of = [coeffs, x1_T, T](double t) {
    return share_trajectory_sym(coeffs, x1_T, T, t);
  };
  auto p1_of = [coeffs, params, x_of](double t) {
    return equilibrium_prices_sym(coeffs, params, x_of(t)).p1;
  };
  auto p2_of = [coeffs, params, x_of](double t) {
    return equilibrium_prices_sym(coeffs, params, x_of(t)).p2;
  };
  auto xdot_of = [coeffs, x1_T, T](double t) {
    return coeffs.decay * (share_trajectory_sym(coeffs, x1_T, T, t) - 0.5);
  };

  PhaseTrajectory traj;
  traj.phase = phase;
  traj.times.resize(grid_n);
  traj.p1.resize(grid_n);
  traj.p2.resize(grid_n);
  traj.x1.resize(grid_n);
  traj.lambda1.resize(grid_n);
  traj.lambda2.resize(grid_n);
  traj.valid.resize(grid_n);
  const double h = window / static_cast<double>(grid_n - 1);
  for (std::size_t i = 0; i < grid_n; ++i) {
    const double t = (i + 1 == grid_n) ? T + window : T + h * static_cast<double>(i);
    const double x = x_of(t);
    const Prices pr = equilibrium_prices_sym(coeffs, params, x);
    traj.times[i] = t;
    traj.x1[i] = x;
    traj.p1[i] = pr.p1;
    traj.p2[i] = pr.p2;
    traj.lambda1[i] = coeffs.k * x + coeffs.e1;
    traj.lambda2[i] = coeffs.k * x + coeffs.e2;
    traj.valid[i] = sample_valid(params, phase, pr.p1, pr.p2) ? 1 : 0;
  }

  auto dense = std::make_shared<DenseEvaluator>();
  dense->p1 = p1_of;
  dense->p2 = p2_of;
  dense->x1 = x_of;
  dense->x1dot = xdot_of;
  traj.dense = std::move(dense);

  auto tail = std::make_shared<SymTail>();
  tail->T = T;
  tail->x1_T = x1_T;
  tail->coeffs = coeffs;
  traj.tail = std::move(tail);
  return traj;
}

}  // namespace duogame
