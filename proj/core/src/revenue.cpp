#include "duogame/revenue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "duogame/errors.hpp"
#include "duogame/sym.hpp"
#include "quad.hpp"

namespace duogame {

namespace {

constexpr double kQuadTol = 1e-9;

void check_operator(int op) {
  if (op != 1 && op != 2) throw std::invalid_argument("operator index must be 1 or 2");
}

double finite_phase_revenue(const PhaseTrajectory& traj, const MarketParams& params,
                            int op, double* error_out) {
  if (traj.times.empty()) {
    if (error_out) *error_out = 0.0;
    return 0.0;
  }
  if (!traj.dense) {
    throw std::invalid_argument(
        "finite-phase revenue needs a trajectory with dense accessors");
  }
  const DenseEvaluator& d = *traj.dense;
  const double rho = params.rho;
  auto integrand = [&d, rho, op](double t) {
    const double x1 = d.x1(t);
    const double x1dot = d.x1dot(t);
    const double rate = (op == 1) ? d.p1(t) * (x1 + x1dot)
                                  : d.p2(t) * (1.0 - x1 - x1dot);
    return std::exp(-rho * t) * rate;
  };
  double err = 0.0;
  const double value = detail::integrate(integrand, traj.times.front(),
                                         traj.times.back(), kQuadTol, &err);
  if (!(err <= 1e-6 * std::max(1.0, std::abs(value)))) {
    throw quadrature_failure("finite-phase revenue quadrature did not converge", err);
  }
  if (error_out) *error_out = err;
  return value;
}

struct TailIntegrand {
  // discounted rate written as e^{-rho t} (c0 + c1 E + c2 E^2),
  // E = e^{decay (t - T)}
  double c0, c1, c2;
  double T, decay, rho;
};

TailIntegrand tail_integrand(const SymTail& tail, const MarketParams& params,
                             int op) {
  const SymCoefficients& c = tail.coeffs;
  const Prices at0 = equilibrium_prices_sym(c, params, 0.0);
  const Prices at1 = equilibrium_prices_sym(c, params, 1.0);
  const double a = (op == 1) ? at0.p1 : at0.p2;
  const double slope = (op == 1) ? at1.p1 - at0.p1 : at1.p2 - at0.p2;
  const double w = tail.x1_T - 0.5;
  const double pbar = a + 0.5 * slope;  // price at the even split
  // op 1: x1 + x1dot = 1/2 + (1 + decay) w E; op 2 mirrors the sign
  const double occ = (op == 1) ? 1.0 : -1.0;
  TailIntegrand out;
  out.c0 = 0.5 * pbar;
  out.c1 = occ * pbar * (1.0 + c.decay) * w + 0.5 * slope * w;
  out.c2 = occ * slope * (1.0 + c.decay) * w * w;
  out.T = tail.T;
  out.decay = c.decay;
  out.rho = params.rho;
  return out;
}

double infinite_phase_revenue(const PhaseTrajectory& traj,
                              const MarketParams& params, int op,
                              double* error_out) {
  if (!traj.tail) {
    throw std::invalid_argument(
        "infinite-phase revenue needs a trajectory with a closed-form tail");
  }
  const TailIntegrand g = tail_integrand(*traj.tail, params, op);
  // int_T^inf e^{-rho t} E^m dt = e^{-rho T} / (rho - m decay); decay < 0
  const double value = std::exp(-g.rho * g.T) *
                       (g.c0 / g.rho + g.c1 / (g.rho - g.decay) +
                        g.c2 / (g.rho - 2.0 * g.decay));
  if (error_out) *error_out = 0.0;
  return value;
}

}  // namespace

double phase_revenue(const PhaseTrajectory& traj, const MarketParams& params,
                     int op, double* error_out) {
  check_operator(op);
  validate(params);
  if (traj.phase.tag == Phase::asymmetric) {
    return finite_phase_revenue(traj, params, op, error_out);
  }
  return infinite_phase_revenue(traj, params, op, error_out);
}

double truncated_tail_revenue(const PhaseTrajectory& traj,
                              const MarketParams& params, int op, double cutoff,
                              double* error_out) {
  check_operator(op);
  validate(params);
  if (traj.phase.tag != Phase::symmetric || !traj.tail) {
    throw std::invalid_argument(
        "truncated_tail_revenue needs a symmetric trajectory with a tail");
  }
  if (!(cutoff > 0.0)) throw std::invalid_argument("cutoff must be > 0");
  const SymTail tail = *traj.tail;
  const SymCoefficients c = tail.coeffs;
  const MarketParams p = params;
  auto rate = [tail, c, p, op](double t) {
    const double x = share_trajectory_sym(c, tail.x1_T, tail.T, t);
    const double xdot = c.decay * (x - 0.5);
    const Prices pr = equilibrium_prices_sym(c, p, x);
    const double r = (op == 1) ? pr.p1 * (x + xdot) : pr.p2 * (1.0 - x - xdot);
    return std::exp(-p.rho * t) * r;
  };
  // cut where the discount alone drives the integrand below the cutoff
  const double bound = 2.0 * params.u0 * (1.0 + std::abs(c.decay));
  const double t_cut =
      std::max(tail.T, std::log(bound / cutoff) / params.rho) + 1.0;
  double err = 0.0;
  const double value = detail::integrate(rate, tail.T, t_cut, kQuadTol, &err);
  if (error_out) *error_out = err;
  return value;
}

OrientationRevenues role_swap(const OrientationRevenues& r) {
  OrientationRevenues out = r;
  out.holder_of_A = (r.holder_of_A == 1) ? 2 : 1;
  std::swap(out.x1_0, out.x2_0);
  std::swap(out.r_ap_1, out.r_ap_2);
  std::swap(out.r_sp_1, out.r_sp_2);
  std::swap(out.total_1, out.total_2);
  std::swap(out.x1_T, out.x2_T);
  return out;
}

OrientationRevenues aggregate_revenues(const MarketParams& params, double x1_0,
                                       double T, int holder_of_A,
                                       const AsymSolveOptions& options) {
  if (holder_of_A != 1 && holder_of_A != 2) {
    throw std::invalid_argument("holder_of_A must be 1 or 2");
  }
  validate(params);
  if (!(x1_0 >= 0.0 && x1_0 <= 1.0)) {
    throw validity_error("x1_0: must lie in [0, 1]");
  }

  // the coefficient solver works in the orientation where the A holder is
  // operator 1; the other orientation is its relabeling from the
  // complementary initial share
  const double s0 = (holder_of_A == 1) ? x1_0 : 1.0 - x1_0;
  const AsymSolution asym = solve_asymmetric(params, s0, T, options);
  const SymCoefficients sym = solve_symmetric_coeffs(params);
  const PhaseTrajectory sym_traj =
      sample_symmetric_phase(params, sym, T, asym.x1_T, 12.0, 129);

  double e_ap1 = 0.0, e_ap2 = 0.0;
  const double ap1 = phase_revenue(asym.trajectory, params, 1, &e_ap1);
  const double ap2 = phase_revenue(asym.trajectory, params, 2, &e_ap2);
  const double sp1 = phase_revenue(sym_traj, params, 1, nullptr);
  const double sp2 = phase_revenue(sym_traj, params, 2, nullptr);

  OrientationRevenues canonical;
  canonical.holder_of_A = 1;
  canonical.x1_0 = s0;
  canonical.x2_0 = 1.0 - s0;
  canonical.r_ap_1 = ap1;
  canonical.r_ap_2 = ap2;
  canonical.r_sp_1 = sp1;
  canonical.r_sp_2 = sp2;
  canonical.total_1 = ap1 + sp1;
  canonical.total_2 = ap2 + sp2;
  canonical.x1_T = asym.x1_T;
  canonical.x2_T = 1.0 - asym.x1_T;
  canonical.quadrature_error = std::max(e_ap1, e_ap2);
  return (holder_of_A == 1) ? canonical : role_swap(canonical);
}

RevenueReport full_revenue_report(const MarketParams& params, double x1_0,
                                  double T, const AsymSolveOptions& options) {
  const OrientationRevenues to1 = aggregate_revenues(params, x1_0, T, 1, options);
  const OrientationRevenues to2 = aggregate_revenues(params, x1_0, T, 2, options);
  RevenueReport rep;
  rep.r_ap = {to1.r_ap_1, to1.r_ap_2};
  rep.r_sp = {to1.r_sp_1, to1.r_sp_2};
  rep.r_total_A_to_1 = {to1.total_1, to1.total_2};
  rep.r_total_A_to_2 = {to2.total_1, to2.total_2};
  rep.quadrature_error = std::max(to1.quadrature_error, to2.quadrature_error);
  rep.gain = revenue_gain(rep);
  return rep;
}

double revenue_gain(const RevenueReport& report) {
  const double denom = report.r_total_A_to_1.second;
  if (!(denom > 0.0)) {
    throw degenerate_parameters_error(
        "revenue gain denominator (B holder aggregate) must be > 0");
  }
  return report.r_total_A_to_1.first / denom;
}

}  // namespace duogame
