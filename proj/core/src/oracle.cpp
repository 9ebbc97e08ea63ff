#include "duogame/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "duogame/errors.hpp"

namespace duogame {

namespace {

// Hamiltonians of the stage game, built from the primitive share-rate law
// only. H2 carries the same multiplier as H1 because both operators price
// against the single state x1.
double ham1(const MarketParams& p, double du, double x, double p1, double p2,
            double l1) {
  const double f = share_rate_raw(p, du, x, p1, p2);
  return p1 * (x + f) + l1 * f;
}

double ham2(const MarketParams& p, double du, double x, double p1, double p2,
            double l2) {
  const double f = share_rate_raw(p, du, x, p1, p2);
  return p2 * (1.0 - x - f) + l2 * f;
}

}  // namespace

Prices stage_nash_prices(const MarketParams& params, double du_signed, double x1,
                         double lambda1, double lambda2) {
  // Newton with finite differences on the first-order conditions; payoffs are
  // quadratic in prices, so the derivatives are exact at h = 1 and the first
  // step already lands on the solution. The second iteration only confirms it.
  const double h = 1.0;
  double p1 = 8.0, p2 = 6.0;
  for (int it = 0; it < 2; ++it) {
    const double g1 = (ham1(params, du_signed, x1, p1 + h, p2, lambda1) -
                       ham1(params, du_signed, x1, p1 - h, p2, lambda1)) /
                      (2.0 * h);
    const double g2 = (ham2(params, du_signed, x1, p1, p2 + h, lambda2) -
                       ham2(params, du_signed, x1, p1, p2 - h, lambda2)) /
                      (2.0 * h);
    const double j11 = (ham1(params, du_signed, x1, p1 + h, p2, lambda1) -
                        2.0 * ham1(params, du_signed, x1, p1, p2, lambda1) +
                        ham1(params, du_signed, x1, p1 - h, p2, lambda1)) /
                       (h * h);
    const double j22 = (ham2(params, du_signed, x1, p1, p2 + h, lambda2) -
                        2.0 * ham2(params, du_signed, x1, p1, p2, lambda2) +
                        ham2(params, du_signed, x1, p1, p2 - h, lambda2)) /
                       (h * h);
    const double j12 = (ham1(params, du_signed, x1, p1 + h, p2 + h, lambda1) -
                        ham1(params, du_signed, x1, p1 + h, p2 - h, lambda1) -
                        ham1(params, du_signed, x1, p1 - h, p2 + h, lambda1) +
                        ham1(params, du_signed, x1, p1 - h, p2 - h, lambda1)) /
                       (4.0 * h * h);
    const double j21 = (ham2(params, du_signed, x1, p1 + h, p2 + h, lambda2) -
                        ham2(params, du_signed, x1, p1 + h, p2 - h, lambda2) -
                        ham2(params, du_signed, x1, p1 - h, p2 + h, lambda2) +
                        ham2(params, du_signed, x1, p1 - h, p2 - h, lambda2)) /
                       (4.0 * h * h);
    const double det = j11 * j22 - j12 * j21;
    if (!(std::abs(det) > 1e-12)) {
      throw solver_error("stage Nash system is singular");
    }
    p1 += (-g1 * j22 + g2 * j12) / det;
    p2 += (-j11 * g2 + j21 * g1) / det;
  }
  return {p1, p2};
}

namespace {

// Everything the backward induction needs at one time node: the price fields,
// the drift field F(x) = F0 + F1 x under them, and the frozen-costate rival
// price slopes sig_i = dp_i*/dx1 measured with both costates held fixed.
struct StepFields {
  OracleNode node;
  double F0 = 0.0, F1 = 0.0;
  double sig1 = 0.0, sig2 = 0.0;
};

StepFields compute_fields(const MarketParams& p, double du, double k1, double e1,
                          double k2, double e2) {
  StepFields out;
  out.node.k1 = k1;
  out.node.e1 = e1;
  out.node.k2 = k2;
  out.node.e2 = e2;
  // price field: stage solves at x = 0 and x = 1 with lambda_i(x) = k_i x + e_i;
  // the stage solution is affine in x, so two points determine it exactly
  const Prices at0 = stage_nash_prices(p, du, 0.0, e1, e2);
  const Prices at1 = stage_nash_prices(p, du, 1.0, k1 + e1, k2 + e2);
  out.node.p1_0 = at0.p1;
  out.node.p1_x = at1.p1 - at0.p1;
  out.node.p2_0 = at0.p2;
  out.node.p2_x = at1.p2 - at0.p2;
  // drift field under the equilibrium prices
  out.F0 = share_rate_raw(p, du, 0.0, at0.p1, at0.p2);
  out.F1 = share_rate_raw(p, du, 1.0, at1.p1, at1.p2) - out.F0;
  // frozen-costate slopes: re-solve at both states with the costates pinned
  const Prices q0 = stage_nash_prices(p, du, 0.0, e1, e2);
  const Prices q1 = stage_nash_prices(p, du, 1.0, e1, e2);
  out.sig1 = q1.p1 - q0.p1;
  out.sig2 = q1.p2 - q0.p2;
  return out;
}

struct Coefficients {
  double k1 = 0.0, e1 = 0.0, k2 = 0.0, e2 = 0.0;
};

// One explicit Euler step of the adjoint equations, backward in time. The
// costate rate field lamdot_i(x) = rho lam_i - dH_i/dx - (dH_i/dp_j) sig_j is
// affine in x, so evaluating at x = 0 and x = 1 identifies its coefficients;
// matching lam_i(x) = k_i x + e_i against it along the drift gives
// kdot_i = G_i1 - k_i F1 and edot_i = G_i0 - k_i F0.
Coefficients adjoint_step(const MarketParams& p, double du, const StepFields& sf,
                          double dt) {
  const double h = 0.5;
  double g_at[2][2];
  for (int ix = 0; ix < 2; ++ix) {
    const double xv = static_cast<double>(ix);
    const double pp1 = sf.node.p1_0 + sf.node.p1_x * xv;
    const double pp2 = sf.node.p2_0 + sf.node.p2_x * xv;
    const double l1 = sf.node.k1 * xv + sf.node.e1;
    const double l2 = sf.node.k2 * xv + sf.node.e2;
    const double dH1dx = (ham1(p, du, xv + h, pp1, pp2, l1) -
                          ham1(p, du, xv - h, pp1, pp2, l1)) /
                         (2.0 * h);
    const double dH2dx = (ham2(p, du, xv + h, pp1, pp2, l2) -
                          ham2(p, du, xv - h, pp1, pp2, l2)) /
                         (2.0 * h);
    const double dH1dp2 = (ham1(p, du, xv, pp1, pp2 + h, l1) -
                           ham1(p, du, xv, pp1, pp2 - h, l1)) /
                          (2.0 * h);
    const double dH2dp1 = (ham2(p, du, xv, pp1 + h, pp2, l2) -
                           ham2(p, du, xv, pp1 - h, pp2, l2)) /
                          (2.0 * h);
    g_at[ix][0] = p.rho * l1 - dH1dx - dH1dp2 * sf.sig2;
    g_at[ix][1] = p.rho * l2 - dH2dx - dH2dp1 * sf.sig1;
  }
  const double g10 = g_at[0][0], g20 = g_at[0][1];
  const double g11 = g_at[1][0] - g10, g21 = g_at[1][1] - g20;
  Coefficients next;
  next.k1 = sf.node.k1 - dt * (g11 - sf.node.k1 * sf.F1);
  next.e1 = sf.node.e1 - dt * (g10 - sf.node.k1 * sf.F0);
  next.k2 = sf.node.k2 - dt * (g21 - sf.node.k2 * sf.F1);
  next.e2 = sf.node.e2 - dt * (g20 - sf.node.k2 * sf.F0);
  return next;
}

double eval_value(const QuadraticValue& v, double x) {
  return (v.a * x + v.b) * x + v.c;
}

// One backward value-accumulation step for the constant term: the a and b
// coefficients are pinned to the costate field (a = k/2, b = e), and c
// follows the discounted recursion evaluated at x = 0.
QuadraticValue value_step(const MarketParams& p, const StepFields& sf, double k,
                          double e, double revenue_at0,
                          const QuadraticValue& next, double dt) {
  QuadraticValue v;
  v.a = 0.5 * k;
  v.b = e;
  const double xn = dt * sf.F0;
  v.c = dt * revenue_at0 + (1.0 - p.rho * dt) * eval_value(next, xn);
  return v;
}

double revenue1_at0(const StepFields& sf) {
  // r1 = p1 (x1 + x1dot) at x = 0
  return sf.node.p1_0 * sf.F0;
}

double revenue2_at0(const StepFields& sf) {
  // r2 = p2 (x2 + x2dot) = p2 (1 - x1 - x1dot) at x = 0
  return sf.node.p2_0 * (1.0 - sf.F0);
}

OracleRun finite_backward_induction(const DiscreteGameSetup& setup) {
  const double T = setup.horizon;
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument("horizon must be finite and > 0");
  }
  const long n = std::lround(T / setup.dt);
  if (n < 64) {
    throw std::invalid_argument("dt must satisfy dt <= horizon / 64");
  }
  const double dt = T / static_cast<double>(n);
  const double du = utility_edge(setup.params, setup.phase);

  OracleRun run;
  run.setup = setup;
  run.times.resize(n + 1);
  run.nodes.resize(n + 1);
  run.value1.resize(n + 1);
  run.value2.resize(n + 1);

  Coefficients c;  // transversality: costates vanish at the horizon
  QuadraticValue v1, v2;
  for (long i = n; i >= 0; --i) {
    run.times[i] = dt * static_cast<double>(i);
    const StepFields sf = compute_fields(setup.params, du, c.k1, c.e1, c.k2, c.e2);
    run.nodes[i] = sf.node;
    if (i < n) {
      v1 = value_step(setup.params, sf, c.k1, c.e1, revenue1_at0(sf), run.value1[i + 1], dt);
      v2 = value_step(setup.params, sf, c.k2, c.e2, revenue2_at0(sf), run.value2[i + 1], dt);
    }
    run.value1[i] = v1;
    run.value2[i] = v2;
    if (i > 0) c = adjoint_step(setup.params, du, sf, dt);
  }
  run.times[n] = T;
  return run;
}

OracleRun stationary_fixed_point(const DiscreteGameSetup& setup) {
  const double du = 0.0;
  Coefficients c;
  StepFields sf;
  long it = 0;
  for (;; ++it) {
    if (it >= setup.max_iterations) {
      throw solver_error("stationary costate fixed point did not converge");
    }
    sf = compute_fields(setup.params, du, c.k1, c.e1, c.k2, c.e2);
    const Coefficients next = adjoint_step(setup.params, du, sf, setup.dt);
    const double delta =
        std::max(std::max(std::abs(next.k1 - c.k1), std::abs(next.e1 - c.e1)),
                 std::max(std::abs(next.k2 - c.k2), std::abs(next.e2 - c.e2)));
    c = next;
    if (delta < setup.fixed_point_tol) break;
  }
  sf = compute_fields(setup.params, du, c.k1, c.e1, c.k2, c.e2);

  OracleRun run;
  run.setup = setup;
  run.iterations = it + 1;
  run.times = {0.0};
  run.nodes = {sf.node};
  // stationary value constants solve c = dt r(0) + (1 - rho dt) V(x+), with
  // the x+ contribution from the pinned a, b coefficients moved to the right
  auto stationary_value = [&](double k, double e, double r0) {
    QuadraticValue v;
    v.a = 0.5 * k;
    v.b = e;
    const double xn = setup.dt * sf.F0;
    const double beta = 1.0 - setup.params.rho * setup.dt;
    v.c = (setup.dt * r0 + beta * (v.a * xn * xn + v.b * xn)) /
          (setup.params.rho * setup.dt);
    return v;
  };
  run.value1 = {stationary_value(c.k1, c.e1, revenue1_at0(sf))};
  run.value2 = {stationary_value(c.k2, c.e2, revenue2_at0(sf))};
  return run;
}

}  // namespace

OracleRun backward_induction(const DiscreteGameSetup& setup) {
  validate(setup.params);
  if (!(setup.dt > 0.0) || !std::isfinite(setup.dt)) {
    throw std::invalid_argument("dt must be finite and > 0");
  }
  if (setup.phase.tag == Phase::asymmetric) {
    return finite_backward_induction(setup);
  }
  return stationary_fixed_point(setup);
}

PhaseTrajectory oracle_trajectory(const OracleRun& run, double x1_0) {
  if (run.times.size() < 2) {
    throw std::invalid_argument(
        "oracle_trajectory needs a finite-phase run with at least two nodes");
  }
  if (!(x1_0 >= 0.0 && x1_0 <= 1.0)) {
    throw validity_error("x1_0: must lie in [0, 1]");
  }
  const MarketParams& p = run.setup.params;
  const double du = utility_edge(p, run.setup.phase);
  const std::size_t n = run.times.size();

  PhaseTrajectory traj;
  traj.phase = run.setup.phase;
  traj.times = run.times;
  traj.p1.resize(n);
  traj.p2.resize(n);
  traj.x1.resize(n);
  traj.lambda1.resize(n);
  traj.lambda2.resize(n);
  traj.valid.resize(n);

  double x = x1_0;
  for (std::size_t i = 0; i < n; ++i) {
    const OracleNode& nd = run.nodes[i];
    const double p1 = nd.p1_0 + nd.p1_x * x;
    const double p2 = nd.p2_0 + nd.p2_x * x;
    traj.x1[i] = x;
    traj.p1[i] = p1;
    traj.p2[i] = p2;
    traj.lambda1[i] = nd.k1 * x + nd.e1;
    traj.lambda2[i] = nd.k2 * x + nd.e2;
    traj.valid[i] = sample_valid(p, run.setup.phase, p1, p2) ? 1 : 0;
    if (i + 1 < n) {
      const double dt = run.times[i + 1] - run.times[i];
      x += dt * share_rate_raw(p, du, x, p1, p2);
    }
  }
  return traj;
}

std::string ResidualReport::to_json() const {
  nlohmann::json j;
  j["foc"] = foc;
  j["adjoint"] = adjoint;
  j["boundary"] = boundary;
  j["ode"] = ode;
  j["pass"] = pass;
  j["phase"] = phase_label;
  j["tol"] = {{"foc", tol.foc},
              {"adjoint", tol.adjoint},
              {"boundary", tol.boundary},
              {"ode", tol.ode}};
  return j.dump();
}

ResidualReport residual_report(const PhaseTrajectory& traj,
                               const MarketParams& params,
                               const ResidualTolerances& tol) {
  ResidualReport rep;
  rep.tol = tol;
  const bool finite_phase = traj.phase.tag == Phase::asymmetric;
  rep.phase_label = finite_phase ? "asymmetric" : "symmetric";
  const double du = utility_edge(params, traj.phase);
  const std::size_t n = traj.size();
  const double h = 0.5;

  for (std::size_t i = 0; i < n; ++i) {
    const double x = traj.x1[i];
    const double p1 = traj.p1[i], p2 = traj.p2[i];
    const double l1 = traj.lambda1[i], l2 = traj.lambda2[i];

    const double g1 =
        (ham1(params, du, x, p1 + h, p2, l1) - ham1(params, du, x, p1 - h, p2, l1)) /
        (2.0 * h);
    const double g2 =
        (ham2(params, du, x, p1, p2 + h, l2) - ham2(params, du, x, p1, p2 - h, l2)) /
        (2.0 * h);
    rep.foc = std::max(rep.foc, std::max(std::abs(g1), std::abs(g2)));

    if (i > 0 && i + 1 < n) {
      const double span = traj.times[i + 1] - traj.times[i - 1];
      const double l1dot = (traj.lambda1[i + 1] - traj.lambda1[i - 1]) / span;
      const double l2dot = (traj.lambda2[i + 1] - traj.lambda2[i - 1]) / span;
      const double x1dot_fd = (traj.x1[i + 1] - traj.x1[i - 1]) / span;

      // frozen-costate rival slopes at the sampled state
      const Prices qp = stage_nash_prices(params, du, x + h, l1, l2);
      const Prices qm = stage_nash_prices(params, du, x - h, l1, l2);
      const double sig1 = (qp.p1 - qm.p1) / (2.0 * h);
      const double sig2 = (qp.p2 - qm.p2) / (2.0 * h);

      const double dH1dx =
          (ham1(params, du, x + h, p1, p2, l1) - ham1(params, du, x - h, p1, p2, l1)) /
          (2.0 * h);
      const double dH2dx =
          (ham2(params, du, x + h, p1, p2, l2) - ham2(params, du, x - h, p1, p2, l2)) /
          (2.0 * h);
      const double dH1dp2 =
          (ham1(params, du, x, p1, p2 + h, l1) - ham1(params, du, x, p1, p2 - h, l1)) /
          (2.0 * h);
      const double dH2dp1 =
          (ham2(params, du, x, p1 + h, p2, l2) - ham2(params, du, x, p1 - h, p2, l2)) /
          (2.0 * h);
      const double rhs1 = params.rho * l1 - dH1dx - dH1dp2 * sig2;
      const double rhs2 = params.rho * l2 - dH2dx - dH2dp1 * sig1;
      rep.adjoint = std::max(rep.adjoint,
                             std::max(std::abs(l1dot - rhs1), std::abs(l2dot - rhs2)));

      const double f = share_rate_raw(params, du, x, p1, p2);
      rep.ode = std::max(rep.ode, std::abs(x1dot_fd - f));
    }
  }

  if (finite_phase) {
    if (n > 0) {
      rep.boundary =
          std::max(std::abs(traj.lambda1.back()), std::abs(traj.lambda2.back()));
    }
  } else {
    // infinite horizon: the discounted transversality condition reduces to
    // boundedness of the costate samples
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sup = std::max(sup, std::max(std::abs(traj.lambda1[i]), std::abs(traj.lambda2[i])));
    }
    rep.boundary = std::isfinite(sup) ? 0.0 : std::numeric_limits<double>::infinity();
  }

  rep.pass = rep.foc <= tol.foc && rep.adjoint <= tol.adjoint &&
             rep.boundary <= tol.boundary && rep.ode <= tol.ode;
  return rep;
}

namespace {

struct BidderView {
  double own_rA, own_piB, rival_rA, rival_piB;
};

BidderView bidder_view(const AuctionInputs& in, int bidder) {
  if (bidder != 1 && bidder != 2) {
    throw std::invalid_argument("bidder must be 1 or 2");
  }
  if (bidder == 1) return {in.r1_A, profit_B(in, 1), in.r2_A, profit_B(in, 2)};
  return {in.r2_A, profit_B(in, 2), in.r1_A, profit_B(in, 1)};
}

}  // namespace

double expected_spiteful_payoff(const AuctionInputs& in, int bidder, double bid) {
  validate(in);
  const BidderView v = bidder_view(in, bidder);
  const double width = v.rival_rA - in.c_A;
  if (!(width > 0.0)) {
    throw degenerate_parameters_error(
        "opponent bid support [c_A, r_jA] is empty: r_jA <= c_A");
  }
  const double b = std::clamp(bid, in.c_A, v.rival_rA);
  const double g = in.gamma;
  const double win =
      (b - in.c_A) / width * ((1.0 - g) * (v.own_rA - b) - g * v.rival_piB);
  const double lose = (v.rival_rA - b) * (1.0 - g) * v.own_piB / width -
                      g * (v.rival_rA - b) * (v.rival_rA - b) / (2.0 * width);
  return win + lose;
}

BestResponse auction_best_response(const AuctionInputs& in, int bidder,
                                   int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("grid_n must be >= 2");
  validate(in);
  const BidderView v = bidder_view(in, bidder);
  const double width = v.rival_rA - in.c_A;
  if (!(width > 0.0)) {
    throw degenerate_parameters_error(
        "opponent bid support [c_A, r_jA] is empty: r_jA <= c_A");
  }
  BestResponse best;
  best.grid_step = width / static_cast<double>(grid_n - 1);
  for (int k = 0; k < grid_n; ++k) {
    const double b = (k == grid_n - 1)
                         ? v.rival_rA
                         : in.c_A + best.grid_step * static_cast<double>(k);
    const double val = expected_spiteful_payoff(in, bidder, b);
    if (k == 0 || val > best.payoff) {
      best.payoff = val;
      best.bid = b;
    }
  }
  return best;
}

}  // namespace duogame
