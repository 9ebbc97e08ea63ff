#pragma once

#include <string>
#include <vector>

#include "duogame/auction.hpp"
#include "duogame/market.hpp"
#include "duogame/trajectory.hpp"

namespace duogame {

// Independent verification oracle. Rebuilds the equilibrium by discrete
// backward induction on the primitive stage game and the necessary
// conditions, sharing no code with the closed-form coefficient solvers: stage
// prices come from an exact 2x2 Newton solve of the Hamiltonian first-order
// conditions (finite differences are exact for quadratic payoffs), costate
// fields are advanced by an explicit Euler step of the adjoint equations, and
// the rival price slope entering the adjoint is measured by re-solving the
// stage game with costates frozen, matching the equilibrium concept of the
// closed forms. Everything here is deliberately slow and simple.

struct DiscreteGameSetup {
  MarketParams params;
  PhaseKind phase;                  // sign of the utility edge in the stage game
  double dt = 1e-4;                 // Euler step
  double horizon = 1.5;             // finite phase only; must satisfy dt <= horizon / 64
  double fixed_point_tol = 1e-10;   // infinite phase stopping rule (coefficient sup norm)
  long max_iterations = 10'000'000; // infinite phase safety cap
};

// V(x) = a x^2 + b x + c. The derivative 2 a x + b reproduces the costate
// field; c is accumulated alongside the recursion as a diagnostic and never
// feeds back into it.
struct QuadraticValue {
  double a = 0.0, b = 0.0, c = 0.0;
};

// One time node of the backward induction: affine costate fields
// lambda_i(x) = k_i x + e_i and the stage-Nash price fields p_i(x) evaluated
// from them.
struct OracleNode {
  double k1 = 0.0, e1 = 0.0, k2 = 0.0, e2 = 0.0;
  double p1_0 = 0.0, p1_x = 0.0;  // p1(x) = p1_0 + p1_x * x
  double p2_0 = 0.0, p2_x = 0.0;
};

struct OracleRun {
  DiscreteGameSetup setup;
  // Finite phase: ascending nodes on [0, horizon], spacing dt. Infinite
  // phase: a single stationary node, times = {0}.
  std::vector<double> times;
  std::vector<OracleNode> nodes;
  std::vector<QuadraticValue> value1, value2;  // per node, same indexing
  long iterations = 0;  // fixed-point iterations used (infinite phase)
};

// Exact stage Nash prices for given state and costates, via the Hamiltonian
// first-order conditions. Throws solver_error if the 2x2 system degenerates.
Prices stage_nash_prices(const MarketParams& params, double du_signed, double x1,
                         double lambda1, double lambda2);

OracleRun backward_induction(const DiscreteGameSetup& setup);

// Forward Euler simulation under the oracle's per-node price fields. Finite
// phase runs only (throws std::invalid_argument for a stationary run). The
// returned trajectory carries no dense evaluator and no tail.
PhaseTrajectory oracle_trajectory(const OracleRun& run, double x1_0);

struct ResidualTolerances {
  double foc = 1e-5;
  double adjoint = 1e-5;
  double boundary = 1e-10;
  double ode = 1e-5;
};

struct ResidualReport {
  double foc = 0.0;       // sup |dH_i / dp_i| along the samples
  double adjoint = 0.0;   // sup |central-difference costate rate - adjoint field|
  double boundary = 0.0;  // finite phase: |costates| at the final node;
                          // infinite phase: 0 when sampled costates stay bounded
  double ode = 0.0;       // sup |central-difference share rate - model share rate|
  bool pass = false;
  ResidualTolerances tol;
  std::string phase_label;  // "asymmetric" or "symmetric"
  std::string to_json() const;
};

// Necessary-condition residuals of any sampled trajectory (closed-form or
// oracle-simulated). Interior derivatives are central differences on the
// sample grid, so the reported residuals include an O(h^2) grid term.
ResidualReport residual_report(const PhaseTrajectory& traj,
                               const MarketParams& params,
                               const ResidualTolerances& tol = {});

// Expected spiteful auction payoff of one bidder against an opponent bid
// drawn uniformly on [c_A, r_jA], evaluated in closed form; bids are clamped
// to that interval. Throws degenerate_parameters_error if the interval is
// empty.
double expected_spiteful_payoff(const AuctionInputs& in, int bidder, double bid);

struct BestResponse {
  double bid = 0.0;     // grid argmax of the expected payoff
  double payoff = 0.0;  // expected payoff at the argmax
  double grid_step = 0.0;
};

// Brute-force grid argmax of expected_spiteful_payoff over [c_A, r_jA].
BestResponse auction_best_response(const AuctionInputs& in, int bidder,
                                   int grid_n);

}  // namespace duogame
