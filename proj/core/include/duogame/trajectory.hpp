#pragma once

// Sampled equilibrium paths shared by the phase solvers, the verification
// oracle, and the revenue evaluators.

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "duogame/market.hpp"
#include "duogame/sym.hpp"

namespace duogame {

// Dense (off-grid) accessors backing a sampled trajectory, used by adaptive
// quadrature. Present on solver-produced trajectories; absent when a
// trajectory is assembled from raw samples.
struct DenseEvaluator {
  std::function<double(double)> p1, p2, x1, x1dot;
};

// Closed-form continuation data for an infinite-horizon symmetric trajectory:
// prices are affine in x1 and x1 relaxes exponentially, so discounted
// integrals over [T, inf) have exact values.
struct SymTail {
  double T = 0.0;
  double x1_T = 0.5;
  SymCoefficients coeffs;
};

struct PhaseTrajectory {
  PhaseKind phase;
  std::vector<double> times;  // strictly increasing
  std::vector<double> p1, p2;
  std::vector<double> x1;                  // x2 is always 1 - x1
  std::vector<double> lambda1, lambda2;    // costate samples
  std::vector<std::uint8_t> valid;         // price-gap/strategy-space flag per sample

  std::shared_ptr<const DenseEvaluator> dense;
  std::shared_ptr<const SymTail> tail;

  std::size_t size() const { return times.size(); }
};

// Bounds of the admissible price vectors (the strategy space): p1 in
// [0, (1+eta) u0] for the advantaged operator, p2 in [0, u0] for the other;
// in the symmetric phase both are bounded by u0.
bool prices_in_strategy_space(const MarketParams& params, const PhaseKind& phase,
                              double p1, double p2);

// True when the price gap lies strictly inside the phase validity interval and
// both prices lie in the strategy space.
bool sample_valid(const MarketParams& params, const PhaseKind& phase, double p1,
                  double p2);

// Samples the symmetric continuation on [T, T + window] at grid_n uniform
// points and attaches both the closed-form tail and dense accessors. The
// window only bounds the sampled view; discounted integrals use the tail.
PhaseTrajectory sample_symmetric_phase(const MarketParams& params,
                                       const SymCoefficients& coeffs, double T,
                                       double x1_T, double window,
                                       std::size_t grid_n);

}  // namespace duogame
