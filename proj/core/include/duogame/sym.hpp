#pragma once

// Stationary feedback equilibrium of the infinite-horizon symmetric game:
// constant costate coefficients, affine feedback prices, and the exponential
// relaxation of market shares toward the even split.

#include "duogame/market.hpp"

namespace duogame {

struct SymCoefficients {
  double k = 0.0;      // state coefficient of the costate, smallest quadratic root
  double e1 = 0.0;     // costate offsets; k + e1 + e2 = 0 up to rounding
  double e2 = 0.0;
  double decay = 0.0;  // share-convergence exponent 2(k - s_lo - s1)/(3 s1), < 0
};

// Solves the stationary coefficient system. Throws degenerate_parameters_error
// when the quadratic has no real root, the offset denominator vanishes, or the
// share dynamics would not contract; throws solver_error if the computed
// coefficients fail the k + e1 + e2 = 0 self-consistency check.
SymCoefficients solve_symmetric_coeffs(const MarketParams& params);

// Affine feedback prices at share x1. The gap satisfies
// p1 - p2 = (s2 - k)(2 x1 - 1)/3.
Prices equilibrium_prices_sym(const SymCoefficients& coeffs, const MarketParams& params,
                              double x1);

// Share path x1(t) = 1/2 + (x1_T - 1/2) e^{decay (t-T)} for t >= T.
double share_trajectory_sym(const SymCoefficients& coeffs, double x1_T, double T,
                            double t);

}  // namespace duogame
