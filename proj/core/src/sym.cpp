#include "duogame/sym.hpp"

#include <cmath>
#include <sstream>

namespace duogame {

SymCoefficients solve_symmetric_coeffs(const MarketParams& p) {
  validate(p);
  const double s1 = p.s1(), s2 = p.s2();
  // smallest root of 6 k^2 - (11 s_hi + 25 s_lo + 9 rho s1) k + 2 s2^2 = 0
  const double lin = 11.0 * p.s_hi + 25.0 * p.s_lo + 9.0 * p.rho * s1;
  const double disc = lin * lin - 48.0 * s2 * s2;
  if (!(disc > 0.0)) {
    std::ostringstream msg;
    msg << "coefficient quadratic has nonpositive discriminant " << disc;
    throw degenerate_parameters_error(msg.str());
  }
  const double k = (lin - std::sqrt(disc)) / 12.0;

  const double denom = 6.0 * k - 13.0 * p.s_lo - 5.0 * p.s_hi - 9.0 * p.rho * s1;
  if (denom == 0.0)
    throw degenerate_parameters_error("costate-offset denominator vanishes");

  SymCoefficients c;
  c.k = k;
  c.e1 = s2 / (3.0 * (1.0 + p.rho)) +
         (s2 * s2 - 3.0 * k * (2.0 * p.s_lo + p.s_hi)) / denom;
  c.e2 = c.e1 - 2.0 * s2 / (3.0 * (1.0 + p.rho));
  c.decay = 2.0 * (k - p.s_lo - s1) / (3.0 * s1);

  if (!(c.decay < 0.0)) {
    std::ostringstream msg;
    msg << "share-decay exponent " << c.decay << " is not negative";
    throw degenerate_parameters_error(msg.str());
  }
  const double drift = std::abs(c.k + c.e1 + c.e2);
  if (!(drift <= 1e-8 * std::max(1.0, std::abs(c.k)))) {
    std::ostringstream msg;
    msg << "stationary self-consistency k + e1 + e2 = " << c.k + c.e1 + c.e2
        << " exceeds tolerance";
    throw solver_error(msg.str());
  }
  return c;
}

Prices equilibrium_prices_sym(const SymCoefficients& c, const MarketParams& p,
                              double x1) {
  const double s1 = p.s1(), s2 = p.s2();
  const double slope = (s2 - c.k) / 3.0;
  return {(s1 + p.s_lo + c.e2 - 2.0 * c.e1) / 3.0 + slope * x1,
          (s1 + p.s_hi + 2.0 * c.e2 - c.e1) / 3.0 - slope * x1};
}

double share_trajectory_sym(const SymCoefficients& c, double x1_T, double T,
                            double t) {
  if (t < T) throw validity_error("share_trajectory_sym: t must be >= T");
  return 0.5 + (x1_T - 0.5) * std::exp(c.decay * (t - T));
}

}  // namespace duogame
