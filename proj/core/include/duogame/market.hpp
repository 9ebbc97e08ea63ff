#pragma once

// Economic primitives of a two-operator subscription market: the parameter
// set, the phase descriptor (one operator may hold a temporary service-speed
// advantage), user switching flows, the market-share rate equation, and the
// price-gap region on which those formulas are valid.

#include "duogame/errors.hpp"

namespace duogame {

struct MarketParams {
  double u0 = 10.0;    // reserve utility of the service
  double eta = 0.5;    // utility premium factor of double-speed service, in [0,1)
  double rho = 0.5;    // discount rate per unit time
  double s_lo = 5.0;   // largest net switching subsidy magnitude
  double s_hi = 10.0;  // largest net switching cost

  // Derived scales, always recomputed, never stored.
  double s1() const { return s_lo + s_hi; }
  double s2() const { return s_hi - s_lo; }
};

// Throws validity_error naming the offending field. eta = 0 is admitted as the
// no-advantage limit; it makes the two phases coincide and is the natural
// symmetry check, even though the market story assumes a strict advantage.
void validate(const MarketParams& params);

enum class Phase { asymmetric, symmetric };

struct PhaseKind {
  Phase tag = Phase::asymmetric;
  int advantaged = 1;  // operator index holding the premium block; fixed per run
};

struct MarketState {
  double x1 = 0.5;  // operator 1's market share
  double x2() const { return 1.0 - x1; }  // full coverage: x2 is never stored
};

struct Prices {
  double p1 = 0.0;
  double p2 = 0.0;
};

// Open interval of admissible price gaps p1 - p2 for a phase.
struct GapInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// User flows between the operators, as population fractions per unit time.
struct SwitchingMasses {
  double q21 = 0.0;  // from operator 2 to operator 1
  double q12 = 0.0;
};

// Signed utility edge of operator 1: +eta*u0 when operator 1 is advantaged in
// the asymmetric phase, -eta*u0 when operator 2 is, 0 in the symmetric phase.
double utility_edge(const MarketParams& params, const PhaseKind& phase);

// Admissible open interval for p1 - p2; on it both switching masses stay
// strictly inside (0,1).
GapInterval validity_interval(const MarketParams& params, const PhaseKind& phase);

// Switching flows for price gap dp = p1 - p2. Throws validity_error when dp is
// not strictly inside validity_interval.
SwitchingMasses switching_masses(const MarketParams& params, const PhaseKind& phase,
                                 double dp);

// dx1/dt at the given state and prices; dx2/dt is its negation by full market
// coverage. Throws validity_error like switching_masses.
double share_rate(const MarketParams& params, const PhaseKind& phase,
                  const MarketState& state, double p1, double p2);

// The share-rate formula itself, for a signed utility edge and without the
// validity-region guard. Finite-difference probes (the verification oracle,
// residual checks) evaluate it outside the region on purpose.
double share_rate_raw(const MarketParams& params, double du_signed, double x1,
                      double p1, double p2);

}  // namespace duogame
