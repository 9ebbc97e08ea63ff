#include "duogame/market.hpp"

#include <cmath>
#include <sstream>

namespace duogame {

void validate(const MarketParams& p) {
  auto fail = [](const std::string& field, const std::string& what) {
    throw validity_error(field + ": " + what);
  };
  if (!(p.u0 > 0.0) || !std::isfinite(p.u0)) fail("u0", "must be finite and > 0");
  if (!(p.eta >= 0.0 && p.eta < 1.0)) fail("eta", "must lie in [0, 1)");
  if (!(p.rho > 0.0) || !std::isfinite(p.rho)) fail("rho", "must be finite and > 0");
  if (!(p.s_lo > 0.0)) fail("s_lo", "must be > 0");
  if (!(p.s_hi >= p.s_lo)) fail("s_hi", "must satisfy s_hi >= s_lo");
  if (!std::isfinite(p.s_lo) || !std::isfinite(p.s_hi)) fail("s_lo/s_hi", "must be finite");
}

double utility_edge(const MarketParams& p, const PhaseKind& phase) {
  if (phase.tag == Phase::symmetric) return 0.0;
  return (phase.advantaged == 1 ? 1.0 : -1.0) * p.eta * p.u0;
}

GapInterval validity_interval(const MarketParams& p, const PhaseKind& phase) {
  const double du = utility_edge(p, phase);
  return {du - p.s_lo, du + p.s_lo};
}

namespace {

void check_gap(const MarketParams& p, const PhaseKind& phase, double dp) {
  const GapInterval iv = validity_interval(p, phase);
  if (dp > iv.lo && dp < iv.hi) return;
  std::ostringstream msg;
  msg << "price gap p1 - p2 = " << dp << " outside the open validity interval ("
      << iv.lo << ", " << iv.hi << "): "
      << (dp <= iv.lo ? "at or below the lower bound" : "at or above the upper bound");
  throw validity_error(msg.str());
}

}  // namespace

SwitchingMasses switching_masses(const MarketParams& p, const PhaseKind& phase,
                                 double dp) {
  check_gap(p, phase, dp);
  const double du = utility_edge(p, phase);
  const double s1 = p.s1();
  return {(du - dp + p.s_lo) / s1, (-du + dp + p.s_lo) / s1};
}

double share_rate(const MarketParams& p, const PhaseKind& phase,
                  const MarketState& state, double p1, double p2) {
  check_gap(p, phase, p1 - p2);
  return share_rate_raw(p, utility_edge(p, phase), state.x1, p1, p2);
}

double share_rate_raw(const MarketParams& p, double du_signed, double x1,
                      double p1, double p2) {
  const double s1 = p.s1();
  return (du_signed - p1 + p2 + p.s_lo) / s1 - (2.0 * p.s_lo / s1) * x1;
}

}  // namespace duogame
