#pragma once

#include <duogame/market.hpp>

#include <random>

namespace duogame::testing {

// Deterministic uniform draw on [lo, hi). The shift keeps the mapping
// identical across standard library implementations.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline MarketParams desk_params() {
  MarketParams p;
  p.u0 = 10.0;
  p.eta = 0.5;
  p.rho = 0.5;
  p.s_lo = 5.0;
  p.s_hi = 10.0;
  return p;
}

}  // namespace duogame::testing
