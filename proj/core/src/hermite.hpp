#pragma once

// Uniform-grid cubic Hermite table: node values plus exact node derivatives,
// O(h^4) between nodes. Internal to the solvers.

#include <algorithm>
#include <cmath>
#include <vector>

namespace duogame::detail {

struct HermiteTable {
  double t0 = 0.0;
  double h = 1.0;
  std::vector<double> y, dy;

  double at(double t) const {
    if (y.size() <= 1) return y.empty() ? 0.0 : y.front();
    const int last = static_cast<int>(y.size()) - 2;
    const double u = (t - t0) / h;
    const int i = std::clamp(static_cast<int>(std::floor(u)), 0, last);
    const double s = u - i;
    const double s2 = s * s, s3 = s2 * s;
    return (2.0 * s3 - 3.0 * s2 + 1.0) * y[i] + h * (s3 - 2.0 * s2 + s) * dy[i] +
           (-2.0 * s3 + 3.0 * s2) * y[i + 1] + h * (s3 - s2) * dy[i + 1];
  }
};

}  // namespace duogame::detail
