#pragma once

// Feedback equilibrium of the finite-horizon asymmetric phase: the coefficient
// quadratic and its roots, the time-varying costate coefficients k(t), z(t),
// e1(t), e2(t) with their auxiliary rate functions, affine feedback prices,
// and the market-share trajectory on [0, T].

#include <memory>
#include <string>
#include <vector>

#include "duogame/market.hpp"
#include "duogame/trajectory.hpp"

namespace duogame {

// Constant term of the coefficient quadratic
//   6 k^2 - (11 s_hi + 25 s_lo + 9 rho s1) k + C = 0.
// Two conventions for C circulate for this model: C = 2 s2^2 ("matched"), the
// form consistent with the infinite-horizon stationary coefficients, and
// C = 2 s1 s2 ("printed"), an alternate form retained as a diagnostic. The
// verification oracle adjudicates between them; see docs/numerical-notes.md.
enum class RiccatiMode { matched, printed };

// "matched" / "printed"; the parser throws config_error on anything else.
const char* to_string(RiccatiMode mode);
RiccatiMode riccati_mode_from_string(const std::string& name);

struct RiccatiRoots {
  double alpha1 = 0.0;  // alpha1 < alpha2
  double alpha2 = 0.0;
};

// Both real roots of the adopted quadratic. Throws degenerate_parameters_error
// on a nonpositive discriminant. Each root's relative residual is below 1e-9.
RiccatiRoots riccati_roots(const MarketParams& params, RiccatiMode mode);

// Time-varying equilibrium coefficients on [0, T]. Closed forms for k and z;
// e1 comes from a cached-grid evaluation of its variation-of-constants
// integral (exact panel recursion, cubic Hermite between nodes), and
// e2 = e1 - z. All accessors require 0 <= t <= T.
class AsymCoefficients {
 public:
  double alpha1() const;
  double alpha2() const;
  double T() const;
  RiccatiMode mode() const;

  double k_at(double t) const;
  double z_at(double t) const;
  double e1_at(double t) const;
  double e2_at(double t) const;

  double mu_at(double t) const;     // decay rate of the e1 equation
  double nu_at(double t) const;     // forcing term of the e1 equation
  double delta_at(double t) const;  // share-ODE state coefficient
  double zeta_at(double t) const;   // share-ODE forcing term

  // Achieved pointwise error estimate of the cached e1 evaluation
  // (refinement-doubling difference), relative to max(1, max |e1|).
  double offsets_error() const;

  // Node count of the cached offsets grid (1 for T = 0).
  std::size_t offsets_grid_size() const;

  AsymCoefficients() = default;

  struct Impl;  // defined in asym.cpp

 private:
  friend AsymCoefficients solve_asym_coefficients(const MarketParams&, double,
                                                  RiccatiMode, double);
  std::shared_ptr<const Impl> impl_;
};

// Builds the coefficient set, refining the internal grid until the pointwise
// e1 error estimate is below rel_tol (throws quadrature_failure with the
// achieved estimate if the refinement cap is reached first).
AsymCoefficients solve_asym_coefficients(const MarketParams& params, double T,
                                         RiccatiMode mode = RiccatiMode::matched,
                                         double rel_tol = 1e-8);

// Sampled costate offsets on a uniform n-point grid over [0, T].
struct SampledOffsets {
  std::vector<double> times, e1, e2;
};
SampledOffsets costate_offsets(const AsymCoefficients& coeffs, int n);

// Affine feedback prices at (t, x1). Never clamps; out-of-region prices are
// reported through trajectory validity flags instead.
Prices equilibrium_prices(const AsymCoefficients& coeffs, const MarketParams& params,
                          double t, double x1);

enum class ValidityAction { warn_and_record, error };

struct AsymSolveOptions {
  int grid_n = 1000;                  // trajectory samples over [0, T], >= 64
  RiccatiMode mode = RiccatiMode::matched;
  double offsets_tol = 1e-8;          // cached-grid tolerance for e1
  ValidityAction validity = ValidityAction::warn_and_record;
};

struct AsymSolution {
  AsymCoefficients coeffs;
  PhaseTrajectory trajectory;
  double x1_T = 0.5;        // terminal share, the hand-off to the symmetric phase
  double x1_T_error = 0.0;  // refinement-difference estimate of x1_T
  int invalid_samples = 0;  // out-of-region samples (warn_and_record mode)
};

// Solves the full phase from initial share x1_0. T = 0 produces an empty
// trajectory with x1_T = x1_0. The sampled path satisfies the share ODE under
// the equilibrium prices to the module tolerances.
AsymSolution solve_asymmetric(const MarketParams& params, double x1_0, double T,
                              const AsymSolveOptions& options = {});

}  // namespace duogame
