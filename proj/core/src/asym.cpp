#include "duogame/asym.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hermite.hpp"
#include "quad.hpp"

namespace duogame {

const char* to_string(RiccatiMode mode) {
  return mode == RiccatiMode::matched ? "matched" : "printed";
}

RiccatiMode riccati_mode_from_string(const std::string& name) {
  if (name == "matched") return RiccatiMode::matched;
  if (name == "printed") return RiccatiMode::printed;
  throw config_error("quad_constant_mode: expected \"matched\" or \"printed\", got \"" +
                     name + "\"");
}

namespace {

double quad_constant(const MarketParams& p, RiccatiMode mode) {
  return mode == RiccatiMode::matched ? 2.0 * p.s2() * p.s2()
                                      : 2.0 * p.s1() * p.s2();
}

double linear_coeff(const MarketParams& p) {
  return 11.0 * p.s_hi + 25.0 * p.s_lo + 9.0 * p.rho * p.s1();
}

}  // namespace

RiccatiRoots riccati_roots(const MarketParams& p, RiccatiMode mode) {
  validate(p);
  const double lin = linear_coeff(p);
  const double C = quad_constant(p, mode);
  const double disc = lin * lin - 24.0 * C;
  if (!(disc > 0.0)) {
    std::ostringstream msg;
    msg << "coefficient quadratic has nonpositive discriminant " << disc;
    throw degenerate_parameters_error(msg.str());
  }
  const double sd = std::sqrt(disc);
  RiccatiRoots r;
  r.alpha2 = (lin + sd) / 12.0;
  // product of roots = C/6; this form keeps the small root accurate
  r.alpha1 = C == 0.0 ? 0.0 : (C / 6.0) / r.alpha2;
  for (double a : {r.alpha1, r.alpha2}) {
    const double res = std::abs(6.0 * a * a - lin * a + C);
    const double scale = std::max({6.0 * a * a, std::abs(lin * a), std::abs(C), 1.0});
    if (!(res <= 1e-9 * scale)) throw solver_error("quadratic root residual too large");
  }
  return r;
}

struct AsymCoefficients::Impl {
  MarketParams params;
  double T = 0.0;
  RiccatiMode mode = RiccatiMode::matched;
  RiccatiRoots roots;
  double c_exp = 0.0;  // exponent rate in the k closed form
  detail::HermiteTable e1;
  double achieved = 0.0;

  double k(double t) const {
    const double E = std::exp(c_exp * (T - t));
    return roots.alpha1 * (1.0 - E) / (1.0 - (roots.alpha1 / roots.alpha2) * E);
  }
  double z(double t) const {
    const double r1 = 1.0 + params.rho;
    return 2.0 * params.s2() / (3.0 * r1) * (1.0 - std::exp(r1 * (t - T)));
  }
  double mu(double t) const {
    return params.rho +
           (13.0 * params.s_lo + 5.0 * params.s_hi - 6.0 * k(t)) / (9.0 * params.s1());
  }
  double nu(double t) const {
    return (2.0 * params.s2() + 3.0 * k(t)) *
           (z(t) - 2.0 * params.s_lo - params.s_hi - params.eta * params.u0) /
           (9.0 * params.s1());
  }
  double delta(double t) const {
    return 2.0 * (k(t) - params.s_hi - 2.0 * params.s_lo) / (3.0 * params.s1());
  }
};

namespace {

// Exact variation-of-constants recursion for e1' = mu e1 + nu, e1(T) = 0,
// marched backward panel by panel; all exponents are differences within one
// panel, so nothing overflows. Node values are exact up to quadrature
// tolerance; the Hermite table only interpolates between nodes.
detail::HermiteTable build_e1_table(const AsymCoefficients::Impl& im, int n) {
  const double h = im.T / n;
  std::vector<double> mu_prefix(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    mu_prefix[i + 1] =
        mu_prefix[i] +
        detail::integrate_panel([&](double t) { return im.mu(t); }, i * h, (i + 1) * h);
  }
  std::vector<double> e1(n + 1, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    const double a = i * h, b = (i + 1) * h;
    const double carry = std::exp(mu_prefix[i] - mu_prefix[i + 1]);
    const double panel = detail::integrate_panel(
        [&](double tau) {
          const double m =
              detail::integrate_panel([&](double t) { return im.mu(t); }, a, tau);
          return std::exp(-m) * im.nu(tau);
        },
        a, b);
    e1[i] = carry * e1[i + 1] - panel;
  }
  detail::HermiteTable table;
  table.t0 = 0.0;
  table.h = h;
  table.y = std::move(e1);
  table.dy.resize(n + 1);
  for (int i = 0; i <= n; ++i)
    table.dy[i] = im.mu(i * h) * table.y[i] + im.nu(i * h);
  return table;
}

}  // namespace

AsymCoefficients solve_asym_coefficients(const MarketParams& params, double T,
                                         RiccatiMode mode, double rel_tol) {
  validate(params);
  if (!(T >= 0.0) || !std::isfinite(T))
    throw std::invalid_argument("T must be finite and >= 0");

  auto im = std::make_shared<AsymCoefficients::Impl>();
  im->params = params;
  im->T = T;
  im->mode = mode;
  im->roots = riccati_roots(params, mode);
  im->c_exp = 2.0 * (im->roots.alpha1 - im->roots.alpha2) / (3.0 * params.s1());

  if (T == 0.0) {
    im->e1.y = {0.0};
    im->e1.dy = {0.0};
  } else {
    int n = 256;
    detail::HermiteTable coarse = build_e1_table(*im, n);
    double achieved = 0.0;
    bool converged = false;
    while (n <= (1 << 14)) {
      detail::HermiteTable fine = build_e1_table(*im, 2 * n);
      double scale = 1.0, diff = 0.0;
      for (double v : fine.y) scale = std::max(scale, std::abs(v));
      for (int i = 0; i < static_cast<int>(fine.y.size()); ++i)
        diff = std::max(diff, std::abs(coarse.at(i * fine.h) - fine.y[i]));
      achieved = diff / scale;
      coarse = std::move(fine);
      n *= 2;
      if (achieved <= rel_tol) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw quadrature_failure("costate-offset grid did not reach tolerance",
                               achieved);
    im->e1 = std::move(coarse);
    im->achieved = achieved;
  }

  AsymCoefficients out;
  out.impl_ = std::move(im);
  return out;
}

namespace {

const AsymCoefficients::Impl& impl_of(const AsymCoefficients& c,
                                      const std::shared_ptr<const AsymCoefficients::Impl>& p) {
  if (!p) throw std::logic_error("AsymCoefficients used before solve");
  (void)c;
  return *p;
}

}  // namespace

#define DUOGAME_IMPL impl_of(*this, impl_)

double AsymCoefficients::alpha1() const { return DUOGAME_IMPL.roots.alpha1; }
double AsymCoefficients::alpha2() const { return DUOGAME_IMPL.roots.alpha2; }
double AsymCoefficients::T() const { return DUOGAME_IMPL.T; }
RiccatiMode AsymCoefficients::mode() const { return DUOGAME_IMPL.mode; }
double AsymCoefficients::offsets_error() const { return DUOGAME_IMPL.achieved; }
std::size_t AsymCoefficients::offsets_grid_size() const {
  return DUOGAME_IMPL.e1.y.size();
}

namespace {

void check_time(double t, double T) {
  if (!(t >= 0.0 && t <= T)) {
    std::ostringstream msg;
    msg << "t = " << t << " outside the phase horizon [0, " << T << "]";
    throw std::out_of_range(msg.str());
  }
}

}  // namespace

double AsymCoefficients::k_at(double t) const {
  const auto& im = DUOGAME_IMPL;
  check_time(t, im.T);
  return im.k(t);
}
double AsymCoefficients::z_at(double t) const {
  const auto& im = DUOGAME_IMPL;
  check_time(t, im.T);
  return im.z(t);
}
double AsymCoefficients::e1_at(double t) const {
  const auto& im = DUOGAME_IMPL;
  check_time(t, im.T);
  return im.e1.at(t);
}
double AsymCoefficients::e2_at(double t) const {
  const auto& im = DUOGAME_IMPL;
  check_time(t, im.T);
  return im.e1.at(t) - im.z(t);
}
double AsymCoefficients::mu_at(double t) const {
  const auto& im = DUOGAME_IMPL;
  check_time(t, im.T);
  return im.mu(t);
}
double AsymCoefficients::nu_at(double t) const {
  const auto& im = DUOGAME_IMPL;
  check_time(t, im.T);
  return im.nu(t);
}
double AsymCoefficients::delta_at(double t) const {
  const auto& im = DUOGAME_IMPL;
  check_time(t, im.T);
  return im.delta(t);
}
double AsymCoefficients::zeta_at(double t) const {
  const auto& im = DUOGAME_IMPL;
  check_time(t, im.T);
  const double e1 = im.e1.at(t);
  const double e2 = e1 - im.z(t);
  return (im.params.eta * im.params.u0 + 2.0 * im.params.s_lo + im.params.s_hi + e1 +
          e2) /
         (3.0 * im.params.s1());
}

#undef DUOGAME_IMPL

SampledOffsets costate_offsets(const AsymCoefficients& coeffs, int n) {
  if (n < 2) throw std::invalid_argument("costate_offsets: n must be >= 2");
  SampledOffsets out;
  out.times.resize(n);
  out.e1.resize(n);
  out.e2.resize(n);
  const double T = coeffs.T();
  for (int i = 0; i < n; ++i) {
    const double t = T * i / (n - 1);
    out.times[i] = t;
    out.e1[i] = coeffs.e1_at(t);
    out.e2[i] = coeffs.e2_at(t);
  }
  return out;
}

Prices equilibrium_prices(const AsymCoefficients& coeffs, const MarketParams& p,
                          double t, double x1) {
  const double k = coeffs.k_at(t);
  const double z = coeffs.z_at(t);
  const double e1 = coeffs.e1_at(t);
  const double e2 = e1 - z;
  const double du = p.eta * p.u0;
  const double slope = (p.s2() - k) / 3.0;
  return {(du + p.s_hi + 2.0 * p.s_lo - e1 - z) / 3.0 + slope * x1,
          (-du + 2.0 * p.s_hi + p.s_lo + e2 - z) / 3.0 - slope * x1};
}

namespace {

// Forward panel recursion for x' = delta x + zeta, exact at nodes like the e1
// build; exponents are again within-panel differences.
detail::HermiteTable build_x_table(const AsymCoefficients& coeffs, double x1_0,
                                   int n) {
  const double T = coeffs.T();
  const double h = T / n;
  std::vector<double> d_prefix(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    d_prefix[i + 1] =
        d_prefix[i] +
        detail::integrate_panel([&](double t) { return coeffs.delta_at(t); },
                                i * h, (i + 1) * h);
  }
  std::vector<double> x(n + 1, 0.0);
  x[0] = x1_0;
  for (int i = 0; i < n; ++i) {
    const double a = i * h, b = (i + 1) * h;
    const double carry = std::exp(d_prefix[i + 1] - d_prefix[i]);
    const double panel = detail::integrate_panel(
        [&](double tau) {
          const double d =
              detail::integrate_panel([&](double t) { return coeffs.delta_at(t); },
                                      tau, b);
          return std::exp(d) * coeffs.zeta_at(tau);
        },
        a, b);
    x[i + 1] = carry * x[i] + panel;
  }
  detail::HermiteTable table;
  table.t0 = 0.0;
  table.h = h;
  table.y = std::move(x);
  table.dy.resize(n + 1);
  for (int i = 0; i <= n; ++i)
    table.dy[i] = coeffs.delta_at(i * h) * table.y[i] + coeffs.zeta_at(i * h);
  return table;
}

}  // namespace

AsymSolution solve_asymmetric(const MarketParams& params, double x1_0, double T,
                              const AsymSolveOptions& options) {
  validate(params);
  if (!(x1_0 >= 0.0 && x1_0 <= 1.0))
    throw validity_error("x1_0 must lie in [0, 1]");
  if (!(T >= 0.0) || !std::isfinite(T))
    throw std::invalid_argument("T must be finite and >= 0");

  AsymSolution sol;
  sol.trajectory.phase = {Phase::asymmetric, 1};
  if (T == 0.0) {
    sol.coeffs = solve_asym_coefficients(params, 0.0, options.mode, options.offsets_tol);
    sol.x1_T = x1_0;
    return sol;
  }
  if (options.grid_n < 64)
    throw std::invalid_argument("grid_n must be >= 64");

  sol.coeffs =
      solve_asym_coefficients(params, T, options.mode, options.offsets_tol);

  // Start on the offsets grid so zeta stays smooth inside every panel (e1 is
  // a C1 interpolant; a knot in a panel interior would stall the quadrature).
  int n = 256;
  if (const auto nodes = static_cast<int>(sol.coeffs.offsets_grid_size()); nodes > 1)
    n = std::max(n, nodes - 1);
  detail::HermiteTable coarse = build_x_table(sol.coeffs, x1_0, n);
  detail::HermiteTable fine;
  double achieved = 0.0;
  bool converged = false;
  while (n <= (1 << 14)) {
    fine = build_x_table(sol.coeffs, x1_0, 2 * n);
    double diff = 0.0;
    for (int i = 0; i < static_cast<int>(fine.y.size()); ++i)
      diff = std::max(diff, std::abs(coarse.at(i * fine.h) - fine.y[i]));
    achieved = diff;
    sol.x1_T_error = std::abs(coarse.y.back() - fine.y.back());
    coarse = fine;
    n *= 2;
    if (achieved <= options.offsets_tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw quadrature_failure("share-trajectory grid did not reach tolerance",
                             achieved);
  sol.x1_T = fine.y.back();

  // dense evaluators share one state bundle
  struct Bundle {
    AsymCoefficients coeffs;
    MarketParams params;
    detail::HermiteTable x;
  };
  auto bundle = std::make_shared<Bundle>(Bundle{sol.coeffs, params, std::move(fine)});
  auto dense = std::make_shared<DenseEvaluator>();
  dense->x1 = [bundle](double t) { return bundle->x.at(t); };
  dense->x1dot = [bundle](double t) {
    return bundle->coeffs.delta_at(t) * bundle->x.at(t) + bundle->coeffs.zeta_at(t);
  };
  dense->p1 = [bundle](double t) {
    return equilibrium_prices(bundle->coeffs, bundle->params, t, bundle->x.at(t)).p1;
  };
  dense->p2 = [bundle](double t) {
    return equilibrium_prices(bundle->coeffs, bundle->params, t, bundle->x.at(t)).p2;
  };
  sol.trajectory.dense = dense;

  const int m = options.grid_n;
  auto& traj = sol.trajectory;
  traj.times.resize(m);
  traj.p1.resize(m);
  traj.p2.resize(m);
  traj.x1.resize(m);
  traj.lambda1.resize(m);
  traj.lambda2.resize(m);
  traj.valid.resize(m);
  for (int j = 0; j < m; ++j) {
    const double t = T * j / (m - 1);
    const double x = bundle->x.at(t);
    const Prices pr = equilibrium_prices(sol.coeffs, params, t, x);
    const double k = sol.coeffs.k_at(t);
    const double e1 = sol.coeffs.e1_at(t);
    traj.times[j] = t;
    traj.p1[j] = pr.p1;
    traj.p2[j] = pr.p2;
    traj.x1[j] = x;
    traj.lambda1[j] = k * x + e1;
    traj.lambda2[j] = k * x + (e1 - sol.coeffs.z_at(t));
    traj.valid[j] = sample_valid(params, traj.phase, pr.p1, pr.p2) ? 1 : 0;
    if (!traj.valid[j]) ++sol.invalid_samples;
  }
  if (sol.invalid_samples > 0 && options.validity == ValidityAction::error) {
    std::ostringstream msg;
    msg << sol.invalid_samples
        << " trajectory samples left the validity region (first at t = ";
    for (int j = 0; j < m; ++j)
      if (!traj.valid[j]) {
        msg << traj.times[j];
        break;
      }
    msg << ")";
    throw validity_error(msg.str());
  }
  return sol;
}

}  // namespace duogame
