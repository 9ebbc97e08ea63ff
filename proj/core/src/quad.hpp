#pragma once

// Thin wrapper over Gauss-Kronrod adaptive quadrature, kept out of public
// headers so the installed interface has no Boost dependency.

#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace duogame::detail {

template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12,
                 double* err_out = nullptr) {
  if (a == b) {
    if (err_out) *err_out = 0.0;
    return 0.0;
  }
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      std::forward<F>(f), a, b, 12, tol, &err);
  if (err_out) *err_out = err;
  return v;
}

// Single 15-point application, no subdivision. For smooth integrands over
// spans below one grid panel; the adaptive rule's error estimate stalls on
// rounding noise for spans under ~1e-4 and recurses to full depth there.
template <class F>
double integrate_panel(F&& f, double a, double b) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      std::forward<F>(f), a, b, 0);
}

}  // namespace duogame::detail
