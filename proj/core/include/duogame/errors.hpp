#pragma once

#include <stdexcept>
#include <string>

namespace duogame {

// Price gap (or another quantity) left the region where the market formulas
// are valid. The message names the violated bound.
class validity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter set admits no equilibrium of the required form (nonpositive
// discriminant, vanishing denominator, nonnegative share-decay exponent, ...).
class degenerate_parameters_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A quadrature or cached-grid computation could not reach the requested
// tolerance; carries the error estimate that was achieved.
class quadrature_failure : public std::runtime_error {
 public:
  quadrature_failure(const std::string& msg, double achieved)
      : std::runtime_error(msg), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

// Scenario configuration rejected; the message starts with the field path
// (e.g. "params.eta: ...").
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal solver invariant failed (singular stage system, divergence, ...).
class solver_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace duogame
