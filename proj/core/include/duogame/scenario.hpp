#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "duogame/asym.hpp"
#include "duogame/market.hpp"
#include "duogame/oracle.hpp"

namespace duogame {

// End-to-end orchestration: a validated configuration drives phase solves,
// revenue aggregation, the auction, and the emission of deterministic CSV /
// SVG / JSON artifacts. Every emitted table embeds the config hash and the
// verification status in '#' comments.

struct ScenarioTolerances {
  double quadrature = 1e-8;        // finite-phase revenue target
  ResidualTolerances residuals;    // per-trajectory verification gate
  double oracle_dt = 1e-3;         // step for the `verify` backward induction
};

// Grids for the revenue-gain table (T x eta x x1_0 cross product).
struct GainGrid {
  std::vector<double> T_values{0.5, 1.0, 1.5, 2.0};
  std::vector<double> eta_values{0.0, 0.25, 0.5, 0.75};
  std::vector<double> x1_0_values{0.5, 0.6};
};

struct ScenarioConfig {
  MarketParams params;                   // u0, eta, rho, s_lo, s_hi
  double x1_0 = 0.5;
  std::vector<double> T_values{0.5, 1.5};
  std::vector<double> gamma_values;      // default 0, 0.05, ..., 1
  double c_A = 0.1, c_B = 0.2, c_BS = 1.0;
  std::size_t grid = 1000;               // trajectory samples per phase
  std::vector<std::string> outputs{"fig3", "fig4", "fig5", "fig6", "report"};
  ScenarioTolerances tolerances;
  RiccatiMode quad_constant_mode = RiccatiMode::matched;
  double sym_window = 12.0;              // sampled view of the symmetric phase
  GainGrid fig4;
  std::vector<double> rho_values{0.25, 0.5, 0.75, 1.0};  // sweep axis only
  bool svg = false;
  bool allow_unverified = false;

  ScenarioConfig();  // fills gamma_values
};

// Throws config_error with a message starting at the offending field path.
void validate(const ScenarioConfig& config);

// JSON ingestion. Missing fields keep their defaults; unknown fields are
// rejected. load_config_file reads the file at path first.
ScenarioConfig load_config(const std::string& json_text);
ScenarioConfig load_config_file(const std::string& path);

// Canonical serialization (sorted keys) and its FNV-1a hash; the hash is the
// `config:` comment in every emitted table.
std::string canonical_config_json(const ScenarioConfig& config);
std::string config_fingerprint(const ScenarioConfig& config);

// The verification gate failed and unverified emission was not requested.
class verification_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunArtifacts {
  std::vector<std::string> written;  // absolute or out_dir-relative paths, emission order
  bool oracle_pass = true;
  std::string report_json;           // run report (written when "report" is requested)
};

// Solves every configured scenario, gates on the residual verification, and
// writes the requested artifacts into out_dir. Throws verification_failure if
// any trajectory fails its residual report and allow_unverified is unset.
RunArtifacts run_scenario(const ScenarioConfig& config, const std::string& out_dir);

enum class SweepAxis { T, eta, gamma, x1_0, rho };

const char* to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& name);

// Cross-product sweep over the configured grids of the given axes, one row
// per cell in lexicographic order of the axis positions. Cell failures land
// in the `error` column and the sweep continues. Writes sweep.csv (and
// sweep.svg when configured) into out_dir.
RunArtifacts sweep(const ScenarioConfig& config, const std::vector<SweepAxis>& axes,
                   const std::string& out_dir);

// Oracle verification pass: residual reports for every configured trajectory
// plus discrete backward-induction cross-checks of the closed-form
// coefficients (step tolerances.oracle_dt, coefficient tolerance scaled with
// the step).
struct CoefficientCheck {
  std::string label;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifySummary {
  bool pass = false;
  std::vector<std::pair<std::string, ResidualReport>> reports;
  std::vector<CoefficientCheck> checks;
  std::string to_json() const;
};

VerifySummary verify_equilibria(const ScenarioConfig& config);

}  // namespace duogame
