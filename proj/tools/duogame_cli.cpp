// Command-line front end for the duogame library. Subcommands either print a
// JSON summary to stdout (phase, revenues, auction, verify) or write the
// deterministic artifact set into --out (figure, sweep, run).
//
// Exit codes: 0 success, 1 invalid configuration or arguments, 2 solver or
// quadrature failure, 3 verification gate failed.

#include <cstddef>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <duogame/asym.hpp>
#include <duogame/auction.hpp>
#include <duogame/errors.hpp>
#include <duogame/market.hpp>
#include <duogame/revenue.hpp>
#include <duogame/scenario.hpp>
#include <duogame/sym.hpp>

namespace {

using nlohmann::ordered_json;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  long long grid = -1;    // -1: keep the configured value
  std::string quad_mode;  // empty: keep the configured value
  bool allow_unverified = false;
  bool svg = false;
};

void attach_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "JSON configuration file");
  cmd->add_option("--out", opt.out_dir, "output directory for written artifacts")
      ->capture_default_str();
  cmd->add_option("--grid", opt.grid, "trajectory samples per phase (overrides config)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--quad-mode", opt.quad_mode,
                  "quadratic constant mode: matched or printed")
      ->check(CLI::IsMember({"matched", "printed"}));
  cmd->add_flag("--allow-unverified", opt.allow_unverified,
                "emit artifacts even when the verification gate fails");
  cmd->add_flag("--svg", opt.svg, "render SVG charts next to the CSV tables");
}

duogame::ScenarioConfig effective_config(const CommonOptions& opt) {
  duogame::ScenarioConfig config;
  if (!opt.config_path.empty()) config = duogame::load_config_file(opt.config_path);
  if (opt.grid >= 0) config.grid = static_cast<std::size_t>(opt.grid);
  if (!opt.quad_mode.empty())
    config.quad_constant_mode = duogame::riccati_mode_from_string(opt.quad_mode);
  if (opt.allow_unverified) config.allow_unverified = true;
  if (opt.svg) config.svg = true;
  duogame::validate(config);
  return config;
}

duogame::AsymSolveOptions solve_options(const duogame::ScenarioConfig& config) {
  duogame::AsymSolveOptions options;
  options.grid_n = static_cast<int>(config.grid);
  options.mode = config.quad_constant_mode;
  return options;
}

int cmd_phase(const duogame::ScenarioConfig& config) {
  const auto options = solve_options(config);
  ordered_json doc;
  doc["schema"] = "duogame-phase v1";
  doc["config"] = duogame::config_fingerprint(config);
  doc["quad_constant_mode"] = duogame::to_string(config.quad_constant_mode);
  doc["x1_0"] = config.x1_0;

  const auto sym = duogame::solve_symmetric_coeffs(config.params);
  const auto sym_prices = duogame::equilibrium_prices_sym(sym, config.params, 0.5);
  doc["symmetric"] = {
      {"k", sym.k},
      {"e1", sym.e1},
      {"e2", sym.e2},
      {"decay", sym.decay},
      {"prices_at_half", {{"p1", sym_prices.p1}, {"p2", sym_prices.p2}}},
  };

  doc["phases"] = ordered_json::array();
  for (double T : config.T_values) {
    const auto sol = duogame::solve_asymmetric(config.params, config.x1_0, T, options);
    const auto p0 =
        duogame::equilibrium_prices(sol.coeffs, config.params, 0.0, config.x1_0);
    const auto pT = duogame::equilibrium_prices(sol.coeffs, config.params, T, sol.x1_T);
    ordered_json entry;
    entry["T"] = T;
    entry["alpha1"] = sol.coeffs.alpha1();
    entry["alpha2"] = sol.coeffs.alpha2();
    entry["k0"] = sol.coeffs.k_at(0.0);
    entry["z0"] = sol.coeffs.z_at(0.0);
    entry["e1_0"] = sol.coeffs.e1_at(0.0);
    entry["e2_0"] = sol.coeffs.e2_at(0.0);
    entry["x1_T"] = sol.x1_T;
    entry["x1_T_error"] = sol.x1_T_error;
    entry["invalid_samples"] = sol.invalid_samples;
    entry["prices_initial"] = {{"p1", p0.p1}, {"p2", p0.p2}};
    entry["prices_terminal"] = {{"p1", pT.p1}, {"p2", pT.p2}};
    doc["phases"].push_back(std::move(entry));
  }
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_revenues(const duogame::ScenarioConfig& config) {
  const auto options = solve_options(config);
  ordered_json doc;
  doc["schema"] = "duogame-revenues v1";
  doc["config"] = duogame::config_fingerprint(config);
  doc["x1_0"] = config.x1_0;
  doc["revenues"] = ordered_json::array();
  for (double T : config.T_values) {
    const auto report = duogame::full_revenue_report(config.params, config.x1_0, T, options);
    ordered_json entry;
    entry["T"] = T;
    entry["finite_phase"] = {{"op1", report.r_ap.first}, {"op2", report.r_ap.second}};
    entry["symmetric_phase"] = {{"op1", report.r_sp.first}, {"op2", report.r_sp.second}};
    entry["total_A_to_1"] = {{"op1", report.r_total_A_to_1.first},
                             {"op2", report.r_total_A_to_1.second}};
    entry["total_A_to_2"] = {{"op1", report.r_total_A_to_2.first},
                             {"op2", report.r_total_A_to_2.second}};
    entry["gain"] = report.gain;
    entry["quadrature_error"] = report.quadrature_error;
    doc["revenues"].push_back(std::move(entry));
  }
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_auction(const duogame::ScenarioConfig& config) {
  const auto options = solve_options(config);
  ordered_json doc;
  doc["schema"] = "duogame-auction v1";
  doc["config"] = duogame::config_fingerprint(config);
  doc["auctions"] = ordered_json::array();
  for (double T : config.T_values) {
    const auto report = duogame::full_revenue_report(config.params, config.x1_0, T, options);
    duogame::AuctionInputs in;
    in.r1_A = report.r_total_A_to_1.first;
    in.r2_B = report.r_total_A_to_1.second;
    in.r1_B = report.r_total_A_to_2.first;
    in.r2_A = report.r_total_A_to_2.second;
    in.c_A = config.c_A;
    in.c_B = config.c_B;
    in.c_BS = config.c_BS;

    ordered_json entry;
    entry["T"] = T;
    entry["inputs"] = {{"r1_A", in.r1_A}, {"r2_A", in.r2_A}, {"r1_B", in.r1_B},
                       {"r2_B", in.r2_B}, {"c_A", in.c_A},   {"c_B", in.c_B},
                       {"c_BS", in.c_BS}};
    entry["outcomes"] = ordered_json::array();
    for (double gamma : config.gamma_values) {
      in.gamma = gamma;
      const auto outcome = duogame::run_auction(in);
      ordered_json row;
      row["gamma"] = gamma;
      row["b1"] = outcome.bids.b1;
      row["b2"] = outcome.bids.b2;
      row["floored_1"] = outcome.bids.floored_1;
      row["floored_2"] = outcome.bids.floored_2;
      row["winner"] = outcome.winner;
      row["tie"] = outcome.tie;
      if (outcome.tie) row["tie_rule"] = outcome.tie_rule_applied;
      row["profit_1"] = outcome.realized_profit_1;
      row["profit_2"] = outcome.realized_profit_2;
      entry["outcomes"].push_back(std::move(row));
    }
    doc["auctions"].push_back(std::move(entry));
  }
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int emit_artifacts(const duogame::RunArtifacts& artifacts) {
  for (const auto& path : artifacts.written) std::cout << path << "\n";
  if (!artifacts.oracle_pass)
    std::cerr << "warning: verification failed; tables are marked 'oracle: FAIL'\n";
  return 0;
}

int cmd_figure(duogame::ScenarioConfig config, const std::string& name,
               const std::string& out_dir) {
  config.outputs = {name};
  return emit_artifacts(duogame::run_scenario(config, out_dir));
}

int cmd_run(const duogame::ScenarioConfig& config, const std::string& out_dir) {
  return emit_artifacts(duogame::run_scenario(config, out_dir));
}

int cmd_sweep(const duogame::ScenarioConfig& config, const std::string& axes_arg,
              const std::string& out_dir) {
  std::vector<duogame::SweepAxis> axes;
  std::istringstream stream(axes_arg);
  std::string token;
  while (std::getline(stream, token, ',')) {
    const auto b = token.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = token.find_last_not_of(" \t");
    axes.push_back(duogame::sweep_axis_from_string(token.substr(b, e - b + 1)));
  }
  return emit_artifacts(duogame::sweep(config, axes, out_dir));
}

int cmd_verify(const duogame::ScenarioConfig& config) {
  const auto summary = duogame::verify_equilibria(config);
  std::cout << summary.to_json();
  if (!summary.pass && !config.allow_unverified) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed-loop duopoly pricing: equilibria, revenues, spectrum auction"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string figure_name;
  std::string axes_arg = "T";

  auto* phase_cmd =
      app.add_subcommand("phase", "solve both phases and print the coefficient summary");
  attach_common(phase_cmd, opt);

  auto* revenues_cmd =
      app.add_subcommand("revenues", "discounted revenue aggregates for both orientations");
  attach_common(revenues_cmd, opt);

  auto* auction_cmd =
      app.add_subcommand("auction", "equilibrium bids and outcomes over the spite grid");
  attach_common(auction_cmd, opt);

  auto* figure_cmd = app.add_subcommand("figure", "emit one figure's data table");
  figure_cmd->add_option("name", figure_name, "figure to emit")
      ->required()
      ->check(CLI::IsMember({"fig3", "fig4", "fig5", "fig6"}));
  attach_common(figure_cmd, opt);

  auto* sweep_cmd =
      app.add_subcommand("sweep", "cross-product sweep over the configured grids");
  sweep_cmd->add_option("--axes", axes_arg,
                        "comma-separated sweep axes (T, eta, gamma, x1_0, rho)")
      ->capture_default_str();
  attach_common(sweep_cmd, opt);

  auto* verify_cmd =
      app.add_subcommand("verify", "residual reports and discrete cross-checks");
  attach_common(verify_cmd, opt);

  auto* run_cmd = app.add_subcommand("run", "emit every configured artifact");
  attach_common(run_cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto config = effective_config(opt);
    if (phase_cmd->parsed()) return cmd_phase(config);
    if (revenues_cmd->parsed()) return cmd_revenues(config);
    if (auction_cmd->parsed()) return cmd_auction(config);
    if (figure_cmd->parsed()) return cmd_figure(config, figure_name, opt.out_dir);
    if (sweep_cmd->parsed()) return cmd_sweep(config, axes_arg, opt.out_dir);
    if (verify_cmd->parsed()) return cmd_verify(config);
    if (run_cmd->parsed()) return cmd_run(config, opt.out_dir);
    return 1;
  } catch (const duogame::verification_failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const duogame::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const duogame::validity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const duogame::quadrature_failure& e) {
    std::cerr << "error: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return 2;
  } catch (const duogame::degenerate_parameters_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const duogame::solver_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
