#include "duogame/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "duogame/auction.hpp"
#include "duogame/errors.hpp"
#include "duogame/report.hpp"
#include "duogame/revenue.hpp"
#include "duogame/sym.hpp"

namespace duogame {

using nlohmann::json;

ScenarioConfig::ScenarioConfig() {
  gamma_values.reserve(21);
  for (int i = 0; i <= 20; ++i) {
    gamma_values.push_back(static_cast<double>(i) / 20.0);
  }
}

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw config_error(path + ": " + what);
}

void check_list(const std::vector<double>& v, const std::string& path, double lo,
                double hi, bool open_hi = false) {
  if (v.empty()) bad(path, "must be nonempty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = v[i];
    const bool in_range =
        std::isfinite(x) && x >= lo && (open_hi ? x < hi : x <= hi);
    if (!in_range) {
      std::ostringstream msg;
      msg << "value " << x << " outside [" << lo << ", " << hi
          << (open_hi ? ')' : ']');
      bad(path + "[" + std::to_string(i) + "]", msg.str());
    }
  }
}

const std::initializer_list<const char*> kOutputKinds = {
    "fig3", "fig4", "fig5", "fig6", "trajectories", "report"};

}  // namespace

void validate(const ScenarioConfig& c) {
  try {
    validate(c.params);
  } catch (const validity_error& e) {
    throw config_error(std::string("params.") + e.what());
  }
  if (!(c.x1_0 >= 0.0 && c.x1_0 <= 1.0)) bad("x1_0", "must lie in [0, 1]");
  if (c.T_values.empty()) bad("T_values", "must be nonempty");
  for (std::size_t i = 0; i < c.T_values.size(); ++i) {
    if (!std::isfinite(c.T_values[i]) || c.T_values[i] < 0.0) {
      bad("T_values[" + std::to_string(i) + "]", "must be finite and >= 0");
    }
  }
  check_list(c.gamma_values, "gamma_values", 0.0, 1.0);
  if (!std::isfinite(c.c_A) || c.c_A < 0.0) bad("c_A", "must be finite and >= 0");
  if (!std::isfinite(c.c_B) || c.c_B < 0.0) bad("c_B", "must be finite and >= 0");
  if (!std::isfinite(c.c_BS) || c.c_BS < 0.0) bad("c_BS", "must be finite and >= 0");
  if (c.grid < 64) bad("grid", "must be >= 64");
  if (c.grid > 1000000) bad("grid", "must be <= 1e6");
  if (c.outputs.empty()) bad("outputs", "at least one artifact must be requested");
  for (std::size_t i = 0; i < c.outputs.size(); ++i) {
    const std::string& o = c.outputs[i];
    if (std::find(kOutputKinds.begin(), kOutputKinds.end(), o) == kOutputKinds.end()) {
      bad("outputs[" + std::to_string(i) + "]", "unknown artifact \"" + o + "\"");
    }
  }
  if (!(c.tolerances.quadrature > 0.0)) bad("tolerances.quadrature", "must be > 0");
  if (!(c.tolerances.residuals.foc > 0.0)) bad("tolerances.foc", "must be > 0");
  if (!(c.tolerances.residuals.adjoint > 0.0)) bad("tolerances.adjoint", "must be > 0");
  if (!(c.tolerances.residuals.boundary > 0.0)) bad("tolerances.boundary", "must be > 0");
  if (!(c.tolerances.residuals.ode > 0.0)) bad("tolerances.ode", "must be > 0");
  if (!(c.tolerances.oracle_dt > 0.0)) bad("tolerances.oracle_dt", "must be > 0");
  if (!(c.sym_window > 0.0) || !std::isfinite(c.sym_window)) {
    bad("sym_window", "must be finite and > 0");
  }
  if (c.fig4.T_values.empty()) bad("fig4.T_values", "must be nonempty");
  for (std::size_t i = 0; i < c.fig4.T_values.size(); ++i) {
    if (!std::isfinite(c.fig4.T_values[i]) || c.fig4.T_values[i] < 0.0) {
      bad("fig4.T_values[" + std::to_string(i) + "]", "must be finite and >= 0");
    }
  }
  check_list(c.fig4.eta_values, "fig4.eta_values", 0.0, 1.0, /*open_hi=*/true);
  check_list(c.fig4.x1_0_values, "fig4.x1_0_values", 0.0, 1.0);
  if (c.rho_values.empty()) bad("rho_values", "must be nonempty");
  for (std::size_t i = 0; i < c.rho_values.size(); ++i) {
    if (!std::isfinite(c.rho_values[i]) || !(c.rho_values[i] > 0.0)) {
      bad("rho_values[" + std::to_string(i) + "]", "must be finite and > 0");
    }
  }
}

namespace {

void check_keys(const json& j, const std::string& prefix,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad(prefix.empty() ? "config" : prefix, "expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) bad(prefix + item.key(), "unknown field");
  }
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

std::vector<double> as_number_list(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) bad(path, "expected a boolean");
  return j.get<bool>();
}

}  // namespace

ScenarioConfig load_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }
  ScenarioConfig c;
  check_keys(j, "",
             {"params", "x1_0", "T_values", "gamma_values", "costs", "grid",
              "outputs", "tolerances", "quad_constant_mode", "sym_window", "fig4",
              "rho_values", "svg", "allow_unverified"});
  if (j.contains("params")) {
    const json& p = j["params"];
    check_keys(p, "params.", {"u0", "eta", "rho", "s_lo", "s_hi"});
    if (p.contains("u0")) c.params.u0 = as_number(p["u0"], "params.u0");
    if (p.contains("eta")) c.params.eta = as_number(p["eta"], "params.eta");
    if (p.contains("rho")) c.params.rho = as_number(p["rho"], "params.rho");
    if (p.contains("s_lo")) c.params.s_lo = as_number(p["s_lo"], "params.s_lo");
    if (p.contains("s_hi")) c.params.s_hi = as_number(p["s_hi"], "params.s_hi");
  }
  if (j.contains("x1_0")) c.x1_0 = as_number(j["x1_0"], "x1_0");
  if (j.contains("T_values")) c.T_values = as_number_list(j["T_values"], "T_values");
  if (j.contains("gamma_values")) {
    c.gamma_values = as_number_list(j["gamma_values"], "gamma_values");
  }
  if (j.contains("costs")) {
    const json& k = j["costs"];
    check_keys(k, "costs.", {"c_A", "c_B", "c_BS"});
    if (k.contains("c_A")) c.c_A = as_number(k["c_A"], "costs.c_A");
    if (k.contains("c_B")) c.c_B = as_number(k["c_B"], "costs.c_B");
    if (k.contains("c_BS")) c.c_BS = as_number(k["c_BS"], "costs.c_BS");
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (!g.is_number_unsigned()) bad("grid", "expected a nonnegative integer");
    c.grid = g.get<std::size_t>();
  }
  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    if (!o.is_array()) bad("outputs", "expected an array of strings");
    c.outputs.clear();
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (!o[i].is_string()) bad("outputs[" + std::to_string(i) + "]", "expected a string");
      c.outputs.push_back(o[i].get<std::string>());
    }
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    check_keys(t, "tolerances.",
               {"quadrature", "foc", "adjoint", "boundary", "ode", "oracle_dt"});
    if (t.contains("quadrature")) {
      c.tolerances.quadrature = as_number(t["quadrature"], "tolerances.quadrature");
    }
    if (t.contains("foc")) c.tolerances.residuals.foc = as_number(t["foc"], "tolerances.foc");
    if (t.contains("adjoint")) {
      c.tolerances.residuals.adjoint = as_number(t["adjoint"], "tolerances.adjoint");
    }
    if (t.contains("boundary")) {
      c.tolerances.residuals.boundary = as_number(t["boundary"], "tolerances.boundary");
    }
    if (t.contains("ode")) c.tolerances.residuals.ode = as_number(t["ode"], "tolerances.ode");
    if (t.contains("oracle_dt")) {
      c.tolerances.oracle_dt = as_number(t["oracle_dt"], "tolerances.oracle_dt");
    }
  }
  if (j.contains("quad_constant_mode")) {
    const json& m = j["quad_constant_mode"];
    if (!m.is_string()) bad("quad_constant_mode", "expected a string");
    c.quad_constant_mode = riccati_mode_from_string(m.get<std::string>());
  }
  if (j.contains("sym_window")) c.sym_window = as_number(j["sym_window"], "sym_window");
  if (j.contains("fig4")) {
    const json& f = j["fig4"];
    check_keys(f, "fig4.", {"T_values", "eta_values", "x1_0_values"});
    if (f.contains("T_values")) {
      c.fig4.T_values = as_number_list(f["T_values"], "fig4.T_values");
    }
    if (f.contains("eta_values")) {
      c.fig4.eta_values = as_number_list(f["eta_values"], "fig4.eta_values");
    }
    if (f.contains("x1_0_values")) {
      c.fig4.x1_0_values = as_number_list(f["x1_0_values"], "fig4.x1_0_values");
    }
  }
  if (j.contains("rho_values")) c.rho_values = as_number_list(j["rho_values"], "rho_values");
  if (j.contains("svg")) c.svg = as_bool(j["svg"], "svg");
  if (j.contains("allow_unverified")) {
    c.allow_unverified = as_bool(j["allow_unverified"], "allow_unverified");
  }
  validate(c);
  return c;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("config: cannot open file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str());
}

std::string canonical_config_json(const ScenarioConfig& c) {
  json j;
  j["params"] = {{"u0", c.params.u0},
                 {"eta", c.params.eta},
                 {"rho", c.params.rho},
                 {"s_lo", c.params.s_lo},
                 {"s_hi", c.params.s_hi}};
  j["x1_0"] = c.x1_0;
  j["T_values"] = c.T_values;
  j["gamma_values"] = c.gamma_values;
  j["costs"] = {{"c_A", c.c_A}, {"c_B", c.c_B}, {"c_BS", c.c_BS}};
  j["grid"] = c.grid;
  j["outputs"] = c.outputs;
  j["tolerances"] = {{"quadrature", c.tolerances.quadrature},
                     {"foc", c.tolerances.residuals.foc},
                     {"adjoint", c.tolerances.residuals.adjoint},
                     {"boundary", c.tolerances.residuals.boundary},
                     {"ode", c.tolerances.residuals.ode},
                     {"oracle_dt", c.tolerances.oracle_dt}};
  j["quad_constant_mode"] = to_string(c.quad_constant_mode);
  j["sym_window"] = c.sym_window;
  j["fig4"] = {{"T_values", c.fig4.T_values},
               {"eta_values", c.fig4.eta_values},
               {"x1_0_values", c.fig4.x1_0_values}};
  j["rho_values"] = c.rho_values;
  j["svg"] = c.svg;
  j["allow_unverified"] = c.allow_unverified;
  return j.dump();
}

std::string config_fingerprint(const ScenarioConfig& c) {
  return to_hex(fnv1a64(canonical_config_json(c)));
}

namespace {

AsymSolveOptions solve_options(const ScenarioConfig& c) {
  AsymSolveOptions opt;
  opt.grid_n = static_cast<int>(c.grid);
  opt.mode = c.quad_constant_mode;
  return opt;
}

struct PhasePair {
  double T = 0.0;
  AsymSolution asym;
  PhaseTrajectory sym;
  ResidualReport res_asym, res_sym;
  bool pass() const { return res_asym.pass && res_sym.pass; }
};

PhasePair solve_phase_pair(const ScenarioConfig& c, double T) {
  PhasePair pp;
  pp.T = T;
  pp.asym = solve_asymmetric(c.params, c.x1_0, T, solve_options(c));
  const SymCoefficients sc = solve_symmetric_coeffs(c.params);
  pp.sym = sample_symmetric_phase(c.params, sc, T, pp.asym.x1_T, c.sym_window, c.grid);
  if (!pp.asym.trajectory.times.empty()) {
    const double gap = std::abs(pp.asym.trajectory.x1.back() - pp.sym.x1.front());
    if (!(gap <= 1e-9)) {
      std::ostringstream msg;
      msg << "phase continuity violated at T=" << T << ": share gap " << gap;
      throw solver_error(msg.str());
    }
  }
  pp.res_asym = residual_report(pp.asym.trajectory, c.params, c.tolerances.residuals);
  pp.res_sym = residual_report(pp.sym, c.params, c.tolerances.residuals);
  return pp;
}

std::vector<double> unique_in_order(const std::vector<double>& v) {
  std::vector<double> out;
  for (double x : v) {
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

std::vector<std::string> table_comments(const ScenarioConfig& c,
                                        const std::string& table,
                                        bool oracle_pass) {
  return {"schema: duogame-csv v1", "table: " + table,
          "config: " + config_fingerprint(c),
          "quad_constant_mode: " + std::string(to_string(c.quad_constant_mode)),
          std::string("oracle: ") + (oracle_pass ? "PASS" : "FAIL")};
}

bool wants(const ScenarioConfig& c, const char* kind) {
  return std::find(c.outputs.begin(), c.outputs.end(), kind) != c.outputs.end();
}

json residuals_json(const ResidualReport& r) {
  return {{"foc", r.foc},       {"adjoint", r.adjoint}, {"boundary", r.boundary},
          {"ode", r.ode},       {"pass", r.pass},       {"phase", r.phase_label}};
}

AuctionInputs auction_inputs(const ScenarioConfig& c, const RevenueReport& rep,
                             double gamma) {
  AuctionInputs in;
  in.r1_A = rep.r_total_A_to_1.first;
  in.r2_B = rep.r_total_A_to_1.second;
  in.r1_B = rep.r_total_A_to_2.first;
  in.r2_A = rep.r_total_A_to_2.second;
  in.c_A = c.c_A;
  in.c_B = c.c_B;
  in.c_BS = c.c_BS;
  in.gamma = gamma;
  return in;
}

}  // namespace

RunArtifacts run_scenario(const ScenarioConfig& config, const std::string& out_dir) {
  validate(config);
  std::filesystem::create_directories(out_dir);

  const std::vector<double> Ts = unique_in_order(config.T_values);
  std::vector<PhasePair> phases;
  phases.reserve(Ts.size());
  for (double T : Ts) phases.push_back(solve_phase_pair(config, T));
  const bool oracle_pass =
      std::all_of(phases.begin(), phases.end(), [](const PhasePair& p) { return p.pass(); });

  if (!oracle_pass && !config.allow_unverified) {
    std::ostringstream msg;
    msg << "equilibrium verification failed:";
    for (const PhasePair& p : phases) {
      if (!p.res_asym.pass) {
        msg << " [T=" << p.T << " asymmetric foc=" << p.res_asym.foc
            << " adjoint=" << p.res_asym.adjoint << " boundary=" << p.res_asym.boundary
            << " ode=" << p.res_asym.ode << "]";
      }
      if (!p.res_sym.pass) {
        msg << " [T=" << p.T << " symmetric foc=" << p.res_sym.foc
            << " adjoint=" << p.res_sym.adjoint << " boundary=" << p.res_sym.boundary
            << " ode=" << p.res_sym.ode << "]";
      }
    }
    msg << "; pass allow_unverified to emit anyway";
    throw verification_failure(msg.str());
  }

  RunArtifacts out;
  out.oracle_pass = oracle_pass;

  auto emit = [&](const std::string& name, const std::string& content) {
    const std::string path = (std::filesystem::path(out_dir) / name).string();
    write_text_file(path, content);
    out.written.push_back(path);
  };

  std::map<double, RevenueReport> revenue_cache;
  auto revenue_for = [&](double T) -> const RevenueReport& {
    auto it = revenue_cache.find(T);
    if (it == revenue_cache.end()) {
      it = revenue_cache
               .emplace(T, full_revenue_report(config.params, config.x1_0, T,
                                               solve_options(config)))
               .first;
    }
    return it->second;
  };

  if (wants(config, "fig3")) {
    for (const PhasePair& p : phases) {
      CsvTable t;
      t.comments = table_comments(config, "fig3", oracle_pass);
      t.comments.push_back("T: " + format_double(p.T));
      t.header = {"t", "p1", "p2", "x1", "x2", "phase"};
      auto push_rows = [&t](const PhaseTrajectory& traj, const char* label) {
        for (std::size_t i = 0; i < traj.size(); ++i) {
          t.rows.push_back({format_double(traj.times[i]), format_double(traj.p1[i]),
                            format_double(traj.p2[i]), format_double(traj.x1[i]),
                            format_double(1.0 - traj.x1[i]), label});
        }
      };
      push_rows(p.asym.trajectory, "asymmetric");
      push_rows(p.sym, "symmetric");
      const std::string stem = "fig3_T" + format_double(p.T);
      emit(stem + ".csv", to_csv(t));
      if (config.svg) {
        std::vector<SvgSeries> series(4);
        series[0].label = "p1";
        series[1].label = "p2";
        series[2].label = "x1";
        series[3].label = "x2";
        auto push_points = [&series](const PhaseTrajectory& traj) {
          for (std::size_t i = 0; i < traj.size(); ++i) {
            series[0].x.push_back(traj.times[i]);
            series[0].y.push_back(traj.p1[i]);
            series[1].x.push_back(traj.times[i]);
            series[1].y.push_back(traj.p2[i]);
            series[2].x.push_back(traj.times[i]);
            series[2].y.push_back(traj.x1[i]);
            series[3].x.push_back(traj.times[i]);
            series[3].y.push_back(1.0 - traj.x1[i]);
          }
        };
        push_points(p.asym.trajectory);
        push_points(p.sym);
        emit(stem + ".svg",
             render_svg_chart("prices and shares, T=" + format_double(p.T), "t",
                              "value", series));
      }
    }
  }

  if (wants(config, "fig4")) {
    CsvTable t;
    t.comments = table_comments(config, "fig4", oracle_pass);
    t.header = {"T", "eta", "x1_0", "gain"};
    std::vector<SvgSeries> series;
    for (double T : config.fig4.T_values) {
      for (double eta : config.fig4.eta_values) {
        for (double x0 : config.fig4.x1_0_values) {
          MarketParams p = config.params;
          p.eta = eta;
          const OrientationRevenues o =
              aggregate_revenues(p, x0, T, 1, solve_options(config));
          if (!(o.total_2 > 0.0)) {
            throw degenerate_parameters_error(
                "revenue gain denominator (B holder aggregate) must be > 0");
          }
          const double gain = o.total_1 / o.total_2;
          t.rows.push_back({format_double(T), format_double(eta), format_double(x0),
                            format_double(gain)});
          if (config.svg) {
            const std::string label =
                "eta=" + format_double(eta) + " x1_0=" + format_double(x0);
            auto it = std::find_if(series.begin(), series.end(),
                                   [&](const SvgSeries& s) { return s.label == label; });
            if (it == series.end()) {
              series.push_back({label, {}, {}});
              it = series.end() - 1;
            }
            it->x.push_back(T);
            it->y.push_back(gain);
          }
        }
      }
    }
    emit("fig4.csv", to_csv(t));
    if (config.svg) {
      emit("fig4.svg", render_svg_chart("revenue gain", "T", "gain", series));
    }
  }

  if (wants(config, "fig5")) {
    CsvTable t;
    t.comments = table_comments(config, "fig5", oracle_pass);
    t.header = {"gamma", "T", "b1", "b2"};
    std::vector<SvgSeries> series;
    for (double gamma : config.gamma_values) {
      for (double T : Ts) {
        const BidPair bids = equilibrium_bids(auction_inputs(config, revenue_for(T), gamma));
        t.rows.push_back({format_double(gamma), format_double(T),
                          format_double(bids.b1), format_double(bids.b2)});
        if (config.svg) {
          for (int op = 0; op < 2; ++op) {
            const std::string label =
                "b" + std::to_string(op + 1) + " T=" + format_double(T);
            auto it = std::find_if(series.begin(), series.end(),
                                   [&](const SvgSeries& s) { return s.label == label; });
            if (it == series.end()) {
              series.push_back({label, {}, {}});
              it = series.end() - 1;
            }
            it->x.push_back(gamma);
            it->y.push_back(op == 0 ? bids.b1 : bids.b2);
          }
        }
      }
    }
    emit("fig5.csv", to_csv(t));
    if (config.svg) {
      emit("fig5.svg", render_svg_chart("equilibrium bids", "gamma", "bid", series));
    }
  }

  if (wants(config, "fig6")) {
    CsvTable t;
    t.comments = table_comments(config, "fig6", oracle_pass);
    t.header = {"gamma", "T", "profit1", "profit2", "winner"};
    std::vector<SvgSeries> series;
    for (double gamma : config.gamma_values) {
      for (double T : Ts) {
        const AuctionOutcome ao = run_auction(auction_inputs(config, revenue_for(T), gamma));
        t.rows.push_back({format_double(gamma), format_double(T),
                          format_double(ao.realized_profit_1),
                          format_double(ao.realized_profit_2),
                          std::to_string(ao.winner)});
        if (config.svg) {
          for (int op = 0; op < 2; ++op) {
            const std::string label =
                "profit" + std::to_string(op + 1) + " T=" + format_double(T);
            auto it = std::find_if(series.begin(), series.end(),
                                   [&](const SvgSeries& s) { return s.label == label; });
            if (it == series.end()) {
              series.push_back({label, {}, {}});
              it = series.end() - 1;
            }
            it->x.push_back(gamma);
            it->y.push_back(op == 0 ? ao.realized_profit_1 : ao.realized_profit_2);
          }
        }
      }
    }
    emit("fig6.csv", to_csv(t));
    if (config.svg) {
      emit("fig6.svg",
           render_svg_chart("realized profits", "gamma", "profit", series));
    }
  }

  if (wants(config, "trajectories")) {
    for (const PhasePair& p : phases) {
      CsvTable t;
      t.comments = table_comments(config, "trajectories", oracle_pass);
      t.comments.push_back("T: " + format_double(p.T));
      t.header = {"t", "p1", "p2", "x1", "lambda1", "lambda2", "valid", "phase"};
      auto push_rows = [&t](const PhaseTrajectory& traj, const char* label) {
        for (std::size_t i = 0; i < traj.size(); ++i) {
          t.rows.push_back({format_double(traj.times[i]), format_double(traj.p1[i]),
                            format_double(traj.p2[i]), format_double(traj.x1[i]),
                            format_double(traj.lambda1[i]),
                            format_double(traj.lambda2[i]),
                            traj.valid[i] ? "1" : "0", label});
        }
      };
      push_rows(p.asym.trajectory, "asymmetric");
      push_rows(p.sym, "symmetric");
      emit("trajectories_T" + format_double(p.T) + ".csv", to_csv(t));
    }
  }

  {
    json rep;
    rep["schema"] = "duogame-report v1";
    rep["config"] = config_fingerprint(config);
    rep["quad_constant_mode"] = to_string(config.quad_constant_mode);
    json traj_reports = json::array();
    for (const PhasePair& p : phases) {
      traj_reports.push_back({{"T", p.T},
                              {"asymmetric", residuals_json(p.res_asym)},
                              {"symmetric", residuals_json(p.res_sym)},
                              {"x1_T", p.asym.x1_T},
                              {"x1_T_error", p.asym.x1_T_error},
                              {"invalid_samples", p.asym.invalid_samples}});
    }
    rep["oracle"] = {{"pass", oracle_pass}, {"trajectories", traj_reports}};
    if (!revenue_cache.empty()) {
      json revs = json::array();
      for (const auto& [T, r] : revenue_cache) {
        revs.push_back({{"T", T},
                        {"r_ap", {r.r_ap.first, r.r_ap.second}},
                        {"r_sp", {r.r_sp.first, r.r_sp.second}},
                        {"r_total_A_to_1", {r.r_total_A_to_1.first, r.r_total_A_to_1.second}},
                        {"r_total_A_to_2", {r.r_total_A_to_2.first, r.r_total_A_to_2.second}},
                        {"gain", r.gain},
                        {"quadrature_error", r.quadrature_error}});
      }
      rep["revenues"] = revs;
    }
    json files = json::array();
    for (const std::string& w : out.written)
      files.push_back(std::filesystem::path(w).filename().string());
    rep["artifacts"] = files;
    out.report_json = rep.dump(2) + "\n";
    if (wants(config, "report")) emit("report.json", out.report_json);
  }

  return out;
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::T: return "T";
    case SweepAxis::eta: return "eta";
    case SweepAxis::gamma: return "gamma";
    case SweepAxis::x1_0: return "x1_0";
    case SweepAxis::rho: return "rho";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "T") return SweepAxis::T;
  if (name == "eta") return SweepAxis::eta;
  if (name == "gamma") return SweepAxis::gamma;
  if (name == "x1_0") return SweepAxis::x1_0;
  if (name == "rho") return SweepAxis::rho;
  throw config_error("axes: unknown axis \"" + name + "\"");
}

RunArtifacts sweep(const ScenarioConfig& config, const std::vector<SweepAxis>& axes,
                   const std::string& out_dir) {
  validate(config);
  if (axes.empty()) throw config_error("axes: must be nonempty");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    for (std::size_t k = i + 1; k < axes.size(); ++k) {
      if (axes[i] == axes[k]) {
        throw config_error(std::string("axes: duplicate axis \"") +
                           to_string(axes[i]) + "\"");
      }
    }
  }
  std::filesystem::create_directories(out_dir);

  std::vector<std::vector<double>> grids;
  for (SweepAxis a : axes) {
    switch (a) {
      case SweepAxis::T: grids.push_back(config.T_values); break;
      case SweepAxis::eta: grids.push_back(config.fig4.eta_values); break;
      case SweepAxis::gamma: grids.push_back(config.gamma_values); break;
      case SweepAxis::x1_0: grids.push_back(config.fig4.x1_0_values); break;
      case SweepAxis::rho: grids.push_back(config.rho_values); break;
    }
  }

  CsvTable t;
  t.comments = {"schema: duogame-csv v1", "table: sweep",
                "config: " + config_fingerprint(config),
                "quad_constant_mode: " + std::string(to_string(config.quad_constant_mode)),
                "oracle: per-cell, see error column"};
  std::string axes_comment = "axes:";
  for (SweepAxis a : axes) axes_comment += std::string(" ") + to_string(a);
  t.comments.push_back(axes_comment);
  for (SweepAxis a : axes) t.header.push_back(to_string(a));
  const std::vector<std::string> value_cols = {"gain", "b1",     "b2",    "profit1",
                                               "profit2", "winner", "x1_T", "error"};
  t.header.insert(t.header.end(), value_cols.begin(), value_cols.end());

  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    MarketParams params = config.params;
    double T = config.T_values.front();
    double gamma = config.gamma_values.front();
    double x1_0 = config.x1_0;
    std::vector<std::string> row;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const double v = grids[a][idx[a]];
      row.push_back(format_double(v));
      switch (axes[a]) {
        case SweepAxis::T: T = v; break;
        case SweepAxis::eta: params.eta = v; break;
        case SweepAxis::gamma: gamma = v; break;
        case SweepAxis::x1_0: x1_0 = v; break;
        case SweepAxis::rho: params.rho = v; break;
      }
    }
    try {
      const AsymSolveOptions opt = solve_options(config);
      const OrientationRevenues o1 = aggregate_revenues(params, x1_0, T, 1, opt);
      const OrientationRevenues o2 = aggregate_revenues(params, x1_0, T, 2, opt);
      RevenueReport rep;
      rep.r_total_A_to_1 = {o1.total_1, o1.total_2};
      rep.r_total_A_to_2 = {o2.total_1, o2.total_2};
      const double gain = revenue_gain(rep);
      AuctionInputs in = auction_inputs(config, rep, gamma);
      const AuctionOutcome ao = run_auction(in);
      row.insert(row.end(),
                 {format_double(gain), format_double(ao.bids.b1),
                  format_double(ao.bids.b2), format_double(ao.realized_profit_1),
                  format_double(ao.realized_profit_2), std::to_string(ao.winner),
                  format_double(o1.x1_T), ""});
    } catch (const std::exception& e) {
      row.insert(row.end(), {"", "", "", "", "", "", "", e.what()});
    }
    t.rows.push_back(std::move(row));

    bool done = true;
    for (std::size_t a = axes.size(); a-- > 0;) {
      if (++idx[a] < grids[a].size()) {
        done = false;
        break;
      }
      idx[a] = 0;
    }
    if (done) break;
  }

  RunArtifacts out;
  const std::string path = (std::filesystem::path(out_dir) / "sweep.csv").string();
  write_text_file(path, to_csv(t));
  out.written.push_back(path);
  return out;
}

std::string VerifySummary::to_json() const {
  json j;
  j["pass"] = pass;
  json reps = json::array();
  for (const auto& [label, rep] : reports) {
    json r = residuals_json(rep);
    r["label"] = label;
    r["tol"] = {{"foc", rep.tol.foc},
                {"adjoint", rep.tol.adjoint},
                {"boundary", rep.tol.boundary},
                {"ode", rep.tol.ode}};
    reps.push_back(r);
  }
  j["residuals"] = reps;
  json chks = json::array();
  for (const CoefficientCheck& c : checks) {
    chks.push_back({{"label", c.label},
                    {"error", c.error},
                    {"tolerance", c.tolerance},
                    {"pass", c.pass}});
  }
  j["coefficient_checks"] = chks;
  return j.dump(2) + "\n";
}

VerifySummary verify_equilibria(const ScenarioConfig& config) {
  validate(config);
  VerifySummary sum;
  sum.pass = true;

  const std::vector<double> Ts = unique_in_order(config.T_values);
  const SymCoefficients sym = solve_symmetric_coeffs(config.params);
  std::vector<PhasePair> phases;
  for (double T : Ts) {
    phases.push_back(solve_phase_pair(config, T));
    const PhasePair& p = phases.back();
    sum.reports.emplace_back("T=" + format_double(T) + " asymmetric", p.res_asym);
    sum.reports.emplace_back("T=" + format_double(T) + " symmetric", p.res_sym);
    sum.pass = sum.pass && p.pass();
  }

  const double dt = config.tolerances.oracle_dt;

  // stationary costate fields: the discrete fixed point solves the stationary
  // conditions exactly, so the tolerance does not scale with dt
  {
    DiscreteGameSetup setup;
    setup.params = config.params;
    setup.phase = {Phase::symmetric, 1};
    setup.dt = dt;
    const OracleRun run = backward_induction(setup);
    const OracleNode& nd = run.nodes.front();
    CoefficientCheck chk;
    chk.label = "symmetric costate coefficients";
    chk.error = std::max(
        std::max(std::abs(nd.k1 - sym.k), std::abs(nd.k2 - sym.k)),
        std::max(std::abs(nd.e1 - sym.e1), std::abs(nd.e2 - sym.e2)));
    chk.tolerance = 1e-6;
    chk.pass = chk.error <= chk.tolerance;
    sum.checks.push_back(chk);
    sum.pass = sum.pass && chk.pass;
  }

  // finite-horizon coefficients at t = 0: explicit Euler carries an O(dt) bias
  for (const PhasePair& p : phases) {
    if (!(p.T > 0.0)) continue;
    if (std::lround(p.T / dt) < 64) continue;  // oracle step restriction
    DiscreteGameSetup setup;
    setup.params = config.params;
    setup.phase = {Phase::asymmetric, 1};
    setup.dt = dt;
    setup.horizon = p.T;
    const OracleRun run = backward_induction(setup);
    const OracleNode& nd = run.nodes.front();
    const double k0 = p.asym.coeffs.k_at(0.0);
    const double e10 = p.asym.coeffs.e1_at(0.0);
    const double e20 = p.asym.coeffs.e2_at(0.0);
    CoefficientCheck chk;
    chk.label = "T=" + format_double(p.T) + " costate coefficients at t=0";
    chk.error = std::max(std::max(std::abs(nd.k1 - k0), std::abs(nd.k2 - k0)),
                         std::max(std::abs(nd.e1 - e10), std::abs(nd.e2 - e20)));
    chk.tolerance = std::max(1e-3, 15.0 * dt);
    chk.pass = chk.error <= chk.tolerance;
    sum.checks.push_back(chk);
    sum.pass = sum.pass && chk.pass;
  }

  return sum;
}

}  // namespace duogame
