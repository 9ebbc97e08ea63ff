#include <doctest.h>

#include <duogame/errors.hpp>
#include <duogame/revenue.hpp>
#include <duogame/scenario.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace duogame;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct ParsedCsv {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Enough of a parser for the unquoted numeric tables emitted here.
ParsedCsv parse_csv(const std::string& text) {
  ParsedCsv out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      out.comments.push_back(line.substr(2));
      continue;
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (out.header.empty())
      out.header = fields;
    else
      out.rows.push_back(fields);
  }
  return out;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() / ("duogame_test_" + tag);
    std::filesystem::remove_all(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

int column(const ParsedCsv& csv, const std::string& name) {
  for (std::size_t i = 0; i < csv.header.size(); ++i)
    if (csv.header[i] == name) return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST_CASE("the default configuration validates") {
  ScenarioConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  CHECK(cfg.gamma_values.size() == 21);
  CHECK(cfg.gamma_values.front() == 0.0);
  CHECK(cfg.gamma_values.back() == 1.0);
}

TEST_CASE("canonical serialization is stable and drives the fingerprint") {
  ScenarioConfig cfg;
  const std::string a = canonical_config_json(cfg);
  const std::string b = canonical_config_json(cfg);
  CHECK(a == b);
  const std::string fp = config_fingerprint(cfg);
  CHECK(fp.size() == 16);

  ScenarioConfig other;
  other.params.eta = 0.25;
  CHECK(config_fingerprint(other) != fp);

  ScenarioConfig svg_on;
  svg_on.svg = true;
  CHECK(config_fingerprint(svg_on) != fp);
}

TEST_CASE("json ingestion applies overrides and keeps defaults") {
  const ScenarioConfig cfg = load_config(
      R"({"params": {"eta": 0.25, "rho": 1.0}, "T_values": [1.0], "grid": 128})");
  CHECK(cfg.params.eta == 0.25);
  CHECK(cfg.params.rho == 1.0);
  CHECK(cfg.params.u0 == 10.0);
  CHECK(cfg.T_values.size() == 1);
  CHECK(cfg.grid == 128);
  CHECK(cfg.x1_0 == 0.5);
  CHECK(cfg.quad_constant_mode == RiccatiMode::matched);
}

TEST_CASE("json ingestion rejects unknown keys, bad types, and bad JSON") {
  CHECK_THROWS_WITH_AS(load_config(R"({"grids": 10})"), doctest::Contains("grids"),
                       config_error);
  CHECK_THROWS_AS(load_config(R"({"grid": 12.5})"), config_error);
  CHECK_THROWS_AS(load_config(R"({"grid": -5})"), config_error);
  CHECK_THROWS_AS(load_config(R"({"params": {"speed": 3}})"), config_error);
  CHECK_THROWS_AS(load_config("not json at all"), config_error);
  CHECK_THROWS_AS(load_config(R"({"quad_constant_mode": "legacy"})"), config_error);
  CHECK_THROWS_AS(load_config_file("/nonexistent/duogame.json"), config_error);
}

TEST_CASE("validation points at the offending field") {
  ScenarioConfig cfg;
  cfg.params.rho = 0.0;
  CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("params."), config_error);

  cfg = ScenarioConfig{};
  cfg.T_values.clear();
  CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("T_values"), config_error);

  cfg = ScenarioConfig{};
  cfg.grid = 32;
  CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("grid"), config_error);

  cfg = ScenarioConfig{};
  cfg.outputs = {"figX"};
  CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("figX"), config_error);

  cfg = ScenarioConfig{};
  cfg.gamma_values = {0.5, 1.5};
  CHECK_THROWS_AS(validate(cfg), config_error);

  cfg = ScenarioConfig{};
  cfg.x1_0 = 1.5;
  CHECK_THROWS_AS(validate(cfg), config_error);
}

TEST_CASE("gain table emission is deterministic byte for byte") {
  ScenarioConfig cfg;
  cfg.outputs = {"fig4"};
  TempDir a("det_a"), b("det_b");
  const RunArtifacts ra = run_scenario(cfg, a.path().string());
  const RunArtifacts rb = run_scenario(cfg, b.path().string());
  CHECK(ra.oracle_pass);
  CHECK(rb.oracle_pass);
  CHECK(slurp(a.path() / "fig4.csv") == slurp(b.path() / "fig4.csv"));
}

TEST_CASE("gain table carries metadata and ordered gains") {
  ScenarioConfig cfg;
  cfg.outputs = {"fig4"};
  TempDir dir("fig4");
  run_scenario(cfg, dir.path().string());
  const ParsedCsv csv = parse_csv(slurp(dir.path() / "fig4.csv"));

  bool has_config = false, has_oracle = false;
  for (const std::string& c : csv.comments) {
    if (c.rfind("config: ", 0) == 0) has_config = true;
    if (c == "oracle: PASS") has_oracle = true;
  }
  CHECK(has_config);
  CHECK(has_oracle);

  const int c_T = column(csv, "T");
  const int c_eta = column(csv, "eta");
  const int c_x = column(csv, "x1_0");
  const int c_g = column(csv, "gain");
  REQUIRE(c_T >= 0);
  REQUIRE(c_eta >= 0);
  REQUIRE(c_x >= 0);
  REQUIRE(c_g >= 0);
  CHECK(csv.rows.size() == 4 * 4 * 2);

  // Within each (eta, x1_0) slice the horizon column grows. With a real
  // valuation edge the gain grows with it; with no edge and an even start
  // the gain pins at one. An uneven start with no edge still earns a
  // head-start premium that the horizon erodes, so that slice gets no
  // ordering requirement.
  std::map<std::pair<std::string, std::string>, std::pair<double, double>> last;
  for (const auto& row : csv.rows) {
    const auto key = std::make_pair(row[c_eta], row[c_x]);
    const double T = std::stod(row[c_T]);
    const double g = std::stod(row[c_g]);
    if (row[c_eta] == "0" && row[c_x] == "0.5")
      CHECK(g == doctest::Approx(1.0).epsilon(1e-8));
    const auto it = last.find(key);
    if (it != last.end()) {
      CHECK(T > it->second.first);
      if (row[c_eta] != "0") CHECK(g > it->second.second);
    }
    last[key] = {T, g};
  }
}

TEST_CASE("trajectory tables join the two phases continuously") {
  ScenarioConfig cfg;
  cfg.outputs = {"fig3"};
  cfg.T_values = {1.5};
  TempDir dir("fig3");
  run_scenario(cfg, dir.path().string());
  const ParsedCsv csv = parse_csv(slurp(dir.path() / "fig3_T1.5.csv"));

  const int c_t = column(csv, "t");
  const int c_x = column(csv, "x1");
  const int c_x2 = column(csv, "x2");
  const int c_phase = column(csv, "phase");
  REQUIRE(c_t >= 0);
  REQUIRE(c_x >= 0);
  REQUIRE(c_x2 >= 0);
  REQUIRE(c_phase >= 0);

  double prev_x1 = -1.0;
  bool seen_switch = false;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const double x1 = std::stod(csv.rows[i][c_x]);
    const double x2 = std::stod(csv.rows[i][c_x2]);
    CHECK(x1 + x2 == doctest::Approx(1.0).epsilon(1e-12));
    if (i > 0 && csv.rows[i][c_phase] != csv.rows[i - 1][c_phase]) {
      seen_switch = true;
      CHECK(std::abs(x1 - prev_x1) < 1e-9);
      CHECK(std::stod(csv.rows[i][c_t]) ==
            doctest::Approx(std::stod(csv.rows[i - 1][c_t])).epsilon(1e-12));
    }
    prev_x1 = x1;
  }
  CHECK(seen_switch);

  // The share settles at the even split by the end of the sampled window.
  CHECK(std::stod(csv.rows.back()[c_x]) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("bid table equalizes at the half-spite point and grows with spite") {
  ScenarioConfig cfg;
  cfg.outputs = {"fig5"};
  cfg.x1_0 = 0.6;
  cfg.gamma_values = {0.0, 0.25, 0.5, 0.75, 1.0};
  TempDir dir("fig5");
  run_scenario(cfg, dir.path().string());
  const ParsedCsv csv = parse_csv(slurp(dir.path() / "fig5.csv"));

  const int c_gamma = column(csv, "gamma");
  const int c_T = column(csv, "T");
  const int c_b1 = column(csv, "b1");
  const int c_b2 = column(csv, "b2");
  REQUIRE(c_gamma >= 0);
  REQUIRE(c_T >= 0);
  REQUIRE(c_b1 >= 0);
  REQUIRE(c_b2 >= 0);

  std::map<std::string, double> prev_b1;
  for (const auto& row : csv.rows) {
    const double b1 = std::stod(row[c_b1]);
    const double b2 = std::stod(row[c_b2]);
    if (row[c_gamma] == "0.5") CHECK(std::abs(b1 - b2) < 1e-12);
    const auto it = prev_b1.find(row[c_T]);
    if (it != prev_b1.end()) CHECK(b1 > it->second);
    prev_b1[row[c_T]] = b1;
  }
}

TEST_CASE("single-cell sweep agrees with the direct revenue computation") {
  ScenarioConfig cfg;
  cfg.T_values = {1.0};
  TempDir dir("sweep1");
  const RunArtifacts art = sweep(cfg, {SweepAxis::T}, dir.path().string());
  CHECK_FALSE(art.written.empty());
  const ParsedCsv csv = parse_csv(slurp(dir.path() / "sweep.csv"));
  REQUIRE(csv.rows.size() == 1);
  const int c_T = column(csv, "T");
  const int c_gain = column(csv, "gain");
  REQUIRE(c_T >= 0);
  REQUIRE(c_gain >= 0);
  CHECK(std::stod(csv.rows[0][c_T]) == 1.0);

  AsymSolveOptions opt;
  const double direct = revenue_gain(full_revenue_report(cfg.params, cfg.x1_0, 1.0, opt));
  CHECK(std::stod(csv.rows[0][c_gain]) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("two-axis sweep walks the cross product in lexicographic order") {
  ScenarioConfig cfg;
  cfg.T_values = {0.5, 1.0};
  cfg.gamma_values = {0.0, 1.0};
  TempDir dir("sweep2");
  sweep(cfg, {SweepAxis::T, SweepAxis::gamma}, dir.path().string());
  const ParsedCsv csv = parse_csv(slurp(dir.path() / "sweep.csv"));
  REQUIRE(csv.rows.size() == 4);
  CHECK(csv.header[0] == "T");
  CHECK(csv.header[1] == "gamma");
  CHECK(csv.rows[0][0] == "0.5");
  CHECK(csv.rows[0][1] == "0");
  CHECK(csv.rows[1][1] == "1");
  CHECK(csv.rows[2][0] == "1");

  // The gain column repeats per T and grows with it.
  const int c_gain = column(csv, "gain");
  REQUIRE(c_gain >= 0);
  CHECK(std::stod(csv.rows[0][c_gain]) == std::stod(csv.rows[1][c_gain]));
  CHECK(std::stod(csv.rows[2][c_gain]) > std::stod(csv.rows[0][c_gain]));
}

TEST_CASE("the verification gate blocks emission unless waived") {
  ScenarioConfig cfg;
  cfg.outputs = {"fig3"};
  cfg.T_values = {0.5};
  cfg.tolerances.residuals.foc = 1e-20;  // unreachable on purpose
  TempDir dir("gate");
  CHECK_THROWS_AS(run_scenario(cfg, dir.path().string()), verification_failure);

  cfg.allow_unverified = true;
  const RunArtifacts art = run_scenario(cfg, dir.path().string());
  CHECK_FALSE(art.oracle_pass);
  const std::string text = slurp(dir.path() / "fig3_T0.5.csv");
  CHECK(text.find("# oracle: FAIL") != std::string::npos);
}

TEST_CASE("the run report lists artifacts by name and embeds the verdict") {
  ScenarioConfig cfg;
  cfg.outputs = {"fig4", "report"};
  TempDir dir("report");
  const RunArtifacts art = run_scenario(cfg, dir.path().string());
  CHECK_FALSE(art.report_json.empty());
  const std::string text = slurp(dir.path() / "report.json");
  CHECK(text == art.report_json);
  CHECK(text.find("\"fig4.csv\"") != std::string::npos);
  CHECK(text.find(dir.path().string()) == std::string::npos);
  CHECK(text.find("\"pass\"") != std::string::npos);
  CHECK(text.find(config_fingerprint(cfg)) != std::string::npos);
}

TEST_CASE("svg companions appear only when requested") {
  ScenarioConfig cfg;
  cfg.outputs = {"fig4"};
  TempDir dir("svg");
  run_scenario(cfg, dir.path().string());
  CHECK_FALSE(std::filesystem::exists(dir.path() / "fig4.svg"));

  ScenarioConfig with_svg;
  with_svg.outputs = {"fig4"};
  with_svg.svg = true;
  TempDir dir2("svg2");
  run_scenario(with_svg, dir2.path().string());
  CHECK(std::filesystem::exists(dir2.path() / "fig4.svg"));
  const std::string svg = slurp(dir2.path() / "fig4.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
}

TEST_CASE("sweep axes parse by name") {
  CHECK(sweep_axis_from_string("T") == SweepAxis::T);
  CHECK(sweep_axis_from_string("eta") == SweepAxis::eta);
  CHECK(sweep_axis_from_string("gamma") == SweepAxis::gamma);
  CHECK(sweep_axis_from_string("x1_0") == SweepAxis::x1_0);
  CHECK(sweep_axis_from_string("rho") == SweepAxis::rho);
  CHECK(std::string(to_string(SweepAxis::eta)) == "eta");
  CHECK_THROWS_AS(sweep_axis_from_string("sigma"), config_error);
}

TEST_CASE("verification summary covers trajectories and coefficient checks") {
  ScenarioConfig cfg;
  cfg.T_values = {0.5};
  const VerifySummary sum = verify_equilibria(cfg);
  CHECK(sum.pass);
  CHECK_FALSE(sum.reports.empty());
  CHECK_FALSE(sum.checks.empty());
  for (const auto& [label, report] : sum.reports) {
    CHECK_FALSE(label.empty());
    CHECK(report.pass);
  }
  for (const CoefficientCheck& c : sum.checks) {
    CHECK(c.pass);
    CHECK(c.error <= c.tolerance);
  }
  const std::string j = sum.to_json();
  CHECK(j.find("\"pass\": true") != std::string::npos);
  CHECK(j.back() == '\n');
}
