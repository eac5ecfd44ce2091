#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "ndschaos/config.hpp"
#include "ndschaos/runner.hpp"

using namespace ndschaos;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("ndschaos-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

RunConfig from_preset(const std::string& name) {
  RunConfig cfg;
  std::vector<ConfigIssue> issues;
  merge_config_text(cfg, preset_text(name), issues);
  REQUIRE(issues.empty());
  return cfg;
}

std::vector<ConfigIssue> issues_for(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.issues();
  }
  return {};
}

}  // namespace

TEST_CASE("empty config gives the documented defaults") {
  const auto c = parse_config("");
  CHECK(c.experiment == ExperimentKind::Classify);
  CHECK(c.seed == 1);
  CHECK(c.horizon == 10000);
  CHECK(c.eps_zero == 0.05);
  CHECK(c.one_tol == 0.05);
  CHECK(c.gap == 0.2);
  CHECK(c.dc3_variant == "literal");
  CHECK(c.k == std::vector<std::int64_t>{2, 3});
  CHECK_FALSE(c.probe_radius.has_value());
}

TEST_CASE("config values, sections and comments") {
  const auto c = parse_config(R"cfg(experiment = "kato"  # trailing comment
[system]
map = "tent(1.5)"
[orbits]
horizon = 300
k = [1, 4,]
[kato]
probe_radius = 2e-2
)cfg");
  CHECK(c.experiment == ExperimentKind::Kato);
  CHECK(c.map == "tent(1.5)");
  CHECK(c.horizon == 300);
  CHECK(c.k == std::vector<std::int64_t>{1, 4});
  CHECK(*c.probe_radius == 0.02);
}

TEST_CASE("config errors are collected, not just the first") {
  const auto issues = issues_for("[orbits]\nhorizon = -3\npairs = 0\n[kato]\nepsilonn = 1\n[grid]\nt_min = \"x\n");
  REQUIRE(issues.size() == 4);
  bool suggested = false, horizon = false, parse = false;
  for (const auto& i : issues) {
    suggested |= i.message.find("did you mean 'epsilon'") != std::string::npos;
    horizon |= i.where == "horizon" && i.kind == ErrorKind::ValidationError;
    parse |= i.kind == ErrorKind::ParseError && i.where.rfind("7:", 0) == 0;
  }
  CHECK(suggested);
  CHECK(horizon);
  CHECK(parse);
}

TEST_CASE("key suggestions use edit distance at most two") {
  CHECK(edit_distance("epsilonn", "epsilon") == 1);
  CHECK(edit_distance("kitten", "sitting") == 3);
  CHECK(suggest_key("epsilonn") == std::optional<std::string>("epsilon"));
  CHECK(suggest_key("horizn") == std::optional<std::string>("horizon"));
  CHECK_FALSE(suggest_key("completely_unrelated").has_value());
}

TEST_CASE("keys in the wrong section, duplicates and type errors") {
  CHECK(issues_for("[kato]\nhorizon = 5\n").size() == 1);
  CHECK(issues_for("seed = 1\nseed = 2\n").size() == 1);
  CHECK(issues_for("[orbits]\nhorizon = 1.5\n").size() == 1);
  CHECK(issues_for("[system]\nspace = \"torus\"\n").size() == 1);
  CHECK(issues_for("[thresholds]\neps_prox = 0.6\n").size() == 1);  // exceeds eps_sep
  CHECK(issues_for("[system]\nkind = \"counterexample\"\nmap = \"logistic(4)\"\n").size() == 1);
  CHECK(issues_for("[bogus]\n").size() == 1);
}

TEST_CASE("effective config echo round-trips") {
  auto c = from_preset("counterexample");
  c.probe_radius = 0.125;
  c.maps = {"tent(2)", "doubling"};
  const auto back = parse_config(to_toml(c));
  CHECK(to_toml(back) == to_toml(c));
  CHECK(back.checkpoints == c.checkpoints);
  CHECK(back.t_min == c.t_min);
}

TEST_CASE("flag overrides accept bare lists and strings") {
  RunConfig c;
  std::vector<ConfigIssue> issues;
  apply_override(c, "k", "2,3,4", issues);
  apply_override(c, "maps", "tent(2),doubling", issues);
  apply_override(c, "map", "power(shift,3)", issues);
  apply_override(c, "eps_zero", "0.1", issues);
  CHECK(issues.empty());
  CHECK(c.k == std::vector<std::int64_t>{2, 3, 4});
  CHECK(c.maps == std::vector<std::string>{"tent(2)", "doubling"});
  CHECK(c.map == "power(shift,3)");
  CHECK(c.eps_zero == 0.1);
  apply_override(c, "epsilonn", "1", issues);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].message.find("'epsilon'") != std::string::npos);
}

TEST_CASE("map expressions round-trip through describe") {
  for (const char* s : {"identity", "doubling", "shift", "shift^-1", "logistic(3.9)", "tent(2)",
                        "power(shift,15)", "compose(tent(2),doubling)", "bump(logistic(4),0.5,0.25,0.3)"})
    CHECK(parse_map(s).describe() == parse_map(parse_map(s).describe()).describe());
  CHECK(parse_map("power(shift,-2)").describe() == "power(shift,-2)");
  CHECK_THROWS_AS(parse_map("tent(2"), Error);
  CHECK_THROWS_AS(parse_map("cubic(1)"), Error);
  CHECK_THROWS_AS(parse_map("logistic(5)"), Error);
}

TEST_CASE("counterexample preset writes dc3 true for the base and false for the second iterate") {
  auto c = from_preset("counterexample");
  c.identity_n = 40;
  const auto dir = scratch("counterexample");
  const auto r = execute(c);
  write_outputs(c, r, dir);
  CHECK(exit_code(c, r) == ExitPass);
  std::map<std::string, std::string> dc3;
  for (const auto& row : csv_rows(dir / "verdicts.csv")) dc3[row[0]] = row[7];
  CHECK(dc3["base"] == "true");
  CHECK(dc3["iterate-2"] == "false");
  CHECK(slurp(dir / "config.toml") == to_toml(c));
  CHECK(slurp(dir / "report.txt").find("overall pass") != std::string::npos);
}

TEST_CASE("identity preset: exit 0 and every verdict false") {
  auto c = from_preset("identity");
  c.pairs = 5;
  const auto dir = scratch("identity");
  const auto r = execute(c);
  write_outputs(c, r, dir);
  CHECK(exit_code(c, r) == ExitPass);
  const auto rows = csv_rows(dir / "verdicts.csv");
  CHECK(rows.size() == 5);
  for (const auto& row : rows)
    for (int col = 3; col <= 7; ++col) CHECK(row[static_cast<std::size_t>(col)] == "false");
}

TEST_CASE("open question probe always exits 0") {
  auto c = from_preset("open-question");
  c.horizon = 3000;
  c.pairs = 2;
  const auto r = execute(c);
  CHECK(exit_code(c, r) == ExitPass);
  c.strict_hypotheses = true;
  CHECK(exit_code(c, r) == ExitPass);
}

TEST_CASE("hypothesis unmet exits 3 only in strict mode") {
  auto c = parse_config("experiment = \"kato-invariance\"\n[system]\nkind = \"moving-bump\"\n");
  const auto r = execute(c);
  CHECK(exit_code(c, r) == ExitPass);
  c.strict_hypotheses = true;
  CHECK(exit_code(c, r) == ExitHypothesis);
}

TEST_CASE("a failing check gives exit 1") {
  auto c = parse_config("experiment = \"sequence-chaos\"\n[orbits]\nhorizon = 24\n[experiments]\ncount = 4\n");
  c.count = 100;  // bypasses validation: capacity is exceeded at run time
  const auto r = execute(c);
  CHECK(exit_code(c, r) == ExitFailure);
  CHECK(r.reports.at(0).report.checks.at(0).name == "error");
}

TEST_CASE("every xi and estimate row is reproducible from profiles.csv") {
  auto c = parse_config("[orbits]\nhorizon = 700\npairs = 3\n[grid]\nt_points = 7\ncheckpoints = [100, 350, 700]\n");
  const auto dir = scratch("reproduce");
  write_outputs(c, execute(c), dir);
  std::map<std::string, std::vector<double>> d;
  for (const auto& row : csv_rows(dir / "profiles.csv")) {
    auto& v = d[row[0]];
    CHECK(std::stoull(row[1]) == v.size());
    v.push_back(std::stod(row[2]));
  }
  auto xi = [&](const std::string& id, std::int64_t n, double t) {
    std::int64_t count = 0;
    for (std::int64_t i = 0; i < n; ++i) count += d[id][static_cast<std::size_t>(i)] < t;
    return std::pair{count, n};
  };
  std::size_t checked = 0;
  for (const auto& row : csv_rows(dir / "xi.csv")) {
    const auto [count, n] = xi(row[0], std::stoll(row[1]), std::stod(row[2]));
    CHECK(std::stod(row[3]) == static_cast<double>(count) / static_cast<double>(n));
    CHECK(std::stod(row[4]) == static_cast<double>(n - count) / static_cast<double>(n));
    ++checked;
  }
  CHECK(checked == 3 * 7 * 13);  // n in {1, 2, 4, ..., 512} plus 100, 350, 700
  for (const auto& row : csv_rows(dir / "estimates.csv")) {
    const double t = std::stod(row[1]);
    double lo = 1.0, hi = 0.0;
    for (std::int64_t n : {100, 350, 700}) {
      const auto [count, nn] = xi(row[0], n, t);
      const double v = static_cast<double>(count) / static_cast<double>(nn);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(std::stod(row[2]) == lo);
    CHECK(std::stod(row[3]) == hi);
  }
}

TEST_CASE("reruns are byte-identical") {
  auto c = parse_config("experiment = \"classify\"\n[orbits]\nhorizon = 400\npairs = 4\ncandidates = 4\n");
  c.svg = true;
  const auto a = scratch("rerun-a"), b = scratch("rerun-b");
  write_outputs(c, execute(c), a);
  write_outputs(c, execute(c), b);
  for (const char* f : {"profiles.csv", "xi.csv", "estimates.csv", "verdicts.csv", "report.txt", "phi_pair0.svg"})
    CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("simulate and kato write their own tables") {
  auto c = parse_config("experiment = \"simulate\"\n[orbits]\nhorizon = 10\npairs = 1\nx = [0.25]\ny = [0.5]\n");
  const auto dir = scratch("simulate");
  write_outputs(c, execute(c), dir);
  const auto rows = csv_rows(dir / "orbits.csv");
  REQUIRE(rows.size() == 2 * 11);
  CHECK(rows[0][2] == "0.25");
  CHECK(rows[1][2] == "0.75");  // logistic(4) at 1/4
  auto k = parse_config("experiment = \"kato\"\n[system]\nmap = \"tent(2)\"\n[kato]\nprobe_count = 8\n");
  const auto kd = scratch("kato");
  write_outputs(k, execute(k), kd);
  CHECK(csv_rows(kd / "kato.csv").size() == 8);
}

TEST_CASE("svg writer emits one polyline per series") {
  const auto s = svg_line_chart("t<1", "x", "y", {{"a", {1, 2, 3}, {0, 1, 0}}, {"b", {1, 2}, {1, 1}}}, false);
  CHECK(s.rfind("<svg", 0) == 0);
  CHECK(s.find("t&lt;1") != std::string::npos);
  std::size_t count = 0;
  for (auto p = s.find("<polyline"); p != std::string::npos; p = s.find("<polyline", p + 1)) ++count;
  CHECK(count == 2);
}
