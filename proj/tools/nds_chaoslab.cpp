#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ndschaos/config.hpp"
#include "ndschaos/runner.hpp"

using namespace ndschaos;

namespace {

std::string dashed(std::string s) {
  for (auto& c : s)
    if (c == '_') c = '-';
  return s;
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{"liyorke-invariance", "dc2prime-invariance", "kato-invariance",
                                            "sequence-chaos", "dc3-counterexample", "open-question"};
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nds-chaoslab: simulate non-autonomous discrete systems and classify their chaos"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("-c,--config", config_path, "TOML configuration file")->check(CLI::ExistingFile);

  // Every config key is also a flag; a flag beats the file.
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  bool svg = false, strict = false;
  for (const auto& k : config_keys()) {
    if (k.name == "svg") {
      options[k.name] = app.add_flag("--svg", svg, k.help)->group(k.section);
    } else if (k.name == "strict_hypotheses") {
      options[k.name] = app.add_flag("--strict-hypotheses", strict, k.help)->group(k.section);
    } else if (k.name == "experiment") {
      continue;  // chosen by the subcommand
    } else {
      const std::string flag = k.name.size() == 1 ? "-" + k.name : "--" + dashed(k.name);
      options[k.name] = app.add_option(flag, values[k.name], k.help)->group(k.section);
    }
  }

  struct Sub {
    CLI::App* app;
    std::optional<ExperimentKind> kind;
  };
  std::vector<Sub> subs{
      {app.add_subcommand("simulate", "orbits and pair distance profiles"), ExperimentKind::Simulate},
      {app.add_subcommand("metrics", "profiles, xi tables and distribution estimates"), ExperimentKind::Metrics},
      {app.add_subcommand("classify", "chaos verdicts per sampled pair"), ExperimentKind::Classify},
      {app.add_subcommand("kato", "sensitivity, accessibility and Kato verdict"), ExperimentKind::Kato},
      {app.add_subcommand("iterate-check", "iterate orbits against every k-th base point"),
       ExperimentKind::IterateCheck},
      {app.add_subcommand("run", "run the experiment named in the config file"), std::nullopt},
  };
  std::string theorem_id, preset_name;
  auto* theorem = app.add_subcommand("theorem", "run one invariance or construction experiment");
  theorem->add_option("id", theorem_id, "experiment id")->required()->check(CLI::IsMember(theorem_ids()));
  auto* preset = app.add_subcommand("preset", "run a named preset");
  preset->add_option("name", preset_name, "preset name")->required()->check(CLI::IsMember(preset_names()));
  for (auto* s : app.get_subcommands({})) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ExitConfig;
  }

  RunConfig cfg;
  std::vector<ConfigIssue> issues;
  if (preset->parsed()) merge_config_text(cfg, preset_text(preset_name), issues);
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    std::stringstream buf;
    buf << f.rdbuf();
    merge_config_text(cfg, buf.str(), issues);
  }
  for (const auto& s : subs)
    if (s.app->parsed() && s.kind) cfg.experiment = *s.kind;
  if (theorem->parsed()) apply_override(cfg, "experiment", theorem_id, issues);
  if (const char* env = std::getenv("NDS_CHAOSLAB_SEED")) apply_override(cfg, "seed", env, issues);
  for (const auto& [name, opt] : options) {
    if (opt->count() == 0) continue;
    if (name == "svg")
      cfg.svg = svg;
    else if (name == "strict_hypotheses")
      cfg.strict_hypotheses = strict;
    else
      apply_override(cfg, name, values[name], issues);
  }
  validate(cfg, issues);
  if (!issues.empty()) {
    std::cerr << ConfigError(issues).what() << "\n";
    return ExitConfig;
  }

  try {
    const auto result = execute(cfg);
    write_outputs(cfg, result, cfg.output);
    for (const auto& lr : result.reports) {
      if (!lr.label.empty()) std::cout << "run " << lr.label << "\n";
      std::cout << lr.report.serialize() << "\n";
    }
    const int code = exit_code(cfg, result);
    std::cout << "outputs in " << cfg.output << ", exit " << code << "\n";
    return code;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return ExitFailure;
  }
}
