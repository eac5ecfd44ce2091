#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ndschaos/error.hpp"
#include "ndschaos/harness.hpp"
#include "ndschaos/kato.hpp"
#include "ndschaos/metrics.hpp"
#include "ndschaos/system.hpp"

namespace ndschaos {

enum class ExperimentKind {
  Simulate,
  Metrics,
  Classify,
  Kato,
  IterateCheck,
  LiYorkeInvariance,
  Dc2PrimeInvariance,
  KatoInvariance,
  SequenceChaos,
  Dc3Counterexample,
  OpenQuestion,
};

const char* to_string(ExperimentKind k);
// Experiments whose checks carry no pass/fail claim.
bool exploratory(ExperimentKind k);

// Everything a run needs. Keys and defaults are listed by config_keys();
// sections only group them in files.
struct RunConfig {
  // [run]
  ExperimentKind experiment = ExperimentKind::Classify;
  std::uint64_t seed = 1;
  std::string output = "nds-out";
  bool svg = false;
  bool strict_hypotheses = false;

  // [system]
  std::string space = "interval";
  std::string kind = "autonomous";  // autonomous, list, family, moving-bump, counterexample
  std::string map = "logistic(4)";
  std::vector<std::string> maps;
  std::string tail = "repeat-last";
  std::string family = "logistic";
  std::string decay = "harmonic";
  double limit = 4.0;
  double scale = -1.0;
  double ratio = 0.5;
  double target = 0.3;
  std::int64_t iterate = 1;

  // [orbits]
  std::int64_t horizon = 10000;
  std::int64_t pairs = 20;
  std::vector<double> x;  // explicit first pair, overrides sampling
  std::vector<double> y;
  std::vector<std::int64_t> k = {2, 3};
  std::int64_t candidates = 0;

  // [grid]
  double t_min = 1e-4;
  double t_max = 1.0;
  std::int64_t t_points = 30;
  std::string t_scale = "log";
  double window = 0.5;
  std::vector<std::int64_t> checkpoints;

  // [thresholds]
  double eps_zero = 0.05;
  double one_tol = 0.05;
  double gap = 0.2;
  std::string dc3_variant = "literal";
  double eps_prox = 1e-3;
  double eps_sep = 0.5;
  double min_rate = 0.9;
  std::string scan_flag = "dc1";

  // [kato]
  double delta = 0.25;
  double epsilon = 1e-3;
  std::int64_t probe_count = 64;
  std::optional<double> probe_radius;  // unset: space default
  std::int64_t sens_horizon = 64;
  std::int64_t sens_samples = 8;
  std::int64_t access_horizon = 1000;
  std::int64_t access_samples = 64;

  // [experiments]
  std::int64_t count = 30;
  double r0 = 0.25;
  std::vector<std::int64_t> pair_blocks = {0, 10, 300};
  std::int64_t identity_n = 500;
  std::int64_t modulus_probe_n = 32;
  std::vector<double> s_grid = {0.5, 0.25, 0.1, 0.05};
  std::int64_t artifact_pairs = 4;
};

struct ConfigIssue {
  ErrorKind kind;  // ParseError or ValidationError
  std::string where;  // "line:col" or field name
  std::string message;
  std::string describe() const;
};

// Carries every issue found, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

struct ConfigKey {
  std::string name;
  std::string section;
  std::string help;
};

const std::vector<ConfigKey>& config_keys();

// Closest key within edit distance 2, if any.
std::optional<std::string> suggest_key(const std::string& unknown);
std::size_t edit_distance(const std::string& a, const std::string& b);

// Layers `text` over `cfg`; issues are appended, not thrown.
void merge_config_text(RunConfig& cfg, const std::string& text, std::vector<ConfigIssue>& issues);
// One key from a flag or environment variable. Lists accept "a,b" or "[a, b]";
// strings need no quotes.
void apply_override(RunConfig& cfg, const std::string& key, const std::string& raw, std::vector<ConfigIssue>& issues);
void validate(const RunConfig& cfg, std::vector<ConfigIssue>& issues);

// Defaults, then `text`, then validation. Throws ConfigError.
RunConfig parse_config(const std::string& text);

// Effective configuration in the same format, every key present.
std::string to_toml(const RunConfig& cfg);

// Preset names: counterexample, sequence-chaos, logistic-invariance,
// identity, open-question.
const std::vector<std::string>& preset_names();
std::string preset_text(const std::string& name);

NDSystem build_system(const RunConfig& cfg);
std::vector<double> t_grid(const RunConfig& cfg);
Window estimate_window(const RunConfig& cfg);
Thresholds thresholds(const RunConfig& cfg);
LiYorkeParams li_yorke_params(const RunConfig& cfg);
KatoParams kato_params(const RunConfig& cfg, const Space& space);

}  // namespace ndschaos
