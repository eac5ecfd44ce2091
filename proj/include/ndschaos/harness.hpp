#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ndschaos/catalog.hpp"
#include "ndschaos/kato.hpp"
#include "ndschaos/metrics.hpp"

namespace ndschaos {

enum class CheckStatus { Pass, Fail, HypothesisUnmet, Info, Exploratory };
const char* to_string(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Info;
  std::string detail;
};

// Pair data kept for the CSV writers.
struct PairArtifact {
  std::string id;
  PairDistanceProfile profile;
  std::optional<DistributionEstimate> estimate;
  std::optional<ChaosVerdict> verdict;
};

struct ExperimentReport {
  std::string id;
  std::string system;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Check> checks;
  std::vector<PairArtifact> artifacts;

  void param(const std::string& key, const std::string& value) { parameters.emplace_back(key, value); }
  void add(std::string name, CheckStatus status, std::string detail);
  void add(std::string name, bool ok, std::string detail) {
    add(std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail));
  }

  // Fail if any check failed; otherwise HypothesisUnmet if any; otherwise
  // Exploratory if every check is exploratory or info; otherwise Pass.
  CheckStatus overall() const;
  bool passed() const { return overall() == CheckStatus::Pass || overall() == CheckStatus::Exploratory; }

  // One record per line; byte-stable for identical inputs.
  std::string serialize() const;
};

// Uniform gap max_x d(f_n x, limit x) at n = 10, 100, 1000 on a fixed grid;
// decays when the gaps do not increase and the last is below tol.
struct ConvergenceCheck {
  bool has_limit = false;
  bool decays = false;
  std::vector<std::pair<std::int64_t, double>> gaps;
  std::string describe() const;
};
ConvergenceCheck check_uniform_convergence(const NDSystem& sys, double tol = 1e-2);

struct LiYorkeInvarianceParams {
  std::size_t pairs = 200;
  std::int64_t horizon = 100000;
  std::uint64_t seed = 1;
  double eps_prox = 1e-3;
  double eps_sep = 0.5;
  double window = 0.5;
  double min_rate = 0.9;
  std::size_t artifact_pairs = 1;  // base and iterate profiles kept for output
  std::vector<double> t_grid = log_grid(1e-4, 1.0, 30);
  Thresholds thresholds;
};

// Pairs flagged for the base at horizon N are re-tested on the k-th iterate
// at N iterate steps (k N base steps); pairs flagged for the iterate are
// re-tested on the base at k N.
ExperimentReport run_liyorke_invariance(const NDSystem& sys, std::int64_t k, const LiYorkeInvarianceParams& p);

struct Dc2PrimeParams {
  Point x = real_point(0.3);
  Point y = real_point(0.30141421356237310);
  std::int64_t horizon = 10000;  // base steps
  std::vector<double> t_grid = log_grid(1e-4, 1.0, 20);
  std::vector<double> s_grid = {0.5, 0.25, 0.1, 0.05};
  std::int64_t modulus_probe_n = 32;  // n = 1..this plus 100, 1000, 10000
  Window window;
  Thresholds thresholds;
};

// Counting relations from the DC2' invariance argument, on integer counts:
//   #{i < floor(n/N) : d(F^i x, F^i y) < t} <= #{i < n : d_i < t}
//   N (#{i < n : d(F^i x, F^i y) >= s} - 1) <= #{i < N n : d_i >= p(s)}
// with F the N-th iterate and p(s) the estimated equicontinuity modulus.
ExperimentReport run_dc2prime_invariance(const NDSystem& sys, std::int64_t N, const Dc2PrimeParams& p);

// Largest p = s 2^{-j} such that sampled pairs at distance 0.999 p stay
// within s under every f_n^i, i <= N.
double estimate_modulus(const NDSystem& sys, std::int64_t N, double s, std::int64_t probe_n);

ExperimentReport run_kato_invariance(const NDSystem& sys, const std::vector<std::int64_t>& ks,
                                     const KatoParams& p);

struct SequenceChaosParams {
  std::int64_t horizon = 5040;
  std::size_t count = 30;
  std::uint64_t seed = 1;
  double r0 = 0.25;
  std::size_t artifact_pairs = 4;
  std::vector<double> t_grid = log_grid(1e-6, 1.0, 40);
  Thresholds thresholds;
};

ExperimentReport run_sequence_chaos_construction(const SequenceChaosParams& p);

struct Dc3Params {
  std::int64_t horizon = 5040;
  std::vector<std::int64_t> layout = {0, 10, 300};  // witness pair blocks
  std::vector<std::int64_t> checkpoints = {300, 5040};
  std::vector<double> t_grid = log_grid(1e-9, 1.0, 60);
  std::int64_t identity_n = 500;
  std::size_t identity_points = 50;
  std::uint64_t seed = 1;
  Thresholds thresholds;
  LiYorkeParams li_yorke{1e-3, 0.5, 0.5, IndexWindow{10, 5040}};
};

ExperimentReport run_dc3_counterexample(const Dc3Params& p);

struct OpenQuestionParams {
  std::vector<std::int64_t> ks = {2, 3};
  std::int64_t horizon = 20000;
  std::size_t pairs = 4;
  std::uint64_t seed = 1;
  std::vector<double> t_grid = log_grid(1e-4, 1.0, 30);
  Window window;
  Thresholds thresholds;
  LiYorkeParams li_yorke;
};

// Exploratory only: verdicts for a pointwise but not uniformly convergent
// system and its iterates.
ExperimentReport run_open_question_probe(const NDSystem& sys, const OpenQuestionParams& p);

// Moving bump over logistic(4).
NDSystem open_question_system();

}  // namespace ndschaos
