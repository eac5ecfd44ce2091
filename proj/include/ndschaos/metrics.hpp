#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ndschaos/catalog.hpp"
#include "ndschaos/system.hpp"

namespace ndschaos {

// d_i = d(f_1^i x, f_1^i y) for i = 0..horizon-1.
struct PairDistanceProfile {
  double diameter = 1.0;
  std::int64_t horizon = 0;
  std::vector<double> d;
};

PairDistanceProfile pair_profile(const NDSystem& sys, const Point& x, const Point& y, std::int64_t horizon);

// Entries d_{p_k} for every k with p_k < horizon.
PairDistanceProfile subsample(const PairDistanceProfile& full, const IndexRule& p);

// Exact fraction count / n.
struct Ratio {
  std::int64_t count = 0;
  std::int64_t n = 1;

  double value() const { return static_cast<double>(count) / static_cast<double>(n); }
  friend bool operator<(const Ratio& a, const Ratio& b) {
    return static_cast<__int128>(a.count) * b.n < static_cast<__int128>(b.count) * a.n;
  }
  friend bool operator==(const Ratio& a, const Ratio& b) {
    return static_cast<__int128>(a.count) * b.n == static_cast<__int128>(b.count) * a.n;
  }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
};

// #{0 <= i < n : d_i < t} / n  and  #{0 <= i < n : d_i >= t} / n.
Ratio xi_n(const PairDistanceProfile& profile, double t, std::int64_t n);
Ratio delta_n(const PairDistanceProfile& profile, double t, std::int64_t n);

// Which n stand in for n -> infinity: the tail [ceil((1 - w) N), N] or an
// explicit list of checkpoints.
struct Window {
  double tail = 0.5;
  std::vector<std::int64_t> checkpoints;

  static Window tail_fraction(double w) { return Window{w, {}}; }
  static Window at(std::vector<std::int64_t> ns) { return Window{0.0, std::move(ns)}; }

  std::vector<std::int64_t> ns(std::int64_t horizon) const;
  std::string describe() const;
};

// Increasing t values; log-spaced or linear.
std::vector<double> log_grid(double lo, double hi, std::size_t points);
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

struct DistributionEstimate {
  std::vector<double> t;
  std::vector<Ratio> lower;  // min over the window of xi_n(t)
  std::vector<Ratio> upper;  // max over the window
  std::int64_t horizon = 0;
  double diameter = 1.0;
  Window window;
};

DistributionEstimate distribution_estimate(const PairDistanceProfile& profile, const std::vector<double>& t_grid,
                                           const Window& window);
// The same estimator on d_{p_k}.
DistributionEstimate sequence_distribution_estimate(const PairDistanceProfile& full, const IndexRule& p,
                                                    const std::vector<double>& t_grid, const Window& window);

struct Interval {
  std::size_t begin = 0;  // index range of the grid, inclusive
  std::size_t end = 0;
};

struct LiYorkeResult {
  bool verdict = false;
  std::int64_t argmin = -1;
  std::int64_t argmax = -1;
  double min = 0.0;
  double max = 0.0;
};

// Index range [begin, end) of profile entries standing in for n -> infinity.
struct IndexWindow {
  std::int64_t begin = 0;
  std::int64_t end = 0;
  static IndexWindow tail(std::int64_t horizon, double w);
};

// min over the window < eps_prox and max > eps_sep.
LiYorkeResult li_yorke_test(const PairDistanceProfile& profile, double eps_prox, double eps_sep,
                            const IndexWindow& window);

struct Thresholds {
  double eps_zero = 0.05;
  double one_tol = 0.05;
  double gap = 0.2;
  bool dc3_literal = true;  // also require upper >= 1 - one_tol on J
  std::string describe() const;
};

enum class ChaosFlag { LiYorke, DC1, DC2, DC2Prime, DC3 };
const char* to_string(ChaosFlag f);
ChaosFlag parse_chaos_flag(const std::string& s);

struct FlagResult {
  bool evaluated = false;
  bool verdict = false;
  std::optional<double> witness_t;           // a t with lower(t) small / large
  std::optional<std::pair<double, double>> interval;  // J for DC3
  std::string note;
};

struct ChaosVerdict {
  FlagResult li_yorke;
  FlagResult dc1;
  FlagResult dc2;
  FlagResult dc2prime;
  FlagResult dc3;
  Thresholds thresholds;
  std::int64_t horizon = 0;
  std::string window;

  const FlagResult& flag(ChaosFlag f) const;
};

ChaosVerdict classify_pair(const DistributionEstimate& est, const Thresholds& th);

struct LiYorkeParams {
  double eps_prox = 1e-3;
  double eps_sep = 0.5;
  double window = 0.5;  // tail fraction, used when no explicit range is set
  std::optional<IndexWindow> range;
};

// classify_pair plus li_yorke_test on the same profile.
ChaosVerdict classify_profile(const PairDistanceProfile& profile, const std::vector<double>& t_grid,
                              const Window& window, const Thresholds& th, const LiYorkeParams& ly);

struct ScanParams {
  std::int64_t horizon = 1000;
  IndexRule p;
  std::vector<double> t_grid;
  Window window;
  Thresholds thresholds;
  LiYorkeParams li_yorke;
  ChaosFlag flag = ChaosFlag::DC1;
};

struct ScanResult {
  std::size_t size = 0;
  // verdicts[i][j] for i < j; diagonal and lower half unused.
  std::vector<std::vector<std::optional<ChaosVerdict>>> verdicts;
  std::vector<std::size_t> clique;  // greedy, reported only when >= 2 points
  // Largest grid t with lower(t) <= eps_zero for every clique pair, when one
  // exists: a single epsilon for the whole set.
  std::optional<double> uniform_eps;
};

ScanResult scrambled_scan(const NDSystem& sys, const std::vector<Point>& candidates, const ScanParams& params);

}  // namespace ndschaos
