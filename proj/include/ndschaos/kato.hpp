#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ndschaos/kernels.hpp"
#include "ndschaos/system.hpp"

namespace ndschaos {

// Open ball standing in for a nonempty open set.
struct OpenSetProbe {
  Point center;
  double radius = 0.01;
};

// The first m points of a deterministic low-discrepancy sequence inside the
// probe, seeded by `index`. Prefixes agree: samples(.., m) is a prefix of
// samples(.., m + 1).
std::vector<Point> probe_samples(const Space& space, const OpenSetProbe& probe, std::uint64_t index, std::size_t m);

// Interval and square: 64 balls of radius 0.01 on a regular grid. Shift
// spaces: 64 cylinder balls of radius 0.05 indexed by their first 6 symbols.
std::vector<OpenSetProbe> default_probes(const Space& space);

// `count` balls of the given radius: evenly spaced centers on the interval,
// a sqrt(count) grid on the square, cylinders over every log2(count)-symbol
// prefix on shift spaces.
std::vector<OpenSetProbe> probe_grid(const Space& space, std::size_t count, double radius);
double default_probe_radius(const Space& space);

enum class NSetSign { Below, Above };  // d < delta or d > delta

// {n in [1, N] : some pair of distinct samples x, y in U has
//  d(f_1^n x, f_1^n y) < delta} (Below) or > delta (Above).
std::vector<std::int64_t> n_set(const NDSystem& sys, const OpenSetProbe& U, std::uint64_t index, double delta,
                                std::int64_t horizon, std::size_t samples, NSetSign sign);

struct SensitivityResult {
  bool verdict = false;
  std::size_t worst_probe = 0;
  double worst_separation = 0.0;     // smallest per-probe maximum separation
  std::vector<double> separations;  // per probe: max over pairs and n <= N
};

// Every probe holds a pair separating beyond delta within the horizon.
SensitivityResult sensitivity_test(const NDSystem& sys, double delta, const std::vector<OpenSetProbe>& probes,
                                   std::int64_t horizon, std::size_t samples, Exec exec = Exec::Parallel);

struct AccessWitness {
  Point x;
  Point y;
  std::int64_t n = 0;
  double distance = 0.0;
};

struct AccessibilityResult {
  bool verdict = false;
  std::optional<AccessWitness> witness;
};

// Some x in U, y in V with d(f_1^n x, f_1^n y) < eps for an n in [1, N];
// U samples use seed u_index and V samples v_index. The first n found wins.
AccessibilityResult accessibility_test(const NDSystem& sys, double eps, const OpenSetProbe& U,
                                       std::uint64_t u_index, const OpenSetProbe& V, std::uint64_t v_index,
                                       std::int64_t horizon, std::size_t samples);

struct KatoParams {
  double delta = 0.25;
  double eps = 1e-3;
  std::int64_t horizon = 64;
  std::size_t sens_samples = 8;
  std::int64_t access_horizon = 1000;
  std::size_t access_samples = 64;
  std::vector<OpenSetProbe> probes;  // empty: default_probes(space)
};

struct KatoResult {
  bool kato = false;
  SensitivityResult sensitivity;
  bool accessible = false;
  // First probe pair (in index order) without a witness, if any.
  std::optional<std::pair<std::size_t, std::size_t>> access_failure;
  std::size_t access_pairs_checked = 0;
  std::int64_t max_access_n = 0;  // largest first-hit time over probe pairs
};

KatoResult kato_verdict(const NDSystem& sys, const KatoParams& params, Exec exec = Exec::Parallel);

}  // namespace ndschaos
