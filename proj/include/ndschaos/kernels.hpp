#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ndschaos/metrics.hpp"

namespace ndschaos {

// Parallel kernels run under OpenMP; Serial runs the plain reference loops.
// Both produce identical results: every output cell is computed by one
// thread with the same operation order.
enum class Exec { Serial, Parallel };

namespace kernels {

std::vector<PairDistanceProfile> pair_profiles(const NDSystem& sys,
                                               const std::vector<std::pair<Point, Point>>& pairs,
                                               std::int64_t horizon, Exec exec = Exec::Parallel);

// counts[a][b] = #{0 <= i < ns[b] : d_i < t[a]}. ns must be increasing and
// within the horizon.
std::vector<std::vector<std::int64_t>> xi_counts(const std::vector<double>& d, const std::vector<double>& t,
                                                 const std::vector<std::int64_t>& ns, Exec exec = Exec::Parallel);

// Runs body(i) for i in [0, n); the first exception is rethrown after the
// loop. body must only write to slots owned by i.
void for_each_index(std::int64_t n, const std::function<void(std::int64_t)>& body, Exec exec = Exec::Parallel);

}  // namespace kernels
}  // namespace ndschaos
