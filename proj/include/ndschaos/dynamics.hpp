#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ndschaos/system.hpp"

namespace ndschaos {

// f_i^n(p) = f_{i+n-1} o ... o f_i (p); f_i^0 is the identity.
Point compose_segment(const NDSystem& sys, std::int64_t i, std::int64_t n, const Point& p);

struct OrbitTrace {
  Point start;
  std::int64_t horizon = 0;
  std::vector<Point> points;  // points[n] = f_1^n(start), n = 0..horizon
};

OrbitTrace orbit(const NDSystem& sys, const Point& start, std::int64_t horizon);

// The k-th iterate system whose n-th map is f_{k(n-1)+1}^k.
NDSystem iterate_system(const NDSystem& sys, std::int64_t k);

// max over grid of d(f_n(x), limit(x)).
double uniform_convergence_gap(const NDSystem& sys, const MapSpec& limit, std::int64_t n,
                               std::span<const Point> grid);

struct ResidueClass {
  std::int64_t residue = 0;
  std::vector<std::int64_t> subsequence;
  std::vector<std::int64_t> quotients;
};

// Largest residue class of `seq` modulo n (smallest residue on ties), with
// entries written as n * q + r.
ResidueClass residue_subsequence(std::span<const std::int64_t> seq, std::int64_t n);

}  // namespace ndschaos
