#include "ndschaos/dynamics.hpp"

#include <algorithm>

#include "ndschaos/error.hpp"

namespace ndschaos {

Point compose_segment(const NDSystem& sys, std::int64_t i, std::int64_t n, const Point& p) {
  if (i < 1) throw Error(ErrorKind::InvalidArgument, "segment start must be >= 1");
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "segment length must be >= 0");
  Point out = p;
  for (std::int64_t j = i; j < i + n; ++j) out = sys.step(j, out);
  return out;
}

OrbitTrace orbit(const NDSystem& sys, const Point& start, std::int64_t horizon) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "orbit horizon must be >= 1");
  require_in(sys.space(), start);
  OrbitTrace trace;
  trace.start = start;
  trace.horizon = horizon;
  trace.points.reserve(static_cast<std::size_t>(horizon) + 1);
  trace.points.push_back(start);
  for (std::int64_t n = 1; n <= horizon; ++n) trace.points.push_back(sys.step(n, trace.points.back()));
  return trace;
}

NDSystem iterate_system(const NDSystem& sys, std::int64_t k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "iterate order must be >= 1");
  if (k == 1) return sys;
  return NDSystem(sys.space(), IterateOf{std::make_shared<const NDSystem>(sys), k});
}

double uniform_convergence_gap(const NDSystem& sys, const MapSpec& limit, std::int64_t n,
                               std::span<const Point> grid) {
  if (grid.empty()) throw Error(ErrorKind::EmptyInput, "convergence grid is empty");
  limit.check_space(sys.space());
  double gap = 0.0;
  for (const auto& x : grid) {
    require_in(sys.space(), x);
    const Point fx = sys.step(n, x);
    const Point gx = detail::apply_unchecked(sys.space(), limit, x);
    gap = std::max(gap, distance(sys.space(), fx, gx));
  }
  return gap;
}

ResidueClass residue_subsequence(std::span<const std::int64_t> seq, std::int64_t n) {
  if (seq.empty()) throw Error(ErrorKind::EmptyInput, "residue extraction needs a nonempty sequence");
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "modulus must be >= 1");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] < 1) throw Error(ErrorKind::InvalidArgument, "sequence entries must be positive");
    if (i > 0 && seq[i] <= seq[i - 1])
      throw Error(ErrorKind::InvalidArgument, "sequence must be strictly increasing");
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(std::min<std::int64_t>(n, 1 << 20)), 0);
  // Pigeonhole over the residues that actually occur; n may exceed the length.
  std::int64_t best_r = -1;
  std::int64_t best_count = 0;
  if (static_cast<std::int64_t>(counts.size()) == n) {
    for (auto v : seq) ++counts[static_cast<std::size_t>(v % n)];
    for (std::int64_t r = 0; r < n; ++r) {
      if (counts[static_cast<std::size_t>(r)] > best_count) {
        best_count = counts[static_cast<std::size_t>(r)];
        best_r = r;
      }
    }
  } else {
    std::vector<std::int64_t> residues;
    residues.reserve(seq.size());
    for (auto v : seq) residues.push_back(v % n);
    std::sort(residues.begin(), residues.end());
    for (std::size_t i = 0; i < residues.size();) {
      std::size_t j = i;
      while (j < residues.size() && residues[j] == residues[i]) ++j;
      if (static_cast<std::int64_t>(j - i) > best_count) {
        best_count = static_cast<std::int64_t>(j - i);
        best_r = residues[i];
      }
      i = j;
    }
  }
  ResidueClass out;
  out.residue = best_r;
  for (auto v : seq) {
    if (v % n == best_r) {
      out.subsequence.push_back(v);
      out.quotients.push_back((v - best_r) / n);
    }
  }
  return out;
}

}  // namespace ndschaos
