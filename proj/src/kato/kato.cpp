#include "ndschaos/kato.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>

#include "ndschaos/error.hpp"

namespace ndschaos {

namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr double kPlastic1 = 0.7548776662466927;
constexpr double kPlastic2 = 0.5698402909980532;
constexpr int kBitWindow = 16;

double frac(double v) { return v - std::floor(v); }

// Weyl sequences never hit 0 exactly for k >= 1, which keeps samples off the
// closed boundary of the box.
double weyl(double offset, double step, std::size_t k) { return frac(offset + static_cast<double>(k + 1) * step); }

std::vector<Point> real_samples(const Space& space, const OpenSetProbe& probe, std::uint64_t index, std::size_t m) {
  const auto& c = std::get<RealPoint>(probe.center);
  const double off1 = frac(static_cast<double>(index) * 1.4142135623730951);
  const double off2 = frac(static_cast<double>(index) * 1.7320508075688772);
  std::vector<Point> out;
  out.reserve(m);
  if (space.dimension() == 1) {
    const double lo = std::max(0.0, c.x[0] - probe.radius);
    const double hi = std::min(1.0, c.x[0] + probe.radius);
    for (std::size_t k = 0; k < m; ++k) out.push_back(real_point(lo + (hi - lo) * weyl(off1, kGolden, k)));
    return out;
  }
  // Box inscribed in the Euclidean ball.
  const double h = probe.radius / std::sqrt(2.0) * 0.999;
  const double lo0 = std::max(0.0, c.x[0] - h), hi0 = std::min(1.0, c.x[0] + h);
  const double lo1 = std::max(0.0, c.x[1] - h), hi1 = std::min(1.0, c.x[1] + h);
  for (std::size_t k = 0; k < m; ++k)
    out.push_back(real_point(lo0 + (hi0 - lo0) * weyl(off1, kPlastic1, k), lo1 + (hi1 - lo1) * weyl(off2, kPlastic2, k)));
  return out;
}

// Cylinder samples: keep the center on the symbols that pin the distance
// below the radius and fill the next kBitWindow symbols from a Weyl sequence.
std::vector<Point> symbolic_samples(const Space& space, const OpenSetProbe& probe, std::uint64_t index,
                                    std::size_t m) {
  const auto& c = std::get<SymbolicPoint>(probe.center);
  const bool two = space.kind == SpaceKind::ShiftTwoSided;
  // One-sided: agreement on [0, k) gives d <= 2^-k; two-sided on |i| < k
  // gives d <= 2^{1-k}. The window leaves the far tail equal to the center,
  // so the bound is strict.
  int k = 0;
  while ((two ? std::ldexp(1.0, 1 - k) : std::ldexp(1.0, -k)) > probe.radius) ++k;
  const double off1 = frac(static_cast<double>(index) * 1.4142135623730951);
  const double off2 = frac(static_cast<double>(index) * 1.7320508075688772);
  std::vector<Point> out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    auto bits = [&](double u) {
      const auto v = static_cast<std::uint32_t>(u * static_cast<double>(1u << kBitWindow));
      Word w(kBitWindow);
      for (int b = 0; b < kBitWindow; ++b) w[static_cast<std::size_t>(b)] = (v >> (kBitWindow - 1 - b)) & 1u;
      return w;
    };
    SymbolicPoint p = SymbolicPoint::splice(c, k, bits(weyl(off1, kGolden, j)));
    if (two) {
      Word left = bits(weyl(off2, kPlastic1, j));
      std::reverse(left.begin(), left.end());
      p = SymbolicPoint::splice(p, -k - kBitWindow + 1, left);
    }
    out.push_back(p);
  }
  return out;
}

// Orbits of all samples advanced together: layer n holds f_1^n of each.
class OrbitBundle {
 public:
  OrbitBundle(const NDSystem& sys, std::vector<Point> pts) : sys_(sys), pts_(std::move(pts)) {}
  void advance() {
    ++n_;
    for (auto& p : pts_) p = sys_.step(n_, p);
  }
  const std::vector<Point>& points() const { return pts_; }
  std::int64_t n() const { return n_; }

 private:
  const NDSystem& sys_;
  std::vector<Point> pts_;
  std::int64_t n_ = 0;
};

// Smallest d(u_i, v_j) and its pair; sorted scan for the interval.
std::pair<double, std::pair<std::size_t, std::size_t>> closest(const Space& space, const std::vector<Point>& u,
                                                               const std::vector<Point>& v) {
  double best = INFINITY;
  std::pair<std::size_t, std::size_t> at{0, 0};
  if (space.kind == SpaceKind::UnitInterval) {
    std::vector<std::pair<double, std::size_t>> sv(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) sv[j] = {std::get<RealPoint>(v[j]).x[0], j};
    std::sort(sv.begin(), sv.end());
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double x = std::get<RealPoint>(u[i]).x[0];
      auto it = std::lower_bound(sv.begin(), sv.end(), std::make_pair(x, std::size_t{0}));
      for (auto cand : {it, it == sv.begin() ? sv.end() : std::prev(it)}) {
        if (cand == sv.end()) continue;
        const double dd = std::fabs(x - cand->first);
        if (dd < best || (dd == best && std::make_pair(i, cand->second) < at)) {
          best = dd;
          at = {i, cand->second};
        }
      }
    }
    return {best, at};
  }
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double dd = distance(space, u[i], v[j]);
      if (dd < best) {
        best = dd;
        at = {i, j};
      }
    }
  return {best, at};
}

double max_separation(const NDSystem& sys, const OpenSetProbe& probe, std::uint64_t index, std::int64_t horizon,
                      std::size_t samples) {
  OrbitBundle b(sys, probe_samples(sys.space(), probe, index, samples));
  double best = 0.0;
  for (std::int64_t n = 1; n <= horizon; ++n) {
    b.advance();
    const auto& p = b.points();
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) best = std::max(best, distance(sys.space(), p[i], p[j]));
  }
  return best;
}

void check_probe(const Space& space, const OpenSetProbe& probe) {
  if (!(probe.radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "probe radius must be positive");
  require_in(space, probe.center);
}

}  // namespace

std::vector<Point> probe_samples(const Space& space, const OpenSetProbe& probe, std::uint64_t index, std::size_t m) {
  check_probe(space, probe);
  return space.symbolic() ? symbolic_samples(space, probe, index, m) : real_samples(space, probe, index, m);
}

std::vector<OpenSetProbe> probe_grid(const Space& space, std::size_t count, double radius) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "probe grid needs at least one probe");
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "probe radius must be positive");
  std::vector<OpenSetProbe> out;
  switch (space.kind) {
    case SpaceKind::UnitInterval:
      for (std::size_t i = 0; i < count; ++i)
        out.push_back({real_point((static_cast<double>(i) + 0.5) / static_cast<double>(count)), radius});
      break;
    case SpaceKind::UnitSquare: {
      const auto m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
      if (m * m != count) throw Error(ErrorKind::InvalidArgument, "square probe count must be a perfect square");
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          out.push_back({real_point((static_cast<double>(i) + 0.5) / static_cast<double>(m),
                                    (static_cast<double>(j) + 0.5) / static_cast<double>(m)),
                         radius});
      break;
    }
    case SpaceKind::ShiftOneSided:
    case SpaceKind::ShiftTwoSided: {
      int bits = 0;
      while ((std::size_t{1} << bits) < count) ++bits;
      if ((std::size_t{1} << bits) != count || bits > 16)
        throw Error(ErrorKind::InvalidArgument, "shift probe count must be a power of two <= 65536");
      for (std::size_t i = 0; i < count; ++i) {
        Word w(static_cast<std::size_t>(bits));
        for (int b = 0; b < bits; ++b) w[static_cast<std::size_t>(b)] = (i >> (bits - 1 - b)) & 1u;
        out.push_back({SymbolicPoint::splice(SymbolicPoint::constant(space.kind == SpaceKind::ShiftTwoSided, 0), 0, w),
                       radius});
      }
      break;
    }
  }
  return out;
}

double default_probe_radius(const Space& space) { return space.symbolic() ? 0.05 : 0.01; }

std::vector<OpenSetProbe> default_probes(const Space& space) {
  return probe_grid(space, 64, default_probe_radius(space));
}

std::vector<std::int64_t> n_set(const NDSystem& sys, const OpenSetProbe& U, std::uint64_t index, double delta,
                                std::int64_t horizon, std::size_t samples, NSetSign sign) {
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "n_set needs at least 2 samples");
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be >= 1");
  OrbitBundle b(sys, probe_samples(sys.space(), U, index, samples));
  std::vector<std::int64_t> out;
  for (std::int64_t n = 1; n <= horizon; ++n) {
    b.advance();
    const auto& p = b.points();
    bool hit = false;
    for (std::size_t i = 0; i < p.size() && !hit; ++i)
      for (std::size_t j = i + 1; j < p.size() && !hit; ++j) {
        const double dd = distance(sys.space(), p[i], p[j]);
        hit = sign == NSetSign::Below ? dd < delta : dd > delta;
      }
    if (hit) out.push_back(n);
  }
  return out;
}

SensitivityResult sensitivity_test(const NDSystem& sys, double delta, const std::vector<OpenSetProbe>& probes,
                                   std::int64_t horizon, std::size_t samples, Exec exec) {
  if (probes.empty()) throw Error(ErrorKind::EmptyInput, "no probes");
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "sensitivity needs at least 2 samples per probe");
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be >= 1");
  for (const auto& p : probes) check_probe(sys.space(), p);
  SensitivityResult r;
  r.separations.assign(probes.size(), 0.0);
  const auto m = static_cast<std::int64_t>(probes.size());
  if (exec == Exec::Serial) {
    for (std::int64_t i = 0; i < m; ++i) {
      const auto k = static_cast<std::size_t>(i);
      r.separations[k] = max_separation(sys, probes[k], k, horizon, samples);
    }
  } else {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < m; ++i) {
      const auto k = static_cast<std::size_t>(i);
      try {
        r.separations[k] = max_separation(sys, probes[k], k, horizon, samples);
      } catch (...) {
#pragma omp critical(ndschaos_kato_error)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  }
  const auto worst = std::min_element(r.separations.begin(), r.separations.end());
  r.worst_probe = static_cast<std::size_t>(worst - r.separations.begin());
  r.worst_separation = *worst;
  r.verdict = r.worst_separation > delta;
  return r;
}

AccessibilityResult accessibility_test(const NDSystem& sys, double eps, const OpenSetProbe& U,
                                       std::uint64_t u_index, const OpenSetProbe& V, std::uint64_t v_index,
                                       std::int64_t horizon, std::size_t samples) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "accessibility needs eps > 0");
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "accessibility needs samples >= 1");
  OrbitBundle bu(sys, probe_samples(sys.space(), U, u_index, samples));
  OrbitBundle bv(sys, probe_samples(sys.space(), V, v_index, samples));
  const auto xs = bu.points();
  const auto ys = bv.points();
  AccessibilityResult r;
  for (std::int64_t n = 1; n <= horizon; ++n) {
    bu.advance();
    bv.advance();
    const auto [dd, at] = closest(sys.space(), bu.points(), bv.points());
    if (dd < eps) {
      r.verdict = true;
      r.witness = AccessWitness{xs[at.first], ys[at.second], n, dd};
      return r;
    }
  }
  return r;
}

KatoResult kato_verdict(const NDSystem& sys, const KatoParams& params, Exec exec) {
  const auto probes = params.probes.empty() ? default_probes(sys.space()) : params.probes;
  KatoResult r;
  r.sensitivity = sensitivity_test(sys, params.delta, probes, params.horizon, params.sens_samples, exec);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < probes.size(); ++i)
    for (std::size_t j = i + 1; j < probes.size(); ++j) pairs.emplace_back(i, j);
  // Pairs are scanned in index order semantics: once some pair fails, later
  // pairs cannot change the verdict and are skipped. The reported failure is
  // the lowest failing index under either execution mode.
  std::vector<std::int64_t> hit(pairs.size(), 0);  // first n, 0 when none
  std::atomic<std::size_t> first_fail{pairs.size()};
  auto one = [&](std::size_t k) {
    if (k > first_fail.load()) return;
    const auto [i, j] = pairs[k];
    const auto a = accessibility_test(sys, params.eps, probes[i], i, probes[j], j, params.access_horizon,
                                      params.access_samples);
    hit[k] = a.verdict ? a.witness->n : 0;
    if (!a.verdict) {
      std::size_t cur = first_fail.load();
      while (k < cur && !first_fail.compare_exchange_weak(cur, k)) {
      }
    }
  };
  const auto np = static_cast<std::int64_t>(pairs.size());
  if (exec == Exec::Serial) {
    for (std::int64_t k = 0; k < np; ++k) one(static_cast<std::size_t>(k));
  } else {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t k = 0; k < np; ++k) {
      try {
        one(static_cast<std::size_t>(k));
      } catch (...) {
#pragma omp critical(ndschaos_kato_error)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  }
  const std::size_t fail = first_fail.load();
  r.accessible = fail == pairs.size();
  if (!r.accessible) r.access_failure = pairs[fail];
  r.access_pairs_checked = r.accessible ? pairs.size() : fail + 1;
  for (std::size_t k = 0; k < std::min(fail, pairs.size()); ++k) r.max_access_n = std::max(r.max_access_n, hit[k]);
  r.kato = r.sensitivity.verdict && r.accessible;
  return r;
}

}  // namespace ndschaos
