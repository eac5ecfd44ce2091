#include "ndschaos/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ndschaos/error.hpp"
#include "ndschaos/kernels.hpp"

namespace ndschaos {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_n(const PairDistanceProfile& p, std::int64_t n) {
  if (n < 1 || n > p.horizon)
    throw Error(ErrorKind::HorizonExceeded,
                "n = " + std::to_string(n) + " outside the profile horizon " + std::to_string(p.horizon));
}

}  // namespace

PairDistanceProfile pair_profile(const NDSystem& sys, const Point& x, const Point& y, std::int64_t horizon) {
  return kernels::pair_profiles(sys, {{x, y}}, horizon, Exec::Serial).front();
}

PairDistanceProfile subsample(const PairDistanceProfile& full, const IndexRule& p) {
  if (p.stride < 1) throw Error(ErrorKind::InvalidArgument, "index rule stride must be >= 1");
  PairDistanceProfile out;
  out.diameter = full.diameter;
  for (std::int64_t k = 0; p.at(k) < full.horizon; ++k) out.d.push_back(full.d[static_cast<std::size_t>(p.at(k))]);
  out.horizon = static_cast<std::int64_t>(out.d.size());
  return out;
}

Ratio xi_n(const PairDistanceProfile& profile, double t, std::int64_t n) {
  check_n(profile, n);
  std::int64_t c = 0;
  for (std::int64_t i = 0; i < n; ++i) c += profile.d[static_cast<std::size_t>(i)] < t;
  return {c, n};
}

Ratio delta_n(const PairDistanceProfile& profile, double t, std::int64_t n) {
  check_n(profile, n);
  std::int64_t c = 0;
  for (std::int64_t i = 0; i < n; ++i) c += profile.d[static_cast<std::size_t>(i)] >= t;
  return {c, n};
}

std::vector<std::int64_t> Window::ns(std::int64_t horizon) const {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be >= 1");
  std::vector<std::int64_t> out;
  if (!checkpoints.empty()) {
    out = checkpoints;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (auto n : out)
      if (n < 1 || n > horizon)
        throw Error(ErrorKind::HorizonExceeded,
                    "checkpoint " + std::to_string(n) + " outside [1, " + std::to_string(horizon) + "]");
    return out;
  }
  if (!(tail > 0.0 && tail <= 1.0)) throw Error(ErrorKind::InvalidArgument, "window fraction must lie in (0, 1]");
  const auto first =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil((1.0 - tail) * static_cast<double>(horizon))));
  for (std::int64_t n = first; n <= horizon; ++n) out.push_back(n);
  return out;
}

std::string Window::describe() const {
  if (checkpoints.empty()) return "tail=" + num(tail);
  std::string s = "checkpoints=";
  for (std::size_t i = 0; i < checkpoints.size(); ++i) s += (i ? ";" : "") + std::to_string(checkpoints[i]);
  return s;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (points < 2 || !(lo > 0.0) || !(hi > lo)) throw Error(ErrorKind::EmptyGrid, "log grid needs 0 < lo < hi, >= 2 points");
  std::vector<double> g(points);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points < 2 || !(hi > lo)) throw Error(ErrorKind::EmptyGrid, "linear grid needs lo < hi, >= 2 points");
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

DistributionEstimate distribution_estimate(const PairDistanceProfile& profile, const std::vector<double>& t_grid,
                                           const Window& window) {
  if (t_grid.empty()) throw Error(ErrorKind::EmptyGrid, "t grid is empty");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw Error(ErrorKind::InvalidArgument, "t grid must increase");
  const auto ns = window.ns(profile.horizon);
  const auto counts = kernels::xi_counts(profile.d, t_grid, ns);
  DistributionEstimate est;
  est.t = t_grid;
  est.horizon = profile.horizon;
  est.diameter = profile.diameter;
  est.window = window;
  for (std::size_t a = 0; a < t_grid.size(); ++a) {
    Ratio lo{counts[a][0], ns[0]};
    Ratio hi = lo;
    for (std::size_t b = 1; b < ns.size(); ++b) {
      const Ratio r{counts[a][b], ns[b]};
      if (r < lo) lo = r;
      if (hi < r) hi = r;
    }
    est.lower.push_back(lo);
    est.upper.push_back(hi);
  }
  return est;
}

DistributionEstimate sequence_distribution_estimate(const PairDistanceProfile& full, const IndexRule& p,
                                                    const std::vector<double>& t_grid, const Window& window) {
  if (p.stride == 1) return distribution_estimate(full, t_grid, window);
  return distribution_estimate(subsample(full, p), t_grid, window);
}

IndexWindow IndexWindow::tail(std::int64_t horizon, double w) {
  if (!(w > 0.0 && w <= 1.0)) throw Error(ErrorKind::InvalidArgument, "window fraction must lie in (0, 1]");
  const auto begin = static_cast<std::int64_t>(std::floor((1.0 - w) * static_cast<double>(horizon)));
  return {std::min(begin, horizon - 1), horizon};
}

LiYorkeResult li_yorke_test(const PairDistanceProfile& profile, double eps_prox, double eps_sep,
                            const IndexWindow& window) {
  if (!(eps_prox > 0.0) || eps_prox > eps_sep)
    throw Error(ErrorKind::InvalidArgument, "Li-Yorke thresholds need 0 < eps_prox <= eps_sep");
  if (window.begin < 0 || window.end > profile.horizon || window.begin >= window.end)
    throw Error(ErrorKind::HorizonExceeded, "Li-Yorke window outside the profile");
  LiYorkeResult r;
  r.argmin = r.argmax = window.begin;
  r.min = r.max = profile.d[static_cast<std::size_t>(window.begin)];
  for (std::int64_t i = window.begin + 1; i < window.end; ++i) {
    const double v = profile.d[static_cast<std::size_t>(i)];
    if (v < r.min) {
      r.min = v;
      r.argmin = i;
    }
    if (v > r.max) {
      r.max = v;
      r.argmax = i;
    }
  }
  r.verdict = r.min < eps_prox && r.max > eps_sep;
  return r;
}

std::string Thresholds::describe() const {
  return "eps_zero=" + num(eps_zero) + " one_tol=" + num(one_tol) + " gap=" + num(gap) +
         " dc3=" + (dc3_literal ? "literal" : "conventional");
}

const char* to_string(ChaosFlag f) {
  switch (f) {
    case ChaosFlag::LiYorke: return "liyorke";
    case ChaosFlag::DC1: return "dc1";
    case ChaosFlag::DC2: return "dc2";
    case ChaosFlag::DC2Prime: return "dc2prime";
    case ChaosFlag::DC3: return "dc3";
  }
  return "?";
}

ChaosFlag parse_chaos_flag(const std::string& s) {
  for (auto f : {ChaosFlag::LiYorke, ChaosFlag::DC1, ChaosFlag::DC2, ChaosFlag::DC2Prime, ChaosFlag::DC3})
    if (s == to_string(f)) return f;
  throw Error(ErrorKind::InvalidArgument, "unknown chaos flag '" + s + "'");
}

const FlagResult& ChaosVerdict::flag(ChaosFlag f) const {
  switch (f) {
    case ChaosFlag::LiYorke: return li_yorke;
    case ChaosFlag::DC1: return dc1;
    case ChaosFlag::DC2: return dc2;
    case ChaosFlag::DC2Prime: return dc2prime;
    case ChaosFlag::DC3: return dc3;
  }
  return dc1;
}

ChaosVerdict classify_pair(const DistributionEstimate& est, const Thresholds& th) {
  if (est.t.empty()) throw Error(ErrorKind::EmptyGrid, "estimate has no t values");
  ChaosVerdict v;
  v.thresholds = th;
  v.horizon = est.horizon;
  v.window = est.window.describe();
  const std::size_t m = est.t.size();

  // Largest grid t with lower(t) <= eps_zero, and whether upper stays high /
  // positive across the whole grid.
  std::optional<std::size_t> zero_at;
  std::optional<std::size_t> positive_at;
  bool upper_one = true;
  bool upper_positive = true;
  std::optional<std::size_t> upper_one_fail;
  for (std::size_t a = 0; a < m; ++a) {
    const double lo = est.lower[a].value();
    const double hi = est.upper[a].value();
    if (lo <= th.eps_zero) zero_at = a;
    if (lo > th.eps_zero && !positive_at) positive_at = a;
    if (hi < 1.0 - th.one_tol) {
      upper_one = false;
      if (!upper_one_fail) upper_one_fail = a;
    }
    if (!(hi > th.eps_zero)) upper_positive = false;
  }

  v.dc1.evaluated = true;
  v.dc1.verdict = zero_at.has_value() && upper_one;
  if (zero_at) v.dc1.witness_t = est.t[*zero_at];
  if (upper_one_fail) v.dc1.note = "upper below 1 - one_tol at t=" + num(est.t[*upper_one_fail]);

  // For t above the diameter every xi_n is 1, so lower(t) = 1 > eps_zero
  // without evaluating.
  v.dc2.evaluated = true;
  v.dc2.verdict = upper_one;
  if (positive_at) {
    v.dc2.witness_t = est.t[*positive_at];
  } else {
    v.dc2.witness_t = 2.0 * est.diameter;
    v.dc2.note = "witness t beyond the diameter";
  }

  v.dc2prime.evaluated = true;
  v.dc2prime.verdict = zero_at.has_value() && upper_positive;
  if (zero_at) v.dc2prime.witness_t = est.t[*zero_at];

  // DC3: longest run of >= 2 consecutive grid points with a gap.
  v.dc3.evaluated = true;
  std::size_t best_begin = 0;
  std::size_t best_len = 0;
  std::size_t run = 0;
  for (std::size_t a = 0; a < m; ++a) {
    const double lo = est.lower[a].value();
    const double hi = est.upper[a].value();
    const bool ok = lo + th.gap <= hi && (!th.dc3_literal || hi >= 1.0 - th.one_tol);
    run = ok ? run + 1 : 0;
    if (run > best_len) {
      best_len = run;
      best_begin = a + 1 - run;
    }
  }
  v.dc3.verdict = best_len >= 2;
  if (best_len >= 2) {
    v.dc3.interval = std::make_pair(est.t[best_begin], est.t[best_begin + best_len - 1]);
    v.dc3.witness_t = est.t[best_begin];
  }
  return v;
}

ChaosVerdict classify_profile(const PairDistanceProfile& profile, const std::vector<double>& t_grid,
                              const Window& window, const Thresholds& th, const LiYorkeParams& ly) {
  ChaosVerdict v = classify_pair(distribution_estimate(profile, t_grid, window), th);
  const IndexWindow iw = ly.range ? *ly.range : IndexWindow::tail(profile.horizon, ly.window);
  const auto r = li_yorke_test(profile, ly.eps_prox, ly.eps_sep, iw);
  v.li_yorke.evaluated = true;
  v.li_yorke.verdict = r.verdict;
  v.li_yorke.note = "min=" + num(r.min) + "@" + std::to_string(r.argmin) + " max=" + num(r.max) + "@" +
                    std::to_string(r.argmax);
  return v;
}

ScanResult scrambled_scan(const NDSystem& sys, const std::vector<Point>& candidates, const ScanParams& params) {
  if (candidates.size() < 2) throw Error(ErrorKind::InvalidArgument, "scan needs at least 2 candidates");
  const std::size_t m = candidates.size();
  std::vector<std::pair<Point, Point>> pairs;
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      pairs.emplace_back(candidates[i], candidates[j]);
      index.emplace_back(i, j);
    }
  const auto profiles = kernels::pair_profiles(sys, pairs, params.horizon);
  ScanResult out;
  out.size = m;
  out.verdicts.assign(m, std::vector<std::optional<ChaosVerdict>>(m));
  std::vector<std::vector<bool>> lower_zero(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto prof = params.p.stride == 1 ? profiles[k] : subsample(profiles[k], params.p);
    const auto est = distribution_estimate(prof, params.t_grid, params.window);
    ChaosVerdict v = classify_pair(est, params.thresholds);
    if (params.flag == ChaosFlag::LiYorke) {
      const IndexWindow iw = params.li_yorke.range ? *params.li_yorke.range
                                                   : IndexWindow::tail(prof.horizon, params.li_yorke.window);
      const auto r = li_yorke_test(prof, params.li_yorke.eps_prox, params.li_yorke.eps_sep, iw);
      v.li_yorke.evaluated = true;
      v.li_yorke.verdict = r.verdict;
    }
    for (const auto& lo : est.lower) lower_zero[k].push_back(lo.value() <= params.thresholds.eps_zero);
    out.verdicts[index[k].first][index[k].second] = std::move(v);
  }
  auto flagged = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return out.verdicts[i][j]->flag(params.flag).verdict;
  };
  // Greedy from every seed vertex; keep the largest (earliest seed on ties).
  std::vector<std::size_t> clique;
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<std::size_t> c{s};
    for (std::size_t i = 0; i < m; ++i)
      if (i != s && std::all_of(c.begin(), c.end(), [&](std::size_t q) { return flagged(q, i); })) c.push_back(i);
    if (c.size() > clique.size()) clique = std::move(c);
  }
  std::sort(clique.begin(), clique.end());
  if (clique.size() < 2) return out;
  out.clique = clique;
  for (std::size_t a = params.t_grid.size(); a-- > 0;) {
    bool all = true;
    for (std::size_t k = 0; k < pairs.size() && all; ++k) {
      const auto [i, j] = index[k];
      if (std::binary_search(clique.begin(), clique.end(), i) && std::binary_search(clique.begin(), clique.end(), j))
        all = lower_zero[k][a];
    }
    if (all) {
      out.uniform_eps = params.t_grid[a];
      break;
    }
  }
  return out;
}

}  // namespace ndschaos
