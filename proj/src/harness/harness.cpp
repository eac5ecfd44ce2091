#include "ndschaos/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "ndschaos/dynamics.hpp"
#include "ndschaos/error.hpp"
#include "ndschaos/kernels.hpp"

namespace ndschaos {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string str(std::int64_t v) { return std::to_string(v); }

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Running counts: below[n] = #{i < n : d_i < t}, n = 0..size.
std::vector<std::int64_t> prefix_below(const std::vector<double>& d, double t) {
  std::vector<std::int64_t> c(d.size() + 1, 0);
  for (std::size_t i = 0; i < d.size(); ++i) c[i + 1] = c[i] + (d[i] < t);
  return c;
}

std::vector<Point> convergence_grid(const Space& space) {
  std::vector<Point> g;
  if (space.symbolic()) {
    for (const auto& p : default_probes(space)) g.push_back(p.center);
  } else if (space.dimension() == 1) {
    for (int i = 0; i <= 100; ++i) g.push_back(real_point(i / 100.0));
    // Dyadic points near the ends catch features that shrink with n.
    for (int j = 4; j <= 30; ++j) {
      g.push_back(real_point(std::ldexp(1.0, -j)));
      g.push_back(real_point(1.0 - std::ldexp(1.0, -j)));
    }
  } else {
    for (int i = 0; i <= 10; ++i)
      for (int j = 0; j <= 10; ++j) g.push_back(real_point(i / 10.0, j / 10.0));
  }
  return g;
}

std::string verdict_line(const ChaosVerdict& v) {
  auto b = [](const FlagResult& f) { return f.evaluated ? (f.verdict ? "1" : "0") : "-"; };
  return std::string("liyorke=") + b(v.li_yorke) + " dc1=" + b(v.dc1) + " dc2=" + b(v.dc2) +
         " dc2prime=" + b(v.dc2prime) + " dc3=" + b(v.dc3);
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::HypothesisUnmet: return "hypothesis-unmet";
    case CheckStatus::Info: return "info";
    case CheckStatus::Exploratory: return "exploratory";
  }
  return "?";
}

void ExperimentReport::add(std::string name, CheckStatus status, std::string detail) {
  checks.push_back({std::move(name), status, std::move(detail)});
}

CheckStatus ExperimentReport::overall() const {
  bool unmet = false, any_pass = false, any_exploratory = false;
  for (const auto& c : checks) {
    if (c.status == CheckStatus::Fail) return CheckStatus::Fail;
    unmet |= c.status == CheckStatus::HypothesisUnmet;
    any_pass |= c.status == CheckStatus::Pass;
    any_exploratory |= c.status == CheckStatus::Exploratory;
  }
  if (unmet) return CheckStatus::HypothesisUnmet;
  if (any_exploratory && !any_pass) return CheckStatus::Exploratory;
  return CheckStatus::Pass;
}

std::string ExperimentReport::serialize() const {
  std::ostringstream os;
  os << "experiment " << id << "\n";
  os << "system " << system << "\n";
  for (const auto& [k, v] : parameters) os << "param " << k << " " << v << "\n";
  for (const auto& c : checks) os << "check " << to_string(c.status) << " " << c.name << " | " << c.detail << "\n";
  os << "overall " << to_string(overall()) << "\n";
  return os.str();
}

std::string ConvergenceCheck::describe() const {
  if (!has_limit) return "no known limit map";
  std::string s;
  for (const auto& [n, g] : gaps) s += (s.empty() ? "" : " ") + std::string("gap@") + str(n) + "=" + num(g);
  return s;
}

ConvergenceCheck check_uniform_convergence(const NDSystem& sys, double tol) {
  ConvergenceCheck c;
  const auto limit = sys.limit();
  if (!limit) return c;
  c.has_limit = true;
  const auto grid = convergence_grid(sys.space());
  for (std::int64_t n : {10, 100, 1000}) c.gaps.emplace_back(n, uniform_convergence_gap(sys, *limit, n, grid));
  c.decays = c.gaps.back().second <= tol;
  for (std::size_t i = 1; i < c.gaps.size(); ++i) c.decays = c.decays && c.gaps[i].second <= c.gaps[i - 1].second;
  return c;
}

// ---------------------------------------------------------------------------

ExperimentReport run_liyorke_invariance(const NDSystem& sys, std::int64_t k, const LiYorkeInvarianceParams& p) {
  ExperimentReport r;
  r.id = "liyorke-invariance";
  r.system = sys.describe();
  r.param("k", str(k));
  r.param("pairs", str(static_cast<std::int64_t>(p.pairs)));
  r.param("horizon", str(p.horizon));
  r.param("seed", std::to_string(p.seed));
  r.param("eps_prox", num(p.eps_prox));
  r.param("eps_sep", num(p.eps_sep));
  r.param("window", num(p.window));
  r.param("min_rate", num(p.min_rate));
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "iterate order must be >= 1");
  if (sys.space().symbolic()) throw Error(ErrorKind::UnsupportedSystem, "pair sampling needs a real space");

  const auto conv = check_uniform_convergence(sys);
  // Pointwise convergence suffices here; a known limit with vanishing gap
  // on the grid stands in for it.
  if (!conv.has_limit || !conv.decays) {
    r.add("convergence", CheckStatus::HypothesisUnmet, conv.describe());
    return r;
  }
  r.add("convergence", CheckStatus::Info, conv.describe());

  std::mt19937_64 rng(p.seed);
  std::vector<std::pair<Point, Point>> pairs;
  const int dim = sys.space().dimension();
  for (std::size_t i = 0; i < p.pairs; ++i) {
    const double a = unit_double(rng), b = unit_double(rng);
    if (dim == 1) {
      pairs.emplace_back(real_point(a), real_point(b));
    } else {
      const double c = unit_double(rng), d = unit_double(rng);
      pairs.emplace_back(real_point(a, c), real_point(b, d));
    }
  }

  const auto iter = iterate_system(sys, k);
  const std::int64_t N = p.horizon;
  // Per pair: base@N, iterate@N (k N base steps), base@kN.
  std::vector<std::array<bool, 3>> flags(pairs.size());
  kernels::for_each_index(static_cast<std::int64_t>(pairs.size()), [&](std::int64_t i) {
    const auto& [x, y] = pairs[static_cast<std::size_t>(i)];
    auto base = pair_profile(sys, x, y, k * N);
    const auto it = pair_profile(iter, x, y, N);
    const bool long_base = li_yorke_test(base, p.eps_prox, p.eps_sep, IndexWindow::tail(k * N, p.window)).verdict;
    base.d.resize(static_cast<std::size_t>(N));
    base.horizon = N;
    flags[static_cast<std::size_t>(i)] = {
        li_yorke_test(base, p.eps_prox, p.eps_sep, IndexWindow::tail(N, p.window)).verdict,
        li_yorke_test(it, p.eps_prox, p.eps_sep, IndexWindow::tail(N, p.window)).verdict, long_base};
  });

  std::int64_t fwd_flagged = 0, fwd_kept = 0, bwd_flagged = 0, bwd_kept = 0;
  for (const auto& f : flags) {
    if (f[0]) {
      ++fwd_flagged;
      fwd_kept += f[1];
    }
    if (f[1]) {
      ++bwd_flagged;
      bwd_kept += f[2];
    }
  }
  auto rate_check = [&](const std::string& name, std::int64_t flagged, std::int64_t kept) {
    if (flagged == 0) {
      r.add(name, CheckStatus::Pass, "vacuous: no flagged pairs");
      return;
    }
    const double rate = static_cast<double>(kept) / static_cast<double>(flagged);
    r.add(name, rate >= p.min_rate,
          str(kept) + "/" + str(flagged) + " preserved, rate=" + num(rate) + " (need >= " + num(p.min_rate) + ")");
  };
  rate_check("forward base->iterate", fwd_flagged, fwd_kept);
  rate_check("backward iterate->base", bwd_flagged, bwd_kept);

  for (std::size_t i = 0; i < std::min(p.artifact_pairs, pairs.size()); ++i) {
    const auto& [x, y] = pairs[i];
    const LiYorkeParams ly{p.eps_prox, p.eps_sep, p.window, std::nullopt};
    const Window win = Window::tail_fraction(p.window);
    const auto base = pair_profile(sys, x, y, N);
    const auto it = pair_profile(iter, x, y, N);
    const std::string id = "pair" + str(static_cast<std::int64_t>(i));
    r.artifacts.push_back({id + "-base", base, distribution_estimate(base, p.t_grid, win),
                           classify_profile(base, p.t_grid, win, p.thresholds, ly)});
    r.artifacts.push_back({id + "-k" + str(k), it, distribution_estimate(it, p.t_grid, win),
                           classify_profile(it, p.t_grid, win, p.thresholds, ly)});
  }
  return r;
}

// ---------------------------------------------------------------------------

double estimate_modulus(const NDSystem& sys, std::int64_t N, double s, std::int64_t probe_n) {
  if (sys.space().symbolic()) throw Error(ErrorKind::UnsupportedSystem, "modulus estimation needs a real space");
  if (!(s > 0.0)) throw Error(ErrorKind::InvalidArgument, "s must be positive");
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 1; n <= probe_n; ++n) ns.push_back(n);
  for (std::int64_t n : {100, 1000, 10000})
    if (n > probe_n) ns.push_back(n);
  const Space& sp = sys.space();
  auto make = [&](double u) {
    return sp.dimension() == 1 ? real_point(u) : real_point(u, u * 0.6180339887498949);
  };
  for (int j = 1; j <= 60; ++j) {
    const double p = std::ldexp(s, -j);
    bool ok = true;
    for (int xi = 0; xi <= 2000 && ok; ++xi) {
      const double u = xi / 2000.0;
      const double v = u + 0.999 * p <= 1.0 ? u + 0.999 * p : u - 0.999 * p;
      for (auto n : ns) {
        Point a = make(u), b = make(v);
        for (std::int64_t i = 1; i <= N && ok; ++i) {
          a = sys.step(n + i - 1, a);
          b = sys.step(n + i - 1, b);
          ok = distance(sp, a, b) < s;
        }
        if (!ok) break;
      }
    }
    if (ok) return p;
  }
  return 0.0;
}

ExperimentReport run_dc2prime_invariance(const NDSystem& sys, std::int64_t N, const Dc2PrimeParams& p) {
  ExperimentReport r;
  r.id = "dc2prime-invariance";
  r.system = sys.describe();
  r.param("N", str(N));
  r.param("x", describe(p.x));
  r.param("y", describe(p.y));
  r.param("horizon", str(p.horizon));
  r.param("window", p.window.describe());
  r.param("thresholds", p.thresholds.describe());
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "iterate order must be >= 1");
  if (p.horizon < N) throw Error(ErrorKind::HorizonTooSmall, "horizon shorter than one iterate step");

  const auto conv = check_uniform_convergence(sys);
  if (!conv.has_limit || !conv.decays) {
    r.add("uniform convergence", CheckStatus::HypothesisUnmet, conv.describe());
    return r;
  }
  r.add("uniform convergence", CheckStatus::Info, conv.describe());

  const auto iter = iterate_system(sys, N);
  const auto base = pair_profile(sys, p.x, p.y, p.horizon);
  const std::int64_t itH = p.horizon / N;
  const auto it = pair_profile(iter, p.x, p.y, itH);

  // Floor relation at every n <= horizon and every t.
  std::int64_t checked = 0, bad = 0;
  std::string first_bad;
  for (double t : p.t_grid) {
    const auto cb = prefix_below(base.d, t);
    const auto ci = prefix_below(it.d, t);
    for (std::int64_t n = 1; n <= p.horizon; ++n) {
      ++checked;
      const std::int64_t m = n / N;
      if (ci[static_cast<std::size_t>(m)] > cb[static_cast<std::size_t>(n)]) {
        if (bad++ == 0) first_bad = "n=" + str(n) + " t=" + num(t);
      }
    }
  }
  r.add("floor count relation", bad == 0,
        str(checked) + " (n,t) cases, " + str(bad) + " violations" + (bad ? ", first " + first_bad : ""));

  // Modulus relation at every n with N n <= horizon.
  for (double s : p.s_grid) {
    const double mod = estimate_modulus(sys, N, s, p.modulus_probe_n);
    const auto ci = prefix_below(it.d, s);
    const auto cb = prefix_below(base.d, mod);
    std::int64_t cases = 0, viol = 0;
    for (std::int64_t n = 1; n <= itH; ++n) {
      ++cases;
      const std::int64_t it_far = n - ci[static_cast<std::size_t>(n)];
      const std::int64_t base_far = N * n - cb[static_cast<std::size_t>(N * n)];
      viol += N * (it_far - 1) > base_far;
    }
    r.add("modulus relation s=" + num(s), viol == 0,
          "p=" + num(mod) + ", " + str(cases) + " checkpoints, " + str(viol) + " violations");
  }

  const auto eb = distribution_estimate(base, p.t_grid, p.window);
  const auto ei = distribution_estimate(it, p.t_grid, p.window);
  const auto vb = classify_pair(eb, p.thresholds);
  const auto vi = classify_pair(ei, p.thresholds);
  r.add("dc2prime verdicts", CheckStatus::Info,
        std::string("base=") + (vb.dc2prime.verdict ? "1" : "0") + " iterate=" + (vi.dc2prime.verdict ? "1" : "0") +
            (vb.dc2prime.verdict == vi.dc2prime.verdict ? " (agree)" : " (differ at this horizon)"));
  r.artifacts.push_back({"base", base, eb, vb});
  r.artifacts.push_back({"iterate-" + str(N), it, ei, vi});
  return r;
}

// ---------------------------------------------------------------------------

ExperimentReport run_kato_invariance(const NDSystem& sys, const std::vector<std::int64_t>& ks, const KatoParams& p) {
  ExperimentReport r;
  r.id = "kato-invariance";
  r.system = sys.describe();
  std::string kl;
  for (auto k : ks) kl += (kl.empty() ? "" : ",") + str(k);
  r.param("k", kl);
  r.param("delta", num(p.delta));
  r.param("eps", num(p.eps));
  r.param("horizon", str(p.horizon));
  r.param("sens_samples", str(static_cast<std::int64_t>(p.sens_samples)));
  r.param("access_horizon", str(p.access_horizon));
  r.param("access_samples", str(static_cast<std::int64_t>(p.access_samples)));
  r.param("probes", p.probes.empty() ? "default" : str(static_cast<std::int64_t>(p.probes.size())));

  if (!sys.finitely_generated()) {
    const auto conv = check_uniform_convergence(sys);
    if (!conv.has_limit || !conv.decays) {
      r.add("finitely generated or uniformly convergent", CheckStatus::HypothesisUnmet, conv.describe());
      return r;
    }
    r.add("uniform convergence", CheckStatus::Info, conv.describe());
  } else {
    r.add("finitely generated", CheckStatus::Info, "yes");
  }

  auto describe_kato = [](const KatoResult& k) {
    return std::string("kato=") + (k.kato ? "1" : "0") + " sensitive=" + (k.sensitivity.verdict ? "1" : "0") +
           " (min separation " + num(k.sensitivity.worst_separation) + " at probe " +
           str(static_cast<std::int64_t>(k.sensitivity.worst_probe)) + ") accessible=" + (k.accessible ? "1" : "0") +
           " (" + str(static_cast<std::int64_t>(k.access_pairs_checked)) + " probe pairs, latest first hit n=" +
           str(k.max_access_n) + ")";
  };
  const auto base = kato_verdict(sys, p);
  r.add("base", CheckStatus::Info, describe_kato(base));
  for (auto k : ks) {
    const auto it = kato_verdict(iterate_system(sys, k), p);
    r.add("iterate k=" + str(k), it.kato == base.kato,
          describe_kato(it) + (it.kato == base.kato ? "" : " (differs from base; not detected at this resolution)"));
  }
  return r;
}

// ---------------------------------------------------------------------------

ExperimentReport run_sequence_chaos_construction(const SequenceChaosParams& p) {
  ExperimentReport r;
  r.id = "sequence-chaos";
  const auto c = sequence_construction(p.horizon, p.r0);
  const auto sys = c.system();
  r.system = sys.describe();
  r.param("horizon", str(p.horizon));
  r.param("count", str(static_cast<std::int64_t>(p.count)));
  r.param("seed", std::to_string(p.seed));
  r.param("r0", num(p.r0));
  r.param("symbols_per_step", str(c.L));
  r.param("radii", "r_j = r0/(j+1)");

  const std::size_t blocks = c.layout.blocks_within(p.horizon);
  const auto E = sample_E(p.count, blocks, p.seed);
  std::vector<SymbolicPoint> xs;
  for (const auto& w : E) xs.push_back(selector_point(c, w));

  // Hypothesis: the orbit of each x_c visits the chosen ball at every step.
  const auto A = c.A();
  const auto B = c.B();
  std::vector<std::int64_t> miss(xs.size(), -1);
  kernels::for_each_index(static_cast<std::int64_t>(xs.size()), [&](std::int64_t i) {
    const auto& w = E[static_cast<std::size_t>(i)];
    Point cur = xs[static_cast<std::size_t>(i)];
    for (std::int64_t j = 0; j < p.horizon; ++j) {
      const auto& fam = w[c.layout.block_of(j)] == 0 ? A : B;
      if (!fam.contains(sys.space(), cur, j)) {
        miss[static_cast<std::size_t>(i)] = j;
        return;
      }
      cur = sys.step(j + 1, cur);
    }
  });
  const auto first_miss = std::find_if(miss.begin(), miss.end(), [](std::int64_t m) { return m >= 0; });
  r.add("selector membership", first_miss == miss.end(),
        first_miss == miss.end() ? str(static_cast<std::int64_t>(xs.size())) + " points x " + str(p.horizon) + " steps"
                                 : "point " + str(first_miss - miss.begin()) + " leaves its ball at step " +
                                       str(*first_miss));

  std::vector<std::pair<Point, Point>> pairs;
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      pairs.emplace_back(xs[i], xs[j]);
      idx.emplace_back(i, j);
    }
  const auto profiles = kernels::pair_profiles(sys, pairs, p.horizon);
  const double delta = 2.0 * A.radius(p.horizon);
  const double eps = symbolic_distance(std::get<SymbolicPoint>(c.center_a()), std::get<SymbolicPoint>(c.center_b())) / 2;
  r.param("delta", num(delta));
  r.param("eps", num(eps));

  for (std::size_t n = 0; n < blocks; ++n) {
    const std::int64_t cp = factorial(static_cast<int>(n) + 1);
    if (cp > p.horizon) break;
    const std::int64_t prev = factorial(static_cast<int>(n));
    std::int64_t prox = 0, prox_ok = 0, sep = 0, sep_ok = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = idx[k];
      if (E[i][n] == E[j][n]) {
        ++prox;
        prox_ok += xi_n(profiles[k], delta, cp).count >= cp - prev;
      } else {
        ++sep;
        sep_ok += xi_n(profiles[k], eps, cp).count <= prev;
      }
    }
    const std::string bounds = "xi(delta) >= " + str(cp - prev) + "/" + str(cp) + " = 1-1/" + str(static_cast<std::int64_t>(n) + 1) +
                               "; xi(eps) <= " + str(prev) + "/" + str(cp) + " = 1/" + str(static_cast<std::int64_t>(n) + 1);
    r.add("checkpoint " + str(cp), prox_ok == prox && sep_ok == sep,
          bounds + "; proximity " + str(prox_ok) + "/" + str(prox) + ", separation " + str(sep_ok) + "/" + str(sep));
  }

  // One eps for all pairs: every pair has a separation checkpoint.
  std::int64_t with_sep = 0;
  for (const auto& [i, j] : idx) {
    bool any = false;
    for (std::size_t n = 0; n < blocks; ++n) any |= E[i][n] != E[j][n];
    with_sep += any;
  }
  r.add("uniform eps", with_sep == static_cast<std::int64_t>(idx.size()),
        "eps=" + num(eps) + " separates " + str(with_sep) + "/" + str(static_cast<std::int64_t>(idx.size())) + " pairs");

  std::int64_t ly = 0;
  for (const auto& prof : profiles)
    ly += li_yorke_test(prof, delta, eps / 2, IndexWindow{0, p.horizon}).verdict;
  r.add("li-yorke pairs", ly == static_cast<std::int64_t>(profiles.size()),
        str(ly) + "/" + str(static_cast<std::int64_t>(profiles.size())) + " pairs with min < delta and max > eps/2");

  std::vector<std::int64_t> cps;
  for (int n = 1; factorial(n) <= p.horizon; ++n) cps.push_back(factorial(n));
  const Window win = Window::at(cps);
  for (std::size_t k = 0; k < std::min(p.artifact_pairs, pairs.size()); ++k) {
    auto est = distribution_estimate(profiles[k], p.t_grid, win);
    auto v = classify_pair(est, p.thresholds);
    const auto l = li_yorke_test(profiles[k], delta, eps / 2, IndexWindow{0, p.horizon});
    v.li_yorke.evaluated = true;
    v.li_yorke.verdict = l.verdict;
    r.artifacts.push_back({"E" + str(static_cast<std::int64_t>(idx[k].first)) + "-E" +
                               str(static_cast<std::int64_t>(idx[k].second)),
                           profiles[k], std::move(est), std::move(v)});
  }
  return r;
}

// ---------------------------------------------------------------------------

ExperimentReport run_dc3_counterexample(const Dc3Params& p) {
  ExperimentReport r;
  r.id = "dc3-counterexample";
  const auto sys = build_counterexample();
  r.system = sys.describe();
  r.param("horizon", str(p.horizon));
  std::string lay, cps;
  for (auto v : p.layout) lay += (lay.empty() ? "" : ";") + str(v);
  for (auto v : p.checkpoints) cps += (cps.empty() ? "" : ";") + str(v);
  r.param("pair_blocks", lay);
  r.param("checkpoints", cps);
  r.param("identity_n", str(p.identity_n));
  r.param("seed", std::to_string(p.seed));
  r.param("thresholds", p.thresholds.describe());
  if (p.horizon < 720) throw Error(ErrorKind::HorizonTooSmall, "the counterexample run needs horizon >= 720");

  // (a) f_1^{2n} = id, exactly.
  std::int64_t bad = 0;
  for (const auto& pt : sample_points(sys.space(), p.identity_points, p.seed)) {
    const auto& x = std::get<SymbolicPoint>(pt);
    Point cur = x;
    for (std::int64_t n = 1; n <= p.identity_n; ++n) {
      cur = sys.step(2 * n - 1, cur);
      cur = sys.step(2 * n, cur);
      bad += !(std::get<SymbolicPoint>(cur) == x);
    }
  }
  r.add("(a) even compositions are the identity", bad == 0,
        str(static_cast<std::int64_t>(p.identity_points)) + " points, n=1.." + str(p.identity_n) + ", " + str(bad) +
            " mismatches");

  const auto [z, w] = dc1_pair_for_shift(p.horizon, BlockLayout(p.layout));
  const auto prof = pair_profile(sys, z, w, p.horizon);
  const Window win = Window::at(p.checkpoints);
  const auto est = distribution_estimate(prof, p.t_grid, win);
  auto v = classify_pair(est, p.thresholds);
  Thresholds conv_th = p.thresholds;
  conv_th.dc3_literal = false;
  const auto vc = classify_pair(est, conv_th);

  // (b) DC3 on the base with a plateau lower ~ 1/2, upper ~ 1 inside J.
  std::string plateau = "none";
  bool has_plateau = false;
  if (v.dc3.interval) {
    std::size_t run = 0;
    for (std::size_t a = 0; a < est.t.size(); ++a) {
      const bool in_j = est.t[a] >= v.dc3.interval->first && est.t[a] <= v.dc3.interval->second;
      const bool ok = in_j && est.lower[a].value() <= 0.5 + p.thresholds.eps_zero &&
                      est.upper[a].value() >= 1.0 - p.thresholds.one_tol;
      run = ok ? run + 1 : 0;
      if (run == 2) {
        has_plateau = true;
        plateau = "t=" + num(est.t[a - 1]) + ": lower=" + num(est.lower[a - 1].value()) +
                  " upper=" + num(est.upper[a - 1].value());
      }
    }
  }
  r.add("(b) base is DC3", v.dc3.verdict && vc.dc3.verdict && has_plateau,
        std::string("literal=") + (v.dc3.verdict ? "1" : "0") + " conventional=" + (vc.dc3.verdict ? "1" : "0") +
            (v.dc3.interval ? " J=[" + num(v.dc3.interval->first) + ", " + num(v.dc3.interval->second) + "]" : "") +
            " plateau " + plateau);

  // (c) second iterate: constant profile, no DC3.
  const auto it = iterate_system(sys, 2);
  const std::int64_t itH = p.horizon / 2;
  const auto iprof = pair_profile(it, z, w, itH);
  std::vector<std::int64_t> icp;
  for (auto cpt : p.checkpoints) icp.push_back(std::max<std::int64_t>(1, cpt / 2));
  const auto iest = distribution_estimate(iprof, p.t_grid, Window::at(icp));
  auto iv = classify_pair(iest, p.thresholds);
  const auto ily = li_yorke_test(iprof, p.li_yorke.eps_prox, p.li_yorke.eps_sep, IndexWindow::tail(itH, p.li_yorke.window));
  iv.li_yorke.evaluated = true;
  iv.li_yorke.verdict = ily.verdict;
  const auto ivc = classify_pair(iest, conv_th);
  const bool constant = std::all_of(iprof.d.begin(), iprof.d.end(), [&](double d) { return d == iprof.d[0]; });
  r.add("(c) second iterate is not DC3", !iv.dc3.verdict && !ivc.dc3.verdict,
        std::string("constant profile=") + (constant ? "1" : "0") + " d=" + num(iprof.d[0]) + " " + verdict_line(iv));

  // (d), (e)
  const IndexWindow lyw = p.li_yorke.range ? *p.li_yorke.range : IndexWindow::tail(p.horizon, p.li_yorke.window);
  const auto ly = li_yorke_test(prof, p.li_yorke.eps_prox, p.li_yorke.eps_sep, lyw);
  v.li_yorke.evaluated = true;
  v.li_yorke.verdict = ly.verdict;
  r.add("(d) base is Li-Yorke", ly.verdict,
        "min=" + num(ly.min) + " at " + str(ly.argmin) + ", max=" + num(ly.max) + " at " + str(ly.argmax));
  r.add("(e) base is not DC1", !v.dc1.verdict, v.dc1.note.empty() ? verdict_line(v) : v.dc1.note);

  // Same experiment on the factorial witness pair, for comparison only.
  const auto [fz, fw] = dc1_pair_for_shift(p.horizon);
  const auto fprof = pair_profile(sys, fz, fw, p.horizon);
  const auto fest = distribution_estimate(fprof, p.t_grid, Window::at({720, p.horizon}));
  const auto fv = classify_pair(fest, p.thresholds);
  std::string fdetail = verdict_line(fv);
  for (std::size_t a = 0; a < fest.t.size(); ++a)
    if (fest.t[a] > fprof.d[0]) {
      fdetail += " first t above d(z,w): t=" + num(fest.t[a]) + " lower=" + num(fest.lower[a].value()) +
                 " upper=" + num(fest.upper[a].value());
      break;
    }
  r.add("factorial-block pair", CheckStatus::Info, fdetail);

  r.artifacts.push_back({"base", prof, est, v});
  r.artifacts.push_back({"iterate-2", iprof, iest, iv});
  return r;
}

// ---------------------------------------------------------------------------

NDSystem open_question_system() {
  return NDSystem(Space::unit_interval(), MovingBump{MapSpec::logistic(4.0), 0.3});
}

ExperimentReport run_open_question_probe(const NDSystem& sys, const OpenQuestionParams& p) {
  ExperimentReport r;
  r.id = "open-question";
  r.system = sys.describe();
  std::string kl;
  for (auto k : p.ks) kl += (kl.empty() ? "" : ",") + str(k);
  r.param("k", kl);
  r.param("horizon", str(p.horizon));
  r.param("pairs", str(static_cast<std::int64_t>(p.pairs)));
  r.param("seed", std::to_string(p.seed));
  r.param("thresholds", p.thresholds.describe());
  if (sys.space().symbolic()) throw Error(ErrorKind::UnsupportedSystem, "pair sampling needs a real space");

  const auto conv = check_uniform_convergence(sys);
  r.add("uniform gap", CheckStatus::Exploratory, conv.describe());

  std::mt19937_64 rng(p.seed);
  std::vector<std::pair<Point, Point>> pairs;
  for (std::size_t i = 0; i < p.pairs; ++i) {
    const double a = unit_double(rng), b = unit_double(rng);
    pairs.emplace_back(real_point(a), real_point(b));
  }
  std::vector<NDSystem> systems{sys};
  for (auto k : p.ks) systems.push_back(iterate_system(sys, k));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::string base_line;
    for (std::size_t s = 0; s < systems.size(); ++s) {
      const auto prof = pair_profile(systems[s], pairs[i].first, pairs[i].second, p.horizon);
      const auto est = distribution_estimate(prof, p.t_grid, p.window);
      auto v = classify_pair(est, p.thresholds);
      const auto ly = li_yorke_test(prof, p.li_yorke.eps_prox, p.li_yorke.eps_sep,
                                    IndexWindow::tail(p.horizon, p.li_yorke.window));
      v.li_yorke.evaluated = true;
      v.li_yorke.verdict = ly.verdict;
      const std::string label = s == 0 ? "base" : "k=" + str(p.ks[s - 1]);
      const std::string line = verdict_line(v);
      if (s == 0) base_line = line;
      r.add("pair " + str(static_cast<std::int64_t>(i)) + " " + label, CheckStatus::Exploratory,
            line + (s == 0 ? "" : (line == base_line ? " (agrees with base)" : " (differs from base)")));
      if (i == 0) r.artifacts.push_back({"pair0-" + label, prof, est, v});
    }
  }
  return r;
}

}  // namespace ndschaos
