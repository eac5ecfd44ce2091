#include "ndschaos/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "ndschaos/catalog.hpp"
#include "ndschaos/dynamics.hpp"
#include "ndschaos/kernels.hpp"

namespace ndschaos {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string flag_text(const FlagResult& f) { return f.evaluated ? (f.verdict ? "true" : "false") : "na"; }

std::string verdict_line(const ChaosVerdict& v) {
  return "liyorke=" + flag_text(v.li_yorke) + " dc1=" + flag_text(v.dc1) + " dc2=" + flag_text(v.dc2) +
         " dc2prime=" + flag_text(v.dc2prime) + " dc3=" + flag_text(v.dc3);
}

std::vector<std::pair<Point, Point>> sampled_pairs(const RunConfig& cfg, const Space& space) {
  const auto n = static_cast<std::size_t>(cfg.pairs);
  const auto pts = sample_points(space, 2 * n, cfg.seed);
  std::vector<std::pair<Point, Point>> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(pts[2 * i], pts[2 * i + 1]);
  if (!cfg.x.empty()) {
    auto mk = [](const std::vector<double>& v) { return v.size() == 1 ? real_point(v[0]) : real_point(v[0], v[1]); };
    out[0] = {mk(cfg.x), mk(cfg.y)};
  }
  return out;
}

ExperimentReport base_report(const RunConfig& cfg, const NDSystem& sys) {
  ExperimentReport r;
  r.id = to_string(cfg.experiment);
  r.system = sys.describe();
  r.param("horizon", std::to_string(cfg.horizon));
  r.param("pairs", std::to_string(cfg.pairs));
  r.param("seed", std::to_string(cfg.seed));
  return r;
}

ExperimentReport pair_experiment(const RunConfig& cfg, const NDSystem& sys) {
  auto r = base_report(cfg, sys);
  const auto pairs = sampled_pairs(cfg, sys.space());
  const auto profiles = kernels::pair_profiles(sys, pairs, cfg.horizon);
  const auto grid = t_grid(cfg);
  const Window win = estimate_window(cfg);
  const Thresholds th = thresholds(cfg);
  const bool estimates = cfg.experiment != ExperimentKind::Simulate;
  const bool verdicts = cfg.experiment == ExperimentKind::Classify;
  if (estimates) r.param("window", win.describe());
  if (verdicts) r.param("thresholds", th.describe());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& prof = profiles[i];
    PairArtifact a{"pair" + std::to_string(i), prof, std::nullopt, std::nullopt};
    const auto [lo, hi] = std::minmax_element(prof.d.begin(), prof.d.end());
    std::string detail = describe(pairs[i].first) + " vs " + describe(pairs[i].second) + ": min d=" + num(*lo) +
                         " max d=" + num(*hi);
    if (estimates) a.estimate = distribution_estimate(prof, grid, win);
    if (verdicts) {
      a.verdict = classify_profile(prof, grid, win, th, li_yorke_params(cfg));
      detail += "; " + verdict_line(*a.verdict);
    }
    r.add(a.id, CheckStatus::Info, detail);
    r.artifacts.push_back(std::move(a));
  }
  if (verdicts && cfg.candidates >= 2) {
    ScanParams sp;
    sp.horizon = cfg.horizon;
    sp.p = IndexRule{1};
    sp.t_grid = grid;
    sp.window = win;
    sp.thresholds = th;
    sp.li_yorke = li_yorke_params(cfg);
    sp.flag = parse_chaos_flag(cfg.scan_flag);
    const auto scan =
        scrambled_scan(sys, sample_points(sys.space(), static_cast<std::size_t>(cfg.candidates), cfg.seed + 1), sp);
    std::string members;
    for (auto c : scan.clique) members += (members.empty() ? "" : ",") + std::to_string(c);
    r.add("scrambled scan", CheckStatus::Info,
          "flag=" + cfg.scan_flag + " clique size " + std::to_string(scan.clique.size()) + " of " +
              std::to_string(scan.size) + (members.empty() ? "" : " {" + members + "}") +
              (scan.uniform_eps ? " uniform eps=" + num(*scan.uniform_eps) : " no uniform eps"));
  }
  return r;
}

ExperimentReport simulate(const RunConfig& cfg, const NDSystem& sys, RunResult& out) {
  auto r = pair_experiment(cfg, sys);
  const auto pairs = sampled_pairs(cfg, sys.space());
  std::size_t id = 0;
  for (const auto& [x, y] : pairs) {
    for (const Point* p : {&x, &y}) {
      const auto tr = orbit(sys, *p, cfg.horizon);
      for (std::size_t n = 0; n < tr.points.size(); ++n)
        out.orbit_rows.push_back({id, static_cast<std::int64_t>(n), tr.points[n]});
      ++id;
    }
  }
  r.add("orbits", CheckStatus::Info,
        std::to_string(id) + " points, " + std::to_string(cfg.horizon) + " steps each");
  return r;
}

ExperimentReport kato(const RunConfig& cfg, const NDSystem& sys, RunResult& out) {
  auto r = base_report(cfg, sys);
  const auto p = kato_params(cfg, sys.space());
  r.param("delta", num(p.delta));
  r.param("epsilon", num(p.eps));
  r.param("probes", std::to_string(p.probes.size()));
  const auto k = kato_verdict(sys, p);
  std::string fail;
  if (k.access_failure)
    fail = " first inaccessible probe pair (" + std::to_string(k.access_failure->first) + "," +
           std::to_string(k.access_failure->second) + ")";
  r.add("sensitivity", CheckStatus::Info,
        std::string(k.sensitivity.verdict ? "true" : "false") + ", smallest probe separation " +
            num(k.sensitivity.worst_separation) + " at probe " + std::to_string(k.sensitivity.worst_probe));
  r.add("accessibility", CheckStatus::Info,
        std::string(k.accessible ? "true" : "false") + " over " + std::to_string(k.access_pairs_checked) +
            " probe pairs, latest first hit n=" + std::to_string(k.max_access_n) + fail);
  r.add("kato", CheckStatus::Info, k.kato ? "true" : "false");
  for (std::size_t i = 0; i < p.probes.size(); ++i)
    out.kato_rows.push_back({sys.describe(), i, p.probes[i].center, p.probes[i].radius,
                             k.sensitivity.separations[i], k.sensitivity.separations[i] > p.delta});
  return r;
}

ExperimentReport iterate_check(const RunConfig& cfg, const NDSystem& sys) {
  auto r = base_report(cfg, sys);
  const auto starts = sample_points(sys.space(), static_cast<std::size_t>(cfg.pairs), cfg.seed);
  for (auto k : cfg.k) {
    const auto it = iterate_system(sys, k);
    std::int64_t mismatches = 0;
    std::string first;
    for (std::size_t s = 0; s < starts.size(); ++s) {
      Point b = starts[s], c = starts[s];
      std::int64_t base_n = 0;
      for (std::int64_t n = 1; n <= cfg.horizon; ++n) {
        for (std::int64_t j = 0; j < k; ++j) b = sys.step(++base_n, b);
        c = it.step(n, c);
        if (!(b == c) && mismatches++ == 0) first = " first at start " + std::to_string(s) + " n=" + std::to_string(n);
      }
    }
    r.add("k=" + std::to_string(k), mismatches == 0,
          std::to_string(starts.size()) + " starts, " + std::to_string(cfg.horizon) + " iterate steps, " +
              std::to_string(mismatches) + " mismatches" + first);
  }
  return r;
}

}  // namespace

RunResult execute(const RunConfig& cfg) {
  RunResult out;
  auto guarded = [&](const std::string& label, auto&& fn) {
    try {
      out.reports.push_back({label, fn()});
    } catch (const Error& e) {
      ExperimentReport r;
      r.id = to_string(cfg.experiment);
      r.system = cfg.kind + " on " + cfg.space;
      r.add("error", CheckStatus::Fail, e.what());
      out.reports.push_back({label, std::move(r)});
    }
  };
  const auto grid = t_grid(cfg);
  const Window win = estimate_window(cfg);
  const Thresholds th = thresholds(cfg);
  const bool several_k = cfg.k.size() > 1;

  switch (cfg.experiment) {
    case ExperimentKind::Simulate:
      guarded("", [&] { return simulate(cfg, build_system(cfg), out); });
      break;
    case ExperimentKind::Metrics:
    case ExperimentKind::Classify:
      guarded("", [&] { return pair_experiment(cfg, build_system(cfg)); });
      break;
    case ExperimentKind::Kato:
      guarded("", [&] { return kato(cfg, build_system(cfg), out); });
      break;
    case ExperimentKind::IterateCheck:
      guarded("", [&] { return iterate_check(cfg, build_system(cfg)); });
      break;
    case ExperimentKind::LiYorkeInvariance:
      for (auto k : cfg.k)
        guarded(several_k ? "k" + std::to_string(k) : "", [&] {
          LiYorkeInvarianceParams p;
          p.pairs = static_cast<std::size_t>(cfg.pairs);
          p.horizon = cfg.horizon;
          p.seed = cfg.seed;
          p.eps_prox = cfg.eps_prox;
          p.eps_sep = cfg.eps_sep;
          p.window = cfg.window;
          p.min_rate = cfg.min_rate;
          p.artifact_pairs = static_cast<std::size_t>(cfg.artifact_pairs);
          p.t_grid = grid;
          p.thresholds = th;
          return run_liyorke_invariance(build_system(cfg), k, p);
        });
      break;
    case ExperimentKind::Dc2PrimeInvariance:
      for (auto k : cfg.k)
        guarded(several_k ? "N" + std::to_string(k) : "", [&] {
          Dc2PrimeParams p;
          if (!cfg.x.empty()) {
            auto mk = [](const std::vector<double>& v) {
              return v.size() == 1 ? real_point(v[0]) : real_point(v[0], v[1]);
            };
            p.x = mk(cfg.x);
            p.y = mk(cfg.y);
          }
          p.horizon = cfg.horizon;
          p.t_grid = grid;
          p.s_grid = cfg.s_grid;
          p.modulus_probe_n = cfg.modulus_probe_n;
          p.window = win;
          p.thresholds = th;
          return run_dc2prime_invariance(build_system(cfg), k, p);
        });
      break;
    case ExperimentKind::KatoInvariance:
      guarded("", [&] {
        const auto sys = build_system(cfg);
        return run_kato_invariance(sys, cfg.k, kato_params(cfg, sys.space()));
      });
      break;
    case ExperimentKind::SequenceChaos:
      guarded("", [&] {
        SequenceChaosParams p;
        p.horizon = cfg.horizon;
        p.count = static_cast<std::size_t>(cfg.count);
        p.seed = cfg.seed;
        p.r0 = cfg.r0;
        p.artifact_pairs = static_cast<std::size_t>(cfg.artifact_pairs);
        p.t_grid = grid;
        p.thresholds = th;
        return run_sequence_chaos_construction(p);
      });
      break;
    case ExperimentKind::Dc3Counterexample:
      guarded("", [&] {
        Dc3Params p;
        p.horizon = cfg.horizon;
        p.layout = cfg.pair_blocks;
        p.checkpoints = cfg.checkpoints;
        p.t_grid = grid;
        p.identity_n = cfg.identity_n;
        p.seed = cfg.seed;
        p.thresholds = th;
        p.li_yorke = LiYorkeParams{cfg.eps_prox, cfg.eps_sep, cfg.window, IndexWindow{cfg.pair_blocks[1], cfg.horizon}};
        return run_dc3_counterexample(p);
      });
      break;
    case ExperimentKind::OpenQuestion:
      guarded("", [&] {
        OpenQuestionParams p;
        p.ks = cfg.k;
        p.horizon = cfg.horizon;
        p.pairs = static_cast<std::size_t>(cfg.pairs);
        p.seed = cfg.seed;
        p.t_grid = grid;
        p.window = win;
        p.thresholds = th;
        p.li_yorke = li_yorke_params(cfg);
        return run_open_question_probe(build_system(cfg), p);
      });
      break;
  }
  return out;
}

int exit_code(const RunConfig& cfg, const RunResult& r) {
  bool failed = false, unmet = false;
  for (const auto& lr : r.reports) {
    const auto s = lr.report.overall();
    failed |= s == CheckStatus::Fail;
    unmet |= s == CheckStatus::HypothesisUnmet;
  }
  if (failed) return ExitFailure;
  if (unmet && cfg.strict_hypotheses) return ExitHypothesis;
  return ExitPass;
}

std::vector<std::int64_t> xi_table_ns(const PairDistanceProfile& p, const Window& w) {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 1; n <= p.horizon; n *= 2) ns.push_back(n);
  for (auto c : w.checkpoints)
    if (c >= 1 && c <= p.horizon) ns.push_back(c);
  ns.push_back(p.horizon);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  return ns;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IOError, "cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw Error(ErrorKind::IOError, "write failed for " + path.string());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string file_safe(const std::string& s) {
  std::string out = s;
  for (auto& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  return out;
}

std::string format_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// xi_n(t) against n for a few t, sampled at about 400 n values.
std::vector<Series> xi_series(const PairDistanceProfile& prof, const std::vector<double>& grid) {
  std::vector<double> ts;
  const std::size_t picks = std::min<std::size_t>(4, grid.size());
  for (std::size_t i = 0; i < picks; ++i) ts.push_back(grid[(grid.size() - 1) * (i + 1) / picks]);
  std::vector<std::int64_t> ns;
  const std::int64_t stride = std::max<std::int64_t>(1, prof.horizon / 400);
  for (std::int64_t n = stride; n <= prof.horizon; n += stride) ns.push_back(n);
  if (ns.empty() || ns.back() != prof.horizon) ns.push_back(prof.horizon);
  const auto counts = kernels::xi_counts(prof.d, ts, ns, Exec::Serial);
  std::vector<Series> out;
  for (std::size_t a = 0; a < ts.size(); ++a) {
    Series s{"t=" + format_tick(ts[a]), {}, {}};
    for (std::size_t b = 0; b < ns.size(); ++b) {
      s.x.push_back(static_cast<double>(ns[b]));
      s.y.push_back(static_cast<double>(counts[a][b]) / static_cast<double>(ns[b]));
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<Series>& series, bool log_x) {
  const double W = 640, H = 400, L = 70, R = 150, T = 40, B = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  auto fx = [&](double x) { return log_x ? std::log10(x) : x; };
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_x && !(s.x[i] > 0)) continue;
      x0 = std::min(x0, fx(s.x[i]));
      x1 = std::max(x1, fx(s.x[i]));
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!(x0 <= x1)) x0 = 0, x1 = 1;
  if (!(y0 <= y1)) y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  auto px = [&](double x) { return L + (fx(x) - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  std::string s;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" font-family=\"sans-serif\" "
                "font-size=\"12\">\n",
                W, H);
  s += buf;
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"24\" font-size=\"14\">", L);
  s += buf + xml_escape(title) + "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<path d=\"M%g %g V%g H%g\" stroke=\"black\" fill=\"none\"/>\n", L, T, H - B, W - R);
  s += buf;
  for (int i = 0; i <= 4; ++i) {
    const double fxv = x0 + (x1 - x0) * i / 4.0, yv = y0 + (y1 - y0) * i / 4.0;
    const double xv = log_x ? std::pow(10.0, fxv) : fxv;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">", px(xv), H - B + 16);
    s += buf + format_tick(xv) + "</text>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"end\">", L - 6, py(yv) + 4);
    s += buf + format_tick(yv) + "</text>\n";
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">", (L + W - R) / 2, H - 12);
  s += buf + xml_escape(x_label) + "</text>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"16\" y=\"%g\" transform=\"rotate(-90 16 %g)\" text-anchor=\"middle\">",
                (T + H - B) / 2, (T + H - B) / 2);
  s += buf + xml_escape(y_label) + "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = colors[k % 6];
    s += std::string("<polyline fill=\"none\" stroke=\"") + color + "\" points=\"";
    for (std::size_t i = 0; i < series[k].x.size(); ++i) {
      if (log_x && !(series[k].x[i] > 0)) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(series[k].x[i]), py(series[k].y[i]));
      s += buf;
    }
    s += "\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" fill=\"%s\">", W - R + 10, T + 16.0 * (k + 1), color);
    s += buf + xml_escape(series[k].name) + "</text>\n";
  }
  return s + "</svg>\n";
}

void write_outputs(const RunConfig& cfg, const RunResult& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IOError, "cannot create " + dir.string() + ": " + ec.message());

  write_file(dir / "config.toml", to_toml(cfg));

  std::string report;
  for (const auto& lr : r.reports) {
    if (!report.empty()) report += "\n";
    if (!lr.label.empty()) report += "run " + lr.label + "\n";
    report += lr.report.serialize();
  }
  report += "\nexit " + std::to_string(exit_code(cfg, r)) + "\n";
  write_file(dir / "report.txt", report);

  std::string profiles = "pair_id,i,d_i\n";
  std::string xi = "pair_id,n,t,xi,delta\n";
  std::string estimates = "pair_id,t,phi_lower,phi_upper\n";
  std::string verdicts =
      "pair_id,horizon,window,liyorke,dc1,dc2,dc2prime,dc3,dc3_t_lo,dc3_t_hi,eps_zero,one_tol,gap,dc3_variant\n";
  const auto default_grid = t_grid(cfg);
  const Window default_window = estimate_window(cfg);
  for (const auto& lr : r.reports) {
    for (const auto& a : lr.report.artifacts) {
      const std::string id = csv_field(lr.label.empty() ? a.id : lr.label + "/" + a.id);
      const auto& prof = a.profile;
      for (std::size_t i = 0; i < prof.d.size(); ++i) profiles += id + "," + std::to_string(i) + "," + num(prof.d[i]) + "\n";

      const auto& grid = a.estimate ? a.estimate->t : default_grid;
      const Window& win = a.estimate ? a.estimate->window : default_window;
      const auto ns = xi_table_ns(prof, win);
      const auto counts = kernels::xi_counts(prof.d, grid, ns);
      for (std::size_t b = 0; b < ns.size(); ++b)
        for (std::size_t t = 0; t < grid.size(); ++t) {
          const Ratio x{counts[t][b], ns[b]};
          const Ratio y{ns[b] - counts[t][b], ns[b]};
          xi += id + "," + std::to_string(ns[b]) + "," + num(grid[t]) + "," + num(x.value()) + "," + num(y.value()) +
                "\n";
        }
      if (a.estimate)
        for (std::size_t t = 0; t < a.estimate->t.size(); ++t)
          estimates += id + "," + num(a.estimate->t[t]) + "," + num(a.estimate->lower[t].value()) + "," +
                       num(a.estimate->upper[t].value()) + "\n";
      if (a.verdict) {
        const auto& v = *a.verdict;
        const auto& J = v.dc3.interval;
        verdicts += id + "," + std::to_string(v.horizon) + "," + csv_field(v.window) + "," + flag_text(v.li_yorke) +
                    "," + flag_text(v.dc1) + "," + flag_text(v.dc2) + "," + flag_text(v.dc2prime) + "," +
                    flag_text(v.dc3) + "," + (J ? num(J->first) : "") + "," + (J ? num(J->second) : "") + "," +
                    num(v.thresholds.eps_zero) + "," + num(v.thresholds.one_tol) + "," + num(v.thresholds.gap) + "," +
                    (v.thresholds.dc3_literal ? "literal" : "conventional") + "\n";
      }
      if (cfg.svg) {
        const std::string stem = file_safe(lr.label.empty() ? a.id : lr.label + "-" + a.id);
        write_file(dir / ("xi_" + stem + ".svg"),
                   svg_line_chart("xi_n(t), " + a.id, "n", "xi_n(t)", xi_series(prof, grid), false));
        if (a.estimate) {
          Series lo{"lower", a.estimate->t, {}}, up{"upper", a.estimate->t, {}};
          for (std::size_t t = 0; t < a.estimate->t.size(); ++t) {
            lo.y.push_back(a.estimate->lower[t].value());
            up.y.push_back(a.estimate->upper[t].value());
          }
          write_file(dir / ("phi_" + stem + ".svg"),
                     svg_line_chart("distribution estimates, " + a.id, "t", "phi", {lo, up}, cfg.t_scale == "log"));
        }
      }
    }
  }
  write_file(dir / "profiles.csv", profiles);
  write_file(dir / "xi.csv", xi);
  write_file(dir / "estimates.csv", estimates);
  write_file(dir / "verdicts.csv", verdicts);

  if (!r.kato_rows.empty()) {
    std::string k = "system,probe,center,radius,max_separation,sensitive\n";
    for (const auto& row : r.kato_rows)
      k += csv_field(row.system) + "," + std::to_string(row.probe) + "," + csv_field(describe(row.center)) + "," +
           num(row.radius) + "," + num(row.max_separation) + "," + (row.sensitive ? "true" : "false") + "\n";
    write_file(dir / "kato.csv", k);
  }
  if (!r.orbit_rows.empty()) {
    std::string o = "point_id,n,state\n";
    for (const auto& row : r.orbit_rows)
      o += std::to_string(row.point) + "," + std::to_string(row.n) + "," + csv_field(describe(row.state)) + "\n";
    write_file(dir / "orbits.csv", o);
  }
}

int run(const RunConfig& cfg) {
  const auto result = execute(cfg);
  write_outputs(cfg, result, cfg.output);
  return exit_code(cfg, result);
}

}  // namespace ndschaos
