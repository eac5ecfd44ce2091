#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ndschaos/catalog.hpp"
#include "ndschaos/dynamics.hpp"
#include "ndschaos/error.hpp"
#include "ndschaos/kernels.hpp"
#include "ndschaos/metrics.hpp"

using namespace ndschaos;

namespace {

PairDistanceProfile make_profile(std::vector<double> d, double diameter = 1.0) {
  PairDistanceProfile p;
  p.diameter = diameter;
  p.horizon = static_cast<std::int64_t>(d.size());
  p.d = std::move(d);
  return p;
}

// Oracle: brute-force min / max of the counting fractions over the window.
std::pair<double, double> brute_phi(const std::vector<double>& d, double t, const std::vector<std::int64_t>& ns) {
  double lo = 2, hi = -1;
  for (auto n : ns) {
    int c = 0;
    for (std::int64_t i = 0; i < n; ++i) c += d[static_cast<std::size_t>(i)] < t;
    const double v = static_cast<double>(c) / static_cast<double>(n);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("xi and delta count strictly below and at-or-above t") {
  auto p = make_profile({0.1, 0.5, 0.9});
  CHECK(xi_n(p, 0.5, 3) == Ratio{1, 3});
  CHECK(delta_n(p, 0.5, 3) == Ratio{2, 3});
  CHECK(xi_n(p, 0.0, 3).count == 0);
  CHECK(xi_n(make_profile(std::vector<double>(10, 0.0)), 1e-300, 10) == Ratio{1, 1});
  CHECK_THROWS_AS(xi_n(p, 0.5, 4), Error);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> d(1 + rng() % 50);
    for (auto& v : d) v = (rng() % 4 == 0) ? 0.25 : u(rng);
    auto q = make_profile(d);
    const auto n = 1 + static_cast<std::int64_t>(rng() % d.size());
    const double t = rng() % 3 == 0 ? 0.25 : u(rng);
    REQUIRE(xi_n(q, t, n).count + delta_n(q, t, n).count == n);
  }
}

TEST_CASE("ratio comparisons are exact") {
  CHECK(Ratio{1, 3} < Ratio{34, 100});
  CHECK(Ratio{2, 6} == Ratio{1, 3});
  CHECK(!(Ratio{2, 6} < Ratio{1, 3}));
}

TEST_CASE("window evaluation points") {
  CHECK(Window::tail_fraction(0.5).ns(10) == std::vector<std::int64_t>{5, 6, 7, 8, 9, 10});
  CHECK(Window::tail_fraction(1.0).ns(3) == std::vector<std::int64_t>{1, 2, 3});
  CHECK(Window::at({24, 6, 24}).ns(30) == std::vector<std::int64_t>{6, 24});
  CHECK_THROWS_AS(Window::at({31}).ns(30), Error);
  CHECK_THROWS_AS(Window::tail_fraction(0.0).ns(30), Error);
}

TEST_CASE("distribution estimate matches the brute-force window scan") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 50; ++k) {
    std::vector<double> d(20 + rng() % 200);
    for (auto& v : d) v = u(rng) * u(rng);
    auto prof = make_profile(d);
    auto grid = linear_grid(0.01, 1.0, 17);
    const Window w = Window::tail_fraction(0.3);
    auto est = distribution_estimate(prof, grid, w);
    const auto ns = w.ns(prof.horizon);
    for (std::size_t a = 0; a < grid.size(); ++a) {
      auto [lo, hi] = brute_phi(d, grid[a], ns);
      CHECK(est.lower[a].value() == lo);
      CHECK(est.upper[a].value() == hi);
      CHECK(est.lower[a] <= est.upper[a]);
      if (a > 0) {
        CHECK(est.lower[a - 1] <= est.lower[a]);
        CHECK(est.upper[a - 1] <= est.upper[a]);
      }
    }
  }
  CHECK_THROWS_AS(distribution_estimate(make_profile({0.1}), {}, Window{}), Error);
}

TEST_CASE("identity system gives a step at d(x,y) and no chaos") {
  const auto sys = autonomous(Space::unit_interval(), MapSpec::identity());
  auto prof = pair_profile(sys, real_point(0.2), real_point(0.5), 200);
  for (double v : prof.d) CHECK(v == doctest::Approx(0.3));
  auto est = distribution_estimate(prof, {0.1, 0.29, 0.31, 0.9}, Window{});
  CHECK(est.lower[1].count == 0);
  CHECK(est.upper[1].count == 0);
  CHECK(est.lower[2] == Ratio{1, 1});
  auto v = classify_profile(prof, log_grid(1e-6, 1.0, 30), Window{}, Thresholds{}, LiYorkeParams{});
  CHECK(!v.li_yorke.verdict);
  CHECK(!v.dc1.verdict);
  CHECK(!v.dc2.verdict);
  CHECK(!v.dc2prime.verdict);
  CHECK(!v.dc3.verdict);
  auto same = pair_profile(sys, real_point(0.2), real_point(0.2), 50);
  CHECK(std::all_of(same.d.begin(), same.d.end(), [](double x) { return x == 0.0; }));
  CHECK(!li_yorke_test(same, 1e-3, 0.5, IndexWindow::tail(50, 0.5)).verdict);
}

TEST_CASE("logistic profile matches an independent recomputation") {
  const auto sys = autonomous(Space::unit_interval(), MapSpec::logistic(4.0));
  auto prof = pair_profile(sys, real_point(0.3), real_point(0.3 + 1e-9), 100);
  double x = 0.3, y = 0.3 + 1e-9;
  for (int i = 0; i < 100; ++i) {
    CHECK(prof.d[static_cast<std::size_t>(i)] == std::fabs(x - y));
    x = 4.0 * x * (1.0 - x);
    y = 4.0 * y * (1.0 - y);
  }
  CHECK(*std::max_element(prof.d.begin() + 50, prof.d.end()) > 0.5);
}

TEST_CASE("Li-Yorke detection on the logistic map is typical") {
  const auto sys = autonomous(Space::unit_interval(), MapSpec::logistic(4.0));
  int flagged = 0;
  for (int k = 0; k < 20; ++k) {
    const double x = 0.1 + 0.037 * k + 1e-7 * std::sqrt(2.0);
    auto prof = pair_profile(sys, real_point(x), real_point(x + 0.001 * std::sqrt(3.0)), 100000);
    flagged += li_yorke_test(prof, 1e-3, 0.5, IndexWindow::tail(prof.horizon, 0.5)).verdict;
  }
  CHECK(flagged > 10);
}

TEST_CASE("serial and parallel kernels agree exactly") {
  const auto sys = autonomous(Space::unit_square(), MapSpec::logistic(3.9));
  std::vector<std::pair<Point, Point>> pairs;
  for (int k = 0; k < 12; ++k)
    pairs.emplace_back(real_point(0.05 * k + 0.01, 0.3), real_point(0.05 * k + 0.0101, 0.31));
  auto a = kernels::pair_profiles(sys, pairs, 3000, Exec::Serial);
  auto b = kernels::pair_profiles(sys, pairs, 3000, Exec::Parallel);
  for (std::size_t k = 0; k < pairs.size(); ++k) CHECK(a[k].d == b[k].d);
  auto grid = log_grid(1e-4, 1.4, 40);
  auto ns = Window{}.ns(3000);
  CHECK(kernels::xi_counts(a[0].d, grid, ns, Exec::Serial) == kernels::xi_counts(a[0].d, grid, ns, Exec::Parallel));
}

TEST_CASE("sequence estimate with identity times is the plain estimate") {
  const auto sys = autonomous(Space::unit_interval(), MapSpec::tent(1.9));
  auto prof = pair_profile(sys, real_point(0.11), real_point(0.12), 500);
  auto grid = linear_grid(0.01, 1.0, 9);
  auto a = distribution_estimate(prof, grid, Window{});
  auto b = sequence_distribution_estimate(prof, IndexRule{1}, grid, Window{});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(a.lower[i].count == b.lower[i].count);
    CHECK(a.upper[i].n == b.upper[i].n);
  }
  auto sub = subsample(prof, IndexRule{3});
  CHECK(sub.horizon == 167);
  CHECK(sub.d[10] == prof.d[30]);
}

TEST_CASE("counterexample with the steep witness pair is DC3 but not DC1") {
  const auto sys = build_counterexample();
  const auto [z, w] = dc1_pair_for_shift(5040, BlockLayout({0, 10, 300}));
  const auto prof = pair_profile(sys, z, w, 5040);
  // Oracle: even times are the identity, odd times i apply shift^{i+1}.
  const double d0 = symbolic_distance(z, w);
  for (std::int64_t i = 0; i < 5040; ++i) {
    const double expect = i % 2 == 0 ? d0 : symbolic_distance(z, w.shifted(i + 1));
    REQUIRE(prof.d[static_cast<std::size_t>(i)] == expect);
  }
  const auto grid = log_grid(1e-9, 1.0, 60);
  const Window win = Window::at({300, 5040});
  const auto est = distribution_estimate(prof, grid, win);
  for (std::size_t a = 0; a < grid.size(); ++a) {
    auto [lo, hi] = brute_phi(prof.d, grid[a], {300, 5040});
    CHECK(est.lower[a].value() == lo);
    CHECK(est.upper[a].value() == hi);
    if (grid[a] > d0) {
      CHECK(lo >= 0.5);  // every even time counts
      CHECK(lo <= 0.55);
      CHECK(hi >= 0.95);
    }
  }
  const auto v = classify_profile(prof, grid, win, Thresholds{}, LiYorkeParams{1e-3, 0.5, 0.5, IndexWindow{10, 5040}});
  CHECK(v.dc3.verdict);
  CHECK(v.dc3.interval->first > d0);
  CHECK(v.dc2prime.verdict);
  CHECK(!v.dc1.verdict);
  CHECK(v.li_yorke.verdict);
  Thresholds conventional;
  conventional.dc3_literal = false;
  CHECK(classify_profile(prof, grid, win, conventional, LiYorkeParams{1e-3, 0.5, 0.5, IndexWindow{10, 5040}})
            .dc3.verdict);

  const auto it = iterate_system(sys, 2);
  const auto iprof = pair_profile(it, z, w, 2520);
  CHECK(std::all_of(iprof.d.begin(), iprof.d.end(), [&](double x) { return x == d0; }));
  const auto iv = classify_pair(distribution_estimate(iprof, grid, Window::at({150, 2520})), Thresholds{});
  CHECK(!iv.dc3.verdict);
}

TEST_CASE("autonomous two-sided shift with the factorial pair is DC1 at horizon-aware thresholds") {
  const auto sys = autonomous(Space::shift_two_sided(), MapSpec::shift());
  const auto [z, w] = dc1_pair_for_shift(5040);
  const auto prof = pair_profile(sys, z, w, 5040);
  const auto grid = log_grid(1e-6, 1.5, 40);
  const Window win = Window::at({720, 5040});
  // Oracle thresholds from direct counting at the two checkpoints.
  double worst_upper = 1.0, best_lower = 1.0;
  for (double t : grid) {
    auto [lo, hi] = brute_phi(prof.d, t, {720, 5040});
    worst_upper = std::min(worst_upper, hi);
    best_lower = std::min(best_lower, lo);
  }
  CHECK(best_lower <= 1.0 / 6.0);  // ones block 5 fills 5/6 of [0, 720)
  CHECK(worst_upper >= 1.0 - 1.0 / 7.0 - 30.0 / 5040.0);
  Thresholds th;
  th.eps_zero = best_lower + 1e-9;
  th.one_tol = 1.0 - worst_upper + 1e-9;
  const auto v = classify_pair(distribution_estimate(prof, grid, win), th);
  CHECK(v.dc1.verdict);
  CHECK(v.dc2prime.verdict);
  CHECK(v.dc2.verdict);  // dc1 implies dc2 at equal thresholds
  Thresholds loose = th;
  loose.one_tol += 0.1;
  CHECK(classify_pair(distribution_estimate(prof, grid, win), loose).dc1.verdict);
  CHECK(!classify_pair(distribution_estimate(prof, grid, win), Thresholds{}).dc1.verdict);
}

TEST_CASE("selector pairs meet the factorial checkpoint bounds exactly") {
  const auto c = sequence_construction(5040);
  const auto sys = c.system();
  const Word s{0, 1, 0, 0, 1, 1, 0};
  const Word t{0, 0, 1, 0, 0, 1, 1};
  const auto prof = pair_profile(sys, selector_point(c, s), selector_point(c, t), 5040);
  const double delta = 2.0 * c.A().radius(5040);
  const double eps = 0.5;  // d(a, b) / 2 on the one-sided shift
  for (int n = 0; n <= 6; ++n) {
    const std::int64_t cp = factorial(n + 1);
    if (s[static_cast<std::size_t>(n)] == t[static_cast<std::size_t>(n)]) {
      CHECK(xi_n(prof, delta, cp).count >= cp - factorial(n));
      CHECK(Ratio{cp - factorial(n), cp} == Ratio{n, n + 1});
    } else {
      CHECK(xi_n(prof, eps, cp).count <= factorial(n));
    }
  }
}

TEST_CASE("scrambled scan finds the constructed clique") {
  const auto c = sequence_construction(5040);
  auto e = sample_E(8, 4, 17);
  std::vector<Point> pts;
  for (const auto& word : e) {
    Word full{0, 0, 0};
    full.insert(full.end(), word.begin(), word.end());
    pts.push_back(selector_point(c, full));
  }
  ScanParams sp;
  sp.horizon = 5040;
  sp.t_grid = log_grid(1e-4, 1.5, 25);
  sp.window = Window::at({24, 120, 720, 5040});
  sp.thresholds.eps_zero = 0.25;
  sp.thresholds.one_tol = 0.25;
  sp.flag = ChaosFlag::DC1;
  const auto r = scrambled_scan(c.system(), pts, sp);
  CHECK(r.clique.size() == 8);
  REQUIRE(r.uniform_eps.has_value());
  CHECK(*r.uniform_eps >= 0.5 * 0.9);

  const auto id = autonomous(Space::unit_interval(), MapSpec::identity());
  const auto none = scrambled_scan(id, {real_point(0.1), real_point(0.5), real_point(0.9)}, sp);
  CHECK(none.clique.empty());
  const auto twin = scrambled_scan(c.system(), {pts[0], pts[0]}, sp);
  CHECK(twin.clique.empty());
}
