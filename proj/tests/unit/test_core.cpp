#include <doctest.h>

#include <cmath>
#include <vector>

#include "ndschaos/dynamics.hpp"
#include "ndschaos/error.hpp"

using namespace ndschaos;

TEST_CASE("real maps act coordinatewise") {
  const auto sq = Space::unit_square();
  auto p = apply_map(sq, MapSpec::logistic(4.0), real_point(0.25, 0.5));
  CHECK(std::get<RealPoint>(p).x[0] == 0.75);
  CHECK(std::get<RealPoint>(p).x[1] == 1.0);
  CHECK(distance(sq, real_point(0, 0), real_point(0.3, 0.4)) == doctest::Approx(0.5));
}

TEST_CASE("parameter validation and domain checks") {
  CHECK_THROWS_AS(MapSpec::logistic(4.5), Error);
  CHECK_THROWS_AS(MapSpec::tent(-0.1), Error);
  try {
    apply_map(Space::unit_interval(), MapSpec::shift(), real_point(0.2));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainViolation);
  }
  try {
    apply_map(Space::shift_one_sided(), MapSpec::shift(ShiftDirection::Backward), SymbolicPoint());
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonInvertibleMap);
  }
  CHECK_THROWS_AS(apply_map(Space::unit_interval(), MapSpec::identity(), real_point(1.5)), Error);
}

TEST_CASE("orbit uses x_n = f_n(x_{n-1})") {
  // f_n(x) = x / (n+1) style check via an explicit list of tents.
  NDSystem sys(Space::unit_interval(),
               ExplicitList{{MapSpec::tent(1.0), MapSpec::tent(0.5), MapSpec::tent(0.25)}, TailRule::RepeatLast});
  auto tr = orbit(sys, real_point(0.4), 5);
  std::vector<double> expect{0.4, 0.4, 0.2, 0.05, 0.0125, 0.003125};
  for (std::size_t n = 0; n < expect.size(); ++n)
    CHECK(std::get<RealPoint>(tr.points[n]).x[0] == doctest::Approx(expect[n]));
}

TEST_CASE("explicit list tail rules") {
  NDSystem cyc(Space::unit_interval(), ExplicitList{{MapSpec::tent(1.0), MapSpec::doubling()}, TailRule::Cycle});
  CHECK(cyc.map_at(3).describe() == "tent(1)");
  CHECK(cyc.map_at(4).describe() == "doubling");
  CHECK(!cyc.limit().has_value());
  NDSystem rep(Space::unit_interval(), ExplicitList{{MapSpec::tent(1.0), MapSpec::doubling()}, TailRule::RepeatLast});
  CHECK(rep.map_at(9).describe() == "doubling");
  CHECK(rep.finitely_generated());
}

TEST_CASE("iterate system composes consecutive blocks") {
  NDSystem sys(Space::unit_interval(), ParametricFamily{FamilyKind::Logistic, {ParamDecay::Harmonic, 3.5, 0.5}});
  auto it = iterate_system(sys, 3);
  const Point x = real_point(0.3);
  for (std::int64_t n = 1; n <= 5; ++n) {
    // Oracle: apply the three maps by hand.
    double v = 0.3;
    for (std::int64_t j = 3 * (n - 1) + 1; j <= 3 * n; ++j) {
      const double mu = 3.5 + 0.5 / static_cast<double>(j);
      v = mu * v * (1.0 - v);
    }
    CHECK(std::get<RealPoint>(it.step(n, x)).x[0] == v);
    CHECK(std::get<RealPoint>(apply_map(sys.space(), it.map_at(n), x)).x[0] == v);
  }
  CHECK(!it.finitely_generated());
  CHECK(it.limit()->describe() == "power(logistic(3.5),3)");
}

TEST_CASE("counterexample system alternates shift powers") {
  const auto sp = Space::shift_two_sided();
  NDSystem ce(sp, CounterexampleAlternating{MapSpec::shift()});
  auto p = SymbolicPoint::two_sided({0}, {1, 0, 1, 1}, {0}, 0);
  // f_1 = F^2, f_2 = F^-2, so f_1^2 is the identity.
  CHECK(std::get<SymbolicPoint>(compose_segment(ce, 1, 2, p)) == p);
  // Fast path agrees with the generic map evaluation.
  for (std::int64_t n = 1; n <= 8; ++n)
    CHECK(std::get<SymbolicPoint>(ce.step(n, p)) == std::get<SymbolicPoint>(apply_map(sp, ce.map_at(n), p)));
  // f_1^{2n} = identity for every n.
  for (std::int64_t n = 1; n <= 6; ++n) CHECK(std::get<SymbolicPoint>(compose_segment(ce, 1, 2 * n, p)) == p);
  CHECK_THROWS_AS(NDSystem(Space::shift_one_sided(), CounterexampleAlternating{MapSpec::shift()}), Error);
}

TEST_CASE("moving bump converges pointwise but not uniformly") {
  NDSystem mb(Space::unit_interval(), MovingBump{MapSpec::identity(), 0.9});
  std::vector<Point> grid;
  for (int i = 0; i <= 4000; ++i) grid.push_back(real_point(i / 4000.0));
  CHECK(uniform_convergence_gap(mb, MapSpec::identity(), 100, grid) > 0.88);
  // x = 1/n lands exactly on the target.
  CHECK(std::get<RealPoint>(mb.step(8, real_point(0.125))).x[0] == 0.9);
  auto x = real_point(0.3);
  CHECK(distance(mb.space(), mb.step(100, x), x) == 0.0);
  NDSystem pf(Space::unit_interval(), ParametricFamily{FamilyKind::Tent, {ParamDecay::Harmonic, 1.5, 0.4}});
  CHECK(uniform_convergence_gap(pf, *pf.limit(), 400, grid) <= 0.001 + 1e-12);
}

TEST_CASE("residue subsequence keeps the largest class") {
  std::vector<std::int64_t> seq{1, 4, 7, 8, 10, 13, 15};
  auto rc = residue_subsequence(seq, 3);
  CHECK(rc.residue == 1);
  CHECK(rc.subsequence == std::vector<std::int64_t>{1, 4, 7, 10, 13});
  CHECK(rc.quotients == std::vector<std::int64_t>{0, 1, 2, 3, 4});
  auto tie = residue_subsequence(std::vector<std::int64_t>{2, 3}, 2);
  CHECK(tie.residue == 0);
  CHECK_THROWS_AS(residue_subsequence(std::vector<std::int64_t>{3, 2}, 2), Error);
}
