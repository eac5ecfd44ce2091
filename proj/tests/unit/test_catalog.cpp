#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "ndschaos/catalog.hpp"
#include "ndschaos/dynamics.hpp"
#include "ndschaos/error.hpp"

using namespace ndschaos;

namespace {

SymbolicPoint random_two_sided(std::mt19937_64& rng) {
  auto word = [&](std::size_t n) {
    Word w(n);
    for (auto& s : w) s = static_cast<std::uint8_t>(rng() & 1u);
    return w;
  };
  return SymbolicPoint::two_sided(word(1 + rng() % 3), word(rng() % 12), word(1 + rng() % 3),
                                  static_cast<std::int64_t>(rng() % 21) - 10);
}

// Applies F = shift one step at a time, |e| times.
SymbolicPoint slow_shift(SymbolicPoint p, std::int64_t e) {
  const Space sp = Space::shift_two_sided();
  const MapSpec f = MapSpec::shift(e >= 0 ? ShiftDirection::Forward : ShiftDirection::Backward);
  for (std::int64_t i = 0; i < std::abs(e); ++i) p = std::get<SymbolicPoint>(apply_map(sp, f, p));
  return p;
}

}  // namespace

TEST_CASE("counterexample collapses every even composition to the identity") {
  const auto sys = build_counterexample();
  CHECK(!sys.finitely_generated());
  std::mt19937_64 rng(3);
  for (int s = 0; s < 50; ++s) {
    const auto p = random_two_sided(rng);
    Point cur = p;
    for (std::int64_t i = 1; i <= 1000; ++i) {
      cur = sys.step(i, cur);
      if (i % 2 == 0) REQUIRE(std::get<SymbolicPoint>(cur) == p);
    }
  }
  // Independent oracle: single-step shifts following the map list.
  const auto p = random_two_sided(rng);
  SymbolicPoint cur = p;
  for (std::int64_t i = 1; i <= 40; ++i) {
    cur = slow_shift(cur, i % 2 == 1 ? i + 1 : -i);
    if (i % 2 == 1) CHECK(cur == slow_shift(p, i + 1));
    CHECK(std::get<SymbolicPoint>(compose_segment(sys, 1, i, p)) == cur);
  }
  CHECK_THROWS_AS(build_counterexample(Space::unit_interval(), MapSpec::doubling()), Error);
}

TEST_CASE("second iterate of the counterexample has constant orbits") {
  const auto it = iterate_system(build_counterexample(), 2);
  auto p = SymbolicPoint::two_sided({1}, {0, 0, 1}, {0, 1}, 4);
  auto tr = orbit(it, p, 300);
  for (const auto& q : tr.points) CHECK(std::get<SymbolicPoint>(q) == p);
}

TEST_CASE("factorial block layout") {
  const auto l = BlockLayout::factorial(5040);
  CHECK(l.blocks() == 7);
  CHECK(l.block_of(0) == 0);
  CHECK(l.block_of(1) == 1);
  CHECK(l.block_of(5) == 2);
  CHECK(l.block_of(6) == 3);
  CHECK(l.block_of(719) == 5);
  CHECK(l.block_of(720) == 6);
  CHECK(l.block_of(5039) == 6);
  CHECK(l.end(6) == -1);
  CHECK(l.blocks_within(24) == 4);
  CHECK(factorial(7) == 5040);
}

TEST_CASE("sample_E pairs agree and differ") {
  auto e = sample_E(64, 7, 42);
  CHECK(e.size() == 64);
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      bool agree = false, differ = false;
      for (std::size_t b = 0; b < 7; ++b) (e[i][b] == e[j][b] ? agree : differ) = true;
      REQUIRE(agree);
      REQUIRE(differ);
    }
  auto big = sample_E(100, 9, 42);
  CHECK(std::set<Word>(big.begin(), big.end()).size() == 100);
  CHECK(sample_E(100, 9, 42) == big);
  CHECK(sample_E(100, 9, 43) != big);
  CHECK_THROWS_AS(sample_E(100, 7, 1), Error);
  try {
    sample_E(2, 1, 1);
    FAIL("expected throw");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::HorizonTooSmall);
  }
}

TEST_CASE("nested balls membership") {
  const Space sp = Space::unit_interval();
  auto fam = nested_balls(real_point(0.5), 0.25, RadiusDecay::Halving);
  CHECK(fam.contains(sp, real_point(0.5), 30));
  CHECK(fam.contains(sp, real_point(0.75), 0));
  CHECK(!fam.contains(sp, real_point(0.75), 1));
  for (int i = 0; i < 20; ++i) {
    const double p = 0.5 + 0.3 / std::pow(3.0, i);
    bool prev = true;
    for (int k = 0; k < 60; ++k) {
      const bool in = fam.contains(sp, real_point(p), k);
      if (in) CHECK(prev);
      prev = in;
    }
  }
  // First index leaving the ball: floor(log2(r0 / eps)) + 1, which is the
  // ceiling whenever r0 / eps is not a power of two.
  for (double eps : {0.03, 0.011, 0.0007, 1e-6}) {
    const double ratio = 0.25 / eps;
    std::int64_t first = 0;
    while (fam.contains(sp, real_point(0.5 + eps), first)) ++first;
    CHECK(first == static_cast<std::int64_t>(std::floor(std::log2(ratio))) + 1);
    CHECK(first == static_cast<std::int64_t>(std::ceil(std::log2(ratio))));
  }
  CHECK_THROWS_AS(nested_balls(real_point(0.5), 0.0, RadiusDecay::Harmonic), Error);
}

TEST_CASE("selector points land in the chosen balls") {
  auto c = sequence_construction(720);
  CHECK(c.L == static_cast<std::int64_t>(std::ceil(std::log2(721 / 0.25))));
  const auto sys = c.system();
  const Space sp = sys.space();
  Word alt{0, 1, 0, 1, 0, 1};
  auto x = selector_point(c, alt);
  const auto A = c.A();
  const auto B = c.B();
  Point cur = x;
  for (std::int64_t j = 0; j < c.horizon; ++j) {
    const auto& fam = alt[c.layout.block_of(j)] == 0 ? A : B;
    REQUIRE(fam.contains(sp, cur, j));
    cur = sys.step(j + 1, cur);
  }
  auto a = selector_point(c, Word(6, 0));
  CHECK(a == std::get<SymbolicPoint>(c.center_a()));
  CHECK(selector_point(c, Word{0, 1, 1, 0, 0, 1}) != x);
  CHECK_THROWS_AS(selector_point(c, Word{0, 1}), Error);
}

TEST_CASE("shift power with identity times equals the strided shift") {
  auto c = sequence_construction(120);
  auto x = selector_point(c, Word{1, 0, 0, 1, 1});
  const auto plain = autonomous(Space::shift_one_sided(), MapSpec::shift());
  const auto tr = orbit(c.system(), x, 50);
  const IndexRule p{c.L};
  for (std::int64_t k = 0; k <= 50; ++k)
    CHECK(std::get<SymbolicPoint>(tr.points[static_cast<std::size_t>(k)]) ==
          std::get<SymbolicPoint>(compose_segment(plain, 1, p.at(k), x)));
}

TEST_CASE("dc1 witness pair structure") {
  auto [z, w] = dc1_pair_for_shift(5040);
  const Space sp = Space::shift_two_sided();
  for (std::int64_t k = 0; k < 5040; k += 7) {
    const auto wk = w.shifted(k);
    const double d = symbolic_distance(z, wk);
    const auto block = BlockLayout::factorial(5040).block_of(k);
    if (block % 2 == 1) {
      CHECK(d >= 0.5);
    } else {
      // Oracle: distance to the nearest 1 in either direction bounds the sum.
      std::int64_t gap = 1 << 20;
      for (std::int64_t i = -6000; i <= 6000; ++i)
        if (wk.at(i) == 1) gap = std::min(gap, std::abs(i));
      CHECK(d <= std::ldexp(1.0, -static_cast<int>(gap)) * 2.0);
      CHECK(d >= std::ldexp(1.0, -static_cast<int>(gap) - 1));
    }
  }
  CHECK(w.at(-1) == 0);
  CHECK(w.at(5040) == 0);
  CHECK_THROWS_AS(dc1_pair_for_shift(10), Error);
  (void)sp;
}
