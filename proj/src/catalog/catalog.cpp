#include "ndschaos/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ndschaos/error.hpp"

namespace ndschaos {

NDSystem build_counterexample(const Space& space, const MapSpec& F) {
  return NDSystem(space, CounterexampleAlternating{F});
}

BlockLayout::BlockLayout(std::vector<std::int64_t> starts) : starts_(std::move(starts)) {
  if (starts_.empty() || starts_.front() != 0)
    throw Error(ErrorKind::InvalidArgument, "block layout must start at index 0");
  for (std::size_t i = 1; i < starts_.size(); ++i)
    if (starts_[i] <= starts_[i - 1]) throw Error(ErrorKind::InvalidArgument, "block starts must increase");
}

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BlockLayout BlockLayout::factorial(std::int64_t horizon) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be >= 1");
  std::vector<std::int64_t> starts{0};
  for (int n = 1; n <= 20; ++n) {
    const std::int64_t s = ndschaos::factorial(n);
    if (s >= horizon) break;
    starts.push_back(s);
  }
  return BlockLayout(std::move(starts));
}

std::size_t BlockLayout::block_of(std::int64_t j) const {
  if (j < 0) throw Error(ErrorKind::InvalidArgument, "block index of a negative entry");
  auto it = std::upper_bound(starts_.begin(), starts_.end(), j);
  return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

std::int64_t BlockLayout::end(std::size_t b) const {
  if (b >= starts_.size()) throw Error(ErrorKind::InvalidArgument, "no such block");
  return b + 1 < starts_.size() ? starts_[b + 1] : -1;
}

std::size_t BlockLayout::blocks_within(std::int64_t horizon) const {
  if (horizon < 1) return 0;
  return block_of(horizon - 1) + 1;
}

std::uint8_t BlockSchedule::choice(std::int64_t j) const {
  const std::size_t b = layout.block_of(j);
  if (b >= selector.size()) throw Error(ErrorKind::HorizonExceeded, "selector shorter than the block count");
  return selector[b];
}

bool agree_and_differ(const Word& s, const Word& t) {
  bool agree = false;
  bool differ = false;
  const std::size_t n = std::min(s.size(), t.size());
  for (std::size_t i = 0; i < n && !(agree && differ); ++i) (s[i] == t[i] ? agree : differ) = true;
  return agree && differ;
}

std::vector<Point> sample_points(const Space& space, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto word = [&](std::size_t n) {
    Word w(n);
    for (auto& s : w) s = static_cast<std::uint8_t>(rng() & 1u);
    return w;
  };
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    switch (space.kind) {
      case SpaceKind::UnitInterval: out.push_back(real_point(unit())); break;
      case SpaceKind::UnitSquare: {
        const double a = unit();
        out.push_back(real_point(a, unit()));
        break;
      }
      case SpaceKind::ShiftOneSided: {
        Word core = word(rng() % 16);
        out.push_back(SymbolicPoint::one_sided(std::move(core), word(1 + rng() % 3)));
        break;
      }
      case SpaceKind::ShiftTwoSided: {
        Word left = word(1 + rng() % 3);
        Word core = word(rng() % 16);
        Word right = word(1 + rng() % 3);
        const auto start = static_cast<std::int64_t>(rng() % 33) - 16;
        out.push_back(SymbolicPoint::two_sided(std::move(left), std::move(core), std::move(right), start));
        break;
      }
    }
  }
  return out;
}

std::vector<Word> sample_E(std::size_t count, std::size_t blocks, std::uint64_t seed) {
  if (blocks < 2) throw Error(ErrorKind::HorizonTooSmall, "need at least 2 blocks to sample E");
  if (count < 2) throw Error(ErrorKind::InvalidArgument, "sample_E needs count >= 2");
  // At most one word from each complementary pair can be used.
  if (blocks <= 63 && count > (std::uint64_t{1} << (blocks - 1)))
    throw Error(ErrorKind::InvalidArgument, "only " + std::to_string(std::uint64_t{1} << (blocks - 1)) +
                                                " words over " + std::to_string(blocks) +
                                                " blocks can pairwise agree and differ");
  std::mt19937_64 rng(seed);
  std::vector<Word> out;
  out.reserve(count);
  while (out.size() < count) {
    Word w(blocks);
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < blocks; ++i) {
      if (i % 64 == 0) bits = rng();
      w[i] = static_cast<std::uint8_t>((bits >> (i % 64)) & 1u);
    }
    const bool ok = std::all_of(out.begin(), out.end(), [&](const Word& v) { return agree_and_differ(v, w); });
    if (ok) out.push_back(std::move(w));
  }
  return out;
}

double NestedSetFamily::radius(std::int64_t i) const {
  if (i < 0) throw Error(ErrorKind::InvalidArgument, "nested set index must be >= 0");
  return decay == RadiusDecay::Halving ? std::ldexp(r0, -static_cast<int>(std::min<std::int64_t>(i, 4000)))
                                       : r0 / static_cast<double>(i + 1);
}

bool NestedSetFamily::contains(const Space& space, const Point& p, std::int64_t i) const {
  return distance(space, p, center) <= radius(i);
}

NestedSetFamily nested_balls(const Point& center, double r0, RadiusDecay decay) {
  if (!(r0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "nested balls need r0 > 0");
  return NestedSetFamily{center, r0, decay};
}

NestedSetFamily SequenceConstruction::A() const { return nested_balls(center_a(), r0, RadiusDecay::Harmonic); }
NestedSetFamily SequenceConstruction::B() const { return nested_balls(center_b(), r0, RadiusDecay::Harmonic); }

NDSystem SequenceConstruction::system() const {
  return autonomous(Space::shift_one_sided(), L == 1 ? MapSpec::shift() : MapSpec::power(MapSpec::shift(), L));
}

Point SequenceConstruction::center_a() const { return SymbolicPoint::constant(false, 0); }
Point SequenceConstruction::center_b() const { return SymbolicPoint::constant(false, 1); }

SequenceConstruction sequence_construction(std::int64_t horizon, double r0) {
  if (horizon < 24) throw Error(ErrorKind::HorizonTooSmall, "the construction needs at least 4 factorial blocks");
  if (!(r0 > 0.0 && r0 <= 1.0)) throw Error(ErrorKind::InvalidArgument, "r0 must lie in (0, 1]");
  SequenceConstruction c;
  c.horizon = horizon;
  c.r0 = r0;
  c.layout = BlockLayout::factorial(horizon);
  // 2^{-L} <= r_K = r0 / (K + 1)
  const double rk = r0 / static_cast<double>(horizon + 1);
  c.L = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(-std::log2(rk))));
  return c;
}

SymbolicPoint selector_point(const SequenceConstruction& c, const Word& selector) {
  const auto need = c.layout.blocks_within(c.horizon);
  if (selector.size() < need)
    throw Error(ErrorKind::HorizonExceeded, "selector has " + std::to_string(selector.size()) + " symbols, need " +
                                                std::to_string(need));
  if (c.L < 1) throw Error(ErrorKind::UnsupportedSystem, "selector points need a shift construction");
  Word core(static_cast<std::size_t>(c.L * c.horizon));
  for (std::int64_t j = 0; j < c.horizon; ++j) {
    const std::uint8_t s = selector[c.layout.block_of(j)];
    std::fill_n(core.begin() + c.L * j, c.L, s);
  }
  const std::uint8_t last = core.back();
  return SymbolicPoint::one_sided(std::move(core), {last});
}

std::pair<SymbolicPoint, SymbolicPoint> dc1_pair_for_shift(std::int64_t horizon, const BlockLayout& layout) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be >= 1");
  Word core(static_cast<std::size_t>(horizon));
  for (std::int64_t i = 0; i < horizon; ++i) core[static_cast<std::size_t>(i)] = layout.block_of(i) % 2 == 1;
  return {SymbolicPoint::constant(true, 0), SymbolicPoint::two_sided({0}, std::move(core), {0}, 0)};
}

std::pair<SymbolicPoint, SymbolicPoint> dc1_pair_for_shift(std::int64_t horizon) {
  if (horizon < 24) throw Error(ErrorKind::HorizonTooSmall, "the witness pair needs at least 4 factorial blocks");
  return dc1_pair_for_shift(horizon, BlockLayout::factorial(horizon));
}

}  // namespace ndschaos
