#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ndschaos/system.hpp"

namespace ndschaos {

// f_i = F^{i+1} for odd i, F^{-i} for even i. F must be a homeomorphism.
NDSystem build_counterexample(const Space& space, const MapSpec& F);
inline NDSystem build_counterexample() {
  return build_counterexample(Space::shift_two_sided(), MapSpec::shift());
}

// Partition of the indices 0, 1, 2, ... into consecutive blocks; block b is
// [starts[b], starts[b+1]) and the last block is unbounded.
class BlockLayout {
 public:
  explicit BlockLayout(std::vector<std::int64_t> starts);

  // Blocks [n!, (n+1)!) for n >= 1 with block 0 = {0}, up to the block
  // containing `horizon - 1`.
  static BlockLayout factorial(std::int64_t horizon);

  std::size_t block_of(std::int64_t j) const;
  std::size_t blocks() const noexcept { return starts_.size(); }
  std::int64_t start(std::size_t b) const { return starts_.at(b); }
  // One past the last index of block b; -1 for the unbounded last block.
  std::int64_t end(std::size_t b) const;
  // Number of blocks meeting [0, horizon).
  std::size_t blocks_within(std::int64_t horizon) const;

 private:
  std::vector<std::int64_t> starts_;
};

std::int64_t factorial(int n);

// Entry j is assigned selector symbol s[block_of(j)].
struct BlockSchedule {
  BlockLayout layout;
  std::int64_t horizon;
  Word selector;

  std::uint8_t choice(std::int64_t j) const;
};

// Finite stand-in for an uncountable family of binary sequences in which any
// two members agree at some index and differ at another. Words have one
// symbol per block; deterministic in `seed`.
std::vector<Word> sample_E(std::size_t count, std::size_t blocks, std::uint64_t seed);

// Seeded sample: uniform coordinates on real spaces; on shift spaces,
// eventually periodic points with short random prefix, core and period.
std::vector<Point> sample_points(const Space& space, std::size_t count, std::uint64_t seed);

// True when s and t agree somewhere and differ somewhere.
bool agree_and_differ(const Word& s, const Word& t);

enum class RadiusDecay { Halving, Harmonic };

// Closed balls A_i = B(center, r_i), r_i = r0 / 2^i or r0 / (i + 1).
struct NestedSetFamily {
  Point center;
  double r0;
  RadiusDecay decay;

  double radius(std::int64_t i) const;
  bool contains(const Space& space, const Point& p, std::int64_t i) const;
};

NestedSetFamily nested_balls(const Point& center, double r0, RadiusDecay decay);

// Time rule p_k for sequence estimates. Stride L gives p_k = L k.
struct IndexRule {
  std::int64_t stride = 1;
  std::int64_t at(std::int64_t k) const { return stride * k; }
};

// Selector construction on the one-sided shift. Each step of the system is
// L shifts, so the point can hold L symbols per step and stay within
// 2^{-L} <= r_K of the chosen center for all K steps.
struct SequenceConstruction {
  std::int64_t horizon = 5040;
  double r0 = 0.25;
  BlockLayout layout = BlockLayout::factorial(5040);
  std::int64_t L = 0;  // symbols per step

  NestedSetFamily A() const;  // around 000...
  NestedSetFamily B() const;  // around 111...
  NDSystem system() const;    // autonomous shift^L
  Point center_a() const;
  Point center_b() const;
};

SequenceConstruction sequence_construction(std::int64_t horizon, double r0 = 0.25);

// x_c with symbols [L j, L (j + 1)) equal to the selector of step j; beyond
// the horizon the last symbol repeats. Throws UnsupportedSystem unless the
// construction runs the one-sided shift.
SymbolicPoint selector_point(const SequenceConstruction& c, const Word& selector);

// Witness pair (z, w) on the two-sided shift: z = 0^Z, w_i = 1 exactly when
// 0 <= i < horizon and block_of(i) is odd.
std::pair<SymbolicPoint, SymbolicPoint> dc1_pair_for_shift(std::int64_t horizon);
std::pair<SymbolicPoint, SymbolicPoint> dc1_pair_for_shift(std::int64_t horizon, const BlockLayout& layout);

}  // namespace ndschaos
