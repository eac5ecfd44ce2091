#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ndschaos/map_spec.hpp"

namespace ndschaos {

class NDSystem;

enum class TailRule { RepeatLast, Cycle };
enum class ParamDecay { Harmonic, Geometric, Constant };
enum class FamilyKind { Logistic, Tent };

// n -> limit + scale / n, limit + scale * ratio^n, or limit.
struct ParameterRule {
  ParamDecay decay = ParamDecay::Constant;
  double limit = 0.0;
  double scale = 0.0;
  double ratio = 0.5;

  double at(std::int64_t n) const;
};

struct ExplicitList {
  std::vector<MapSpec> maps;
  TailRule tail = TailRule::RepeatLast;
};

// f_n = family(rule(n)); converges uniformly to family(rule.limit).
struct ParametricFamily {
  FamilyKind family = FamilyKind::Logistic;
  ParameterRule rule;
};

// f_n = limit blended toward `target` on a tent supported on (0, 2/n). Converges
// pointwise to `limit` but not uniformly.
struct MovingBump {
  MapSpec limit;
  double target = 0.3;
};

struct Autonomous {
  MapSpec map;
};

// f_i = F^{i+1} for odd i and F^{-i} for even i.
struct CounterexampleAlternating {
  MapSpec F;
};

// f_n = base f_{k(n-1)+1}^k.
struct IterateOf {
  std::shared_ptr<const NDSystem> base;
  std::int64_t k = 1;
};

using Generator =
    std::variant<ExplicitList, ParametricFamily, MovingBump, Autonomous, CounterexampleAlternating, IterateOf>;

// Non-autonomous discrete system: a rule giving f_n for every n >= 1.
// Immutable; safe to share across threads.
class NDSystem {
 public:
  NDSystem(Space space, Generator generator);

  const Space& space() const noexcept { return space_; }
  const Generator& generator() const noexcept { return generator_; }

  bool finitely_generated() const;

  // Known limit map of the sequence, when the generator has one.
  std::optional<MapSpec> limit() const;

  MapSpec map_at(std::int64_t n) const;

  // f_n(p). p must already be a point of space().
  Point step(std::int64_t n, const Point& p) const;

  std::string describe() const;

 private:
  Space space_;
  Generator generator_;
};

NDSystem autonomous(Space space, MapSpec map);

}  // namespace ndschaos
