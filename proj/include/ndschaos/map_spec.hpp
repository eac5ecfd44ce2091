#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ndschaos/space.hpp"

namespace ndschaos {

enum class ShiftDirection { Forward, Backward };

// Description of a continuous self-map. Real families act coordinatewise on
// the interval or square; Shift acts on shift spaces (Backward only on the
// two-sided space, where the shift is a homeomorphism).
class MapSpec {
 public:
  struct Identity {};
  struct Logistic {
    double mu;
  };
  struct Tent {
    double slope;
  };
  struct Doubling {};
  struct Shift {
    ShiftDirection direction;
  };
  struct Power {
    std::shared_ptr<const MapSpec> base;
    std::int64_t exponent;
  };
  // maps.front() is applied last: Composite{g, h} is g o h.
  struct Composite {
    std::shared_ptr<const std::vector<MapSpec>> maps;
  };
  // x -> (1 - w) base(x) + w target, w = max(0, 1 - |x - center| / half_width).
  // A convex blend, so a self-map of the cube stays one.
  struct Bump {
    std::shared_ptr<const MapSpec> base;
    double center;
    double half_width;
    double target;
  };
  using Kind = std::variant<Identity, Logistic, Tent, Doubling, Shift, Power, Composite, Bump>;

  MapSpec() : kind_(Identity{}) {}

  static MapSpec identity() { return MapSpec(Identity{}); }
  static MapSpec logistic(double mu);
  static MapSpec tent(double slope);
  static MapSpec doubling() { return MapSpec(Doubling{}); }
  static MapSpec shift(ShiftDirection d = ShiftDirection::Forward) { return MapSpec(Shift{d}); }
  static MapSpec power(MapSpec base, std::int64_t exponent);
  static MapSpec composite(std::vector<MapSpec> maps);
  static MapSpec bump(MapSpec base, double center, double half_width, double target);

  const Kind& kind() const noexcept { return kind_; }

  // Throws DomainViolation when the map is not defined on `space`.
  void check_space(const Space& space) const;
  bool invertible_on(const Space& space) const;
  MapSpec inverse(const Space& space) const;

  std::string describe() const;

 private:
  explicit MapSpec(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

// Evaluates m at p. Throws DomainViolation when p is not in `space` or m is
// not defined there, NonInvertibleMap for negative powers of non-invertible
// maps.
Point apply_map(const Space& space, const MapSpec& m, const Point& p);

// Inverse of MapSpec::describe(): identity, doubling, shift, shift^-1,
// logistic(mu), tent(s), power(m,e), compose(m,...), bump(m,c,w,target).
// Throws ParseError.
MapSpec parse_map(const std::string& text);

namespace detail {
// Evaluation without the membership check; the caller guarantees p is in a
// space m was checked against.
Point apply_unchecked(const Space& space, const MapSpec& m, const Point& p);

double logistic_value(double mu, double x);
double tent_value(double slope, double x);
double doubling_value(double x);
}  // namespace detail

}  // namespace ndschaos
