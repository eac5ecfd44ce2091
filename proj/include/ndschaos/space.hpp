#pragma once

#include <array>
#include <string>
#include <variant>

#include "ndschaos/symbolic.hpp"

namespace ndschaos {

enum class SpaceKind { UnitInterval, UnitSquare, ShiftOneSided, ShiftTwoSided };

// Compact metric space descriptor. Interval and square use the Euclidean
// metric; shift spaces use the weighted symbol-difference metric of
// symbolic_distance (diameter 1 one-sided, 1.5 two-sided).
struct Space {
  SpaceKind kind = SpaceKind::UnitInterval;
  int alphabet = 2;

  static Space unit_interval() { return {SpaceKind::UnitInterval}; }
  static Space unit_square() { return {SpaceKind::UnitSquare}; }
  static Space shift_one_sided() { return {SpaceKind::ShiftOneSided}; }
  static Space shift_two_sided() { return {SpaceKind::ShiftTwoSided}; }

  bool symbolic() const noexcept {
    return kind == SpaceKind::ShiftOneSided || kind == SpaceKind::ShiftTwoSided;
  }
  int dimension() const noexcept { return kind == SpaceKind::UnitSquare ? 2 : 1; }
  double diameter() const noexcept;
  std::string name() const;

  friend bool operator==(const Space&, const Space&) = default;
};

Space parse_space(const std::string& name);

struct RealPoint {
  std::array<double, 2> x{};
  int dim = 1;

  RealPoint() = default;
  explicit RealPoint(double a) : x{a, 0.0}, dim(1) {}
  RealPoint(double a, double b) : x{a, b}, dim(2) {}

  friend bool operator==(const RealPoint& a, const RealPoint& b) {
    return a.dim == b.dim && a.x[0] == b.x[0] && (a.dim < 2 || a.x[1] == b.x[1]);
  }
};

using Point = std::variant<RealPoint, SymbolicPoint>;

inline Point real_point(double a) { return RealPoint(a); }
inline Point real_point(double a, double b) { return RealPoint(a, b); }

bool contains(const Space& space, const Point& p);
void require_in(const Space& space, const Point& p);

double distance(const Space& space, const Point& a, const Point& b);

std::string describe(const Point& p);

}  // namespace ndschaos
