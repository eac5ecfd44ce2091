#include "ndschaos/space.hpp"

#include <cmath>
#include <cstdio>

#include "ndschaos/error.hpp"

namespace ndschaos {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonInvertibleMap: return "NonInvertibleMap";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::HorizonTooSmall: return "HorizonTooSmall";
    case ErrorKind::HorizonExceeded: return "HorizonExceeded";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::UnsupportedSystem: return "UnsupportedSystem";
    case ErrorKind::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IOError: return "IOError";
  }
  return "Error";
}

double Space::diameter() const noexcept {
  switch (kind) {
    case SpaceKind::UnitInterval: return 1.0;
    case SpaceKind::UnitSquare: return std::sqrt(2.0);
    case SpaceKind::ShiftOneSided: return 1.0;
    case SpaceKind::ShiftTwoSided: return 1.5;
  }
  return 1.0;
}

std::string Space::name() const {
  switch (kind) {
    case SpaceKind::UnitInterval: return "interval";
    case SpaceKind::UnitSquare: return "square";
    case SpaceKind::ShiftOneSided: return "shift-one-sided";
    case SpaceKind::ShiftTwoSided: return "shift-two-sided";
  }
  return "?";
}

Space parse_space(const std::string& name) {
  if (name == "interval") return Space::unit_interval();
  if (name == "square") return Space::unit_square();
  if (name == "shift-one-sided") return Space::shift_one_sided();
  if (name == "shift-two-sided") return Space::shift_two_sided();
  throw Error(ErrorKind::InvalidArgument, "unknown space '" + name + "'");
}

bool contains(const Space& space, const Point& p) {
  if (const auto* r = std::get_if<RealPoint>(&p)) {
    if (space.symbolic() || r->dim != space.dimension()) return false;
    for (int i = 0; i < r->dim; ++i) {
      const double v = r->x[static_cast<std::size_t>(i)];
      if (!(v >= 0.0 && v <= 1.0)) return false;
    }
    return true;
  }
  const auto& s = std::get<SymbolicPoint>(p);
  return space.symbolic() && s.two_sided() == (space.kind == SpaceKind::ShiftTwoSided);
}

void require_in(const Space& space, const Point& p) {
  if (!contains(space, p))
    throw Error(ErrorKind::DomainViolation, describe(p) + " is not a point of " + space.name());
}

double distance(const Space& space, const Point& a, const Point& b) {
  if (space.symbolic()) {
    const auto* sa = std::get_if<SymbolicPoint>(&a);
    const auto* sb = std::get_if<SymbolicPoint>(&b);
    if (!sa || !sb) throw Error(ErrorKind::DomainViolation, "real point in a shift space");
    return symbolic_distance(*sa, *sb);
  }
  const auto* ra = std::get_if<RealPoint>(&a);
  const auto* rb = std::get_if<RealPoint>(&b);
  if (!ra || !rb) throw Error(ErrorKind::DomainViolation, "symbolic point in a real space");
  if (space.kind == SpaceKind::UnitInterval) return std::fabs(ra->x[0] - rb->x[0]);
  const double dx = ra->x[0] - rb->x[0];
  const double dy = ra->x[1] - rb->x[1];
  return std::sqrt(dx * dx + dy * dy);
}

std::string describe(const Point& p) {
  if (const auto* r = std::get_if<RealPoint>(&p)) {
    char buf[64];
    if (r->dim == 1)
      std::snprintf(buf, sizeof buf, "%.17g", r->x[0]);
    else
      std::snprintf(buf, sizeof buf, "(%.17g;%.17g)", r->x[0], r->x[1]);
    return buf;
  }
  return std::get<SymbolicPoint>(p).to_string();
}

}  // namespace ndschaos
