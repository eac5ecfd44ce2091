#include "ndschaos/system.hpp"

#include <cmath>
#include <cstdio>

#include "ndschaos/dynamics.hpp"
#include "ndschaos/error.hpp"

namespace ndschaos {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

MapSpec family_map(FamilyKind family, double parameter) {
  return family == FamilyKind::Logistic ? MapSpec::logistic(parameter) : MapSpec::tent(parameter);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* decay_name(ParamDecay d) {
  switch (d) {
    case ParamDecay::Harmonic: return "harmonic";
    case ParamDecay::Geometric: return "geometric";
    case ParamDecay::Constant: return "constant";
  }
  return "?";
}

}  // namespace

double ParameterRule::at(std::int64_t n) const {
  switch (decay) {
    case ParamDecay::Harmonic: return limit + scale / static_cast<double>(n);
    case ParamDecay::Geometric: return limit + scale * std::pow(ratio, static_cast<double>(n));
    case ParamDecay::Constant: return limit;
  }
  return limit;
}

NDSystem::NDSystem(Space space, Generator generator) : space_(space), generator_(std::move(generator)) {
  std::visit(overloaded{
                 [&](const ExplicitList& l) {
                   if (l.maps.empty()) throw Error(ErrorKind::EmptyInput, "explicit map list is empty");
                   for (const auto& m : l.maps) m.check_space(space_);
                 },
                 [&](const ParametricFamily& f) {
                   if (space_.symbolic())
                     throw Error(ErrorKind::DomainViolation, "parametric families act on real spaces");
                   if (f.rule.decay == ParamDecay::Geometric && !(std::fabs(f.rule.ratio) < 1.0))
                     throw Error(ErrorKind::InvalidArgument, "geometric decay needs |ratio| < 1");
                   // Every parameter must give a self-map; the rule is monotone
                   // in n so the first terms and the limit bound it.
                   for (std::int64_t n = 1; n <= 64; ++n) family_map(f.family, f.rule.at(n));
                   family_map(f.family, f.rule.limit);
                 },
                 [&](const MovingBump& b) {
                   if (space_.symbolic())
                     throw Error(ErrorKind::DomainViolation, "bump families act on real spaces");
                   b.limit.check_space(space_);
                 },
                 [&](const Autonomous& a) { a.map.check_space(space_); },
                 [&](const CounterexampleAlternating& c) {
                   c.F.check_space(space_);
                   if (!c.F.invertible_on(space_))
                     throw Error(ErrorKind::NonInvertibleMap,
                                 "counterexample needs a homeomorphism, got " + c.F.describe());
                 },
                 [&](const IterateOf& it) {
                   if (!it.base) throw Error(ErrorKind::InvalidArgument, "iterate of a null system");
                   if (it.k < 1) throw Error(ErrorKind::InvalidArgument, "iterate order must be >= 1");
                   if (!(it.base->space() == space_))
                     throw Error(ErrorKind::DomainViolation, "iterate space differs from base space");
                 },
             },
             generator_);
}

bool NDSystem::finitely_generated() const {
  return std::visit(overloaded{
                        [](const ExplicitList&) { return true; },
                        [](const ParametricFamily& f) { return f.rule.decay == ParamDecay::Constant; },
                        [](const MovingBump&) { return false; },
                        [](const Autonomous&) { return true; },
                        [](const CounterexampleAlternating&) { return false; },
                        [](const IterateOf& it) { return it.base->finitely_generated(); },
                    },
                    generator_);
}

std::optional<MapSpec> NDSystem::limit() const {
  return std::visit(overloaded{
                        [](const ExplicitList& l) -> std::optional<MapSpec> {
                          if (l.tail == TailRule::RepeatLast || l.maps.size() == 1) return l.maps.back();
                          return std::nullopt;
                        },
                        [](const ParametricFamily& f) -> std::optional<MapSpec> {
                          return family_map(f.family, f.rule.limit);
                        },
                        [](const MovingBump& b) -> std::optional<MapSpec> { return b.limit; },
                        [](const Autonomous& a) -> std::optional<MapSpec> { return a.map; },
                        [](const CounterexampleAlternating&) -> std::optional<MapSpec> { return std::nullopt; },
                        [](const IterateOf& it) -> std::optional<MapSpec> {
                          auto base = it.base->limit();
                          if (!base) return std::nullopt;
                          return it.k == 1 ? *base : MapSpec::power(*base, it.k);
                        },
                    },
                    generator_);
}

MapSpec NDSystem::map_at(std::int64_t n) const {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "maps are indexed from 1");
  return std::visit(
      overloaded{
          [&](const ExplicitList& l) {
            const auto size = static_cast<std::int64_t>(l.maps.size());
            std::int64_t idx = n - 1;
            if (idx >= size) idx = l.tail == TailRule::RepeatLast ? size - 1 : idx % size;
            return l.maps[static_cast<std::size_t>(idx)];
          },
          [&](const ParametricFamily& f) { return family_map(f.family, f.rule.at(n)); },
          [&](const MovingBump& b) {
            const double c = 1.0 / static_cast<double>(n);
            return MapSpec::bump(b.limit, c, c, b.target);
          },
          [&](const Autonomous& a) { return a.map; },
          [&](const CounterexampleAlternating& c) {
            return n % 2 == 1 ? MapSpec::power(c.F, n + 1) : MapSpec::power(c.F, -n);
          },
          [&](const IterateOf& it) {
            std::vector<MapSpec> maps;
            maps.reserve(static_cast<std::size_t>(it.k));
            const std::int64_t first = it.k * (n - 1) + 1;
            for (std::int64_t j = first + it.k - 1; j >= first; --j) maps.push_back(it.base->map_at(j));
            return MapSpec::composite(std::move(maps));
          },
      },
      generator_);
}

Point NDSystem::step(std::int64_t n, const Point& p) const {
  return std::visit(
      overloaded{
          [&](const ParametricFamily& f) -> Point {
            RealPoint r = std::get<RealPoint>(p);
            const double a = f.rule.at(n);
            for (int i = 0; i < r.dim; ++i) {
              auto& x = r.x[static_cast<std::size_t>(i)];
              x = f.family == FamilyKind::Logistic ? detail::logistic_value(a, x) : detail::tent_value(a, x);
            }
            return r;
          },
          [&](const Autonomous& a) -> Point { return detail::apply_unchecked(space_, a.map, p); },
          [&](const CounterexampleAlternating& c) -> Point {
            if (const auto* s = std::get_if<MapSpec::Shift>(&c.F.kind())) {
              const std::int64_t dir = s->direction == ShiftDirection::Forward ? 1 : -1;
              const std::int64_t e = n % 2 == 1 ? n + 1 : -n;
              return std::get<SymbolicPoint>(p).shifted(dir * e);
            }
            return detail::apply_unchecked(space_, map_at(n), p);
          },
          [&](const IterateOf& it) -> Point { return compose_segment(*it.base, it.k * (n - 1) + 1, it.k, p); },
          [&](const auto&) -> Point { return detail::apply_unchecked(space_, map_at(n), p); },
      },
      generator_);
}

std::string NDSystem::describe() const {
  const std::string body = std::visit(
      overloaded{
          [](const ExplicitList& l) {
            std::string s = "list(";
            for (std::size_t i = 0; i < l.maps.size(); ++i) {
              if (i) s += ",";
              s += l.maps[i].describe();
            }
            return s + (l.tail == TailRule::RepeatLast ? ";repeat-last)" : ";cycle)");
          },
          [](const ParametricFamily& f) {
            return std::string(f.family == FamilyKind::Logistic ? "logistic" : "tent") + "-family(" +
                   decay_name(f.rule.decay) + ",limit=" + num(f.rule.limit) + ",scale=" + num(f.rule.scale) +
                   (f.rule.decay == ParamDecay::Geometric ? ",ratio=" + num(f.rule.ratio) : std::string()) + ")";
          },
          [](const MovingBump& b) { return "moving-bump(" + b.limit.describe() + ",target=" + num(b.target) + ")"; },
          [](const Autonomous& a) { return "autonomous(" + a.map.describe() + ")"; },
          [](const CounterexampleAlternating& c) { return "counterexample(" + c.F.describe() + ")"; },
          [](const IterateOf& it) { return "iterate(" + it.base->describe() + ",k=" + std::to_string(it.k) + ")"; },
      },
      generator_);
  return body + " on " + space_.name();
}

NDSystem autonomous(Space space, MapSpec map) { return NDSystem(space, Autonomous{std::move(map)}); }

}  // namespace ndschaos
