#include "ndschaos/kernels.hpp"

#include <exception>

#include "ndschaos/error.hpp"

namespace ndschaos::kernels {

namespace {

// Exceptions must not leave an OpenMP region; the first one is kept and
// rethrown after the loop.
class ErrorSlot {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
#pragma omp critical(ndschaos_error_slot)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

void profile_into(const NDSystem& sys, const Point& x0, const Point& y0, std::int64_t horizon,
                  PairDistanceProfile& out) {
  const Space& sp = sys.space();
  out.diameter = sp.diameter();
  out.horizon = horizon;
  out.d.resize(static_cast<std::size_t>(horizon));
  Point x = x0;
  Point y = y0;
  for (std::int64_t i = 0; i < horizon; ++i) {
    out.d[static_cast<std::size_t>(i)] = distance(sp, x, y);
    if (i + 1 < horizon) {
      x = sys.step(i + 1, x);
      y = sys.step(i + 1, y);
    }
  }
}

// One running pass over d per t value.
void counts_for_t(const std::vector<double>& d, double t, const std::vector<std::int64_t>& ns,
                  std::vector<std::int64_t>& row) {
  row.assign(ns.size(), 0);
  std::int64_t count = 0;
  std::int64_t i = 0;
  for (std::size_t b = 0; b < ns.size(); ++b) {
    for (; i < ns[b]; ++i) count += d[static_cast<std::size_t>(i)] < t;
    row[b] = count;
  }
}

}  // namespace

std::vector<PairDistanceProfile> pair_profiles(const NDSystem& sys,
                                               const std::vector<std::pair<Point, Point>>& pairs,
                                               std::int64_t horizon, Exec exec) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "profile horizon must be >= 1");
  for (const auto& [x, y] : pairs) {
    require_in(sys.space(), x);
    require_in(sys.space(), y);
  }
  std::vector<PairDistanceProfile> out(pairs.size());
  const auto n = static_cast<std::int64_t>(pairs.size());
  if (exec == Exec::Serial) {
    for (std::int64_t k = 0; k < n; ++k) {
      const auto& pr = pairs[static_cast<std::size_t>(k)];
      profile_into(sys, pr.first, pr.second, horizon, out[static_cast<std::size_t>(k)]);
    }
    return out;
  }
  ErrorSlot slot;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < n; ++k) {
    slot.run([&] {
      const auto& pr = pairs[static_cast<std::size_t>(k)];
      profile_into(sys, pr.first, pr.second, horizon, out[static_cast<std::size_t>(k)]);
    });
  }
  slot.rethrow();
  return out;
}

std::vector<std::vector<std::int64_t>> xi_counts(const std::vector<double>& d, const std::vector<double>& t,
                                                 const std::vector<std::int64_t>& ns, Exec exec) {
  for (std::size_t b = 0; b < ns.size(); ++b) {
    if (ns[b] < 1 || ns[b] > static_cast<std::int64_t>(d.size()))
      throw Error(ErrorKind::HorizonExceeded, "n = " + std::to_string(ns[b]) + " outside [1, " +
                                                  std::to_string(d.size()) + "]");
    if (b > 0 && ns[b] <= ns[b - 1]) throw Error(ErrorKind::InvalidArgument, "evaluation points must increase");
  }
  std::vector<std::vector<std::int64_t>> out(t.size());
  const auto m = static_cast<std::int64_t>(t.size());
  if (exec == Exec::Serial) {
    for (std::int64_t a = 0; a < m; ++a)
      counts_for_t(d, t[static_cast<std::size_t>(a)], ns, out[static_cast<std::size_t>(a)]);
    return out;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < m; ++a)
    counts_for_t(d, t[static_cast<std::size_t>(a)], ns, out[static_cast<std::size_t>(a)]);
  return out;
}

void for_each_index(std::int64_t n, const std::function<void(std::int64_t)>& body, Exec exec) {
  if (exec == Exec::Serial) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  ErrorSlot slot;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) slot.run([&] { body(i); });
  slot.rethrow();
}

}  // namespace ndschaos::kernels
