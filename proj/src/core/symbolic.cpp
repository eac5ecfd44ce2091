#include "ndschaos/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "ndschaos/error.hpp"

namespace ndschaos {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

void make_primitive(Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) {
      w.resize(p);
      return;
    }
  }
}

void rotate_right1(Word& w) { std::rotate(w.begin(), w.end() - 1, w.end()); }
void rotate_left1(Word& w) { std::rotate(w.begin(), w.begin() + 1, w.end()); }

void check_symbols(const Word& w, const char* what, bool allow_empty) {
  if (!allow_empty && w.empty())
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " periodic word must be nonempty");
  for (auto s : w)
    if (s > 1) throw Error(ErrorKind::InvalidArgument, std::string(what) + " contains a non-binary symbol");
}

void append_word(std::ostringstream& os, const Word& w, std::size_t max_len) {
  const std::size_t n = std::min(w.size(), max_len);
  for (std::size_t i = 0; i < n; ++i) os << static_cast<int>(w[i]);
  if (w.size() > n) os << "...<" << w.size() << ">";
}

}  // namespace

SymbolicPoint::SymbolicPoint() : SymbolicPoint(constant(false, 0)) {}

SymbolicPoint SymbolicPoint::from_body(bool two_sided, Word left, Word core, Word right,
                                       std::int64_t core_start, bool periodic) {
  auto body = std::make_shared<Body>();
  body->core = std::move(core);
  body->left = std::move(left);
  body->right = std::move(right);
  const std::size_t p = body->right.size();
  const std::size_t reps = (kRunWidth + p - 1) / p;
  body->right_rep.reserve(reps * p);
  for (std::size_t r = 0; r < reps; ++r)
    body->right_rep.insert(body->right_rep.end(), body->right.begin(), body->right.end());

  return SymbolicPoint(std::move(body), two_sided, periodic, core_start);
}

SymbolicPoint SymbolicPoint::two_sided(Word left, Word core, Word right, std::int64_t core_start) {
  check_symbols(left, "left", false);
  check_symbols(right, "right", false);
  check_symbols(core, "core", true);
  make_primitive(left);
  make_primitive(right);

  while (!core.empty() && core.back() == right.back()) {
    rotate_right1(right);
    core.pop_back();
  }
  std::size_t absorbed = 0;
  while (absorbed < core.size() && core[absorbed] == left.back()) {
    rotate_right1(left);
    ++absorbed;
    ++core_start;
  }
  core.erase(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(absorbed));

  if (core.empty()) {
    const std::size_t pl = left.size();
    const std::size_t pr = right.size();
    bool periodic = pl == pr;
    for (std::size_t j = 0; periodic && j < pr; ++j) periodic = right[j] == left[pl - 1 - j];
    if (periodic) {
      const auto p = static_cast<std::int64_t>(pr);
      Word r(pr), l(pr);
      for (std::int64_t j = 0; j < p; ++j) {
        r[static_cast<std::size_t>(j)] = right[static_cast<std::size_t>(floor_mod(j - core_start, p))];
        l[static_cast<std::size_t>(j)] = right[static_cast<std::size_t>(floor_mod(-1 - j - core_start, p))];
      }
      return from_body(true, std::move(l), {}, std::move(r), 0, true);
    }
    // Move the boundary right while the next symbol still follows the left
    // period. Terminates within pl + pr steps for a non-periodic sequence.
    std::size_t guard = pl + pr + 2;
    while (right[0] == left.back()) {
      rotate_right1(left);
      rotate_left1(right);
      ++core_start;
      if (--guard == 0) throw std::logic_error("symbolic canonicalization did not terminate");
    }
  }
  return from_body(true, std::move(left), std::move(core), std::move(right), core_start, false);
}

SymbolicPoint SymbolicPoint::one_sided(Word core, Word right) {
  check_symbols(right, "right", false);
  check_symbols(core, "core", true);
  make_primitive(right);
  while (!core.empty() && core.back() == right.back()) {
    rotate_right1(right);
    core.pop_back();
  }
  return from_body(false, {}, std::move(core), std::move(right), 0, false);
}

SymbolicPoint SymbolicPoint::constant(bool two_sided, std::uint8_t symbol) {
  if (symbol > 1) throw Error(ErrorKind::InvalidArgument, "non-binary symbol");
  auto body = std::make_shared<Body>();
  body->right = {symbol};
  if (two_sided) body->left = {symbol};
  body->right_rep.assign(kRunWidth, symbol);
  return SymbolicPoint(std::move(body), two_sided, two_sided, 0);
}

SymbolicPoint SymbolicPoint::splice(const SymbolicPoint& base, std::int64_t first, const Word& bits) {
  check_symbols(bits, "splice", true);
  if (bits.empty()) return base;
  if (!base.two_sided_ && first < 0)
    throw Error(ErrorKind::InvalidArgument, "one-sided sequences have no negative indices");
  const auto len = static_cast<std::int64_t>(bits.size());
  const std::int64_t a0 = base.periodic_ ? 0 : base.core_start_;
  const std::int64_t a1 = base.periodic_ ? 0 : base.core_end();
  const std::int64_t lo = base.two_sided_ ? std::min(first, a0) : 0;
  const std::int64_t hi = std::max(first + len, a1);

  Word core(static_cast<std::size_t>(hi - lo));
  for (std::int64_t i = lo; i < hi; ++i) core[static_cast<std::size_t>(i - lo)] = base.at(i);
  std::copy(bits.begin(), bits.end(), core.begin() + (first - lo));

  Word right(base.right_period());
  for (std::size_t j = 0; j < right.size(); ++j) right[j] = base.at(hi + static_cast<std::int64_t>(j));
  if (!base.two_sided_) return one_sided(std::move(core), std::move(right));

  Word left(base.left_period());
  for (std::size_t j = 0; j < left.size(); ++j) left[j] = base.at(lo - 1 - static_cast<std::int64_t>(j));
  return two_sided(std::move(left), std::move(core), std::move(right), lo);
}

std::int64_t SymbolicPoint::core_length() const noexcept {
  return static_cast<std::int64_t>(body_->core.size()) - lo_;
}

std::size_t SymbolicPoint::left_period() const noexcept {
  return periodic_ ? body_->right.size() : body_->left.size();
}

std::size_t SymbolicPoint::right_period() const noexcept { return body_->right.size(); }

std::uint8_t SymbolicPoint::at(std::int64_t i) const {
  const Body& b = *body_;
  if (periodic_) {
    const auto p = static_cast<std::int64_t>(b.right.size());
    return b.right[static_cast<std::size_t>(floor_mod(i + phase_, p))];
  }
  if (i < core_start_) {
    if (!two_sided_) throw Error(ErrorKind::DomainViolation, "negative index on a one-sided sequence");
    const auto p = static_cast<std::int64_t>(b.left.size());
    return b.left[static_cast<std::size_t>(floor_mod(core_start_ - 1 - i, p))];
  }
  const std::int64_t off = i - core_start_;
  const std::int64_t live = core_length();
  if (off < live) return b.core[static_cast<std::size_t>(lo_ + off)];
  const auto p = static_cast<std::int64_t>(b.right.size());
  return b.right[static_cast<std::size_t>(floor_mod(off - live + phase_, p))];
}

std::pair<const std::uint8_t*, std::int64_t> SymbolicPoint::run_at(std::int64_t i) const {
  const Body& b = *body_;
  const auto rep = static_cast<std::int64_t>(b.right_rep.size());
  const auto p = static_cast<std::int64_t>(b.right.size());
  if (periodic_) {
    const std::int64_t idx = floor_mod(i + phase_, p);
    return {b.right_rep.data() + idx, rep - idx};
  }
  if (i < core_start_) {
    const auto pl = static_cast<std::int64_t>(b.left.size());
    return {b.left.data() + floor_mod(core_start_ - 1 - i, pl), 1};
  }
  const std::int64_t off = i - core_start_;
  const std::int64_t live = core_length();
  if (off < live) return {b.core.data() + lo_ + off, live - off};
  const std::int64_t idx = floor_mod(off - live + phase_, p);
  return {b.right_rep.data() + idx, rep - idx};
}

SymbolicPoint SymbolicPoint::shifted(std::int64_t steps) const {
  if (steps == 0) return *this;
  SymbolicPoint out = *this;
  if (two_sided_) {
    if (periodic_) {
      out.phase_ = floor_mod(phase_ + steps, static_cast<std::int64_t>(body_->right.size()));
    } else {
      out.core_start_ = core_start_ - steps;
    }
    return out;
  }
  if (steps < 0) throw Error(ErrorKind::NonInvertibleMap, "backward shift on a one-sided sequence");
  const std::int64_t live = core_length();
  if (steps <= live) {
    out.lo_ = lo_ + steps;
  } else {
    out.lo_ = static_cast<std::int64_t>(body_->core.size());
    out.phase_ = floor_mod(phase_ + (steps - live), static_cast<std::int64_t>(body_->right.size()));
  }
  return out;
}

Word SymbolicPoint::left_word() const {
  if (!two_sided_) return {};
  Word w(left_period());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const std::int64_t boundary = periodic_ ? 0 : core_start_;
    w[j] = at(boundary - 1 - static_cast<std::int64_t>(j));
  }
  return w;
}

Word SymbolicPoint::core_word() const {
  const auto& c = body_->core;
  return Word(c.begin() + lo_, c.end());
}

Word SymbolicPoint::right_word() const {
  Word w(right_period());
  const std::int64_t boundary = periodic_ ? 0 : core_end();
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = at(boundary + static_cast<std::int64_t>(j));
  return w;
}

std::string SymbolicPoint::to_string(std::size_t max_core) const {
  std::ostringstream os;
  if (two_sided_) {
    Word left = left_word();
    std::reverse(left.begin(), left.end());
    os << "(";
    append_word(os, left, 32);
    os << ")~";
  }
  os << "[";
  append_word(os, core_word(), max_core);
  os << "]@" << (periodic_ ? 0 : core_start_) << "(";
  append_word(os, right_word(), 32);
  os << ")~";
  return os.str();
}

bool operator==(const SymbolicPoint& a, const SymbolicPoint& b) {
  if (a.two_sided_ != b.two_sided_ || a.periodic_ != b.periodic_) return false;
  if (a.right_period() != b.right_period()) return false;
  if (a.periodic_) {
    const auto p = static_cast<std::int64_t>(a.right_period());
    for (std::int64_t j = 0; j < p; ++j)
      if (a.at(j) != b.at(j)) return false;
    return true;
  }
  if (a.core_start_ != b.core_start_ || a.core_length() != b.core_length()) return false;
  if (a.two_sided_ && a.body_->left != b.body_->left) return false;
  const auto n = static_cast<std::size_t>(a.core_length());
  if (n > 0 && std::memcmp(a.body_->core.data() + a.lo_, b.body_->core.data() + b.lo_, n) != 0)
    return false;
  const std::int64_t end = a.core_end();
  const auto p = static_cast<std::int64_t>(a.right_period());
  for (std::int64_t j = 0; j < p; ++j)
    if (a.at(end + j) != b.at(end + j)) return false;
  return true;
}

std::int64_t first_difference(const SymbolicPoint& a, const SymbolicPoint& b, std::int64_t limit) {
  std::int64_t best = -1;
  std::int64_t i = 0;
  while (i <= limit) {
    auto [pa, la] = a.run_at(i);
    auto [pb, lb] = b.run_at(i);
    const std::int64_t n = std::min({la, lb, limit - i + 1});
    const auto m = std::mismatch(pa, pa + n, pb);
    if (m.first != pa + n) {
      best = i + (m.first - pa);
      break;
    }
    i += n;
  }
  if (a.two_sided() && b.two_sided()) {
    const std::int64_t stop = best < 0 ? limit : best - 1;
    for (std::int64_t k = 1; k <= stop; ++k) {
      if (a.at(-k) != b.at(-k)) return k;
    }
  }
  return best;
}

double symbolic_distance(const SymbolicPoint& a, const SymbolicPoint& b) {
  if (a.two_sided() != b.two_sided())
    throw Error(ErrorKind::DomainViolation, "distance between one-sided and two-sided sequences");
  // Beyond this index every term is below the smallest subnormal double.
  constexpr std::int64_t kScanLimit = 1100;
  constexpr int kWindow = 120;
  const std::int64_t k0 = first_difference(a, b, kScanLimit);
  if (k0 < 0) return 0.0;
  unsigned __int128 acc = 0;
  const bool two = a.two_sided();
  for (int j = 0; j <= kWindow; ++j) {
    const std::int64_t k = k0 + j;
    unsigned c = a.at(k) != b.at(k) ? 1u : 0u;
    if (two && k > 0) c += a.at(-k) != b.at(-k) ? 1u : 0u;
    acc += static_cast<unsigned __int128>(c) << (kWindow - j);
  }
  const auto scaled = static_cast<double>(acc);
  return std::ldexp(scaled, static_cast<int>(-(k0 + 1) - kWindow));
}

}  // namespace ndschaos
