#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace ndschaos {

using Word = std::vector<std::uint8_t>;

// Eventually periodic binary sequence, one-sided (indices >= 0) or two-sided
// (indices in Z). Stored as  ...left | core | right...  with core[0] at
// index core_start(). left[0] is the symbol just before the core and the left
// word continues leftwards; right[0] is the symbol just after the core.
//
// Every constructor canonicalizes: periodic words are primitive, the left
// region extends as far right as possible and the right region as far left
// as possible after that. A two-sided sequence that is periodic everywhere is
// kept with an empty core. Two points compare equal iff the sequences agree.
//
// Values are immutable; copies share storage.
class SymbolicPoint {
 public:
  SymbolicPoint();  // one-sided all-zeros

  static SymbolicPoint two_sided(Word left, Word core, Word right, std::int64_t core_start = 0);
  static SymbolicPoint one_sided(Word core, Word right);
  static SymbolicPoint constant(bool two_sided, std::uint8_t symbol);

  // Copy of `base` with symbols [first, first + bits.size()) replaced.
  static SymbolicPoint splice(const SymbolicPoint& base, std::int64_t first, const Word& bits);

  bool two_sided() const noexcept { return two_sided_; }
  bool fully_periodic() const noexcept { return periodic_; }

  std::uint8_t at(std::int64_t i) const;

  // Shift by `steps`: positive is the forward shift (s'_i = s_{i+steps}).
  // Negative steps on a one-sided sequence throw NonInvertibleMap.
  SymbolicPoint shifted(std::int64_t steps) const;

  std::int64_t core_start() const noexcept { return core_start_; }
  std::int64_t core_length() const noexcept;
  std::int64_t core_end() const noexcept { return core_start_ + core_length(); }
  std::size_t left_period() const noexcept;
  std::size_t right_period() const noexcept;

  // Materialized canonical parts. For a fully periodic two-sided sequence the
  // core is empty, the boundary is index 0 and left/right describe s_{-1-j}
  // and s_j.
  Word left_word() const;
  Word core_word() const;
  Word right_word() const;

  // Pointer to symbol i (i >= 0) and the number of symbols that follow it
  // contiguously in storage.
  std::pair<const std::uint8_t*, std::int64_t> run_at(std::int64_t i) const;

  std::string to_string(std::size_t max_core = 48) const;

  friend bool operator==(const SymbolicPoint& a, const SymbolicPoint& b);
  friend bool operator!=(const SymbolicPoint& a, const SymbolicPoint& b) { return !(a == b); }

 private:
  struct Body {
    Word core;
    Word left;
    Word right;
    Word right_rep;  // right repeated to at least kRunWidth symbols
  };
  static constexpr std::size_t kRunWidth = 64;

  SymbolicPoint(std::shared_ptr<const Body> body, bool two_sided, bool periodic, std::int64_t core_start)
      : body_(std::move(body)), core_start_(core_start), two_sided_(two_sided), periodic_(periodic) {}

  static SymbolicPoint from_body(bool two_sided, Word left, Word core, Word right,
                                 std::int64_t core_start, bool periodic);

  std::shared_ptr<const Body> body_;
  std::int64_t lo_ = 0;          // first live symbol of body_->core
  std::int64_t core_start_ = 0;  // sequence index of the first live core symbol
  std::int64_t phase_ = 0;       // rotation into the right word
  bool two_sided_ = false;
  bool periodic_ = false;
};

// Shift-space metric. One-sided: sum_{i>=0} |s_i - t_i| / 2^{i+1}.
// Two-sided: sum_{i in Z} |s_i - t_i| / 2^{|i|+1}. The sum is located at its
// first nonzero term and accumulated exactly over a 121-term window in
// 128-bit fixed point before the single rounding to double.
double symbolic_distance(const SymbolicPoint& a, const SymbolicPoint& b);

// Smallest k >= 0 with s_k != t_k or s_{-k} != t_{-k} (two-sided), searched
// up to `limit`; returns -1 when none is found.
std::int64_t first_difference(const SymbolicPoint& a, const SymbolicPoint& b, std::int64_t limit);

}  // namespace ndschaos
