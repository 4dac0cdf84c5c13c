#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "powerword/rational.hpp"
#include "powerword/word.hpp"

namespace powerword {

/// A maximal repetition: w[start, start + length) has smallest period
/// `period`, exponent length / period >= 2, and cannot be extended on either
/// side without breaking that period.
struct Run {
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t period = 0;
  Rational exponent;

  friend bool operator==(const Run&, const Run&) = default;
};

/// All runs of w, sorted by (start, period). Linear number of LCE queries via
/// Lyndon roots under both symbol orders.
std::vector<Run> maximal_repetitions(const Word& w);

/// Maximum of |z| / p over every substring z and every period p of z.
/// Words shorter than 2 have critical exponent 1/1.
Rational critical_exponent(const Word& w);

inline constexpr std::size_t kBruteForceLimit = 4096;

/// Cubic reference: every substring, every candidate period, via
/// is_periodic. Throws std::length_error above kBruteForceLimit.
Rational brute_force_critical_exponent(const Word& w);

/// Minimum number of substitutions turning w into a p-periodic word.
std::size_t defect_to_periodic(const Word& w, std::size_t p);

struct PowerDefect {
  std::size_t defect = 0;
  std::size_t period = 0;
  friend bool operator==(const PowerDefect&, const PowerDefect&) = default;
};

/// Smallest defect_to_periodic(w, p) over periods p with |w| / p >= beta,
/// ties to the smaller p. Empty when no period is admissible (|w| < beta).
std::optional<PowerDefect> approximate_power_defect(const Word& w, const Rational& beta);

/// Minimum of approximate_power_defect over every window of length
/// `window_len`. Sliding residue-class counts make this O(|w| * window_len / beta).
struct WindowDefect {
  std::size_t defect = 0;
  std::size_t period = 0;
  std::size_t window_start = 0;
  std::size_t window_len = 0;
  friend bool operator==(const WindowDefect&, const WindowDefect&) = default;
};
std::optional<WindowDefect> min_window_defect(const Word& w, std::size_t window_len, const Rational& beta);

/// Raised when check_period_difference is called on inputs that do not meet
/// its hypotheses, as opposed to a failed verification.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Given periods t1 > t2 of w, checks that the prefix and the suffix of
/// length |w| - t2 both have period t1 - t2.
bool check_period_difference(const Word& w, std::size_t t1, std::size_t t2);

}  // namespace powerword
