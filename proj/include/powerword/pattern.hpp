#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "powerword/rational.hpp"
#include "powerword/word.hpp"

namespace powerword {

/// Region [start, start + length) whose positions are equivalent when they
/// differ by a multiple of `period`; exponent = length / period.
struct ActiveInterval {
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t period = 0;
  Rational exponent;

  [[nodiscard]] std::size_t end() const { return start + length; }
  friend bool operator==(const ActiveInterval&, const ActiveInterval&) = default;
};

/// Disjoint, sorted active intervals. Every position outside them is its own
/// equivalence class.
struct RepetitionPattern {
  std::vector<ActiveInterval> intervals;
  std::size_t layout_len = 0;  // end of the last interval

  friend bool operator==(const RepetitionPattern&, const RepetitionPattern&) = default;
};

/// r_1 < ... < r_k < alpha. r_i is found at the smallest denominator q among
/// the multiples of i! for which some p/q lies strictly between r_{i-1} and
/// alpha with reduced denominator still a multiple of i!; the largest such p is
/// taken. r_0 = 1.
std::vector<Rational> enumerate_exponents(const Rational& alpha, std::size_t k);

/// Interval i (1-based) gets length num(r_i), period den(r_i) and is preceded
/// by a gap of gap_factor * i * (p_{i-1} + p_i) free positions.
RepetitionPattern layout_intervals(std::span<const Rational> rationals, std::size_t gap_factor);

/// The class map c(i) of a pattern. Class ids follow the increasing order of
/// the classes' minimal elements.
class ClassMap {
 public:
  explicit ClassMap(const RepetitionPattern& pattern);

  [[nodiscard]] std::size_t class_of(std::size_t i) const;
  /// All members of a class, ascending. Finite for every id.
  [[nodiscard]] std::vector<std::size_t> class_members(std::size_t id) const;
  /// m(t): size of the class containing t.
  [[nodiscard]] std::size_t multiplicity(std::size_t t) const;
  /// Number of classes whose minimal element is below n.
  [[nodiscard]] std::size_t classes_below(std::size_t n) const;
  /// Index of the interval containing i, or npos.
  [[nodiscard]] std::size_t interval_at(std::size_t i) const;

  [[nodiscard]] const RepetitionPattern& pattern() const { return pattern_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  RepetitionPattern pattern_;
  std::vector<std::size_t> base_;  // first class id of each interval
};

std::size_t class_of(const RepetitionPattern& pattern, std::size_t i);
std::vector<std::size_t> class_members(const RepetitionPattern& pattern, std::size_t id);

/// #_f of [a, b): number of classes meeting the range.
std::size_t free_bit_count(const RepetitionPattern& pattern, std::size_t a, std::size_t b);

/// Minimum of free_bit_count(a, b) / (b - a) over [a, b) within [0, n) with
/// b - a >= min_len. Exact: the ratio is linear-fractional on the cells cut
/// out by the interval endpoints, so only cell vertices are evaluated.
/// Returns 1/1 when no window qualifies.
Rational min_free_density(const RepetitionPattern& pattern, std::size_t n, std::size_t min_len);

/// Symbol i mod M at position i, over an alphabet of size M.
Word periodic_layer(std::size_t M, std::size_t n);

inline constexpr Symbol kBracketBlank = 0;
inline constexpr Symbol kBracketOpen = 1;
inline constexpr Symbol kBracketClose = 2;

/// Open on each interval's first position, close on its last, blank
/// elsewhere. Positions at or beyond n are dropped.
Word bracket_layer(const RepetitionPattern& pattern, std::size_t n);

/// omega_i = tau[c(i)] for i < n. tau must cover classes_below(n).
Word materialize(const RepetitionPattern& pattern, std::span<const std::uint8_t> tau, std::size_t n);

}  // namespace powerword
