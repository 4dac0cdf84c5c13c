#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "powerword/pattern.hpp"
#include "powerword/rational.hpp"

namespace powerword {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// One bad event over binary variables. Two events are neighbours when their
/// supports intersect.
struct Event {
  std::vector<std::size_t> support;  // sorted, distinct, nonempty
  BigRational probability;
  BigRational epsilon;
  std::string tag;
};

struct EventSystem {
  std::size_t variable_count = 0;
  std::vector<Event> events;

  /// Throws std::invalid_argument on empty supports, out-of-range variables,
  /// probabilities outside [0, 1] or epsilons outside (0, 1).
  void validate() const;
};

struct EventSlack {
  BigRational lhs;  // Pr[A_i]
  BigRational rhs;  // eps_i * prod over neighbours (1 - eps_j)
  std::size_t neighbours = 0;
  bool holds = false;
};

struct AsymmetricCheck {
  bool holds = true;
  std::vector<EventSlack> events;
};

/// Pr[A_i] <= eps_i * prod_{j in N(i), j != i} (1 - eps_j) for every i, in
/// exact rational arithmetic.
AsymmetricCheck check_asymmetric_condition(const EventSystem& system);

/// Event file: one event per line, "<v1,v2,...> <probability> <epsilon> [tag]",
/// rationals as p/q. '#' starts a comment line. The variable count is one
/// past the largest index seen.
EventSystem read_event_file(std::istream& in);

/// Smallest N >= 1 with
///   2^(beta-1) <= 1 - 2^((gamma-beta)(N+1)) / (1 - 2^(gamma-beta)),
/// decided with outward-rounded dyadic bounds on every power of two so the
/// answer is certified. Requires 0 < gamma < beta < 1.
std::size_t threshold_n(const Rational& gamma, const Rational& beta);

/// Certified truth value of the inequality above at a given N.
bool threshold_holds(const Rational& gamma, const Rational& beta, std::size_t n);

/// Window length ceil(beta * p) of a period-p event.
std::size_t window_length(const Rational& beta, std::size_t p);

/// eps exponent used when none is given: 9/10 of the way from 0 to the
/// per-variable probability exponent 1 - 1/beta of a beta-power window.
Rational default_epsilon_exponent(const Rational& beta);

/// Dyadic lower approximation of 2^(-exponent * support_size) with 64
/// significant bits.
BigRational epsilon_for_support(const Rational& exponent, std::size_t support_size);

/// One event per (start, period) window of length ceil(beta * p), periods
/// p_min .. with window inside [0, n). Variables are the pattern's classes
/// meeting [0, n). Probability is 2^-(classes in window - components after
/// joining positions p apart). Windows lying inside an active interval whose
/// period divides p are forced and left out.
EventSystem build_power_events(const RepetitionPattern& pattern, std::size_t n, const Rational& beta,
                               std::size_t p_min);
EventSystem build_power_events(const RepetitionPattern& pattern, std::size_t n, const Rational& beta,
                               std::size_t p_min, const Rational& epsilon_exponent);

/// Marsaglia xorshift64 (shifts 13, 7, 17). A zero seed is replaced by
/// 0x9E3779B97F4A7C15. bit() is the top bit of the next state.
class Xorshift64 {
 public:
  explicit Xorshift64(std::uint64_t seed) : state_(seed == 0 ? 0x9E3779B97F4A7C15ULL : seed) {}
  std::uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }
  std::uint8_t bit() { return static_cast<std::uint8_t>(next() >> 63); }

 private:
  std::uint64_t state_;
};

struct WindowEvent {
  std::size_t start = 0;
  std::size_t period = 0;
  friend auto operator<=>(const WindowEvent&, const WindowEvent&) = default;
};

struct ResampleTrace {
  std::size_t rounds = 0;
  std::vector<WindowEvent> resampled;
  std::uint64_t seed = 0;
  friend bool operator==(const ResampleTrace&, const ResampleTrace&) = default;
};

struct ResampleResult {
  std::vector<std::uint8_t> tau;  // one bit per class meeting [0, n)
  ResampleTrace trace;
};

class ResampleExhausted : public std::runtime_error {
 public:
  explicit ResampleExhausted(ResampleTrace trace)
      : std::runtime_error("resampling exceeded max_rounds after " + std::to_string(trace.rounds) + " rounds"),
        trace_(std::move(trace)) {}
  [[nodiscard]] const ResampleTrace& trace() const { return trace_; }

 private:
  ResampleTrace trace_;
};

/// Fills the pattern's classes so that no event of build_power_events holds.
/// Classes are drawn in id order from Xorshift64(seed); then, while some
/// event holds, the one with the smallest (start, period) has every class of
/// its window redrawn in id order. Throws ResampleExhausted when a violation
/// remains after max_rounds resamplings.
ResampleResult resample_fill(const RepetitionPattern& pattern, std::size_t n, const Rational& beta, std::size_t p_min,
                             std::uint64_t seed, std::size_t max_rounds);

}  // namespace powerword
