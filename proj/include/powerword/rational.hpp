#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace powerword {

/// Exact fraction over 64-bit integers, always stored in lowest terms with a
/// positive denominator. Arithmetic goes through 128-bit intermediates and
/// throws std::overflow_error when a result no longer fits.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }

  [[nodiscard]] double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// "p/q" with the denominator always present ("3/1").
  [[nodiscard]] std::string to_string() const;

  /// Accepts "p/q" or a bare integer "p".
  static Rational parse(std::string_view text);

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Largest integer not exceeding a.
std::int64_t floor(const Rational& a);
/// Smallest integer not below a.
std::int64_t ceil(const Rational& a);

}  // namespace powerword
