#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "powerword/word.hpp"

namespace powerword {

using BigInt = boost::multiprecision::cpp_int;

/// A bit string, most significant bit of each field first.
class BitCode {
 public:
  BitCode() = default;

  void push(bool bit) { bits_.push_back(bit); }
  void push_bits(std::uint64_t value, std::size_t width);
  void push_big(const BigInt& value, std::size_t width);
  /// Self-delimiting integer header (see encode_header).
  void push_header(std::uint64_t value);

  [[nodiscard]] std::size_t size() const { return bits_.size(); }
  [[nodiscard]] bool operator[](std::size_t i) const { return bits_[i]; }

  [[nodiscard]] std::string to_string() const;
  static BitCode parse(std::string_view text);

  friend bool operator==(const BitCode&, const BitCode&) = default;

 private:
  std::vector<bool> bits_;
};

/// Sequential reader; throws std::out_of_range on a truncated code.
class BitReader {
 public:
  explicit BitReader(const BitCode& code) : code_(code) {}

  bool bit();
  std::uint64_t bits(std::size_t width);
  BigInt big(std::size_t width);
  std::uint64_t header();
  [[nodiscard]] bool at_end() const { return pos_ == code_.size(); }

 private:
  const BitCode& code_;
  std::size_t pos_ = 0;
};

/// Header code for x >= 0: with v = x + 1 of bit length L, write L - 1 one
/// bits, a zero, then the low L - 1 bits of v. Length 2L - 1, so header(6) is
/// 5 bits and header(0) is 1 bit.
BitCode encode_header(std::uint64_t x);
std::size_t header_length(std::uint64_t x);

/// Bits per symbol: ceil(log2 sigma), 0 for sigma = 1.
std::size_t symbol_width(std::uint32_t sigma);

/// header(|w|) ++ header(p) ++ the first p symbols. Requires w p-periodic.
BitCode encode_power(const Word& w, std::size_t p);
Word decode_power(const BitCode& code, std::uint32_t sigma);

/// header(l) ++ header(p) ++ header(d) ++ base period (per-class majority,
/// ties to the smaller id) ++ colex rank of the d error positions in
/// ceil(log2 C(l, d)) bits ++ each replacement symbol as an index among the
/// sigma - 1 symbols other than the base symbol.
BitCode encode_approx_power(const Word& w, std::size_t p);
Word decode_approx_power(const BitCode& code, std::uint32_t sigma);

/// The combinatorial number system: sum of C(c_i, i) over the sorted
/// positions c_1 < ... < c_d. Bijective onto [0, C(l, d)).
BigInt rank_subset(std::size_t l, const std::vector<std::size_t>& positions);
std::vector<std::size_t> unrank_subset(std::size_t l, std::size_t d, BigInt rank);

BigInt binomial(std::size_t n, std::size_t k);
/// Bits needed for a value in [0, count): 0 when count <= 1.
std::size_t index_width(const BigInt& count);

/// -e log2 e - (1 - e) log2 (1 - e), with H(0) = H(1) = 0.
double binary_entropy(double eps);

/// Length budget for encode_power: p * symbol_width + 4 log2(l + 2) + 16.
double exact_power_bound(std::size_t l, std::size_t p, std::uint32_t sigma);
/// Length budget for encode_approx_power: p * symbol_width + l H(d / l) +
/// d * symbol_width(sigma - 1) + 8 log2 l + 32.
double approx_power_bound(std::size_t l, std::size_t p, std::size_t d, std::uint32_t sigma);

/// Phrases in the incremental (LZ78) parse; a trailing partial phrase counts.
std::size_t lz_phrase_count(const Word& w);

}  // namespace powerword
