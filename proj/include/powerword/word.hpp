#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "powerword/rational.hpp"

namespace powerword {

using Symbol = std::uint32_t;

/// A finite word over the alphabet {0, ..., alphabet_size - 1}.
class Word {
 public:
  Word() = default;
  /// Throws std::invalid_argument if a symbol is outside the alphabet.
  Word(std::vector<Symbol> symbols, std::uint32_t alphabet_size);

  [[nodiscard]] std::size_t size() const { return symbols_.size(); }
  [[nodiscard]] bool empty() const { return symbols_.empty(); }
  [[nodiscard]] std::uint32_t alphabet_size() const { return alphabet_size_; }
  [[nodiscard]] std::span<const Symbol> symbols() const { return symbols_; }
  [[nodiscard]] Symbol operator[](std::size_t i) const { return symbols_[i]; }

  [[nodiscard]] Word substr(std::size_t start, std::size_t length) const;

  /// Parses the text map '0'-'9','a'-'z' (alphabets up to 36), or a
  /// comma-separated list of decimal ids when the text contains a comma.
  static Word parse(std::string_view text, std::uint32_t alphabet_size);

  /// Inverse of parse: single characters for alphabets up to 36, decimal ids
  /// joined by ',' above that.
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Symbol> symbols_;
  std::uint32_t alphabet_size_ = 2;
};

/// Exponent |Z| / |X| of a fractional power of total length total_len.
Rational exponent_of(std::size_t total_len, std::size_t period);

/// w[i] == w[i + p] for all valid i. Requires 1 <= p <= |w|.
bool is_periodic(const Word& w, std::size_t p);
bool is_periodic(std::span<const Symbol> w, std::size_t p);

/// Least p with is_periodic(w, p). Requires a nonempty word.
std::size_t smallest_period(const Word& w);
std::size_t smallest_period(std::span<const Symbol> w);

/// Pairs layer symbols position-wise: id = w1[i] * sigma2 + w2[i].
Word cartesian_product(const Word& w1, const Word& w2);

std::size_t hamming_distance(const Word& w1, const Word& w2);

/// Contents of a word file: an optional "#alphabet <sigma>" header followed by
/// one word per line.
struct WordFile {
  std::uint32_t alphabet_size = 2;
  std::vector<Word> words;
};

/// Without a header the alphabet is inferred as max(2, largest id + 1).
WordFile read_word_file(std::istream& in);
void write_word_file(std::ostream& out, const WordFile& file);

}  // namespace powerword
