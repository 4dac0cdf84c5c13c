#include "powerword/word.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace powerword {

namespace {

constexpr std::uint32_t kCharAlphabet = 36;

int char_to_id(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

char id_to_char(Symbol s) { return s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + (s - 10)); }

std::vector<Symbol> parse_symbols(std::string_view text) {
  std::vector<Symbol> out;
  if (text.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto next = text.find(',', pos);
      if (next == std::string_view::npos) next = text.size();
      auto token = text.substr(pos, next - pos);
      Symbol v = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
        throw std::invalid_argument("bad symbol id '" + std::string(token) + "'");
      }
      out.push_back(v);
      pos = next + 1;
    }
    return out;
  }
  out.reserve(text.size());
  for (char c : text) {
    int id = char_to_id(c);
    if (id < 0) throw std::invalid_argument(std::string("bad symbol character '") + c + "'");
    out.push_back(static_cast<Symbol>(id));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Word::Word(std::vector<Symbol> symbols, std::uint32_t alphabet_size)
    : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {
  if (alphabet_size_ == 0) throw std::invalid_argument("alphabet size must be positive");
  for (Symbol s : symbols_) {
    if (s >= alphabet_size_) {
      throw std::invalid_argument("symbol " + std::to_string(s) + " outside alphabet of size " +
                                  std::to_string(alphabet_size_));
    }
  }
}

Word Word::substr(std::size_t start, std::size_t length) const {
  if (start > size() || length > size() - start) throw std::out_of_range("substring outside word");
  Word out;
  out.symbols_.assign(symbols_.begin() + static_cast<std::ptrdiff_t>(start),
                      symbols_.begin() + static_cast<std::ptrdiff_t>(start + length));
  out.alphabet_size_ = alphabet_size_;
  return out;
}

Word Word::parse(std::string_view text, std::uint32_t alphabet_size) {
  return Word(parse_symbols(trim(text)), alphabet_size);
}

std::string Word::to_string() const {
  std::string out;
  if (alphabet_size_ <= kCharAlphabet) {
    out.reserve(size());
    for (Symbol s : symbols_) out.push_back(id_to_char(s));
    return out;
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(symbols_[i]);
  }
  return out;
}

Rational exponent_of(std::size_t total_len, std::size_t period) {
  if (period == 0) throw std::invalid_argument("exponent_of: period must be positive");
  if (total_len == 0) throw std::invalid_argument("exponent_of: length must be positive");
  return Rational(static_cast<std::int64_t>(total_len), static_cast<std::int64_t>(period));
}

bool is_periodic(std::span<const Symbol> w, std::size_t p) {
  if (p == 0 || p > w.size()) throw std::invalid_argument("is_periodic: need 1 <= p <= |w|");
  for (std::size_t i = 0; i + p < w.size(); ++i) {
    if (w[i] != w[i + p]) return false;
  }
  return true;
}

bool is_periodic(const Word& w, std::size_t p) { return is_periodic(w.symbols(), p); }

std::size_t smallest_period(std::span<const Symbol> w) {
  if (w.empty()) throw std::invalid_argument("smallest_period: empty word");
  // Border array: |w| - longest proper border.
  std::vector<std::size_t> border(w.size() + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    while (k > 0 && w[i] != w[k]) k = border[k];
    if (w[i] == w[k]) ++k;
    border[i + 1] = k;
  }
  return w.size() - border[w.size()];
}

std::size_t smallest_period(const Word& w) { return smallest_period(w.symbols()); }

Word cartesian_product(const Word& w1, const Word& w2) {
  if (w1.size() != w2.size()) throw std::invalid_argument("cartesian_product: length mismatch");
  const std::uint64_t sigma = static_cast<std::uint64_t>(w1.alphabet_size()) * w2.alphabet_size();
  if (sigma > UINT32_MAX) throw std::overflow_error("cartesian_product: alphabet too large");
  std::vector<Symbol> out(w1.size());
  for (std::size_t i = 0; i < w1.size(); ++i) out[i] = w1[i] * w2.alphabet_size() + w2[i];
  return Word(std::move(out), static_cast<std::uint32_t>(sigma));
}

std::size_t hamming_distance(const Word& w1, const Word& w2) {
  if (w1.size() != w2.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < w1.size(); ++i) d += w1[i] != w2[i];
  return d;
}

WordFile read_word_file(std::istream& in) {
  WordFile file;
  bool have_header = false;
  std::vector<std::vector<Symbol>> raw;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      constexpr std::string_view tag = "#alphabet";
      if (t.substr(0, tag.size()) == tag) {
        auto rest = trim(t.substr(tag.size()));
        std::uint32_t sigma = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), sigma);
        if (ec != std::errc() || sigma == 0) throw std::invalid_argument("bad #alphabet header");
        file.alphabet_size = sigma;
        have_header = true;
      }
      continue;
    }
    raw.push_back(parse_symbols(t));
  }
  if (!have_header) {
    Symbol hi = 1;
    for (const auto& r : raw) {
      for (Symbol s : r) hi = std::max(hi, s);
    }
    file.alphabet_size = hi + 1;
  }
  for (auto& r : raw) file.words.emplace_back(std::move(r), file.alphabet_size);
  return file;
}

void write_word_file(std::ostream& out, const WordFile& file) {
  out << "#alphabet " << file.alphabet_size << '\n';
  for (const auto& w : file.words) out << w.to_string() << '\n';
}

}  // namespace powerword
