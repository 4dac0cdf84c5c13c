#include "powerword/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "powerword/repetition.hpp"

namespace powerword {

void BitCode::push_bits(std::uint64_t value, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) bits_.push_back(((value >> i) & 1U) != 0);
}

void BitCode::push_big(const BigInt& value, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) bits_.push_back(boost::multiprecision::bit_test(value, static_cast<unsigned>(i)));
}

void BitCode::push_header(std::uint64_t value) {
  const std::uint64_t v = value + 1;
  const std::size_t len = std::bit_width(v);
  for (std::size_t i = 1; i < len; ++i) bits_.push_back(true);
  bits_.push_back(false);
  push_bits(v, len - 1);
}

std::string BitCode::to_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i] = '1';
  }
  return out;
}

BitCode BitCode::parse(std::string_view text) {
  BitCode code;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit code must contain only '0' and '1'");
    code.push(c == '1');
  }
  return code;
}

bool BitReader::bit() {
  if (pos_ >= code_.size()) throw std::out_of_range("bit code truncated");
  return code_[pos_++];
}

std::uint64_t BitReader::bits(std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v = (v << 1) | static_cast<std::uint64_t>(bit());
  return v;
}

BigInt BitReader::big(std::size_t width) {
  BigInt v = 0;
  for (std::size_t i = 0; i < width; ++i) {
    v <<= 1;
    if (bit()) v |= 1;
  }
  return v;
}

std::uint64_t BitReader::header() {
  std::size_t len = 1;
  while (bit()) {
    if (++len > 64) throw std::invalid_argument("header longer than 64 bits");
  }
  const std::uint64_t low = bits(len - 1);
  const std::uint64_t v = (len == 64 ? 0 : (std::uint64_t{1} << (len - 1))) | low;
  return v - 1;
}

BitCode encode_header(std::uint64_t x) {
  BitCode code;
  code.push_header(x);
  return code;
}

std::size_t header_length(std::uint64_t x) { return 2 * static_cast<std::size_t>(std::bit_width(x + 1)) - 1; }

std::size_t symbol_width(std::uint32_t sigma) {
  if (sigma == 0) throw std::invalid_argument("alphabet size must be positive");
  return sigma == 1 ? 0 : static_cast<std::size_t>(std::bit_width(sigma - 1));
}

BitCode encode_power(const Word& w, std::size_t p) {
  if (!is_periodic(w, p)) throw std::invalid_argument("encode_power: word is not p-periodic");
  BitCode code;
  code.push_header(w.size());
  code.push_header(p);
  const std::size_t width = symbol_width(w.alphabet_size());
  for (std::size_t i = 0; i < p; ++i) code.push_bits(w[i], width);
  return code;
}

Word decode_power(const BitCode& code, std::uint32_t sigma) {
  BitReader in(code);
  const std::uint64_t len = in.header();
  const std::uint64_t p = in.header();
  if (p == 0 || p > len) throw std::invalid_argument("decode_power: bad period header");
  const std::size_t width = symbol_width(sigma);
  std::vector<Symbol> base(p);
  for (auto& s : base) s = static_cast<Symbol>(in.bits(width));
  if (!in.at_end()) throw std::invalid_argument("decode_power: trailing bits");
  std::vector<Symbol> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = base[i % p];
  return Word(std::move(out), sigma);
}

namespace {

// Majority symbol of each residue class, ties to the smaller id.
std::vector<Symbol> majority_base(const Word& w, std::size_t p) {
  std::vector<Symbol> base(p);
  std::vector<Symbol> cls;
  for (std::size_t r = 0; r < p; ++r) {
    cls.clear();
    for (std::size_t i = r; i < w.size(); i += p) cls.push_back(w[i]);
    std::sort(cls.begin(), cls.end());
    std::size_t most = 0;
    for (std::size_t a = 0; a < cls.size();) {
      std::size_t b = a;
      while (b < cls.size() && cls[b] == cls[a]) ++b;
      if (b - a > most) {
        most = b - a;
        base[r] = cls[a];
      }
      a = b;
    }
  }
  return base;
}

}  // namespace

BitCode encode_approx_power(const Word& w, std::size_t p) {
  if (p == 0 || p > w.size()) throw std::invalid_argument("encode_approx_power: need 1 <= p <= |w|");
  const auto base = majority_base(w, p);
  std::vector<std::size_t> errors;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != base[i % p]) errors.push_back(i);
  }
  BitCode code;
  code.push_header(w.size());
  code.push_header(p);
  code.push_header(errors.size());
  const std::size_t width = symbol_width(w.alphabet_size());
  for (Symbol s : base) code.push_bits(s, width);
  code.push_big(rank_subset(w.size(), errors), index_width(binomial(w.size(), errors.size())));
  const std::size_t other_width = w.alphabet_size() > 1 ? symbol_width(w.alphabet_size() - 1) : 0;
  for (std::size_t i : errors) {
    const Symbol b = base[i % p], a = w[i];
    code.push_bits(a < b ? a : a - 1, other_width);
  }
  return code;
}

Word decode_approx_power(const BitCode& code, std::uint32_t sigma) {
  BitReader in(code);
  const std::uint64_t len = in.header();
  const std::uint64_t p = in.header();
  const std::uint64_t d = in.header();
  if (p == 0 || p > len || d > len) throw std::invalid_argument("decode_approx_power: bad headers");
  const std::size_t width = symbol_width(sigma);
  std::vector<Symbol> out(len);
  std::vector<Symbol> base(p);
  for (auto& s : base) s = static_cast<Symbol>(in.bits(width));
  for (std::size_t i = 0; i < len; ++i) out[i] = base[i % p];
  const BigInt count = binomial(len, d);
  BigInt rank = in.big(index_width(count));
  if (rank >= count) throw std::invalid_argument("decode_approx_power: rank out of range");
  const auto errors = unrank_subset(len, d, std::move(rank));
  const std::size_t other_width = sigma > 1 ? symbol_width(sigma - 1) : 0;
  for (std::size_t i : errors) {
    const auto idx = static_cast<Symbol>(in.bits(other_width));
    const Symbol b = base[i % p];
    out[i] = idx < b ? idx : idx + 1;
  }
  if (!in.at_end()) throw std::invalid_argument("decode_approx_power: trailing bits");
  return Word(std::move(out), sigma);
}

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

std::size_t index_width(const BigInt& count) {
  if (count <= 1) return 0;
  const BigInt top = count - 1;
  return static_cast<std::size_t>(boost::multiprecision::msb(top)) + 1;
}

// Both directions walk x = l-1 down to 0 carrying cur = C(x, k), updated by
// exact ratios: C(x-1, k) = C(x, k) (x-k) / x and C(x-1, k-1) = C(x, k) k / x.
BigInt rank_subset(std::size_t l, const std::vector<std::size_t>& positions) {
  std::size_t k = positions.size();
  if (k == 0) return 0;
  if (!std::is_sorted(positions.begin(), positions.end()) ||
      std::adjacent_find(positions.begin(), positions.end()) != positions.end() || positions.back() >= l) {
    throw std::invalid_argument("rank_subset: positions must be distinct, sorted and below l");
  }
  BigInt rank = 0;
  BigInt cur = binomial(l - 1, k);
  for (std::size_t x = l - 1;; --x) {
    const bool member = positions[k - 1] == x;
    if (member) {
      rank += cur;
      if (--k == 0) break;
    }
    if (x == 0) break;
    if (member) {
      cur = cur * (k + 1) / x;
    } else {
      cur = cur * (x - k) / x;
    }
  }
  return rank;
}

std::vector<std::size_t> unrank_subset(std::size_t l, std::size_t d, BigInt rank) {
  std::vector<std::size_t> out(d);
  if (d == 0) return out;
  if (d > l) throw std::invalid_argument("unrank_subset: d exceeds l");
  if (rank < 0 || rank >= binomial(l, d)) throw std::invalid_argument("unrank_subset: rank out of range");
  std::size_t k = d;
  BigInt cur = binomial(l - 1, k);
  for (std::size_t x = l - 1;; --x) {
    const bool member = cur <= rank;
    if (member) {
      out[k - 1] = x;
      rank -= cur;
      if (--k == 0) break;
    }
    if (x == 0) throw std::invalid_argument("unrank_subset: rank out of range");
    if (member) {
      cur = cur * (k + 1) / x;
    } else {
      cur = cur * (x - k) / x;
    }
  }
  return out;
}

double binary_entropy(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::out_of_range("binary_entropy: eps must lie in [0, 1]");
  if (eps == 0.0 || eps == 1.0) return 0.0;
  return -eps * std::log2(eps) - (1.0 - eps) * std::log2(1.0 - eps);
}

double exact_power_bound(std::size_t l, std::size_t p, std::uint32_t sigma) {
  return static_cast<double>(p * symbol_width(sigma)) + 4.0 * std::log2(static_cast<double>(l) + 2.0) + 16.0;
}

double approx_power_bound(std::size_t l, std::size_t p, std::size_t d, std::uint32_t sigma) {
  if (l == 0) throw std::invalid_argument("approx_power_bound: empty word");
  const double ld = static_cast<double>(l);
  const std::size_t other_width = sigma > 1 ? symbol_width(sigma - 1) : 0;
  return static_cast<double>(p * symbol_width(sigma)) + ld * binary_entropy(static_cast<double>(d) / ld) +
         static_cast<double>(d * other_width) + 8.0 * std::log2(ld) + 32.0;
}

std::size_t lz_phrase_count(const Word& w) {
  if (w.empty()) throw std::invalid_argument("lz_phrase_count: empty word");
  std::unordered_map<std::uint64_t, std::uint64_t> trie;
  const std::uint64_t sigma = w.alphabet_size();
  std::uint64_t next_node = 1, node = 0;
  std::size_t phrases = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::uint64_t key = node * sigma + w[i];
    auto it = trie.find(key);
    if (it != trie.end()) {
      node = it->second;
      continue;
    }
    trie.emplace(key, next_node++);
    ++phrases;
    node = 0;
  }
  if (node != 0) ++phrases;
  return phrases;
}

}  // namespace powerword
