#include "powerword/pattern.hpp"

#include <algorithm>
#include <stdexcept>

namespace powerword {

namespace {

std::int64_t factorial(std::size_t i) {
  std::int64_t f = 1;
  for (std::size_t j = 2; j <= i; ++j) {
    if (f > INT64_MAX / static_cast<std::int64_t>(j)) throw std::overflow_error("enumerate_exponents: i! overflows");
    f *= static_cast<std::int64_t>(j);
  }
  return f;
}

}  // namespace

std::vector<Rational> enumerate_exponents(const Rational& alpha, std::size_t k) {
  if (alpha <= Rational(1)) throw std::invalid_argument("enumerate_exponents: alpha must exceed 1");
  std::vector<Rational> out;
  Rational prev(1);
  for (std::size_t i = 1; i <= k; ++i) {
    const std::int64_t f = factorial(i);
    bool found = false;
    for (std::int64_t q = f; !found; q += f) {
      // largest p with p / q < alpha
      const __int128 scaled = static_cast<__int128>(alpha.num()) * q - 1;
      if (scaled / alpha.den() > INT64_MAX) throw std::overflow_error("enumerate_exponents: numerator overflows");
      for (auto p = static_cast<std::int64_t>(scaled / alpha.den()); Rational(p, q) > prev; --p) {
        const Rational r(p, q);
        if (r.den() % f == 0) {
          out.push_back(r);
          prev = r;
          found = true;
          break;
        }
      }
    }
  }
  return out;
}

RepetitionPattern layout_intervals(std::span<const Rational> rationals, std::size_t gap_factor) {
  RepetitionPattern pattern;
  std::size_t pos = 0, prev_len = 0;
  for (std::size_t i = 0; i < rationals.size(); ++i) {
    const Rational& r = rationals[i];
    if (r <= Rational(1)) throw std::invalid_argument("layout_intervals: exponents must exceed 1");
    const auto len = static_cast<std::size_t>(r.num());
    const auto period = static_cast<std::size_t>(r.den());
    const std::size_t gap = gap_factor * (i + 1) * (prev_len + len);
    const std::size_t start = pos + gap;
    pattern.intervals.push_back(ActiveInterval{start, len, period, r});
    pos = start + len;
    prev_len = len;
  }
  pattern.layout_len = pos;
  return pattern;
}

ClassMap::ClassMap(const RepetitionPattern& pattern) : pattern_(pattern) {
  std::size_t saved = 0;
  for (std::size_t j = 0; j < pattern_.intervals.size(); ++j) {
    const auto& iv = pattern_.intervals[j];
    if (iv.period == 0 || iv.period > iv.length) throw std::invalid_argument("ClassMap: bad interval period");
    if (j > 0 && iv.start < pattern_.intervals[j - 1].end()) throw std::invalid_argument("ClassMap: overlapping intervals");
    base_.push_back(iv.start - saved);
    saved += iv.length - iv.period;
  }
}

std::size_t ClassMap::interval_at(std::size_t i) const {
  const auto& ivs = pattern_.intervals;
  auto it = std::upper_bound(ivs.begin(), ivs.end(), i, [](std::size_t x, const ActiveInterval& iv) { return x < iv.start; });
  if (it == ivs.begin()) return npos;
  --it;
  return i < it->end() ? static_cast<std::size_t>(it - ivs.begin()) : npos;
}

std::size_t ClassMap::class_of(std::size_t i) const {
  const auto& ivs = pattern_.intervals;
  // intervals starting at or before i
  auto it = std::upper_bound(ivs.begin(), ivs.end(), i, [](std::size_t x, const ActiveInterval& iv) { return x < iv.start; });
  if (it == ivs.begin()) return i;
  const auto j = static_cast<std::size_t>(it - ivs.begin()) - 1;
  const auto& iv = ivs[j];
  if (i < iv.end()) return base_[j] + (i - iv.start) % iv.period;
  // singleton after interval j: ids continue from the interval's classes
  return base_[j] + iv.period + (i - iv.end());
}

std::vector<std::size_t> ClassMap::class_members(std::size_t id) const {
  auto it = std::upper_bound(base_.begin(), base_.end(), id);
  if (it == base_.begin()) return {id};
  const auto j = static_cast<std::size_t>(it - base_.begin()) - 1;
  const auto& iv = pattern_.intervals[j];
  const std::size_t offset = id - base_[j];
  if (offset < iv.period) {
    std::vector<std::size_t> out;
    for (std::size_t pos = iv.start + offset; pos < iv.end(); pos += iv.period) out.push_back(pos);
    return out;
  }
  return {iv.end() + (offset - iv.period)};
}

std::size_t ClassMap::multiplicity(std::size_t t) const {
  const std::size_t j = interval_at(t);
  if (j == npos) return 1;
  const auto& iv = pattern_.intervals[j];
  const std::size_t r = (t - iv.start) % iv.period;
  return (iv.length - r + iv.period - 1) / iv.period;
}

std::size_t ClassMap::classes_below(std::size_t n) const {
  if (n == 0) return 0;
  const std::size_t last = n - 1;
  const std::size_t j = interval_at(last);
  if (j == npos) return class_of(last) + 1;
  const auto& iv = pattern_.intervals[j];
  return base_[j] + std::min(last - iv.start, iv.period - 1) + 1;
}

std::size_t class_of(const RepetitionPattern& pattern, std::size_t i) { return ClassMap(pattern).class_of(i); }

std::vector<std::size_t> class_members(const RepetitionPattern& pattern, std::size_t id) {
  return ClassMap(pattern).class_members(id);
}

std::size_t free_bit_count(const RepetitionPattern& pattern, std::size_t a, std::size_t b) {
  if (a >= b) throw std::invalid_argument("free_bit_count: need a < b");
  std::size_t count = b - a;
  for (const auto& iv : pattern.intervals) {
    const std::size_t lo = std::max(a, iv.start), hi = std::min(b, iv.end());
    if (lo >= hi) continue;
    const std::size_t overlap = hi - lo;
    count -= overlap - std::min(overlap, iv.period);
  }
  return count;
}

Rational min_free_density(const RepetitionPattern& pattern, std::size_t n, std::size_t min_len) {
  if (min_len == 0) throw std::invalid_argument("min_free_density: min_len must be positive");
  if (min_len > n) return Rational(1);

  std::vector<std::size_t> lefts{0, n - min_len}, rights{n, min_len}, diagonals{min_len};
  for (const auto& iv : pattern.intervals) {
    for (std::size_t x : {iv.start, iv.end()}) {
      lefts.push_back(x);
      rights.push_back(x);
    }
    if (iv.end() >= iv.period) lefts.push_back(iv.end() - iv.period);
    rights.push_back(iv.start + iv.period);
    diagonals.push_back(iv.period);
  }
  auto clip = [n](std::vector<std::size_t>& v) {
    for (auto& x : v) x = std::min(x, n);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  clip(lefts);
  clip(rights);
  clip(diagonals);

  Rational best(1);
  auto consider = [&](std::size_t a, std::size_t b) {
    if (a >= b || b > n || b - a < min_len) return;
    best = std::min(best, Rational(static_cast<std::int64_t>(free_bit_count(pattern, a, b)),
                                   static_cast<std::int64_t>(b - a)));
  };
  for (std::size_t a : lefts) {
    for (std::size_t b : rights) consider(a, b);
    for (std::size_t d : diagonals) consider(a, a + d);
  }
  for (std::size_t b : rights) {
    for (std::size_t d : diagonals) {
      if (b >= d) consider(b - d, b);
    }
  }
  return best;
}

Word periodic_layer(std::size_t M, std::size_t n) {
  if (M < 2) throw std::invalid_argument("periodic_layer: M must be at least 2");
  std::vector<Symbol> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<Symbol>(i % M);
  return Word(std::move(s), static_cast<std::uint32_t>(M));
}

Word bracket_layer(const RepetitionPattern& pattern, std::size_t n) {
  std::vector<Symbol> s(n, kBracketBlank);
  for (const auto& iv : pattern.intervals) {
    if (iv.start < n) s[iv.start] = kBracketOpen;
    if (iv.end() - 1 < n) s[iv.end() - 1] = kBracketClose;
  }
  return Word(std::move(s), 3);
}

Word materialize(const RepetitionPattern& pattern, std::span<const std::uint8_t> tau, std::size_t n) {
  const ClassMap classes(pattern);
  if (tau.size() < classes.classes_below(n)) throw std::invalid_argument("materialize: class assignment too short");
  std::vector<Symbol> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t v = tau[classes.class_of(i)];
    if (v > 1) throw std::invalid_argument("materialize: class values must be binary");
    s[i] = v;
  }
  return Word(std::move(s), 2);
}

}  // namespace powerword
