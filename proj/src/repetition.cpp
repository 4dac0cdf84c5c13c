#include "powerword/repetition.hpp"

#include <algorithm>
#include <stdexcept>

#include "powerword/detail/lce.hpp"

namespace powerword {

namespace {

// Forward and backward LCE over one word. Backward queries run on the
// reversed text: lcs(i, j) = length of the common suffix of w[..i] and w[..j].
struct ExtensionIndex {
  std::size_t n = 0;
  detail::LceIndex forward;
  detail::LceIndex backward;

  ExtensionIndex(std::span<const Symbol> text, std::vector<std::uint32_t> forward_sa) : n(text.size()) {
    forward = detail::LceIndex(text, std::move(forward_sa));
    std::vector<Symbol> rev(text.rbegin(), text.rend());
    backward = detail::LceIndex(rev);
  }

  [[nodiscard]] std::size_t right(std::size_t i, std::size_t j) const { return forward.lce(i, j); }
  [[nodiscard]] std::size_t left(std::size_t i, std::size_t j) const { return backward.lce(n - 1 - i, n - 1 - j); }
};

// lyndon[i] = length of the longest Lyndon prefix of w[i..] under the order
// implied by `rank` (next smaller suffix to the right).
std::vector<std::uint32_t> lyndon_array(std::span<const std::uint32_t> rank) {
  const std::size_t n = rank.size();
  std::vector<std::uint32_t> out(n);
  std::vector<std::uint32_t> stack;
  stack.reserve(n);
  for (std::size_t i = n; i-- > 0;) {
    while (!stack.empty() && rank[stack.back()] > rank[i]) stack.pop_back();
    std::size_t next = stack.empty() ? n : stack.back();
    out[i] = static_cast<std::uint32_t>(next - i);
    stack.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

std::vector<Run> runs_with_index(const Word& w, const ExtensionIndex& ext) {
  const std::size_t n = w.size();
  std::vector<Run> runs;
  if (n < 2) return runs;

  std::vector<Symbol> inverted(n);
  const Symbol top = w.alphabet_size() - 1;
  for (std::size_t i = 0; i < n; ++i) inverted[i] = top - w[i];
  const auto inverted_rank = detail::inverse_permutation(detail::suffix_array(inverted));

  for (auto rank : {ext.forward.rank(), std::span<const std::uint32_t>(inverted_rank)}) {
    const auto lyndon = lyndon_array(rank);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t l = lyndon[i];
      const std::size_t right = i + l < n ? ext.right(i, i + l) : 0;
      const std::size_t left = i > 0 ? ext.left(i - 1, i + l - 1) : 0;
      const std::size_t start = i - std::min(left, i);
      const std::size_t end = i + l + right;
      if (end - start >= 2 * l) runs.push_back(Run{start, end - start, l, exponent_of(end - start, l)});
    }
  }
  std::sort(runs.begin(), runs.end(),
            [](const Run& a, const Run& b) { return a.start != b.start ? a.start < b.start : a.period < b.period; });
  runs.erase(std::unique(runs.begin(), runs.end()), runs.end());
  return runs;
}

// Exponents below 2 only matter for square-free words. For each period p a
// longer match stretch w[i] = w[i + p] is needed to beat the current best, so
// sampling every `step` positions suffices to see every improving stretch.
Rational square_free_exponent(const Word& w, const ExtensionIndex& ext) {
  const std::size_t n = w.size();
  Rational best(1);
  for (std::size_t p = 1; p < n; ++p) {
    const auto step = static_cast<std::size_t>(floor((best - Rational(1)) * Rational(static_cast<std::int64_t>(p)))) + 1;
    for (std::size_t i = 0; i + p < n; i += step) {
      if (w[i] != w[i + p]) continue;
      std::size_t matches = ext.right(i, i + p);
      if (i > 0) matches += ext.left(i - 1, i + p - 1);
      best = std::max(best, exponent_of(matches + p, p));
    }
  }
  return best;
}

void require_period(const Word& w, std::size_t p) {
  if (p == 0 || p > w.size()) throw std::invalid_argument("period must satisfy 1 <= p <= |w|");
}

}  // namespace

std::vector<Run> maximal_repetitions(const Word& w) {
  if (w.size() < 2) return {};
  ExtensionIndex ext(w.symbols(), detail::suffix_array(w.symbols()));
  return runs_with_index(w, ext);
}

Rational critical_exponent(const Word& w) {
  if (w.size() < 2) return Rational(1);
  ExtensionIndex ext(w.symbols(), detail::suffix_array(w.symbols()));
  const auto runs = runs_with_index(w, ext);
  if (!runs.empty()) {
    Rational best = runs.front().exponent;
    for (const auto& r : runs) best = std::max(best, r.exponent);
    return best;
  }
  return square_free_exponent(w, ext);
}

Rational brute_force_critical_exponent(const Word& w) {
  if (w.size() > kBruteForceLimit) throw std::length_error("brute_force_critical_exponent: word too long");
  Rational best(1);
  const auto s = w.symbols();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t len = 1; i + len <= s.size(); ++len) {
      const auto z = s.subspan(i, len);
      for (std::size_t p = 1; p <= len; ++p) {
        const Rational e = exponent_of(len, p);
        if (e <= best) break;
        if (is_periodic(z, p)) {
          best = e;
          break;
        }
      }
    }
  }
  return best;
}

std::size_t defect_to_periodic(const Word& w, std::size_t p) {
  require_period(w, p);
  std::size_t kept = 0;
  std::vector<Symbol> cls;
  for (std::size_t r = 0; r < p; ++r) {
    cls.clear();
    for (std::size_t i = r; i < w.size(); i += p) cls.push_back(w[i]);
    std::sort(cls.begin(), cls.end());
    std::size_t most = 0;
    for (std::size_t a = 0; a < cls.size();) {
      std::size_t b = a;
      while (b < cls.size() && cls[b] == cls[a]) ++b;
      most = std::max(most, b - a);
      a = b;
    }
    kept += most;
  }
  return w.size() - kept;
}

std::optional<PowerDefect> approximate_power_defect(const Word& w, const Rational& beta) {
  if (beta <= Rational(1)) throw std::invalid_argument("approximate_power_defect: beta must exceed 1");
  if (w.size() < 2) throw std::invalid_argument("approximate_power_defect: word shorter than 2");
  // |w| / p >= beta  <=>  p <= |w| * den / num
  const auto max_p = static_cast<std::size_t>(floor(Rational(static_cast<std::int64_t>(w.size())) / beta));
  std::optional<PowerDefect> best;
  for (std::size_t p = 1; p <= max_p; ++p) {
    const std::size_t d = defect_to_periodic(w, p);
    if (!best || d < best->defect) best = PowerDefect{d, p};
    if (d == 0) break;
  }
  return best;
}

std::optional<WindowDefect> min_window_defect(const Word& w, std::size_t window_len, const Rational& beta) {
  if (beta <= Rational(1)) throw std::invalid_argument("min_window_defect: beta must exceed 1");
  if (window_len < 2 || window_len > w.size()) throw std::invalid_argument("min_window_defect: bad window length");
  const auto max_p = static_cast<std::size_t>(floor(Rational(static_cast<std::int64_t>(window_len)) / beta));
  if (max_p == 0) return std::nullopt;

  // Dense ids for the symbols that occur.
  std::vector<Symbol> present(w.symbols().begin(), w.symbols().end());
  std::sort(present.begin(), present.end());
  present.erase(std::unique(present.begin(), present.end()), present.end());
  std::vector<std::uint32_t> sym(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    sym[i] = static_cast<std::uint32_t>(std::lower_bound(present.begin(), present.end(), w[i]) - present.begin());
  }
  const std::size_t distinct = present.size();

  std::optional<WindowDefect> best;
  std::vector<std::uint32_t> counts, hist, most;
  for (std::size_t p = 1; p <= max_p; ++p) {
    const std::size_t cap = window_len / p + 2;
    counts.assign(p * distinct, 0);
    hist.assign(p * cap, 0);
    most.assign(p, 0);
    std::size_t kept = 0;

    auto add = [&](std::size_t pos) {
      const std::size_t r = pos % p;
      const std::uint32_t c = ++counts[r * distinct + sym[pos]];
      if (c > 1) --hist[r * cap + c - 1];
      ++hist[r * cap + c];
      if (c > most[r]) {
        most[r] = c;
        ++kept;
      }
    };
    auto remove = [&](std::size_t pos) {
      const std::size_t r = pos % p;
      const std::uint32_t c = counts[r * distinct + sym[pos]]--;
      --hist[r * cap + c];
      if (c > 1) ++hist[r * cap + c - 1];
      if (c == most[r] && hist[r * cap + c] == 0) {
        --most[r];
        --kept;
      }
    };

    for (std::size_t i = 0; i < window_len; ++i) add(i);
    for (std::size_t start = 0;; ++start) {
      const std::size_t d = window_len - kept;
      if (!best || d < best->defect) best = WindowDefect{d, p, start, window_len};
      if (start + window_len >= w.size()) break;
      remove(start);
      add(start + window_len);
    }
    if (best->defect == 0) break;
  }
  return best;
}

bool check_period_difference(const Word& w, std::size_t t1, std::size_t t2) {
  if (t2 == 0 || t1 <= t2) throw PreconditionError("check_period_difference: need t1 > t2 >= 1");
  if (w.size() < t1) throw PreconditionError("check_period_difference: need |w| >= t1");
  if (!is_periodic(w, t1) || !is_periodic(w, t2)) {
    throw PreconditionError("check_period_difference: w must have both periods t1 and t2");
  }
  const std::size_t len = w.size() - t2;
  const std::size_t diff = t1 - t2;
  const auto s = w.symbols();
  return is_periodic(s.first(len), diff) && is_periodic(s.last(len), diff);
}

}  // namespace powerword
