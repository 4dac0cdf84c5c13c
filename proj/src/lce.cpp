#include "powerword/detail/lce.hpp"

#include <algorithm>
#include <bit>

namespace powerword::detail {

namespace {
constexpr std::size_t kBlock = 32;
}

std::vector<std::uint32_t> suffix_array(std::span<const Symbol> text) {
  const std::size_t n = text.size();
  std::vector<std::uint32_t> sa(n), rank(n), tmp(n);
  if (n == 0) return sa;

  // Compress symbols to dense ranks.
  std::vector<Symbol> alphabet(text.begin(), text.end());
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  for (std::size_t i = 0; i < n; ++i) {
    rank[i] = static_cast<std::uint32_t>(std::lower_bound(alphabet.begin(), alphabet.end(), text[i]) - alphabet.begin());
  }
  std::size_t classes = alphabet.size();
  std::vector<std::uint32_t> count(std::max(classes, n) + 1);

  for (std::size_t i = 0; i < n; ++i) ++count[rank[i]];
  for (std::size_t c = 1; c < classes; ++c) count[c] += count[c - 1];
  for (std::size_t i = n; i-- > 0;) sa[--count[rank[i]]] = static_cast<std::uint32_t>(i);

  for (std::size_t k = 1; classes < n; k <<= 1) {
    // Order by second key: suffixes without a second half come first.
    std::size_t p = 0;
    for (std::size_t i = n - std::min(k, n); i < n; ++i) tmp[p++] = static_cast<std::uint32_t>(i);
    for (std::size_t r = 0; r < n; ++r) {
      if (sa[r] >= k) tmp[p++] = static_cast<std::uint32_t>(sa[r] - k);
    }
    std::fill(count.begin(), count.begin() + static_cast<std::ptrdiff_t>(classes) + 1, 0);
    for (std::size_t i = 0; i < n; ++i) ++count[rank[i]];
    for (std::size_t c = 1; c < classes; ++c) count[c] += count[c - 1];
    for (std::size_t r = n; r-- > 0;) sa[--count[rank[tmp[r]]]] = tmp[r];

    auto second = [&](std::uint32_t i) -> std::int64_t { return i + k < n ? rank[i + k] : -1; };
    tmp[sa[0]] = 0;
    std::uint32_t cls = 0;
    for (std::size_t r = 1; r < n; ++r) {
      std::uint32_t a = sa[r - 1], b = sa[r];
      if (rank[a] != rank[b] || second(a) != second(b)) ++cls;
      tmp[b] = cls;
    }
    rank.swap(tmp);
    classes = cls + 1;
  }
  return sa;
}

std::vector<std::uint32_t> inverse_permutation(std::span<const std::uint32_t> sa) {
  std::vector<std::uint32_t> inv(sa.size());
  for (std::size_t r = 0; r < sa.size(); ++r) inv[sa[r]] = static_cast<std::uint32_t>(r);
  return inv;
}

LceIndex::LceIndex(std::span<const Symbol> text) { build(text, suffix_array(text)); }

LceIndex::LceIndex(std::span<const Symbol> text, std::vector<std::uint32_t> sa) { build(text, std::move(sa)); }

void LceIndex::build(std::span<const Symbol> text, std::vector<std::uint32_t> sa) {
  n_ = text.size();
  rank_ = inverse_permutation(sa);
  lcp_.assign(n_, 0);
  // Kasai: lcp_[r] = lcp(sa[r-1], sa[r]).
  std::size_t h = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t r = rank_[i];
    if (r == 0) {
      h = 0;
      continue;
    }
    std::size_t j = sa[r - 1];
    while (i + h < n_ && j + h < n_ && text[i + h] == text[j + h]) ++h;
    lcp_[r] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }

  const std::size_t blocks = (n_ + kBlock - 1) / kBlock;
  block_table_.clear();
  if (blocks == 0) return;
  std::vector<std::uint32_t> level(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    auto first = lcp_.begin() + static_cast<std::ptrdiff_t>(b * kBlock);
    auto last = lcp_.begin() + static_cast<std::ptrdiff_t>(std::min(n_, (b + 1) * kBlock));
    level[b] = *std::min_element(first, last);
  }
  block_table_.push_back(std::move(level));
  for (std::size_t width = 2; width <= blocks; width <<= 1) {
    const auto& prev = block_table_.back();
    std::vector<std::uint32_t> next(blocks - width + 1);
    for (std::size_t b = 0; b < next.size(); ++b) next[b] = std::min(prev[b], prev[b + width / 2]);
    block_table_.push_back(std::move(next));
  }
}

std::uint32_t LceIndex::range_min(std::size_t lo, std::size_t hi) const {
  // Minimum of lcp_[lo..hi], inclusive.
  std::uint32_t best = UINT32_MAX;
  const std::size_t blo = lo / kBlock, bhi = hi / kBlock;
  if (bhi - blo <= 1) {
    for (std::size_t r = lo; r <= hi; ++r) best = std::min(best, lcp_[r]);
    return best;
  }
  for (std::size_t r = lo; r < (blo + 1) * kBlock; ++r) best = std::min(best, lcp_[r]);
  for (std::size_t r = bhi * kBlock; r <= hi; ++r) best = std::min(best, lcp_[r]);
  const std::size_t first = blo + 1, count = bhi - first;
  const std::size_t lg = std::bit_width(count) - 1;
  const auto& row = block_table_[lg];
  best = std::min({best, row[first], row[bhi - (std::size_t{1} << lg)]});
  return best;
}

std::size_t LceIndex::lce(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) return 0;
  if (i == j) return n_ - i;
  std::size_t a = rank_[i], b = rank_[j];
  if (a > b) std::swap(a, b);
  return range_min(a + 1, b);
}

}  // namespace powerword::detail
