#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "powerword/word.hpp"

namespace powerword::detail {

/// Suffix array by prefix doubling with counting sorts, O(n log n).
/// A suffix that is a proper prefix of another sorts first.
std::vector<std::uint32_t> suffix_array(std::span<const Symbol> text);

/// rank[sa[r]] = r.
std::vector<std::uint32_t> inverse_permutation(std::span<const std::uint32_t> sa);

/// Longest common extension queries lce(i, j) = |lcp(text[i..], text[j..])|,
/// answered in O(1) amortized from the LCP array and a blocked sparse table.
class LceIndex {
 public:
  LceIndex() = default;
  explicit LceIndex(std::span<const Symbol> text);
  /// Reuses an already computed suffix array of the same text.
  LceIndex(std::span<const Symbol> text, std::vector<std::uint32_t> sa);

  [[nodiscard]] std::size_t lce(std::size_t i, std::size_t j) const;
  [[nodiscard]] std::span<const std::uint32_t> rank() const { return rank_; }

 private:
  void build(std::span<const Symbol> text, std::vector<std::uint32_t> sa);
  [[nodiscard]] std::uint32_t range_min(std::size_t lo, std::size_t hi) const;

  std::size_t n_ = 0;
  std::vector<std::uint32_t> rank_;
  std::vector<std::uint32_t> lcp_;
  std::vector<std::vector<std::uint32_t>> block_table_;
};

}  // namespace powerword::detail
