#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "paratune/bleu.hpp"

namespace paratune {

// Corpus-level clipped match counts of one n-gram for two systems.
struct NGramDelta {
  int order = 0;
  std::string ngram;  // tokens joined by single spaces
  std::int64_t matched_a = 0;
  std::int64_t matched_b = 0;
  std::int64_t delta = 0;  // matched_a - matched_b

  bool operator==(const NGramDelta&) const = default;
};

struct NGramOptions {
  int min_order = 1;
  int max_order = kMaxNgramOrder;
  std::int64_t min_abs_delta = 1;  // 0 keeps every n-gram either system matched
};

// Per n-gram sums of per-segment clipped matches (the same clipping as the
// BLEU numerator), sorted by delta descending, then higher order first, then
// lexicographically.
std::vector<NGramDelta> ngram_contributions(std::span<const std::string> hyps_a, std::span<const std::string> hyps_b,
                                            std::span<const std::vector<std::string>> refsets,
                                            const TokenizerConfig& tok, const NGramOptions& opts = {},
                                            int threads = 1);

// The `top` largest positive deltas followed by the `top` most negative ones,
// still in the global order.
std::vector<NGramDelta> delta_tails(const std::vector<NGramDelta>& ranked, std::size_t top);

// Sum of matched_a (or matched_b) per order, index 0 = unigrams.
std::array<std::int64_t, kMaxNgramOrder> matched_totals(const std::vector<NGramDelta>& deltas, bool system_a);

}  // namespace paratune
