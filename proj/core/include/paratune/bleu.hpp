#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "paratune/tokenizer.hpp"

namespace paratune {

inline constexpr int kMaxNgramOrder = 4;

// Additive sufficient statistics of corpus BLEU.
struct BleuStats {
  std::array<std::int64_t, kMaxNgramOrder> match{};  // clipped matches per order
  std::array<std::int64_t, kMaxNgramOrder> total{};  // hypothesis n-grams per order
  std::int64_t hyp_len = 0;
  std::int64_t ref_len = 0;  // effective (closest) reference length

  BleuStats& operator+=(const BleuStats& other);
  BleuStats& operator-=(const BleuStats& other);
  friend BleuStats operator+(BleuStats a, const BleuStats& b) { return a += b; }
  friend BleuStats operator-(BleuStats a, const BleuStats& b) { return a -= b; }
  bool operator==(const BleuStats&) const = default;
};

struct BleuConfig {
  TokenizerConfig tokenizer;
  std::string lang = "ende";
  std::string test_set;  // SET slot of the signature; omitted when empty

  bool operator==(const BleuConfig&) const = default;
};

struct BleuScore {
  double score = 0.0;  // 0..100
  std::array<double, kMaxNgramOrder> precisions{};  // percentages, smoothed
  double brevity_penalty = 1.0;
  BleuStats stats;
  std::string signature;
  bool empty_hypothesis = false;  // no hypothesis tokens at all; score forced to 0
};

// N-gram multiset keyed by the space-joined n-gram.
using NgramCounts = std::unordered_map<std::string, int>;

NgramCounts count_ngrams(const TokenSequence& tokens, int min_order = 1, int max_order = kMaxNgramOrder);

// Reference side of one segment, prepared once and reused for many
// hypotheses (n-best entries, randomization trials, ...).
class SegmentReferences {
 public:
  SegmentReferences() = default;
  explicit SegmentReferences(const std::vector<TokenSequence>& refs);

  // Clipping ceiling: max count of `ngram` over the references.
  int max_count(const std::string& ngram) const;
  std::int64_t closest_length(std::int64_t hyp_len) const;
  const NgramCounts& max_counts() const { return max_counts_; }

 private:
  NgramCounts max_counts_;
  std::vector<std::int64_t> lengths_;
};

BleuStats sentence_stats(const TokenSequence& hyp, const SegmentReferences& refs);
BleuStats sentence_stats(const TokenSequence& hyp, const std::vector<TokenSequence>& refs);

// sacreBLEU's compute_bleu with smooth.exp: the k-th order with zero matches
// (k = 1, 2, ...) gets precision 100 / (2^k * total).
BleuScore score_from_stats(const BleuStats& stats);

// Per-segment references tokenized with `tok`, one entry per segment.
// `refsets[r][i]` is segment i of reference set r.
std::vector<SegmentReferences> prepare_references(std::span<const std::vector<std::string>> refsets,
                                                  const TokenizerConfig& tok, int threads = 1);

std::vector<BleuStats> segment_stats(std::span<const std::string> hyps,
                                     std::span<const std::vector<std::string>> refsets,
                                     const TokenizerConfig& tok, int threads = 1);

// Corpus BLEU over one or more reference streams. Throws AlignmentError on
// length mismatch. The result is identical for any thread count.
BleuScore corpus_bleu(std::span<const std::string> hyps, std::span<const std::vector<std::string>> refsets,
                      const BleuConfig& cfg, int threads = 1);

// BLEU+case.mixed+lang.ende+numrefs.1+smooth.exp+<set>+tok.13a+version.paratune-1.0.0
std::string bleu_signature(const BleuConfig& cfg, std::size_t num_refs);

// "BLEU+... = 45.0 78.1/52.3/37.0/26.4 (BP = 1.000 ratio = 1.012 hyp_len = 100 ref_len = 99)"
std::string format_bleu_line(const BleuScore& score);

}  // namespace paratune
