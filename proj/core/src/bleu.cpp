#include "paratune/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "paratune/error.hpp"
#include "paratune/parallel.hpp"
#include "paratune/version.hpp"

namespace paratune {

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (int n = 0; n < kMaxNgramOrder; ++n) {
    match[n] += other.match[n];
    total[n] += other.total[n];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

BleuStats& BleuStats::operator-=(const BleuStats& other) {
  for (int n = 0; n < kMaxNgramOrder; ++n) {
    match[n] -= other.match[n];
    total[n] -= other.total[n];
  }
  hyp_len -= other.hyp_len;
  ref_len -= other.ref_len;
  return *this;
}

NgramCounts count_ngrams(const TokenSequence& tokens, int min_order, int max_order) {
  NgramCounts counts;
  const auto len = static_cast<int>(tokens.size());
  std::string key;
  for (int n = min_order; n <= max_order; ++n) {
    for (int i = 0; i + n <= len; ++i) {
      key = tokens[i];
      for (int k = 1; k < n; ++k) {
        key.push_back(' ');
        key += tokens[i + k];
      }
      ++counts[key];
    }
  }
  return counts;
}

SegmentReferences::SegmentReferences(const std::vector<TokenSequence>& refs) {
  for (const auto& ref : refs) {
    lengths_.push_back(static_cast<std::int64_t>(ref.size()));
    for (const auto& [ngram, count] : count_ngrams(ref)) {
      int& slot = max_counts_[ngram];
      if (count > slot) slot = count;
    }
  }
}

int SegmentReferences::max_count(const std::string& ngram) const {
  auto it = max_counts_.find(ngram);
  return it == max_counts_.end() ? 0 : it->second;
}

std::int64_t SegmentReferences::closest_length(std::int64_t hyp_len) const {
  std::int64_t best_len = 0;
  std::int64_t best_diff = -1;
  for (std::int64_t len : lengths_) {
    const std::int64_t diff = std::llabs(hyp_len - len);
    if (best_diff < 0 || diff < best_diff || (diff == best_diff && len < best_len)) {
      best_diff = diff;
      best_len = len;
    }
  }
  return best_len;
}

BleuStats sentence_stats(const TokenSequence& hyp, const SegmentReferences& refs) {
  BleuStats stats;
  stats.hyp_len = static_cast<std::int64_t>(hyp.size());
  stats.ref_len = refs.closest_length(stats.hyp_len);
  for (const auto& [ngram, count] : count_ngrams(hyp)) {
    const int n = 1 + static_cast<int>(std::count(ngram.begin(), ngram.end(), ' '));
    stats.match[n - 1] += std::min(count, refs.max_count(ngram));
    stats.total[n - 1] += count;
  }
  return stats;
}

BleuStats sentence_stats(const TokenSequence& hyp, const std::vector<TokenSequence>& refs) {
  if (refs.empty()) throw ContractError("sentence_stats needs at least one reference");
  return sentence_stats(hyp, SegmentReferences(refs));
}

BleuScore score_from_stats(const BleuStats& stats) {
  BleuScore out;
  out.stats = stats;
  // Floor used for log(0), as in the reference scorer.
  auto floored_log = [](double x) { return x == 0.0 ? -9999999999.0 : std::log(x); };

  double smooth = 1.0;
  for (int n = 0; n < kMaxNgramOrder; ++n) {
    if (stats.total[n] == 0) break;
    if (stats.match[n] == 0) {
      smooth *= 2.0;
      out.precisions[n] = 100.0 / (smooth * static_cast<double>(stats.total[n]));
    } else {
      out.precisions[n] = 100.0 * static_cast<double>(stats.match[n]) / static_cast<double>(stats.total[n]);
    }
  }

  if (stats.hyp_len == 0) {
    out.empty_hypothesis = true;
    out.brevity_penalty = 1.0;
    out.score = 0.0;
    return out;
  }
  out.brevity_penalty = stats.hyp_len < stats.ref_len
                            ? std::exp(1.0 - static_cast<double>(stats.ref_len) / static_cast<double>(stats.hyp_len))
                            : 1.0;
  double log_sum = 0.0;
  for (double p : out.precisions) log_sum += floored_log(p);
  out.score = out.brevity_penalty * std::exp(log_sum / kMaxNgramOrder);
  return out;
}

namespace {

void check_alignment(std::size_t hyp_count, std::span<const std::vector<std::string>> refsets) {
  if (refsets.empty()) throw ContractError("at least one reference set is required");
  for (std::size_t r = 0; r < refsets.size(); ++r) {
    if (refsets[r].size() != hyp_count) {
      throw AlignmentError("reference set " + std::to_string(r + 1) + " has " + std::to_string(refsets[r].size()) +
                           " segments, hypothesis has " + std::to_string(hyp_count));
    }
  }
}

}  // namespace

std::vector<SegmentReferences> prepare_references(std::span<const std::vector<std::string>> refsets,
                                                  const TokenizerConfig& tok, int threads) {
  if (refsets.empty()) throw ContractError("at least one reference set is required");
  const std::size_t n = refsets.front().size();
  check_alignment(n, refsets);
  std::vector<SegmentReferences> out(n);
  parallel_for(n, threads, [&](std::size_t i) {
    std::vector<TokenSequence> refs;
    refs.reserve(refsets.size());
    for (const auto& set : refsets) refs.push_back(tokenize(set[i], tok));
    out[i] = SegmentReferences(refs);
  });
  return out;
}

std::vector<BleuStats> segment_stats(std::span<const std::string> hyps,
                                     std::span<const std::vector<std::string>> refsets,
                                     const TokenizerConfig& tok, int threads) {
  check_alignment(hyps.size(), refsets);
  std::vector<BleuStats> out(hyps.size());
  parallel_for(hyps.size(), threads, [&](std::size_t i) {
    std::vector<TokenSequence> refs;
    refs.reserve(refsets.size());
    for (const auto& set : refsets) refs.push_back(tokenize(set[i], tok));
    out[i] = sentence_stats(tokenize(hyps[i], tok), SegmentReferences(refs));
  });
  return out;
}

BleuScore corpus_bleu(std::span<const std::string> hyps, std::span<const std::vector<std::string>> refsets,
                      const BleuConfig& cfg, int threads) {
  BleuStats total;
  for (const auto& s : segment_stats(hyps, refsets, cfg.tokenizer, threads)) total += s;
  BleuScore score = score_from_stats(total);
  score.signature = bleu_signature(cfg, refsets.size());
  return score;
}

std::string bleu_signature(const BleuConfig& cfg, std::size_t num_refs) {
  std::string sig = "BLEU+case.";
  sig += cfg.tokenizer.lowercase ? "lc" : "mixed";
  if (!cfg.lang.empty()) sig += "+lang." + cfg.lang;
  sig += "+numrefs." + std::to_string(num_refs);
  sig += "+smooth.exp";
  if (!cfg.test_set.empty()) sig += "+" + cfg.test_set;
  sig += "+tok.";
  sig += scheme_name(cfg.tokenizer.scheme);
  sig += "+version.";
  sig += kToolkitId;
  return sig;
}

std::string format_bleu_line(const BleuScore& score) {
  const auto& s = score.stats;
  const double ratio = s.ref_len == 0 ? 0.0 : static_cast<double>(s.hyp_len) / static_cast<double>(s.ref_len);
  return fmt::format("{} = {:.1f} {:.1f}/{:.1f}/{:.1f}/{:.1f} (BP = {:.3f} ratio = {:.3f} hyp_len = {} ref_len = {})",
                     score.signature.empty() ? std::string("BLEU") : score.signature, score.score,
                     score.precisions[0], score.precisions[1], score.precisions[2], score.precisions[3],
                     score.brevity_penalty, ratio, s.hyp_len, s.ref_len);
}

}  // namespace paratune
