#include "paratune/ngram_analysis.hpp"

#include <algorithm>
#include <unordered_map>

#include "paratune/error.hpp"
#include "paratune/parallel.hpp"

namespace paratune {
namespace {

using MatchMap = std::unordered_map<std::string, std::int64_t>;

MatchMap clipped_matches(const TokenSequence& hyp, const SegmentReferences& refs, const NGramOptions& opts) {
  MatchMap out;
  for (const auto& [ngram, count] : count_ngrams(hyp, opts.min_order, opts.max_order)) {
    const int clipped = std::min(count, refs.max_count(ngram));
    if (clipped > 0) out.emplace(ngram, clipped);
  }
  return out;
}

int order_of(const std::string& ngram) {
  return 1 + static_cast<int>(std::count(ngram.begin(), ngram.end(), ' '));
}

}  // namespace

std::vector<NGramDelta> ngram_contributions(std::span<const std::string> hyps_a, std::span<const std::string> hyps_b,
                                            std::span<const std::vector<std::string>> refsets,
                                            const TokenizerConfig& tok, const NGramOptions& opts, int threads) {
  if (hyps_a.size() != hyps_b.size()) {
    throw AlignmentError("systems differ in length: " + std::to_string(hyps_a.size()) + " vs " +
                         std::to_string(hyps_b.size()));
  }
  if (opts.min_order < 1 || opts.max_order > kMaxNgramOrder || opts.min_order > opts.max_order) {
    throw ConfigError("n-gram orders must satisfy 1 <= min <= max <= 4");
  }
  const auto refs = prepare_references(refsets, tok, threads);
  if (refs.size() != hyps_a.size()) {
    throw AlignmentError("references have " + std::to_string(refs.size()) + " segments, systems have " +
                         std::to_string(hyps_a.size()));
  }

  std::vector<MatchMap> per_a(hyps_a.size());
  std::vector<MatchMap> per_b(hyps_b.size());
  parallel_for(hyps_a.size(), threads, [&](std::size_t i) {
    per_a[i] = clipped_matches(tokenize(hyps_a[i], tok), refs[i], opts);
    per_b[i] = clipped_matches(tokenize(hyps_b[i], tok), refs[i], opts);
  });

  std::unordered_map<std::string, std::pair<std::int64_t, std::int64_t>> merged;
  for (std::size_t i = 0; i < per_a.size(); ++i) {
    for (const auto& [ngram, c] : per_a[i]) merged[ngram].first += c;
    for (const auto& [ngram, c] : per_b[i]) merged[ngram].second += c;
  }

  std::vector<NGramDelta> out;
  out.reserve(merged.size());
  for (const auto& [ngram, counts] : merged) {
    const std::int64_t delta = counts.first - counts.second;
    if (std::llabs(delta) < opts.min_abs_delta) continue;
    out.push_back({order_of(ngram), ngram, counts.first, counts.second, delta});
  }
  std::sort(out.begin(), out.end(), [](const NGramDelta& x, const NGramDelta& y) {
    if (x.delta != y.delta) return x.delta > y.delta;
    if (x.order != y.order) return x.order > y.order;
    return x.ngram < y.ngram;
  });
  return out;
}

std::vector<NGramDelta> delta_tails(const std::vector<NGramDelta>& ranked, std::size_t top) {
  std::vector<NGramDelta> out;
  std::size_t positives = 0;
  for (const auto& d : ranked) {
    if (d.delta <= 0 || positives == top) break;
    out.push_back(d);
    ++positives;
  }
  std::size_t first_negative = ranked.size();
  std::size_t negatives = 0;
  for (std::size_t i = ranked.size(); i-- > 0 && ranked[i].delta < 0 && negatives < top;) {
    first_negative = i;
    ++negatives;
  }
  for (std::size_t i = first_negative; i < ranked.size(); ++i) out.push_back(ranked[i]);
  return out;
}

std::array<std::int64_t, kMaxNgramOrder> matched_totals(const std::vector<NGramDelta>& deltas, bool system_a) {
  std::array<std::int64_t, kMaxNgramOrder> totals{};
  for (const auto& d : deltas) totals[d.order - 1] += system_a ? d.matched_a : d.matched_b;
  return totals;
}

}  // namespace paratune
