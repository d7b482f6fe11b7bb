#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paratune/bleu.hpp"

namespace paratune {

enum class SignificanceTest { kApproxRandomization, kWilcoxonRankSum };

std::string_view test_name(SignificanceTest test);

struct SignificanceReport {
  SignificanceTest test = SignificanceTest::kApproxRandomization;
  double observed_delta = 0.0;  // BLEU(A) - BLEU(B), or rank-sum W - E[W]
  double p_value = 1.0;         // two-sided, in (0, 1]

  // Approximate randomization only.
  std::int64_t trials = 0;
  std::uint64_t rng_seed = 0;
  std::int64_t extreme_count = 0;  // shuffles with |delta| >= |observed|
  bool at_floor = false;           // extreme_count == 0, p is 1/(trials+1)
  double normal_tail_p = 1.0;      // normal approximation to the shuffle distribution

  // Wilcoxon only.
  double z_statistic = 0.0;
  bool exact = false;       // exact enumeration rather than normal approximation
  bool degenerate = false;  // every value identical
};

// Paired approximate randomization on precomputed per-segment statistics.
// Each trial swaps the two systems' outputs per segment with probability 1/2,
// using a splitmix64 stream seeded with seed ^ trial_index; the result does
// not depend on `threads`. p = (c + 1) / (trials + 1).
SignificanceReport approx_randomization(std::span<const BleuStats> stats_a, std::span<const BleuStats> stats_b,
                                        std::int64_t trials, std::uint64_t seed, int threads = 1);

SignificanceReport approx_randomization(std::span<const std::string> hyps_a, std::span<const std::string> hyps_b,
                                        std::span<const std::vector<std::string>> refsets, const BleuConfig& cfg,
                                        std::int64_t trials, std::uint64_t seed, int threads = 1);

// Two-sided Wilcoxon rank-sum (Mann-Whitney) test with midranks. Uses exact
// enumeration when min(n, m) < 10 and the normal approximation (tie-corrected
// variance, continuity correction) otherwise. Very large pooled samples with a
// tiny minority sample also fall back to the approximation; `exact` says which.
SignificanceReport wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

// The two routes, exposed for cross-checking.
double wilcoxon_exact_p(std::span<const double> a, std::span<const double> b);
double wilcoxon_normal_p(std::span<const double> a, std::span<const double> b);

std::string format_significance_line(const SignificanceReport& report);

}  // namespace paratune
