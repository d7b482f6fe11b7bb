#include "paratune/significance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "paratune/error.hpp"
#include "paratune/parallel.hpp"

namespace paratune {

std::string_view test_name(SignificanceTest test) {
  return test == SignificanceTest::kApproxRandomization ? "approx-randomization" : "wilcoxon-rank-sum";
}

namespace {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

double clamp_p(double p) {
  if (!(p > 0.0)) return std::numeric_limits<double>::min();
  return std::min(p, 1.0);
}

double two_sided_normal(double z) { return clamp_p(std::erfc(std::fabs(z) / std::sqrt(2.0))); }

}  // namespace

SignificanceReport approx_randomization(std::span<const BleuStats> stats_a, std::span<const BleuStats> stats_b,
                                        std::int64_t trials, std::uint64_t seed, int threads) {
  if (stats_a.size() != stats_b.size()) {
    throw AlignmentError("systems differ in length: " + std::to_string(stats_a.size()) + " vs " +
                         std::to_string(stats_b.size()));
  }
  if (trials < 1) throw ConfigError("randomization needs at least one trial");

  BleuStats sum_a;
  BleuStats sum_b;
  for (std::size_t i = 0; i < stats_a.size(); ++i) {
    sum_a += stats_a[i];
    sum_b += stats_b[i];
  }
  SignificanceReport report;
  report.test = SignificanceTest::kApproxRandomization;
  report.trials = trials;
  report.rng_seed = seed;
  report.observed_delta = score_from_stats(sum_a).score - score_from_stats(sum_b).score;
  const double observed = std::fabs(report.observed_delta);

  std::vector<double> deltas(static_cast<std::size_t>(trials));
  parallel_for(deltas.size(), threads, [&](std::size_t t) {
    SplitMix64 rng(seed ^ static_cast<std::uint64_t>(t));
    BleuStats x;
    BleuStats y;
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < stats_a.size(); ++i) {
      if (i % 64 == 0) bits = rng.next();
      const bool swap = (bits >> (i % 64)) & 1u;
      x += swap ? stats_b[i] : stats_a[i];
      y += swap ? stats_a[i] : stats_b[i];
    }
    deltas[t] = score_from_stats(x).score - score_from_stats(y).score;
  });

  double mean = 0.0;
  for (double d : deltas) {
    if (std::fabs(d) >= observed) ++report.extreme_count;
    mean += d;
  }
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double d : deltas) var += (d - mean) * (d - mean);
  const double sd = trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1)) : 0.0;

  report.p_value = static_cast<double>(report.extreme_count + 1) / static_cast<double>(trials + 1);
  report.at_floor = report.extreme_count == 0;
  if (sd > 0.0) {
    report.normal_tail_p = two_sided_normal((report.observed_delta - mean) / sd);
  } else {
    report.normal_tail_p = report.observed_delta == mean ? 1.0 : std::numeric_limits<double>::min();
  }
  return report;
}

SignificanceReport approx_randomization(std::span<const std::string> hyps_a, std::span<const std::string> hyps_b,
                                        std::span<const std::vector<std::string>> refsets, const BleuConfig& cfg,
                                        std::int64_t trials, std::uint64_t seed, int threads) {
  if (hyps_a.size() != hyps_b.size()) {
    throw AlignmentError("systems differ in length: " + std::to_string(hyps_a.size()) + " vs " +
                         std::to_string(hyps_b.size()));
  }
  const auto a = segment_stats(hyps_a, refsets, cfg.tokenizer, threads);
  const auto b = segment_stats(hyps_b, refsets, cfg.tokenizer, threads);
  return approx_randomization(a, b, trials, seed, threads);
}

namespace {

struct RankData {
  std::vector<std::int64_t> doubled_ranks;  // 2 * midrank, pooled order: a then b
  std::vector<std::int64_t> tie_sizes;
  std::size_t n = 0;
  std::size_t m = 0;
};

RankData rank_samples(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ValidationError("rank-sum test needs two non-empty samples");
  RankData data;
  data.n = a.size();
  data.m = b.size();
  std::vector<std::pair<double, std::size_t>> pooled;
  pooled.reserve(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) pooled.emplace_back(a[i], i);
  for (std::size_t i = 0; i < b.size(); ++i) pooled.emplace_back(b[i], a.size() + i);
  for (const auto& [v, idx] : pooled) {
    if (!std::isfinite(v)) throw ValidationError("rank-sum test needs finite values");
  }
  std::sort(pooled.begin(), pooled.end());
  data.doubled_ranks.assign(pooled.size(), 0);
  std::size_t i = 0;
  while (i < pooled.size()) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].first == pooled[i].first) ++j;
    // ranks i+1 .. j share the midrank (i+1+j)/2
    const auto doubled = static_cast<std::int64_t>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) data.doubled_ranks[pooled[k].second] = doubled;
    data.tie_sizes.push_back(static_cast<std::int64_t>(j - i));
    i = j;
  }
  return data;
}

std::int64_t doubled_rank_sum_a(const RankData& d) {
  return std::accumulate(d.doubled_ranks.begin(), d.doubled_ranks.begin() + static_cast<std::ptrdiff_t>(d.n),
                         std::int64_t{0});
}

double normal_z(const RankData& d) {
  const double n = static_cast<double>(d.n);
  const double m = static_cast<double>(d.m);
  const double total = n + m;
  const double w = static_cast<double>(doubled_rank_sum_a(d)) / 2.0;
  const double expected = n * (total + 1.0) / 2.0;
  double tie_term = 0.0;
  for (auto t : d.tie_sizes) tie_term += static_cast<double>(t * t * t - t);
  const double var = n * m / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
  if (!(var > 0.0)) return 0.0;
  const double dev = w - expected;
  const double corrected = std::fabs(dev) <= 0.5 ? 0.0 : dev - std::copysign(0.5, dev);
  return corrected / std::sqrt(var);
}

bool all_identical(const RankData& d) { return d.tie_sizes.size() == 1; }

// Enumeration work is roughly N * k * (2 * max rank sum); past this budget the
// normal approximation is used even for small samples.
constexpr double kExactWorkBudget = 5e8;

bool exact_affordable(const RankData& d) {
  const double total = static_cast<double>(d.n + d.m);
  const double k = static_cast<double>(std::min(d.n, d.m));
  return total * k * (2.0 * k * total) <= kExactWorkBudget;
}

}  // namespace

double wilcoxon_normal_p(std::span<const double> a, std::span<const double> b) {
  const RankData d = rank_samples(a, b);
  if (all_identical(d)) return 1.0;
  return two_sided_normal(normal_z(d));
}

double wilcoxon_exact_p(std::span<const double> a, std::span<const double> b) {
  const RankData d = rank_samples(a, b);
  if (all_identical(d)) return 1.0;
  // Enumerate rank sums of every size-k subset of the pooled sample, k being
  // the smaller sample; the distribution of the larger follows by symmetry.
  const bool a_small = d.n <= d.m;
  const std::size_t k = a_small ? d.n : d.m;
  const std::int64_t total_doubled =
      std::accumulate(d.doubled_ranks.begin(), d.doubled_ranks.end(), std::int64_t{0});
  std::int64_t observed = doubled_rank_sum_a(d);
  if (!a_small) observed = total_doubled - observed;

  std::vector<std::int64_t> ranks = d.doubled_ranks;
  std::sort(ranks.begin(), ranks.end());
  std::int64_t max_sum = 0;
  for (std::size_t i = 0; i < k; ++i) max_sum += ranks[ranks.size() - 1 - i];

  const auto width = static_cast<std::size_t>(max_sum + 1);
  std::vector<long double> counts((k + 1) * width, 0.0L);
  auto at = [&](std::size_t size, std::int64_t sum) -> long double& {
    return counts[size * width + static_cast<std::size_t>(sum)];
  };
  at(0, 0) = 1.0L;
  std::int64_t reach = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    const std::int64_t r = ranks[i];
    reach = std::min(max_sum, reach + r);
    for (std::size_t size = std::min(k, i + 1); size >= 1; --size) {
      for (std::int64_t s = reach; s >= r; --s) at(size, s) += at(size - 1, s - r);
    }
  }

  // E[2W] = k (N + 1); count subsets at least as far from it as observed.
  const std::int64_t center = static_cast<std::int64_t>(k) * static_cast<std::int64_t>(d.n + d.m + 1);
  const std::int64_t observed_dev = std::llabs(observed - center);
  long double extreme = 0.0L;
  long double all = 0.0L;
  for (std::int64_t s = 0; s <= max_sum; ++s) {
    const long double c = at(k, s);
    all += c;
    if (std::llabs(s - center) >= observed_dev) extreme += c;
  }
  return clamp_p(static_cast<double>(extreme) / static_cast<double>(all));
}

SignificanceReport wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
  const RankData d = rank_samples(a, b);
  SignificanceReport report;
  report.test = SignificanceTest::kWilcoxonRankSum;
  const double n = static_cast<double>(d.n);
  report.observed_delta = static_cast<double>(doubled_rank_sum_a(d)) / 2.0 - n * (n + static_cast<double>(d.m) + 1.0) / 2.0;
  if (all_identical(d)) {
    report.degenerate = true;
    report.p_value = 1.0;
    report.exact = true;
    return report;
  }
  report.z_statistic = normal_z(d);
  report.exact = std::min(d.n, d.m) < 10 && exact_affordable(d);
  report.p_value = report.exact ? wilcoxon_exact_p(a, b) : two_sided_normal(report.z_statistic);
  return report;
}

std::string format_significance_line(const SignificanceReport& r) {
  if (r.test == SignificanceTest::kApproxRandomization) {
    const std::string p = r.at_floor ? fmt::format("p <= {:.3g} (estimator floor)", r.p_value)
                                     : fmt::format("p = {:.4g}", r.p_value);
    return fmt::format("approx-randomization: delta = {:.4f}, {}, trials = {}, seed = {}, normal-approx p ~ {:.3g}",
                       r.observed_delta, p, r.trials, r.rng_seed, r.normal_tail_p);
  }
  return fmt::format("wilcoxon-rank-sum: W - E[W] = {:.1f}, z = {:.4f}, p = {:.4g} ({}){}", r.observed_delta,
                     r.z_statistic, r.p_value, r.exact ? "exact" : "normal approximation",
                     r.degenerate ? ", degenerate: all values identical" : "");
}

}  // namespace paratune
