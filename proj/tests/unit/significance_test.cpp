#include <gtest/gtest.h>

#include <numeric>

#include "paratune/error.hpp"
#include "paratune/significance.hpp"
#include "test_support.hpp"

using namespace paratune;
using namespace paratune::testing;

namespace {

// Exact paired randomization p by enumerating all 2^n swap patterns.
double enumerated_ar_p(const std::vector<BleuStats>& a, const std::vector<BleuStats>& b) {
  BleuStats sa, sb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
  }
  const double observed = std::abs(bleu_of(sa) - bleu_of(sb));
  std::size_t extreme = 0;
  const std::size_t patterns = std::size_t{1} << a.size();
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    BleuStats x, y;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const bool swap = (mask >> i) & 1U;
      x += swap ? b[i] : a[i];
      y += swap ? a[i] : b[i];
    }
    if (std::abs(bleu_of(x) - bleu_of(y)) >= observed) ++extreme;
  }
  return static_cast<double>(extreme) / static_cast<double>(patterns);
}

// Exact rank-sum p by enumerating every split of the pooled sample.
double enumerated_wilcoxon_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size();
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n; ++i) {
    double below = 0, equal = 0;
    for (double v : pooled) {
      below += v < pooled[i];
      equal += v == pooled[i];
    }
    ranks[i] = below + (equal + 1) / 2;
  }
  const double expected = static_cast<double>(a.size()) * static_cast<double>(n + 1) / 2;
  const double observed = std::abs(std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), 0.0) - expected);
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(a.size()), true);
  std::size_t all = 0, extreme = 0;
  std::sort(pick.begin(), pick.end());
  do {
    double w = 0;
    for (std::size_t i = 0; i < n; ++i) w += pick[i] ? ranks[i] : 0;
    ++all;
    if (std::abs(w - expected) >= observed - 1e-9) ++extreme;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return static_cast<double>(extreme) / static_cast<double>(all);
}

BleuStats random_stats(Lcg& rng) {
  BleuStats s;
  s.hyp_len = 5 + static_cast<std::int64_t>(rng.below(20));
  s.ref_len = 5 + static_cast<std::int64_t>(rng.below(20));
  for (int n = 0; n < kMaxNgramOrder; ++n) {
    s.total[n] = std::max<std::int64_t>(0, s.hyp_len - n);
    s.match[n] = s.total[n] ? static_cast<std::int64_t>(rng.below(static_cast<std::size_t>(s.total[n]) + 1)) : 0;
  }
  for (int n = 1; n < kMaxNgramOrder; ++n) s.match[n] = std::min(s.match[n], s.match[n - 1]);
  return s;
}

}  // namespace

TEST(ApproxRandomization, IdenticalSystemsGivePOne) {
  const std::vector<std::string> hyps{"ein Haus", "zwei Häuser", "drei"};
  const std::vector<std::vector<std::string>> refs{{"ein Haus", "zwei Haus", "vier"}};
  const SignificanceReport r = approx_randomization(hyps, hyps, refs, {}, 1000, 1);
  EXPECT_EQ(r.observed_delta, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_EQ(r.extreme_count, 1000);
}

TEST(ApproxRandomization, FiveSegmentsMatchFullEnumeration) {
  Lcg rng(2024);
  for (int inst = 0; inst < 5; ++inst) {
    std::vector<BleuStats> a, b;
    for (int i = 0; i < 5; ++i) {
      a.push_back(random_stats(rng));
      b.push_back(random_stats(rng));
    }
    const double exact = enumerated_ar_p(a, b);
    const SignificanceReport r = approx_randomization(a, b, 200000, 77 + static_cast<std::uint64_t>(inst));
    // binomial standard error at 200k trials is below 0.0012
    EXPECT_NEAR(r.p_value, exact, 0.005) << "instance " << inst;
  }
}

TEST(ApproxRandomization, ReportIsReproducibleAndThreadIndependent) {
  Lcg rng(8);
  std::vector<BleuStats> a, b;
  for (int i = 0; i < 60; ++i) {
    a.push_back(random_stats(rng));
    b.push_back(random_stats(rng));
  }
  const SignificanceReport r1 = approx_randomization(a, b, 10000, 123, 1);
  const SignificanceReport r2 = approx_randomization(a, b, 10000, 123, 1);
  const SignificanceReport r8 = approx_randomization(a, b, 10000, 123, 8);
  EXPECT_EQ(format_significance_line(r1), format_significance_line(r2));
  EXPECT_EQ(r1.extreme_count, r8.extreme_count);
  EXPECT_EQ(r1.p_value, r8.p_value);
  EXPECT_EQ(r1.normal_tail_p, r8.normal_tail_p);
}

TEST(ApproxRandomization, FloorIsReported) {
  std::vector<BleuStats> a, b;
  for (int i = 0; i < 40; ++i) {
    BleuStats good;
    good.hyp_len = good.ref_len = 10;
    for (int n = 0; n < kMaxNgramOrder; ++n) good.match[n] = good.total[n] = 10 - n;
    BleuStats bad = good;
    for (int n = 0; n < kMaxNgramOrder; ++n) bad.match[n] = 0;
    a.push_back(good);
    b.push_back(bad);
  }
  const SignificanceReport r = approx_randomization(a, b, 999, 5);
  EXPECT_TRUE(r.at_floor);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0 / 1000.0);
  EXPECT_NE(format_significance_line(r).find("estimator floor"), std::string::npos);
}

TEST(ApproxRandomization, LengthMismatchIsAlignmentError) {
  const std::vector<BleuStats> a(3), b(2);
  EXPECT_THROW(approx_randomization(a, b, 10, 1), AlignmentError);
}

TEST(Wilcoxon, ClassicExactExample) {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  const SignificanceReport r = wilcoxon_rank_sum(a, b);
  EXPECT_EQ(r.p_value, 0.1);
  EXPECT_TRUE(r.exact);
  EXPECT_FALSE(r.degenerate);
}

TEST(Wilcoxon, IdenticalMultisetsGivePOne) {
  const std::vector<double> a{1, 4, 2, 2}, b{2, 1, 4, 2};
  EXPECT_EQ(wilcoxon_rank_sum(a, b).p_value, 1.0);
}

TEST(Wilcoxon, AllTiesAreDegenerate) {
  const std::vector<double> a{5, 5, 5}, b{5, 5, 5};
  const SignificanceReport r = wilcoxon_rank_sum(a, b);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.p_value, 1.0);
}

TEST(Wilcoxon, ExactRouteMatchesEnumerationWithTies) {
  Lcg rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> a(2 + rng.below(5)), b(2 + rng.below(6));
    for (auto& v : a) v = static_cast<double>(rng.below(7));
    for (auto& v : b) v = static_cast<double>(rng.below(7));
    EXPECT_NEAR(wilcoxon_exact_p(a, b), enumerated_wilcoxon_p(a, b), 1e-12) << "trial " << trial;
  }
}

// Reference values from scipy.stats.mannwhitneyu (two-sided).
TEST(Wilcoxon, AgreesWithScipy) {
  const std::vector<double> a1{1, 3, 5, 7, 9, 11, 13}, b1{2, 4, 6, 8, 10, 12, 14, 16};
  EXPECT_NEAR(wilcoxon_exact_p(a1, b1), 0.46340326340326343, 1e-12);  // method='exact'
  EXPECT_NEAR(wilcoxon_normal_p(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5, 6}), 0.08085559837005224, 1e-12);
  const std::vector<double> a2{1.5, 2, 9, 4, 4, 7, 3, 8, 8, 1, 6}, b2{2, 5, 5, 9, 10, 11, 3, 12, 13, 4, 6, 14};
  const SignificanceReport r2 = wilcoxon_rank_sum(a2, b2);
  EXPECT_FALSE(r2.exact);
  EXPECT_NEAR(r2.p_value, 0.07867896200423008, 1e-12);  // method='asymptotic', continuity
  const std::vector<double> a3{3, 4, 4, 5, 5, 5, 6, 2, 4, 5, 6, 6}, b3{4, 5, 5, 6, 6, 6, 3, 5, 5, 6, 6, 4, 6};
  EXPECT_NEAR(wilcoxon_normal_p(a3, b3), 0.23203552925548798, 1e-12);
}

TEST(Wilcoxon, ExactAndNormalRoutesAgreeNearTheSwitch) {
  Lcg rng(64);
  for (std::size_t n = 8; n <= 12; ++n) {
    std::vector<double> a(n), b(n);
    for (auto& v : a) v = rng.uniform();
    for (auto& v : b) v = rng.uniform() + 0.2;
    EXPECT_NEAR(wilcoxon_exact_p(a, b), wilcoxon_normal_p(a, b), 0.01) << "n = " << n;
  }
}

TEST(Wilcoxon, EmptySampleRejected) {
  EXPECT_THROW(wilcoxon_rank_sum(std::vector<double>{}, std::vector<double>{1.0}), Error);
}
