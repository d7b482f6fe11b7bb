#include <gtest/gtest.h>

#include <map>

#include "paratune/error.hpp"
#include "paratune/ngram_analysis.hpp"
#include "test_support.hpp"

using namespace paratune;
using namespace paratune::testing;

namespace {

const NGramDelta* find(const std::vector<NGramDelta>& v, const std::string& ngram) {
  for (const auto& d : v) {
    if (d.ngram == ngram) return &d;
  }
  return nullptr;
}

}  // namespace

TEST(NGramDiff, HandEnumeratedTrigram) {
  const std::vector<std::string> a{"a b c d", "x a b c"};
  const std::vector<std::string> b{"a b c d", "x a c b"};
  const std::vector<std::vector<std::string>> refs{{"a b c d", "a b c y"}};
  const auto ranked = ngram_contributions(a, b, refs, {TokenScheme::kNone, false});
  const NGramDelta* abc = find(ranked, "a b c");
  ASSERT_NE(abc, nullptr);
  EXPECT_EQ(abc->order, 3);
  EXPECT_EQ(abc->matched_a, 2);
  EXPECT_EQ(abc->matched_b, 1);
  EXPECT_EQ(abc->delta, 1);
}

TEST(NGramDiff, IdenticalSystemsGiveNothingAboveThreshold) {
  const std::vector<std::string> a{"ein Haus ist klein", "ja"};
  const std::vector<std::vector<std::string>> refs{{"ein Haus ist groß", "ja"}};
  EXPECT_TRUE(ngram_contributions(a, a, refs, {}).empty());
  const auto all = ngram_contributions(a, a, refs, {}, {1, 4, 0});
  EXPECT_FALSE(all.empty());
  for (const auto& d : all) EXPECT_EQ(d.delta, 0);
}

TEST(NGramDiff, ReferenceAgainstNonsenseCreditsEveryReferenceNgram) {
  const std::vector<std::string> refs_text{"the cat sat", "the dog"};
  const std::vector<std::string> junk{"zzz", "qqq"};
  const std::vector<std::vector<std::string>> refs{refs_text};
  const auto ranked = ngram_contributions(refs_text, junk, refs, {TokenScheme::kNone, false});
  EXPECT_EQ(find(ranked, "the")->delta, 2);
  EXPECT_EQ(find(ranked, "the cat sat")->delta, 1);
  EXPECT_EQ(find(ranked, "dog")->delta, 1);
  EXPECT_EQ(ranked.size(), 8u);  // 4 unigrams, 3 bigrams, 1 trigram
}

TEST(NGramDiff, AntisymmetricUnderSwap) {
  Lcg rng(3);
  static const char* kWords[] = {"a", "b", "c", "d", "e"};
  auto sentence = [&] {
    std::string s;
    for (std::size_t i = 0, n = 1 + rng.below(8); i < n; ++i) s += std::string(i ? " " : "") + kWords[rng.below(5)];
    return s;
  };
  std::vector<std::string> a, b, r;
  for (int i = 0; i < 30; ++i) {
    a.push_back(sentence());
    b.push_back(sentence());
    r.push_back(sentence());
  }
  const std::vector<std::vector<std::string>> refs{r};
  const auto ab = ngram_contributions(a, b, refs, {});
  const auto ba = ngram_contributions(b, a, refs, {});
  ASSERT_EQ(ab.size(), ba.size());
  std::map<std::string, std::int64_t> deltas;
  for (const auto& d : ab) deltas[d.ngram] = d.delta;
  for (const auto& d : ba) EXPECT_EQ(deltas.at(d.ngram), -d.delta) << d.ngram;
}

TEST(NGramDiff, OrderingAndTails) {
  const std::vector<std::string> a{"a b c", "x"};
  const std::vector<std::string> b{"a", "x y z"};
  const std::vector<std::vector<std::string>> refs{{"a b c", "x y z"}};
  const auto ranked = ngram_contributions(a, b, refs, {});
  for (std::size_t i = 1; i < ranked.size(); ++i) {
    const auto& p = ranked[i - 1];
    const auto& q = ranked[i];
    const bool ordered = p.delta > q.delta || (p.delta == q.delta && (p.order > q.order ||
                                                                      (p.order == q.order && p.ngram < q.ngram)));
    EXPECT_TRUE(ordered) << p.ngram << " before " << q.ngram;
  }
  const auto tails = delta_tails(ranked, 1);
  ASSERT_EQ(tails.size(), 2u);
  EXPECT_EQ(tails[0].ngram, "a b c");
  EXPECT_GT(tails[0].delta, 0);
  EXPECT_LT(tails[1].delta, 0);
}

TEST(NGramDiff, OrderRangeIsRespected) {
  const std::vector<std::string> a{"a b c d"};
  const std::vector<std::string> b{"q"};
  const std::vector<std::vector<std::string>> refs{{"a b c d"}};
  for (const auto& d : ngram_contributions(a, b, refs, {}, {2, 3, 1})) {
    EXPECT_GE(d.order, 2);
    EXPECT_LE(d.order, 3);
  }
}

TEST(NGramDiff, PerOrderSumsEqualMetricMatches) {
  const auto dir = data_dir() / "bleu";
  const auto hyp = read_lines(dir / "hyp.de");
  const auto other = read_lines(dir / "ref.AR.p.de");
  const std::vector<std::vector<std::string>> refs{read_lines(dir / "ref.WMT.de"), read_lines(dir / "ref.AR.de")};
  for (const TokenizerConfig tok : {TokenizerConfig{}, TokenizerConfig{TokenScheme::kNone, true}}) {
    const auto all = ngram_contributions(hyp, other, refs, tok, {1, 4, 0}, 4);
    const auto totals_a = matched_totals(all, true);
    const auto totals_b = matched_totals(all, false);
    BleuConfig cfg;
    cfg.tokenizer = tok;
    const BleuStats sa = corpus_bleu(hyp, refs, cfg).stats;
    const BleuStats sb = corpus_bleu(other, refs, cfg).stats;
    for (int n = 0; n < kMaxNgramOrder; ++n) {
      EXPECT_EQ(totals_a[n], sa.match[n]);
      EXPECT_EQ(totals_b[n], sb.match[n]);
    }
  }
}

TEST(NGramDiff, LengthMismatchIsAlignmentError) {
  const std::vector<std::string> a{"x"}, b{"x", "y"};
  const std::vector<std::vector<std::string>> refs{{"x"}};
  EXPECT_THROW(ngram_contributions(a, b, refs, {}), AlignmentError);
}
