#include <gtest/gtest.h>

#include <sstream>

#include "paratune/error.hpp"
#include "paratune/nbest.hpp"
#include "test_support.hpp"

using namespace paratune;

namespace {

std::string synthetic_nbest(std::size_t segments, std::size_t entries, std::size_t width) {
  std::ostringstream out;
  for (std::size_t s = 0; s < segments; ++s) {
    for (std::size_t e = 0; e < entries; ++e) {
      out << s << " ||| hyp " << s << " " << e << " |||";
      for (std::size_t f = 0; f < width; ++f) out << ' ' << -0.5 * static_cast<double>(f + e);
      out << " ||| " << -static_cast<double>(e) << '\n';
    }
  }
  return out.str();
}

NBestEntry entry_with(std::vector<double> features, std::size_t rank = 0) {
  NBestEntry e;
  e.rank = rank;
  e.features = std::move(features);
  return e;
}

}  // namespace

TEST(NBestParse, MosesShapedInput) {
  const auto lists = parse_nbest(synthetic_nbest(2, 50, 23), 23);
  ASSERT_EQ(lists.size(), 2u);
  EXPECT_EQ(lists[0].entries.size(), 50u);
  EXPECT_EQ(lists[1].segment_id, 1u);
  EXPECT_EQ(lists[1].entries[49].rank, 49u);
  EXPECT_EQ(lists[1].entries[3].text, "hyp 1 3");
  EXPECT_EQ(feature_width(lists), 23u);
}

TEST(NBestParse, MinimalInput) {
  const auto lists = parse_nbest("0 ||| a ||| 1.5 ||| 0\n", 1);
  ASSERT_EQ(lists.size(), 1u);
  EXPECT_EQ(lists[0].entries[0].features, std::vector<double>{1.5});
}

TEST(NBestParse, WidthInferredFromFirstLine) {
  EXPECT_EQ(feature_width(parse_nbest(synthetic_nbest(1, 2, 4), 0)), 4u);
}

TEST(NBestParse, FeatureCountMismatchNamesSegment) {
  std::string text = synthetic_nbest(3, 2, 23);
  text += "3 ||| short |||";
  for (int f = 0; f < 22; ++f) text += " 0";
  text += " ||| 0\n";
  try {
    parse_nbest(text, 23, "dev.nbest");
    FAIL();
  } catch (const FormatError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("segment 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("dev.nbest"), std::string::npos) << msg;
  }
}

TEST(NBestParse, NonContiguousSegmentIdsRejected) {
  EXPECT_THROW(parse_nbest("0 ||| a ||| 1 ||| 0\n2 ||| b ||| 1 ||| 0\n", 1), FormatError);
  EXPECT_THROW(parse_nbest("1 ||| a ||| 1 ||| 0\n", 1), FormatError);
  EXPECT_THROW(parse_nbest("0 ||| a ||| 1 ||| 0\n1 ||| b ||| 1 ||| 0\n0 ||| c ||| 1 ||| 0\n", 1), FormatError);
}

TEST(NBestParse, MalformedLinesRejected) {
  EXPECT_THROW(parse_nbest("0 ||| a ||| 1\n", 1), FormatError);
  EXPECT_THROW(parse_nbest("0 ||| a ||| x ||| 0\n", 1), FormatError);
  EXPECT_THROW(parse_nbest("zero ||| a ||| 1 ||| 0\n", 1), FormatError);
}

TEST(NBestWrite, CanonicalFileRoundTripsByteForByte) {
  const std::string text = "0 ||| ein Haus ||| 0.1 -2 3e-05 ||| -1.25\n0 ||| das Haus ||| 1 0 0 ||| 0\n"
                           "1 ||| x ||| 0.30000000000000004 1e+300 -0 ||| 2\n";
  const auto lists = parse_nbest(text, 3);
  std::ostringstream out;
  write_nbest(out, lists);
  EXPECT_EQ(out.str(), text);
  EXPECT_EQ(parse_nbest(out.str(), 3), lists);
}

TEST(Combine, DotProduct) {
  EXPECT_DOUBLE_EQ(combined_score(entry_with({1, 0}), {{0.6, 0.4}}), 0.6);
  EXPECT_DOUBLE_EQ(combined_score(entry_with({2, -1, 3}), {{0.5, 0.25, 0.25}}), 1.5);
  EXPECT_EQ(combined_score(entry_with({7, -3}), {{0, 0}}), 0.0);
}

TEST(Combine, WidthMismatchIsContractError) {
  EXPECT_THROW(combined_score(entry_with({1, 2}), {{1}}), ContractError);
}

TEST(Rerank, PicksHighestScore) {
  const std::vector<NBestList> lists{{0, {entry_with({1.0}, 0), entry_with({2.0}, 1)}}};
  EXPECT_EQ(rerank(lists, {{1.0}}), std::vector<std::size_t>{1});
}

TEST(Rerank, ZeroWeightsPickRankZero) {
  const auto lists = parse_nbest(synthetic_nbest(5, 4, 3), 3);
  EXPECT_EQ(rerank(lists, {{0, 0, 0}}), std::vector<std::size_t>(5, 0));
}

TEST(Rerank, TiesResolveToSmallestRankNotPosition) {
  // entries stored out of rank order; both score 1
  const std::vector<NBestList> lists{{0, {entry_with({1.0}, 3), entry_with({1.0}, 1), entry_with({0.0}, 0)}}};
  EXPECT_EQ(rerank(lists, {{1.0}}), std::vector<std::size_t>{1});
}

TEST(Rerank, PositiveScalingKeepsSelection) {
  paratune::testing::Lcg rng(11);
  std::vector<NBestList> lists;
  for (std::size_t s = 0; s < 30; ++s) {
    NBestList list{s, {}};
    for (std::size_t e = 0; e < 8; ++e) list.entries.push_back(entry_with({rng.uniform(), rng.uniform(), rng.uniform()}, e));
    lists.push_back(std::move(list));
  }
  const WeightVector w{{0.3, -0.7, 0.2}};
  for (double c : {0.001, 1.0, 17.0, 1e6}) {
    EXPECT_EQ(rerank(lists, {{c * 0.3, c * -0.7, c * 0.2}}), rerank(lists, w)) << c;
  }
}

TEST(Rerank, EmptyListIsDataError) {
  const std::vector<NBestList> lists{{0, {}}};
  EXPECT_THROW(rerank(lists, {{1.0}}), DataError);
}

TEST(Rerank, ThreadsDoNotChangeSelection) {
  const auto lists = parse_nbest(synthetic_nbest(40, 6, 2), 2);
  EXPECT_EQ(rerank(lists, {{0.2, -1}}, 1), rerank(lists, {{0.2, -1}}, 8));
}

TEST(Weights, ParseFormatAndNormalize) {
  const WeightVector w = parse_weights(" 0.5\t-1.5 1e-3\n");
  EXPECT_EQ(w.weights, (std::vector<double>{0.5, -1.5, 0.001}));
  EXPECT_EQ(format_weights(w), "0.5 -1.5 0.001\n");
  const WeightVector n = l1_normalized(WeightVector{{2, -6}});
  EXPECT_EQ(n.weights, (std::vector<double>{0.25, -0.75}));
  EXPECT_EQ(n.normalization, Normalization::kL1Unit);
  EXPECT_THROW(l1_normalized(WeightVector{{0, 0}}), ValidationError);
  EXPECT_THROW(parse_weights("1 two"), FormatError);
  EXPECT_THROW(parse_weights("\n"), FormatError);
}
