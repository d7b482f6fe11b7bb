#include <gtest/gtest.h>

#include "cli.hpp"
#include "paratune/error.hpp"
#include "paratune/report.hpp"
#include "test_support.hpp"

using namespace paratune;
using namespace paratune::testing;

namespace {

EvalSet small_set(const std::string& name, const std::vector<std::string>& refsets) {
  EvalSet set{name, make_corpus({"s0", "s1", "s2"}), {}};
  for (const auto& r : refsets) set.reference_sets.push_back({r, make_corpus({"ein Haus ist hier", "zwei Bäume stehen hier", "drei kleine Vögel singen"})});
  return set;
}

SystemOutputs system_on(const std::string& name, const std::string& evalset, std::vector<std::string> hyps) {
  return SystemOutputs{name, {{evalset, std::move(hyps)}}};
}

BleuScore score_of(double s, const std::string& sig) {
  BleuScore b;
  b.score = s;
  b.signature = sig;
  return b;
}

}  // namespace

TEST(MetricLabel, ParaphrasedSetsAreBleuP) {
  EXPECT_EQ(metric_label("WMT"), "BLEU");
  EXPECT_EQ(metric_label("AR.p"), "BLEUp");
  EXPECT_EQ(metric_label("WMT.p"), "BLEUp");
  EXPECT_EQ(metric_label("p"), "BLEU");
}

TEST(Grid, TwoSystemsFourReferenceSets) {
  const std::vector<EvalSet> sets{small_set("nt19", {"WMT", "AR", "WMT.p", "AR.p"})};
  const std::vector<SystemOutputs> systems{system_on("A", "nt19", {"ein Haus", "zwei", "drei"}),
                                           system_on("B", "nt19", {"ein", "zwei Bäume", "vier"})};
  const ScoreGrid g = build_grid(systems, sets, {});
  ASSERT_EQ(g.rows, (std::vector<std::string>{"A", "B"}));
  ASSERT_EQ(g.columns.size(), 4u);
  std::size_t cells = 0;
  for (const auto& row : g.cells) {
    for (const auto& c : row) cells += c.has_value();
  }
  EXPECT_EQ(cells, 8u);
  EXPECT_EQ(g.footnotes.size(), 4u);
  EXPECT_NE(g.columns[2].signature.find("+nt19/WMT.p+"), std::string::npos);
}

TEST(Grid, SingleCell) {
  const std::vector<EvalSet> sets{small_set("t", {"WMT"})};
  const std::vector<SystemOutputs> systems{system_on("only", "t", {"ein Haus ist hier", "zwei Bäume stehen hier", "drei kleine Vögel singen"})};
  const ScoreGrid g = build_grid(systems, sets, {});
  ASSERT_EQ(g.cells.size(), 1u);
  ASSERT_EQ(g.cells[0].size(), 1u);
  EXPECT_DOUBLE_EQ(g.cells[0][0]->score, 100.0);
  EXPECT_EQ(render_grid_text(g).substr(0, render_grid_text(g).find("\n\n")),
            "            t\nsystem    WMT\nonly    100.0");
}

TEST(Grid, MissingOutputRendersDash) {
  const std::vector<EvalSet> sets{small_set("a", {"WMT"}), small_set("b", {"WMT", "WMT.p"})};
  const std::vector<SystemOutputs> systems{system_on("sys", "a", {"ein Haus", "zwei", "drei"})};
  const ScoreGrid g = build_grid(systems, sets, {});
  EXPECT_FALSE(g.cells[0][1].has_value());
  const std::string text = render_grid_text(g);
  EXPECT_NE(text.find("—"), std::string::npos);
  const Json j = grid_to_json(g);
  EXPECT_TRUE(j["cells"][1]["bleu"].is_null());
}

TEST(Grid, AlignmentErrorNamesSystemAndSet) {
  const std::vector<EvalSet> sets{small_set("nt18", {"WMT"})};
  const std::vector<SystemOutputs> systems{system_on("shorty", "nt18", {"x"})};
  try {
    build_grid(systems, sets, {});
    FAIL();
  } catch (const AlignmentError& e) {
    EXPECT_NE(std::string(e.what()).find("shorty"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("nt18"), std::string::npos);
  }
}

TEST(Grid, SevenSystemFixtureMatchesGolden) {
  const auto m = cli::load_run_manifest(data_dir() / "grid" / "manifest.json");
  const ScoreGrid g = build_grid(m.systems, m.evalsets, m.metric);
  EXPECT_EQ(render_grid_text(g), read_file(data_dir() / "grid" / "expected_grid.txt"));
  const Json golden = Json::parse(read_file(data_dir() / "grid" / "expected_scores.json"));
  for (std::size_t r = 0; r < g.rows.size(); ++r) {
    for (std::size_t c = 0; c < g.columns.size(); ++c) {
      EXPECT_NEAR(g.cells[r][c]->score, golden["scores"][g.rows[r]][g.columns[c].refset].get<double>(), 1e-6);
    }
  }
}

// Published head-to-head numbers, typed in: the renderer must carry them through unchanged.
TEST(HeadToHead, RendersPublishedNumbersUnchanged) {
  H2HSummary s;
  s.system_a = "opt-on-BLEU";
  s.system_b = "opt-on-BLEUp";
  s.evalset = "newstest2019 orig-en";
  RefsetComparison wmt;
  wmt.refset = "WMT";
  wmt.a = score_of(45.0, "sigA");
  wmt.b = score_of(39.8, "sigA");
  RefsetComparison para;
  para.refset = "WMT.p";
  para.a = score_of(13.4, "sigB");
  para.b = score_of(13.7, "sigB");
  s.refsets = {wmt, para};
  s.quality_a = 4.27;
  s.quality_b = 4.72;
  s.fluency = FluencySplit{272, 638, 90};
  const std::string text = render_h2h_text(s);
  for (const char* want : {"BLEU (WMT)", "45.0", "39.8", "BLEUp (WMT.p)", "13.4", "13.7", "4.27", "4.72", "27.2%",
                           "63.8%", "9.0%"}) {
    EXPECT_NE(text.find(want), std::string::npos) << want << "\n" << text;
  }
  const Json j = h2h_to_json(s);
  EXPECT_DOUBLE_EQ(j["refsets"][0]["delta"].get<double>(), 45.0 - 39.8);
  EXPECT_DOUBLE_EQ(j["fluency"]["percent_b"].get<double>(), 63.8);
}

TEST(HeadToHead, FluencyPercentages) {
  std::vector<RatingRecord> ratings;
  auto add = [&](Preference p, int count) {
    for (int i = 0; i < count; ++i) ratings.push_back({0, RatingKind::kFluency, std::nullopt, p, ""});
  };
  add(Preference::kA, 10);
  add(Preference::kB, 30);
  add(Preference::kEqual, 60);
  const FluencySplit f = fluency_split(ratings);
  EXPECT_DOUBLE_EQ(f.percent_a(), 10.0);
  EXPECT_DOUBLE_EQ(f.percent_b(), 30.0);
  EXPECT_DOUBLE_EQ(f.percent_equal(), 60.0);
}

TEST(HeadToHead, IdenticalSystemsAndRatings) {
  const EvalSet set = small_set("t", {"WMT", "WMT.p"});
  H2HInputs in;
  in.name_a = "x";
  in.name_b = "y";
  in.hyps_a = in.hyps_b = {"ein Haus", "zwei", "drei vier"};
  for (std::size_t item = 0; item < 3; ++item) {
    in.ratings.push_back({item, RatingKind::kQuality, 4, std::nullopt, "x"});
    in.ratings.push_back({item, RatingKind::kQuality, 4, std::nullopt, "y"});
  }
  in.ratings.push_back({0, RatingKind::kFluency, std::nullopt, Preference::kEqual, ""});
  in.ratings.push_back({1, RatingKind::kFluency, std::nullopt, Preference::kA, ""});
  in.ratings.push_back({2, RatingKind::kFluency, std::nullopt, Preference::kB, ""});
  const H2HSummary s = head_to_head(in, set, {}, {500, 9});
  ASSERT_EQ(s.refsets.size(), 2u);
  for (const auto& cmp : s.refsets) {
    EXPECT_EQ(cmp.a.score, cmp.b.score);
    EXPECT_EQ(cmp.significance.p_value, 1.0);
  }
  EXPECT_EQ(*s.quality_a, *s.quality_b);
  EXPECT_EQ(s.quality_test->p_value, 1.0);
  EXPECT_DOUBLE_EQ(s.fluency->percent_a() + s.fluency->percent_b() + s.fluency->percent_equal(), 100.0);
}

TEST(HeadToHead, UnknownItemOrSystemRejected) {
  const EvalSet set = small_set("t", {"WMT"});
  H2HInputs in;
  in.name_a = "x";
  in.name_b = "y";
  in.hyps_a = in.hyps_b = {"a", "b", "c"};
  in.ratings.push_back({3, RatingKind::kQuality, 4, std::nullopt, "x"});
  EXPECT_THROW(head_to_head(in, set, {}, {10, 1}), ValidationError);
  in.ratings = {{0, RatingKind::kQuality, 4, std::nullopt, "z"}};
  EXPECT_THROW(head_to_head(in, set, {}, {10, 1}), ValidationError);
  in.ratings.clear();
  in.refsets = {"AR"};
  EXPECT_THROW(head_to_head(in, set, {}, {10, 1}), ConfigError);
}

TEST(TextWidth, CountsCodePoints) {
  EXPECT_EQ(text_width("—"), 1u);
  EXPECT_EQ(text_width("Bäume"), 5u);
}
