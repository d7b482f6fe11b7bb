#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "paratune/bleu.hpp"
#include "paratune/corpus_io.hpp"
#include "paratune/significance.hpp"

namespace paratune {

using Json = nlohmann::ordered_json;

// Hypotheses of one system, per eval-set name.
struct SystemOutputs {
  std::string name;
  std::vector<std::pair<std::string, std::vector<std::string>>> outputs;

  const std::vector<std::string>* find(std::string_view evalset) const;
};

struct GridColumn {
  std::string evalset;
  std::string refset;
  std::string signature;
};

// Systems x (eval set, reference set) BLEU table. A missing system output
// leaves the cell empty rather than zero.
struct ScoreGrid {
  std::vector<std::string> rows;
  std::vector<GridColumn> columns;
  std::vector<std::vector<std::optional<BleuScore>>> cells;  // [row][column]
  std::vector<std::string> footnotes;                         // distinct signatures, column order
};

// "BLEUp" for paraphrased reference sets (name ending in ".p"), else "BLEU".
std::string metric_label(std::string_view refset);

ScoreGrid build_grid(std::span<const SystemOutputs> systems, std::span<const EvalSet> evalsets,
                     const BleuConfig& cfg, int threads = 1);

// Aligned text, one decimal, "—" for absent cells, signatures underneath.
std::string render_grid_text(const ScoreGrid& grid);
Json grid_to_json(const ScoreGrid& grid);

struct RefsetComparison {
  std::string refset;
  BleuScore a;
  BleuScore b;
  SignificanceReport significance;
};

struct FluencySplit {
  std::int64_t prefer_a = 0;
  std::int64_t prefer_b = 0;
  std::int64_t equal = 0;

  std::int64_t total() const { return prefer_a + prefer_b + equal; }
  double percent_a() const;
  double percent_b() const;
  double percent_equal() const;
};

struct H2HSummary {
  std::string system_a;
  std::string system_b;
  std::string evalset;
  std::vector<RefsetComparison> refsets;
  std::optional<double> quality_a;
  std::optional<double> quality_b;
  std::optional<SignificanceReport> quality_test;
  std::optional<FluencySplit> fluency;
};

FluencySplit fluency_split(std::span<const RatingRecord> ratings);

struct H2HInputs {
  std::string name_a;
  std::vector<std::string> hyps_a;
  std::string name_b;
  std::vector<std::string> hyps_b;
  std::vector<std::string> refsets;  // names within the eval set; empty = all
  std::vector<RatingRecord> ratings;
};

struct SignificanceConfig {
  std::int64_t trials = 10000;
  std::uint64_t seed = 0;
};

// BLEU per reference set with approximate randomization, mean quality with a
// rank-sum test, and the three fluency buckets. Ratings must refer to items
// of the eval set and to one of the two systems (ValidationError otherwise).
H2HSummary head_to_head(const H2HInputs& in, const EvalSet& evalset, const BleuConfig& cfg,
                        const SignificanceConfig& sig, int threads = 1);

std::string render_h2h_text(const H2HSummary& summary);
Json h2h_to_json(const H2HSummary& summary);

Json bleu_to_json(const BleuScore& score);
Json significance_to_json(const SignificanceReport& report);

// Display width in code points.
std::size_t text_width(std::string_view text);

}  // namespace paratune
