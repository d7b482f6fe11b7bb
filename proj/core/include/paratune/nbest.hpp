#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace paratune {

// One hypothesis of a segment's n-best list with its fixed-width feature vector.
struct NBestEntry {
  std::size_t segment_id = 0;
  std::size_t rank = 0;  // 0-based position in the decoder's beam order
  std::string text;
  std::vector<double> features;
  double model_score = 0.0;

  bool operator==(const NBestEntry&) const = default;
};

struct NBestList {
  std::size_t segment_id = 0;
  std::vector<NBestEntry> entries;  // in rank order

  bool operator==(const NBestList&) const = default;
};

// Moses-style lines: "<segment_id> ||| <hypothesis> ||| <f1> ... <fK> ||| <model_score>".
// Segment ids start at 0 and increase by one at each new segment. Every entry
// must carry `expected_features` values; pass 0 to take the width from the
// first line. Errors (FormatError) name the file line and segment id.
std::vector<NBestList> parse_nbest(std::string_view content, std::size_t expected_features,
                                   std::string_view source_name = "<memory>");
std::vector<NBestList> load_nbest(const std::filesystem::path& path, std::size_t expected_features);

// Numbers are written in shortest round-trip form, so files produced here
// (and any file already in that form) survive a load/write cycle unchanged.
void write_nbest(std::ostream& out, std::span<const NBestList> lists);

std::size_t feature_width(std::span<const NBestList> lists);  // 0 when empty

enum class Normalization { kNone, kL1Unit };

struct WeightVector {
  std::vector<double> weights;
  Normalization normalization = Normalization::kNone;

  std::size_t size() const { return weights.size(); }
  bool operator==(const WeightVector&) const = default;
};

// Scales to unit L1 norm. Throws ValidationError for an all-zero vector.
WeightVector l1_normalized(const WeightVector& w);

double combined_score(const NBestEntry& entry, const WeightVector& w);

// Index of the selected entry in each list: highest combined score, ties to
// the smallest original rank. Throws DataError for an empty list.
std::vector<std::size_t> rerank(std::span<const NBestList> lists, const WeightVector& w, int threads = 1);

std::vector<std::string> selected_texts(std::span<const NBestList> lists, std::span<const std::size_t> selection);

// Weights file: one line of whitespace-separated floats.
WeightVector parse_weights(std::string_view content, std::string_view source_name = "<memory>");
WeightVector load_weights(const std::filesystem::path& path);
std::string format_weights(const WeightVector& w);  // includes trailing '\n'

std::string format_double(double value);  // shortest round-trip

}  // namespace paratune
