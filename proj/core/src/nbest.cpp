#include "paratune/nbest.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "paratune/corpus_io.hpp"
#include "paratune/error.hpp"
#include "paratune/parallel.hpp"
#include "paratune/unicode.hpp"

namespace paratune {
namespace {

constexpr std::string_view kSeparator = " ||| ";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view text, double& value) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end && !text.empty() && std::isfinite(value);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t hit = line.find(kSeparator, start);
    if (hit == std::string_view::npos) break;
    fields.push_back(line.substr(start, hit - start));
    start = hit + kSeparator.size();
  }
  fields.push_back(line.substr(start));
  return fields;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::vector<NBestList> parse_nbest(std::string_view content, std::size_t expected_features,
                                   std::string_view source_name) {
  const Corpus lines = parse_plaintext(content, Origin::kUnknown, source_name);
  std::vector<NBestList> lists;
  std::size_t width = expected_features;
  for (const auto& line : lines) {
    const std::string where = std::string(source_name) + ":" + std::to_string(line.id + 1);
    const auto fields = split_fields(line.text);
    if (fields.size() != 4) {
      throw FormatError(where + ": expected 4 '|||'-separated fields, found " + std::to_string(fields.size()));
    }
    std::size_t seg = 0;
    const std::string_view id_text = trim(fields[0]);
    auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), seg);
    if (ec != std::errc() || ptr != id_text.data() + id_text.size() || id_text.empty()) {
      throw FormatError(where + ": bad segment id '" + std::string(id_text) + "'");
    }
    if (lists.empty()) {
      if (seg != 0) throw FormatError(where + ": segment ids must start at 0, found " + std::to_string(seg));
      lists.push_back({0, {}});
    } else if (seg == lists.back().segment_id + 1) {
      lists.push_back({seg, {}});
    } else if (seg != lists.back().segment_id) {
      throw FormatError(where + ": segment " + std::to_string(seg) + " does not follow segment " +
                        std::to_string(lists.back().segment_id) + " (ids must be contiguous and non-decreasing)");
    }

    NBestEntry entry;
    entry.segment_id = seg;
    entry.rank = lists.back().entries.size();
    entry.text = std::string(fields[1]);
    unicode::for_each_whitespace_field(fields[2], [&](std::string_view tok) {
      double v = 0;
      if (!parse_double(tok, v)) {
        throw FormatError(where + ": segment " + std::to_string(seg) + ": bad feature value '" + std::string(tok) + "'");
      }
      entry.features.push_back(v);
    });
    if (width == 0) width = entry.features.size();
    if (entry.features.size() != width) {
      throw FormatError(where + ": segment " + std::to_string(seg) + ": expected " + std::to_string(width) +
                        " features, found " + std::to_string(entry.features.size()));
    }
    if (!parse_double(trim(fields[3]), entry.model_score)) {
      throw FormatError(where + ": segment " + std::to_string(seg) + ": bad model score");
    }
    lists.back().entries.push_back(std::move(entry));
  }
  return lists;
}

std::vector<NBestList> load_nbest(const std::filesystem::path& path, std::size_t expected_features) {
  return parse_nbest(read_file(path), expected_features, path.string());
}

void write_nbest(std::ostream& out, std::span<const NBestList> lists) {
  for (const auto& list : lists) {
    for (const auto& e : list.entries) {
      out << e.segment_id << kSeparator << e.text << kSeparator;
      for (std::size_t k = 0; k < e.features.size(); ++k) {
        if (k) out << ' ';
        out << format_double(e.features[k]);
      }
      out << kSeparator << format_double(e.model_score) << '\n';
    }
  }
}

std::size_t feature_width(std::span<const NBestList> lists) {
  for (const auto& list : lists) {
    if (!list.entries.empty()) return list.entries.front().features.size();
  }
  return 0;
}

WeightVector l1_normalized(const WeightVector& w) {
  double norm = 0.0;
  for (double v : w.weights) norm += std::fabs(v);
  if (norm == 0.0) throw ValidationError("cannot L1-normalize an all-zero weight vector");
  WeightVector out{w.weights, Normalization::kL1Unit};
  for (double& v : out.weights) v /= norm;
  return out;
}

double combined_score(const NBestEntry& entry, const WeightVector& w) {
  if (entry.features.size() != w.weights.size()) {
    throw ContractError("feature width " + std::to_string(entry.features.size()) + " does not match weight width " +
                        std::to_string(w.weights.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < w.weights.size(); ++k) sum += w.weights[k] * entry.features[k];
  return sum;
}

std::vector<std::size_t> rerank(std::span<const NBestList> lists, const WeightVector& w, int threads) {
  for (const auto& list : lists) {
    if (list.entries.empty()) throw DataError("segment " + std::to_string(list.segment_id) + " has an empty n-best list");
  }
  std::vector<std::size_t> selection(lists.size());
  parallel_for(lists.size(), threads, [&](std::size_t i) {
    const auto& entries = lists[i].entries;
    std::size_t best = 0;
    double best_score = combined_score(entries[0], w);
    for (std::size_t j = 1; j < entries.size(); ++j) {
      const double s = combined_score(entries[j], w);
      if (s > best_score || (s == best_score && entries[j].rank < entries[best].rank)) {
        best = j;
        best_score = s;
      }
    }
    selection[i] = best;
  });
  return selection;
}

std::vector<std::string> selected_texts(std::span<const NBestList> lists, std::span<const std::size_t> selection) {
  if (lists.size() != selection.size()) throw ContractError("selection size does not match the number of lists");
  std::vector<std::string> out;
  out.reserve(lists.size());
  for (std::size_t i = 0; i < lists.size(); ++i) out.push_back(lists[i].entries.at(selection[i]).text);
  return out;
}

WeightVector parse_weights(std::string_view content, std::string_view source_name) {
  WeightVector w;
  unicode::for_each_whitespace_field(content, [&](std::string_view tok) {
    double v = 0;
    if (!parse_double(tok, v)) {
      throw FormatError(std::string(source_name) + ": bad weight value '" + std::string(tok) + "'");
    }
    w.weights.push_back(v);
  });
  if (w.weights.empty()) throw FormatError(std::string(source_name) + ": no weights found");
  return w;
}

WeightVector load_weights(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  if (auto bad = unicode::find_invalid_utf8(content)) {
    throw DecodeError(path.string() + ": invalid UTF-8 at byte " + std::to_string(*bad + 1));
  }
  return parse_weights(content, path.string());
}

std::string format_weights(const WeightVector& w) {
  std::string out;
  for (std::size_t k = 0; k < w.weights.size(); ++k) {
    if (k) out.push_back(' ');
    out += format_double(w.weights[k]);
  }
  out.push_back('\n');
  return out;
}

}  // namespace paratune
