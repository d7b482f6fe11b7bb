#include "paratune/report.hpp"

#include <fmt/format.h>

#include "paratune/error.hpp"

namespace paratune {

const std::vector<std::string>* SystemOutputs::find(std::string_view evalset) const {
  for (const auto& [name, hyps] : outputs) {
    if (name == evalset) return &hyps;
  }
  return nullptr;
}

std::string metric_label(std::string_view refset) {
  return refset.ends_with(".p") ? "BLEUp" : "BLEU";
}

std::size_t text_width(std::string_view text) {
  std::size_t width = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++width;
  }
  return width;
}

namespace {

std::vector<std::string> reference_texts(const ReferenceSet& ref) { return texts(ref.segments); }

std::string pad_left(const std::string& s, std::size_t width) {
  const std::size_t w = text_width(s);
  return w >= width ? s : std::string(width - w, ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  const std::size_t w = text_width(s);
  return w >= width ? s : s + std::string(width - w, ' ');
}

std::string rstrip(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

// Renders rows of cells; column 0 left-aligned, the rest right-aligned.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (row.size() > widths.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], text_width(row[c]));
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += c == 0 ? pad_right(row[c], widths[c]) : pad_left(row[c], widths[c]);
    }
    out += rstrip(std::move(line));
    out += '\n';
  }
  return out;
}

}  // namespace

ScoreGrid build_grid(std::span<const SystemOutputs> systems, std::span<const EvalSet> evalsets, const BleuConfig& cfg,
                     int threads) {
  ScoreGrid grid;
  for (const auto& set : evalsets) {
    set.validate();
    for (const auto& ref : set.reference_sets) {
      BleuConfig col_cfg = cfg;
      col_cfg.test_set = set.name + "/" + ref.name;
      GridColumn col{set.name, ref.name, bleu_signature(col_cfg, 1)};
      if (std::find(grid.footnotes.begin(), grid.footnotes.end(), col.signature) == grid.footnotes.end()) {
        grid.footnotes.push_back(col.signature);
      }
      grid.columns.push_back(std::move(col));
    }
  }
  for (const auto& sys : systems) {
    grid.rows.push_back(sys.name);
    std::vector<std::optional<BleuScore>> row;
    for (const auto& set : evalsets) {
      const auto* hyps = sys.find(set.name);
      if (hyps && hyps->size() != set.size()) {
        throw AlignmentError("system '" + sys.name + "' has " + std::to_string(hyps->size()) +
                             " lines for eval set '" + set.name + "', expected " + std::to_string(set.size()));
      }
      for (const auto& ref : set.reference_sets) {
        if (!hyps) {
          row.emplace_back(std::nullopt);
        } else {
          BleuConfig col_cfg = cfg;
          col_cfg.test_set = set.name + "/" + ref.name;
          const std::vector<std::vector<std::string>> refs{reference_texts(ref)};
          row.emplace_back(corpus_bleu(*hyps, refs, col_cfg, threads));
        }
      }
    }
    grid.cells.push_back(std::move(row));
  }
  return grid;
}

std::string render_grid_text(const ScoreGrid& grid) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> top{""};
  std::vector<std::string> header{"system"};
  for (std::size_t c = 0; c < grid.columns.size(); ++c) {
    const bool new_group = c == 0 || grid.columns[c].evalset != grid.columns[c - 1].evalset;
    top.push_back(new_group ? grid.columns[c].evalset : "");
    header.push_back(grid.columns[c].refset);
  }
  rows.push_back(std::move(top));
  rows.push_back(std::move(header));
  for (std::size_t r = 0; r < grid.rows.size(); ++r) {
    std::vector<std::string> row{grid.rows[r]};
    for (const auto& cell : grid.cells[r]) row.push_back(cell ? fmt::format("{:.1f}", cell->score) : "—");
    rows.push_back(std::move(row));
  }
  std::string out = render_table(rows);
  out += "\nSignatures:\n";
  for (const auto& sig : grid.footnotes) out += "  " + sig + "\n";
  return out;
}

Json bleu_to_json(const BleuScore& score) {
  Json j;
  j["score"] = score.score;
  j["precisions"] = score.precisions;
  j["brevity_penalty"] = score.brevity_penalty;
  j["counts"] = score.stats.match;
  j["totals"] = score.stats.total;
  j["hyp_len"] = score.stats.hyp_len;
  j["ref_len"] = score.stats.ref_len;
  j["signature"] = score.signature;
  if (score.empty_hypothesis) j["warning"] = "hypothesis corpus has no tokens; score defined as 0";
  return j;
}

Json grid_to_json(const ScoreGrid& grid) {
  Json cells = Json::array();
  for (std::size_t r = 0; r < grid.rows.size(); ++r) {
    for (std::size_t c = 0; c < grid.columns.size(); ++c) {
      Json cell;
      cell["system"] = grid.rows[r];
      cell["evalset"] = grid.columns[c].evalset;
      cell["refset"] = grid.columns[c].refset;
      cell["metric"] = metric_label(grid.columns[c].refset);
      if (const auto& score = grid.cells[r][c]) {
        cell["bleu"] = bleu_to_json(*score);
      } else {
        cell["bleu"] = nullptr;
        cell["signature"] = grid.columns[c].signature;
      }
      cells.push_back(std::move(cell));
    }
  }
  Json j;
  j["rows"] = grid.rows;
  Json cols = Json::array();
  for (const auto& col : grid.columns) cols.push_back({{"evalset", col.evalset}, {"refset", col.refset}});
  j["columns"] = std::move(cols);
  j["cells"] = std::move(cells);
  j["signatures"] = grid.footnotes;
  return j;
}

double FluencySplit::percent_a() const { return total() ? 100.0 * static_cast<double>(prefer_a) / static_cast<double>(total()) : 0.0; }
double FluencySplit::percent_b() const { return total() ? 100.0 * static_cast<double>(prefer_b) / static_cast<double>(total()) : 0.0; }
double FluencySplit::percent_equal() const { return total() ? 100.0 * static_cast<double>(equal) / static_cast<double>(total()) : 0.0; }

FluencySplit fluency_split(std::span<const RatingRecord> ratings) {
  FluencySplit split;
  for (const auto& r : ratings) {
    if (r.kind != RatingKind::kFluency || !r.preference) continue;
    switch (*r.preference) {
      case Preference::kA: ++split.prefer_a; break;
      case Preference::kB: ++split.prefer_b; break;
      case Preference::kEqual: ++split.equal; break;
    }
  }
  return split;
}

H2HSummary head_to_head(const H2HInputs& in, const EvalSet& evalset, const BleuConfig& cfg,
                        const SignificanceConfig& sig, int threads) {
  evalset.validate();
  if (in.hyps_a.size() != evalset.size() || in.hyps_b.size() != evalset.size()) {
    throw AlignmentError("systems '" + in.name_a + "' (" + std::to_string(in.hyps_a.size()) + ") and '" + in.name_b +
                         "' (" + std::to_string(in.hyps_b.size()) + ") must both match eval set '" + evalset.name +
                         "' (" + std::to_string(evalset.size()) + " segments)");
  }
  H2HSummary out;
  out.system_a = in.name_a;
  out.system_b = in.name_b;
  out.evalset = evalset.name;

  const std::vector<std::string> names = in.refsets.empty() ? evalset.reference_names() : in.refsets;
  for (const auto& name : names) {
    const auto& ref = evalset.reference(name);
    BleuConfig ref_cfg = cfg;
    ref_cfg.test_set = evalset.name + "/" + ref.name;
    const std::vector<std::vector<std::string>> refs{reference_texts(ref)};
    const auto stats_a = segment_stats(in.hyps_a, refs, cfg.tokenizer, threads);
    const auto stats_b = segment_stats(in.hyps_b, refs, cfg.tokenizer, threads);
    RefsetComparison cmp;
    cmp.refset = ref.name;
    BleuStats sum_a, sum_b;
    for (const auto& s : stats_a) sum_a += s;
    for (const auto& s : stats_b) sum_b += s;
    cmp.a = score_from_stats(sum_a);
    cmp.b = score_from_stats(sum_b);
    cmp.a.signature = cmp.b.signature = bleu_signature(ref_cfg, 1);
    cmp.significance = approx_randomization(stats_a, stats_b, sig.trials, sig.seed, threads);
    out.refsets.push_back(std::move(cmp));
  }

  std::vector<double> quality_a;
  std::vector<double> quality_b;
  bool any_fluency = false;
  for (const auto& r : in.ratings) {
    if (r.item_id >= evalset.size()) {
      throw ValidationError("rating refers to item " + std::to_string(r.item_id) + " but eval set '" + evalset.name +
                            "' has " + std::to_string(evalset.size()) + " segments");
    }
    if (r.kind == RatingKind::kQuality) {
      if (r.system == in.name_a) {
        quality_a.push_back(*r.quality_score);
      } else if (r.system == in.name_b) {
        quality_b.push_back(*r.quality_score);
      } else {
        throw ValidationError("quality rating for unknown system '" + r.system + "' (item " +
                              std::to_string(r.item_id) + ")");
      }
    } else {
      any_fluency = true;
    }
  }
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  if (!quality_a.empty()) out.quality_a = mean(quality_a);
  if (!quality_b.empty()) out.quality_b = mean(quality_b);
  if (!quality_a.empty() && !quality_b.empty()) out.quality_test = wilcoxon_rank_sum(quality_a, quality_b);
  if (any_fluency) out.fluency = fluency_split(in.ratings);
  return out;
}

std::string render_h2h_text(const H2HSummary& s) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"", s.system_a, s.system_b});
  for (const auto& cmp : s.refsets) {
    rows.push_back({metric_label(cmp.refset) + " (" + cmp.refset + ")", fmt::format("{:.1f}", cmp.a.score),
                    fmt::format("{:.1f}", cmp.b.score)});
  }
  if (s.quality_a || s.quality_b) {
    rows.push_back({"human quality", s.quality_a ? fmt::format("{:.2f}", *s.quality_a) : "—",
                    s.quality_b ? fmt::format("{:.2f}", *s.quality_b) : "—"});
  }
  if (s.fluency) {
    rows.push_back({"human fluency (preferred)", fmt::format("{:.1f}%", s.fluency->percent_a()),
                    fmt::format("{:.1f}%", s.fluency->percent_b())});
    rows.push_back({"human fluency (equal)", fmt::format("{:.1f}%", s.fluency->percent_equal()), ""});
  }
  std::string out = "Eval set: " + s.evalset + "\n" + render_table(rows);
  out += "\nSignificance:\n";
  for (const auto& cmp : s.refsets) {
    out += "  " + metric_label(cmp.refset) + " (" + cmp.refset + "): " + format_significance_line(cmp.significance) + "\n";
  }
  if (s.quality_test) out += "  human quality: " + format_significance_line(*s.quality_test) + "\n";
  if (!s.refsets.empty()) {
    out += "\nSignatures:\n";
    for (const auto& cmp : s.refsets) out += "  " + cmp.a.signature + "\n";
  }
  return out;
}

Json significance_to_json(const SignificanceReport& r) {
  Json j;
  j["test"] = std::string(test_name(r.test));
  j["observed_delta"] = r.observed_delta;
  j["p_value"] = r.p_value;
  if (r.test == SignificanceTest::kApproxRandomization) {
    j["trials"] = r.trials;
    j["rng_seed"] = r.rng_seed;
    j["extreme_count"] = r.extreme_count;
    j["at_floor"] = r.at_floor;
    j["normal_approx_p"] = r.normal_tail_p;
  } else {
    j["z_statistic"] = r.z_statistic;
    j["exact"] = r.exact;
    j["degenerate"] = r.degenerate;
  }
  return j;
}

Json h2h_to_json(const H2HSummary& s) {
  Json j;
  j["system_a"] = s.system_a;
  j["system_b"] = s.system_b;
  j["evalset"] = s.evalset;
  Json refs = Json::array();
  for (const auto& cmp : s.refsets) {
    Json r;
    r["refset"] = cmp.refset;
    r["metric"] = metric_label(cmp.refset);
    r["a"] = bleu_to_json(cmp.a);
    r["b"] = bleu_to_json(cmp.b);
    r["delta"] = cmp.a.score - cmp.b.score;
    r["significance"] = significance_to_json(cmp.significance);
    refs.push_back(std::move(r));
  }
  j["refsets"] = std::move(refs);
  j["quality_a"] = s.quality_a ? Json(*s.quality_a) : Json(nullptr);
  j["quality_b"] = s.quality_b ? Json(*s.quality_b) : Json(nullptr);
  j["quality_test"] = s.quality_test ? significance_to_json(*s.quality_test) : Json(nullptr);
  if (s.fluency) {
    j["fluency"] = {{"prefer_a", s.fluency->prefer_a},     {"prefer_b", s.fluency->prefer_b},
                    {"equal", s.fluency->equal},           {"percent_a", s.fluency->percent_a()},
                    {"percent_b", s.fluency->percent_b()}, {"percent_equal", s.fluency->percent_equal()}};
  } else {
    j["fluency"] = nullptr;
  }
  return j;
}

}  // namespace paratune
