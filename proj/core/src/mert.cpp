#include "paratune/mert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "paratune/error.hpp"
#include "paratune/parallel.hpp"

namespace paratune {

std::size_t Envelope::winner_at(double gamma) const {
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), gamma);
  return winners[static_cast<std::size_t>(it - breakpoints.begin())];
}

Envelope upper_envelope(std::vector<ScoreLine> lines) {
  if (lines.empty()) throw ContractError("upper_envelope needs at least one line");
  std::sort(lines.begin(), lines.end(), [](const ScoreLine& a, const ScoreLine& b) {
    if (a.slope != b.slope) return a.slope < b.slope;
    if (a.intercept != b.intercept) return a.intercept > b.intercept;
    return a.hyp_index < b.hyp_index;
  });

  struct Piece {
    ScoreLine line;
    double start;
  };
  std::vector<Piece> hull;
  hull.reserve(lines.size());
  for (const auto& line : lines) {
    if (!hull.empty() && hull.back().line.slope == line.slope) continue;
    double start = -std::numeric_limits<double>::infinity();
    while (!hull.empty()) {
      const auto& top = hull.back();
      start = (top.line.intercept - line.intercept) / (line.slope - top.line.slope);
      if (start <= top.start) {
        hull.pop_back();
        start = -std::numeric_limits<double>::infinity();
      } else {
        break;
      }
    }
    hull.push_back({line, start});
  }

  Envelope env;
  env.winners.reserve(hull.size());
  for (std::size_t k = 0; k < hull.size(); ++k) {
    if (k) env.breakpoints.push_back(hull[k].start);
    env.winners.push_back(hull[k].line.hyp_index);
  }
  return env;
}

StatsTable precompute_stats(std::span<const NBestList> lists, std::span<const std::vector<std::string>> refsets,
                            const TokenizerConfig& tok, int threads) {
  const auto refs = prepare_references(refsets, tok, threads);
  if (refs.size() != lists.size()) {
    throw AlignmentError("n-best file has " + std::to_string(lists.size()) + " segments, references have " +
                         std::to_string(refs.size()));
  }
  StatsTable table(lists.size());
  parallel_for(lists.size(), threads, [&](std::size_t i) {
    auto& row = table[i];
    row.reserve(lists[i].entries.size());
    for (const auto& entry : lists[i].entries) row.push_back(sentence_stats(tokenize(entry.text, tok), refs[i]));
  });
  return table;
}

BleuStats selection_stats(const StatsTable& stats, std::span<const std::size_t> selection) {
  if (stats.size() != selection.size()) throw ContractError("selection size does not match the stats table");
  BleuStats total;
  for (std::size_t i = 0; i < stats.size(); ++i) total += stats[i].at(selection[i]);
  return total;
}

namespace {

constexpr double kBreakpointTolerance = 1e-9;

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return sum;
}

struct Event {
  double gamma;
  std::size_t segment;
  std::size_t from;
  std::size_t to;
};

}  // namespace

LineSearchResult line_search(std::span<const NBestList> lists, const StatsTable& stats, const WeightVector& w,
                             std::span<const double> direction) {
  if (direction.size() != w.size()) throw ContractError("direction width does not match weight width");
  if (stats.size() != lists.size()) throw ContractError("stats table does not match the n-best lists");

  std::vector<Event> events;
  BleuStats current;
  std::vector<ScoreLine> lines;
  for (std::size_t s = 0; s < lists.size(); ++s) {
    const auto& entries = lists[s].entries;
    if (entries.empty()) throw DataError("segment " + std::to_string(lists[s].segment_id) + " has an empty n-best list");
    lines.clear();
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (entries[j].features.size() != w.size()) throw ContractError("feature width does not match weight width");
      lines.push_back({dot(direction, entries[j].features), dot(w.weights, entries[j].features), j});
    }
    const Envelope env = upper_envelope(lines);
    current += stats[s].at(env.winners.front());
    for (std::size_t k = 0; k < env.breakpoints.size(); ++k) {
      events.push_back({env.breakpoints[k], s, env.winners[k], env.winners[k + 1]});
    }
  }
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.gamma < b.gamma; });

  LineSearchResult best;
  bool have_best = false;
  auto consider = [&](double gamma, const BleuStats& st) {
    const double bleu = score_from_stats(st).score;
    if (!have_best || bleu > best.bleu || (bleu == best.bleu && std::fabs(gamma) < std::fabs(best.gamma))) {
      best = {gamma, bleu, st};
      have_best = true;
    }
  };

  if (events.empty()) {
    consider(0.0, current);
    return best;
  }
  consider(events.front().gamma - 1.0, current);
  std::size_t i = 0;
  while (i < events.size()) {
    // Breakpoints that agree up to rounding are one breakpoint: the sliver
    // between them cannot be reproduced when the weights are re-scored.
    const double at = events[i].gamma;
    const double tolerance = kBreakpointTolerance * std::max(1.0, std::fabs(at));
    double last = at;
    for (; i < events.size() && events[i].gamma - at <= tolerance; ++i) {
      const auto& e = events[i];
      current -= stats[e.segment][e.from];
      current += stats[e.segment][e.to];
      last = e.gamma;
    }
    const double gamma = i < events.size() ? 0.5 * (last + events[i].gamma) : last + 1.0;
    consider(gamma, current);
  }
  return best;
}

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool all_zero(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

struct RestartResult {
  WeightVector weights;
  double bleu = 0.0;
  std::vector<std::size_t> selection;
  std::vector<TraceEntry> trace;
};

double selection_bleu(std::span<const NBestList> lists, const StatsTable& stats, const WeightVector& w,
                      std::vector<std::size_t>& selection) {
  selection = rerank(lists, w);
  return score_from_stats(selection_stats(stats, selection)).score;
}

RestartResult run_restart(std::span<const NBestList> lists, const StatsTable& stats, const MertConfig& cfg,
                          std::size_t width, int restart) {
  const auto seed = cfg.rng_seed;
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xFFFFFFFFu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);

  RestartResult out;
  out.weights.weights.assign(width, 1.0 / static_cast<double>(width));
  if (restart > 0) {
    do {
      for (double& v : out.weights.weights) v = 2.0 * unit_uniform(rng) - 1.0;
    } while (all_zero(out.weights.weights));
  }
  out.bleu = selection_bleu(lists, stats, out.weights, out.selection);
  out.trace.push_back({restart, 0, "init", 0.0, out.bleu});

  const int random_count = cfg.directions == DirectionScheme::kAxesPlusRandom ? cfg.random_directions : 0;
  std::vector<std::vector<double>> directions;
  std::vector<std::string> labels;
  for (int iteration = 1; iteration <= cfg.max_iterations; ++iteration) {
    directions.clear();
    labels.clear();
    for (std::size_t k = 0; k < width; ++k) {
      std::vector<double> d(width, 0.0);
      d[k] = 1.0;
      directions.push_back(std::move(d));
      labels.push_back("axis:" + std::to_string(k));
    }
    for (int r = 0; r < random_count; ++r) {
      std::vector<double> d(width);
      do {
        for (double& v : d) v = 2.0 * unit_uniform(rng) - 1.0;
      } while (all_zero(d));
      directions.push_back(std::move(d));
      labels.push_back("random:" + std::to_string(r));
    }

    std::size_t best_dir = 0;
    LineSearchResult best;
    for (std::size_t k = 0; k < directions.size(); ++k) {
      const auto ls = line_search(lists, stats, out.weights, directions[k]);
      if (k == 0 || ls.bleu > best.bleu) {
        best = ls;
        best_dir = k;
      }
    }
    if (!(best.bleu > out.bleu + cfg.convergence_epsilon)) break;

    WeightVector candidate = out.weights;
    for (std::size_t k = 0; k < width; ++k) candidate.weights[k] += best.gamma * directions[best_dir][k];
    if (all_zero(candidate.weights)) break;
    std::vector<std::size_t> selection;
    const double bleu = selection_bleu(lists, stats, candidate, selection);
    // The envelope value is exact in theory; re-scoring the actual argmax keeps
    // the trace honest if rounding moved a breakpoint onto the new weights.
    if (!(bleu > out.bleu + cfg.convergence_epsilon)) break;
    out.weights = std::move(candidate);
    out.bleu = bleu;
    out.selection = std::move(selection);
    out.trace.push_back({restart, iteration, labels[best_dir], best.gamma, bleu});
  }
  return out;
}

}  // namespace

MertResult optimize(std::span<const NBestList> lists, const StatsTable& stats, const MertConfig& cfg) {
  const std::size_t width = feature_width(lists);
  if (width == 0) throw ConfigError("MERT needs at least one feature per n-best entry");
  if (lists.empty()) throw DataError("MERT needs at least one segment");
  if (cfg.num_restarts < 1) throw ConfigError("num_restarts must be at least 1");
  if (cfg.max_iterations < 0) throw ConfigError("max_iterations must be non-negative");
  if (!(cfg.convergence_epsilon > 0.0)) throw ConfigError("convergence_epsilon must be positive");
  if (cfg.random_directions < 0) throw ConfigError("random_directions must be non-negative");
  if (stats.size() != lists.size()) throw ContractError("stats table does not match the n-best lists");
  for (const auto& list : lists) {
    if (list.entries.empty()) throw DataError("segment " + std::to_string(list.segment_id) + " has an empty n-best list");
    for (const auto& e : list.entries) {
      if (e.features.size() != width) throw ConfigError("inconsistent feature widths in n-best lists");
    }
  }

  std::vector<RestartResult> restarts(static_cast<std::size_t>(cfg.num_restarts));
  parallel_for(restarts.size(), cfg.threads, [&](std::size_t r) {
    restarts[r] = run_restart(lists, stats, cfg, width, static_cast<int>(r));
  });

  MertResult result;
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts.size(); ++r) {
    if (restarts[r].bleu > restarts[best].bleu) best = r;
  }
  for (const auto& r : restarts) result.trace.insert(result.trace.end(), r.trace.begin(), r.trace.end());
  result.best_restart = static_cast<int>(best);
  result.weights = l1_normalized(restarts[best].weights);
  result.selection = rerank(lists, result.weights);
  result.bleu = score_from_stats(selection_stats(stats, result.selection)).score;
  return result;
}

MertResult optimize(std::span<const NBestList> lists, std::span<const std::vector<std::string>> tuning_refs,
                    const TokenizerConfig& tok, const MertConfig& cfg) {
  return optimize(lists, precompute_stats(lists, tuning_refs, tok, cfg.threads), cfg);
}

}  // namespace paratune
