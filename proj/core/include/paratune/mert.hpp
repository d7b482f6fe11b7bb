#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "paratune/bleu.hpp"
#include "paratune/nbest.hpp"

namespace paratune {

// Score of one hypothesis along w + gamma * d: intercept + gamma * slope.
struct ScoreLine {
  double slope = 0.0;      // d . features
  double intercept = 0.0;  // w . features
  std::size_t hyp_index = 0;
};

// Upper envelope of a set of lines: winners[k] owns the open interval
// (breakpoints[k-1], breakpoints[k]), with -inf/+inf at the ends.
struct Envelope {
  std::vector<double> breakpoints;  // strictly ascending
  std::vector<std::size_t> winners;  // breakpoints.size() + 1 entries

  std::size_t winner_at(double gamma) const;
};

// Exact upper envelope by a slope-sorted sweep. Lines that are never strictly
// on top are dropped; identical lines collapse onto the smallest hyp_index.
Envelope upper_envelope(std::vector<ScoreLine> lines);

// Sentence statistics of every n-best entry: table[segment][entry].
using StatsTable = std::vector<std::vector<BleuStats>>;

StatsTable precompute_stats(std::span<const NBestList> lists, std::span<const std::vector<std::string>> refsets,
                            const TokenizerConfig& tok, int threads = 1);

BleuStats selection_stats(const StatsTable& stats, std::span<const std::size_t> selection);

struct LineSearchResult {
  double gamma = 0.0;
  double bleu = 0.0;
  BleuStats stats;
};

// Exact maximization of corpus BLEU along w + gamma * d. Picks the midpoint
// of the best interval of the merged envelopes (finite end +/- 1 for an
// unbounded one); equal-BLEU intervals resolve to the smallest |gamma|.
LineSearchResult line_search(std::span<const NBestList> lists, const StatsTable& stats, const WeightVector& w,
                             std::span<const double> direction);

enum class DirectionScheme { kAxes, kAxesPlusRandom };

struct MertConfig {
  int num_restarts = 20;
  DirectionScheme directions = DirectionScheme::kAxesPlusRandom;
  int random_directions = 8;
  double convergence_epsilon = 1e-4;  // BLEU points
  int max_iterations = 30;
  std::uint64_t rng_seed = 0;
  int threads = 1;  // never changes results
};

struct TraceEntry {
  int restart = 0;
  int iteration = 0;       // 0 = starting point
  std::string direction;   // "init", "axis:3", "random:1"
  double gamma = 0.0;
  double bleu = 0.0;
};

struct MertResult {
  WeightVector weights;  // L1-normalized
  double bleu = 0.0;
  int best_restart = 0;
  std::vector<std::size_t> selection;
  std::vector<TraceEntry> trace;  // all restarts, in restart order
};

// Powell-style coordinate ascent with exact line searches and random restarts.
// Each iteration line-searches every direction from the current point and
// takes the best one if it gains more than the epsilon. Throws ConfigError for
// zero-width features.
MertResult optimize(std::span<const NBestList> lists, const StatsTable& stats, const MertConfig& cfg);

MertResult optimize(std::span<const NBestList> lists, std::span<const std::vector<std::string>> tuning_refs,
                    const TokenizerConfig& tok, const MertConfig& cfg);

}  // namespace paratune
