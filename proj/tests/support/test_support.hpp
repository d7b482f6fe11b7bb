#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "paratune/bleu.hpp"
#include "paratune/corpus_io.hpp"
#include "paratune/mert.hpp"
#include "paratune/nbest.hpp"

namespace paratune::testing {

inline std::filesystem::path data_dir() { return PARATUNE_TEST_DATA_DIR; }

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  return texts(load_plaintext(path));
}

// Same generator as oracle_common.lcg in scripts/.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_ >> 33;
  }
  double uniform() { return static_cast<double>(next()) / 2147483648.0; }  // [0, 1)
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  std::uint64_t state_;
};

inline double bleu_of(const BleuStats& s) { return score_from_stats(s).score; }

// Argmax over lines at gamma by direct evaluation; ties to the earlier line.
inline std::size_t brute_force_winner(const std::vector<ScoreLine>& lines, double gamma) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const double v = lines[i].intercept + gamma * lines[i].slope;
    const double b = lines[best].intercept + gamma * lines[best].slope;
    if (v > b) best = i;
  }
  return lines[best].hyp_index;
}

// Unit directions covering the sphere in 1..3 dimensions.
inline std::vector<std::vector<double>> angular_grid(std::size_t dims, int resolution) {
  std::vector<std::vector<double>> dirs;
  const double pi = std::acos(-1.0);
  if (dims == 1) return {{1.0}, {-1.0}};
  if (dims == 2) {
    for (int i = 0; i < 4 * resolution; ++i) {
      const double a = 2 * pi * (i + 0.5) / (4 * resolution);
      dirs.push_back({std::cos(a), std::sin(a)});
    }
    return dirs;
  }
  for (int i = 0; i < resolution; ++i) {
    const double theta = pi * (i + 0.5) / resolution;
    for (int j = 0; j < 2 * resolution; ++j) {
      const double phi = 2 * pi * (j + 0.5) / (2 * resolution);
      dirs.push_back({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
    }
  }
  return dirs;
}

// One direction inside every open cell cut out by the hyperplanes
// (f_i - f_j) . w = 0. In 2-D these are midpoints between critical angles; in
// 3-D every cell touches a vertex where two great circles meet, so the sectors
// around each vertex are sampled just off it.
inline std::vector<std::vector<double>> cell_directions(const std::vector<NBestList>& lists) {
  const std::size_t dims = feature_width(lists);
  std::vector<std::vector<double>> normals;
  for (const auto& list : lists) {
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
      for (std::size_t j = i + 1; j < list.entries.size(); ++j) {
        std::vector<double> n(dims);
        bool nonzero = false;
        for (std::size_t k = 0; k < dims; ++k) {
          n[k] = list.entries[i].features[k] - list.entries[j].features[k];
          nonzero |= n[k] != 0.0;
        }
        if (nonzero) normals.push_back(std::move(n));
      }
    }
  }
  const double pi = std::acos(-1.0);
  std::vector<std::vector<double>> dirs;
  auto sectors = [&](std::vector<double> angles, auto&& emit) {
    std::sort(angles.begin(), angles.end());
    for (std::size_t i = 0; i < angles.size(); ++i) {
      const double next = i + 1 < angles.size() ? angles[i + 1] : angles.front() + 2 * pi;
      emit(0.5 * (angles[i] + next));
    }
  };
  if (dims == 2) {
    std::vector<double> angles;
    for (const auto& n : normals) {
      const double a = std::atan2(n[0], -n[1]);
      angles.push_back(a);
      angles.push_back(a > 0 ? a - pi : a + pi);
    }
    if (!angles.empty()) sectors(angles, [&](double a) { dirs.push_back({std::cos(a), std::sin(a)}); });
  } else if (dims == 3) {
    auto cross = [](const std::vector<double>& a, const std::vector<double>& b) {
      return std::vector<double>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    };
    auto norm = [](const std::vector<double>& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); };
    auto dot3 = [](const std::vector<double>& a, const std::vector<double>& b) {
      return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    };
    for (std::size_t p = 0; p < normals.size(); ++p) {
      for (std::size_t q = p + 1; q < normals.size(); ++q) {
        auto v = cross(normals[p], normals[q]);
        const double len = norm(v);
        if (len < 1e-12 * norm(normals[p]) * norm(normals[q])) continue;
        for (double sign : {1.0, -1.0}) {
          std::vector<double> vv{sign * v[0] / len, sign * v[1] / len, sign * v[2] / len};
          auto e1 = cross(vv, normals[p]);
          const double l1 = norm(e1);
          for (auto& x : e1) x /= l1;
          const auto e2 = cross(vv, e1);
          std::vector<double> angles;
          for (const auto& c : normals) {
            if (std::abs(dot3(c, vv)) > 1e-9 * norm(c)) continue;
            const auto t = cross(c, vv);
            const double a = std::atan2(dot3(t, e2), dot3(t, e1));
            angles.push_back(a);
            angles.push_back(a > 0 ? a - pi : a + pi);
          }
          sectors(angles, [&](double a) {
            const double eps = 1e-7;
            dirs.push_back({vv[0] + eps * (std::cos(a) * e1[0] + std::sin(a) * e2[0]),
                            vv[1] + eps * (std::cos(a) * e1[1] + std::sin(a) * e2[1]),
                            vv[2] + eps * (std::cos(a) * e1[2] + std::sin(a) * e2[2])});
          });
        }
      }
    }
  }
  return dirs;
}

// Best corpus BLEU over every selection reachable by a grid direction or a
// cell direction.
inline double angular_grid_best(const std::vector<NBestList>& lists, const StatsTable& stats, int resolution) {
  double best = -1.0;
  auto visit = [&](const std::vector<double>& d) {
    const auto sel = rerank(lists, WeightVector{d, Normalization::kNone});
    best = std::max(best, bleu_of(selection_stats(stats, sel)));
  };
  for (const auto& d : angular_grid(feature_width(lists), resolution)) visit(d);
  for (const auto& d : cell_directions(lists)) visit(d);
  return best;
}

struct TinyInstance {
  std::vector<NBestList> lists;
  std::vector<std::vector<std::string>> refs;
};

// <= 5 segments, <= 4 hypotheses, <= 3 features; words from a small vocabulary
// so that hypotheses overlap the reference in varying amounts.
inline TinyInstance random_tiny_instance(std::uint64_t seed) {
  static const char* kVocab[] = {"der", "die", "das", "Haus", "ist", "klein", "groß", "und", "alt", "neu"};
  Lcg rng(seed);
  auto sentence = [&](std::size_t len) {
    std::string s;
    for (std::size_t i = 0; i < len; ++i) {
      if (i) s += ' ';
      s += kVocab[rng.below(10)];
    }
    return s;
  };
  TinyInstance inst;
  const std::size_t segments = 1 + rng.below(5);
  const std::size_t width = 1 + rng.below(3);
  inst.refs.emplace_back();
  for (std::size_t s = 0; s < segments; ++s) {
    inst.refs[0].push_back(sentence(3 + rng.below(5)));
    NBestList list{s, {}};
    const std::size_t n = 1 + rng.below(4);
    for (std::size_t k = 0; k < n; ++k) {
      NBestEntry e;
      e.segment_id = s;
      e.rank = k;
      e.text = sentence(2 + rng.below(6));
      for (std::size_t f = 0; f < width; ++f) e.features.push_back(std::round((rng.uniform() * 2 - 1) * 100) / 100);
      list.entries.push_back(std::move(e));
    }
    inst.lists.push_back(std::move(list));
  }
  return inst;
}

// Within-restart BLEU never decreases along the trace.
inline std::size_t monotonicity_violations(const std::vector<TraceEntry>& trace) {
  std::size_t violations = 0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].restart == trace[i - 1].restart && trace[i].bleu < trace[i - 1].bleu) ++violations;
  }
  return violations;
}

}  // namespace paratune::testing
