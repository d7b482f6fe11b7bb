#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "paratune/bleu.hpp"
#include "paratune/corpus_io.hpp"
#include "paratune/report.hpp"

namespace paratune::cli {

enum ExitCode : int { kOk = 0, kValidationError = 1, kUsageError = 2 };

struct H2HSpec {
  std::string system_a;
  std::string system_b;
  std::string evalset;
  std::vector<std::string> refsets;
  std::optional<std::filesystem::path> ratings;
};

// Everything a report run needs, loaded from one JSON file. Relative paths
// resolve against the manifest's directory and must exist at load time.
//
//   {"metric": {"tokenize": "13a", "lowercase": false, "lang": "ende"},
//    "seed": 7, "trials": 10000,
//    "evalsets": {"newstest2019": "evalsets/nt19.json"},
//    "systems": [{"name": "bitext", "outputs": {"newstest2019": "sys/bitext.txt"}}],
//    "h2h": {"a": "...", "b": "...", "evalset": "...", "refsets": ["WMT", "WMT.p"],
//            "ratings": "ratings.tsv"}}
struct RunManifest {
  BleuConfig metric;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::vector<EvalSet> evalsets;
  std::vector<SystemOutputs> systems;
  std::optional<H2HSpec> h2h;
};

RunManifest load_run_manifest(const std::filesystem::path& path);

// Runs one command line (args exclude the program name). Returns the exit
// status: 0 success, 1 validation error, 2 usage error.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace paratune::cli
