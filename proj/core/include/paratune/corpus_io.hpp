#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace paratune {

// Which side of a translation pair was originally authored.
enum class Origin { kSourceOriginal, kTargetOriginal, kUnknown };

std::string_view origin_name(Origin origin);  // "source-original" ...
Origin parse_origin(std::string_view name);   // throws ValidationError
Origin flip(Origin origin);

// One line of a corpus. Text never contains '\n'; ids are dense 0..N-1.
struct Segment {
  std::size_t id = 0;
  std::string text;
  Origin origin = Origin::kUnknown;

  bool operator==(const Segment&) const = default;
};

using Corpus = std::vector<Segment>;

Corpus make_corpus(const std::vector<std::string>& lines, Origin origin = Origin::kUnknown);
std::vector<std::string> texts(const Corpus& corpus);

// Splits LF-terminated UTF-8 text into segments. A final line without '\n'
// still counts; a trailing '\n' never produces an extra empty segment. Blank
// interior lines are kept as empty segments so parallel files stay aligned.
// A '\r' immediately before '\n' is dropped (CRLF input); any other '\r' is
// rejected. Invalid UTF-8 raises DecodeError naming the 1-based line.
Corpus parse_plaintext(std::string_view content, Origin origin = Origin::kUnknown,
                       std::string_view source_name = "<memory>");
Corpus load_plaintext(const std::filesystem::path& path, Origin origin = Origin::kUnknown);

void write_plaintext(std::ostream& out, const Corpus& corpus);
void save_plaintext(const std::filesystem::path& path, const Corpus& corpus);

std::string read_file(const std::filesystem::path& path);  // throws ValidationError if unreadable

// Parallel source/target corpora.
struct Bitext {
  Corpus source;
  Corpus target;

  bool operator==(const Bitext&) const = default;
};

// Exchanges source and target and flips every origin tag.
Bitext swap_direction(const Bitext& bitext);

struct ReferenceSet {
  std::string name;
  Corpus segments;

  bool operator==(const ReferenceSet&) const = default;
};

// A test set with one or more named reference translations, kept in the
// order they were declared (WMT, AR, WMT.p, AR.p, ...).
struct EvalSet {
  std::string name;
  Corpus sources;
  std::vector<ReferenceSet> reference_sets;

  std::size_t size() const { return sources.size(); }
  const ReferenceSet* find_reference(std::string_view ref_name) const;
  const ReferenceSet& reference(std::string_view ref_name) const;  // throws ConfigError
  std::vector<std::string> reference_names() const;

  // Throws ValidationError/AlignmentError when an invariant is broken.
  void validate() const;

  bool operator==(const EvalSet&) const = default;
};

// Swaps an evaluation set that has exactly one reference: the reference
// becomes the source and the old source becomes the reference (keeping the
// reference-set name). Origin tags are flipped.
EvalSet swap_direction(const EvalSet& set);

// Concatenates a forward-translated set with a reverse set whose direction has
// already been swapped. Forward segments are tagged source-original, reverse
// ones target-original, ids are renumbered. The result keeps the forward name.
EvalSet assemble_joint(const EvalSet& forward, const EvalSet& reverse_swapped);

// Keeps the segments whose source carries `origin`, filtering every reference
// set in lockstep and renumbering ids.
EvalSet filter_by_origin(const EvalSet& set, Origin origin);

// JSON manifest:
//   {"name": "...", "source": "src.txt", "origin": "source-original",
//    "origins": "tags.txt", "references": {"WMT": "ref.txt", ...}}
// Relative paths resolve against the manifest's directory. "origin" is a
// single tag for all segments; "origins" (one tag per line) overrides it.
EvalSet load_evalset_manifest(const std::filesystem::path& path);

// Writes <dir>/source.txt, <dir>/origins.txt, <dir>/ref.<name>.txt and
// <dir>/manifest.json. Returns the manifest path.
std::filesystem::path save_evalset(const std::filesystem::path& dir, const EvalSet& set);

// Ratings ---------------------------------------------------------------

enum class RatingKind { kQuality, kFluency };
enum class Preference { kA, kB, kEqual };

struct RatingRecord {
  std::size_t item_id = 0;
  RatingKind kind = RatingKind::kQuality;
  std::optional<int> quality_score;     // 0..6, quality only
  std::optional<Preference> preference;  // fluency only
  std::string system;                    // quality only

  bool operator==(const RatingRecord&) const = default;
};

// TSV: header "item_id\tkind\tsystem_or_preference\tscore" (optional), then
//   17\tquality\tsysA\t5
//   17\tfluency\tequal
std::vector<RatingRecord> parse_ratings(std::string_view content, std::string_view source_name = "<memory>");
std::vector<RatingRecord> load_ratings(const std::filesystem::path& path);

// One number per line; blank lines are skipped.
std::vector<double> load_numbers(const std::filesystem::path& path);

}  // namespace paratune
