#include "paratune/corpus_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "paratune/error.hpp"
#include "paratune/unicode.hpp"

namespace paratune {
namespace fs = std::filesystem;

std::string_view origin_name(Origin origin) {
  switch (origin) {
    case Origin::kSourceOriginal: return "source-original";
    case Origin::kTargetOriginal: return "target-original";
    case Origin::kUnknown: break;
  }
  return "unknown";
}

Origin parse_origin(std::string_view name) {
  if (name == "source-original") return Origin::kSourceOriginal;
  if (name == "target-original") return Origin::kTargetOriginal;
  if (name == "unknown") return Origin::kUnknown;
  throw ValidationError("unknown origin tag '" + std::string(name) + "'");
}

Origin flip(Origin origin) {
  switch (origin) {
    case Origin::kSourceOriginal: return Origin::kTargetOriginal;
    case Origin::kTargetOriginal: return Origin::kSourceOriginal;
    case Origin::kUnknown: break;
  }
  return Origin::kUnknown;
}

Corpus make_corpus(const std::vector<std::string>& lines, Origin origin) {
  Corpus corpus;
  corpus.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) corpus.push_back({i, lines[i], origin});
  return corpus;
}

std::vector<std::string> texts(const Corpus& corpus) {
  std::vector<std::string> out;
  out.reserve(corpus.size());
  for (const auto& seg : corpus) out.push_back(seg.text);
  return out;
}

Corpus parse_plaintext(std::string_view content, Origin origin, std::string_view source_name) {
  Corpus corpus;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(start, end - start);
    const std::size_t line_no = corpus.size() + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find('\r') != std::string_view::npos) {
      throw DecodeError(std::string(source_name) + ":" + std::to_string(line_no) +
                        ": carriage return inside a segment");
    }
    if (auto bad = unicode::find_invalid_utf8(line)) {
      throw DecodeError(std::string(source_name) + ":" + std::to_string(line_no) +
                        ": invalid UTF-8 at byte " + std::to_string(*bad + 1));
    }
    corpus.push_back({corpus.size(), std::string(line), origin});
    start = end + 1;
  }
  return corpus;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

Corpus load_plaintext(const fs::path& path, Origin origin) {
  return parse_plaintext(read_file(path), origin, path.string());
}

void write_plaintext(std::ostream& out, const Corpus& corpus) {
  for (const auto& seg : corpus) out << seg.text << '\n';
}

void save_plaintext(const fs::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path.string());
  write_plaintext(out, corpus);
}

namespace {

Corpus renumbered(Corpus corpus) {
  for (std::size_t i = 0; i < corpus.size(); ++i) corpus[i].id = i;
  return corpus;
}

Corpus flipped(const Corpus& corpus) {
  Corpus out = corpus;
  for (auto& seg : out) seg.origin = flip(seg.origin);
  return out;
}

void append_tagged(Corpus& dst, const Corpus& src, Origin origin) {
  for (const auto& seg : src) dst.push_back({dst.size(), seg.text, origin});
}

}  // namespace

Bitext swap_direction(const Bitext& bitext) {
  if (bitext.source.size() != bitext.target.size()) {
    throw AlignmentError("bitext sides differ in length: " + std::to_string(bitext.source.size()) + " vs " +
                         std::to_string(bitext.target.size()));
  }
  return {flipped(bitext.target), flipped(bitext.source)};
}

const ReferenceSet* EvalSet::find_reference(std::string_view ref_name) const {
  for (const auto& ref : reference_sets) {
    if (ref.name == ref_name) return &ref;
  }
  return nullptr;
}

const ReferenceSet& EvalSet::reference(std::string_view ref_name) const {
  if (const auto* ref = find_reference(ref_name)) return *ref;
  throw ConfigError("eval set '" + name + "' has no reference set '" + std::string(ref_name) + "'");
}

std::vector<std::string> EvalSet::reference_names() const {
  std::vector<std::string> names;
  for (const auto& ref : reference_sets) names.push_back(ref.name);
  return names;
}

void EvalSet::validate() const {
  if (reference_sets.empty()) throw ValidationError("eval set '" + name + "' has no reference set");
  for (std::size_t i = 0; i < reference_sets.size(); ++i) {
    const auto& ref = reference_sets[i];
    if (ref.segments.size() != sources.size()) {
      throw AlignmentError("eval set '" + name + "': reference set '" + ref.name + "' has " +
                           std::to_string(ref.segments.size()) + " segments, source has " +
                           std::to_string(sources.size()));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (reference_sets[j].name == ref.name) {
        throw ValidationError("eval set '" + name + "': duplicate reference set '" + ref.name + "'");
      }
    }
  }
}

EvalSet swap_direction(const EvalSet& set) {
  set.validate();
  if (set.reference_sets.size() != 1) {
    throw ConfigError("swapping eval set '" + set.name + "' needs exactly one reference set, found " +
                      std::to_string(set.reference_sets.size()));
  }
  const auto& ref = set.reference_sets.front();
  Bitext swapped = swap_direction(Bitext{set.sources, ref.segments});
  return {set.name, std::move(swapped.source), {{ref.name, std::move(swapped.target)}}};
}

EvalSet assemble_joint(const EvalSet& forward, const EvalSet& reverse_swapped) {
  forward.validate();
  reverse_swapped.validate();
  if (forward.reference_names() != reverse_swapped.reference_names()) {
    throw ConfigError("cannot join '" + forward.name + "' and '" + reverse_swapped.name +
                      "': reference-set names differ");
  }
  EvalSet joint;
  joint.name = forward.name;
  append_tagged(joint.sources, forward.sources, Origin::kSourceOriginal);
  append_tagged(joint.sources, reverse_swapped.sources, Origin::kTargetOriginal);
  for (std::size_t r = 0; r < forward.reference_sets.size(); ++r) {
    ReferenceSet ref{forward.reference_sets[r].name, {}};
    append_tagged(ref.segments, forward.reference_sets[r].segments, Origin::kSourceOriginal);
    append_tagged(ref.segments, reverse_swapped.reference_sets[r].segments, Origin::kTargetOriginal);
    joint.reference_sets.push_back(std::move(ref));
  }
  return joint;
}

EvalSet filter_by_origin(const EvalSet& set, Origin origin) {
  set.validate();
  EvalSet out;
  out.name = set.name;
  for (const auto& ref : set.reference_sets) out.reference_sets.push_back({ref.name, {}});
  for (std::size_t i = 0; i < set.sources.size(); ++i) {
    if (set.sources[i].origin != origin) continue;
    out.sources.push_back(set.sources[i]);
    for (std::size_t r = 0; r < set.reference_sets.size(); ++r) {
      out.reference_sets[r].segments.push_back(set.reference_sets[r].segments[i]);
    }
  }
  out.sources = renumbered(std::move(out.sources));
  for (auto& ref : out.reference_sets) ref.segments = renumbered(std::move(ref.segments));
  return out;
}

EvalSet load_evalset_manifest(const fs::path& path) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  const fs::path base = path.parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
  try {
    EvalSet set;
    set.name = doc.value("name", path.stem().string());
    const Origin origin = parse_origin(doc.value("origin", std::string("unknown")));
    set.sources = load_plaintext(resolve(doc.at("source").get<std::string>()), origin);
    if (doc.contains("origins")) {
      const Corpus tags = load_plaintext(resolve(doc.at("origins").get<std::string>()));
      if (tags.size() != set.sources.size()) {
        throw AlignmentError(path.string() + ": origins file length differs from source");
      }
      for (std::size_t i = 0; i < tags.size(); ++i) set.sources[i].origin = parse_origin(tags[i].text);
    }
    for (const auto& [ref_name, ref_path] : doc.at("references").items()) {
      Corpus segs = load_plaintext(resolve(ref_path.get<std::string>()));
      for (std::size_t i = 0; i < segs.size() && i < set.sources.size(); ++i) {
        segs[i].origin = set.sources[i].origin;
      }
      set.reference_sets.push_back({ref_name, std::move(segs)});
    }
    set.validate();
    return set;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

fs::path save_evalset(const fs::path& dir, const EvalSet& set) {
  set.validate();
  fs::create_directories(dir);
  save_plaintext(dir / "source.txt", set.sources);
  Corpus tags;
  for (const auto& seg : set.sources) tags.push_back({seg.id, std::string(origin_name(seg.origin)), seg.origin});
  save_plaintext(dir / "origins.txt", tags);
  nlohmann::ordered_json doc;
  doc["name"] = set.name;
  doc["source"] = "source.txt";
  doc["origins"] = "origins.txt";
  doc["references"] = nlohmann::ordered_json::object();
  for (const auto& ref : set.reference_sets) {
    const std::string file = "ref." + ref.name + ".txt";
    save_plaintext(dir / file, ref.segments);
    doc["references"][ref.name] = file;
  }
  const fs::path manifest = dir / "manifest.json";
  std::ofstream out(manifest, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + manifest.string());
  out << doc.dump(2) << '\n';
  return manifest;
}

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

template <typename T>
bool parse_integer(std::string_view text, T& value) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end && !text.empty();
}

}  // namespace

std::vector<RatingRecord> parse_ratings(std::string_view content, std::string_view source_name) {
  const Corpus lines = parse_plaintext(content, Origin::kUnknown, source_name);
  std::vector<RatingRecord> records;
  for (const auto& line : lines) {
    const std::size_t row = line.id + 1;
    auto fail = [&](const std::string& what) -> ValidationError {
      return ValidationError(std::string(source_name) + ": row " + std::to_string(row) + ": " + what);
    };
    if (line.text.empty()) continue;
    const auto fields = split_tabs(line.text);
    if (row == 1 && fields.front() == "item_id") continue;

    RatingRecord rec;
    if (!parse_integer(fields[0], rec.item_id)) throw fail("item_id is not a non-negative integer");
    if (fields.size() < 2) throw fail("missing kind column");
    if (fields[1] == "quality") {
      if (fields.size() != 4) throw fail("quality rows need 4 columns");
      rec.kind = RatingKind::kQuality;
      rec.system = std::string(fields[2]);
      if (rec.system.empty()) throw fail("empty system name");
      int score = 0;
      if (!parse_integer(fields[3], score)) throw fail("score is not an integer");
      if (score < 0 || score > 6) throw fail("quality score " + std::to_string(score) + " outside 0..6");
      rec.quality_score = score;
    } else if (fields[1] == "fluency") {
      if (fields.size() != 3 && !(fields.size() == 4 && fields[3].empty())) {
        throw fail("fluency rows need 3 columns");
      }
      rec.kind = RatingKind::kFluency;
      if (fields[2] == "A") {
        rec.preference = Preference::kA;
      } else if (fields[2] == "B") {
        rec.preference = Preference::kB;
      } else if (fields[2] == "equal") {
        rec.preference = Preference::kEqual;
      } else {
        throw fail("fluency preference must be A, B or equal");
      }
    } else {
      throw fail("unknown kind '" + std::string(fields[1]) + "'");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<RatingRecord> load_ratings(const fs::path& path) {
  return parse_ratings(read_file(path), path.string());
}

std::vector<double> load_numbers(const fs::path& path) {
  const Corpus lines = load_plaintext(path);
  std::vector<double> values;
  for (const auto& line : lines) {
    std::string_view text = line.text;
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    if (text.empty()) continue;
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ValidationError(path.string() + ":" + std::to_string(line.id + 1) + ": not a number");
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace paratune
