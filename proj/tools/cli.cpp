#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "paratune/error.hpp"
#include "paratune/mert.hpp"
#include "paratune/nbest.hpp"
#include "paratune/ngram_analysis.hpp"
#include "paratune/significance.hpp"
#include "paratune/tokenizer.hpp"
#include "paratune/unicode.hpp"
#include "paratune/version.hpp"

namespace paratune::cli {
namespace fs = std::filesystem;

namespace {

// Raised for command-line problems detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MetricFlags {
  std::string tok = "13a";
  bool lc = false;
  std::string lang = "ende";
  CLI::Option* tok_opt = nullptr;
  CLI::Option* lc_opt = nullptr;
  CLI::Option* lang_opt = nullptr;

  void add_to(CLI::App* cmd) {
    tok_opt = cmd->add_option("--tok", tok, "Tokenizer scheme")->check(CLI::IsMember({"13a", "none"}));
    lc_opt = cmd->add_flag("--lc", lc, "Lowercase before scoring (case.lc)");
    lang_opt = cmd->add_option("--lang", lang, "Language-pair slot of the signature");
  }

  // Flags win over `base` (typically a manifest's metric block).
  BleuConfig resolve(BleuConfig base = {}) const {
    if (tok_opt->count()) base.tokenizer.scheme = parse_scheme(tok);
    if (lc_opt->count()) base.tokenizer.lowercase = lc;
    if (lang_opt->count()) base.lang = lang;
    return base;
  }
};

Json metric_json(const BleuConfig& cfg) {
  return Json{{"tokenize", std::string(scheme_name(cfg.tokenizer.scheme))},
              {"lowercase", cfg.tokenizer.lowercase},
              {"lang", cfg.lang},
              {"smooth", "exp"}};
}

Json header(std::string_view command) {
  Json j;
  j["toolkit"] = std::string(kToolkitId);
  j["command"] = std::string(command);
  return j;
}

std::vector<std::string> load_lines(const std::string& path) { return texts(load_plaintext(path)); }

std::vector<std::vector<std::string>> load_refsets(const std::vector<std::string>& paths) {
  std::vector<std::vector<std::string>> refs;
  refs.reserve(paths.size());
  for (const auto& p : paths) refs.push_back(load_lines(p));
  return refs;
}

Json trace_json(const std::vector<TraceEntry>& trace) {
  Json arr = Json::array();
  for (const auto& t : trace) {
    arr.push_back({{"restart", t.restart},
                   {"iteration", t.iteration},
                   {"direction", t.direction},
                   {"gamma", t.gamma},
                   {"bleu", t.bleu}});
  }
  return arr;
}

std::pair<int, int> parse_orders(const std::string& text) {
  int lo = 0;
  int hi = 0;
  const auto dash = text.find('-');
  auto parse_int = [&](std::string_view s, int& v) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
  };
  const std::string_view sv(text);
  const bool ok = dash == std::string::npos ? parse_int(sv, lo) && (hi = lo, true)
                                            : parse_int(sv.substr(0, dash), lo) && parse_int(sv.substr(dash + 1), hi);
  if (!ok || lo < 1 || hi > kMaxNgramOrder || lo > hi) {
    throw UsageError("--orders must look like 1-4 or 2 with orders between 1 and 4, got '" + text + "'");
  }
  return {lo, hi};
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write file: " + path.string());
  f << content;
}

fs::path resolve_path(const fs::path& base, const std::string& p) {
  const fs::path path = fs::path(p).is_absolute() ? fs::path(p) : base / p;
  if (!fs::exists(path)) throw ValidationError("path does not exist: " + path.string());
  return path;
}

}  // namespace

RunManifest load_run_manifest(const fs::path& path) {
  if (!fs::exists(path)) throw ValidationError("path does not exist: " + path.string());
  Json doc;
  try {
    doc = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  const fs::path base = path.parent_path();
  RunManifest m;
  try {
    if (doc.contains("metric")) {
      const auto& metric = doc.at("metric");
      m.metric.tokenizer.scheme = parse_scheme(metric.value("tokenize", std::string("13a")));
      m.metric.tokenizer.lowercase = metric.value("lowercase", false);
      m.metric.lang = metric.value("lang", std::string("ende"));
    }
    if (doc.contains("seed")) m.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("trials")) m.trials = doc.at("trials").get<std::int64_t>();
    if (doc.contains("evalsets")) {
      for (const auto& [name, rel] : doc.at("evalsets").items()) {
        EvalSet set = load_evalset_manifest(resolve_path(base, rel.get<std::string>()));
        set.name = name;
        m.evalsets.push_back(std::move(set));
      }
    }
    if (doc.contains("systems")) {
      for (const auto& sys : doc.at("systems")) {
        SystemOutputs out;
        out.name = sys.at("name").get<std::string>();
        for (const auto& [evalset, rel] : sys.at("outputs").items()) {
          out.outputs.emplace_back(evalset, texts(load_plaintext(resolve_path(base, rel.get<std::string>()))));
        }
        m.systems.push_back(std::move(out));
      }
    }
    if (doc.contains("h2h")) {
      const auto& h = doc.at("h2h");
      H2HSpec spec;
      spec.system_a = h.at("a").get<std::string>();
      spec.system_b = h.at("b").get<std::string>();
      spec.evalset = h.at("evalset").get<std::string>();
      if (h.contains("refsets")) spec.refsets = h.at("refsets").get<std::vector<std::string>>();
      if (h.contains("ratings")) spec.ratings = resolve_path(base, h.at("ratings").get<std::string>());
      m.h2h = std::move(spec);
    }
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return m;
}

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"paratune: BLEU/BLEUp scoring, MERT reranking and significance testing", "paratune"};
  app.require_subcommand(1);
  app.fallthrough();
  app.failure_message(CLI::FailureMessage::help);
  app.set_version_flag("--version", std::string(kToolkitId));

  int threads = 1;
  std::string format = "human";
  app.add_option("--threads", threads, "Worker threads (never changes output)")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format for reports")->check(CLI::IsMember({"human", "machine"}));

  // tokenize
  auto* tokenize_cmd = app.add_subcommand("tokenize", "Tokenize stdin line by line");
  std::string tok_scheme = "13a";
  bool tok_lower = false;
  tokenize_cmd->add_option("--scheme", tok_scheme, "13a or none")->check(CLI::IsMember({"13a", "none"}));
  tokenize_cmd->add_flag("--lowercase", tok_lower, "Lowercase first");

  // score
  auto* score_cmd = app.add_subcommand("score", "Corpus BLEU of a hypothesis file");
  std::string score_hyp;
  std::vector<std::string> score_refs;
  std::string refset_name;
  MetricFlags score_metric;
  score_cmd->add_option("--hyp", score_hyp, "Hypothesis file")->required();
  score_cmd->add_option("--refs", score_refs, "Reference file(s), comma separated")->required()->delimiter(',');
  score_cmd->add_option("--refset-name", refset_name, "Test-set slot of the signature");
  score_metric.add_to(score_cmd);

  // rerank
  auto* rerank_cmd = app.add_subcommand("rerank", "Select the 1-best of each n-best list under a weight vector");
  std::string rerank_nbest;
  std::string rerank_weights;
  std::size_t rerank_features = 0;
  rerank_cmd->add_option("--nbest", rerank_nbest, "N-best file")->required();
  rerank_cmd->add_option("--weights", rerank_weights, "Weights file")->required();
  rerank_cmd->add_option("--features", rerank_features, "Expected feature count (default: from weights)");

  // mert
  auto* mert_cmd = app.add_subcommand("mert", "Tune reranking weights for corpus BLEU");
  std::string mert_nbest;
  std::vector<std::string> mert_refs;
  std::uint64_t mert_seed = 0;
  MertConfig mert_cfg;
  std::string weights_out;
  std::string trace_out;
  MetricFlags mert_metric;
  mert_cmd->add_option("--nbest", mert_nbest, "N-best file")->required();
  mert_cmd->add_option("--refs", mert_refs, "Tuning reference file(s)")->required()->delimiter(',');
  auto* mert_seed_opt = mert_cmd->add_option("--seed", mert_seed, "RNG seed (required)");
  mert_cmd->add_option("--restarts", mert_cfg.num_restarts, "Random restarts")->check(CLI::PositiveNumber);
  mert_cmd->add_option("--epsilon", mert_cfg.convergence_epsilon, "Minimum BLEU gain to accept a step")
      ->check(CLI::PositiveNumber);
  mert_cmd->add_option("--iterations", mert_cfg.max_iterations, "Maximum iterations per restart")
      ->check(CLI::NonNegativeNumber);
  mert_cmd->add_option("--random-directions", mert_cfg.random_directions, "Random directions per iteration")
      ->check(CLI::NonNegativeNumber);
  mert_cmd->add_option("--weights-out", weights_out, "Write the tuned weights here");
  mert_cmd->add_option("--trace-out", trace_out, "Write the machine-readable trace report here");
  mert_metric.add_to(mert_cmd);

  // sigtest
  auto* sig_cmd = app.add_subcommand("sigtest", "Significance tests");
  sig_cmd->require_subcommand(1);
  auto* sig_bleu = sig_cmd->add_subcommand("bleu", "Paired approximate randomization on corpus BLEU");
  std::string hyp_a;
  std::string hyp_b;
  std::vector<std::string> sig_refs;
  std::int64_t trials = 10000;
  std::uint64_t sig_seed = 0;
  MetricFlags sig_metric;
  sig_bleu->add_option("--hyp-a", hyp_a, "System A output")->required();
  sig_bleu->add_option("--hyp-b", hyp_b, "System B output")->required();
  sig_bleu->add_option("--refs", sig_refs, "Reference file(s)")->required()->delimiter(',');
  sig_bleu->add_option("--trials", trials, "Randomization trials")->check(CLI::PositiveNumber);
  auto* sig_seed_opt = sig_bleu->add_option("--seed", sig_seed, "RNG seed (required)");
  sig_metric.add_to(sig_bleu);
  auto* sig_ratings = sig_cmd->add_subcommand("ratings", "Wilcoxon rank-sum test on two rating lists");
  std::string ratings_a;
  std::string ratings_b;
  sig_ratings->add_option("--a", ratings_a, "Ratings of system A, one number per line")->required();
  sig_ratings->add_option("--b", ratings_b, "Ratings of system B, one number per line")->required();

  // ngram-diff
  auto* ngram_cmd = app.add_subcommand("ngram-diff", "Rank n-grams by clipped-match difference between two systems");
  std::string ng_a;
  std::string ng_b;
  std::vector<std::string> ng_refs;
  std::string orders = "1-4";
  std::size_t top = 50;
  bool per_order = false;
  MetricFlags ng_metric;
  ngram_cmd->add_option("--hyp-a", ng_a, "System A output")->required();
  ngram_cmd->add_option("--hyp-b", ng_b, "System B output")->required();
  ngram_cmd->add_option("--refs", ng_refs, "Reference file(s)")->required()->delimiter(',');
  ngram_cmd->add_option("--orders", orders, "Order range, e.g. 1-4");
  ngram_cmd->add_option("--top", top, "Entries per tail");
  ngram_cmd->add_flag("--per-order", per_order, "Report tails separately for each order");
  ng_metric.add_to(ngram_cmd);

  // report
  auto* report_cmd = app.add_subcommand("report", "Render comparison tables from a run manifest");
  report_cmd->require_subcommand(1);
  auto* grid_cmd = report_cmd->add_subcommand("grid", "Systems x reference sets BLEU grid");
  auto* h2h_cmd = report_cmd->add_subcommand("h2h", "Head-to-head summary of two systems");
  std::string manifest_path;
  MetricFlags grid_metric;
  MetricFlags h2h_metric;
  std::optional<std::uint64_t> report_seed;
  std::optional<std::int64_t> report_trials;
  for (auto* cmd : {grid_cmd, h2h_cmd}) cmd->add_option("--manifest", manifest_path, "Run manifest (JSON)")->required();
  grid_metric.add_to(grid_cmd);
  h2h_metric.add_to(h2h_cmd);
  h2h_cmd->add_option("--seed", report_seed, "RNG seed (overrides the manifest)");
  h2h_cmd->add_option("--trials", report_trials, "Randomization trials (overrides the manifest)")
      ->check(CLI::PositiveNumber);

  // assemble
  auto* assemble_cmd = app.add_subcommand("assemble", "Join a forward test set with a swapped reverse one");
  std::string fwd_manifest;
  std::string rev_manifest;
  std::string out_dir;
  bool already_swapped = false;
  assemble_cmd->add_option("--forward", fwd_manifest, "Eval-set manifest of the forward direction")->required();
  assemble_cmd->add_option("--reverse", rev_manifest, "Eval-set manifest of the reverse direction")->required();
  assemble_cmd->add_option("--out", out_dir, "Output directory")->required();
  assemble_cmd->add_flag("--reverse-already-swapped", already_swapped,
                         "The reverse set already has source and target exchanged");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  const bool machine = format == "machine";
  try {
    if (*tokenize_cmd) {
      const TokenizerConfig cfg{parse_scheme(tok_scheme), tok_lower};
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (auto bad = unicode::find_invalid_utf8(line)) {
          throw DecodeError("stdin:" + std::to_string(line_no) + ": invalid UTF-8 at byte " + std::to_string(*bad + 1));
        }
        out << join_tokens(tokenize(line, cfg)) << '\n';
      }
      return kOk;
    }

    if (*score_cmd) {
      BleuConfig cfg = score_metric.resolve();
      cfg.test_set = refset_name;
      const auto hyps = load_lines(score_hyp);
      const auto refs = load_refsets(score_refs);
      const BleuScore score = corpus_bleu(hyps, refs, cfg, threads);
      if (machine) {
        Json j = header("score");
        j["config"] = {{"hyp", score_hyp}, {"refs", score_refs}, {"refset_name", refset_name},
                       {"metric", metric_json(cfg)}};
        j["bleu"] = bleu_to_json(score);
        out << j.dump(2) << '\n';
      } else {
        out << format_bleu_line(score) << '\n';
        if (score.empty_hypothesis) err << "warning: hypothesis corpus has no tokens; BLEU defined as 0\n";
      }
      return kOk;
    }

    if (*rerank_cmd) {
      const WeightVector w = load_weights(rerank_weights);
      const std::size_t expected = rerank_features ? rerank_features : w.size();
      if (expected != w.size()) {
        throw ValidationError("weights file has " + std::to_string(w.size()) + " values, --features says " +
                              std::to_string(expected));
      }
      const auto lists = load_nbest(rerank_nbest, expected);
      const auto selection = rerank(lists, w, threads);
      for (const auto& text : selected_texts(lists, selection)) out << text << '\n';
      return kOk;
    }

    if (*mert_cmd) {
      if (!mert_seed_opt->count()) {
        throw UsageError("mert requires an explicit --seed; runs are never seeded implicitly");
      }
      const BleuConfig metric = mert_metric.resolve();
      mert_cfg.rng_seed = mert_seed;
      mert_cfg.threads = threads;
      const auto lists = load_nbest(mert_nbest, 0);
      const auto refs = load_refsets(mert_refs);
      const MertResult result = optimize(lists, refs, metric.tokenizer, mert_cfg);

      BleuConfig sig_cfg = metric;
      Json j = header("mert");
      j["config"] = {{"nbest", mert_nbest},
                     {"refs", mert_refs},
                     {"seed", mert_cfg.rng_seed},
                     {"restarts", mert_cfg.num_restarts},
                     {"epsilon", mert_cfg.convergence_epsilon},
                     {"iterations", mert_cfg.max_iterations},
                     {"random_directions", mert_cfg.random_directions},
                     {"metric", metric_json(metric)}};
      j["signature"] = bleu_signature(sig_cfg, refs.size());
      j["bleu"] = result.bleu;
      j["best_restart"] = result.best_restart;
      j["weights"] = result.weights.weights;
      j["trace"] = trace_json(result.trace);
      if (!weights_out.empty()) write_text_file(weights_out, format_weights(result.weights));
      if (!trace_out.empty()) write_text_file(trace_out, j.dump(2) + "\n");
      if (machine) {
        out << j.dump(2) << '\n';
      } else {
        out << fmt::format("MERT seed = {}: best BLEU = {:.4f} (restart {}) {}\n", mert_cfg.rng_seed, result.bleu,
                           result.best_restart, bleu_signature(sig_cfg, refs.size()));
        for (const auto& t : result.trace) {
          out << fmt::format("  restart {} iteration {} {} gamma = {} BLEU = {:.4f}\n", t.restart, t.iteration,
                             t.direction, format_double(t.gamma), t.bleu);
        }
        out << "weights: " << format_weights(result.weights);
      }
      return kOk;
    }

    if (*sig_bleu) {
      if (!sig_seed_opt->count()) {
        throw UsageError("sigtest bleu requires an explicit --seed; runs are never seeded implicitly");
      }
      const BleuConfig cfg = sig_metric.resolve();
      const auto a = load_lines(hyp_a);
      const auto b = load_lines(hyp_b);
      const auto refs = load_refsets(sig_refs);
      if (a.size() != b.size()) {
        throw AlignmentError("--hyp-a has " + std::to_string(a.size()) + " lines, --hyp-b has " +
                             std::to_string(b.size()));
      }
      const auto stats_a = segment_stats(a, refs, cfg.tokenizer, threads);
      const auto stats_b = segment_stats(b, refs, cfg.tokenizer, threads);
      const SignificanceReport report = approx_randomization(stats_a, stats_b, trials, sig_seed, threads);
      BleuStats sum_a, sum_b;
      for (const auto& s : stats_a) sum_a += s;
      for (const auto& s : stats_b) sum_b += s;
      BleuScore score_a = score_from_stats(sum_a);
      BleuScore score_b = score_from_stats(sum_b);
      score_a.signature = score_b.signature = bleu_signature(cfg, refs.size());
      if (machine) {
        Json j = header("sigtest bleu");
        j["config"] = {{"hyp_a", hyp_a}, {"hyp_b", hyp_b}, {"refs", sig_refs}, {"trials", trials},
                       {"seed", sig_seed}, {"metric", metric_json(cfg)}};
        j["bleu_a"] = bleu_to_json(score_a);
        j["bleu_b"] = bleu_to_json(score_b);
        j["significance"] = significance_to_json(report);
        out << j.dump(2) << '\n';
      } else {
        out << fmt::format("BLEU A = {:.2f}, B = {:.2f}; {} [{}]\n", score_a.score, score_b.score,
                           format_significance_line(report), score_a.signature);
      }
      return kOk;
    }

    if (*sig_ratings) {
      const auto a = load_numbers(ratings_a);
      const auto b = load_numbers(ratings_b);
      const SignificanceReport report = wilcoxon_rank_sum(a, b);
      if (machine) {
        Json j = header("sigtest ratings");
        j["config"] = {{"a", ratings_a}, {"b", ratings_b}};
        j["n_a"] = a.size();
        j["n_b"] = b.size();
        j["significance"] = significance_to_json(report);
        out << j.dump(2) << '\n';
      } else {
        out << format_significance_line(report) << '\n';
      }
      return kOk;
    }

    if (*ngram_cmd) {
      const auto [lo, hi] = parse_orders(orders);
      const BleuConfig cfg = ng_metric.resolve();
      const auto a = load_lines(ng_a);
      const auto b = load_lines(ng_b);
      const auto refs = load_refsets(ng_refs);
      const NGramOptions opts{lo, hi, 1};
      const auto ranked = ngram_contributions(a, b, refs, cfg.tokenizer, opts, threads);
      std::vector<NGramDelta> rows;
      if (per_order) {
        for (int n = hi; n >= lo; --n) {
          std::vector<NGramDelta> of_order;
          for (const auto& d : ranked) {
            if (d.order == n) of_order.push_back(d);
          }
          const auto tails = delta_tails(of_order, top);
          rows.insert(rows.end(), tails.begin(), tails.end());
        }
      } else {
        rows = delta_tails(ranked, top);
      }
      if (machine) {
        Json j = header("ngram-diff");
        j["config"] = {{"hyp_a", ng_a}, {"hyp_b", ng_b}, {"refs", ng_refs}, {"orders", orders},
                       {"top", top}, {"per_order", per_order}, {"metric", metric_json(cfg)}};
        Json arr = Json::array();
        for (const auto& d : rows) {
          arr.push_back({{"order", d.order}, {"ngram", d.ngram}, {"matched_A", d.matched_a},
                         {"matched_B", d.matched_b}, {"delta", d.delta}});
        }
        j["ngrams"] = std::move(arr);
        out << j.dump(2) << '\n';
      } else {
        out << "order\tngram\tmatched_A\tmatched_B\tdelta\n";
        for (const auto& d : rows) {
          out << d.order << '\t' << d.ngram << '\t' << d.matched_a << '\t' << d.matched_b << '\t' << d.delta << '\n';
        }
      }
      return kOk;
    }

    if (*grid_cmd) {
      const RunManifest m = load_run_manifest(manifest_path);
      const BleuConfig cfg = grid_metric.resolve(m.metric);
      const ScoreGrid grid = build_grid(m.systems, m.evalsets, cfg, threads);
      if (machine) {
        Json j = header("report grid");
        j["config"] = {{"manifest", manifest_path}, {"metric", metric_json(cfg)}};
        j["grid"] = grid_to_json(grid);
        out << j.dump(2) << '\n';
      } else {
        out << render_grid_text(grid);
      }
      return kOk;
    }

    if (*h2h_cmd) {
      const RunManifest m = load_run_manifest(manifest_path);
      if (!m.h2h) throw ValidationError(manifest_path + ": no \"h2h\" block");
      const std::optional<std::uint64_t> seed = report_seed ? report_seed : m.seed;
      if (!seed) throw UsageError("report h2h requires a seed (--seed or \"seed\" in the manifest)");
      const SignificanceConfig sig{report_trials.value_or(m.trials.value_or(10000)), *seed};
      if (sig.trials < 1) throw ValidationError("trials must be positive");
      const BleuConfig cfg = h2h_metric.resolve(m.metric);

      const EvalSet* evalset = nullptr;
      for (const auto& set : m.evalsets) {
        if (set.name == m.h2h->evalset) evalset = &set;
      }
      if (!evalset) throw ValidationError("h2h eval set '" + m.h2h->evalset + "' is not declared in the manifest");
      auto outputs_of = [&](const std::string& name) -> const std::vector<std::string>& {
        for (const auto& sys : m.systems) {
          if (sys.name != name) continue;
          if (const auto* hyps = sys.find(evalset->name)) return *hyps;
        }
        throw ValidationError("system '" + name + "' has no output for eval set '" + evalset->name + "'");
      };
      H2HInputs inputs;
      inputs.name_a = m.h2h->system_a;
      inputs.hyps_a = outputs_of(inputs.name_a);
      inputs.name_b = m.h2h->system_b;
      inputs.hyps_b = outputs_of(inputs.name_b);
      inputs.refsets = m.h2h->refsets;
      if (m.h2h->ratings) inputs.ratings = load_ratings(*m.h2h->ratings);
      const H2HSummary summary = head_to_head(inputs, *evalset, cfg, sig, threads);
      if (machine) {
        Json j = header("report h2h");
        j["config"] = {{"manifest", manifest_path}, {"seed", sig.seed}, {"trials", sig.trials},
                       {"metric", metric_json(cfg)}};
        j["summary"] = h2h_to_json(summary);
        out << j.dump(2) << '\n';
      } else {
        out << render_h2h_text(summary);
      }
      return kOk;
    }

    if (*assemble_cmd) {
      const EvalSet forward = load_evalset_manifest(fwd_manifest);
      EvalSet reverse = load_evalset_manifest(rev_manifest);
      if (!already_swapped) reverse = swap_direction(reverse);
      const EvalSet joint = assemble_joint(forward, reverse);
      const fs::path manifest = save_evalset(out_dir, joint);
      if (machine) {
        Json j = header("assemble");
        j["config"] = {{"forward", fwd_manifest}, {"reverse", rev_manifest}, {"out", out_dir},
                       {"reverse_already_swapped", already_swapped}};
        j["segments"] = joint.size();
        j["source_original"] = forward.size();
        j["target_original"] = reverse.size();
        j["manifest"] = manifest.string();
        out << j.dump(2) << '\n';
      } else {
        out << fmt::format("joint set '{}': {} segments ({} source-original + {} target-original) -> {}\n",
                           joint.name, joint.size(), forward.size(), reverse.size(), manifest.string());
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
  err << app.help();
  return kUsageError;
}

}  // namespace paratune::cli
