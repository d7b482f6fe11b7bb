#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "paratune/bleu.hpp"
#include "paratune/mert.hpp"
#include "paratune/nbest.hpp"
#include "paratune/significance.hpp"
#include "paratune/tokenizer.hpp"

namespace {

const std::filesystem::path kData = PARATUNE_BENCH_DATA_DIR;

std::vector<std::string> lines_of(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

void BM_Tokenize13a(benchmark::State& state) {
  const auto corpus = lines_of(kData / "tokenizer" / "corpus.txt");
  std::size_t bytes = 0;
  for (const auto& l : corpus) bytes += l.size();
  for (auto _ : state) {
    for (const auto& l : corpus) benchmark::DoNotOptimize(paratune::tokenize(l));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes));
}
BENCHMARK(BM_Tokenize13a)->Unit(benchmark::kMillisecond);

void BM_CorpusBleu(benchmark::State& state) {
  const auto hyp = lines_of(kData / "bleu" / "hyp.de");
  std::vector<std::vector<std::string>> refs;
  for (const char* name : {"WMT", "AR", "WMT.p", "AR.p"}) {
    refs.push_back(lines_of(kData / "bleu" / (std::string("ref.") + name + ".de")));
  }
  refs.resize(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(paratune::corpus_bleu(hyp, refs, {}));
}
BENCHMARK(BM_CorpusBleu)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

struct Tuning {
  std::vector<paratune::NBestList> lists;
  paratune::StatsTable stats;
};

const Tuning& divergence_tuning() {
  static const Tuning t = [] {
    Tuning out;
    out.lists = paratune::load_nbest(kData / "divergence" / "nbest.txt", 23);
    const std::vector<std::vector<std::string>> refs{lines_of(kData / "divergence" / "ref.S.de")};
    out.stats = paratune::precompute_stats(out.lists, refs, {});
    return out;
  }();
  return t;
}

void BM_LineSearch(benchmark::State& state) {
  const Tuning& t = divergence_tuning();
  paratune::WeightVector w;
  w.weights.assign(23, 0.0);
  w.weights[0] = w.weights[1] = w.weights[2] = 1.0;
  std::vector<double> d(23, 0.0);
  d[0] = 1.0;
  d[5] = -0.5;
  for (auto _ : state) benchmark::DoNotOptimize(paratune::line_search(t.lists, t.stats, w, d));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * t.lists.size()));
}
BENCHMARK(BM_LineSearch)->Unit(benchmark::kMillisecond);

void BM_ApproxRandomization(benchmark::State& state) {
  const auto hyp_a = lines_of(kData / "bleu" / "hyp.de");
  const auto hyp_b = lines_of(kData / "bleu" / "ref.AR.p.de");
  const std::vector<std::vector<std::string>> refs{lines_of(kData / "bleu" / "ref.WMT.de")};
  const auto a = paratune::segment_stats(hyp_a, refs, {});
  const auto b = paratune::segment_stats(hyp_b, refs, {});
  for (auto _ : state) benchmark::DoNotOptimize(paratune::approx_randomization(a, b, state.range(0), 7));
}
BENCHMARK(BM_ApproxRandomization)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
