// OpenMP kernels against their serial references on one synthetic corpus.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <numeric>

#include "dorm/reference.hpp"
#include "dorm/synth.hpp"

namespace {

using namespace dorm;

struct Fixture {
  CorpusIndex index;
  std::vector<PaperIdx> papers;
  std::vector<SleepingBeautyRecord> sbs;
  std::vector<TriadRecord> triads;
  PropagationOptions propagation;

  Fixture() {
    SynthConfig cfg;
    cfg.n_papers = 50000;
    auto corpus = generate_ca_corpus(cfg);
    for (int k = 0; k < 5; ++k) plant_triad(corpus, {});
    index = build_index(corpus.papers, corpus.edges, cfg.years);
    papers.resize(index.paper_count());
    std::iota(papers.begin(), papers.end(), PaperIdx{0});
    SelectionConfig loose;
    loose.citation_pct = 0.8;
    loose.b_pct = 0.8;
    sbs = select_sleeping_beauties(index, loose);
    triads = extract_triads(index, sbs);
    propagation.filter = RatioFilter{0, 0, FilterMode::Either};
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

// Arg 0: serial reference; otherwise the OpenMP kernel with that many threads.
template <typename Parallel, typename Serial>
void run(benchmark::State& state, Parallel parallel, Serial serial) {
  const auto threads = static_cast<int>(state.range(0));
  if (threads > 0) omp_set_num_threads(threads);
  for (auto _ : state) {
    if (threads > 0) {
      benchmark::DoNotOptimize(parallel());
    } else {
      benchmark::DoNotOptimize(serial());
    }
  }
  state.SetLabel(threads > 0 ? "omp" : "serial");
}

void BM_CitationTotals(benchmark::State& state) {
  const auto& f = fixture();
  run(state, [&] { return citation_totals(f.index, 2020); }, [&] { return reference::citation_totals(f.index, 2020); });
}

void BM_ScoreBeauty(benchmark::State& state) {
  const auto& f = fixture();
  run(state, [&] { return score_beauty(f.index, f.papers, 2020); },
      [&] { return reference::score_beauty(f.index, f.papers, 2020); });
}

void BM_ExtractTriads(benchmark::State& state) {
  const auto& f = fixture();
  run(state, [&] { return extract_triads(f.index, f.sbs); }, [&] { return reference::extract_triads(f.index, f.sbs); });
}

void BM_PropagationTerms(benchmark::State& state) {
  const auto& f = fixture();
  run(state, [&] { return propagation_terms(f.index, f.triads, f.propagation); },
      [&] { return reference::propagation_terms(f.index, f.triads, f.propagation); });
}

void thread_args(benchmark::internal::Benchmark* b) {
  b->Arg(0);
  for (int t = 1; t <= omp_get_num_procs(); t *= 2) b->Arg(t);
  b->Unit(benchmark::kMillisecond);
}

BENCHMARK(BM_CitationTotals)->Apply(thread_args);
BENCHMARK(BM_ScoreBeauty)->Apply(thread_args);
BENCHMARK(BM_ExtractTriads)->Apply(thread_args);
BENCHMARK(BM_PropagationTerms)->Apply(thread_args);

}  // namespace

BENCHMARK_MAIN();
