#pragma once

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dorm/corpus.hpp"
#include "dorm/synth.hpp"

namespace dorm::test {

struct HandCorpus {
  std::vector<PaperRecord> papers;
  std::vector<CitationEdge> edges;

  HandCorpus& paper(std::string id, int year, DocType type = DocType::Article, int field = 0) {
    papers.push_back({std::move(id), year, type, field});
    return *this;
  }
  // Edge year is stamped from the citing paper, which must already exist.
  HandCorpus& cite(const std::string& citing, const std::string& cited) {
    int year = 0;
    for (const auto& p : papers) {
      if (p.id == citing) year = p.year;
    }
    edges.push_back({citing, cited, year});
    return *this;
  }
  CorpusIndex index(YearWindow range = kDefaultCorpusRange) const { return build_index(papers, edges, range); }
};

// Unstructured random corpus: uniform years, distinct random edges in any
// time direction.
inline HandCorpus random_corpus(std::size_t n, std::size_t n_edges, std::uint64_t seed, int fields = 3) {
  std::mt19937_64 rng(seed);
  HandCorpus c;
  std::uniform_int_distribution<int> year(1970, 2020), field(0, fields - 1), type(0, 3);
  for (std::size_t i = 0; i < n; ++i) {
    c.paper("P" + std::to_string(i), year(rng), static_cast<DocType>(type(rng)), field(rng));
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < n_edges; ++k) {
    const auto i = pick(rng), j = pick(rng);
    if (i == j || !seen.emplace(i, j).second) continue;
    c.edges.push_back({c.papers[i].id, c.papers[j].id, c.papers[i].year});
  }
  return c;
}

// Planting spec that fits corpora of a few thousand papers (about 40 per year).
inline PlantSpec small_spec() {
  PlantSpec spec;
  spec.burst_size = 25;
  spec.sb_only_pre = 4;
  spec.pr_only_pre = 4;
  return spec;
}

inline SyntheticCorpus planted_corpus(std::size_t n, std::uint64_t seed, std::size_t triads = 1,
                                      const PlantSpec& spec = small_spec()) {
  SynthConfig cfg;
  cfg.n_papers = n;
  cfg.seed = seed;
  auto corpus = generate_ca_corpus(cfg);
  for (std::size_t k = 0; k < triads; ++k) plant_triad(corpus, spec);
  return corpus;
}

inline CorpusIndex index_of(const SyntheticCorpus& corpus) {
  return build_index(corpus.papers, corpus.edges, corpus.config.years);
}

}  // namespace dorm::test
