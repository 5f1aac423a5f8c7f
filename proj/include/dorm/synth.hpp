#pragma once

// Seeded synthetic corpora: a cumulative-advantage baseline with recency
// decay, planted Sleeping Beauty / Prince / Storyteller structures, and
// exhaustive raw-edge reference implementations of the triad definitions.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dorm/corpus.hpp"
#include "dorm/triad.hpp"

namespace dorm {

// Bump when the draw sequence changes; recorded in every emitted corpus.
inline constexpr std::string_view kSynthRngTag = "mt19937_64/v1";

struct SynthConfig {
  std::size_t n_papers = 10000;
  YearWindow years = kDefaultCorpusRange;
  std::uint32_t refs_per_paper = 10;
  double attachment_offset = 1.0;   // k0
  double recency_half_life = 5.0;   // years
  int fields = 4;
  std::uint64_t seed = 42;
  bool allow_same_year = false;
};

struct PlantSpec {
  int sleep_years = 20;             // SB year to awakening year
  std::uint32_t burst_size = 50;    // citations per burst year
  int burst_years = 5;
  std::uint32_t n_st = 6;
  std::optional<int> sb_year;       // drawn past the generator warm-up when unset
  std::optional<int> pr_delay;      // PR year - SB year; defaults to max(1, sleep / 3)
  std::uint32_t sb_only_pre = 5;    // citers of SB alone in (PR year, awakening)
  std::uint32_t pr_only_pre = 5;    // citers of PR alone in (PR year, awakening]
  double pr_cocite_fraction = 0.5;  // share of burst citers that also cite PR
  double st_follow_fraction = 0.2;  // share of burst citers that also cite one ST
};

struct PlantedTriad {
  std::string sb_id;
  std::string pr_id;
  std::vector<std::string> st_ids;  // (year, id) order
  int sb_year = 0;
  int pr_year = 0;
  int awakening_year = 0;
  int sleep_years = 0;
  std::uint32_t burst_size = 0;
};

struct SyntheticCorpus {
  SynthConfig config;
  std::vector<PaperRecord> papers;  // base papers first, in year order
  std::size_t base_count = 0;
  std::vector<CitationEdge> edges;
  std::vector<PlantedTriad> planted;
};

// Throws Error{InfeasibleConfig} for n_papers == 0, refs_per_paper == 0 or
// non-positive k0 / half-life / field count.
SyntheticCorpus generate_ca_corpus(const SynthConfig& config);

// Adds one triad; its RNG stream derives from the corpus seed and the number
// of triads already planted. Throws Error{InfeasibleSpec}.
PlantedTriad plant_triad(SyntheticCorpus& corpus, const PlantSpec& spec);

// Citations per paper-year of exposure, the reference rate for burst sizing.
double baseline_citation_rate(const SyntheticCorpus& corpus);

void write_papers_tsv(const SyntheticCorpus& corpus, std::ostream& out);
void write_citations_tsv(const SyntheticCorpus& corpus, std::ostream& out);
std::string ground_truth_json(const SyntheticCorpus& corpus);
std::string synth_header(const SyntheticCorpus& corpus);

struct OraclePrince {
  std::optional<std::string> prince;
  std::uint32_t co_citation_count = 0;
  PrinceAbsence absence = PrinceAbsence::None;

  friend bool operator==(const OraclePrince&, const OraclePrince&) = default;
};

// Edge-list scans with no index; test references for find_prince and
// find_storytellers.
OraclePrince oracle_prince(std::span<const PaperRecord> papers, std::span<const CitationEdge> edges,
                           std::string_view sb, int awakening_year, int cutoff_year,
                           bool prince_year_inclusive = false);
std::vector<std::string> oracle_storytellers(std::span<const PaperRecord> papers,
                                             std::span<const CitationEdge> edges, std::string_view sb,
                                             std::string_view pr, YearWindow window);

}  // namespace dorm
