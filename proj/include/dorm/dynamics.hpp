#pragma once

// Citation dynamics: Beauty Coefficient, awakening time, cohort-corrected
// citation percentiles and Sleeping Beauty selection.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dorm/corpus.hpp"

namespace dorm {

struct BeautyScore {
  double b = 0.0;
  int t_m = 0;  // earliest age of the maximum yearly count
};

struct BeautyResult {
  double b = 0.0;
  int t_m = 0;
  int t_a = 0;
  int awakening_year = 0;

  friend bool operator==(const BeautyResult&, const BeautyResult&) = default;
};

// B = sum_{t=0}^{t_m} ((c_tm - c_0)/t_m * t + c_0 - c_t) / max(1, c_t), zero when t_m = 0.
// Throws Error{EmptySeries}.
BeautyScore beauty_coefficient(std::span<const std::uint32_t> counts);
inline BeautyScore beauty_coefficient(const CitationSeries& series) { return beauty_coefficient(series.counts); }

// Earliest age in [0, t_m] maximising the distance from c_t to the line
// joining (0, c_0) and (t_m, c_tm). Throws Error{EmptySeries}.
int awakening_time(std::span<const std::uint32_t> counts);
inline int awakening_time(const CitationSeries& series) { return awakening_time(series.counts); }

BeautyResult analyze_series(const CitationSeries& series);

// Total citations received up to and including `horizon_year`, per paper.
std::vector<std::uint32_t> citation_totals(const CorpusIndex& index, int horizon_year);

// Midpoint percentile within each (field_code, pub_year) cohort:
// (strictly lower + half of ties including self) / cohort size; singletons get 1.0.
std::vector<double> corrected_citation_percentile(const CorpusIndex& index, int horizon_year);

// Per-paper Beauty scoring for the given candidates at `horizon_year`.
std::vector<BeautyResult> score_beauty(const CorpusIndex& index, std::span<const PaperIdx> candidates,
                                       int horizon_year);

// Linear-interpolation sample quantile (Hyndman-Fan type 7). Requires a
// non-empty input.
double quantile(std::vector<double> values, double p);

struct SelectionConfig {
  double citation_pct = 0.95;
  double b_pct = 0.99;
  std::vector<DocType> doc_types{DocType::Article, DocType::ConferencePaper};
  std::optional<int> horizon;  // defaults to the corpus y_max
  bool per_field_b = false;    // B cutoff per field_code instead of global
};

struct SleepingBeautyRecord {
  PaperIdx paper = 0;
  BeautyResult beauty;
  double corrected_percentile = 0.0;
};

// (1) doc-type filter, (2) corrected percentile >= citation_pct, (3) B over
// survivors, (4) keep B >= the b_pct quantile of survivors. Output is in id
// order. Throws Error{EmptyCorpus}.
std::vector<SleepingBeautyRecord> select_sleeping_beauties(const CorpusIndex& index,
                                                           const SelectionConfig& config = {});

}  // namespace dorm
