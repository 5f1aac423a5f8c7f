#include "dorm/dynamics.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>

namespace dorm {

namespace {

int peak_age(std::span<const std::uint32_t> counts) {
  if (counts.empty()) throw Error(Errc::EmptySeries, "citation series is empty");
  // max_element returns the first maximum, i.e. the earliest age on ties.
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

}  // namespace

BeautyScore beauty_coefficient(std::span<const std::uint32_t> counts) {
  const int t_m = peak_age(counts);
  if (t_m == 0) return {0.0, 0};
  const double c0 = counts[0];
  const double slope = (static_cast<double>(counts[t_m]) - c0) / t_m;
  double b = 0.0;
  for (int t = 0; t <= t_m; ++t) {
    const double ct = counts[t];
    b += (slope * t + c0 - ct) / std::max(1.0, ct);
  }
  return {b, t_m};
}

int awakening_time(std::span<const std::uint32_t> counts) {
  const int t_m = peak_age(counts);
  if (t_m == 0) return 0;
  // The distance denominator is constant in t, so compare exact integer
  // numerators |(c_tm - c_0) t - t_m c_t + t_m c_0|.
  const std::int64_t c0 = counts[0];
  const std::int64_t rise = static_cast<std::int64_t>(counts[t_m]) - c0;
  int best_age = 0;
  std::int64_t best = -1;
  for (int t = 0; t <= t_m; ++t) {
    const std::int64_t d = std::llabs(rise * t - std::int64_t{t_m} * counts[t] + std::int64_t{t_m} * c0);
    if (d > best) {
      best = d;
      best_age = t;
    }
  }
  return best_age;
}

BeautyResult analyze_series(const CitationSeries& series) {
  auto score = beauty_coefficient(series.counts);
  const int t_a = awakening_time(series.counts);
  return {score.b, score.t_m, t_a, series.pub_year + t_a};
}

std::vector<std::uint32_t> citation_totals(const CorpusIndex& index, int horizon_year) {
  const auto n = static_cast<std::int64_t>(index.paper_count());
  std::vector<std::uint32_t> totals(index.paper_count(), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < n; ++p) {
    auto citers = index.citers(static_cast<PaperIdx>(p));
    auto last = std::partition_point(citers.begin(), citers.end(),
                                     [&](PaperIdx c) { return index.year(c) <= horizon_year; });
    totals[p] = static_cast<std::uint32_t>(last - citers.begin());
  }
  return totals;
}

std::vector<double> corrected_citation_percentile(const CorpusIndex& index, int horizon_year) {
  const auto totals = citation_totals(index, horizon_year);
  std::vector<PaperIdx> order(index.paper_count());
  std::iota(order.begin(), order.end(), PaperIdx{0});
  auto cohort_less = [&](PaperIdx a, PaperIdx b) {
    if (index.field_code(a) != index.field_code(b)) return index.field_code(a) < index.field_code(b);
    return index.year(a) < index.year(b);
  };
  std::sort(order.begin(), order.end(), [&](PaperIdx a, PaperIdx b) {
    if (cohort_less(a, b) || cohort_less(b, a)) return cohort_less(a, b);
    return totals[a] != totals[b] ? totals[a] < totals[b] : a < b;
  });

  std::vector<double> pct(index.paper_count(), 0.0);
  std::size_t begin = 0;
  while (begin < order.size()) {
    std::size_t end = begin + 1;
    while (end < order.size() && !cohort_less(order[begin], order[end])) ++end;
    const double size = static_cast<double>(end - begin);
    if (end - begin == 1) {
      pct[order[begin]] = 1.0;
    } else {
      std::size_t run = begin;
      while (run < end) {
        std::size_t run_end = run + 1;
        while (run_end < end && totals[order[run_end]] == totals[order[run]]) ++run_end;
        const double value = (static_cast<double>(run - begin) + 0.5 * static_cast<double>(run_end - run)) / size;
        for (std::size_t k = run; k < run_end; ++k) pct[order[k]] = value;
        run = run_end;
      }
    }
    begin = end;
  }
  return pct;
}

std::vector<BeautyResult> score_beauty(const CorpusIndex& index, std::span<const PaperIdx> candidates,
                                       int horizon_year) {
  std::vector<BeautyResult> out(candidates.size());
  const auto n = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = analyze_series(yearly_citation_series(index, candidates[i], horizon_year));
  }
  return out;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * std::clamp(p, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<SleepingBeautyRecord> select_sleeping_beauties(const CorpusIndex& index,
                                                           const SelectionConfig& config) {
  if (index.paper_count() == 0) throw Error(Errc::EmptyCorpus, "corpus has no papers");
  if (config.citation_pct < 0.0 || config.citation_pct > 1.0 || config.b_pct < 0.0 || config.b_pct > 1.0) {
    throw std::invalid_argument("selection thresholds must lie in [0, 1]");
  }
  const int horizon = config.horizon.value_or(index.range().end());
  const auto pct = corrected_citation_percentile(index, horizon);

  std::vector<PaperIdx> survivors;
  for (PaperIdx p = 0; p < index.paper_count(); ++p) {
    const bool type_ok = std::find(config.doc_types.begin(), config.doc_types.end(), index.doc_type(p)) !=
                         config.doc_types.end();
    if (type_ok && index.year(p) <= horizon && pct[p] >= config.citation_pct) survivors.push_back(p);
  }
  if (survivors.empty()) return {};

  const auto scores = score_beauty(index, survivors, horizon);

  // Cutoff per group; the global mode puts every survivor in group 0.
  std::map<int, std::vector<double>> groups;
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    groups[config.per_field_b ? index.field_code(survivors[i]) : 0].push_back(scores[i].b);
  }
  std::map<int, double> cutoff;
  for (auto& [key, values] : groups) cutoff[key] = quantile(std::move(values), config.b_pct);

  std::vector<SleepingBeautyRecord> out;
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    const int key = config.per_field_b ? index.field_code(survivors[i]) : 0;
    if (scores[i].b >= cutoff[key]) out.push_back({survivors[i], scores[i], pct[survivors[i]]});
  }
  return out;
}

}  // namespace dorm
