#pragma once

// Independent brute-force references used by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dorm/corpus.hpp"

namespace dorm::test {

inline std::size_t earliest_argmax(const std::vector<std::uint32_t>& c) {
  std::size_t best = 0;
  for (std::size_t t = 1; t < c.size(); ++t) {
    if (c[t] > c[best]) best = t;
  }
  return best;
}

// Term-by-term Beauty Coefficient with explicit reference line values.
inline long double brute_beauty(const std::vector<std::uint32_t>& c) {
  const std::size_t tm = earliest_argmax(c);
  if (tm == 0) return 0.0L;
  const long double c0 = c[0], ctm = c[tm];
  long double sum = 0.0L;
  for (std::size_t t = 0; t <= tm; ++t) {
    const long double line = c0 + (ctm - c0) * static_cast<long double>(t) / static_cast<long double>(tm);
    sum += (line - static_cast<long double>(c[t])) / std::max<long double>(1.0L, c[t]);
  }
  return sum;
}

// Perpendicular distance from (t, c_t) to the line through (0, c_0) and (t_m, c_tm).
inline std::vector<double> awakening_distances(const std::vector<std::uint32_t>& c) {
  const std::size_t tm = earliest_argmax(c);
  std::vector<double> d(tm + 1, 0.0);
  if (tm == 0) return d;
  const double c0 = c[0], ctm = c[tm], m = static_cast<double>(tm);
  const double norm = std::sqrt((ctm - c0) * (ctm - c0) + m * m);
  for (std::size_t t = 0; t <= tm; ++t) {
    d[t] = std::abs((ctm - c0) * static_cast<double>(t) - m * c[t] + m * c0) / norm;
  }
  return d;
}

inline std::vector<std::uint32_t> random_series(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len(2, 50);
  std::uniform_int_distribution<std::uint32_t> count(0, 500);
  std::vector<std::uint32_t> c(len(rng));
  for (auto& v : c) v = count(rng);
  return c;
}

// Midpoint percentile within (field, year) cohorts by pairwise comparison.
inline std::vector<double> brute_percentiles(const CorpusIndex& index, const std::vector<std::uint32_t>& totals) {
  const auto n = index.paper_count();
  std::vector<double> out(n);
  for (PaperIdx p = 0; p < n; ++p) {
    std::size_t lower = 0, ties = 0, size = 0;
    for (PaperIdx q = 0; q < n; ++q) {
      if (index.field_code(q) != index.field_code(p) || index.year(q) != index.year(p)) continue;
      ++size;
      if (totals[q] < totals[p]) ++lower;
      if (totals[q] == totals[p]) ++ties;
    }
    out[p] = size == 1 ? 1.0 : (static_cast<double>(lower) + 0.5 * static_cast<double>(ties)) / static_cast<double>(size);
  }
  return out;
}

// Citer set of `id` from raw edges, restricted to citing years in [lo, hi].
inline std::set<std::string> raw_citers(const std::vector<CitationEdge>& edges, const std::string& id, int lo, int hi) {
  std::set<std::string> out;
  for (const auto& e : edges) {
    if (e.cited == id && e.year >= lo && e.year <= hi) out.insert(e.citing);
  }
  return out;
}

}  // namespace dorm::test
