#include <algorithm>
#include <map>
#include <set>

#include "dorm/synth.hpp"

namespace dorm {

namespace {

std::map<std::string, int, std::less<>> year_table(std::span<const PaperRecord> papers) {
  std::map<std::string, int, std::less<>> years;
  for (const auto& p : papers) years.emplace(p.id, p.year);
  return years;
}

}  // namespace

OraclePrince oracle_prince(std::span<const PaperRecord> papers, std::span<const CitationEdge> edges,
                           std::string_view sb, int awakening_year, int cutoff_year, bool prince_year_inclusive) {
  const auto years = year_table(papers);
  OraclePrince result;

  std::set<std::string> sb_citers;
  bool cited_before = false;
  for (const auto& e : edges) {
    if (e.cited != sb) continue;
    sb_citers.insert(e.citing);
    if (e.year < awakening_year) cited_before = true;
  }
  if (!cited_before) {
    result.absence = PrinceAbsence::NoCitationsBeforeBurst;
    return result;
  }

  // Every (candidate, co-citing paper) pair, found by rescanning the whole
  // edge list for each SB citer.
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& first : edges) {
    if (first.cited != sb || first.year > cutoff_year) continue;
    for (const auto& second : edges) {
      if (second.citing != first.citing || second.cited == sb) continue;
      auto y = years.find(second.cited);
      if (y == years.end()) continue;
      const bool early = prince_year_inclusive ? y->second <= awakening_year : y->second < awakening_year;
      if (early) pairs.emplace(second.cited, first.citing);
    }
  }
  if (pairs.empty()) {
    result.absence = PrinceAbsence::NoCoCitedPapers;
    return result;
  }

  std::map<std::string, std::uint32_t> counts;
  for (const auto& [candidate, citer] : pairs) ++counts[candidate];
  const std::string* best = nullptr;
  std::uint32_t best_count = 0;
  for (const auto& [candidate, count] : counts) {
    const bool better =
        best == nullptr || count > best_count ||
        (count == best_count && (years.find(candidate)->second < years.find(*best)->second ||
                                 (years.find(candidate)->second == years.find(*best)->second && candidate < *best)));
    if (better) {
      best = &candidate;
      best_count = count;
    }
  }
  result.prince = *best;
  result.co_citation_count = best_count;
  return result;
}

std::vector<std::string> oracle_storytellers(std::span<const PaperRecord> papers, std::span<const CitationEdge> edges,
                                             std::string_view sb, std::string_view pr, YearWindow window) {
  const auto years = year_table(papers);
  std::set<std::string> cites_sb, cites_pr;
  for (const auto& e : edges) {
    auto y = years.find(e.citing);
    if (y == years.end() || !window.contains(y->second)) continue;
    if (e.cited == sb) cites_sb.insert(e.citing);
    if (e.cited == pr) cites_pr.insert(e.citing);
  }
  std::vector<std::string> both;
  std::set_intersection(cites_sb.begin(), cites_sb.end(), cites_pr.begin(), cites_pr.end(), std::back_inserter(both));
  std::sort(both.begin(), both.end(), [&](const std::string& a, const std::string& b) {
    const int ya = years.find(a)->second, yb = years.find(b)->second;
    return ya != yb ? ya < yb : a < b;
  });
  return both;
}

}  // namespace dorm
