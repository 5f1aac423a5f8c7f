#include "dorm/triad.hpp"

#include <algorithm>
#include <string>

namespace dorm {

std::string_view to_string(PrinceAbsence reason) {
  switch (reason) {
    case PrinceAbsence::None: return "none";
    case PrinceAbsence::NoCitationsBeforeBurst: return "no_citations_before_burst";
    case PrinceAbsence::NoCoCitedPapers: return "no_co_cited_papers";
  }
  return "none";
}

std::optional<PrinceAbsence> parse_prince_absence(std::string_view name) {
  for (auto r : {PrinceAbsence::None, PrinceAbsence::NoCitationsBeforeBurst, PrinceAbsence::NoCoCitedPapers}) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

namespace {

std::span<const PaperIdx> citers_until(const CorpusIndex& index, PaperIdx p, int year) {
  auto all = index.citers(p);
  auto last = std::partition_point(all.begin(), all.end(), [&](PaperIdx c) { return index.year(c) <= year; });
  return {all.begin(), last};
}

// Walks two (year, id)-sorted lists and calls the matching sink per element.
template <typename OnlyA, typename OnlyB, typename Both>
void merge_walk(const CorpusIndex& index, std::span<const PaperIdx> a, std::span<const PaperIdx> b,
                OnlyA&& only_a, OnlyB&& only_b, Both&& both) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      both(a[i]);
      ++i;
      ++j;
    } else if (index.citer_less(a[i], b[j])) {
      only_a(a[i++]);
    } else {
      only_b(b[j++]);
    }
  }
  for (; i < a.size(); ++i) only_a(a[i]);
  for (; j < b.size(); ++j) only_b(b[j]);
}

}  // namespace

std::uint32_t co_citation_count(const CorpusIndex& index, PaperIdx a, PaperIdx b, int cutoff_year) {
  if (a == b) throw Error(Errc::SamePaper, index.id(a));
  std::uint32_t count = 0;
  auto skip = [](PaperIdx) {};
  merge_walk(index, citers_until(index, a, cutoff_year), citers_until(index, b, cutoff_year), skip, skip,
             [&](PaperIdx) { ++count; });
  return count;
}

std::uint32_t co_citation_count(const CorpusIndex& index, std::string_view a, std::string_view b,
                                int cutoff_year) {
  return co_citation_count(index, index.require(a), index.require(b), cutoff_year);
}

PrinceRecord find_prince(const CorpusIndex& index, PaperIdx sb, int awakening_year, const TriadOptions& options) {
  PrinceRecord record;
  record.sb = sb;
  auto citers = index.citers(sb);
  if (citers.empty() || index.year(citers.front()) >= awakening_year) {
    record.absence = PrinceAbsence::NoCitationsBeforeBurst;
    return record;
  }

  const int cutoff = options.cocitation_cutoff.value_or(index.range().end());
  auto eligible = [&](PaperIdx r) {
    return r != sb && (options.prince_year_inclusive ? index.year(r) <= awakening_year
                                                     : index.year(r) < awakening_year);
  };
  // Two-hop enumeration: every co-cited paper appears in some SB citer's
  // reference list, once per distinct citer.
  std::vector<PaperIdx> hits;
  for (PaperIdx f : citers_until(index, sb, cutoff)) {
    for (PaperIdx r : index.references(f)) {
      if (eligible(r)) hits.push_back(r);
    }
  }
  if (hits.empty()) {
    record.absence = PrinceAbsence::NoCoCitedPapers;
    return record;
  }
  std::sort(hits.begin(), hits.end());

  PaperIdx best = hits.front();
  std::uint32_t best_count = 0;
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    while (j < hits.size() && hits[j] == hits[i]) ++j;
    const auto count = static_cast<std::uint32_t>(j - i);
    const PaperIdx cand = hits[i];
    // Ties go to the earlier publication year, then the smaller id.
    if (count > best_count || (count == best_count && index.citer_less(cand, best))) {
      best = cand;
      best_count = count;
    }
    i = j;
  }
  record.prince = best;
  record.co_citation_count = best_count;
  record.y_pr = index.year(best);
  return record;
}

std::optional<YearWindow> triad_window(int y_pr, int awakening_year, const TriadOptions& options) {
  const int end = options.st_end_inclusive ? awakening_year : awakening_year - 1;
  if (y_pr > end) return std::nullopt;
  return YearWindow(y_pr, end);
}

std::vector<PaperIdx> find_storytellers(const CorpusIndex& index, const PrinceRecord& prince, int awakening_year,
                                        const TriadOptions& options) {
  if (!prince.prince) throw Error(Errc::NoPrince, index.id(prince.sb));
  std::vector<PaperIdx> out;
  auto window = triad_window(*prince.y_pr, awakening_year, options);
  if (!window) return out;
  auto skip = [](PaperIdx) {};
  merge_walk(index, index.citers_in(prince.sb, *window), index.citers_in(*prince.prince, *window), skip, skip,
             [&](PaperIdx p) { out.push_back(p); });
  return out;
}

TriadRecord build_triad(const CorpusIndex& index, PaperIdx sb, int awakening_year, const TriadOptions& options) {
  TriadRecord triad;
  triad.sb = sb;
  triad.awakening_year = awakening_year;
  triad.prince = find_prince(index, sb, awakening_year, options);
  if (!triad.has_prince()) return triad;
  triad.storytellers = find_storytellers(index, triad.prince, awakening_year, options);
  if (auto window = triad_window(*triad.prince.y_pr, awakening_year, options)) {
    triad.c_sb_window = static_cast<std::uint32_t>(index.citers_in(sb, *window).size());
    triad.c_pr_window = static_cast<std::uint32_t>(index.citers_in(*triad.prince.prince, *window).size());
  }
  return triad;
}

GroupPartition partition_groups(const CorpusIndex& index, const TriadRecord& triad, const TriadOptions& options) {
  if (!triad.has_prince()) throw Error(Errc::NoPrince, index.id(triad.sb));
  GroupPartition groups;
  auto window = triad_window(*triad.prince.y_pr, triad.awakening_year, options);
  if (!window) return groups;
  merge_walk(
      index, index.citers_in(triad.sb, *window), index.citers_in(*triad.prince.prince, *window),
      [&](PaperIdx p) { groups.sb_only.push_back(p); }, [&](PaperIdx p) { groups.pr_only.push_back(p); },
      [&](PaperIdx p) { groups.both.push_back(p); });
  return groups;
}

std::vector<TriadRecord> extract_triads(const CorpusIndex& index, std::span<const SleepingBeautyRecord> sbs,
                                        const TriadOptions& options) {
  std::vector<TriadRecord> out(sbs.size());
  const auto n = static_cast<std::int64_t>(sbs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = build_triad(index, sbs[i].paper, sbs[i].beauty.awakening_year, options);
  }
  return out;
}

}  // namespace dorm
