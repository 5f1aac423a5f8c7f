#include <algorithm>
#include <set>

#include "dorm/reference.hpp"

namespace dorm::reference {

std::vector<std::uint32_t> citation_totals(const CorpusIndex& index, int horizon_year) {
  std::vector<std::uint32_t> totals(index.paper_count(), 0);
  for (PaperIdx p = 0; p < index.paper_count(); ++p) {
    if (index.year(p) > horizon_year) continue;
    for (PaperIdx cited : index.references(p)) ++totals[cited];
  }
  return totals;
}

std::vector<BeautyResult> score_beauty(const CorpusIndex& index, std::span<const PaperIdx> candidates,
                                       int horizon_year) {
  std::vector<BeautyResult> out;
  out.reserve(candidates.size());
  for (PaperIdx p : candidates) out.push_back(analyze_series(yearly_citation_series(index, p, horizon_year)));
  return out;
}

namespace {

PrinceRecord prince_by_pairs(const CorpusIndex& index, PaperIdx sb, int awakening_year, const TriadOptions& options) {
  PrinceRecord record;
  record.sb = sb;
  const int cutoff = options.cocitation_cutoff.value_or(index.range().end());
  bool cited_before = false;
  std::set<PaperIdx> candidates;
  for (PaperIdx f : index.citers(sb)) {
    if (index.year(f) < awakening_year) cited_before = true;
    if (index.year(f) > cutoff) continue;
    for (PaperIdx r : index.references(f)) {
      const bool early = options.prince_year_inclusive ? index.year(r) <= awakening_year
                                                       : index.year(r) < awakening_year;
      if (r != sb && early) candidates.insert(r);
    }
  }
  if (!cited_before) {
    record.absence = PrinceAbsence::NoCitationsBeforeBurst;
    return record;
  }
  if (candidates.empty()) {
    record.absence = PrinceAbsence::NoCoCitedPapers;
    return record;
  }
  std::uint32_t best_count = 0;
  PaperIdx best = 0;
  for (PaperIdx c : candidates) {
    const auto count = co_citation_count(index, sb, c, cutoff);
    if (count > best_count || (count == best_count && index.citer_less(c, best))) {
      best = c;
      best_count = count;
    }
  }
  record.prince = best;
  record.co_citation_count = best_count;
  record.y_pr = index.year(best);
  return record;
}

}  // namespace

std::vector<TriadRecord> extract_triads(const CorpusIndex& index, std::span<const SleepingBeautyRecord> sbs,
                                        const TriadOptions& options) {
  std::vector<TriadRecord> out;
  out.reserve(sbs.size());
  for (const auto& sb : sbs) {
    TriadRecord triad;
    triad.sb = sb.paper;
    triad.awakening_year = sb.beauty.awakening_year;
    triad.prince = prince_by_pairs(index, sb.paper, triad.awakening_year, options);
    if (triad.has_prince()) {
      if (auto window = triad_window(*triad.prince.y_pr, triad.awakening_year, options)) {
        auto a = index.citers_in(sb.paper, *window);
        auto b = index.citers_in(*triad.prince.prince, *window);
        std::vector<PaperIdx> sa(a.begin(), a.end()), sb_list(b.begin(), b.end());
        std::sort(sa.begin(), sa.end());
        std::sort(sb_list.begin(), sb_list.end());
        std::set_intersection(sa.begin(), sa.end(), sb_list.begin(), sb_list.end(),
                              std::back_inserter(triad.storytellers));
        std::sort(triad.storytellers.begin(), triad.storytellers.end(),
                  [&](PaperIdx x, PaperIdx y) { return index.citer_less(x, y); });
        triad.c_sb_window = static_cast<std::uint32_t>(a.size());
        triad.c_pr_window = static_cast<std::uint32_t>(b.size());
      }
    }
    out.push_back(std::move(triad));
  }
  return out;
}

std::vector<TriadPropagation> propagation_terms(const CorpusIndex& index, std::span<const TriadRecord> triads,
                                                const PropagationOptions& options) {
  std::vector<TriadPropagation> out;
  for (const auto& t : triads) {
    if (options.filter.admits(t)) out.push_back(propagation_counts(index, t, options.triad));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.sb < b.sb; });
  return out;
}

}  // namespace dorm::reference
