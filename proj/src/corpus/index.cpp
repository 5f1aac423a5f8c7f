#include <algorithm>
#include <numeric>

#include "dorm/corpus.hpp"

namespace dorm {

CorpusIndex build_index(std::span<const PaperRecord> papers, std::span<const CitationEdge> edges,
                        YearWindow range) {
  std::vector<const PaperRecord*> kept;
  kept.reserve(papers.size());
  for (const auto& p : papers) {
    if (range.contains(p.year)) kept.push_back(&p);
  }
  std::sort(kept.begin(), kept.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (std::size_t i = 1; i < kept.size(); ++i) {
    if (kept[i - 1]->id == kept[i]->id) throw Error(Errc::DuplicateId, kept[i]->id);
  }

  CorpusIndex index;
  index.range_ = range;
  const std::size_t n = kept.size();
  index.ids_.reserve(n);
  index.years_.reserve(n);
  index.doc_types_.reserve(n);
  index.fields_.reserve(n);
  for (const auto* p : kept) {
    index.ids_.push_back(p->id);
    index.years_.push_back(p->year);
    index.doc_types_.push_back(p->doc_type);
    index.fields_.push_back(p->field_code);
  }

  // Resolve endpoints; anything unknown, self-referential or repeated is dropped.
  std::vector<std::pair<PaperIdx, PaperIdx>> pairs;
  pairs.reserve(edges.size());
  for (const auto& e : edges) {
    auto from = index.find(e.citing);
    auto to = index.find(e.cited);
    if (!from || !to || *from == *to) continue;
    pairs.emplace_back(*from, *to);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  index.out_offsets_.assign(n + 1, 0);
  index.in_offsets_.assign(n + 1, 0);
  for (auto [from, to] : pairs) {
    ++index.out_offsets_[from + 1];
    ++index.in_offsets_[to + 1];
  }
  std::partial_sum(index.out_offsets_.begin(), index.out_offsets_.end(), index.out_offsets_.begin());
  std::partial_sum(index.in_offsets_.begin(), index.in_offsets_.end(), index.in_offsets_.begin());

  // pairs is sorted by (citing, cited), so out-lists come out sorted.
  index.out_targets_.resize(pairs.size());
  index.in_sources_.resize(pairs.size());
  std::vector<std::uint64_t> in_cursor(index.in_offsets_.begin(), index.in_offsets_.end() - 1);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [from, to] = pairs[k];
    index.out_targets_[k] = to;
    index.in_sources_[in_cursor[to]++] = from;
  }
  for (PaperIdx p = 0; p < n; ++p) {
    auto first = index.in_sources_.begin() + static_cast<std::ptrdiff_t>(index.in_offsets_[p]);
    auto last = index.in_sources_.begin() + static_cast<std::ptrdiff_t>(index.in_offsets_[p + 1]);
    std::sort(first, last, [&](PaperIdx a, PaperIdx b) { return index.citer_less(a, b); });
  }
  return index;
}

std::optional<PaperIdx> CorpusIndex::find(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<PaperIdx>(it - ids_.begin());
}

PaperIdx CorpusIndex::require(std::string_view id) const {
  auto p = find(id);
  if (!p) throw Error(Errc::UnknownPaper, std::string(id));
  return *p;
}

PaperRecord CorpusIndex::record(PaperIdx p) const {
  return PaperRecord{ids_[p], years_[p], doc_types_[p], fields_[p]};
}

std::span<const PaperIdx> CorpusIndex::citers_in(PaperIdx p, YearWindow window) const {
  auto all = citers(p);
  auto first = std::partition_point(all.begin(), all.end(),
                                    [&](PaperIdx c) { return years_[c] < window.start(); });
  auto last = std::partition_point(first, all.end(),
                                   [&](PaperIdx c) { return years_[c] <= window.end(); });
  return {first, last};
}

std::span<const PaperIdx> CorpusIndex::citers_after(PaperIdx p, int year) const {
  auto all = citers(p);
  auto first = std::partition_point(all.begin(), all.end(),
                                    [&](PaperIdx c) { return years_[c] <= year; });
  return {first, all.end()};
}

std::vector<std::string> citers_of(const CorpusIndex& index, std::string_view id, YearWindow window) {
  auto p = index.require(id);
  std::vector<std::string> out;
  for (PaperIdx c : index.citers_in(p, window)) out.push_back(index.id(c));
  return out;
}

CitationSeries yearly_citation_series(const CorpusIndex& index, PaperIdx paper, int horizon_year) {
  const int pub = index.year(paper);
  if (horizon_year < pub) {
    throw Error(Errc::InfeasibleConfig, "horizon " + std::to_string(horizon_year) +
                                            " precedes publication year of " + index.id(paper));
  }
  CitationSeries series{pub, std::vector<std::uint32_t>(static_cast<std::size_t>(horizon_year - pub + 1), 0)};
  for (PaperIdx c : index.citers(paper)) {
    const int y = index.year(c);
    if (y > horizon_year) break;
    // Same-year or back-dated citers land in c_0.
    ++series.counts[static_cast<std::size_t>(std::max(0, y - pub))];
  }
  return series;
}

CitationSeries yearly_citation_series(const CorpusIndex& index, std::string_view id, int horizon_year) {
  return yearly_citation_series(index, index.require(id), horizon_year);
}

}  // namespace dorm
