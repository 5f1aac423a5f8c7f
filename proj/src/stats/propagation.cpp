#include <algorithm>
#include <cstdint>

#include "dorm/stats.hpp"

namespace dorm {

std::string_view to_string(Group group) {
  switch (group) {
    case Group::SbOnly: return "sb_only";
    case Group::PrOnly: return "pr_only";
    case Group::Storyteller: return "storyteller";
  }
  return "sb_only";
}

namespace {

std::vector<PaperIdx> sorted_by_id(std::span<const PaperIdx> list) {
  std::vector<PaperIdx> out(list.begin(), list.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t intersection_size(const std::vector<PaperIdx>& a, const std::vector<PaperIdx>& b) {
  std::uint64_t n = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++n;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return n;
}

}  // namespace

std::vector<PaperIdx> followers_of(const CorpusIndex& index, std::span<const PaperIdx> members, int after_year) {
  std::vector<PaperIdx> out;
  for (PaperIdx m : members) {
    auto later = index.citers_after(m, after_year);
    out.insert(out.end(), later.begin(), later.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TriadPropagation propagation_counts(const CorpusIndex& index, const TriadRecord& triad, const TriadOptions& options) {
  const auto groups = partition_groups(index, triad, options);
  const int after = triad.awakening_year;
  const auto sb_followers = sorted_by_id(index.citers_after(triad.sb, after));
  const auto pr_followers = sorted_by_id(index.citers_after(*triad.prince.prince, after));

  TriadPropagation out;
  out.sb = triad.sb;
  auto fill = [&](Group g, const std::vector<PaperIdx>& members) {
    const auto f = followers_of(index, members, after);
    auto& counts = out.groups[static_cast<std::size_t>(g)];
    counts.followers = f.size();
    counts.cite_sb = intersection_size(f, sb_followers);
    counts.cite_pr = intersection_size(f, pr_followers);
  };
  fill(Group::SbOnly, groups.sb_only);
  fill(Group::PrOnly, groups.pr_only);
  fill(Group::Storyteller, groups.both);
  return out;
}

std::vector<TriadPropagation> propagation_terms(const CorpusIndex& index, std::span<const TriadRecord> triads,
                                                const PropagationOptions& options) {
  std::vector<const TriadRecord*> admitted;
  for (const auto& t : triads) {
    if (options.filter.admits(t)) admitted.push_back(&t);
  }
  std::sort(admitted.begin(), admitted.end(), [](auto* a, auto* b) { return a->sb < b->sb; });

  std::vector<TriadPropagation> out(admitted.size());
  const auto n = static_cast<std::int64_t>(admitted.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) out[i] = propagation_counts(index, *admitted[i], options.triad);
  return out;
}

PropagationTable aggregate_propagation(std::span<const TriadPropagation> terms, const PropagationOptions& options) {
  PropagationTable table;
  const bool conjunctive = options.nsb == NsbVariant::Conjunctive;
  constexpr auto kSt = static_cast<std::size_t>(Group::Storyteller);

  for (std::size_t g = 0; g < table.size(); ++g) {
    auto& row = table[g];
    row.group = static_cast<Group>(g);
    // Terms arrive in SB-id order, so these serial sums are reproducible.
    double sum_sb = 0.0, sum_pr = 0.0, sum_nsb = 0.0;
    std::uint64_t pool_followers = 0, pool_sb = 0, pool_pr = 0, pool_num = 0, pool_den = 0;
    for (const auto& term : terms) {
      const auto& c = term.groups[g];
      const auto& st = term.groups[kSt];
      if (c.followers > 0) {
        ++row.n_triads;
        sum_sb += static_cast<double>(c.cite_sb) / static_cast<double>(c.followers);
        sum_pr += static_cast<double>(c.cite_pr) / static_cast<double>(c.followers);
        pool_followers += c.followers;
        pool_sb += c.cite_sb;
        pool_pr += c.cite_pr;
      }
      const std::uint64_t num = conjunctive ? c.cite_sb : c.followers;
      const std::uint64_t den = conjunctive ? st.cite_sb : st.followers;
      if (den > 0) {
        ++row.n_triads_nsb;
        sum_nsb += static_cast<double>(num) / static_cast<double>(den);
        pool_num += num;
        pool_den += den;
      }
    }
    if (options.aggregation == Aggregation::Macro) {
      if (row.n_triads > 0) {
        row.e_sb = sum_sb / static_cast<double>(row.n_triads);
        row.e_pr = sum_pr / static_cast<double>(row.n_triads);
      }
      if (row.n_triads_nsb > 0) row.e_nsb = sum_nsb / static_cast<double>(row.n_triads_nsb);
    } else {
      if (pool_followers > 0) {
        row.e_sb = static_cast<double>(pool_sb) / static_cast<double>(pool_followers);
        row.e_pr = static_cast<double>(pool_pr) / static_cast<double>(pool_followers);
      }
      if (pool_den > 0) row.e_nsb = static_cast<double>(pool_num) / static_cast<double>(pool_den);
    }
  }
  return table;
}

PropagationTable propagation_table(const CorpusIndex& index, std::span<const TriadRecord> triads,
                                   const PropagationOptions& options) {
  const auto terms = propagation_terms(index, triads, options);
  return aggregate_propagation(terms, options);
}

}  // namespace dorm
