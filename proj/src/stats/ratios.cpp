#include "dorm/stats.hpp"

namespace dorm {

bool RatioFilter::admits(const TriadRecord& triad) const {
  if (!triad.has_prince()) return false;
  const bool sb_ok = triad.c_sb_window > min_csb;
  const bool pr_ok = triad.c_pr_window > min_cpr;
  return mode == FilterMode::Both ? (sb_ok && pr_ok) : (sb_ok || pr_ok);
}

std::vector<RatioSample> storyteller_ratios(std::span<const TriadRecord> triads, const RatioFilter& filter) {
  std::vector<RatioSample> out;
  for (const auto& t : triads) {
    if (!filter.admits(t)) continue;
    RatioSample s;
    s.sb = t.sb;
    s.n_st = static_cast<std::uint32_t>(t.storytellers.size());
    if (t.c_sb_window > filter.min_csb) s.st_over_csb = static_cast<double>(s.n_st) / t.c_sb_window;
    if (t.c_pr_window > filter.min_cpr) s.st_over_cpr = static_cast<double>(s.n_st) / t.c_pr_window;
    out.push_back(s);
  }
  return out;
}

RatioMeans mean_ratios(std::span<const RatioSample> samples) {
  RatioMeans means;
  double sum_sb = 0.0, sum_pr = 0.0;
  for (const auto& s : samples) {
    if (s.st_over_csb) {
      sum_sb += *s.st_over_csb;
      ++means.n_csb;
    }
    if (s.st_over_cpr) {
      sum_pr += *s.st_over_cpr;
      ++means.n_cpr;
    }
  }
  if (means.n_csb > 0) means.st_over_csb = sum_sb / static_cast<double>(means.n_csb);
  if (means.n_cpr > 0) means.st_over_cpr = sum_pr / static_cast<double>(means.n_cpr);
  return means;
}

std::map<std::uint32_t, double> st_count_pmf(std::span<const TriadRecord> triads, const RatioFilter& filter) {
  std::map<std::uint32_t, std::size_t> histogram;
  std::size_t total = 0;
  for (const auto& t : triads) {
    if (!filter.admits(t)) continue;
    ++histogram[static_cast<std::uint32_t>(t.storytellers.size())];
    ++total;
  }
  if (total == 0) throw Error(Errc::EmptyInput, "no triads pass the window-count filter");
  std::map<std::uint32_t, double> pmf;
  for (auto [n_st, count] : histogram) pmf[n_st] = static_cast<double>(count) / static_cast<double>(total);
  return pmf;
}

}  // namespace dorm
