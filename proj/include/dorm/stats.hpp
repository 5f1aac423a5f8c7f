#pragma once

// Storyteller statistics: ratio samples, Gaussian KDE, the post-awakening
// propagation table and the Storyteller-count distribution.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "dorm/corpus.hpp"
#include "dorm/triad.hpp"

namespace dorm {

enum class FilterMode : std::uint8_t { Either, Both };

// Window-count filter with strict thresholds (C > min).
struct RatioFilter {
  std::uint32_t min_csb = 10;
  std::uint32_t min_cpr = 10;
  FilterMode mode = FilterMode::Either;

  bool admits(const TriadRecord& triad) const;
};

struct RatioSample {
  PaperIdx sb = 0;
  std::optional<double> st_over_csb;
  std::optional<double> st_over_cpr;
  std::uint32_t n_st = 0;
};

std::vector<RatioSample> storyteller_ratios(std::span<const TriadRecord> triads, const RatioFilter& filter = {});

struct RatioMeans {
  std::optional<double> st_over_csb;
  std::optional<double> st_over_cpr;
  std::size_t n_csb = 0;
  std::size_t n_cpr = 0;
};

RatioMeans mean_ratios(std::span<const RatioSample> samples);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// h = 0.9 * min(sigma, IQR / 1.34) * n^(-1/5), floored at 1e-4. A zero
// spread measure falls back to the other one.
double silverman_bandwidth(std::span<const double> samples);

class KdeModel {
 public:
  // Throws Error{EmptySamples} or Error{NonPositiveBandwidth}.
  KdeModel(std::vector<double> samples, std::optional<double> bandwidth, std::optional<Interval> reflect);

  double bandwidth() const noexcept { return bandwidth_; }
  std::span<const double> samples() const noexcept { return samples_; }
  const std::optional<Interval>& reflection() const noexcept { return reflect_; }

  // Reflected models are zero outside their support.
  double evaluate(double x) const;
  // Support when reflecting, otherwise the sample range padded by 4h.
  Interval grid_range() const;
  std::vector<std::pair<double, double>> grid_export(std::size_t n_points = 512) const;

 private:
  std::vector<double> samples_;
  double bandwidth_;
  std::optional<Interval> reflect_;
};

KdeModel gaussian_kde(std::vector<double> samples, std::optional<double> bandwidth = std::nullopt,
                      std::optional<Interval> reflect = Interval{0.0, 1.0});

enum class Group : std::uint8_t { SbOnly = 0, PrOnly = 1, Storyteller = 2 };
std::string_view to_string(Group group);

enum class Aggregation : std::uint8_t { Macro, Pooled };
// Conjunctive: E_|N_sb| counts followers that also cite SB.
// Followers: E_|N_sb| compares raw follower counts.
enum class NsbVariant : std::uint8_t { Conjunctive, Followers };

struct PropagationOptions {
  RatioFilter filter{10, 10, FilterMode::Both};
  Aggregation aggregation = Aggregation::Macro;
  NsbVariant nsb = NsbVariant::Conjunctive;
  TriadOptions triad;
};

// Counts over F_G, the distinct papers published after the awakening year
// that cite at least one member of group G.
struct GroupFollowers {
  std::uint64_t followers = 0;  // |F_G|
  std::uint64_t cite_sb = 0;    // |F_G ∩ N_sb|
  std::uint64_t cite_pr = 0;    // |F_G ∩ N_pr|

  friend bool operator==(const GroupFollowers&, const GroupFollowers&) = default;
};

struct TriadPropagation {
  PaperIdx sb = 0;
  std::array<GroupFollowers, 3> groups;  // indexed by Group

  friend bool operator==(const TriadPropagation&, const TriadPropagation&) = default;
};

// Distinct papers published after `after_year` citing any member, sorted by id.
std::vector<PaperIdx> followers_of(const CorpusIndex& index, std::span<const PaperIdx> members, int after_year);

TriadPropagation propagation_counts(const CorpusIndex& index, const TriadRecord& triad,
                                    const TriadOptions& options = {});

// Per-triad counts for every triad the filter admits, sorted by SB id.
std::vector<TriadPropagation> propagation_terms(const CorpusIndex& index, std::span<const TriadRecord> triads,
                                                const PropagationOptions& options = {});

struct PropagationRow {
  Group group = Group::SbOnly;
  std::optional<double> e_sb;
  std::optional<double> e_pr;
  std::optional<double> e_nsb;
  std::size_t n_triads = 0;      // triads with |F_G| > 0
  std::size_t n_triads_nsb = 0;  // triads with a nonzero Storyteller denominator
};

using PropagationTable = std::array<PropagationRow, 3>;

PropagationTable aggregate_propagation(std::span<const TriadPropagation> terms, const PropagationOptions& options = {});
PropagationTable propagation_table(const CorpusIndex& index, std::span<const TriadRecord> triads,
                                   const PropagationOptions& options = {});

// Empirical pmf of |ST| over admitted triads with a Prince. Throws Error{EmptyInput}.
std::map<std::uint32_t, double> st_count_pmf(std::span<const TriadRecord> triads, const RatioFilter& filter = {});

}  // namespace dorm
