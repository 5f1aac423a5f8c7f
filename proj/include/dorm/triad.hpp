#pragma once

// Sleeping Beauty triads: the Prince (most co-cited earlier paper), the
// Storytellers (pre-awakening co-citers of SB and Prince) and the three
// citer groups compared after awakening.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dorm/corpus.hpp"
#include "dorm/dynamics.hpp"

namespace dorm {

enum class PrinceAbsence : std::uint8_t { None, NoCitationsBeforeBurst, NoCoCitedPapers };

std::string_view to_string(PrinceAbsence reason);
std::optional<PrinceAbsence> parse_prince_absence(std::string_view name);

struct TriadOptions {
  // Co-citations are counted from citers published up to this year;
  // defaults to the corpus y_max.
  std::optional<int> cocitation_cutoff;
  // Prince candidates need year < awakening_year (or <= when set).
  bool prince_year_inclusive = false;
  // Storyteller window is [y_pr, awakening_year] (or [y_pr, awakening_year - 1]).
  bool st_end_inclusive = true;
};

struct PrinceRecord {
  PaperIdx sb = 0;
  std::optional<PaperIdx> prince;
  std::uint32_t co_citation_count = 0;
  std::optional<int> y_pr;
  PrinceAbsence absence = PrinceAbsence::None;

  friend bool operator==(const PrinceRecord&, const PrinceRecord&) = default;
};

struct TriadRecord {
  PaperIdx sb = 0;
  int awakening_year = 0;
  PrinceRecord prince;
  std::vector<PaperIdx> storytellers;  // (year, id) order
  std::uint32_t c_sb_window = 0;
  std::uint32_t c_pr_window = 0;

  bool has_prince() const noexcept { return prince.prince.has_value(); }

  friend bool operator==(const TriadRecord&, const TriadRecord&) = default;
};

// All lists are in (year, id) order.
struct GroupPartition {
  std::vector<PaperIdx> sb_only;
  std::vector<PaperIdx> pr_only;
  std::vector<PaperIdx> both;
};

// Distinct papers published up to `cutoff_year` citing both a and b.
// Throws Error{SamePaper} when a == b.
std::uint32_t co_citation_count(const CorpusIndex& index, PaperIdx a, PaperIdx b, int cutoff_year);
std::uint32_t co_citation_count(const CorpusIndex& index, std::string_view a, std::string_view b,
                                int cutoff_year);

PrinceRecord find_prince(const CorpusIndex& index, PaperIdx sb, int awakening_year,
                         const TriadOptions& options = {});
inline PrinceRecord find_prince(const CorpusIndex& index, const SleepingBeautyRecord& sb,
                                const TriadOptions& options = {}) {
  return find_prince(index, sb.paper, sb.beauty.awakening_year, options);
}

// The [y_pr, awakening_year] window shared by storytellers, window counts
// and group partitions; nullopt when it is empty.
std::optional<YearWindow> triad_window(int y_pr, int awakening_year, const TriadOptions& options = {});

// Throws Error{NoPrince} when the record has no Prince.
std::vector<PaperIdx> find_storytellers(const CorpusIndex& index, const PrinceRecord& prince,
                                        int awakening_year, const TriadOptions& options = {});

TriadRecord build_triad(const CorpusIndex& index, PaperIdx sb, int awakening_year,
                        const TriadOptions& options = {});

// Throws Error{NoPrince}.
GroupPartition partition_groups(const CorpusIndex& index, const TriadRecord& triad,
                                const TriadOptions& options = {});

// One triad per Sleeping Beauty, in input order.
std::vector<TriadRecord> extract_triads(const CorpusIndex& index, std::span<const SleepingBeautyRecord> sbs,
                                        const TriadOptions& options = {});

}  // namespace dorm
