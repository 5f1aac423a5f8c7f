#pragma once

// Citation corpus: flat-file ingest, the immutable bidirectional CSR index,
// and its binary persistence format.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dorm/error.hpp"

namespace dorm {

using PaperIdx = std::uint32_t;

enum class DocType : std::uint8_t { Article = 0, ConferencePaper = 1, Review = 2, Other = 3 };

std::string_view to_string(DocType type);
// Case-insensitive. Unknown non-empty names map to Other; empty yields nullopt.
std::optional<DocType> parse_doc_type(std::string_view name);

// Inclusive calendar-year interval.
class YearWindow {
 public:
  YearWindow(int start, int end);

  int start() const noexcept { return start_; }
  int end() const noexcept { return end_; }
  bool contains(int year) const noexcept { return year >= start_ && year <= end_; }

  friend bool operator==(const YearWindow&, const YearWindow&) = default;

 private:
  int start_;
  int end_;
};

inline const YearWindow kDefaultCorpusRange{1970, 2020};

struct PaperRecord {
  std::string id;
  int year = 0;
  DocType doc_type = DocType::Other;
  int field_code = 0;

  friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

struct CitationEdge {
  std::string citing;
  std::string cited;
  int year = 0;  // publication year of the citing paper

  friend bool operator==(const CitationEdge&, const CitationEdge&) = default;
};

struct IngestReport {
  std::size_t lines = 0;           // data lines seen (header and comments excluded)
  std::size_t records = 0;         // rows kept
  std::size_t malformed = 0;       // unparseable rows skipped
  std::size_t out_of_range = 0;    // papers outside the corpus year range
  std::size_t dangling = 0;        // edges with an unknown endpoint
  std::size_t duplicates = 0;      // repeated edges
  std::size_t self_citations = 0;  // citing == cited

  bool has_warnings() const noexcept {
    return malformed + out_of_range + dangling + duplicates + self_citations > 0;
  }
};

struct PaperTable {
  std::vector<PaperRecord> records;
  IngestReport report;
};

struct EdgeTable {
  std::vector<CitationEdge> edges;
  IngestReport report;
};

// Parses `id<TAB>year<TAB>doc_type<TAB>field_code`. Leading `#` lines are
// comments. Throws Error{MalformedHeader} or Error{DuplicateId}.
PaperTable ingest_papers(std::istream& source, YearWindow range = kDefaultCorpusRange);

// Parses `citing<TAB>cited`; drops dangling, self and repeated edges and
// stamps each edge with its citing paper's year.
EdgeTable ingest_citations(std::istream& source, std::span<const PaperRecord> papers);

class CorpusIndex;
CorpusIndex build_index(std::span<const PaperRecord> papers, std::span<const CitationEdge> edges,
                        YearWindow range = kDefaultCorpusRange);

// Papers are stored in ascending id order, so PaperIdx order equals id order.
// Out-lists are sorted by PaperIdx, in-lists by (citer year, PaperIdx).
class CorpusIndex {
 public:
  CorpusIndex() = default;

  std::size_t paper_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return out_targets_.size(); }
  YearWindow range() const noexcept { return range_; }

  std::optional<PaperIdx> find(std::string_view id) const;
  // Throws Error{UnknownPaper}.
  PaperIdx require(std::string_view id) const;

  const std::string& id(PaperIdx p) const { return ids_[p]; }
  int year(PaperIdx p) const { return years_[p]; }
  DocType doc_type(PaperIdx p) const { return doc_types_[p]; }
  int field_code(PaperIdx p) const { return fields_[p]; }
  PaperRecord record(PaperIdx p) const;

  std::span<const PaperIdx> references(PaperIdx p) const {
    return {out_targets_.data() + out_offsets_[p], out_targets_.data() + out_offsets_[p + 1]};
  }
  std::span<const PaperIdx> citers(PaperIdx p) const {
    return {in_sources_.data() + in_offsets_[p], in_sources_.data() + in_offsets_[p + 1]};
  }
  // Contiguous slice of citers(p) whose year lies in the window.
  std::span<const PaperIdx> citers_in(PaperIdx p, YearWindow window) const;
  // Citers strictly after `year`.
  std::span<const PaperIdx> citers_after(PaperIdx p, int year) const;

  // Strict (year, idx) order used by every in-list.
  bool citer_less(PaperIdx a, PaperIdx b) const noexcept {
    return years_[a] != years_[b] ? years_[a] < years_[b] : a < b;
  }

  friend bool operator==(const CorpusIndex&, const CorpusIndex&) = default;

 private:
  friend CorpusIndex build_index(std::span<const PaperRecord>, std::span<const CitationEdge>, YearWindow);
  friend void save_index(const CorpusIndex&, std::ostream&);
  friend CorpusIndex load_index(std::istream&);

  YearWindow range_ = kDefaultCorpusRange;
  std::vector<std::string> ids_;
  std::vector<std::int32_t> years_;
  std::vector<DocType> doc_types_;
  std::vector<std::int32_t> fields_;
  std::vector<std::uint64_t> out_offsets_{0};
  std::vector<PaperIdx> out_targets_;
  std::vector<std::uint64_t> in_offsets_{0};
  std::vector<PaperIdx> in_sources_;
};

// Ids of citers of `id` published inside the window, in (year, id) order.
std::vector<std::string> citers_of(const CorpusIndex& index, std::string_view id, YearWindow window);

struct CitationSeries {
  int pub_year = 0;
  std::vector<std::uint32_t> counts;  // counts[t]: citers published in pub_year + t

  friend bool operator==(const CitationSeries&, const CitationSeries&) = default;
};

// Throws Error{UnknownPaper}; horizon before the publication year yields an
// InfeasibleConfig error.
CitationSeries yearly_citation_series(const CorpusIndex& index, PaperIdx paper, int horizon_year);
CitationSeries yearly_citation_series(const CorpusIndex& index, std::string_view id, int horizon_year);

// Binary format: "DORM", version byte, little-endian payload, CRC-32 trailer.
inline constexpr std::uint8_t kIndexFormatVersion = 1;

void save_index(const CorpusIndex& index, std::ostream& out);
void save_index(const CorpusIndex& index, const std::filesystem::path& path);
CorpusIndex load_index(std::istream& in);
CorpusIndex load_index(const std::filesystem::path& path);

}  // namespace dorm
