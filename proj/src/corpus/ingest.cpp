#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "dorm/corpus.hpp"

namespace dorm {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::UnknownPaper: return "UnknownPaper";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::CorruptFile: return "CorruptFile";
    case Errc::EmptySeries: return "EmptySeries";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::SamePaper: return "SamePaper";
    case Errc::NoPrince: return "NoPrince";
    case Errc::EmptySamples: return "EmptySamples";
    case Errc::NonPositiveBandwidth: return "NonPositiveBandwidth";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::InfeasibleConfig: return "InfeasibleConfig";
    case Errc::InfeasibleSpec: return "InfeasibleSpec";
    case Errc::UnknownSb: return "UnknownSb";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(DocType type) {
  switch (type) {
    case DocType::Article: return "article";
    case DocType::ConferencePaper: return "conference_paper";
    case DocType::Review: return "review";
    case DocType::Other: return "other";
  }
  return "other";
}

std::optional<DocType> parse_doc_type(std::string_view name) {
  if (name.empty()) return std::nullopt;
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "article") return DocType::Article;
  if (lower == "conference_paper") return DocType::ConferencePaper;
  if (lower == "review") return DocType::Review;
  return DocType::Other;
}

YearWindow::YearWindow(int start, int end) : start_(start), end_(end) {
  if (start > end) {
    throw std::invalid_argument("YearWindow start " + std::to_string(start) + " after end " +
                                std::to_string(end));
  }
}

namespace {

// Reads the next non-comment line; strips a trailing CR.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') continue;
    return true;
  }
  return false;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
std::optional<T> parse_int(std::string_view text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

void expect_header(std::istream& in, std::string_view expected) {
  std::string line;
  if (!next_line(in, line) || line != expected) {
    throw Error(Errc::MalformedHeader, "expected header '" + std::string(expected) + "'");
  }
}

}  // namespace

PaperTable ingest_papers(std::istream& source, YearWindow range) {
  expect_header(source, "id\tyear\tdoc_type\tfield_code");

  PaperTable table;
  std::unordered_set<std::string> seen;
  std::string line;
  while (next_line(source, line)) {
    if (line.empty()) continue;
    ++table.report.lines;
    auto cols = split_tabs(line);
    if (cols.size() != 4 || cols[0].empty()) {
      ++table.report.malformed;
      continue;
    }
    auto year = parse_int<int>(cols[1]);
    auto type = parse_doc_type(cols[2]);
    auto field = parse_int<int>(cols[3]);
    if (!year || !type || !field) {
      ++table.report.malformed;
      continue;
    }
    std::string id(cols[0]);
    if (!seen.insert(id).second) throw Error(Errc::DuplicateId, id);
    if (!range.contains(*year)) {
      ++table.report.out_of_range;
      continue;
    }
    table.records.push_back(PaperRecord{std::move(id), *year, *type, *field});
  }
  table.report.records = table.records.size();
  return table;
}

EdgeTable ingest_citations(std::istream& source, std::span<const PaperRecord> papers) {
  expect_header(source, "citing\tcited");

  std::unordered_map<std::string_view, std::uint32_t> position;
  position.reserve(papers.size());
  for (std::uint32_t i = 0; i < papers.size(); ++i) position.emplace(papers[i].id, i);

  EdgeTable table;
  std::unordered_set<std::uint64_t> seen;
  std::string line;
  while (next_line(source, line)) {
    if (line.empty()) continue;
    ++table.report.lines;
    auto cols = split_tabs(line);
    if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
      ++table.report.malformed;
      continue;
    }
    if (cols[0] == cols[1]) {
      ++table.report.self_citations;
      continue;
    }
    auto citing = position.find(cols[0]);
    auto cited = position.find(cols[1]);
    if (citing == position.end() || cited == position.end()) {
      ++table.report.dangling;
      continue;
    }
    std::uint64_t key = (std::uint64_t{citing->second} << 32) | cited->second;
    if (!seen.insert(key).second) {
      ++table.report.duplicates;
      continue;
    }
    const auto& from = papers[citing->second];
    table.edges.push_back(CitationEdge{from.id, papers[cited->second].id, from.year});
  }
  table.report.records = table.edges.size();
  return table;
}

}  // namespace dorm
