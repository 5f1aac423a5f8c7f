#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dorm/corpus.hpp"
#include "dorm/error.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace dorm;
using dorm::test::HandCorpus;

namespace {

const char* kPaperHeader = "id\tyear\tdoc_type\tfield_code\n";
const char* kEdgeHeader = "citing\tcited\n";

PaperTable papers_from(const std::string& body) {
  std::istringstream in(kPaperHeader + body);
  return ingest_papers(in);
}

EdgeTable edges_from(const std::string& body, const std::vector<PaperRecord>& papers) {
  std::istringstream in(kEdgeHeader + body);
  return ingest_citations(in, papers);
}

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected dorm::Error");
  return Errc::Io;
}

HandCorpus star() {
  HandCorpus c;
  c.paper("P1", 1990);
  for (int i = 2; i <= 6; ++i) c.paper("P" + std::to_string(i), 1990 + i);
  for (int i = 2; i <= 6; ++i) c.cite("P" + std::to_string(i), "P1");
  return c;
}

}  // namespace

TEST_CASE("doc types parse case-insensitively and default to Other") {
  CHECK(parse_doc_type("Article") == DocType::Article);
  CHECK(parse_doc_type("CONFERENCE_PAPER") == DocType::ConferencePaper);
  CHECK(parse_doc_type("review") == DocType::Review);
  CHECK(parse_doc_type("editorial") == DocType::Other);
  CHECK_FALSE(parse_doc_type("").has_value());
  CHECK_THROWS_AS(YearWindow(2000, 1999), std::invalid_argument);
}

TEST_CASE("paper ingest") {
  SUBCASE("empty body") {
    const auto t = papers_from("");
    CHECK(t.records.empty());
    CHECK_FALSE(t.report.has_warnings());
  }
  SUBCASE("unparseable year is skipped and counted") {
    const auto t = papers_from("P1\t1990\tarticle\t1\nP2\tunknown\tarticle\t1\nP3\t1991\treview\t2\nP4\t1992\tarticle\t1\n");
    CHECK(t.records.size() == 3);
    CHECK(t.report.malformed == 1);
    CHECK(t.report.lines == 4);
  }
  SUBCASE("duplicate id is fatal") {
    CHECK(error_code([] { papers_from("P1\t1990\tarticle\t1\nP1\t1991\tarticle\t1\n"); }) == Errc::DuplicateId);
  }
  SUBCASE("out-of-range years are dropped") {
    const auto t = papers_from("P1\t1960\tarticle\t1\nP2\t2021\tarticle\t1\nP3\t2020\tarticle\t1\n");
    CHECK(t.records.size() == 1);
    CHECK(t.report.out_of_range == 2);
  }
  SUBCASE("comments and CRLF") {
    std::istringstream in(std::string("# generated\r\n") + "id\tyear\tdoc_type\tfield_code\r\nP1\t1990\tarticle\t3\r\n");
    const auto t = ingest_papers(in);
    REQUIRE(t.records.size() == 1);
    CHECK(t.records[0] == PaperRecord{"P1", 1990, DocType::Article, 3});
  }
  SUBCASE("bad header") {
    std::istringstream in("id,year\nP1,1990\n");
    CHECK(error_code([&] { ingest_papers(in); }) == Errc::MalformedHeader);
  }
}

TEST_CASE("citation ingest") {
  const auto papers = papers_from("P1\t1995\tarticle\t1\nP2\t1990\tarticle\t1\n").records;
  SUBCASE("edge year comes from the citing paper") {
    const auto t = edges_from("P1\tP2\n", papers);
    REQUIRE(t.edges.size() == 1);
    CHECK(t.edges[0] == CitationEdge{"P1", "P2", 1995});
  }
  SUBCASE("dangling endpoint") {
    const auto t = edges_from("P1\tPX\n", papers);
    CHECK(t.edges.empty());
    CHECK(t.report.dangling == 1);
  }
  SUBCASE("repeated edge") {
    const auto t = edges_from("P1\tP2\nP1\tP2\n", papers);
    CHECK(t.edges.size() == 1);
    CHECK(t.report.duplicates == 1);
  }
  SUBCASE("self citation") {
    const auto t = edges_from("P1\tP1\n", papers);
    CHECK(t.edges.empty());
    CHECK(t.report.self_citations == 1);
  }
  SUBCASE("bad header") {
    std::istringstream in("from\tto\n");
    CHECK(error_code([&] { ingest_citations(in, papers); }) == Errc::MalformedHeader);
  }
}

TEST_CASE("index construction") {
  SUBCASE("empty") {
    const auto index = build_index({}, {});
    CHECK(index.paper_count() == 0);
    CHECK(index.edge_count() == 0);
  }
  SUBCASE("star graph") {
    const auto index = star().index();
    const auto p1 = index.require("P1");
    CHECK(index.citers(p1).size() == 5);
    CHECK(index.references(p1).empty());
    CHECK(citers_of(index, "P1", YearWindow(1970, 2020)) == std::vector<std::string>{"P2", "P3", "P4", "P5", "P6"});
    CHECK(citers_of(index, "P1", YearWindow(2000, 2020)).empty());
    CHECK(citers_of(index, "P1", YearWindow(1993, 1994)) == std::vector<std::string>{"P3", "P4"});
    CHECK(error_code([&] { citers_of(index, "nope", YearWindow(1970, 2020)); }) == Errc::UnknownPaper);
  }
  SUBCASE("random corpus adjacency matches the raw edge list") {
    const auto c = test::random_corpus(1000, 8000, 7);
    const auto index = c.index();
    std::set<std::pair<std::string, std::string>> raw;
    for (const auto& e : c.edges) raw.emplace(e.citing, e.cited);

    std::set<std::pair<std::string, std::string>> out, in;
    for (PaperIdx p = 0; p < index.paper_count(); ++p) {
      for (PaperIdx q : index.references(p)) out.emplace(index.id(p), index.id(q));
      const auto citers = index.citers(p);
      CHECK(std::is_sorted(citers.begin(), citers.end(),
                           [&](PaperIdx a, PaperIdx b) { return index.citer_less(a, b); }));
      for (PaperIdx q : citers) in.emplace(index.id(q), index.id(p));
    }
    CHECK(out == raw);
    CHECK(in == raw);
    CHECK(index.edge_count() == raw.size());
  }
  SUBCASE("ids are stored in ascending order") {
    const auto index = test::random_corpus(200, 0, 3).index();
    for (PaperIdx p = 1; p < index.paper_count(); ++p) CHECK(index.id(p - 1) < index.id(p));
  }
  SUBCASE("deterministic for identical input") {
    const auto c = test::random_corpus(300, 2000, 11);
    CHECK(c.index() == c.index());
  }
}

TEST_CASE("citers_of agrees with a linear scan on random windows") {
  const auto c = test::random_corpus(1000, 8000, 19);
  const auto index = c.index();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, c.papers.size() - 1);
  std::uniform_int_distribution<int> year(1965, 2025);
  for (int trial = 0; trial < 300; ++trial) {
    const auto& id = c.papers[pick(rng)].id;
    int lo = year(rng), hi = year(rng);
    if (lo > hi) std::swap(lo, hi);
    const auto expected = test::raw_citers(c.edges, id, lo, hi);
    const auto got = citers_of(index, id, YearWindow(lo, hi));
    CHECK(std::set<std::string>(got.begin(), got.end()) == expected);
    CHECK(got.size() == expected.size());
  }
}

TEST_CASE("yearly citation series") {
  SUBCASE("uncited paper") {
    const auto s = yearly_citation_series(star().index(), "P6", 2000);
    CHECK(s.pub_year == 1996);
    CHECK(s.counts == std::vector<std::uint32_t>(5, 0));
  }
  SUBCASE("five citers four years later") {
    HandCorpus c;
    c.paper("SB", 2000);
    for (int i = 0; i < 5; ++i) c.paper("C" + std::to_string(i), 2004).cite("C" + std::to_string(i), "SB");
    CHECK(yearly_citation_series(c.index(), "SB", 2004).counts == std::vector<std::uint32_t>{0, 0, 0, 0, 5});
  }
  SUBCASE("horizon before publication") {
    CHECK(error_code([] { yearly_citation_series(star().index(), "P6", 1990); }) == Errc::InfeasibleConfig);
  }
  SUBCASE("random corpus matches a group-by of edge years") {
    auto c = test::random_corpus(500, 4000, 23);
    const auto index = c.index();
    std::map<std::string, int> year_of;
    for (const auto& p : c.papers) year_of[p.id] = p.year;
    std::map<std::string, std::map<int, std::uint32_t>> grouped;
    for (const auto& e : c.edges) ++grouped[e.cited][std::max(e.year, year_of[e.cited])];

    for (PaperIdx p = 0; p < index.paper_count(); ++p) {
      const auto s = yearly_citation_series(index, p, 2020);
      REQUIRE(s.counts.size() == static_cast<std::size_t>(2020 - s.pub_year + 1));
      std::uint64_t total = 0;
      for (std::size_t t = 0; t < s.counts.size(); ++t) {
        total += s.counts[t];
        const auto& g = grouped[index.id(p)];
        auto it = g.find(s.pub_year + static_cast<int>(t));
        CHECK(s.counts[t] == (it == g.end() ? 0u : it->second));
      }
      CHECK(total == index.citers(p).size());
    }
  }
}

TEST_CASE("index persistence") {
  auto roundtrip = [](const CorpusIndex& index) {
    std::stringstream buf;
    save_index(index, buf);
    return std::pair{buf.str(), load_index(buf)};
  };
  SUBCASE("empty index") {
    const CorpusIndex empty = build_index({}, {});
    CHECK(roundtrip(empty).second == empty);
  }
  SUBCASE("random corpus re-saves byte-identically") {
    const auto index = test::random_corpus(1000, 8000, 31).index();
    const auto [bytes, loaded] = roundtrip(index);
    CHECK(loaded == index);
    std::stringstream again;
    save_index(loaded, again);
    CHECK(again.str() == bytes);
  }
  SUBCASE("truncation and corruption") {
    const auto bytes = roundtrip(star().index()).first;
    for (std::size_t cut : {std::size_t{3}, bytes.size() / 2, bytes.size() - 1}) {
      std::istringstream in(bytes.substr(0, cut));
      CHECK(error_code([&] { load_index(in); }) == Errc::CorruptFile);
    }
    auto flipped = bytes;
    flipped[bytes.size() / 2] ^= 0x40;
    std::istringstream in(flipped);
    CHECK(error_code([&] { load_index(in); }) == Errc::CorruptFile);
  }
  SUBCASE("version byte") {
    auto bytes = roundtrip(star().index()).first;
    bytes[4] = static_cast<char>(kIndexFormatVersion + 1);
    std::istringstream in(bytes);
    CHECK(error_code([&] { load_index(in); }) == Errc::VersionMismatch);
  }
}
