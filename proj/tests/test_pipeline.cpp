#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "dorm/pipeline.hpp"
#include "json.hpp"

using namespace dorm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("dorm_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

PipelineConfig config_in(const fs::path& dir) {
  PipelineConfig cfg;
  cfg.output_dir = dir;
  cfg.papers = dir / "papers.tsv";
  cfg.citations = dir / "citations.tsv";
  cfg.n_papers = 6000;
  cfg.plant = 3;
  cfg.seed = 7;
  return cfg;
}

struct Run {
  int code;
  std::string out, err;
};

template <typename Cmd>
Run run(Cmd cmd, const PipelineConfig& cfg) {
  std::ostringstream out, err;
  const int code = cmd(cfg, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> artifacts(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = slurp(e.path());
  return out;
}

void full_run(const PipelineConfig& cfg) {
  REQUIRE(run(cmd_simulate, cfg).code == kExitOk);
  REQUIRE(run(cmd_ingest, cfg).code == kExitOk);
  REQUIRE(run(cmd_detect, cfg).code == kExitOk);
  REQUIRE(run(cmd_analyze, cfg).code == kExitOk);
}

}  // namespace

TEST_CASE("end-to-end pipeline") {
  TempDir a("a"), b("b");
  auto cfg_a = config_in(a.path);
  auto cfg_b = config_in(b.path);
  cfg_b.workers = 3;
  full_run(cfg_a);
  full_run(cfg_b);

  SUBCASE("reruns are byte-identical") {
    const auto first = artifacts(a.path);
    CHECK(first.size() == 11);
    CHECK(first == artifacts(b.path));
    REQUIRE(run(cmd_detect, cfg_a).code == kExitOk);
    REQUIRE(run(cmd_analyze, cfg_a).code == kExitOk);
    CHECK(artifacts(a.path) == first);
  }

  SUBCASE("planted triads are detected with their princes") {
    const auto truth = nlohmann::json::parse(slurp(a.path / "ground_truth.json"));
    std::map<std::string, std::string> prince_of;
    std::ifstream in(a.path / "triads.jsonl");
    std::string line;
    while (std::getline(in, line)) {
      const auto rec = nlohmann::json::parse(line);
      if (rec.contains("provenance")) continue;
      prince_of[rec.at("sb_id")] = rec.at("pr_id").is_null() ? "" : rec.at("pr_id").get<std::string>();
    }
    REQUIRE(truth.at("triads").size() == 3);
    for (const auto& t : truth.at("triads")) CHECK(prince_of[t.at("sb_id")] == t.at("pr_id"));
  }

  SUBCASE("artifacts carry provenance") {
    const auto ratios = slurp(a.path / "ratios.csv");
    CHECK(ratios.rfind("# tool=dorm", 0) == 0);
    CHECK(ratios.find("corpus.dorm=crc32:") != std::string::npos);
    CHECK(ratios.find("triads.jsonl=crc32:") != std::string::npos);
    CHECK(ratios.find(cfg_a.hash()) != std::string::npos);
    const auto prop = nlohmann::json::parse(slurp(a.path / "propagation.json"));
    CHECK(prop.at("rows").size() == 3);
    CHECK(prop.at("rows")[2].at("e_nsb") == 1.0);
  }

  SUBCASE("case study history matches the triad windows") {
    const auto truth = nlohmann::json::parse(slurp(a.path / "ground_truth.json"));
    const auto& planted = truth.at("triads")[0];
    cfg_a.sb_id = planted.at("sb_id");
    const auto r = run(cmd_case_study, cfg_a);
    REQUIRE(r.code == kExitOk);
    const auto index = load_index(cfg_a.index_path());
    std::ifstream tin(cfg_a.triads_path());
    const auto triads = read_triads_jsonl(tin, index);
    const auto& triad =
        *std::find_if(triads.begin(), triads.end(), [&](const TriadRecord& t) { return index.id(t.sb) == cfg_a.sb_id; });
    const auto rows = case_history(index, triad, 2020);
    std::uint32_t sb_sum = 0, pr_sum = 0, st_sum = 0;
    for (const auto& row : rows) {
      const bool inside = row.year >= *triad.prince.y_pr && row.year <= triad.awakening_year;
      if (!inside) CHECK(*row.st_count == 0);
      if (inside) sb_sum += row.sb_citations, pr_sum += *row.pr_citations, st_sum += *row.st_count;
    }
    CHECK(sb_sum == triad.c_sb_window);
    CHECK(pr_sum == triad.c_pr_window);
    CHECK(st_sum == triad.storytellers.size());
    CHECK(slurp(a.path / "history.csv").find("year,sb_citations,pr_citations,st_count,is_y_pr,is_awakening_year") !=
          std::string::npos);

    cfg_a.sb_id = "W9999999";
    CHECK(run(cmd_case_study, cfg_a).code == kExitFatal);
  }

  SUBCASE("strict filters leave empty tables with a warning") {
    cfg_a.min_csb = 100000;
    cfg_a.min_cpr = 100000;
    const auto r = run(cmd_analyze, cfg_a);
    CHECK(r.code == kExitWarning);
    const auto prop = nlohmann::json::parse(slurp(a.path / "propagation.json"));
    for (const auto& row : prop.at("rows")) CHECK(row.at("n_triads") == 0);
  }
}

TEST_CASE("subcommand failures and warnings") {
  TempDir d("errors");
  auto cfg = config_in(d.path);
  cfg.n_papers = 200;
  cfg.plant = 0;
  REQUIRE(run(cmd_simulate, cfg).code == kExitOk);

  SUBCASE("missing citations file") {
    auto missing = cfg;
    missing.citations = d.path / "nope.tsv";
    const auto r = run(cmd_ingest, missing);
    CHECK(r.code == kExitFatal);
    CHECK(r.err.find("nope.tsv") != std::string::npos);
  }
  SUBCASE("missing index") {
    CHECK(run(cmd_detect, cfg).code == kExitFatal);
    CHECK(run(cmd_analyze, cfg).code == kExitFatal);
  }
  SUBCASE("dirty input warns but succeeds") {
    std::ofstream(cfg.citations, std::ios::app) << "W0000100\tW0000100\nW0000100\tGHOST\n";
    const auto r = run(cmd_ingest, cfg);
    CHECK(r.code == kExitOk);
    const auto report = nlohmann::json::parse(r.out);
    CHECK(report.at("citations").at("dangling") == 1);
    CHECK(report.at("citations").at("self_citations") == 1);
  }
  SUBCASE("no qualifying papers") {
    std::ofstream(cfg.papers) << "id\tyear\tdoc_type\tfield_code\nR1\t1990\treview\t0\nR2\t1995\treview\t0\n";
    std::ofstream(cfg.citations) << "citing\tcited\nR2\tR1\n";
    REQUIRE(run(cmd_ingest, cfg).code == kExitOk);
    const auto r = run(cmd_detect, cfg);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("sleeping_beauties=0") != std::string::npos);
    CHECK(run(cmd_analyze, cfg).code == kExitWarning);
  }
  SUBCASE("sb without a prince") {
    std::ofstream(cfg.papers) << "id\tyear\tdoc_type\tfield_code\nSB\t1970\tarticle\t0\nC1\t2015\tarticle\t0\n";
    std::ofstream(cfg.citations) << "citing\tcited\nC1\tSB\n";
    REQUIRE(run(cmd_ingest, cfg).code == kExitOk);
    REQUIRE(run(cmd_detect, cfg).code == kExitOk);
    cfg.sb_id = "SB";
    const auto r = run(cmd_case_study, cfg);
    CHECK(r.code == kExitOk);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(slurp(d.path / "history.csv").find("\n1970,0,,,0,0\n") != std::string::npos);
  }
  SUBCASE("invalid settings") {
    cfg.citation_pct = 1.5;
    CHECK(run(cmd_detect, cfg).code == kExitFatal);
    cfg.citation_pct = 0.95;
    cfg.workers = 0;
    CHECK(run(cmd_simulate, cfg).code == kExitFatal);
  }
  SUBCASE("infeasible plant") {
    cfg.plant = 1;
    cfg.sleep = 70;
    CHECK(run(cmd_simulate, cfg).code == kExitFatal);
  }
}

TEST_CASE("config hash covers analysis settings only") {
  PipelineConfig base;
  auto moved = base;
  moved.output_dir = "/elsewhere";
  moved.workers = 8;
  moved.papers = "other.tsv";
  CHECK(moved.hash() == base.hash());
  auto changed = base;
  changed.b_pct = 0.98;
  CHECK(changed.hash() != base.hash());
  CHECK(base.hash().size() == 8);
}
