#include <omp.h>

#include <fstream>
#include <algorithm>
#include <iomanip>
#include <sstream>
#include <ostream>

#include "dorm/pipeline.hpp"
#include "json.hpp"

namespace dorm {

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open input file " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot open output file " + path.string());
  return out;
}

Provenance provenance_for(const PipelineConfig& config, std::initializer_list<fs::path> inputs) {
  Provenance p;
  p.config_hash = config.hash();
  for (const auto& path : inputs) p.inputs.emplace_back(path.filename().string(), file_checksum(path));
  return p;
}

nlohmann::ordered_json report_json(const IngestReport& r) {
  return {{"lines", r.lines},       {"records", r.records},       {"malformed", r.malformed},
          {"out_of_range", r.out_of_range}, {"dangling", r.dangling}, {"duplicates", r.duplicates},
          {"self_citations", r.self_citations}};
}

// Shared error boundary for every subcommand.
template <typename Body>
int guarded(const PipelineConfig& config, std::ostream& err, Body&& body) {
  try {
    config.validate();
    omp_set_num_threads(config.workers);
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFatal;
  }
}

std::string cell(const std::optional<double>& v) {
  if (!v) return "n/a";
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << *v;
  return s.str();
}

}  // namespace

int cmd_ingest(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(config, err, [&] {
    auto papers_in = open_input(config.papers);
    auto citations_in = open_input(config.citations);
    auto papers = ingest_papers(papers_in, config.corpus_range());
    auto edges = ingest_citations(citations_in, papers.records);
    const auto index = build_index(papers.records, edges.edges, config.corpus_range());
    const auto path = config.index_path();
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    save_index(index, path);

    nlohmann::ordered_json report;
    report["papers"] = report_json(papers.report);
    report["citations"] = report_json(edges.report);
    report["index"] = {{"papers", index.paper_count()}, {"edges", index.edge_count()}};
    out << report.dump() << '\n';
    if (papers.report.has_warnings() || edges.report.has_warnings()) {
      err << "warning: some input rows were skipped; see the report counts\n";
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_detect(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(config, err, [&] {
    const auto index_path = config.index_path();
    const auto index = load_index(index_path);
    const auto prov = provenance_for(config, {index_path});

    std::vector<SleepingBeautyRecord> sbs;
    int code = kExitOk;
    if (index.paper_count() == 0) {
      err << "warning: index holds no papers\n";
      code = kExitWarning;
    } else {
      sbs = select_sleeping_beauties(index, config.selection());
    }
    const auto triads = extract_triads(index, sbs, config.triad_options());

    auto sb_out = open_output(config.output_dir / "sb.jsonl");
    write_sb_jsonl(sb_out, index, sbs, prov);
    auto triad_out = open_output(config.output_dir / "triads.jsonl");
    write_triads_jsonl(triad_out, index, triads, prov);

    std::size_t with_prince = 0, no_citations = 0, no_cocited = 0;
    for (const auto& t : triads) {
      switch (t.prince.absence) {
        case PrinceAbsence::None: ++with_prince; break;
        case PrinceAbsence::NoCitationsBeforeBurst: ++no_citations; break;
        case PrinceAbsence::NoCoCitedPapers: ++no_cocited; break;
      }
    }
    out << "sleeping_beauties=" << sbs.size() << " princes=" << with_prince
        << " no_citations_before_burst=" << no_citations << " no_co_cited_papers=" << no_cocited << '\n';
    return code;
  });
}

int cmd_analyze(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(config, err, [&] {
    const auto index_path = config.index_path();
    const auto triads_path = config.triads_path();
    const auto index = load_index(index_path);
    auto triads_in = open_input(triads_path);
    const auto triads = read_triads_jsonl(triads_in, index);
    const auto prov = provenance_for(config, {index_path, triads_path});
    int code = kExitOk;

    const auto samples = storyteller_ratios(triads, config.ratio_filter());
    auto ratios_out = open_output(config.output_dir / "ratios.csv");
    write_ratios_csv(ratios_out, index, samples, prov);

    auto write_density = [&](const char* name, bool sb_side) {
      std::vector<double> values;
      for (const auto& s : samples) {
        const auto& v = sb_side ? s.st_over_csb : s.st_over_cpr;
        if (v) values.push_back(*v);
      }
      std::vector<std::pair<double, double>> grid;
      if (values.empty()) {
        err << "warning: no ratio samples for " << name << "\n";
        code = kExitWarning;
      } else {
        grid = gaussian_kde(std::move(values), config.kde_bandwidth, Interval{0.0, 1.0}).grid_export(config.kde_points);
      }
      auto f = open_output(config.output_dir / name);
      write_kde_csv(f, grid, prov);
    };
    write_density("kde_grid.csv", true);
    write_density("kde_grid_pr.csv", false);

    std::map<std::uint32_t, double> pmf;
    try {
      pmf = st_count_pmf(triads, config.ratio_filter());
    } catch (const Error& e) {
      if (e.code() != Errc::EmptyInput) throw;
      err << "warning: " << e.what() << '\n';
      code = kExitWarning;
    }
    auto pmf_out = open_output(config.output_dir / "st_pmf.csv");
    write_pmf_csv(pmf_out, pmf, prov);

    const auto options = config.propagation_options();
    const auto table = propagation_table(index, triads, options);
    auto prop_out = open_output(config.output_dir / "propagation.json");
    write_propagation_json(prop_out, table, options, prov);

    const auto means = mean_ratios(samples);
    out << "mean ST/C_sb = " << cell(means.st_over_csb) << " (n=" << means.n_csb << ")\n";
    out << "mean ST/C_pr = " << cell(means.st_over_cpr) << " (n=" << means.n_cpr << ")\n";
    out << std::left << std::setw(14) << "group" << std::setw(10) << "E_SB" << std::setw(10) << "E_PR"
        << std::setw(10) << "E_|N_sb|" << "n_triads\n";
    for (const auto& row : table) {
      out << std::left << std::setw(14) << to_string(row.group) << std::setw(10) << cell(row.e_sb) << std::setw(10)
          << cell(row.e_pr) << std::setw(10) << cell(row.e_nsb) << row.n_triads << '\n';
    }
    if (table[0].n_triads + table[1].n_triads + table[2].n_triads == 0) {
      err << "warning: no triads pass the propagation filter\n";
      code = kExitWarning;
    }
    return code;
  });
}

int cmd_case_study(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(config, err, [&] {
    if (config.sb_id.empty()) throw std::invalid_argument("case-study needs --sb <id>");
    const auto index_path = config.index_path();
    const auto triads_path = config.triads_path();
    const auto index = load_index(index_path);
    auto triads_in = open_input(triads_path);
    const auto triads = read_triads_jsonl(triads_in, index);
    const auto sb = index.find(config.sb_id);
    auto it = std::find_if(triads.begin(), triads.end(), [&](const TriadRecord& t) { return sb && t.sb == *sb; });
    if (it == triads.end()) throw Error(Errc::UnknownSb, config.sb_id + " is not in " + triads_path.string());

    const auto rows = case_history(index, *it, config.horizon.value_or(index.range().end()));
    auto f = open_output(config.output_dir / "history.csv");
    write_history_csv(f, rows, provenance_for(config, {index_path, triads_path}));
    if (!it->has_prince()) {
      err << "warning: " << config.sb_id << " has no Prince (" << to_string(it->prince.absence)
          << "); PR and ST columns left empty\n";
    }
    out << "history rows=" << rows.size() << " storytellers=" << it->storytellers.size() << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_simulate(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(config, err, [&] {
    auto corpus = generate_ca_corpus(config.synth_config());
    for (std::size_t k = 0; k < config.plant; ++k) plant_triad(corpus, config.plant_spec());

    auto papers_out = open_output(config.output_dir / "papers.tsv");
    write_papers_tsv(corpus, papers_out);
    auto citations_out = open_output(config.output_dir / "citations.tsv");
    write_citations_tsv(corpus, citations_out);
    auto truth_out = open_output(config.output_dir / "ground_truth.json");
    truth_out << ground_truth_json(corpus);
    out << "seed=" << config.seed << " papers=" << corpus.papers.size() << " edges=" << corpus.edges.size()
        << " planted=" << corpus.planted.size() << '\n';
    return static_cast<int>(kExitOk);
  });
}

}  // namespace dorm
