#pragma once

// Pipeline orchestration behind the `dorm` subcommands: configuration,
// artifact formats and the subcommand bodies themselves.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dorm/corpus.hpp"
#include "dorm/dynamics.hpp"
#include "dorm/stats.hpp"
#include "dorm/synth.hpp"
#include "dorm/triad.hpp"

namespace dorm {

inline constexpr std::string_view kToolVersion = "dorm 0.1.0";

enum ExitCode : int { kExitOk = 0, kExitWarning = 1, kExitFatal = 2 };

struct PipelineConfig {
  // Paths. Empty index/triads paths resolve inside output_dir.
  std::filesystem::path papers = "papers.tsv";
  std::filesystem::path citations = "citations.tsv";
  std::filesystem::path index;
  std::filesystem::path triads;
  std::filesystem::path output_dir = ".";

  int year_min = 1970;
  int year_max = 2020;

  // Sleeping Beauty selection.
  double citation_pct = 0.95;
  double b_pct = 0.99;
  std::optional<int> horizon;
  bool b_per_field = false;

  // Prince and Storytellers.
  std::optional<int> prince_cutoff;
  bool prince_year_inclusive = false;
  bool st_end_exclusive = false;

  // Statistics.
  std::uint32_t min_csb = 10;
  std::uint32_t min_cpr = 10;
  std::string ratio_mode = "either";
  std::string nsb_variant = "conjunctive";
  std::string aggregation = "macro";
  std::optional<double> kde_bandwidth;
  std::size_t kde_points = 512;

  // Simulation.
  std::size_t n_papers = 10000;
  std::uint32_t refs = 10;
  double k0 = 1.0;
  double half_life = 5.0;
  int fields = 4;
  std::uint64_t seed = 42;
  std::size_t plant = 3;
  int sleep = 20;
  std::uint32_t burst = 50;
  int burst_years = 5;
  std::uint32_t n_st = 6;
  std::uint32_t sb_only_pre = 5;
  std::uint32_t pr_only_pre = 5;

  // Case study.
  std::string sb_id;

  int workers = 1;

  // Throws std::invalid_argument on out-of-range settings.
  void validate() const;

  std::filesystem::path index_path() const;
  std::filesystem::path triads_path() const;
  YearWindow corpus_range() const { return YearWindow(year_min, year_max); }
  SelectionConfig selection() const;
  TriadOptions triad_options() const;
  RatioFilter ratio_filter() const;
  PropagationOptions propagation_options() const;
  SynthConfig synth_config() const;
  PlantSpec plant_spec() const;

  // Stable text of every output-affecting setting (paths and workers excluded).
  std::string canonical() const;
  std::string hash() const;
};

struct Provenance {
  std::string config_hash;
  std::vector<std::pair<std::string, std::string>> inputs;  // file name -> checksum

  std::string comment_line() const;  // "# ..." for CSV/TSV artifacts
  std::string json() const;          // compact JSON object
};

std::string file_checksum(const std::filesystem::path& path);
std::string format_real(double value);

void write_sb_jsonl(std::ostream& out, const CorpusIndex& index, std::span<const SleepingBeautyRecord> sbs,
                    const Provenance& provenance);
void write_triads_jsonl(std::ostream& out, const CorpusIndex& index, std::span<const TriadRecord> triads,
                        const Provenance& provenance);
// Skips the provenance line. Throws Error{CorruptFile} on malformed records
// and Error{UnknownPaper} for ids missing from the index.
std::vector<TriadRecord> read_triads_jsonl(std::istream& in, const CorpusIndex& index);

void write_ratios_csv(std::ostream& out, const CorpusIndex& index, std::span<const RatioSample> samples,
                      const Provenance& provenance);
void write_kde_csv(std::ostream& out, std::span<const std::pair<double, double>> grid, const Provenance& provenance);
void write_pmf_csv(std::ostream& out, const std::map<std::uint32_t, double>& pmf, const Provenance& provenance);
void write_propagation_json(std::ostream& out, const PropagationTable& table, const PropagationOptions& options,
                            const Provenance& provenance);

struct HistoryRow {
  int year = 0;
  std::uint32_t sb_citations = 0;
  std::optional<std::uint32_t> pr_citations;
  std::optional<std::uint32_t> st_count;
  bool is_y_pr = false;
  bool is_awakening_year = false;
};

// Yearly citation history of a triad from the SB's publication year to
// `horizon_year`; Prince and Storyteller columns are empty without a Prince.
std::vector<HistoryRow> case_history(const CorpusIndex& index, const TriadRecord& triad, int horizon_year);
void write_history_csv(std::ostream& out, std::span<const HistoryRow> rows, const Provenance& provenance);

// Subcommand bodies; each returns an ExitCode and never throws.
int cmd_ingest(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int cmd_detect(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int cmd_analyze(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int cmd_case_study(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const PipelineConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dorm
