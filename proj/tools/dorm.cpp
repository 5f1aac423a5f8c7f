// dorm: Sleeping Beauty / Prince / Storyteller analysis pipeline.

#include <iostream>

#include "CLI11.hpp"
#include "dorm/pipeline.hpp"

int main(int argc, char** argv) {
  dorm::PipelineConfig cfg;
  CLI::App app{"Sleeping Beauty, Prince and Storyteller analysis of citation networks", "dorm"};
  app.set_config("--config", "", "Key-value config file (command-line flags override it)");
  app.require_subcommand(0, 1);
  bool show_config = false;
  app.add_flag("--show-config", show_config, "Print the effective configuration and exit")->configurable(false);

  app.add_option("--workers", cfg.workers, "Worker threads")->capture_default_str();
  app.add_option("--output-dir", cfg.output_dir, "Directory for all artifacts")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Simulation seed")->capture_default_str();
  app.add_option("--papers", cfg.papers, "Paper metadata TSV")->capture_default_str();
  app.add_option("--citations", cfg.citations, "Citation edge TSV")->capture_default_str();
  app.add_option("--index", cfg.index, "Index file (default <output-dir>/corpus.dorm)");
  app.add_option("--triads", cfg.triads, "Triads file (default <output-dir>/triads.jsonl)");
  app.add_option("--year-min", cfg.year_min, "First corpus year")->capture_default_str();
  app.add_option("--year-max", cfg.year_max, "Last corpus year")->capture_default_str();

  app.add_option("--citation-pct", cfg.citation_pct, "Corrected-citation percentile cutoff")->capture_default_str();
  app.add_option("--b-pct", cfg.b_pct, "Beauty Coefficient quantile cutoff among survivors")->capture_default_str();
  app.add_option("--horizon", cfg.horizon, "Horizon year for citation series (default year-max)");
  app.add_flag("--b-per-field", cfg.b_per_field, "Compute the B cutoff per field");
  app.add_option("--prince-cutoff", cfg.prince_cutoff, "Last year counted for co-citations (default year-max)");
  app.add_flag("--prince-year-inclusive", cfg.prince_year_inclusive, "Allow Princes from the awakening year");
  app.add_flag("--st-end-exclusive", cfg.st_end_exclusive, "End the Storyteller window before the awakening year");

  app.add_option("--min-csb", cfg.min_csb, "Strict lower bound on C_sb window counts")->capture_default_str();
  app.add_option("--min-cpr", cfg.min_cpr, "Strict lower bound on C_pr window counts")->capture_default_str();
  app.add_option("--ratio-mode", cfg.ratio_mode, "Ratio filter: either|both")
      ->check(CLI::IsMember({"either", "both"}))
      ->capture_default_str();
  app.add_option("--nsb-variant", cfg.nsb_variant, "E_|N_sb| reading: conjunctive|followers")
      ->check(CLI::IsMember({"conjunctive", "followers"}))
      ->capture_default_str();
  app.add_option("--aggregation", cfg.aggregation, "Propagation averaging: macro|pooled")
      ->check(CLI::IsMember({"macro", "pooled"}))
      ->capture_default_str();
  app.add_option("--kde-bandwidth", cfg.kde_bandwidth, "KDE bandwidth (default Silverman)");
  app.add_option("--kde-points", cfg.kde_points, "KDE grid size")->capture_default_str();

  app.add_option("--n-papers", cfg.n_papers, "Simulated papers")->capture_default_str();
  app.add_option("--refs", cfg.refs, "References per simulated paper")->capture_default_str();
  app.add_option("--k0", cfg.k0, "Attachment offset")->capture_default_str();
  app.add_option("--half-life", cfg.half_life, "Recency half-life in years")->capture_default_str();
  app.add_option("--fields", cfg.fields, "Number of field codes")->capture_default_str();
  app.add_option("--plant", cfg.plant, "Planted triads")->capture_default_str();
  app.add_option("--sleep", cfg.sleep, "Planted sleep length in years")->capture_default_str();
  app.add_option("--burst", cfg.burst, "Planted burst citations per year")->capture_default_str();
  app.add_option("--burst-years", cfg.burst_years, "Planted burst length in years")->capture_default_str();
  app.add_option("--n-st", cfg.n_st, "Planted Storytellers")->capture_default_str();
  app.add_option("--sb-only-pre", cfg.sb_only_pre, "Planted pre-awakening citers of SB alone")->capture_default_str();
  app.add_option("--pr-only-pre", cfg.pr_only_pre, "Planted pre-awakening citers of PR alone")->capture_default_str();

  app.add_option("--sb", cfg.sb_id, "Sleeping Beauty id for case-study");

  auto* ingest = app.add_subcommand("ingest", "Build the corpus index from papers/citations TSV");
  auto* detect = app.add_subcommand("detect", "Select Sleeping Beauties and extract their triads");
  auto* analyze = app.add_subcommand("analyze", "Storyteller ratios, KDE, pmf and propagation table");
  auto* case_study = app.add_subcommand("case-study", "Yearly SB/PR/ST history of one Sleeping Beauty");
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic corpus with planted triads");
  for (auto* sub : {ingest, detect, analyze, case_study, simulate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : dorm::kExitFatal;
  }

  if (show_config) {
    std::cout << app.config_to_str(true, false);
    return dorm::kExitOk;
  }
  if (*ingest) return dorm::cmd_ingest(cfg, std::cout, std::cerr);
  if (*detect) return dorm::cmd_detect(cfg, std::cout, std::cerr);
  if (*analyze) return dorm::cmd_analyze(cfg, std::cout, std::cerr);
  if (*case_study) return dorm::cmd_case_study(cfg, std::cout, std::cerr);
  if (*simulate) return dorm::cmd_simulate(cfg, std::cout, std::cerr);
  std::cout << app.help();
  return dorm::kExitOk;
}
