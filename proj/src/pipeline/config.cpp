#include <zlib.h>

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "dorm/pipeline.hpp"

namespace dorm {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

template <typename T>
std::string optional_text(const std::optional<T>& value) {
  if (!value) return "default";
  std::ostringstream out;
  out << *value;
  return out.str();
}

}  // namespace

void PipelineConfig::validate() const {
  require(year_min <= year_max, "year-min must not exceed year-max");
  require(citation_pct >= 0.0 && citation_pct <= 1.0, "citation-pct must lie in [0, 1]");
  require(b_pct >= 0.0 && b_pct <= 1.0, "b-pct must lie in [0, 1]");
  require(ratio_mode == "either" || ratio_mode == "both", "ratio-mode must be 'either' or 'both'");
  require(nsb_variant == "conjunctive" || nsb_variant == "followers",
          "nsb-variant must be 'conjunctive' or 'followers'");
  require(aggregation == "macro" || aggregation == "pooled", "aggregation must be 'macro' or 'pooled'");
  require(!kde_bandwidth || *kde_bandwidth > 0.0, "kde-bandwidth must be positive");
  require(kde_points >= 2, "kde-points must be at least 2");
  require(workers >= 1, "workers must be at least 1");
}

std::filesystem::path PipelineConfig::index_path() const {
  return index.empty() ? output_dir / "corpus.dorm" : index;
}

std::filesystem::path PipelineConfig::triads_path() const {
  return triads.empty() ? output_dir / "triads.jsonl" : triads;
}

SelectionConfig PipelineConfig::selection() const {
  SelectionConfig s;
  s.citation_pct = citation_pct;
  s.b_pct = b_pct;
  s.horizon = horizon;
  s.per_field_b = b_per_field;
  return s;
}

TriadOptions PipelineConfig::triad_options() const {
  TriadOptions t;
  t.cocitation_cutoff = prince_cutoff;
  t.prince_year_inclusive = prince_year_inclusive;
  t.st_end_inclusive = !st_end_exclusive;
  return t;
}

RatioFilter PipelineConfig::ratio_filter() const {
  return RatioFilter{min_csb, min_cpr, ratio_mode == "both" ? FilterMode::Both : FilterMode::Either};
}

PropagationOptions PipelineConfig::propagation_options() const {
  PropagationOptions p;
  p.filter = RatioFilter{min_csb, min_cpr, FilterMode::Both};
  p.aggregation = aggregation == "pooled" ? Aggregation::Pooled : Aggregation::Macro;
  p.nsb = nsb_variant == "followers" ? NsbVariant::Followers : NsbVariant::Conjunctive;
  p.triad = triad_options();
  return p;
}

SynthConfig PipelineConfig::synth_config() const {
  SynthConfig s;
  s.n_papers = n_papers;
  s.years = corpus_range();
  s.refs_per_paper = refs;
  s.attachment_offset = k0;
  s.recency_half_life = half_life;
  s.fields = fields;
  s.seed = seed;
  return s;
}

PlantSpec PipelineConfig::plant_spec() const {
  PlantSpec p;
  p.sleep_years = sleep;
  p.burst_size = burst;
  p.burst_years = burst_years;
  p.n_st = n_st;
  p.sb_only_pre = sb_only_pre;
  p.pr_only_pre = pr_only_pre;
  return p;
}

std::string PipelineConfig::canonical() const {
  std::ostringstream out;
  out << "year_min=" << year_min << "\nyear_max=" << year_max << "\ncitation_pct=" << format_real(citation_pct)
      << "\nb_pct=" << format_real(b_pct) << "\nhorizon=" << optional_text(horizon)
      << "\nb_per_field=" << b_per_field << "\nprince_cutoff=" << optional_text(prince_cutoff)
      << "\nprince_year_inclusive=" << prince_year_inclusive << "\nst_end_exclusive=" << st_end_exclusive
      << "\nmin_csb=" << min_csb << "\nmin_cpr=" << min_cpr << "\nratio_mode=" << ratio_mode
      << "\nnsb_variant=" << nsb_variant << "\naggregation=" << aggregation
      << "\nkde_bandwidth=" << (kde_bandwidth ? format_real(*kde_bandwidth) : "silverman")
      << "\nkde_points=" << kde_points << "\nn_papers=" << n_papers << "\nrefs=" << refs
      << "\nk0=" << format_real(k0) << "\nhalf_life=" << format_real(half_life) << "\nfields=" << fields
      << "\nseed=" << seed << "\nplant=" << plant << "\nsleep=" << sleep << "\nburst=" << burst
      << "\nburst_years=" << burst_years << "\nn_st=" << n_st << "\nsb_only_pre=" << sb_only_pre
      << "\npr_only_pre=" << pr_only_pre << "\nsb_id=" << sb_id << "\n";
  return out.str();
}

std::string PipelineConfig::hash() const {
  const auto text = canonical();
  const auto crc = crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(text.data()),
                         static_cast<uInt>(text.size()));
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

}  // namespace dorm
