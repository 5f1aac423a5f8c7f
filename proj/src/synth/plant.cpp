#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "json.hpp"

#include "dorm/synth.hpp"
#include "synth/random.hpp"

namespace dorm {

namespace {

constexpr std::uint64_t kStreamStride = 0x9E3779B97F4A7C15ULL;

std::string planted_id(const char* prefix, std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03zu", prefix, k);
  return buf;
}

class Picker {
 public:
  Picker(const SyntheticCorpus& corpus, std::mt19937_64& rng) : corpus_(corpus), rng_(rng) {}

  // k distinct unused base papers published in [y0, y1], in position order.
  std::vector<std::size_t> pick(std::size_t k, int y0, int y1) {
    if (k == 0) return {};
    auto base = std::span(corpus_.papers).first(corpus_.base_count);
    auto first = std::partition_point(base.begin(), base.end(), [&](const auto& p) { return p.year < y0; });
    auto last = std::partition_point(first, base.end(), [&](const auto& p) { return p.year <= y1; });
    std::vector<std::size_t> pool;
    for (auto it = first; it != last; ++it) {
      auto pos = static_cast<std::size_t>(it - base.begin());
      if (!used_.contains(pos)) pool.push_back(pos);
    }
    if (pool.size() < k) {
      throw Error(Errc::InfeasibleSpec, "need " + std::to_string(k) + " papers in " + std::to_string(y0) + "-" +
                                            std::to_string(y1) + ", corpus has " + std::to_string(pool.size()));
    }
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(pool[i], pool[i + synth::uniform_index(rng_, pool.size() - i)]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    used_.insert(pool.begin(), pool.end());
    return pool;
  }

 private:
  const SyntheticCorpus& corpus_;
  std::mt19937_64& rng_;
  std::unordered_set<std::size_t> used_;
};

}  // namespace

PlantedTriad plant_triad(SyntheticCorpus& corpus, const PlantSpec& spec) {
  const auto& cfg = corpus.config;
  const int delay = spec.pr_delay.value_or(std::max(1, spec.sleep_years / 3));
  if (spec.sleep_years < 2 || spec.burst_years < 0 || delay < 1 || delay >= spec.sleep_years) {
    throw Error(Errc::InfeasibleSpec, "need sleep >= 2 and 1 <= pr_delay < sleep");
  }
  if (spec.n_st > 0 && delay > spec.sleep_years - 2) {
    throw Error(Errc::InfeasibleSpec, "no years left between the Prince and awakening for storytellers");
  }
  auto fraction_ok = [](double f) { return f >= 0.0 && f <= 1.0; };
  if (!fraction_ok(spec.pr_cocite_fraction) || !fraction_ok(spec.st_follow_fraction)) {
    throw Error(Errc::InfeasibleSpec, "citation fractions must lie in [0, 1]");
  }
  const int lo = cfg.years.start();
  const int hi = cfg.years.end() - spec.sleep_years - spec.burst_years;
  if (hi < lo) throw Error(Errc::InfeasibleSpec, "timeline does not fit the corpus years");

  const std::size_t k = corpus.planted.size();
  std::mt19937_64 rng(cfg.seed ^ (kStreamStride * (k + 1)));
  // Drawn years skip the generator's warm-up: the first cohorts are cited
  // by every early paper and would bury a planted SB's citation percentile.
  const int warm_lo = std::min(hi, lo + static_cast<int>(std::ceil(2.0 * cfg.recency_half_life)));
  const int drawn = warm_lo + static_cast<int>(synth::uniform_index(rng, static_cast<std::size_t>(hi - warm_lo + 1)));
  const int sb_year = spec.sb_year.value_or(drawn);
  if (sb_year < lo || sb_year > hi) throw Error(Errc::InfeasibleSpec, "sb_year outside the feasible range");
  const int awakening = sb_year + spec.sleep_years;
  const int pr_year = sb_year + delay;

  PlantedTriad triad;
  triad.sb_id = planted_id("SB", k);
  triad.pr_id = planted_id("PR", k);
  triad.sb_year = sb_year;
  triad.pr_year = pr_year;
  triad.awakening_year = awakening;
  triad.sleep_years = spec.sleep_years;
  triad.burst_size = spec.burst_size;

  // Draw every role before touching the corpus so a failure leaves it intact.
  Picker picker(corpus, rng);
  const auto storytellers = picker.pick(spec.n_st, pr_year + 1, awakening - 1);
  const auto sb_only = picker.pick(spec.sb_only_pre, pr_year + 1, awakening - 1);
  const auto pr_only = picker.pick(spec.pr_only_pre, pr_year + 1, awakening);
  std::vector<std::vector<std::size_t>> burst;
  for (int y = awakening + 1; y <= awakening + spec.burst_years; ++y) {
    burst.push_back(picker.pick(spec.burst_size, y, y));
  }
  const auto sb_field = static_cast<int>(synth::uniform_index(rng, static_cast<std::size_t>(cfg.fields)));
  const auto pr_field = static_cast<int>(synth::uniform_index(rng, static_cast<std::size_t>(cfg.fields)));

  auto cite = [&](std::size_t from, const std::string& to) {
    const auto& p = corpus.papers[from];
    corpus.edges.push_back(CitationEdge{p.id, to, p.year});
  };
  for (auto s : storytellers) {
    cite(s, triad.sb_id);
    cite(s, triad.pr_id);
    triad.st_ids.push_back(corpus.papers[s].id);
  }
  for (auto s : sb_only) cite(s, triad.sb_id);
  for (auto s : pr_only) cite(s, triad.pr_id);
  // Existing references of burst citers, so ST follow-up links never repeat an edge.
  std::unordered_set<std::string> burst_ids;
  for (const auto& year_citers : burst) {
    for (auto s : year_citers) burst_ids.insert(corpus.papers[s].id);
  }
  std::unordered_set<std::string> existing;
  if (spec.st_follow_fraction > 0.0 && !storytellers.empty()) {
    for (const auto& e : corpus.edges) {
      if (burst_ids.contains(e.citing)) existing.insert(e.citing + '\t' + e.cited);
    }
  }
  for (const auto& year_citers : burst) {
    for (auto s : year_citers) {
      cite(s, triad.sb_id);
      if (synth::uniform01(rng) < spec.pr_cocite_fraction) cite(s, triad.pr_id);
      if (!storytellers.empty() && synth::uniform01(rng) < spec.st_follow_fraction) {
        const auto& st = corpus.papers[storytellers[synth::uniform_index(rng, storytellers.size())]].id;
        if (!existing.contains(corpus.papers[s].id + '\t' + st)) cite(s, st);
      }
    }
  }
  corpus.papers.push_back(PaperRecord{triad.sb_id, sb_year, DocType::Article, sb_field});
  corpus.papers.push_back(PaperRecord{triad.pr_id, pr_year, DocType::Article, pr_field});
  corpus.planted.push_back(triad);
  return triad;
}

std::string ground_truth_json(const SyntheticCorpus& corpus) {
  const auto& c = corpus.config;
  nlohmann::ordered_json doc;
  doc["generator"] = {{"rng", kSynthRngTag},
                      {"seed", c.seed},
                      {"n_papers", c.n_papers},
                      {"year_min", c.years.start()},
                      {"year_max", c.years.end()},
                      {"refs_per_paper", c.refs_per_paper},
                      {"attachment_offset", c.attachment_offset},
                      {"recency_half_life", c.recency_half_life},
                      {"fields", c.fields},
                      {"allow_same_year", c.allow_same_year}};
  doc["triads"] = nlohmann::ordered_json::array();
  for (const auto& t : corpus.planted) {
    doc["triads"].push_back({{"sb_id", t.sb_id},
                             {"pr_id", t.pr_id},
                             {"st_ids", t.st_ids},
                             {"sb_year", t.sb_year},
                             {"pr_year", t.pr_year},
                             {"awakening_year", t.awakening_year},
                             {"sleep_years", t.sleep_years},
                             {"burst_size", t.burst_size}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace dorm
