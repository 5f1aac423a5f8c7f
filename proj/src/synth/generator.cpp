#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "dorm/synth.hpp"
#include "synth/random.hpp"

namespace dorm {

namespace {

// Fenwick tree over non-negative weights with prefix-sum sampling.
class WeightTree {
 public:
  explicit WeightTree(std::size_t n) : tree_(n + 1, 0.0) {}

  void rebuild(std::span<const double> weights) {
    std::fill(tree_.begin(), tree_.end(), 0.0);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      tree_[i + 1] += weights[i];
      const std::size_t parent = (i + 1) + ((i + 1) & (~(i + 1) + 1));
      if (parent < tree_.size()) tree_[parent] += tree_[i + 1];
    }
  }

  void add(std::size_t i, double delta) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  double prefix(std::size_t count) const {
    double s = 0.0;
    for (std::size_t i = count; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

  // Smallest position whose inclusive prefix sum exceeds `target`.
  std::size_t find(double target) const {
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 < tree_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::vector<double> tree_;
};

std::string paper_id(std::size_t ordinal) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "W%07zu", ordinal);
  return buf;
}

DocType draw_doc_type(std::mt19937_64& rng) {
  const double u = synth::uniform01(rng);
  if (u < 0.75) return DocType::Article;
  if (u < 0.90) return DocType::ConferencePaper;
  if (u < 0.97) return DocType::Review;
  return DocType::Other;
}

}  // namespace

SyntheticCorpus generate_ca_corpus(const SynthConfig& config) {
  if (config.n_papers == 0) throw Error(Errc::InfeasibleConfig, "n_papers must be positive");
  if (config.refs_per_paper == 0) throw Error(Errc::InfeasibleConfig, "refs_per_paper must be at least 1");
  if (!(config.attachment_offset > 0.0) || !(config.recency_half_life > 0.0) || config.fields < 1) {
    throw Error(Errc::InfeasibleConfig, "k0, half-life and field count must be positive");
  }

  SyntheticCorpus corpus;
  corpus.config = config;
  std::mt19937_64 rng(config.seed);

  const std::size_t n = config.n_papers;
  const auto span_years = static_cast<std::size_t>(config.years.end() - config.years.start() + 1);
  corpus.papers.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int year = config.years.start() + static_cast<int>(i * span_years / n);
    const int field = static_cast<int>(synth::uniform_index(rng, static_cast<std::size_t>(config.fields)));
    corpus.papers.push_back(PaperRecord{paper_id(i + 1), year, draw_doc_type(rng), field});
  }
  corpus.base_count = n;

  // The recency factor 2^(-(y - y_j)/h) shares 2^(-y/h) across all
  // candidates of a citing year, so 2^((y_j - y0)/h) is a static weight.
  std::vector<double> recency(n), weight(n, 0.0), indegree(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    recency[j] = std::exp2((corpus.papers[j].year - config.years.start()) / config.recency_half_life);
  }
  auto base_weight = [&](std::size_t j) { return (indegree[j] + config.attachment_offset) * recency[j]; };

  WeightTree tree(n);
  std::size_t active = 0;  // papers [0, active) are citable
  std::vector<std::size_t> drawn;
  for (std::size_t i = 0; i < n; ++i) {
    const int year = corpus.papers[i].year;
    if (!config.allow_same_year && (i == 0 || corpus.papers[i - 1].year != year)) {
      // New citing year: everything published earlier becomes citable.
      while (active < i) {
        weight[active] = base_weight(active);
        ++active;
      }
      tree.rebuild(weight);
    }

    const std::size_t draws = std::min<std::size_t>(config.refs_per_paper, active);
    drawn.clear();
    for (std::size_t d = 0; d < draws; ++d) {
      const double total = tree.prefix(active);
      std::size_t pick = std::min(tree.find(synth::uniform01(rng) * total), active - 1);
      if (weight[pick] <= 0.0) {
        // Rounding landed on a removed slot; take the next live one.
        std::size_t k = pick;
        while (k < active && weight[k] <= 0.0) ++k;
        if (k == active) {
          k = pick;
          while (weight[k] <= 0.0) --k;
        }
        pick = k;
      }
      drawn.push_back(pick);
      tree.add(pick, -weight[pick]);
      weight[pick] = 0.0;
    }
    for (std::size_t j : drawn) {
      indegree[j] += 1.0;
      weight[j] = base_weight(j);
      tree.add(j, weight[j]);
      corpus.edges.push_back(CitationEdge{corpus.papers[i].id, corpus.papers[j].id, year});
    }

    if (config.allow_same_year) {
      weight[i] = base_weight(i);
      tree.add(i, weight[i]);
      active = i + 1;
    }
  }
  return corpus;
}

double baseline_citation_rate(const SyntheticCorpus& corpus) {
  double exposure = 0.0;
  for (std::size_t i = 0; i < corpus.base_count; ++i) {
    exposure += corpus.config.years.end() - corpus.papers[i].year + 1;
  }
  return exposure > 0.0 ? static_cast<double>(corpus.edges.size()) / exposure : 0.0;
}

std::string synth_header(const SyntheticCorpus& corpus) {
  const auto& c = corpus.config;
  std::ostringstream out;
  out << "# dorm-synth rng=" << kSynthRngTag << " seed=" << c.seed << " n_papers=" << c.n_papers
      << " years=" << c.years.start() << "-" << c.years.end() << " refs_per_paper=" << c.refs_per_paper
      << " k0=" << c.attachment_offset << " half_life=" << c.recency_half_life << " fields=" << c.fields
      << " same_year=" << (c.allow_same_year ? 1 : 0) << " planted=" << corpus.planted.size();
  return out.str();
}

void write_papers_tsv(const SyntheticCorpus& corpus, std::ostream& out) {
  out << synth_header(corpus) << '\n' << "id\tyear\tdoc_type\tfield_code\n";
  for (const auto& p : corpus.papers) {
    out << p.id << '\t' << p.year << '\t' << to_string(p.doc_type) << '\t' << p.field_code << '\n';
  }
}

void write_citations_tsv(const SyntheticCorpus& corpus, std::ostream& out) {
  out << synth_header(corpus) << '\n' << "citing\tcited\n";
  for (const auto& e : corpus.edges) out << e.citing << '\t' << e.cited << '\n';
}

}  // namespace dorm
