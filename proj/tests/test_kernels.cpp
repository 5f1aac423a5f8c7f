#include <omp.h>

#include <numeric>

#include "doctest.h"
#include "dorm/reference.hpp"
#include "support/fixtures.hpp"

using namespace dorm;

TEST_CASE("parallel kernels match the serial references") {
  const auto corpus = test::planted_corpus(6000, 33, 4);
  const auto index = test::index_of(corpus);
  std::vector<PaperIdx> all(index.paper_count());
  std::iota(all.begin(), all.end(), PaperIdx{0});
  SelectionConfig loose;
  loose.citation_pct = 0.7;
  loose.b_pct = 0.7;
  PropagationOptions prop;
  prop.filter = RatioFilter{0, 0, FilterMode::Either};

  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 4}) {
    CAPTURE(threads);
    omp_set_num_threads(threads);
    CHECK(citation_totals(index, 2020) == reference::citation_totals(index, 2020));
    CHECK(citation_totals(index, 1995) == reference::citation_totals(index, 1995));
    CHECK(score_beauty(index, all, 2020) == reference::score_beauty(index, all, 2020));

    const auto sbs = select_sleeping_beauties(index, loose);
    REQUIRE(sbs.size() > 100);
    const auto triads = extract_triads(index, sbs);
    CHECK(triads == reference::extract_triads(index, sbs));
    TriadOptions alt;
    alt.prince_year_inclusive = true;
    alt.st_end_inclusive = false;
    alt.cocitation_cutoff = 2010;
    CHECK(extract_triads(index, sbs, alt) == reference::extract_triads(index, sbs, alt));
    CHECK(propagation_terms(index, triads, prop) == reference::propagation_terms(index, triads, prop));
  }
  omp_set_num_threads(saved);
}
