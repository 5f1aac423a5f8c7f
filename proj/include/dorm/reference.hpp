#pragma once

// Single-threaded reference versions of the OpenMP kernels. Tests compare
// the parallel kernels against these; the benchmark times both.

#include <cstdint>
#include <span>
#include <vector>

#include "dorm/corpus.hpp"
#include "dorm/dynamics.hpp"
#include "dorm/stats.hpp"
#include "dorm/triad.hpp"

namespace dorm::reference {

// Scans every reference list instead of slicing in-lists by year.
std::vector<std::uint32_t> citation_totals(const CorpusIndex& index, int horizon_year);

std::vector<BeautyResult> score_beauty(const CorpusIndex& index, std::span<const PaperIdx> candidates,
                                       int horizon_year);

// Scores each two-hop candidate with co_citation_count rather than counting
// reference-list hits.
std::vector<TriadRecord> extract_triads(const CorpusIndex& index, std::span<const SleepingBeautyRecord> sbs,
                                        const TriadOptions& options = {});

std::vector<TriadPropagation> propagation_terms(const CorpusIndex& index, std::span<const TriadRecord> triads,
                                                const PropagationOptions& options = {});

}  // namespace dorm::reference
