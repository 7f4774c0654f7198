#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "knowsearch/date.hpp"

namespace knowsearch {

struct SynthParams {
  std::size_t n_patents = 200;
  std::size_t vocab_size = 300;
  std::size_t phrases_per_abstract = 8;
  Date start_date = *Date::parse("2000-01-01");
  Date end_date = *Date::parse("2015-12-31");
  double zero_cited_fraction = 0.3;    // P(citations == 0)
  double mean_nonzero_citations = 8.0;  // geometric tail above zero
  double focal_fraction = 0.5;          // trailing share flagged focal_candidate
  std::uint64_t seed = 42;
};

// Deterministic patent-like corpus (one JSON record per line). Phrase
// popularity is Zipf-like, phrases favour a few fixed successors, and new
// phrases keep entering the vocabulary over time. Throws InvalidParams.
std::string generate_synthetic_corpus(const SynthParams& params);

void write_synthetic_corpus(const SynthParams& params, const std::filesystem::path& out);

}  // namespace knowsearch
