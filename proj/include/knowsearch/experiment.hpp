#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "knowsearch/corpus.hpp"
#include "knowsearch/pkn.hpp"
#include "knowsearch/prd.hpp"
#include "knowsearch/search.hpp"

namespace knowsearch {

struct ExperimentConfig {
  std::filesystem::path corpus_path;
  std::vector<std::string> focal_ids;  // explicit list; overrides sampling when non-empty
  std::optional<std::size_t> sample_size;
  std::optional<std::uint64_t> seed;
  std::vector<SearchRule> rules{kAllRules.begin(), kAllRules.end()};
  double similarity_threshold = 0.7;
  std::optional<std::size_t> max_steps;
  std::filesystem::path output_dir = "out";
  std::size_t parallelism = 1;
};

// Relative paths in the document are resolved against `base_dir`.
// Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

struct RunRecord {
  std::string focal_id;
  SearchRule rule = SearchRule::Bfs;
  double tsc = 0.0;
  std::size_t nsn = 0;
  Termination terminated = Termination::Completed;
  std::size_t lcc_nodes = 0;
  double lcc_density = 0.0;
  std::optional<ValueCategory> value_category;
};

struct Exclusion {
  std::string focal_id;
  std::string reason;
};

struct PatentRuns {
  std::string focal_id;
  std::size_t ske_total = 0;
  std::vector<SearchResult> results;  // configured rules, canonical order
};

struct ExperimentReport {
  std::string corpus_path;
  std::string sampling;  // "explicit" or the sampling algorithm id
  std::optional<std::uint64_t> seed;
  std::vector<std::string> sampled_ids;  // sorted
  std::vector<SearchRule> rules;         // canonical order
  std::vector<RunRecord> runs;           // sorted by (focal_id, rule)
  std::vector<Exclusion> exclusions;     // sorted by focal_id
  std::vector<PatentRuns> patents;       // sorted by focal_id
  std::vector<Prd> prds;                 // every PRD that was built, sorted by focal_id
  nlohmann::ordered_json stats;
};

// Uniform sample without replacement of `count` positions from [0, n),
// reproducible from `seed` on any platform.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, std::uint64_t seed);

// Throws NoUsableFocalPatents, ConfigError, and corpus load errors.
ExperimentReport run_experiment(const ExperimentConfig& config);
ExperimentReport run_experiment(const ExperimentConfig& config, const Corpus& corpus);

// Aggregates over complete-case patents (every rule in `rules` present and
// completed): descriptives, Friedman + Nemenyi on TSC and NSN, and per rule
// Kruskal-Wallis / Brown-Forsythe by value category and TSC linear fits on
// LCC size and density. Tests whose preconditions fail are reported with
// "applicable": false and a reason.
nlohmann::ordered_json aggregate_statistics(std::span<const RunRecord> runs, std::span<const SearchRule> rules);

}  // namespace knowsearch
