#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "knowsearch/experiment.hpp"

namespace knowsearch {

// Writes to a temporary sibling, then renames over `path`. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);

// runs.csv columns: focal_id, rule, tsc, nsn, terminated, lcc_nodes,
// lcc_density, value_category (empty when unknown).
void write_runs_csv(std::ostream& out, std::span<const RunRecord> runs);
// Throws DataError on malformed content.
std::vector<RunRecord> read_runs_csv(std::istream& in);

void write_exclusions_csv(std::ostream& out, std::span<const Exclusion> exclusions);

// Writes runs.csv, exclusions.csv, stats.json, manifest.json,
// prd_expansion.csv, traces/<focal>__<rule>.csv and progress/<focal>.csv.
void emit_report(const ExperimentReport& report, const std::filesystem::path& output_dir);

// Filesystem-safe rendering of a patent id.
std::string file_stem(std::string_view id);

}  // namespace knowsearch
