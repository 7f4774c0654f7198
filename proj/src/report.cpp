#include "knowsearch/report.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

#include "knowsearch/csv.hpp"
#include "knowsearch/errors.hpp"

namespace knowsearch {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, const std::function<void(std::ostream&)>& writer) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    writer(out);
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::string file_stem(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

void write_runs_csv(std::ostream& out, std::span<const RunRecord> runs) {
  CsvWriter csv(out);
  csv.row({"focal_id", "rule", "tsc", "nsn", "terminated", "lcc_nodes", "lcc_density", "value_category"});
  for (const auto& r : runs) {
    csv.row({r.focal_id, to_string(r.rule), format_double(r.tsc), std::to_string(r.nsn), to_string(r.terminated),
             std::to_string(r.lcc_nodes), format_double(r.lcc_density),
             r.value_category ? to_string(*r.value_category) : std::string_view()});
  }
}

std::vector<RunRecord> read_runs_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  try {
    rows = read_csv(in);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("runs.csv: ") + e.what());
  }
  const std::vector<std::string> header{"focal_id", "rule", "tsc", "nsn", "terminated", "lcc_nodes", "lcc_density",
                                        "value_category"};
  if (rows.empty() || rows.front() != header) throw DataError("runs.csv: unexpected header");
  std::vector<RunRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    const auto where = "runs.csv line " + std::to_string(i + 1) + ": ";
    if (f.size() != header.size()) throw DataError(where + "expected 8 fields");
    RunRecord r;
    r.focal_id = f[0];
    auto rule = rule_from_string(f[1]);
    if (!rule) throw DataError(where + "unknown rule " + f[1]);
    r.rule = *rule;
    try {
      r.tsc = parse_double(f[2]);
      r.nsn = static_cast<std::size_t>(std::stoull(f[3]));
      r.lcc_nodes = static_cast<std::size_t>(std::stoull(f[5]));
      r.lcc_density = parse_double(f[6]);
    } catch (const std::exception&) {
      throw DataError(where + "bad numeric field");
    }
    if (f[4] == "completed") {
      r.terminated = Termination::Completed;
    } else if (f[4] == "frontier_exhausted") {
      r.terminated = Termination::FrontierExhausted;
    } else {
      throw DataError(where + "bad terminated value " + f[4]);
    }
    if (!f[7].empty()) {
      r.value_category = value_category_from_string(f[7]);
      if (!r.value_category) throw DataError(where + "bad value_category " + f[7]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_exclusions_csv(std::ostream& out, std::span<const Exclusion> exclusions) {
  CsvWriter csv(out);
  csv.row({"focal_id", "reason"});
  for (const auto& e : exclusions) csv.row({e.focal_id, e.reason});
}

void emit_report(const ExperimentReport& report, const fs::path& dir) {
  write_file_atomic(dir / "runs.csv", [&](std::ostream& o) { write_runs_csv(o, report.runs); });
  write_file_atomic(dir / "exclusions.csv", [&](std::ostream& o) { write_exclusions_csv(o, report.exclusions); });
  write_file_atomic(dir / "stats.json", [&](std::ostream& o) { o << report.stats.dump(2) << '\n'; });
  write_file_atomic(dir / "prd_expansion.csv", [&](std::ostream& o) { write_expansion_csv(o, report.prds); });

  nlohmann::ordered_json manifest;
  manifest["corpus_path"] = report.corpus_path;
  manifest["sampling"] = report.sampling;
  manifest["seed"] = report.seed ? nlohmann::ordered_json(*report.seed) : nlohmann::ordered_json(nullptr);
  std::vector<std::string> rules;
  for (auto r : report.rules) rules.emplace_back(to_string(r));
  manifest["rules"] = rules;
  manifest["sampled"] = report.sampled_ids;
  manifest["included"] = report.patents.size();
  manifest["excluded"] = report.exclusions.size();
  write_file_atomic(dir / "manifest.json", [&](std::ostream& o) { o << manifest.dump(2) << '\n'; });

  for (const auto& p : report.patents) {
    for (const auto& res : p.results) {
      const auto name = file_stem(p.focal_id) + "__" + std::string(to_string(res.rule)) + ".csv";
      write_file_atomic(dir / "traces" / name, [&](std::ostream& o) {
        write_trace_header(o);
        write_trace_rows(o, p.focal_id, res);
      });
    }
    write_file_atomic(dir / "progress" / (file_stem(p.focal_id) + ".csv"), [&](std::ostream& o) {
      CsvWriter csv(o);
      csv.row({"focal_id", "rule", "step", "cumulative_tsc", "skes_found", "ske_total"});
      const auto total = std::to_string(p.ske_total);
      for (const auto& res : p.results) {
        const std::string rule(to_string(res.rule));
        csv.row({p.focal_id, rule, "0", "0", std::to_string(res.initial_skes_found), total});
        for (const auto& s : res.trace) {
          csv.row({p.focal_id, rule, std::to_string(s.index), format_double(s.cumulative),
                   std::to_string(s.skes_found), total});
        }
      }
    });
  }
}

}  // namespace knowsearch
