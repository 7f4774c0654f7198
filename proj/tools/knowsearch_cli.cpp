// Command-line front end: corpus synthesis, extraction, PKN building,
// single searches, full experiments and re-aggregation of results.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "knowsearch/corpus.hpp"
#include "knowsearch/errors.hpp"
#include "knowsearch/experiment.hpp"
#include "knowsearch/phrase.hpp"
#include "knowsearch/pkn.hpp"
#include "knowsearch/pkn_io.hpp"
#include "knowsearch/report.hpp"
#include "knowsearch/search.hpp"
#include "knowsearch/synth.hpp"

namespace ks = knowsearch;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNoFocal = 4;

void print_elements(const char* label, const std::vector<ks::KnowledgeElement>& elements) {
  std::cout << label << ":\n";
  for (const auto& ke : elements) std::cout << "  " << ke.key << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge-search cost simulator for patent-derived prior knowledge networks"};
  app.require_subcommand(1);

  ks::SynthParams synth;
  std::string synth_out, synth_start, synth_end;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic patent corpus");
  synth_cmd->add_option("--patents", synth.n_patents, "Number of patents")->capture_default_str();
  synth_cmd->add_option("--vocab", synth.vocab_size, "Phrase vocabulary size")->capture_default_str();
  synth_cmd->add_option("--phrases", synth.phrases_per_abstract, "Phrases per abstract")->capture_default_str();
  synth_cmd->add_option("--start", synth_start, "First priority date (YYYY-MM-DD)");
  synth_cmd->add_option("--end", synth_end, "Last priority date (YYYY-MM-DD)");
  synth_cmd->add_option("--zero-cited", synth.zero_cited_fraction, "Share of zero-cited patents")->capture_default_str();
  synth_cmd->add_option("--mean-citations", synth.mean_nonzero_citations, "Mean citations of cited patents")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Random seed")->required();
  synth_cmd->add_option("--out", synth_out, "Output corpus file")->required();

  std::string corpus_path, patent_id;
  auto* extract_cmd = app.add_subcommand("extract", "Print the problem and solution elements of a patent");
  extract_cmd->add_option("--corpus", corpus_path, "Corpus file")->required();
  extract_cmd->add_option("--patent", patent_id, "Patent id")->required();

  std::string pkn_out;
  double threshold = 0.7;
  auto* build_cmd = app.add_subcommand("build-pkn", "Build and export the prior knowledge network of a focal patent");
  build_cmd->add_option("--corpus", corpus_path, "Corpus file")->required();
  build_cmd->add_option("--focal", patent_id, "Focal patent id")->required();
  build_cmd->add_option("--out", pkn_out, "Output PKN file")->required();
  build_cmd->add_option("--threshold", threshold, "Semantic similarity threshold")->capture_default_str();

  std::string pkn_in, rule_name, trace_out;
  std::optional<std::size_t> max_steps;
  auto* sim_cmd = app.add_subcommand("simulate", "Run one search rule on a saved PKN");
  sim_cmd->add_option("--pkn", pkn_in, "PKN file")->required();
  sim_cmd->add_option("--rule", rule_name, "bfs | dfs | familiarity | degree | recency")
      ->required()
      ->check(CLI::IsMember({"bfs", "dfs", "familiarity", "degree", "recency"}));
  sim_cmd->add_option("--trace", trace_out, "Trace CSV output");
  sim_cmd->add_option("--max-steps", max_steps, "Step budget");

  std::string config_path;
  auto* exp_cmd = app.add_subcommand("experiment", "Run the full pipeline from a JSON config");
  exp_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();

  std::string runs_path, stats_out;
  auto* stats_cmd = app.add_subcommand("stats", "Recompute aggregate statistics from runs.csv");
  stats_cmd->add_option("--runs", runs_path, "runs.csv")->required();
  stats_cmd->add_option("--out", stats_out, "stats.json output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*synth_cmd) {
      if (!synth_start.empty()) {
        auto d = ks::Date::parse(synth_start);
        if (!d) throw ks::ConfigError("bad --start date " + synth_start);
        synth.start_date = *d;
      }
      if (!synth_end.empty()) {
        auto d = ks::Date::parse(synth_end);
        if (!d) throw ks::ConfigError("bad --end date " + synth_end);
        synth.end_date = *d;
      }
      ks::write_synthetic_corpus(synth, synth_out);
      std::cout << "wrote " << synth.n_patents << " patents to " << synth_out << '\n';
    } else if (*extract_cmd) {
      const auto corpus = ks::load_corpus(corpus_path);
      const auto* doc = corpus.find(patent_id);
      if (!doc) throw ks::ConfigError("patent not in corpus: " + patent_id);
      const auto fe = ks::extract_focal_elements(*doc);
      print_elements("PKEs", fe.pkes);
      print_elements("SKEs", fe.skes);
    } else if (*build_cmd) {
      const auto corpus = ks::load_corpus(corpus_path);
      const auto* doc = corpus.find(patent_id);
      if (!doc) throw ks::ConfigError("patent not in corpus: " + patent_id);
      const ks::TextIndex index(corpus);
      const auto build = ks::build_pkn(index, *doc, threshold);
      ks::save_pkn(pkn_out, build.pkn, build.targets);
      const auto st = ks::network_stats(build.pkn);
      const auto reach = ks::check_searchability(build.pkn, build.targets);
      std::cout << "PRD documents: " << build.prd.docs.size() << " (expansions: " << build.prd.expansion_log.size()
                << ")\n"
                << "nodes: " << st.total_nodes << "  edges: " << st.total_edges << "  LCC: " << st.lcc_nodes
                << "  LCC density: " << st.lcc_density << '\n'
                << "searchability: " << reach.diagnosis() << '\n';
    } else if (*sim_cmd) {
      const auto saved = ks::load_pkn(pkn_in);
      const auto rule = *ks::rule_from_string(rule_name);
      const auto res = ks::run_search(saved.pkn, saved.targets, rule, max_steps);
      if (!trace_out.empty()) {
        ks::write_file_atomic(trace_out, [&](std::ostream& o) {
          ks::write_trace_header(o);
          ks::write_trace_rows(o, saved.targets.focal_id, res);
        });
      }
      std::cout << "rule: " << rule_name << "\nterminated: " << ks::to_string(res.terminated)
                << "\nTSC: " << res.tsc << "\nNSN: " << res.nsn << '\n';
    } else if (*exp_cmd) {
      const auto config = ks::load_config(config_path);
      const auto report = ks::run_experiment(config);
      ks::emit_report(report, config.output_dir);
      std::cout << "included " << report.patents.size() << " focal patents, excluded " << report.exclusions.size()
                << "; results in " << config.output_dir.string() << '\n';
    } else if (*stats_cmd) {
      std::ifstream in(runs_path);
      if (!in) throw ks::IoError("cannot open " + runs_path);
      const auto runs = ks::read_runs_csv(in);
      std::vector<ks::SearchRule> rules;
      for (const auto& r : runs) {
        if (std::find(rules.begin(), rules.end(), r.rule) == rules.end()) rules.push_back(r.rule);
      }
      const auto stats = ks::aggregate_statistics(runs, rules);
      ks::write_file_atomic(stats_out, [&](std::ostream& o) { o << stats.dump(2) << '\n'; });
    }
  } catch (const ks::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ks::NoUsableFocalPatents& e) {
    std::cerr << e.what() << '\n';
    for (const auto& d : e.diagnoses()) std::cerr << "  " << d << '\n';
    return kExitNoFocal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
