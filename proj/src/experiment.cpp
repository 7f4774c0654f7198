#include "knowsearch/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <fstream>
#include <map>
#include <set>
#include <thread>

#include "knowsearch/errors.hpp"
#include "knowsearch/random.hpp"
#include "knowsearch/stats.hpp"

namespace knowsearch {

using nlohmann::json;
using nlohmann::ordered_json;

NoUsableFocalPatents::NoUsableFocalPatents(std::vector<std::string> diagnoses)
    : Error("no usable focal patents (" + std::to_string(diagnoses.size()) + " excluded)"),
      diagnoses_(std::move(diagnoses)) {}

namespace {

template <typename T>
T config_value(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + key + "' is missing or has the wrong type");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::filesystem::path& p) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

std::vector<SearchRule> canonical(std::span<const SearchRule> rules) {
  std::vector<SearchRule> out;
  for (auto r : kAllRules) {
    if (std::find(rules.begin(), rules.end(), r) != rules.end()) out.push_back(r);
  }
  return out;
}

struct Outcome {
  std::string focal_id;
  std::optional<std::string> exclusion;
  std::optional<Prd> prd;
  PatentRuns runs;
  NetworkStats network;
  std::optional<ValueCategory> category;
};

Outcome process_patent(const TextIndex& index, const PatentDoc& doc, const ExperimentConfig& config,
                       std::span<const SearchRule> rules) {
  Outcome out;
  out.focal_id = doc.id;
  out.runs.focal_id = doc.id;
  if (doc.forward_citations_5y) out.category = category_for_citations(*doc.forward_citations_5y);
  try {
    auto build = build_pkn(index, doc, config.similarity_threshold);
    out.prd = std::move(build.prd);
    out.network = network_stats(build.pkn);
    const auto reach = check_searchability(build.pkn, build.targets);
    if (!reach.searchable) {
      out.exclusion = "unsearchable: " + reach.diagnosis();
      return out;
    }
    std::set<std::string> skes(build.targets.skes.begin(), build.targets.skes.end());
    out.runs.ske_total = skes.size();
    for (auto rule : rules) {
      auto res = run_search(build.pkn, build.targets, rule, config.max_steps);
      if (res.terminated != Termination::Completed) {
        out.exclusion = "frontier exhausted under rule " + std::string(to_string(rule));
        return out;
      }
      out.runs.results.push_back(std::move(res));
    }
  } catch (const Error& e) {
    out.exclusion = e.what();
  }
  return out;
}

ordered_json descriptive_json(std::span<const double> v) {
  const auto d = descriptive(v);
  return {{"n", d.n}, {"mean", d.mean}, {"median", d.median}, {"std", d.std}, {"min", d.min}, {"max", d.max}};
}

ordered_json not_applicable(const std::string& reason) { return {{"applicable", false}, {"reason", reason}}; }

ordered_json report_json(const TestReport& r, const char* effect_name) {
  ordered_json j{{"applicable", true}, {"statistic", r.statistic}, {"p_value", r.p_value}, {"df", r.df1}};
  if (r.df2 > 0.0) j["df2"] = r.df2;
  if (effect_name) j[effect_name] = r.effect_size ? ordered_json(*r.effect_size) : ordered_json(nullptr);
  j["group_sizes"] = r.group_sizes;
  return j;
}

}  // namespace

ExperimentConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  ExperimentConfig c;
  c.corpus_path = resolve(base_dir, config_value<std::string>(j, "corpus_path"));
  if (j.contains("focal_ids")) c.focal_ids = config_value<std::vector<std::string>>(j, "focal_ids");
  if (j.contains("sample_size") && !j.at("sample_size").is_null()) {
    c.sample_size = config_value<std::size_t>(j, "sample_size");
    if (*c.sample_size < 1) throw ConfigError("sample_size must be >= 1");
  }
  if (j.contains("seed") && !j.at("seed").is_null()) c.seed = config_value<std::uint64_t>(j, "seed");
  if (c.focal_ids.empty()) {
    if (!c.sample_size) throw ConfigError("config needs focal_ids or sample_size");
    if (!c.seed) throw ConfigError("seed is required when sampling");
  }
  if (j.contains("rules")) {
    c.rules.clear();
    for (const auto& name : config_value<std::vector<std::string>>(j, "rules")) {
      auto r = rule_from_string(name);
      if (!r) throw ConfigError("unknown search rule: " + name);
      if (std::find(c.rules.begin(), c.rules.end(), *r) == c.rules.end()) c.rules.push_back(*r);
    }
    if (c.rules.empty()) throw ConfigError("rules must not be empty");
  }
  if (j.contains("similarity_threshold")) {
    c.similarity_threshold = config_value<double>(j, "similarity_threshold");
    if (!(c.similarity_threshold > 0.0 && c.similarity_threshold <= 1.0)) {
      throw ConfigError("similarity_threshold must be in (0, 1]");
    }
  }
  if (j.contains("max_steps") && !j.at("max_steps").is_null()) c.max_steps = config_value<std::size_t>(j, "max_steps");
  if (j.contains("output_dir")) c.output_dir = resolve(base_dir, config_value<std::string>(j, "output_dir"));
  if (j.contains("parallelism")) {
    c.parallelism = config_value<std::size_t>(j, "parallelism");
    if (c.parallelism < 1) throw ConfigError("parallelism must be >= 1");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j, path.parent_path());
}

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  Rng rng(seed);
  count = std::min(count, n);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const Corpus corpus = load_corpus(config.corpus_path);
  auto report = run_experiment(config, corpus);
  report.corpus_path = config.corpus_path.string();
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const Corpus& corpus) {
  ExperimentReport report;
  report.corpus_path = config.corpus_path.string();
  report.rules = canonical(config.rules);
  if (report.rules.empty()) throw ConfigError("no search rules configured");

  std::vector<std::size_t> chosen;
  if (!config.focal_ids.empty()) {
    report.sampling = "explicit";
    for (const auto& id : config.focal_ids) {
      auto i = corpus.index_of(id);
      if (!i) throw ConfigError("focal id not in corpus: " + id);
      if (std::find(chosen.begin(), chosen.end(), *i) == chosen.end()) chosen.push_back(*i);
    }
  } else {
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].focal_candidate) pool.push_back(i);
    }
    if (pool.empty()) {
      for (std::size_t i = 0; i < corpus.size(); ++i) pool.push_back(i);
    }
    if (*config.sample_size > pool.size()) {
      throw ConfigError("sample_size " + std::to_string(*config.sample_size) + " exceeds the " +
                        std::to_string(pool.size()) + " focal candidates");
    }
    report.sampling = kSamplingAlgorithm;
    report.seed = config.seed;
    for (auto k : sample_without_replacement(pool.size(), *config.sample_size, *config.seed)) chosen.push_back(pool[k]);
  }
  std::sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) { return corpus[a].id < corpus[b].id; });
  for (auto i : chosen) report.sampled_ids.push_back(corpus[i].id);

  const TextIndex index(corpus);
  std::vector<Outcome> outcomes(chosen.size());
  {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t t = next++; t < chosen.size(); t = next++) {
        outcomes[t] = process_patent(index, corpus[chosen[t]], config, report.rules);
      }
    };
    const std::size_t threads = std::min(config.parallelism, std::max<std::size_t>(1, chosen.size()));
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(worker);
    worker();
  }

  std::vector<std::string> diagnoses;
  for (auto& o : outcomes) {
    if (o.prd) report.prds.push_back(std::move(*o.prd));
    if (o.exclusion) {
      diagnoses.push_back(o.focal_id + ": " + *o.exclusion);
      report.exclusions.push_back({o.focal_id, std::move(*o.exclusion)});
      continue;
    }
    for (const auto& res : o.runs.results) {
      report.runs.push_back(RunRecord{o.focal_id, res.rule, res.tsc, res.nsn, res.terminated, o.network.lcc_nodes,
                                      o.network.lcc_density, o.category});
    }
    report.patents.push_back(std::move(o.runs));
  }
  if (report.patents.empty()) throw NoUsableFocalPatents(std::move(diagnoses));

  report.stats = aggregate_statistics(report.runs, report.rules);
  return report;
}

ordered_json aggregate_statistics(std::span<const RunRecord> runs, std::span<const SearchRule> rules_in) {
  const auto rules = canonical(rules_in);
  ordered_json out;
  std::vector<std::string> names;
  for (auto r : rules) names.emplace_back(to_string(r));
  out["rules"] = names;

  // Complete cases: every rule present and completed.
  std::map<std::string, std::vector<const RunRecord*>> by_patent;
  for (const auto& r : runs) by_patent[r.focal_id].push_back(&r);
  std::vector<std::vector<const RunRecord*>> rows;  // [patent][rule]
  for (const auto& [id, recs] : by_patent) {
    std::vector<const RunRecord*> row(rules.size(), nullptr);
    bool ok = true;
    for (const auto* rec : recs) {
      auto it = std::find(rules.begin(), rules.end(), rec->rule);
      if (it == rules.end()) continue;
      auto& slot = row[static_cast<std::size_t>(it - rules.begin())];
      if (slot || rec->terminated != Termination::Completed) ok = false;
      slot = rec;
    }
    if (ok && std::all_of(row.begin(), row.end(), [](auto* p) { return p != nullptr; })) rows.push_back(row);
  }
  out["complete_cases"] = rows.size();

  auto column = [&](std::size_t c, auto field) {
    std::vector<double> v;
    for (const auto& row : rows) v.push_back(field(*row[c]));
    return v;
  };
  auto tsc = [](const RunRecord& r) { return r.tsc; };
  auto nsn = [](const RunRecord& r) { return static_cast<double>(r.nsn); };

  ordered_json desc;
  for (const auto& [label, field] : {std::pair{"tsc", +tsc}, std::pair{"nsn", +nsn}}) {
    ordered_json per_rule = ordered_json::object();
    for (std::size_t c = 0; c < rules.size(); ++c) {
      per_rule[names[c]] = rows.empty() ? ordered_json(nullptr) : descriptive_json(column(c, field));
    }
    desc[label] = per_rule;
  }
  out["descriptives"] = desc;

  ordered_json friedman, nemenyi;
  for (const auto& [label, field] : {std::pair{"tsc", +tsc}, std::pair{"nsn", +nsn}}) {
    if (rules.size() < 2 || rows.size() < 2) {
      const auto na = not_applicable("needs at least 2 rules and 2 complete-case patents");
      friedman[label] = na;
      nemenyi[label] = na;
      continue;
    }
    PairedMatrix m(rows.size(), rules.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < rules.size(); ++c) m.at(r, c) = field(*rows[r][c]);
    }
    auto fr = report_json(friedman_test(m), "cohens_f");
    fr["mean_ranks"] = ordered_json::object();
    const auto mr = mean_ranks(m);
    for (std::size_t c = 0; c < rules.size(); ++c) fr["mean_ranks"][names[c]] = mr[c];
    friedman[label] = fr;
    auto pairs = ordered_json::array();
    for (const auto& pc : nemenyi_posthoc(m)) {
      pairs.push_back({{"a", names[pc.a]},
                       {"b", names[pc.b]},
                       {"mean_rank_a", pc.mean_rank_a},
                       {"mean_rank_b", pc.mean_rank_b},
                       {"q", pc.q},
                       {"p_value", pc.p_value},
                       {"cohens_d", pc.cohens_d ? ordered_json(*pc.cohens_d) : ordered_json(nullptr)}});
    }
    nemenyi[label] = {{"applicable", true}, {"pairs", pairs}};
  }
  out["friedman"] = friedman;
  out["nemenyi"] = nemenyi;

  constexpr std::array<ValueCategory, 3> kCategories{ValueCategory::ZeroCited, ValueCategory::MediumCited,
                                                     ValueCategory::HighlyCited};
  ordered_json kw = ordered_json::object(), bf = ordered_json::object();
  ordered_json fit_size = ordered_json::object(), fit_density = ordered_json::object();
  for (std::size_t c = 0; c < rules.size(); ++c) {
    std::vector<std::vector<double>> groups;
    ordered_json group_desc = ordered_json::object();
    for (auto cat : kCategories) {
      std::vector<double> g;
      for (const auto& row : rows) {
        if (row[c]->value_category == cat) g.push_back(row[c]->tsc);
      }
      if (!g.empty()) {
        group_desc[std::string(to_string(cat))] = descriptive_json(g);
        groups.push_back(std::move(g));
      }
    }
    try {
      auto j = report_json(kruskal_wallis(groups), nullptr);
      j["groups"] = group_desc;
      kw[names[c]] = j;
    } catch (const StatsError& e) {
      kw[names[c]] = not_applicable(e.what());
    }
    std::erase_if(groups, [](const auto& g) { return g.size() < 2; });
    try {
      bf[names[c]] = report_json(variance_homogeneity(groups), nullptr);
    } catch (const StatsError& e) {
      bf[names[c]] = not_applicable(e.what());
    }

    const auto y = column(c, tsc);
    const auto xs = column(c, [](const RunRecord& r) { return static_cast<double>(r.lcc_nodes); });
    const auto xd = column(c, [](const RunRecord& r) { return r.lcc_density; });
    for (auto [target, x] : {std::pair{&fit_size, &xs}, std::pair{&fit_density, &xd}}) {
      try {
        const auto f = linear_fit(*x, y);
        (*target)[names[c]] = {{"applicable", true}, {"slope", f.slope}, {"intercept", f.intercept},
                               {"r_squared", f.r_squared}, {"n", y.size()}};
      } catch (const StatsError& e) {
        (*target)[names[c]] = not_applicable(e.what());
      }
    }
  }
  out["kruskal_wallis_by_value"] = kw;
  out["variance_homogeneity_by_value"] = bf;
  out["linear_fits"] = {{"tsc_vs_lcc_nodes", fit_size}, {"tsc_vs_lcc_density", fit_density}};
  return out;
}

}  // namespace knowsearch
