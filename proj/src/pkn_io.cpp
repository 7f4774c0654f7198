#include "knowsearch/pkn_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "knowsearch/errors.hpp"
#include "knowsearch/report.hpp"

namespace knowsearch {

using nlohmann::ordered_json;

namespace {

constexpr const char* kFormat = "knowsearch-pkn";
constexpr int kVersion = 1;

}  // namespace

void write_pkn(std::ostream& out, const PriorKnowledgeNetwork& pkn, const FocalTargets& targets) {
  const std::set<std::string> pkes(targets.pkes.begin(), targets.pkes.end());
  const std::set<std::string> skes(targets.skes.begin(), targets.skes.end());

  ordered_json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["focal_id"] = targets.focal_id;
  j["focal_pubdate"] = targets.focal_pubdate.iso();
  j["pkes"] = targets.pkes;
  j["skes"] = targets.skes;
  auto nodes = ordered_json::array();
  for (const auto& n : pkn.nodes()) {
    nodes.push_back({{"key", n.key},
                     {"degree", n.degree},
                     {"strength", n.strength},
                     {"birthdate", n.birthdate.iso()},
                     {"is_pke", pkes.contains(n.key)},
                     {"is_ske", skes.contains(n.key)}});
  }
  j["nodes"] = std::move(nodes);
  auto edges = ordered_json::array();
  for (const auto& e : pkn.edges()) {
    edges.push_back({{"key_i", pkn.node(e.a).key},
                     {"key_j", pkn.node(e.b).key},
                     {"weight", e.weight},
                     {"provenance", std::string(to_string(e.provenance))}});
  }
  j["edges"] = std::move(edges);
  out << j.dump(1) << '\n';
}

SavedPkn read_pkn(std::istream& in) {
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const ordered_json::parse_error& e) {
    throw DataError(std::string("PKN file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format") != kFormat) throw DataError("not a PKN document");
    if (j.at("version") != kVersion) throw DataError("unsupported PKN version");

    auto date = [](const ordered_json& v) {
      auto d = Date::parse(v.get<std::string>());
      if (!d) throw DataError("bad date in PKN file: " + v.get<std::string>());
      return *d;
    };

    SavedPkn saved;
    saved.targets.focal_id = j.at("focal_id").get<std::string>();
    saved.targets.focal_pubdate = date(j.at("focal_pubdate"));
    saved.targets.pkes = j.at("pkes").get<std::vector<std::string>>();
    saved.targets.skes = j.at("skes").get<std::vector<std::string>>();

    std::vector<std::pair<std::string, Date>> nodes;
    for (const auto& n : j.at("nodes")) nodes.emplace_back(n.at("key").get<std::string>(), date(n.at("birthdate")));
    std::vector<std::tuple<std::string, std::string, double, Provenance>> edges;
    for (const auto& e : j.at("edges")) {
      const auto prov = e.at("provenance").get<std::string>();
      if (prov != "adjacency" && prov != "semantic") throw DataError("unknown edge provenance: " + prov);
      edges.emplace_back(e.at("key_i").get<std::string>(), e.at("key_j").get<std::string>(),
                         e.at("weight").get<double>(),
                         prov == "adjacency" ? Provenance::Adjacency : Provenance::Semantic);
    }
    try {
      saved.pkn = PriorKnowledgeNetwork(std::move(nodes), std::move(edges));
    } catch (const std::invalid_argument& e) {
      throw DataError(std::string("invalid PKN: ") + e.what());
    }

    for (const auto& n : j.at("nodes")) {
      const auto& node = saved.pkn.node(*saved.pkn.find(n.at("key").get<std::string>()));
      const double strength = n.at("strength").get<double>();
      if (n.at("degree").get<std::size_t>() != node.degree ||
          std::abs(strength - node.strength) > 1e-9 * std::max(1.0, std::abs(node.strength))) {
        throw DataError("degree/strength columns disagree with edges for node " + node.key);
      }
    }
    return saved;
  } catch (const ordered_json::exception& e) {
    throw DataError(std::string("malformed PKN document: ") + e.what());
  }
}

void save_pkn(const std::filesystem::path& path, const PriorKnowledgeNetwork& pkn, const FocalTargets& targets) {
  write_file_atomic(path, [&](std::ostream& out) { write_pkn(out, pkn, targets); });
}

SavedPkn load_pkn(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open PKN file " + path.string());
  return read_pkn(in);
}

}  // namespace knowsearch
