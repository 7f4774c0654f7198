#include "knowsearch/pkn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "knowsearch/errors.hpp"
#include "knowsearch/similarity.hpp"

namespace knowsearch {

std::string_view to_string(Provenance p) { return p == Provenance::Adjacency ? "adjacency" : "semantic"; }

PriorKnowledgeNetwork::PriorKnowledgeNetwork(
    std::vector<std::pair<std::string, Date>> nodes,
    std::vector<std::tuple<std::string, std::string, double, Provenance>> edges) {
  std::sort(nodes.begin(), nodes.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0 && nodes[i].first == nodes[i - 1].first) {
      throw std::invalid_argument("duplicate node key: " + nodes[i].first);
    }
    if (nodes[i].first.empty()) throw std::invalid_argument("empty node key");
  }
  nodes_.reserve(nodes.size());
  for (auto& [key, birth] : nodes) nodes_.push_back(Node{std::move(key), birth, 0, 0.0});

  edges_.reserve(edges.size());
  for (auto& [ka, kb, w, prov] : edges) {
    auto ia = find(ka), ib = find(kb);
    if (!ia || !ib) throw std::invalid_argument("edge endpoint is not a node: " + ka + " - " + kb);
    if (*ia == *ib) throw std::invalid_argument("self-loop on " + ka);
    if (prov == Provenance::Adjacency && !(w >= 1.0 && std::floor(w) == w)) {
      throw std::invalid_argument("adjacency weight must be a positive integer: " + ka + " - " + kb);
    }
    if (prov == Provenance::Semantic && !(w > 0.0 && w <= 1.0)) {
      throw std::invalid_argument("semantic weight must lie in (0, 1]: " + ka + " - " + kb);
    }
    edges_.push_back(Edge{std::min(*ia, *ib), std::max(*ia, *ib), w, prov});
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  for (std::size_t e = 1; e < edges_.size(); ++e) {
    if (edges_[e].a == edges_[e - 1].a && edges_[e].b == edges_[e - 1].b) {
      throw std::invalid_argument("parallel edge: " + nodes_[edges_[e].a].key + " - " + nodes_[edges_[e].b].key);
    }
  }

  adjacency_.assign(nodes_.size(), {});
  for (const auto& e : edges_) {
    adjacency_[e.a].push_back({e.b, e.weight});
    adjacency_[e.b].push_back({e.a, e.weight});
    nodes_[e.a].degree += 1;
    nodes_[e.b].degree += 1;
    nodes_[e.a].strength += e.weight;
    nodes_[e.b].strength += e.weight;
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(), [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
  }
}

std::optional<std::size_t> PriorKnowledgeNetwork::find(std::string_view key) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), key,
                             [](const Node& n, std::string_view k) { return n.key < k; });
  if (it == nodes_.end() || it->key != key) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::optional<double> PriorKnowledgeNetwork::weight(std::size_t a, std::size_t b) const {
  const auto& list = adjacency_[a];
  auto it = std::lower_bound(list.begin(), list.end(), b, [](const Neighbor& n, std::size_t v) { return n.node < v; });
  if (it == list.end() || it->node != b) return std::nullopt;
  return it->weight;
}

AdjacencyNetwork build_adjacency_network(const Corpus& corpus, const Prd& prd) {
  AdjacencyNetwork an;
  for (std::size_t d : prd.docs) {
    const auto& doc = corpus[d];
    for (const auto& sentence : abstract_sentence_elements(doc)) {
      for (std::size_t t = 0; t < sentence.size(); ++t) {
        auto [it, inserted] = an.nodes.emplace(sentence[t].key, doc.publication_date);
        if (!inserted) it->second = std::min(it->second, doc.publication_date);
        if (t + 1 < sentence.size() && sentence[t].key != sentence[t + 1].key) {
          an.counts[make_key_pair(sentence[t].key, sentence[t + 1].key)] += 1;
        }
      }
    }
  }
  return an;
}

SemanticNetwork build_semantic_network(std::span<const std::string> nodes, double threshold,
                                       const SimilarityFn& similarity) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw std::invalid_argument("similarity threshold must be in (0, 1]");
  SemanticNetwork sn;
  sn.nodes.assign(nodes.begin(), nodes.end());
  std::sort(sn.nodes.begin(), sn.nodes.end());
  sn.nodes.erase(std::unique(sn.nodes.begin(), sn.nodes.end()), sn.nodes.end());
  for (std::size_t i = 0; i < sn.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < sn.nodes.size(); ++j) {
      const double s = similarity ? similarity(sn.nodes[i], sn.nodes[j]) : phrase_similarity(sn.nodes[i], sn.nodes[j]);
      if (s >= threshold) sn.similarity.emplace(KeyPair{sn.nodes[i], sn.nodes[j]}, s);
    }
  }
  return sn;
}

PriorKnowledgeNetwork merge_networks(const AdjacencyNetwork& an, const SemanticNetwork& sn, const TextIndex& index,
                                     const Prd& prd) {
  const auto& corpus = index.corpus();
  std::vector<std::pair<std::string, Date>> nodes;
  nodes.reserve(an.nodes.size());
  for (const auto& [key, extracted_from] : an.nodes) {
    Date birth = extracted_from;
    for (std::size_t d : prd.docs) {
      if (corpus[d].publication_date < birth && index.contains(d, key)) birth = corpus[d].publication_date;
    }
    nodes.emplace_back(key, birth);
  }

  std::vector<std::tuple<std::string, std::string, double, Provenance>> edges;
  for (const auto& [pair, n] : an.counts) {
    edges.emplace_back(pair.first, pair.second, static_cast<double>(n), Provenance::Adjacency);
  }
  for (const auto& [pair, s] : sn.similarity) {
    if (an.counts.contains(pair)) continue;
    if (!an.nodes.contains(pair.first) || !an.nodes.contains(pair.second)) continue;
    edges.emplace_back(pair.first, pair.second, s, Provenance::Semantic);
  }
  return PriorKnowledgeNetwork(std::move(nodes), std::move(edges));
}

std::vector<std::size_t> connected_components(const PriorKnowledgeNetwork& pkn) {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(pkn.node_count(), kUnset);
  std::size_t next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < pkn.node_count(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (const auto& nb : pkn.neighbors(u)) {
        if (label[nb.node] == kUnset) {
          label[nb.node] = next;
          stack.push_back(nb.node);
        }
      }
    }
    ++next;
  }
  return label;
}

NetworkStats network_stats(const PriorKnowledgeNetwork& pkn) {
  NetworkStats st;
  st.total_nodes = pkn.node_count();
  st.total_edges = pkn.edge_count();
  if (pkn.node_count() == 0) return st;

  const auto label = connected_components(pkn);
  const std::size_t ncomp = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::size_t> size(ncomp, 0), edges(ncomp, 0);
  for (auto l : label) ++size[l];
  for (const auto& e : pkn.edges()) ++edges[label[e.a]];
  // Labels follow smallest-member order, so the first maximum is the
  // component holding the smallest key among the largest ones.
  const auto lcc = static_cast<std::size_t>(std::max_element(size.begin(), size.end()) - size.begin());
  st.lcc_nodes = size[lcc];
  if (st.lcc_nodes > 1) {
    const double v = static_cast<double>(st.lcc_nodes);
    st.lcc_density = 2.0 * static_cast<double>(edges[lcc]) / (v * (v - 1.0));
  }
  return st;
}

std::string Searchability::diagnosis() const {
  if (searchable) return "searchable";
  std::string out;
  auto append = [&out](const char* what, const std::vector<std::string>& keys) {
    if (keys.empty()) return;
    if (!out.empty()) out += "; ";
    out += what;
    out += ": ";
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i) out += ", ";
      out += keys[i];
    }
  };
  append("problem elements not in network", missing_pkes);
  append("solution elements not in network", missing_skes);
  append("solution elements unreachable from problem elements", unreachable_skes);
  if (!has_start) out = "no start node; " + out;
  return out;
}

Searchability check_searchability(const PriorKnowledgeNetwork& pkn, const FocalTargets& targets) {
  Searchability res;
  const auto label = connected_components(pkn);
  std::vector<char> start_component(pkn.node_count(), 0);
  bool any_start = false;
  for (const auto& key : targets.pkes) {
    if (auto i = pkn.find(key)) {
      start_component[label[*i]] = 1;
      any_start = true;
    } else {
      res.missing_pkes.push_back(key);
    }
  }
  for (const auto& key : targets.skes) {
    auto i = pkn.find(key);
    if (!i) {
      res.missing_skes.push_back(key);
    } else if (!start_component[label[*i]]) {
      res.unreachable_skes.push_back(key);
    }
  }
  res.has_start = any_start;
  res.searchable = any_start && res.missing_skes.empty() && res.unreachable_skes.empty();
  return res;
}

PknBuild build_pkn(const TextIndex& index, const PatentDoc& focal, double threshold) {
  PknBuild out;
  out.elements = extract_focal_elements(focal);
  out.prd = build_prd(index, focal, out.elements);
  auto an = build_adjacency_network(index.corpus(), out.prd);
  std::vector<std::string> keys;
  keys.reserve(an.nodes.size());
  for (const auto& [k, _] : an.nodes) keys.push_back(k);
  auto sn = build_semantic_network(keys, threshold);
  out.pkn = merge_networks(an, sn, index, out.prd);
  out.targets = FocalTargets{focal.id, focal.publication_date, out.elements.pke_keys(), out.elements.ske_keys()};
  return out;
}

}  // namespace knowsearch
