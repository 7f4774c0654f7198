#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "knowsearch/date.hpp"
#include "knowsearch/phrase.hpp"
#include "knowsearch/prd.hpp"

namespace knowsearch {

using KeyPair = std::pair<std::string, std::string>;  // first < second

inline KeyPair make_key_pair(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

// Consecutive co-occurrence counts within abstract sentences.
struct AdjacencyNetwork {
  std::map<std::string, Date> nodes;  // key -> earliest publication of a doc it was extracted from
  std::map<KeyPair, std::uint32_t> counts;
};

struct SemanticNetwork {
  std::vector<std::string> nodes;
  std::map<KeyPair, double> similarity;
};

enum class Provenance { Adjacency, Semantic };

std::string_view to_string(Provenance p);

struct Edge {
  std::size_t a = 0;  // a < b, node indices
  std::size_t b = 0;
  double weight = 0.0;
  Provenance provenance = Provenance::Adjacency;
};

struct Node {
  std::string key;
  Date birthdate;
  std::size_t degree = 0;
  double strength = 0.0;
};

struct Neighbor {
  std::size_t node;
  double weight;
};

// Simple undirected weighted graph. Nodes are indexed in ascending key
// order, so index order is key order. Degree and strength are derived from
// the edge list at construction.
class PriorKnowledgeNetwork {
 public:
  PriorKnowledgeNetwork() = default;
  // `keys` need not be sorted; throws std::invalid_argument on duplicate keys,
  // self-loops, parallel edges, or weights that violate their provenance.
  PriorKnowledgeNetwork(std::vector<std::pair<std::string, Date>> nodes,
                        std::vector<std::tuple<std::string, std::string, double, Provenance>> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }
  // Sorted by neighbor index.
  std::span<const Neighbor> neighbors(std::size_t i) const { return adjacency_[i]; }
  std::optional<std::size_t> find(std::string_view key) const;
  std::optional<double> weight(std::size_t a, std::size_t b) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

// Focal-patent data the search needs alongside the graph.
struct FocalTargets {
  std::string focal_id;
  Date focal_pubdate;
  std::vector<std::string> pkes;
  std::vector<std::string> skes;
};

struct NetworkStats {
  std::size_t lcc_nodes = 0;
  double lcc_density = 0.0;
  std::size_t total_nodes = 0;
  std::size_t total_edges = 0;
};

struct Searchability {
  bool searchable = false;
  bool has_start = false;                     // at least one PKE is a node
  std::vector<std::string> missing_pkes;      // not PKN nodes
  std::vector<std::string> missing_skes;      // not PKN nodes
  std::vector<std::string> unreachable_skes;  // nodes outside the PKE components

  std::string diagnosis() const;
};

AdjacencyNetwork build_adjacency_network(const Corpus& corpus, const Prd& prd);

using SimilarityFn = std::function<double(std::string_view, std::string_view)>;

// Default similarity is phrase_similarity. Throws std::invalid_argument
// unless threshold is in (0, 1].
SemanticNetwork build_semantic_network(std::span<const std::string> nodes, double threshold = 0.7,
                                       const SimilarityFn& similarity = {});

// Union of both edge sets; adjacency counts win over similarities.
// Birthdates are the earliest publication among PRD docs containing the key.
PriorKnowledgeNetwork merge_networks(const AdjacencyNetwork& an, const SemanticNetwork& sn,
                                     const TextIndex& index, const Prd& prd);

// Component labels, numbered in order of each component's smallest node.
std::vector<std::size_t> connected_components(const PriorKnowledgeNetwork& pkn);

NetworkStats network_stats(const PriorKnowledgeNetwork& pkn);

Searchability check_searchability(const PriorKnowledgeNetwork& pkn, const FocalTargets& targets);

struct PknBuild {
  FocalElements elements;
  Prd prd;
  PriorKnowledgeNetwork pkn;
  FocalTargets targets;
};

// extract -> PRD -> adjacency + semantic -> merge. Propagates
// NoElementsFound and UncoverableSkes.
PknBuild build_pkn(const TextIndex& index, const PatentDoc& focal, double threshold = 0.7);

}  // namespace knowsearch
