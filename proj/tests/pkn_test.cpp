#include <gtest/gtest.h>

#include <sstream>

#include "knowsearch/errors.hpp"
#include "knowsearch/phrase.hpp"
#include "knowsearch/pkn.hpp"
#include "knowsearch/pkn_io.hpp"
#include "knowsearch/prd.hpp"
#include "support/docs.hpp"
#include "support/random_graphs.hpp"

using namespace knowsearch;
using testdocs::focal;
using testdocs::make;

namespace {

Date d(const char* s) { return *Date::parse(s); }

Prd prd_of(const Corpus& c, std::initializer_list<std::size_t> docs) {
  Prd p;
  p.d0 = d("2020-01-01");
  p.docs = docs;
  for (auto i : docs) p.doc_ids.push_back(c[i].id);
  return p;
}

PriorKnowledgeNetwork graph(std::vector<std::string> keys, std::vector<std::pair<std::string, std::string>> pairs) {
  std::vector<std::pair<std::string, Date>> nodes;
  for (auto& k : keys) nodes.emplace_back(k, d("2000-01-01"));
  std::vector<std::tuple<std::string, std::string, double, Provenance>> edges;
  for (auto& [a, b] : pairs) edges.emplace_back(a, b, 1.0, Provenance::Adjacency);
  return {nodes, edges};
}

}  // namespace

TEST(Adjacency, ConsecutivePairsWithinSentences) {
  const Corpus c({make("A", "t", "A mask, a lens and a beam.", "2001-01-01"),
                  make("B", "t", "The mask and the lens. The lens.", "2002-01-01"),
                  make("C", "t", "A mask and a mask.", "2003-01-01")});
  const auto an = build_adjacency_network(c, prd_of(c, {0, 1, 2}));
  EXPECT_EQ(an.counts.size(), 2u);
  EXPECT_EQ(an.counts.at(make_key_pair("mask", "lens")), 2u);
  EXPECT_EQ(an.counts.at(make_key_pair("lens", "beam")), 1u);
  EXPECT_EQ(an.nodes.size(), 3u);
  EXPECT_EQ(an.nodes.at("mask"), d("2001-01-01"));
}

TEST(Adjacency, SentenceBoundaryBreaksChain) {
  const Corpus c({make("A", "Title words", "A mask. A lens.", "2001-01-01")});
  const auto an = build_adjacency_network(c, prd_of(c, {0}));
  EXPECT_TRUE(an.counts.empty());
  EXPECT_EQ(an.nodes.size(), 2u);  // titles add no nodes
}

TEST(Semantic, OnlyPairsAtOrAboveThreshold) {
  const std::vector<std::string> keys{"mask layer", "mask layers", "lens"};
  const auto sn = build_semantic_network(keys);
  ASSERT_EQ(sn.similarity.size(), 1u);
  EXPECT_DOUBLE_EQ(sn.similarity.at(make_key_pair("mask layer", "mask layers")), 11.0 / 12.0);
  EXPECT_THROW(build_semantic_network(keys, 0.0), std::invalid_argument);
  EXPECT_THROW(build_semantic_network(keys, 1.5), std::invalid_argument);
}

TEST(Merge, AdjacencyWinsAndSemanticFillsGaps) {
  const Corpus c({make("A", "t", "x", "2001-05-01"), make("B", "Old lens text", "x", "1999-02-03")});
  AdjacencyNetwork an;
  an.nodes = {{"mask", d("2001-05-01")}, {"lens", d("2001-05-01")}, {"beam", d("2001-05-01")}};
  an.counts[make_key_pair("mask", "lens")] = 3;
  SemanticNetwork sn;
  sn.nodes = {"beam", "lens", "mask"};
  sn.similarity[make_key_pair("mask", "lens")] = 0.8;
  sn.similarity[make_key_pair("mask", "beam")] = 0.9;
  const TextIndex index(c);
  const auto pkn = merge_networks(an, sn, index, prd_of(c, {0, 1}));
  const auto mask = *pkn.find("mask"), lens = *pkn.find("lens"), beam = *pkn.find("beam");
  EXPECT_EQ(pkn.weight(mask, lens), 3.0);
  EXPECT_EQ(pkn.weight(mask, beam), 0.9);
  EXPECT_FALSE(pkn.weight(lens, beam));
  for (const auto& e : pkn.edges()) {
    const bool adj = pkn.node(e.a).key == "lens" || pkn.node(e.b).key == "lens";
    EXPECT_EQ(e.provenance, adj ? Provenance::Adjacency : Provenance::Semantic);
  }
  EXPECT_EQ(pkn.node(lens).birthdate, d("1999-02-03"));
  EXPECT_EQ(pkn.node(mask).birthdate, d("2001-05-01"));
  EXPECT_EQ(pkn.node(mask).degree, 2u);
  EXPECT_EQ(pkn.node(mask).strength, 3.9);
}

TEST(PknInvariants, ConstructorRejectsInvalidGraphs) {
  using E = std::tuple<std::string, std::string, double, Provenance>;
  const std::vector<std::pair<std::string, Date>> nodes{{"a", d("2000-01-01")}, {"b", d("2000-01-01")}};
  EXPECT_THROW(PriorKnowledgeNetwork(nodes, {E{"a", "a", 1, Provenance::Adjacency}}), std::invalid_argument);
  EXPECT_THROW(PriorKnowledgeNetwork(nodes, {E{"a", "b", 1, Provenance::Adjacency}, E{"b", "a", 2, Provenance::Adjacency}}),
               std::invalid_argument);
  EXPECT_THROW(PriorKnowledgeNetwork(nodes, {E{"a", "b", 1.5, Provenance::Adjacency}}), std::invalid_argument);
  EXPECT_THROW(PriorKnowledgeNetwork(nodes, {E{"a", "b", 0.0, Provenance::Semantic}}), std::invalid_argument);
  EXPECT_THROW(PriorKnowledgeNetwork(nodes, {E{"a", "z", 1, Provenance::Adjacency}}), std::invalid_argument);
  EXPECT_THROW(PriorKnowledgeNetwork({{"a", d("2000-01-01")}, {"a", d("2000-01-01")}}, {}), std::invalid_argument);
}

TEST(NetworkStats, WorkedExamples) {
  const auto k4 = network_stats(graph({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}}));
  EXPECT_EQ(k4.lcc_nodes, 4u);
  EXPECT_EQ(k4.lcc_density, 1.0);
  const auto pairs = network_stats(graph({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}}));
  EXPECT_EQ(pairs.lcc_nodes, 2u);
  EXPECT_EQ(pairs.lcc_density, 1.0);
  const auto path = network_stats(graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
  EXPECT_EQ(path.lcc_nodes, 3u);
  EXPECT_DOUBLE_EQ(path.lcc_density, 2.0 / 3.0);
  const auto single = network_stats(graph({"a"}, {}));
  EXPECT_EQ(single.lcc_nodes, 1u);
  EXPECT_EQ(single.lcc_density, 0.0);
  EXPECT_EQ(network_stats(PriorKnowledgeNetwork{}).lcc_nodes, 0u);
}

TEST(NetworkStats, TieGoesToComponentWithSmallestKey) {
  // Equal-size components, the one holding "a" has 3 edges, the other 2.
  const auto s = network_stats(graph({"a", "b", "c", "x", "y", "z"},
                                     {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"x", "y"}, {"y", "z"}}));
  EXPECT_EQ(s.lcc_nodes, 3u);
  EXPECT_EQ(s.lcc_density, 1.0);
  const auto s2 = network_stats(graph({"b", "c", "d", "a", "y", "z"},
                                      {{"b", "c"}, {"c", "d"}, {"a", "y"}, {"y", "z"}, {"a", "z"}}));
  EXPECT_EQ(s2.lcc_density, 1.0);
}

TEST(Searchability, WorkedExamples) {
  const auto g = graph({"p", "a", "s", "iso", "t"}, {{"p", "a"}, {"a", "s"}, {"iso", "t"}});
  EXPECT_TRUE(check_searchability(g, {"F", d("2010-01-01"), {"p"}, {"s"}}).searchable);
  const auto bad = check_searchability(g, {"F", d("2010-01-01"), {"p"}, {"s", "t", "nowhere"}});
  EXPECT_FALSE(bad.searchable);
  EXPECT_EQ(bad.unreachable_skes, std::vector<std::string>{"t"});
  EXPECT_EQ(bad.missing_skes, std::vector<std::string>{"nowhere"});
  EXPECT_NE(bad.diagnosis().find("t"), std::string::npos);
  const auto nostart = check_searchability(g, {"F", d("2010-01-01"), {"missing"}, {"s"}});
  EXPECT_FALSE(nostart.searchable);
  EXPECT_FALSE(nostart.has_start);
}

TEST(BuildPkn, EndToEndOnSmallCorpus) {
  const auto f = focal("F", "Optical mask", "A wafer stage with the optical masks.", "2010-01-01");
  const Corpus c({make("A", "Optical mask", "An optical mask on a wafer stage. The wafer stage and a lens.", "2001-01-01"),
                  make("B", "Lens", "A lens with optical masks.", "2003-01-01"), f});
  const TextIndex index(c);
  const auto b = build_pkn(index, f);
  EXPECT_EQ(b.targets.pkes, std::vector<std::string>{"optical mask"});
  EXPECT_EQ(b.targets.skes, (std::vector<std::string>{"wafer stage", "optical masks"}));
  EXPECT_EQ(b.targets.focal_pubdate, f.publication_date);
  const auto om = *b.pkn.find("optical mask"), oms = *b.pkn.find("optical masks");
  const auto ws = *b.pkn.find("wafer stage"), lens = *b.pkn.find("lens");
  EXPECT_EQ(b.pkn.weight(om, ws), 1.0);
  EXPECT_EQ(b.pkn.weight(ws, lens), 1.0);
  EXPECT_EQ(b.pkn.weight(lens, oms), 1.0);
  // optical mask ~ optical masks: (1 + 16/20) * 4 / 8.
  EXPECT_DOUBLE_EQ(*b.pkn.weight(om, oms), (1.0 + 16.0 / 20.0) / 2.0);
  EXPECT_TRUE(check_searchability(b.pkn, b.targets).searchable);
}

TEST(PknIo, RoundTripAndValidation) {
  const auto inst = testgen::random_instance(99, 20, testgen::WeightMode::Mixed);
  const auto pkn = inst.network();
  const auto targets = inst.targets();
  std::stringstream buf;
  write_pkn(buf, pkn, targets);
  const std::string text = buf.str();
  const auto back = read_pkn(buf);
  ASSERT_EQ(back.pkn.node_count(), pkn.node_count());
  ASSERT_EQ(back.pkn.edge_count(), pkn.edge_count());
  for (std::size_t i = 0; i < pkn.node_count(); ++i) {
    EXPECT_EQ(back.pkn.node(i).key, pkn.node(i).key);
    EXPECT_EQ(back.pkn.node(i).birthdate, pkn.node(i).birthdate);
    EXPECT_EQ(back.pkn.node(i).strength, pkn.node(i).strength);
  }
  for (std::size_t e = 0; e < pkn.edge_count(); ++e) {
    EXPECT_EQ(back.pkn.edges()[e].weight, pkn.edges()[e].weight);
    EXPECT_EQ(back.pkn.edges()[e].provenance, pkn.edges()[e].provenance);
  }
  EXPECT_EQ(back.targets.pkes, targets.pkes);
  EXPECT_EQ(back.targets.skes, targets.skes);
  EXPECT_EQ(back.targets.focal_pubdate, targets.focal_pubdate);

  auto j = nlohmann::json::parse(text);
  j["nodes"][0]["degree"] = 999;
  std::istringstream tampered(j.dump());
  EXPECT_THROW(read_pkn(tampered), DataError);
  std::istringstream junk("{\"format\":\"other\"}");
  EXPECT_THROW(read_pkn(junk), DataError);
}
