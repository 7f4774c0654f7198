#include <gtest/gtest.h>

#include <sstream>

#include "knowsearch/errors.hpp"
#include "knowsearch/search.hpp"
#include "support/random_graphs.hpp"
#include "support/reference_search.hpp"

using namespace knowsearch;

namespace {

Date d(const char* s) { return *Date::parse(s); }

// PKE a, SKE e; a-b 4, a-c 1, b-e 2, c-e 0.8.
struct Diamond {
  PriorKnowledgeNetwork pkn{{{"a", d("2000-01-01")}, {"b", d("2000-01-01")}, {"c", d("2000-01-01")},
                             {"e", d("2000-01-01")}},
                            {{"a", "b", 4.0, Provenance::Adjacency},
                             {"a", "c", 1.0, Provenance::Adjacency},
                             {"b", "e", 2.0, Provenance::Adjacency},
                             {"c", "e", 0.8, Provenance::Semantic}}};
  FocalTargets targets{"F", d("2010-01-01"), {"a"}, {"e"}};
};

std::vector<std::string> keys_of(const SearchResult& r) {
  std::vector<std::string> out;
  for (const auto& s : r.trace) out.push_back(s.key);
  return out;
}

}  // namespace

TEST(RunSearch, FamiliarityOnDiamond) {
  Diamond g;
  const auto r = run_search(g.pkn, g.targets, SearchRule::Familiarity);
  EXPECT_EQ(keys_of(r), (std::vector<std::string>{"b", "e"}));
  EXPECT_EQ(r.trace[0].cost, 0.25);
  EXPECT_EQ(r.trace[1].cost, 0.5);
  EXPECT_EQ(r.tsc, 0.25 + 0.5);
  EXPECT_EQ(r.nsn, 2u);
  EXPECT_EQ(r.terminated, Termination::Completed);
}

TEST(RunSearch, BfsOnDiamond) {
  Diamond g;
  const auto r = run_search(g.pkn, g.targets, SearchRule::Bfs);
  EXPECT_EQ(keys_of(r), (std::vector<std::string>{"b", "c", "e"}));
  EXPECT_EQ(r.trace[1].cost, 1.0);
  EXPECT_EQ(r.trace[2].cost, 0.5);
  EXPECT_EQ(r.tsc, 0.25 + 1.0 + 0.5);
  EXPECT_EQ(r.nsn, 3u);
}

TEST(RunSearch, DfsOnDiamondGoesDeepFirst) {
  Diamond g;
  // Initial stack pops b (smallest key), b discovers e which is on top.
  const auto r = run_search(g.pkn, g.targets, SearchRule::Dfs);
  EXPECT_EQ(keys_of(r), (std::vector<std::string>{"b", "e"}));
}

TEST(RunSearch, SkesInsidePkesCostNothing) {
  Diamond g;
  g.targets.skes = {"a"};
  const auto r = run_search(g.pkn, g.targets, SearchRule::Bfs);
  EXPECT_EQ(r.tsc, 0.0);
  EXPECT_EQ(r.nsn, 0u);
  EXPECT_EQ(r.initial_skes_found, 1u);
  EXPECT_EQ(r.terminated, Termination::Completed);
}

TEST(RunSearch, FrontierExhaustedIsReported) {
  PriorKnowledgeNetwork pkn{{{"a", d("2000-01-01")}, {"b", d("2000-01-01")}, {"z", d("2000-01-01")}},
                            {{"a", "b", 1.0, Provenance::Adjacency}}};
  const auto r = run_search(pkn, {"F", d("2010-01-01"), {"a"}, {"z"}}, SearchRule::Degree);
  EXPECT_EQ(r.terminated, Termination::FrontierExhausted);
  EXPECT_EQ(r.nsn, 1u);
}

TEST(RunSearch, NoStartNodes) {
  Diamond g;
  g.targets.pkes = {"nothing"};
  EXPECT_THROW(run_search(g.pkn, g.targets, SearchRule::Bfs), NoStartNodes);
}

TEST(RunSearch, BudgetExceededOnlyBelowNaturalLength) {
  Diamond g;
  EXPECT_THROW(run_search(g.pkn, g.targets, SearchRule::Bfs, 2), BudgetExceeded);
  EXPECT_NO_THROW(run_search(g.pkn, g.targets, SearchRule::Bfs, 3));
}

TEST(InitState, SeedsFrontierFromStartNodes) {
  Diamond g;
  const auto s = init_state(g.pkn, g.targets, SearchRule::Bfs);
  ASSERT_EQ(s.searched().size(), 1u);
  EXPECT_EQ(g.pkn.node(s.searched()[0]).key, "a");
  std::vector<std::string> frontier;
  for (auto i : s.frontier()) frontier.push_back(g.pkn.node(i).key);
  EXPECT_EQ(frontier, (std::vector<std::string>{"b", "c"}));
  EXPECT_EQ(s.skes_found(), 0u);
}

TEST(SelectNext, FamiliarityPrefersHeavierEdge) {
  Diamond g;
  const auto s = init_state(g.pkn, g.targets, SearchRule::Familiarity);
  EXPECT_EQ(g.pkn.node(select_next(s)).key, "b");
}

TEST(SelectNext, FullTieFallsBackToKey) {
  PriorKnowledgeNetwork pkn{{{"a", d("2000-01-01")}, {"y", d("2000-01-01")}, {"x", d("2000-01-01")}},
                            {{"a", "y", 2.0, Provenance::Adjacency}, {"a", "x", 2.0, Provenance::Adjacency}}};
  for (auto rule : kAllRules) {
    const auto s = init_state(pkn, {"F", d("2010-01-01"), {"a"}, {"x"}}, rule);
    EXPECT_EQ(pkn.node(select_next(s)).key, "x") << to_string(rule);
  }
}

TEST(SelectNext, RecencyPrefersYoungerNode) {
  PriorKnowledgeNetwork pkn{{{"a", d("1990-01-01")}, {"b", d("1999-01-01")}, {"c", d("2005-01-01")}},
                            {{"a", "b", 1.0, Provenance::Adjacency}, {"a", "c", 1.0, Provenance::Adjacency}}};
  const auto s = init_state(pkn, {"F", d("2010-01-01"), {"a"}, {"c"}}, SearchRule::Recency);
  EXPECT_EQ(pkn.node(select_next(s)).key, "c");
}

TEST(SelectNext, EmptyFrontierThrows) {
  PriorKnowledgeNetwork pkn{{{"a", d("2000-01-01")}}, {}};
  const auto s = init_state(pkn, {"F", d("2010-01-01"), {"a"}, {"a"}}, SearchRule::Degree);
  EXPECT_THROW(select_next(s), EmptyFrontier);
}

TEST(StepCost, ReciprocalOfStrongestEdgeIntoSearched) {
  PriorKnowledgeNetwork pkn{{{"a", d("2000-01-01")}, {"b", d("2000-01-01")}, {"x", d("2000-01-01")},
                             {"s", d("2000-01-01")}},
                            {{"a", "x", 1.0, Provenance::Adjacency},
                             {"b", "x", 5.0, Provenance::Adjacency},
                             {"a", "s", 0.8, Provenance::Semantic}}};
  const auto st = init_state(pkn, {"F", d("2010-01-01"), {"a", "b"}, {"x"}}, SearchRule::Bfs);
  EXPECT_EQ(step_cost(*pkn.find("x"), st), 0.2);
  EXPECT_EQ(step_cost(*pkn.find("s"), st), 1.25);
  Diamond g;
  const auto st2 = init_state(g.pkn, g.targets, SearchRule::Bfs);
  EXPECT_EQ(step_cost(*g.pkn.find("b"), st2), 0.25);
}

TEST(SearchRuleNames, RoundTrip) {
  for (auto r : kAllRules) EXPECT_EQ(rule_from_string(to_string(r)), r);
  EXPECT_FALSE(rule_from_string("greedy"));
}

TEST(Trace, CsvRowsAndInvariants) {
  Diamond g;
  const auto r = run_search(g.pkn, g.targets, SearchRule::Bfs);
  std::ostringstream out;
  write_trace_header(out);
  write_trace_rows(out, "F", r);
  EXPECT_EQ(out.str(),
            "focal_id,rule,step,selected_ke,cost,cumulative_tsc,skes_found\n"
            "F,bfs,1,b,0.25,0.25,0\n"
            "F,bfs,2,c,1,1.25,0\n"
            "F,bfs,3,e,0.5,1.75,1\n");
}

class OracleEquivalence : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(OracleEquivalence, TracesMatchNaiveSimulator) {
  const auto seed = GetParam();
  const auto mode = static_cast<testgen::WeightMode>(seed % 3);
  const auto inst = testgen::random_instance(seed, 30, mode);
  const auto pkn = inst.network();
  const auto targets = inst.targets();
  for (auto rule : kAllRules) {
    const auto got = run_search(pkn, targets, rule);
    const auto want = reference::simulate(inst.graph, inst.pkes, inst.skes, inst.focal_pub, testgen::to_reference(rule));
    ASSERT_EQ(got.trace.size(), want.steps.size()) << "seed " << seed << " rule " << to_string(rule);
    double sum = 0.0;
    for (std::size_t k = 0; k < want.steps.size(); ++k) {
      EXPECT_EQ(got.trace[k].key, want.steps[k].key) << "seed " << seed << " step " << k;
      EXPECT_EQ(got.trace[k].cost, want.steps[k].cost);
      EXPECT_EQ(got.trace[k].skes_found, want.steps[k].skes_found);
      sum += got.trace[k].cost;
      EXPECT_EQ(got.trace[k].cumulative, sum);
    }
    EXPECT_EQ(got.tsc, want.tsc);
    EXPECT_EQ(got.nsn, got.trace.size());
    EXPECT_EQ(got.terminated == Termination::Completed, want.completed);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, OracleEquivalence, ::testing::Range<std::uint64_t>(1, 121));
