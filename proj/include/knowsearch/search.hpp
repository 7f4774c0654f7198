#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "knowsearch/pkn.hpp"

namespace knowsearch {

enum class SearchRule { Bfs, Dfs, Familiarity, Degree, Recency };

inline constexpr std::array<SearchRule, 5> kAllRules{SearchRule::Bfs, SearchRule::Dfs, SearchRule::Familiarity,
                                                     SearchRule::Degree, SearchRule::Recency};

std::string_view to_string(SearchRule rule);
std::optional<SearchRule> rule_from_string(std::string_view name);

enum class Termination { Completed, FrontierExhausted };

std::string_view to_string(Termination t);

struct TraceStep {
  std::size_t index = 0;  // 1-based
  std::string key;
  double cost = 0.0;
  double cumulative = 0.0;
  std::size_t skes_found = 0;
};

struct SearchResult {
  SearchRule rule = SearchRule::Bfs;
  double tsc = 0.0;
  std::size_t nsn = 0;
  std::size_t initial_skes_found = 0;  // SKEs that were already PKEs
  std::vector<TraceStep> trace;
  Termination terminated = Termination::Completed;
};

// Searched set V, frontier N and the rule-specific selection structure.
// Informed rules keep the frontier in an ordered set keyed by
// (primary, secondary, node index), smallest first; familiarity entries are
// re-keyed whenever a frontier node gains a heavier edge into V.
class SearchState {
 public:
  // Throws NoStartNodes when no PKE is a node.
  SearchState(const PriorKnowledgeNetwork& pkn, const FocalTargets& targets, SearchRule rule);

  SearchRule rule() const { return rule_; }
  std::span<const std::size_t> searched() const { return searched_; }
  bool is_searched(std::size_t node) const { return in_v_[node]; }
  bool in_frontier(std::size_t node) const { return in_n_[node]; }
  std::size_t frontier_size() const { return frontier_count_; }
  std::vector<std::size_t> frontier() const;

  // Largest edge weight from a frontier node into V.
  double familiarity(std::size_t node) const { return best_weight_[node]; }

  std::size_t ske_count() const { return ske_total_; }
  std::size_t skes_found() const { return skes_found_; }
  bool complete() const { return skes_found_ == ske_total_; }

  // Throws EmptyFrontier.
  std::size_t select_next() const;
  // 1 / (largest edge weight from `node` into V). Requires in_frontier(node).
  double step_cost(std::size_t node) const;
  // Moves `node` from N to V and discovers its unseen neighbours.
  void absorb(std::size_t node);

 private:
  struct Candidate {
    double primary;
    double secondary;
    std::size_t node;
    friend auto operator<=>(const Candidate&, const Candidate&) = default;
  };

  Candidate candidate(std::size_t node) const;
  void discover(std::span<const std::size_t> fresh);
  void mark_searched(std::size_t node);

  const PriorKnowledgeNetwork* pkn_;
  SearchRule rule_;
  long focal_day_;
  std::vector<char> in_v_, in_n_, is_ske_;
  std::vector<double> best_weight_;
  std::vector<std::size_t> searched_;
  std::size_t frontier_count_ = 0;
  std::size_t ske_total_ = 0;
  std::size_t skes_found_ = 0;

  std::deque<std::size_t> queue_;   // BFS
  std::vector<std::size_t> stack_;  // DFS, top at back
  std::set<Candidate> ranked_;      // informed rules
};

SearchState init_state(const PriorKnowledgeNetwork& pkn, const FocalTargets& targets, SearchRule rule);
std::size_t select_next(const SearchState& state);
double step_cost(std::size_t selected, const SearchState& state);

// Runs until every SKE is searched (Completed) or the frontier empties
// (FrontierExhausted). max_steps defaults to the node count; exceeding a
// smaller caller-supplied budget throws BudgetExceeded.
SearchResult run_search(const PriorKnowledgeNetwork& pkn, const FocalTargets& targets, SearchRule rule,
                        std::optional<std::size_t> max_steps = std::nullopt);

// CSV columns: focal_id, rule, step, selected_ke, cost, cumulative_tsc, skes_found.
void write_trace_header(std::ostream& out);
void write_trace_rows(std::ostream& out, std::string_view focal_id, const SearchResult& result);

}  // namespace knowsearch
