#include "knowsearch/search.hpp"

#include <algorithm>
#include <ostream>

#include "knowsearch/csv.hpp"
#include "knowsearch/errors.hpp"

namespace knowsearch {

std::string_view to_string(SearchRule rule) {
  switch (rule) {
    case SearchRule::Bfs:
      return "bfs";
    case SearchRule::Dfs:
      return "dfs";
    case SearchRule::Familiarity:
      return "familiarity";
    case SearchRule::Degree:
      return "degree";
    case SearchRule::Recency:
      return "recency";
  }
  return "";
}

std::optional<SearchRule> rule_from_string(std::string_view name) {
  for (auto r : kAllRules) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

std::string_view to_string(Termination t) {
  return t == Termination::Completed ? "completed" : "frontier_exhausted";
}

SearchState::SearchState(const PriorKnowledgeNetwork& pkn, const FocalTargets& targets, SearchRule rule)
    : pkn_(&pkn),
      rule_(rule),
      focal_day_(targets.focal_pubdate.days_since_epoch()),
      in_v_(pkn.node_count(), 0),
      in_n_(pkn.node_count(), 0),
      is_ske_(pkn.node_count(), 0),
      best_weight_(pkn.node_count(), 0.0) {
  std::vector<std::size_t> start;
  for (const auto& key : targets.pkes) {
    if (auto i = pkn.find(key)) start.push_back(*i);
  }
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());
  if (start.empty()) throw NoStartNodes();

  // SKEs that are not nodes still count toward the total; such a search
  // can only end in FrontierExhausted.
  std::set<std::string> ske_keys(targets.skes.begin(), targets.skes.end());
  ske_total_ = ske_keys.size();
  for (const auto& key : ske_keys) {
    if (auto i = pkn.find(key)) is_ske_[*i] = 1;
  }

  for (auto s : start) mark_searched(s);
  std::vector<std::size_t> fresh;
  for (auto s : start) {
    for (const auto& nb : pkn.neighbors(s)) {
      if (in_v_[nb.node]) continue;
      if (!in_n_[nb.node]) {
        in_n_[nb.node] = 1;
        ++frontier_count_;
        fresh.push_back(nb.node);
      }
      best_weight_[nb.node] = std::max(best_weight_[nb.node], nb.weight);
    }
  }
  std::sort(fresh.begin(), fresh.end());
  discover(fresh);
}

void SearchState::mark_searched(std::size_t node) {
  in_v_[node] = 1;
  searched_.push_back(node);
  if (is_ske_[node]) ++skes_found_;
}

SearchState::Candidate SearchState::candidate(std::size_t node) const {
  const auto& n = pkn_->node(node);
  const auto degree = static_cast<double>(n.degree);
  switch (rule_) {
    case SearchRule::Familiarity:
      return {-best_weight_[node], -degree, node};
    case SearchRule::Degree:
      return {-degree, -n.strength, node};
    case SearchRule::Recency:
      return {static_cast<double>(focal_day_ - n.birthdate.days_since_epoch()), degree, node};
    default:
      return {0.0, 0.0, node};
  }
}

// `fresh` holds newly discovered frontier nodes in ascending index order.
void SearchState::discover(std::span<const std::size_t> fresh) {
  switch (rule_) {
    case SearchRule::Bfs:
      queue_.insert(queue_.end(), fresh.begin(), fresh.end());
      break;
    case SearchRule::Dfs:
      stack_.insert(stack_.end(), fresh.rbegin(), fresh.rend());
      break;
    default:
      for (auto n : fresh) ranked_.insert(candidate(n));
      break;
  }
}

std::vector<std::size_t> SearchState::frontier() const {
  std::vector<std::size_t> out;
  out.reserve(frontier_count_);
  for (std::size_t i = 0; i < in_n_.size(); ++i) {
    if (in_n_[i]) out.push_back(i);
  }
  return out;
}

std::size_t SearchState::select_next() const {
  if (frontier_count_ == 0) throw EmptyFrontier();
  switch (rule_) {
    case SearchRule::Bfs:
      return queue_.front();
    case SearchRule::Dfs:
      return stack_.back();
    default:
      return ranked_.begin()->node;
  }
}

double SearchState::step_cost(std::size_t node) const { return 1.0 / best_weight_[node]; }

void SearchState::absorb(std::size_t node) {
  switch (rule_) {
    case SearchRule::Bfs:
      if (!queue_.empty() && queue_.front() == node) {
        queue_.pop_front();
      } else {
        std::erase(queue_, node);
      }
      break;
    case SearchRule::Dfs:
      if (!stack_.empty() && stack_.back() == node) {
        stack_.pop_back();
      } else {
        std::erase(stack_, node);
      }
      break;
    default:
      ranked_.erase(candidate(node));
      break;
  }
  in_n_[node] = 0;
  --frontier_count_;
  mark_searched(node);

  std::vector<std::size_t> fresh;
  for (const auto& nb : pkn_->neighbors(node)) {
    const auto v = nb.node;
    if (in_v_[v]) continue;
    if (!in_n_[v]) {
      in_n_[v] = 1;
      ++frontier_count_;
      best_weight_[v] = nb.weight;
      fresh.push_back(v);
    } else if (nb.weight > best_weight_[v]) {
      if (rule_ == SearchRule::Familiarity) {
        ranked_.erase(candidate(v));
        best_weight_[v] = nb.weight;
        ranked_.insert(candidate(v));
      } else {
        best_weight_[v] = nb.weight;
      }
    }
  }
  discover(fresh);
}

SearchState init_state(const PriorKnowledgeNetwork& pkn, const FocalTargets& targets, SearchRule rule) {
  return SearchState(pkn, targets, rule);
}

std::size_t select_next(const SearchState& state) { return state.select_next(); }

double step_cost(std::size_t selected, const SearchState& state) { return state.step_cost(selected); }

SearchResult run_search(const PriorKnowledgeNetwork& pkn, const FocalTargets& targets, SearchRule rule,
                        std::optional<std::size_t> max_steps) {
  SearchState state(pkn, targets, rule);
  const std::size_t budget = max_steps.value_or(pkn.node_count());

  SearchResult res;
  res.rule = rule;
  res.initial_skes_found = state.skes_found();
  double total = 0.0;
  while (true) {
    if (state.complete()) {
      res.terminated = Termination::Completed;
      break;
    }
    if (state.frontier_size() == 0) {
      res.terminated = Termination::FrontierExhausted;
      break;
    }
    if (res.trace.size() >= budget) throw BudgetExceeded(budget);

    const auto next = state.select_next();
    const double cost = state.step_cost(next);
    state.absorb(next);
    total += cost;
    res.trace.push_back(TraceStep{res.trace.size() + 1, pkn.node(next).key, cost, total, state.skes_found()});
  }
  res.tsc = total;
  res.nsn = res.trace.size();
  return res;
}

void write_trace_header(std::ostream& out) {
  CsvWriter(out).row({"focal_id", "rule", "step", "selected_ke", "cost", "cumulative_tsc", "skes_found"});
}

void write_trace_rows(std::ostream& out, std::string_view focal_id, const SearchResult& result) {
  CsvWriter csv(out);
  const std::string rule(to_string(result.rule));
  for (const auto& step : result.trace) {
    csv.row({focal_id, rule, std::to_string(step.index), step.key, format_double(step.cost),
             format_double(step.cumulative), std::to_string(step.skes_found)});
  }
}

}  // namespace knowsearch
