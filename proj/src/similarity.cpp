#include "knowsearch/similarity.hpp"

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

namespace knowsearch {

namespace {

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::size_t longest_common_substring(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

double word_similarity(std::string_view a, std::string_view b) {
  if (a == b) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  const double l = static_cast<double>(longest_common_substring(a, b));
  return (l * l) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

double phrase_similarity(std::string_view a, std::string_view b) {
  if (a == b) return 1.0;
  if (b < a) std::swap(a, b);
  const auto wa = split_words(a);
  const auto wb = split_words(b);
  const std::size_t m = wa.size(), n = wb.size();
  if (m == 0 || n == 0) return 0.0;

  std::vector<double> sim(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) sim[i * n + j] = word_similarity(wa[i], wb[j]);
  }

  // Greedy matching: repeatedly take the largest remaining cell, first in
  // row-major order among equals, and strike its row and column.
  std::vector<char> row_used(m, 0), col_used(n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> matched;
  double delta = 0.0;
  for (std::size_t round = 0; round < std::min(m, n); ++round) {
    double best = -1.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (row_used[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (col_used[j]) continue;
        if (sim[i * n + j] > best) {
          best = sim[i * n + j];
          bi = i;
          bj = j;
        }
      }
    }
    row_used[bi] = 1;
    col_used[bj] = 1;
    if (best > 0.0) {
      delta += best;
      matched.emplace_back(bi, bj);
    }
  }
  if (matched.empty()) return 0.0;

  const double base = delta * static_cast<double>(m + n) / (2.0 * static_cast<double>(m) * static_cast<double>(n));

  std::sort(matched.begin(), matched.end());
  const std::size_t t = matched.size();
  double order = 1.0;
  if (t >= 2) {
    std::size_t inversions = 0;
    for (std::size_t x = 0; x < t; ++x) {
      for (std::size_t y = x + 1; y < t; ++y) {
        if (matched[x].second > matched[y].second) ++inversions;
      }
    }
    const double pairs = static_cast<double>(t) * static_cast<double>(t - 1) / 2.0;
    order = 1.0 - static_cast<double>(inversions) / pairs;
  }
  return std::clamp(base * (0.5 + 0.5 * order), 0.0, 1.0);
}

}  // namespace knowsearch
