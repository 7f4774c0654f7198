#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "knowsearch/pkn.hpp"
#include "knowsearch/random.hpp"
#include "knowsearch/similarity.hpp"

using namespace knowsearch;

namespace {

// Straightforward re-derivation of the measure, for comparison.
double ref_word(const std::string& a, const std::string& b) {
  if (a == b) return 1.0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t k = 0;
      while (i + k < a.size() && j + k < b.size() && a[i + k] == b[j + k]) ++k;
      best = std::max(best, k);
    }
  }
  return static_cast<double>(best * best) / static_cast<double>(a.size() * b.size());
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

double ref_phrase(std::string p, std::string q) {
  if (p == q) return 1.0;
  if (q < p) std::swap(p, q);
  const auto a = words(p), b = words(q);
  const std::size_t m = a.size(), n = b.size();
  std::vector<std::vector<double>> M(m, std::vector<double>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) M[i][j] = ref_word(a[i], b[j]);
  std::vector<bool> row(m), col(n);
  std::vector<std::pair<std::size_t, std::size_t>> picked;
  double delta = 0.0;
  for (std::size_t round = 0; round < std::min(m, n); ++round) {
    double best = -1.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!row[i] && !col[j] && M[i][j] > best) best = M[i][j], bi = i, bj = j;
    row[bi] = col[bj] = true;
    if (best > 0.0) {
      delta += best;
      picked.emplace_back(bi, bj);
    }
  }
  std::sort(picked.begin(), picked.end());
  const std::size_t t = picked.size();
  double omega = 1.0;
  if (t >= 2) {
    std::size_t inv = 0;
    for (std::size_t x = 0; x < t; ++x)
      for (std::size_t y = x + 1; y < t; ++y) inv += picked[x].second > picked[y].second;
    omega = 1.0 - static_cast<double>(inv) / static_cast<double>(t * (t - 1) / 2);
  }
  const double base = delta * static_cast<double>(m + n) / static_cast<double>(2 * m * n);
  return std::clamp(base * (0.5 + 0.5 * omega), 0.0, 1.0);
}

std::string random_phrase(Rng& rng) {
  static const std::vector<std::string> pool{"mask", "masks", "layer", "layers", "lithography", "lithographic",
                                             "resist", "resistor", "ab", "ba", "a", "aa", "abc", "xyz",
                                             "optical", "optics", "wafer", "wafers"};
  std::string p;
  const auto n = 1 + rng.below(4);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!p.empty()) p += ' ';
    if (rng.chance(0.3)) {
      std::string w;
      const auto len = 1 + rng.below(6);
      for (std::uint64_t k = 0; k < len; ++k) w += static_cast<char>('a' + rng.below(4));
      p += w;
    } else {
      p += pool[rng.below(pool.size())];
    }
  }
  return p;
}

}  // namespace

TEST(WordSimilarity, WorkedExamples) {
  EXPECT_EQ(word_similarity("mask", "mask"), 1.0);
  EXPECT_EQ(word_similarity("abc", "xyz"), 0.0);
  EXPECT_DOUBLE_EQ(word_similarity("lithography", "lithographic"), 100.0 / 132.0);
  EXPECT_EQ(longest_common_substring("lithography", "lithographic"), 10u);
}

TEST(PhraseSimilarity, WorkedExamples) {
  EXPECT_EQ(phrase_similarity("optical mask", "optical mask"), 1.0);
  EXPECT_EQ(phrase_similarity("mask layer", "layer mask"), 0.5);
  EXPECT_EQ(phrase_similarity("aaa", "bbb"), 0.0);
  // mask/mask = 1 and layer/layers = 25/30 are the greedy picks, in order.
  EXPECT_DOUBLE_EQ(phrase_similarity("mask layer", "mask layers"), (1.0 + 25.0 / 30.0) * 4.0 / 8.0);
}

TEST(PhraseSimilarity, ExactBoundaryValue) {
  // 7^2 / (7 * 10) with one word on each side.
  EXPECT_EQ(phrase_similarity("abcdefg", "abcdefgxyz"), 0.7);
}

TEST(PhraseSimilarity, FuzzedProperties) {
  Rng rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const auto p = random_phrase(rng);
    const auto q = random_phrase(rng);
    const double s = phrase_similarity(p, q);
    ASSERT_EQ(s, phrase_similarity(q, p)) << p << " | " << q;
    ASSERT_GE(s, 0.0);
    ASSERT_LE(s, 1.0);
    ASSERT_EQ(phrase_similarity(p, p), 1.0);
    ASSERT_DOUBLE_EQ(s, ref_phrase(p, q)) << p << " | " << q;
  }
}

TEST(SemanticNetwork, ThresholdBoundary) {
  const std::vector<std::string> nodes{"p", "q", "r"};
  auto stub = [](std::string_view a, std::string_view b) {
    const std::string pair = std::string(a) + std::string(b);
    if (pair == "pq" || pair == "qp") return 0.69;
    if (pair == "pr" || pair == "rp") return 0.70;
    return 0.0;
  };
  const auto sn = build_semantic_network(nodes, 0.7, stub);
  EXPECT_EQ(sn.similarity.count(make_key_pair("p", "q")), 0u);
  ASSERT_EQ(sn.similarity.count(make_key_pair("p", "r")), 1u);
  EXPECT_EQ(sn.similarity.at(make_key_pair("p", "r")), 0.7);
  EXPECT_EQ(sn.similarity.size(), 1u);

  const std::vector<std::string> real{"abcdefg", "abcdefgxyz"};
  EXPECT_EQ(build_semantic_network(real, 0.7).similarity.size(), 1u);
  EXPECT_EQ(build_semantic_network(real, 0.71).similarity.size(), 0u);
}
