#pragma once

#include <cstddef>
#include <string_view>

#include "knowsearch/phrase.hpp"

namespace knowsearch {

// Length of the longest common contiguous substring (bytewise).
std::size_t longest_common_substring(std::string_view a, std::string_view b);

// 1 for equal words, otherwise |LCSubstr|^2 / (|a| * |b|).
double word_similarity(std::string_view a, std::string_view b);

// Similarity of two normalized phrases in [0, 1]. Words are matched greedily
// by descending word similarity; the aggregate is scaled by a word-order
// factor derived from inversions among the matched pairs. Symmetric: the
// arguments are put in key order before matching.
double phrase_similarity(std::string_view a, std::string_view b);

inline double phrase_similarity(const KnowledgeElement& a, const KnowledgeElement& b) {
  return phrase_similarity(a.key, b.key);
}

}  // namespace knowsearch
