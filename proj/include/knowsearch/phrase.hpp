#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "knowsearch/corpus.hpp"
#include "knowsearch/tags.hpp"

namespace knowsearch {

// A normalized noun phrase. Identity is the key; surface_forms collects the
// original spellings seen for it.
struct KnowledgeElement {
  std::string key;
  std::set<std::string> surface_forms;

  friend bool operator==(const KnowledgeElement&, const KnowledgeElement&) = default;
};

struct FocalElements {
  std::vector<KnowledgeElement> pkes;  // from the title, first-occurrence order
  std::vector<KnowledgeElement> skes;  // from the abstract, first-occurrence order

  std::vector<std::string> pke_keys() const;
  std::vector<std::string> ske_keys() const;
};

// Words (ASCII alphanumerics, bytes >= 0x80, inner hyphens) and single
// punctuation characters; whitespace is dropped.
std::vector<std::string> tokenize(std::string_view text);

Tag tag_word(std::string_view word);
std::vector<TaggedToken> pos_tag(std::string_view text);

// Lowercase, collapse whitespace, drop leading determiners.
std::string normalize_phrase(std::string_view phrase);

// Left-to-right, longest-match, non-overlapping; duplicates are kept.
std::vector<KnowledgeElement> chunk_noun_phrases(std::span<const TaggedToken> tokens);

// Splits after each of . ! ? ; (the terminator stays with its sentence).
std::vector<std::string> split_sentences(std::string_view text);
std::vector<std::vector<TaggedToken>> split_sentences(std::span<const TaggedToken> tokens);

// Per-sentence ordered KE lists of a document's abstract, honoring the
// pre-tagged variant when present.
std::vector<std::vector<KnowledgeElement>> abstract_sentence_elements(const PatentDoc& doc);
std::vector<KnowledgeElement> title_elements(const PatentDoc& doc);

// Throws NoElementsFound.
FocalElements extract_focal_elements(const PatentDoc& doc);

// Collapses repeated keys, merging surface forms; keeps first-occurrence order.
std::vector<KnowledgeElement> distinct_elements(std::span<const KnowledgeElement> elements);

}  // namespace knowsearch
