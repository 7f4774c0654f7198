#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace knowsearch {

// Coarse tag alphabet: just enough for the two noun-phrase chunk patterns.
enum class Tag { DT, JJ, JJR, JJS, NN, NNS, NNP, VB, VBG, VBN, Other };

std::string_view to_string(Tag tag);

// Tags outside the alphabet (e.g. Penn "IN", "CC") map to Tag::Other.
Tag tag_from_string(std::string_view name);

inline bool is_noun(Tag t) { return t == Tag::NN || t == Tag::NNS || t == Tag::NNP; }
inline bool is_adjective(Tag t) { return t == Tag::JJ || t == Tag::JJR || t == Tag::JJS; }

struct TaggedToken {
  std::string surface;
  Tag tag = Tag::Other;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

}  // namespace knowsearch
