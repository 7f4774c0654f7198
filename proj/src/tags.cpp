#include "knowsearch/tags.hpp"

#include <array>
#include <utility>

namespace knowsearch {

namespace {

constexpr std::array<std::pair<Tag, std::string_view>, 11> kNames{{
    {Tag::DT, "DT"},
    {Tag::JJ, "JJ"},
    {Tag::JJR, "JJR"},
    {Tag::JJS, "JJS"},
    {Tag::NN, "NN"},
    {Tag::NNS, "NNS"},
    {Tag::NNP, "NNP"},
    {Tag::VB, "VB"},
    {Tag::VBG, "VBG"},
    {Tag::VBN, "VBN"},
    {Tag::Other, "OTHER"},
}};

}  // namespace

std::string_view to_string(Tag tag) {
  for (const auto& [t, name] : kNames) {
    if (t == tag) return name;
  }
  return "OTHER";
}

Tag tag_from_string(std::string_view name) {
  for (const auto& [t, n] : kNames) {
    if (n == name) return t;
  }
  return Tag::Other;
}

}  // namespace knowsearch
