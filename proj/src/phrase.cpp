#include "knowsearch/phrase.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

#include "knowsearch/errors.hpp"

namespace knowsearch {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

const std::unordered_set<std::string_view>& determiners() {
  static const std::unordered_set<std::string_view> words{"a", "an", "the"};
  return words;
}

// Function words plus the connective verbs common in patent abstracts.
const std::unordered_set<std::string_view>& function_words() {
  static const std::unordered_set<std::string_view> words{
      "about",     "above",     "across",    "after",     "against",  "all",      "along",
      "also",      "although",  "among",     "and",       "any",      "are",      "as",
      "at",        "be",        "because",   "been",      "before",   "being",    "below",
      "beneath",   "between",   "both",      "but",       "by",       "can",      "comprises",
      "comprising", "consists", "consisting", "contains", "containing", "could",   "do",
      "does",      "during",    "each",      "either",    "for",      "from",     "further",
      "had",       "has",       "have",      "having",    "he",       "her",      "here",
      "herein",    "his",       "how",       "however",   "if",       "in",       "includes",
      "including", "into",      "is",        "it",        "its",      "may",      "more",
      "most",      "must",      "no",        "nor",       "not",      "of",       "on",
      "once",      "only",      "onto",      "or",        "other",    "our",      "out",
      "over",      "per",       "provides",  "said",      "same",     "shall",    "she",
      "should",    "so",        "some",      "such",      "than",     "that",     "their",
      "them",      "then",      "there",     "thereby",   "therein",  "thereof",  "these",
      "they",      "this",      "those",     "through",   "thus",     "to",       "toward",
      "towards",   "under",     "until",     "upon",      "uses",     "using",    "very",
      "via",       "was",       "we",        "were",      "what",     "when",     "where",
      "whereby",   "wherein",   "which",     "while",     "who",      "whom",     "whose",
      "will",      "with",      "within",    "without",   "would",
  };
  return words;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }
bool is_ascii_letter(char c) { return c >= 'a' && c <= 'z'; }

// One element of a chunk pattern: a tag class with a quantifier.
enum class Quant { One, Star, Plus };

struct PatternElement {
  bool (*accepts)(Tag);
  Quant quant;
};

bool accept_dt(Tag t) { return t == Tag::DT; }
bool accept_vbg_vbn(Tag t) { return t == Tag::VBG || t == Tag::VBN; }
bool accept_vbg_vbn_vb(Tag t) { return t == Tag::VBG || t == Tag::VBN || t == Tag::VB; }
bool accept_vbn(Tag t) { return t == Tag::VBN; }
bool accept_jj(Tag t) { return is_adjective(t); }
bool accept_nn(Tag t) { return is_noun(t); }

// <DT><VBG|VBN>*<JJ.*>*<VBG|VBN|VB>*<NN.*>*<JJ.*>*<NN.*>+
constexpr std::array<PatternElement, 7> kPatternDeterminer{{
    {accept_dt, Quant::One},
    {accept_vbg_vbn, Quant::Star},
    {accept_jj, Quant::Star},
    {accept_vbg_vbn_vb, Quant::Star},
    {accept_nn, Quant::Star},
    {accept_jj, Quant::Star},
    {accept_nn, Quant::Plus},
}};

// <VBN>*<JJ.*>*<VBN>*<NN.*>*<JJ.*>*<NN.*>+
constexpr std::array<PatternElement, 6> kPatternBare{{
    {accept_vbn, Quant::Star},
    {accept_jj, Quant::Star},
    {accept_vbn, Quant::Star},
    {accept_nn, Quant::Star},
    {accept_jj, Quant::Star},
    {accept_nn, Quant::Plus},
}};

// Returns the end of the longest match of `pattern` anchored at `start`,
// or `start` when there is none. Tracks the set of reachable positions
// element by element.
std::size_t longest_match(std::span<const PatternElement> pattern, std::span<const TaggedToken> tokens,
                          std::size_t start) {
  std::vector<char> reach(tokens.size() + 1, 0);
  reach[start] = 1;
  for (const auto& el : pattern) {
    std::vector<char> next(tokens.size() + 1, 0);
    for (std::size_t p = start; p <= tokens.size(); ++p) {
      if (!reach[p]) continue;
      if (el.quant == Quant::Star) next[p] = 1;
      std::size_t q = p;
      while (q < tokens.size() && el.accepts(tokens[q].tag)) {
        ++q;
        next[q] = 1;
        if (el.quant == Quant::One) break;
      }
    }
    reach = std::move(next);
  }
  for (std::size_t p = tokens.size(); p > start; --p) {
    if (reach[p]) return p;
  }
  return start;
}

KnowledgeElement make_element(std::span<const TaggedToken> match) {
  std::string surface;
  for (const auto& tok : match) {
    if (tok.tag == Tag::DT) continue;
    if (!surface.empty()) surface += ' ';
    surface += tok.surface;
  }
  KnowledgeElement ke;
  ke.key = normalize_phrase(surface);
  if (!ke.key.empty()) ke.surface_forms.insert(surface);
  return ke;
}

bool is_terminator(std::string_view s) { return s == "." || s == "!" || s == "?" || s == ";"; }

std::vector<std::string> keys_of(const std::vector<KnowledgeElement>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& ke : v) out.push_back(ke.key);
  return out;
}

}  // namespace

std::vector<std::string> FocalElements::pke_keys() const { return keys_of(pkes); }
std::vector<std::string> FocalElements::ske_keys() const { return keys_of(skes); }

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    if (is_space(c)) {
      ++i;
    } else if (is_word_byte(c)) {
      std::size_t j = i;
      while (j < text.size()) {
        auto cj = static_cast<unsigned char>(text[j]);
        if (is_word_byte(cj)) {
          ++j;
        } else if (cj == '-' && j + 1 < text.size() && is_word_byte(static_cast<unsigned char>(text[j + 1]))) {
          ++j;
        } else {
          break;
        }
      }
      out.emplace_back(text.substr(i, j - i));
      i = j;
    } else {
      out.emplace_back(1, text[i]);
      ++i;
    }
  }
  return out;
}

Tag tag_word(std::string_view word) {
  if (word.empty() || !is_word_byte(static_cast<unsigned char>(word.front()))) return Tag::Other;
  const std::string w = to_lower(word);
  if (determiners().contains(w)) return Tag::DT;
  if (function_words().contains(w)) return Tag::Other;

  if (w.ends_with("ing")) return Tag::VBG;
  if (w.ends_with("ed")) return Tag::VBN;
  for (std::string_view suffix : {"ic", "ive", "able", "ous", "al"}) {
    if (w.ends_with(suffix)) return Tag::JJ;
  }
  if (w.size() >= 4 && w.back() == 's') {
    char prev = w[w.size() - 2];
    if (is_ascii_letter(prev) && !is_vowel(prev)) return Tag::NNS;
  }
  return Tag::NN;
}

std::vector<TaggedToken> pos_tag(std::string_view text) {
  std::vector<TaggedToken> out;
  for (auto& tok : tokenize(text)) {
    Tag t = tag_word(tok);
    out.push_back({std::move(tok), t});
  }
  return out;
}

std::string normalize_phrase(std::string_view phrase) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < phrase.size()) {
    while (i < phrase.size() && is_space(static_cast<unsigned char>(phrase[i]))) ++i;
    std::size_t j = i;
    while (j < phrase.size() && !is_space(static_cast<unsigned char>(phrase[j]))) ++j;
    if (j > i) words.push_back(to_lower(phrase.substr(i, j - i)));
    i = j;
  }
  std::size_t first = 0;
  while (first < words.size() && determiners().contains(words[first])) ++first;
  std::string out;
  for (std::size_t k = first; k < words.size(); ++k) {
    if (!out.empty()) out += ' ';
    out += words[k];
  }
  return out;
}

std::vector<KnowledgeElement> chunk_noun_phrases(std::span<const TaggedToken> tokens) {
  std::vector<KnowledgeElement> out;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    std::size_t end = longest_match(kPatternDeterminer, tokens, pos);
    if (end == pos) end = longest_match(kPatternBare, tokens, pos);
    if (end == pos) {
      ++pos;
      continue;
    }
    auto ke = make_element(tokens.subspan(pos, end - pos));
    if (!ke.key.empty()) out.push_back(std::move(ke));
    pos = end;
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_terminator(text.substr(i, 1))) {
      out.emplace_back(text.substr(start, i + 1 - start));
      start = i + 1;
    }
  }
  if (start < text.size()) out.emplace_back(text.substr(start));
  std::erase_if(out, [](const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return is_space(static_cast<unsigned char>(c)); });
  });
  return out;
}

std::vector<std::vector<TaggedToken>> split_sentences(std::span<const TaggedToken> tokens) {
  std::vector<std::vector<TaggedToken>> out;
  std::vector<TaggedToken> current;
  for (const auto& tok : tokens) {
    current.push_back(tok);
    if (is_terminator(tok.surface)) out.push_back(std::exchange(current, {}));
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::vector<std::vector<KnowledgeElement>> abstract_sentence_elements(const PatentDoc& doc) {
  std::vector<std::vector<KnowledgeElement>> out;
  if (doc.tagged_abstract) {
    for (const auto& sentence : split_sentences(std::span<const TaggedToken>(*doc.tagged_abstract))) {
      out.push_back(chunk_noun_phrases(sentence));
    }
  } else {
    for (const auto& sentence : split_sentences(std::string_view(doc.abstract))) {
      out.push_back(chunk_noun_phrases(pos_tag(sentence)));
    }
  }
  return out;
}

std::vector<KnowledgeElement> title_elements(const PatentDoc& doc) {
  if (doc.tagged_title) return chunk_noun_phrases(*doc.tagged_title);
  return chunk_noun_phrases(pos_tag(doc.title));
}

std::vector<KnowledgeElement> distinct_elements(std::span<const KnowledgeElement> elements) {
  std::vector<KnowledgeElement> out;
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& ke : elements) {
    auto [it, inserted] = seen.emplace(ke.key, out.size());
    if (inserted) {
      out.push_back(ke);
    } else {
      out[it->second].surface_forms.insert(ke.surface_forms.begin(), ke.surface_forms.end());
    }
  }
  return out;
}

FocalElements extract_focal_elements(const PatentDoc& doc) {
  FocalElements fe;
  fe.pkes = distinct_elements(title_elements(doc));
  if (fe.pkes.empty()) throw NoElementsFound(TextField::Title);
  std::vector<KnowledgeElement> all;
  for (auto& sentence : abstract_sentence_elements(doc)) {
    all.insert(all.end(), std::make_move_iterator(sentence.begin()), std::make_move_iterator(sentence.end()));
  }
  fe.skes = distinct_elements(all);
  if (fe.skes.empty()) throw NoElementsFound(TextField::Abstract);
  return fe;
}

}  // namespace knowsearch
