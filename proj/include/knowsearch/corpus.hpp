#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "knowsearch/date.hpp"
#include "knowsearch/tags.hpp"

namespace knowsearch {

struct PatentDoc {
  std::string id;
  std::string title;
  std::string abstract;
  Date priority_date;
  Date publication_date;
  std::optional<std::uint32_t> forward_citations_5y;
  bool focal_candidate = false;
  // Pre-tagged variants; when present they replace the built-in tagger.
  std::optional<std::vector<TaggedToken>> tagged_title;
  std::optional<std::vector<TaggedToken>> tagged_abstract;

  friend bool operator==(const PatentDoc&, const PatentDoc&) = default;
};

enum class ValueCategory { ZeroCited, MediumCited, HighlyCited };

std::string_view to_string(ValueCategory c);
std::optional<ValueCategory> value_category_from_string(std::string_view s);

ValueCategory category_for_citations(std::uint32_t citations);
// Throws MissingCitations when the doc has no citation count.
ValueCategory categorize_value(const PatentDoc& doc);

// Immutable, validated collection of documents in file order.
class Corpus {
 public:
  Corpus() = default;
  // Throws DuplicateId / DateOrderViolation.
  explicit Corpus(std::vector<PatentDoc> docs);

  std::span<const PatentDoc> docs() const { return docs_; }
  std::size_t size() const { return docs_.size(); }
  const PatentDoc& operator[](std::size_t i) const { return docs_[i]; }
  const PatentDoc* find(std::string_view id) const;
  std::optional<std::size_t> index_of(std::string_view id) const;

  friend bool operator==(const Corpus& a, const Corpus& b) { return a.docs_ == b.docs_; }

 private:
  std::vector<PatentDoc> docs_;
  std::unordered_map<std::string, std::size_t> index_;
};

// One JSON object per line; blank lines are skipped. Line numbers in
// MalformedRecord are 1-based.
Corpus parse_corpus(std::istream& in);
Corpus load_corpus(const std::filesystem::path& path);

PatentDoc record_from_json(const nlohmann::json& j, std::size_t line);
nlohmann::ordered_json record_to_json(const PatentDoc& doc);

}  // namespace knowsearch
