#include "knowsearch/corpus.hpp"

#include <fstream>
#include <istream>

#include "knowsearch/errors.hpp"

namespace knowsearch {

using nlohmann::json;

std::string_view to_string(ValueCategory c) {
  switch (c) {
    case ValueCategory::ZeroCited:
      return "zero_cited";
    case ValueCategory::MediumCited:
      return "medium_cited";
    case ValueCategory::HighlyCited:
      return "highly_cited";
  }
  return "";
}

std::optional<ValueCategory> value_category_from_string(std::string_view s) {
  for (auto c : {ValueCategory::ZeroCited, ValueCategory::MediumCited, ValueCategory::HighlyCited}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

ValueCategory category_for_citations(std::uint32_t citations) {
  if (citations == 0) return ValueCategory::ZeroCited;
  if (citations < 20) return ValueCategory::MediumCited;
  return ValueCategory::HighlyCited;
}

ValueCategory categorize_value(const PatentDoc& doc) {
  if (!doc.forward_citations_5y) throw MissingCitations(doc.id);
  return category_for_citations(*doc.forward_citations_5y);
}

Corpus::Corpus(std::vector<PatentDoc> docs) : docs_(std::move(docs)) {
  index_.reserve(docs_.size());
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    const auto& d = docs_[i];
    if (d.priority_date > d.publication_date) throw DateOrderViolation(d.id);
    if (!index_.emplace(d.id, i).second) throw DuplicateId(d.id);
  }
}

const PatentDoc* Corpus::find(std::string_view id) const {
  auto i = index_of(id);
  return i ? &docs_[*i] : nullptr;
}

std::optional<std::size_t> Corpus::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string require_string(const json& j, const char* key, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end()) throw MalformedRecord(line, std::string("missing field '") + key + "'");
  if (!it->is_string()) throw MalformedRecord(line, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

Date require_date(const json& j, const char* key, std::size_t line) {
  auto text = require_string(j, key, line);
  auto d = Date::parse(text);
  if (!d) throw MalformedRecord(line, std::string("field '") + key + "' is not a YYYY-MM-DD date: " + text);
  return *d;
}

std::optional<std::vector<TaggedToken>> optional_tagged(const json& j, const char* key,
                                                        std::size_t line) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) throw MalformedRecord(line, std::string("field '") + key + "' must be a list");
  std::vector<TaggedToken> out;
  out.reserve(it->size());
  for (const auto& pair : *it) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
      throw MalformedRecord(line, std::string("field '") + key + "' entries must be [surface, tag]");
    }
    auto surface = pair[0].get<std::string>();
    if (surface.empty()) throw MalformedRecord(line, std::string("empty surface in '") + key + "'");
    out.push_back({std::move(surface), tag_from_string(pair[1].get<std::string>())});
  }
  return out;
}

}  // namespace

PatentDoc record_from_json(const json& j, std::size_t line) {
  if (!j.is_object()) throw MalformedRecord(line, "record is not a JSON object");
  PatentDoc doc;
  doc.id = require_string(j, "id", line);
  if (doc.id.empty()) throw MalformedRecord(line, "empty id");
  doc.title = require_string(j, "title", line);
  doc.abstract = require_string(j, "abstract", line);
  doc.priority_date = require_date(j, "priority_date", line);
  doc.publication_date = require_date(j, "publication_date", line);

  if (auto it = j.find("forward_citations_5y"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw MalformedRecord(line, "forward_citations_5y must be an integer");
    auto v = it->get<long long>();
    if (v < 0 || v > static_cast<long long>(UINT32_MAX)) {
      throw MalformedRecord(line, "forward_citations_5y out of range");
    }
    doc.forward_citations_5y = static_cast<std::uint32_t>(v);
  }
  if (auto it = j.find("focal_candidate"); it != j.end() && !it->is_null()) {
    if (!it->is_boolean()) throw MalformedRecord(line, "focal_candidate must be a boolean");
    doc.focal_candidate = it->get<bool>();
  }
  doc.tagged_title = optional_tagged(j, "tagged_title", line);
  doc.tagged_abstract = optional_tagged(j, "tagged_abstract", line);

  if (doc.focal_candidate && (doc.title.empty() || doc.abstract.empty())) {
    throw MalformedRecord(line, "focal candidate needs a non-empty title and abstract");
  }
  if (doc.priority_date > doc.publication_date) throw DateOrderViolation(doc.id);
  return doc;
}

nlohmann::ordered_json record_to_json(const PatentDoc& doc) {
  nlohmann::ordered_json j;
  j["id"] = doc.id;
  j["title"] = doc.title;
  j["abstract"] = doc.abstract;
  j["priority_date"] = doc.priority_date.iso();
  j["publication_date"] = doc.publication_date.iso();
  if (doc.forward_citations_5y) j["forward_citations_5y"] = *doc.forward_citations_5y;
  j["focal_candidate"] = doc.focal_candidate;
  auto tagged = [](const std::vector<TaggedToken>& toks) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& t : toks) arr.push_back({t.surface, std::string(to_string(t.tag))});
    return arr;
  };
  if (doc.tagged_title) j["tagged_title"] = tagged(*doc.tagged_title);
  if (doc.tagged_abstract) j["tagged_abstract"] = tagged(*doc.tagged_abstract);
  return j;
}

Corpus parse_corpus(std::istream& in) {
  std::vector<PatentDoc> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedRecord(lineno, e.what());
    }
    docs.push_back(record_from_json(j, lineno));
  }
  return Corpus(std::move(docs));
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file " + path.string());
  return parse_corpus(in);
}

}  // namespace knowsearch
