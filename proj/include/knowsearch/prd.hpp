#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "knowsearch/corpus.hpp"
#include "knowsearch/phrase.hpp"

namespace knowsearch {

// Lowercased title+abstract with every non-word character turned into a
// single space, so that a phrase key can be found by whole-word substring.
std::string normalize_text(std::string_view text);

// True if `key` occurs in `normalized` bounded by start/end or spaces.
bool contains_phrase(std::string_view normalized, std::string_view key);

// Read-only view of a corpus with per-document searchable text.
class TextIndex {
 public:
  explicit TextIndex(const Corpus& corpus);

  const Corpus& corpus() const { return *corpus_; }
  bool contains(std::size_t doc, std::string_view key) const { return contains_phrase(text_[doc], key); }

 private:
  const Corpus* corpus_;
  std::vector<std::string> text_;
};

// Indices (corpus order) of documents published strictly before d0 whose
// title or abstract contains at least one key. `exclude_id` is never returned.
std::vector<std::size_t> match_query(const TextIndex& index, std::span<const std::string> keys, Date d0,
                                     std::string_view exclude_id);

// Number of documents published before d0 that contain `key`.
std::size_t retrievals(const TextIndex& index, std::string_view key, Date d0, std::string_view exclude_id);

struct ExpansionStep {
  std::string ske;
  std::size_t retrievals = 0;
  std::size_t prd_size = 0;  // after the expanded query was applied
};

struct Prd {
  std::string focal_id;
  Date d0;
  std::vector<std::string> query;        // PKE keys, then appended SKE keys
  std::vector<std::size_t> docs;         // corpus indices, corpus order
  std::vector<std::string> doc_ids;      // same documents, by id
  std::map<std::string, bool> coverage;  // SKE key -> covered
  std::vector<ExpansionStep> expansion_log;

  bool fully_covered() const;
};

// Initial query from the PKEs, then expansion with the least-retrieved
// uncovered SKEs until every SKE is covered. Throws UncoverableSkes when
// some SKE has no pre-d0 retrievals at all.
Prd build_prd(const TextIndex& index, const PatentDoc& focal, const FocalElements& elements);

// CSV columns: focal_id, iteration, appended_ske, retrievals, prd_size.
void write_expansion_csv(std::ostream& out, std::span<const Prd> prds);

}  // namespace knowsearch
