#include "knowsearch/prd.hpp"

#include <algorithm>
#include <ostream>

#include "knowsearch/csv.hpp"
#include "knowsearch/errors.hpp"

namespace knowsearch {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80 ||
         c == '-';
}

std::string join_keys(const std::vector<std::string>& keys) {
  std::string out;
  for (const auto& k : keys) {
    if (!out.empty()) out += ", ";
    out += k;
  }
  return out;
}

}  // namespace

UncoverableSkes::UncoverableSkes(std::vector<std::string> keys)
    : Error("solution elements with no prior retrievals: " + join_keys(keys)), keys_(std::move(keys)) {}

std::string normalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      if (pending_space && !out.empty()) out += ' ';
      pending_space = false;
      out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : ch;
    } else {
      pending_space = true;
    }
  }
  return out;
}

bool contains_phrase(std::string_view normalized, std::string_view key) {
  if (key.empty()) return false;
  std::size_t pos = normalized.find(key);
  while (pos != std::string_view::npos) {
    const bool left = pos == 0 || normalized[pos - 1] == ' ';
    const std::size_t end = pos + key.size();
    const bool right = end == normalized.size() || normalized[end] == ' ';
    if (left && right) return true;
    pos = normalized.find(key, pos + 1);
  }
  return false;
}

TextIndex::TextIndex(const Corpus& corpus) : corpus_(&corpus) {
  text_.reserve(corpus.size());
  for (const auto& doc : corpus.docs()) {
    text_.push_back(normalize_text(doc.title + " . " + doc.abstract));
  }
}

std::vector<std::size_t> match_query(const TextIndex& index, std::span<const std::string> keys, Date d0,
                                     std::string_view exclude_id) {
  std::vector<std::size_t> out;
  const auto docs = index.corpus().docs();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (!(docs[i].publication_date < d0) || docs[i].id == exclude_id) continue;
    if (std::any_of(keys.begin(), keys.end(), [&](const std::string& k) { return index.contains(i, k); })) {
      out.push_back(i);
    }
  }
  return out;
}

std::size_t retrievals(const TextIndex& index, std::string_view key, Date d0, std::string_view exclude_id) {
  std::string k(key);
  return match_query(index, std::span<const std::string>(&k, 1), d0, exclude_id).size();
}

bool Prd::fully_covered() const {
  return std::all_of(coverage.begin(), coverage.end(), [](const auto& kv) { return kv.second; });
}

Prd build_prd(const TextIndex& index, const PatentDoc& focal, const FocalElements& elements) {
  Prd prd;
  prd.focal_id = focal.id;
  prd.d0 = focal.priority_date;
  prd.query = elements.pke_keys();

  auto refresh = [&] {
    prd.docs = match_query(index, prd.query, prd.d0, focal.id);
    for (auto& [ske, covered] : prd.coverage) {
      covered = std::any_of(prd.docs.begin(), prd.docs.end(), [&](std::size_t d) { return index.contains(d, ske); });
    }
  };

  for (const auto& ske : elements.skes) prd.coverage.emplace(ske.key, false);
  refresh();

  struct Pending {
    std::string key;
    std::size_t retrievals;
  };
  std::vector<Pending> uncovered;
  for (const auto& ske : elements.skes) {
    if (!prd.coverage.at(ske.key)) uncovered.push_back({ske.key, retrievals(index, ske.key, prd.d0, focal.id)});
  }
  std::sort(uncovered.begin(), uncovered.end(), [](const Pending& a, const Pending& b) {
    return a.retrievals != b.retrievals ? a.retrievals < b.retrievals : a.key < b.key;
  });

  // Zero-retrieval entries can never be covered and are never appended.
  auto next = std::find_if(uncovered.begin(), uncovered.end(), [](const Pending& p) { return p.retrievals > 0; });
  while (!prd.fully_covered() && next != uncovered.end()) {
    prd.query.push_back(next->key);
    refresh();
    prd.expansion_log.push_back({next->key, next->retrievals, prd.docs.size()});
    ++next;
  }

  prd.doc_ids.reserve(prd.docs.size());
  for (auto d : prd.docs) prd.doc_ids.push_back(index.corpus()[d].id);

  if (!prd.fully_covered()) {
    std::vector<std::string> missing;
    for (const auto& [ske, covered] : prd.coverage) {
      if (!covered) missing.push_back(ske);
    }
    throw UncoverableSkes(std::move(missing));
  }
  return prd;
}

void write_expansion_csv(std::ostream& out, std::span<const Prd> prds) {
  CsvWriter csv(out);
  csv.row({"focal_id", "iteration", "appended_ske", "retrievals", "prd_size"});
  for (const auto& prd : prds) {
    for (std::size_t i = 0; i < prd.expansion_log.size(); ++i) {
      const auto& step = prd.expansion_log[i];
      csv.row({prd.focal_id, std::to_string(i + 1), step.ske, std::to_string(step.retrievals),
               std::to_string(step.prd_size)});
    }
  }
}

}  // namespace knowsearch
