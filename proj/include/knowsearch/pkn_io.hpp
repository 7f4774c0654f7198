#pragma once

#include <filesystem>
#include <iosfwd>

#include "knowsearch/pkn.hpp"

namespace knowsearch {

struct SavedPkn {
  PriorKnowledgeNetwork pkn;
  FocalTargets targets;
};

// JSON document with a node table (key, degree, strength, birthdate,
// is_pke, is_ske) and an edge table (key_i, key_j, weight, provenance).
// Weights are written in shortest round-trip form.
void write_pkn(std::ostream& out, const PriorKnowledgeNetwork& pkn, const FocalTargets& targets);

// Throws DataError when the document is malformed or its stored degree and
// strength columns disagree with the edge table.
SavedPkn read_pkn(std::istream& in);

void save_pkn(const std::filesystem::path& path, const PriorKnowledgeNetwork& pkn, const FocalTargets& targets);
SavedPkn load_pkn(const std::filesystem::path& path);

}  // namespace knowsearch
