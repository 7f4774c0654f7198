#include <gtest/gtest.h>

#include <sstream>

#include "knowsearch/errors.hpp"
#include "knowsearch/phrase.hpp"
#include "knowsearch/prd.hpp"
#include "support/docs.hpp"

using namespace knowsearch;
using testdocs::focal;
using testdocs::make;

namespace {

Date d(const char* s) { return *Date::parse(s); }

std::vector<std::string> ids(const TextIndex& index, const std::vector<std::size_t>& docs) {
  std::vector<std::string> out;
  for (auto i : docs) out.push_back(index.corpus()[i].id);
  return out;
}

}  // namespace

TEST(NormalizeText, LowercasesAndCollapsesPunctuation) {
  EXPECT_EQ(normalize_text("The  Mask-holder, (new)!"), "the mask-holder new");
  EXPECT_TRUE(contains_phrase(normalize_text("A Mask holder."), "mask"));
  EXPECT_FALSE(contains_phrase("photomask masks", "mask"));
  EXPECT_TRUE(contains_phrase("high-resolution lens", "high-resolution lens"));
  EXPECT_FALSE(contains_phrase("high-resolution lens", "resolution lens"));
}

TEST(MatchQuery, WorkedExamples) {
  const Corpus c({make("A", "Mask holder", "Holds things.", "2005-01-01"),
                  make("B", "Mask holder", "Holds things.", "2010-01-01"),
                  make("F", "Mask", "A mask.", "2004-01-01")});
  const TextIndex index(c);
  const std::vector<std::string> mask{"mask"};
  EXPECT_EQ(ids(index, match_query(index, mask, d("2010-01-01"), "F")), std::vector<std::string>{"A"});
  const std::vector<std::string> none{"quantum widget"};
  EXPECT_TRUE(match_query(index, none, d("2020-01-01"), "F").empty());
  EXPECT_EQ(retrievals(index, "mask", d("2020-01-01"), "F"), 2u);
}

TEST(BuildPrd, AlreadyCoveredNeedsNoExpansion) {
  const auto f = focal("F", "Mask stage", "A mask stage with a lens.", "2010-01-01");
  const Corpus c({make("A", "Mask stage", "The lens.", "2005-01-01"), f});
  const TextIndex index(c);
  const auto prd = build_prd(index, f, extract_focal_elements(f));
  EXPECT_TRUE(prd.expansion_log.empty());
  EXPECT_TRUE(prd.fully_covered());
  EXPECT_EQ(prd.doc_ids, std::vector<std::string>{"A"});
  EXPECT_EQ(prd.d0, f.priority_date);
}

TEST(BuildPrd, OneExpansionAdmitsTheCoveringDoc) {
  const auto f = focal("F", "Mask stage", "A novel resist.", "2010-01-01");
  const Corpus c({make("A", "Mask stage", "A stage.", "2005-01-01"),
                  make("B", "Resist", "The novel resist is coated.", "2006-01-01"),
                  make("C", "Lens", "A lens.", "2007-01-01"), f});
  const TextIndex index(c);
  const auto prd = build_prd(index, f, extract_focal_elements(f));
  ASSERT_EQ(prd.expansion_log.size(), 1u);
  EXPECT_EQ(prd.expansion_log[0].ske, "novel resist");
  EXPECT_EQ(prd.expansion_log[0].retrievals, 1u);
  EXPECT_EQ(prd.expansion_log[0].prd_size, 2u);
  EXPECT_EQ(prd.doc_ids, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(prd.query, (std::vector<std::string>{"mask stage", "novel resist"}));
  EXPECT_TRUE(prd.fully_covered());

  std::ostringstream csv;
  write_expansion_csv(csv, std::span<const Prd>(&prd, 1));
  EXPECT_EQ(csv.str(), "focal_id,iteration,appended_ske,retrievals,prd_size\nF,1,novel resist,1,2\n");
}

TEST(BuildPrd, ExpansionOrderIsAscendingRetrievalsThenKey) {
  const auto f = focal("F", "Mask", "A beam. A lens.", "2010-01-01");
  const Corpus c({make("A", "Mask", "Nothing here.", "2001-01-01"), make("B", "Lens", "x", "2002-01-01"),
                  make("C", "Lens", "x", "2003-01-01"), make("D", "Beam", "x", "2004-01-01"), f});
  const TextIndex index(c);
  const auto prd = build_prd(index, f, extract_focal_elements(f));
  // "beam" has 1 retrieval, "lens" 2: beam goes first, then lens.
  ASSERT_EQ(prd.expansion_log.size(), 2u);
  EXPECT_EQ(prd.expansion_log[0].ske, "beam");
  EXPECT_EQ(prd.expansion_log[1].ske, "lens");
  EXPECT_LE(prd.expansion_log[0].prd_size, prd.expansion_log[1].prd_size);
}

TEST(BuildPrd, ZeroRetrievalSkeIsUncoverable) {
  const auto f = focal("F", "Mask", "A quantum widget.", "2010-01-01");
  const Corpus c({make("A", "Mask", "x", "2001-01-01"), make("B", "Quantum widget", "x", "2012-01-01"), f});
  const TextIndex index(c);
  try {
    build_prd(index, f, extract_focal_elements(f));
    FAIL();
  } catch (const UncoverableSkes& e) {
    EXPECT_EQ(e.keys(), std::vector<std::string>{"quantum widget"});
  }
}

TEST(BuildPrd, AdmittedDocsSatisfyInvariants) {
  const auto f = focal("F", "Optical mask for a wafer", "A pellicle on a frame. The beam; a lens.", "2010-01-01");
  const Corpus c({make("A", "Optical mask", "A frame.", "2001-01-01"), make("B", "Wafer chuck", "x", "2002-01-01"),
                  make("C", "Beam", "The pellicle.", "2003-01-01"), make("D", "Lens", "A beam.", "2004-01-01"),
                  make("E", "Lens", "A lens.", "2011-01-01"), make("G", "Wafer", "A lens.", "2009-12-31"), f});
  const TextIndex index(c);
  const auto prd = build_prd(index, f, extract_focal_elements(f));
  for (auto i : prd.docs) {
    EXPECT_LT(c[i].publication_date, prd.d0);
    EXPECT_NE(c[i].id, "F");
    EXPECT_TRUE(std::any_of(prd.query.begin(), prd.query.end(), [&](const auto& k) { return index.contains(i, k); }));
  }
  EXPECT_TRUE(prd.fully_covered());
  EXPECT_LE(prd.expansion_log.size(), extract_focal_elements(f).skes.size());
}
