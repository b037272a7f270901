#include <doctest.h>

#include <map>
#include <set>

#include "bochvar/classify.hpp"
#include "bochvar/corpus.hpp"

using namespace bochvar;

TEST_CASE("the claim inventory is complete and uniquely labeled") {
  std::map<std::string, int> prefix_counts;
  std::set<std::string> ids;
  for (const Claim& c : corpus_claims()) {
    CHECK(ids.insert(c.id).second);
    CHECK_FALSE(c.location.empty());
    auto dash = c.id.find('-');
    prefix_counts[c.id.substr(0, dash)]++;
  }
  CHECK(prefix_counts["Def3.1"] == 20);  // 19 items, item 15 in two readings
  CHECK(prefix_counts["Thm3.3"] == 13);
  CHECK(prefix_counts["L3.6"] == 3);
  CHECK(prefix_counts["L3.7"] == 4);
  CHECK(prefix_counts["L3.8"] == 4);
  CHECK(prefix_counts["P3.10"] == 1);
  CHECK(prefix_counts["L3.12"] == 2);
  CHECK(prefix_counts["A.1"] == 9);
  CHECK(prefix_counts["A.2"] == 15);  // 14 items, item 2 split stated/proof
  CHECK(prefix_counts["NF"] == 1);
  CHECK(prefix_counts["EFJ"] == 1);
  int ibsl = 0;
  for (const auto& [prefix, count] : prefix_counts)
    if (prefix.size() == 2 && prefix[0] == 'I') ibsl += count;
  CHECK(ibsl == 8);
}

TEST_CASE("specific claim verdicts on the three-element algebra") {
  const FiniteAlgebra& wke = builtin_algebra("wke");
  const Claim* def9 = nullptr;
  const Claim* a14 = nullptr;
  const Claim* a22_stated = nullptr;
  const Claim* a22_proof = nullptr;
  for (const Claim& c : corpus_claims()) {
    if (c.id == "Def3.1-9") def9 = &c;
    if (c.id == "A.1-4") a14 = &c;
    if (c.id == "A.2-2-stated") a22_stated = &c;
    if (c.id == "A.2-2-proof") a22_proof = &c;
  }
  REQUIRE(def9);
  REQUIRE(a14);
  REQUIRE(a22_stated);
  REQUIRE(a22_proof);
  for (const QuasiIdentity& q : def9->instances) CHECK(holds_quasi_identity(wke, q).holds);
  for (const QuasiIdentity& q : a14->instances) CHECK(holds_quasi_identity(wke, q).holds);

  CheckResult stated = holds_quasi_identity(wke, a22_stated->instances.front());
  REQUIRE_FALSE(stated.holds);
  CHECK(stated.counterexample == Valuation{{"x", wke.zero}});
  CHECK(a22_stated->expectation == Claim::Expectation::FailsNontrivial);
  CHECK(a22_stated->note.find("erratum") != std::string::npos);

  CHECK(holds_quasi_identity(wke, a22_proof->instances.front()).holds);
}

TEST_CASE("the corpus is green at the default scope") {
  CorpusReport report = run_corpus(8);
  CHECK(report.mismatches == 0);
  CHECK(report.claims == static_cast<int>(corpus_claims().size()));
  CHECK(report.outcomes.size() > 500);
  for (const ClaimOutcome& o : report.outcomes) CHECK(o.as_expected);
}

TEST_CASE("membership tests agree on enumerated algebras and mutants") {
  BasisAgreementReport report = basis_equivalence_check(6, 60);
  CHECK(report.algebras == 6);
  CHECK(report.mutants == 60);
  CHECK(report.disagreements.empty());
}

TEST_CASE("a targeted mutation is rejected by all three tests") {
  FiniteAlgebra broken = builtin_algebra("wke");
  broken.j1_table[broken.index_of("H")] = broken.zero;
  CHECK_FALSE(def31_membership(broken).member);
  CHECK_FALSE(thm33_membership(broken).member);
  CHECK_FALSE(separates_into(broken, builtin_algebra("wke")).separates);
}
