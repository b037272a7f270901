#pragma once

#include <string>
#include <vector>

#include "bochvar/algebra.hpp"

namespace bochvar {

/// One checkable claim of the underlying theory: an identity or
/// quasi-identity family evaluated over a set of algebras, or a named
/// structural property. Claim ids follow the standard numbering of the
/// axiomatization (Def3.1-*, Thm3.3-*, L3.6-* ... A.1-*, A.2-*), with
/// variant statements suffixed.
struct Claim {
  enum class Kind { Identity, Quasi, Property };
  enum class Expectation {
    Holds,           // on every scope algebra
    FailsNontrivial  // fails on every non-trivial scope algebra
  };
  enum class Scope { Default, WkeOnly };

  std::string id;
  std::string location;  // position in the standard presentation, for audit
  Kind kind = Kind::Identity;
  std::vector<QuasiIdentity> instances;  // indexed families expand to instances
  Expectation expectation = Expectation::Holds;
  Scope scope = Scope::Default;
  std::string property;  // key for Kind::Property
  std::string note;      // e.g. erratum marker for a stated/proof split
};

const std::vector<Claim>& corpus_claims();

struct ClaimOutcome {
  std::string id;
  std::string location;
  std::string algebra;
  bool holds = false;        // what the evaluation found
  bool as_expected = false;  // found == expected
  std::string detail;        // counterexample or property detail
  std::string note;
};

struct CorpusReport {
  std::vector<ClaimOutcome> outcomes;
  int mismatches = 0;
  int claims = 0;
};

/// Evaluates every claim over its scope: WK^e plus all enumerated Bochvar
/// algebras up to size_cap (default corpus scope).
CorpusReport run_corpus(int size_cap = 8);

struct BasisAgreementReport {
  int algebras = 0;
  int mutants = 0;
  std::vector<std::string> disagreements;
};

/// The three membership tests (Def 3.1 basis, reduced basis, separation
/// into WK^e) on every enumerated algebra up to max_size and on `mutants`
/// randomly table-mutated variants; any disagreement is reported.
BasisAgreementReport basis_equivalence_check(int max_size, int mutants = 200,
                                             unsigned seed = 20240601);

}  // namespace bochvar
