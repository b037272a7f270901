#pragma once

#include <string>
#include <vector>

#include "bochvar/algebra.hpp"
#include "bochvar/term.hpp"

namespace bochvar {

/// A finite algebra with a set of designated elements.
struct LogicalMatrix {
  FiniteAlgebra algebra;
  std::vector<int> designated;  // sorted element indices, nonempty

  bool designates(int x) const;
};

/// <WK^e, {1}>, the matrix of Bochvar external logic.
const LogicalMatrix& matrix_be();
/// <B4+B2, {1}>, the matrix of its unique proper non-classical extension.
const LogicalMatrix& matrix_nbe();

/// Holds iff every valuation designating all premises designates phi.
/// The counterexample is the lexicographically least such valuation.
CheckResult consequence(const LogicalMatrix& m, const std::vector<Term>& premises,
                        const Term& phi);

CheckResult theorem_check(const LogicalMatrix& m, const Term& phi);
bool is_theorem(const LogicalMatrix& m, const Term& phi);

/// True when "premises, psi |- phi" and "premises |- J2 psi -> J2 phi"
/// agree (both hold or both fail).
bool check_deduction_instance(const LogicalMatrix& m, const std::vector<Term>& premises,
                              const Term& psi, const Term& phi);

CheckResult rule_derivable(const LogicalMatrix& m, const Rule& r);

struct PassivityResult {
  bool witnessed = false;
  Valuation realizing;  // a valuation satisfying every antecedent, when not witnessed
};

/// Witnessed iff every valuation into the algebra falsifies some
/// antecedent; this is sufficient for passivity of the quasi-identity in
/// any class containing the algebra.
PassivityResult witness_passivity(const QuasiIdentity& q, const FiniteAlgebra& a);
PassivityResult witness_passivity(const Rule& r, const FiniteAlgebra& a);

/// One entry per semantic equivalence class of terms: two terms land in
/// the same class when they have the same value table over both matrices,
/// which makes per-term verdicts redundant within a class.
struct AgreementEntry {
  std::string representative;
  bool be_theorem = false;
  bool nbe_theorem = false;
};

struct AgreementReport {
  int depth = 0;
  int var_count = 0;
  long long classes = 0;
  std::vector<AgreementEntry> entries;        // in construction order
  std::vector<AgreementEntry> discrepancies;  // theorems of exactly one matrix
};

/// Enumerates all terms up to the depth bound over the given number of
/// variables (collapsed to value-table classes) and compares theoremhood
/// in the two matrices.
AgreementReport theoremhood_agreement(int depth, int var_count);

struct DeductionSweep {
  long long designation_sets = 0;  // realizable premise/conclusion behaviours
  long long triples = 0;
  long long violations = 0;
};

/// Checks the deduction-theorem instance for every (premise, psi, phi)
/// triple of terms within the bounds, over <WK^e, {1}>. Terms with equal
/// value tables behave identically on both sides, so the sweep runs over
/// value-table classes; it is exhaustive for the bound.
DeductionSweep deduction_theorem_sweep(int depth, int var_count);

}  // namespace bochvar
