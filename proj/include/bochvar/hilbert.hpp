#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bochvar/term.hpp"

namespace bochvar {

/// Axiom schema identifiers "A1" .. "A29". Schemas A1-A18 are stored with
/// the defined equivalence already expanded, so instances live in the
/// plain term language; A9-A11 and A19-A29 restrict their metavariables
/// to external formulas.
std::vector<std::string> schema_ids();

struct SchemaMatch {
  bool ok = false;
  std::map<std::string, Term> substitution;
  std::string reason;  // mismatch explanation
};

/// First-order pattern match of phi against the schema's instances; the
/// external-formula guard is applied to the matched metavariables.
SchemaMatch match_schema(const std::string& schema_id, const Term& phi);

struct Step {
  enum class Kind { Axiom, Hypothesis, ModusPonens } kind;
  std::string schema;          // Axiom
  int hypothesis = 0;          // Hypothesis: 1-based index
  int minor = 0, major = 0;    // ModusPonens: 1-based step numbers
  Term formula = Term::constant(false);
};

struct Derivation {
  std::string name;
  std::vector<Term> hypotheses;
  std::vector<Step> steps;
};

struct DerivationVerdict {
  bool valid = false;
  int failed_step = 0;  // 1-based, 0 when valid
  std::string reason;
  explicit operator bool() const { return valid; }
};

DerivationVerdict check_derivation(const Derivation& d);

Derivation parse_derivation(std::istream& in);
Derivation parse_derivation_text(const std::string& text);

struct SoundnessViolation {
  std::string schema;
  Term instance;
};

struct SoundnessReport {
  int instances = 0;
  std::vector<SoundnessViolation> violations;
};

/// Generates instantiations of every schema (external slots drawn from
/// external terms only) and checks each one is a theorem of <WK^e, {1}>.
SoundnessReport soundness_scan(int depth, int var_count, int per_schema,
                               unsigned seed = 0xb0c4);

}  // namespace bochvar
