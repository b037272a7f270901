#pragma once

#include <string>
#include <vector>

#include "bochvar/algebra.hpp"
#include "bochvar/classify.hpp"

namespace bochvar {

/// (A, B, C, i, j) with i: A -> B and j: A -> C embeddings.
struct VFormation {
  FiniteAlgebra A, B, C;
  HomMap i, j;

  void validate() const;  // throws when i or j is not an embedding
};

enum class QuasivarietyClass { BCA, NBCA };

std::string to_string(QuasivarietyClass c);
bool member_of(const Classification& c, QuasivarietyClass cls);

struct AmalgamResult {
  bool success = false;
  FiniteAlgebra D;
  HomMap h;  // B -> D
  HomMap k;  // C -> D
  std::string failure;  // the unseparated pair, when unsuccessful
};

/// Amalgamates inside BCA (generator WK^e) or NBCA (generator B4+B2):
/// enumerate all pairs (f: B -> G, g: C -> G) with f.i = g.j, deduplicate
/// by joint kernel, and take the image subalgebra of the induced maps
/// into the power of G. Succeeds iff both induced maps are injective.
AmalgamResult amalgamate(const VFormation& v, QuasivarietyClass cls);

struct AmalgamVerdict {
  bool valid = false;
  std::string reason;
  explicit operator bool() const { return valid; }
};

/// Checks h and k are embeddings, the square commutes on A, and D lies in
/// the requested class.
AmalgamVerdict verify_amalgam(const VFormation& v, const FiniteAlgebra& D, const HomMap& h,
                              const HomMap& k, QuasivarietyClass cls);

struct CongruenceExtensionReport {
  std::vector<std::string> theta_blocks;  // blocks of Cg^{B4}(1, ~a), by element labels
  bool quotient_is_b2 = false;
  AlgebraClass quotient_class = AlgebraClass::NotBCA;
  int congruences = 0;                // all congruences of B4+B2
  int nbca_congruences = 0;           // those with quotient in NBCA
  int proper_containing_pair = 0;     // proper NBCA-congruences containing (~a, 1)
  bool extension_fails = false;       // the relative congruence does not extend
  bool scan_cross_checked = false;    // partition scan agrees with join-generation
};

/// The counterexample to the relative congruence extension property:
/// theta = Cg^{B4}(1, ~a) has quotient B2, yet no proper NBCA-congruence
/// of B4+B2 contains (~a, 1).
CongruenceExtensionReport congruence_extension_counterexample();

}  // namespace bochvar
