#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bochvar/algebra.hpp"

namespace bochvar {

enum class AlgebraClass { NotBCA, Trivial, JBA, NBCA_proper, BCA_proper };

std::string to_string(AlgebraClass c);

/// The 19 defining identities and quasi-identities of Bochvar algebras,
/// with item 15 in both its one-variable and two-variable reading.
const std::vector<QuasiIdentity>& def31_basis();
/// The 13-item quasi-equational basis in the reduced language.
const std::vector<QuasiIdentity>& thm33_basis();

/// First failing basis item, or holds. thm33 additionally requires the
/// J0/J1 tables to agree with their J2-derived definitions, so that the
/// reduced basis decides membership for full-signature algebras too.
struct BasisCheck {
  bool member = true;
  int failed_item = 0;  // 1-based; 0 = the derived-definition agreement
  CheckResult failure;
  explicit operator bool() const { return member; }
};

BasisCheck def31_membership(const FiniteAlgebra& a);
BasisCheck thm33_membership(const FiniteAlgebra& a);

struct Classification {
  AlgebraClass verdict = AlgebraClass::NotBCA;
  std::string reason;          // for NotBCA
  std::string witness_source;  // "wke" or "b4+b2"
  HomMap witness;              // embedding of the witness source into the algebra
  bool basis_membership = false;
  bool separation_membership = false;
};

/// Places a finite algebra in the chain JBA < NBCA < BCA. Membership is
/// decided two independent ways (quasi-equational basis and separation
/// into WK^e); a disagreement is an internal error and throws.
Classification classify(const FiniteAlgebra& a);

/// The unique negation fixpoint, if any; two fixpoints are an error.
std::optional<int> has_fixpoint(const FiniteAlgebra& a);

struct Retraction {
  HomMap r;     // algebra -> b2
  HomMap iota;  // b2 -> algebra
};

/// The retraction onto B2 through the principal ultrafilter at the least
/// atom below the top fiber's designated element. Errors when a fixpoint
/// is present (no homomorphism onto B2 exists then).
Retraction build_retraction(const FiniteAlgebra& a);

}  // namespace bochvar
