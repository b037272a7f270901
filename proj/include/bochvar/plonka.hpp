#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bochvar/algebra.hpp"

namespace bochvar {

/// A lower-bounded semilattice of indices, one Boolean fiber per index,
/// and a compatible family of connecting homomorphisms p_ij (i <= j).
/// Fiber carriers are kept disjoint by construction (one algebra each).
struct SemilatticeDirectSystem {
  std::string name;
  std::vector<std::string> index_labels;
  std::vector<int> join_table;  // k*k row-major
  int bottom = 0;
  std::vector<FiniteAlgebra> fibers;  // Boolean signature
  std::map<std::pair<int, int>, HomMap> homs;  // strictly i < j pairs; p_ii = id
  std::map<int, int> designated;  // index -> element of the bottom fiber (optional)

  int count() const { return static_cast<int>(index_labels.size()); }
  int joined(int i, int j) const { return join_table[i * count() + j]; }
  bool leq(int i, int j) const { return joined(i, j) == j; }
  int index_of(const std::string& label) const;
  /// p_ij applied to a local element of fiber i, for i <= j.
  int push(int i, int j, int x) const;

  /// Checks the semilattice laws, the Boolean fiber identities, that the
  /// maps are homomorphisms and the compatibility p_jk . p_ij = p_ik.
  void validate() const;
};

/// The sum algebra over the system: disjoint-union carrier, operations
/// computed at the join index, constants from the bottom fiber. Boolean
/// signature (no J operations).
FiniteAlgebra plonka_sum(const SemilatticeDirectSystem& s);

/// Builds the full-signature algebra over plonka_sum(s): J2 on fiber i
/// inverts p_{i0 i} into the interval [0, a_i] of the bottom fiber, and
/// J0/J1 are derived. Requires surjective homomorphisms, non-injective
/// p_{i0 i} for i != i0, and a strictly antitone designated family; when
/// s.designated is empty the a_i are computed from the kernel filters and
/// the interval condition is verified.
FiniteAlgebra attach_J(const SemilatticeDirectSystem& s);

struct PlonkaDecomposition {
  FiniteAlgebra source;
  SemilatticeDirectSystem system;
  std::vector<std::pair<int, int>> fiber_of;  // original element -> (index, local element)
  std::vector<int> designated;                // per index: local element of the bottom fiber
  bool from_j = false;                        // designated read off the J2 tables
};

/// Decomposes the <neg,or,and,0,1>-reduct into its Plonka sum of Boolean
/// algebras: fibers are the classes of the mutual-absorption relation,
/// p_ij(a) = a & (a | b) for b in fiber j. The reduct must satisfy the
/// involutive-bisemilattice identities and have at most one negation
/// fixpoint. When the algebra carries J tables, a_i = J2(1_i) and every
/// decomposition invariant is verified; a violation means the algebra is
/// not a Bochvar algebra and is reported as an error.
PlonkaDecomposition decompose(const FiniteAlgebra& a);

struct ConditionReport {
  struct Item {
    std::string check;
    bool ok = true;
    std::string detail;
  };
  std::vector<Item> items;
  bool all_ok() const;
  std::vector<std::string> failures() const;
};

ConditionReport verify_decomposition_conditions(const PlonkaDecomposition& d);

/// All Bochvar algebras with at most max_size elements, canonical and
/// pairwise non-isomorphic: every bottom Boolean algebra, semilattice
/// shape and strictly antitone designated family is generated, built via
/// plonka_sum + attach_J and deduplicated by isomorphism search.
std::vector<FiniteAlgebra> enumerate_bca(int max_size);

SemilatticeDirectSystem parse_system(std::istream& in);
SemilatticeDirectSystem parse_system_text(const std::string& text);
SemilatticeDirectSystem load_system(const std::string& path);
std::string write_system(const SemilatticeDirectSystem& s);
std::string write_decomposition(const PlonkaDecomposition& d);

}  // namespace bochvar
