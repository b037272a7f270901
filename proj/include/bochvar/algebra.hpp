#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bochvar/term.hpp"

namespace bochvar {

class algebra_error : public std::runtime_error {
 public:
  explicit algebra_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Full carries all of <neg, or, and, J0, J1, J2, 0, 1>; Reduced declares
/// only J2 and synthesizes J0/J1 from it at load time; Boolean has no J
/// operations at all (used for the fibers of a Plonka sum).
enum class Signature { Full, Reduced, Boolean };

/// A finite algebra given by operation tables over an ordered carrier.
/// The element order fixes all table indexing, counterexample order and
/// homomorphism enumeration order. Immutable after construction.
class FiniteAlgebra {
 public:
  std::string name;
  std::vector<std::string> elements;
  Signature signature = Signature::Full;
  int zero = -1, one = -1;
  std::vector<int> neg_table, j0_table, j1_table, j2_table;
  std::vector<int> or_table, and_table;  // row-major, entry [x*n + y]

  int size() const { return static_cast<int>(elements.size()); }
  bool has_j() const { return signature != Signature::Boolean; }
  bool is_trivial() const { return size() == 1; }
  int index_of(const std::string& label) const;
  const std::string& label(int x) const { return elements[x]; }

  int neg(int x) const { return neg_table[x]; }
  int j(int k, int x) const;
  int join(int x, int y) const { return or_table[x * size() + y]; }
  int meet(int x, int y) const { return and_table[x * size() + y]; }
  int un(UnaryOp op, int x) const;
  int bin(BinaryOp op, int x, int y) const { return op == BinaryOp::Or ? join(x, y) : meet(x, y); }
  int constant(bool o) const { return o ? one : zero; }
  /// x <= y in the order induced by the join.
  bool leq(int x, int y) const { return join(x, y) == y; }

  /// Fills in missing J0/J1 tables of a reduced algebra and checks all
  /// structural invariants (index ranges, distinct labels, constants).
  void finalize();

  FiniteAlgebra boolean_reduct() const;
};

using Valuation = std::map<std::string, int>;

int eval(const FiniteAlgebra& a, const Term& t, const Valuation& v);

struct CheckResult {
  bool holds = true;
  Valuation counterexample;  // lexicographically least, empty when holds
  explicit operator bool() const { return holds; }
};

CheckResult holds_identity(const FiniteAlgebra& a, const Term& lhs, const Term& rhs);
/// Exhaustive scan over all |A|^k valuations of the variables, in
/// lexicographic order over the carrier order.
CheckResult holds_quasi_identity(const FiniteAlgebra& a, const QuasiIdentity& q);

FiniteAlgebra direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b);

using HomMap = std::vector<int>;

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const HomMap& h);
bool is_injective(const HomMap& h);
bool is_surjective(const HomMap& h, int target_size);

struct Subalgebra {
  FiniteAlgebra algebra;
  HomMap inclusion;  // subalgebra element -> parent element
};

/// Least subuniverse containing the seed and both constants, in the
/// parent's carrier order.
Subalgebra subalgebra_generated(const FiniteAlgebra& a, const std::vector<int>& seed);

/// All homomorphisms a -> b extending the partial constraint (-1 entries
/// are unconstrained), sorted lexicographically as map vectors.
std::vector<HomMap> enumerate_homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                            const HomMap& constraint = {});

std::optional<HomMap> find_embedding(const FiniteAlgebra& a, const FiniteAlgebra& b);
std::optional<HomMap> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b);

struct SeparationResult {
  bool separates = true;
  std::pair<int, int> witness{-1, -1};  // least pair not separated
  explicit operator bool() const { return separates; }
};

/// Whether the homomorphisms a -> g jointly separate the points of a;
/// for finite a this is membership in ISP(g).
SeparationResult separates_into(const FiniteAlgebra& a, const FiniteAlgebra& g);

struct Congruence {
  std::vector<int> block_of;  // per element, blocks numbered by least member
  int blocks = 0;
  bool same(int x, int y) const { return block_of[x] == block_of[y]; }
  bool is_identity() const { return blocks == static_cast<int>(block_of.size()); }
  bool is_total() const { return blocks == 1; }
};

/// Least congruence identifying a and b, by partition closure under all
/// operation tables.
Congruence principal_congruence(const FiniteAlgebra& alg, int a, int b);

/// Every congruence, by a scan over all partitions of the carrier.
std::vector<Congruence> all_congruences(const FiniteAlgebra& a);

struct Quotient {
  FiniteAlgebra algebra;
  HomMap projection;
};

Quotient quotient(const FiniteAlgebra& a, const Congruence& theta);

/// Built-in algebras: "wke", "b2", "b4", "b4+b2".
const FiniteAlgebra& builtin_algebra(const std::string& name);
std::vector<std::string> builtin_names();

FiniteAlgebra parse_algebra(std::istream& in);
FiniteAlgebra parse_algebra_text(const std::string& text);
/// Accepts a built-in name or a path to an algebra file.
FiniteAlgebra load_algebra(const std::string& name_or_path);
std::string write_algebra(const FiniteAlgebra& a);

}  // namespace bochvar
