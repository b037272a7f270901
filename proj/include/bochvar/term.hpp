#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bochvar {

enum class UnaryOp { Neg, J0, J1, J2 };
enum class BinaryOp { Or, And };

/// Formula over the external language <~, |, &, J0, J1, J2, 0, 1>.
/// Terms are immutable and share subtrees; all operations on them are pure.
class Term {
 public:
  enum class Kind { Variable, Constant, Unary, Binary };

  static Term variable(std::string name);
  static Term constant(bool one);
  static Term unary(UnaryOp op, Term child);
  static Term binary(BinaryOp op, Term lhs, Term rhs);

  static Term neg(Term t) { return unary(UnaryOp::Neg, std::move(t)); }
  static Term j(int k, Term t);
  static Term disj(Term a, Term b) { return binary(BinaryOp::Or, std::move(a), std::move(b)); }
  static Term conj(Term a, Term b) { return binary(BinaryOp::And, std::move(a), std::move(b)); }

  Kind kind() const { return node_->kind; }
  const std::string& var_name() const;   // Variable
  bool is_one() const;                   // Constant
  UnaryOp unary_op() const;              // Unary
  BinaryOp binary_op() const;            // Binary
  Term child() const;                    // Unary
  Term lhs() const;                      // Binary
  Term rhs() const;                      // Binary

  std::size_t hash() const { return node_->hash; }
  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

 private:
  struct Node {
    Kind kind;
    UnaryOp uop{UnaryOp::Neg};
    BinaryOp bop{BinaryOp::Or};
    bool one = false;
    std::string name;
    std::shared_ptr<const Node> a, b;
    std::size_t hash = 0;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// phi -> psi, expanded at construction to ~phi | psi.
Term implies(Term phi, Term psi);
/// phi <-> psi, expanded to (phi -> psi) & (psi -> phi).
Term iff(Term phi, Term psi);

struct Equation {
  Term lhs = Term::constant(false);
  Term rhs = Term::constant(false);
};

/// Finitely many equational antecedents plus one consequent; empty
/// antecedents make a plain identity.
struct QuasiIdentity {
  std::vector<Equation> antecedents;
  Equation consequent;
};

struct Rule {
  std::vector<Term> premises;
  Term conclusion = Term::constant(false);
};

class parse_error : public std::runtime_error {
 public:
  parse_error(std::string msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/// Concrete grammar: `~` `&` `|` with precedence ~ > & > |, `J0 J1 J2`
/// prefix (parentheses optional for a single-token argument), constants
/// `0` `1`, and the derived `->` / `<->` (lowest, right-associative),
/// which are expanded away at parse time.
Term parse_term(const std::string& text);
/// `lhs = rhs`
Equation parse_equation(const std::string& text);
/// `eq, eq, ... => eq`; a bare equation is an identity.
QuasiIdentity parse_quasi_identity(const std::string& text);
/// `t, t, ... |- t`; premises may be empty.
Rule parse_rule(const std::string& text);

std::string render_term(const Term& t);
std::string render_equation(const Equation& e);
std::string render_quasi_identity(const QuasiIdentity& q);
std::string render_rule(const Rule& r);

/// Simultaneous substitution; variables outside sigma are unchanged.
Term substitute(const Term& t, const std::map<std::string, Term>& sigma);

std::set<std::string> variables(const Term& t);

struct VariableCover {
  std::set<std::string> covered;
  std::set<std::string> open;
};
/// A variable is open when at least one occurrence lies outside every
/// J_k scope, covered otherwise.
VariableCover covered_variables(const Term& t);

/// True iff every variable of t is covered.
bool is_external(const Term& t);

/// (J0 l <-> J0 r) & (J1 l <-> J1 r) & (J2 l <-> J2 r), associated to
/// the left, with <-> expanded.
Term expand_equiv(const Term& lhs, const Term& rhs);

/// The formula-to-equation transformer: tau(phi) is `phi = 1`. (This is
/// the only reading under which the algebraizability equivalences hold;
/// rho(tau(phi)) is a matrix theorem exactly when phi is.)
Equation tau(const Term& phi);
Term rho(const Equation& eq);

/// Rewrites J0 t to J2(~t) and J1 t to ~(J2 t | J2 ~t); the output has
/// no J0/J1 node.
Term eliminate_J01(const Term& t);

/// All terms over `vars` plus the constants, of depth <= max_depth, in a
/// fixed order: by depth, unary before binary, operators ordered
/// (~, J0, J1, J2, &, |), and at depth zero the variables before 0, 1.
std::vector<Term> enumerate_terms(int max_depth, const std::vector<std::string>& vars);

}  // namespace bochvar
