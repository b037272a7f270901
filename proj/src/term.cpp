#include "bochvar/term.hpp"

#include <cctype>
#include <functional>
#include <sstream>
#include <utility>

namespace bochvar {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::variable(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->name = std::move(name);
  n->hash = hash_combine(1, std::hash<std::string>{}(n->name));
  return Term(std::move(n));
}

Term Term::constant(bool one) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->one = one;
  n->hash = hash_combine(2, one ? 7 : 3);
  return Term(std::move(n));
}

Term Term::unary(UnaryOp op, Term child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unary;
  n->uop = op;
  n->a = child.node_;
  n->hash = hash_combine(hash_combine(3, static_cast<std::size_t>(op)), n->a->hash);
  return Term(std::move(n));
}

Term Term::binary(BinaryOp op, Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->bop = op;
  n->a = lhs.node_;
  n->b = rhs.node_;
  n->hash = hash_combine(
      hash_combine(hash_combine(4, static_cast<std::size_t>(op)), n->a->hash), n->b->hash);
  return Term(std::move(n));
}

Term Term::j(int k, Term t) {
  switch (k) {
    case 0: return unary(UnaryOp::J0, std::move(t));
    case 1: return unary(UnaryOp::J1, std::move(t));
    case 2: return unary(UnaryOp::J2, std::move(t));
    default: throw std::invalid_argument("J index must be 0, 1 or 2");
  }
}

const std::string& Term::var_name() const {
  if (kind() != Kind::Variable) throw std::logic_error("not a variable");
  return node_->name;
}

bool Term::is_one() const {
  if (kind() != Kind::Constant) throw std::logic_error("not a constant");
  return node_->one;
}

UnaryOp Term::unary_op() const {
  if (kind() != Kind::Unary) throw std::logic_error("not a unary term");
  return node_->uop;
}

BinaryOp Term::binary_op() const {
  if (kind() != Kind::Binary) throw std::logic_error("not a binary term");
  return node_->bop;
}

Term Term::child() const {
  if (kind() != Kind::Unary) throw std::logic_error("not a unary term");
  return Term(node_->a);
}

Term Term::lhs() const {
  if (kind() != Kind::Binary) throw std::logic_error("not a binary term");
  return Term(node_->a);
}

Term Term::rhs() const {
  if (kind() != Kind::Binary) throw std::logic_error("not a binary term");
  return Term(node_->b);
}

bool Term::operator==(const Term& other) const {
  std::function<bool(const Node*, const Node*)> eq = [&](const Node* x, const Node* y) {
    if (x == y) return true;
    if (x->hash != y->hash || x->kind != y->kind) return false;
    switch (x->kind) {
      case Kind::Variable: return x->name == y->name;
      case Kind::Constant: return x->one == y->one;
      case Kind::Unary: return x->uop == y->uop && eq(x->a.get(), y->a.get());
      case Kind::Binary:
        return x->bop == y->bop && eq(x->a.get(), y->a.get()) && eq(x->b.get(), y->b.get());
    }
    return false;
  };
  return eq(node_.get(), other.node_.get());
}

Term implies(Term phi, Term psi) {
  return Term::disj(Term::neg(std::move(phi)), std::move(psi));
}

Term iff(Term phi, Term psi) {
  return Term::conj(implies(phi, psi), implies(psi, phi));
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok {
  Ident, Zero, One, J0, J1, J2,
  Tilde, Amp, Pipe, Arrow, Iff,
  LParen, RParen,
  Eq, FatArrow, Comma, Turnstile,
  End,
};

struct Token {
  Tok tok;
  std::string text;
  int line, column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\r' || text_[pos_] == '\n')) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
    current_.line = line_;
    current_.column = col_;
    current_.text.clear();
    if (pos_ >= text_.size()) {
      current_.tok = Tok::End;
      return;
    }
    char c = text_[pos_];
    auto take = [&](Tok tok, int len) {
      current_.tok = tok;
      current_.text = text_.substr(pos_, len);
      pos_ += len;
      col_ += len;
    };
    switch (c) {
      case '~': take(Tok::Tilde, 1); return;
      case '&': take(Tok::Amp, 1); return;
      case '(': take(Tok::LParen, 1); return;
      case ')': take(Tok::RParen, 1); return;
      case ',': take(Tok::Comma, 1); return;
      case '0': take(Tok::Zero, 1); return;
      case '1': take(Tok::One, 1); return;
      case '|':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') take(Tok::Turnstile, 2);
        else take(Tok::Pipe, 1);
        return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') take(Tok::Arrow, 2);
        else throw parse_error("stray '-'", line_, col_);
        return;
      case '<':
        if (pos_ + 2 < text_.size() + 1 && text_.compare(pos_, 3, "<->") == 0) take(Tok::Iff, 3);
        else throw parse_error("stray '<'", line_, col_);
        return;
      case '=':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') take(Tok::FatArrow, 2);
        else take(Tok::Eq, 1);
        return;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_ + 1;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      std::string word = text_.substr(pos_, end - pos_);
      int len = static_cast<int>(word.size());
      if (word == "J0") take(Tok::J0, len);
      else if (word == "J1") take(Tok::J1, len);
      else if (word == "J2") take(Tok::J2, len);
      else take(Tok::Ident, len);
      return;
    }
    throw parse_error(std::string("unexpected character '") + c + "'", line_, col_);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token current_{Tok::End, "", 1, 1};
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Term term() { return parse_implication(); }

  Equation equation() {
    Term l = term();
    expect(Tok::Eq, "'='");
    Term r = term();
    return Equation{std::move(l), std::move(r)};
  }

  QuasiIdentity quasi_identity() {
    std::vector<Equation> eqs;
    eqs.push_back(equation());
    while (lex_.peek().tok == Tok::Comma) {
      lex_.next();
      eqs.push_back(equation());
    }
    QuasiIdentity q;
    if (lex_.peek().tok == Tok::FatArrow) {
      lex_.next();
      q.antecedents = std::move(eqs);
      q.consequent = equation();
    } else {
      if (eqs.size() != 1)
        throw parse_error("expected '=>' after antecedent equations", lex_.peek().line,
                          lex_.peek().column);
      q.consequent = std::move(eqs.front());
    }
    return q;
  }

  Rule rule() {
    std::vector<Term> premises;
    if (lex_.peek().tok != Tok::Turnstile) {
      premises.push_back(term());
      while (lex_.peek().tok == Tok::Comma) {
        lex_.next();
        premises.push_back(term());
      }
    }
    expect(Tok::Turnstile, "'|-'");
    Term conclusion = term();
    return Rule{std::move(premises), std::move(conclusion)};
  }

  void expect_end() {
    const Token& t = lex_.peek();
    if (t.tok != Tok::End)
      throw parse_error("unexpected trailing input '" + t.text + "'", t.line, t.column);
  }

 private:
  Term parse_implication() {
    Term lhs = parse_or();
    const Token& t = lex_.peek();
    if (t.tok == Tok::Arrow) {
      lex_.next();
      return implies(std::move(lhs), parse_implication());
    }
    if (t.tok == Tok::Iff) {
      lex_.next();
      return iff(std::move(lhs), parse_implication());
    }
    return lhs;
  }

  Term parse_or() {
    Term t = parse_and();
    while (lex_.peek().tok == Tok::Pipe) {
      lex_.next();
      t = Term::disj(std::move(t), parse_and());
    }
    return t;
  }

  Term parse_and() {
    Term t = parse_unary();
    while (lex_.peek().tok == Tok::Amp) {
      lex_.next();
      t = Term::conj(std::move(t), parse_unary());
    }
    return t;
  }

  Term parse_unary() {
    const Token& t = lex_.peek();
    switch (t.tok) {
      case Tok::Tilde:
        lex_.next();
        return Term::neg(parse_unary());
      case Tok::J0:
      case Tok::J1:
      case Tok::J2: {
        Token op = lex_.next();
        int k = op.tok == Tok::J0 ? 0 : op.tok == Tok::J1 ? 1 : 2;
        return Term::j(k, parse_j_argument(op));
      }
      default:
        return parse_primary();
    }
  }

  // Parentheses are optional only for a single-token argument.
  Term parse_j_argument(const Token& op) {
    const Token& t = lex_.peek();
    switch (t.tok) {
      case Tok::LParen: {
        lex_.next();
        Term inner = parse_implication();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident: return Term::variable(lex_.next().text);
      case Tok::Zero: lex_.next(); return Term::constant(false);
      case Tok::One: lex_.next(); return Term::constant(true);
      default:
        throw parse_error("expected argument after " + op.text +
                              " (variable, constant, or parenthesized term)",
                          t.line, t.column);
    }
  }

  Term parse_primary() {
    const Token& t = lex_.peek();
    switch (t.tok) {
      case Tok::Ident: return Term::variable(lex_.next().text);
      case Tok::Zero: lex_.next(); return Term::constant(false);
      case Tok::One: lex_.next(); return Term::constant(true);
      case Tok::LParen: {
        lex_.next();
        Term inner = parse_implication();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::End:
        throw parse_error("unexpected end of input", t.line, t.column);
      default:
        throw parse_error("unexpected token '" + t.text + "'", t.line, t.column);
    }
  }

  void expect(Tok tok, const std::string& what) {
    const Token& t = lex_.peek();
    if (t.tok != tok)
      throw parse_error("expected " + what +
                            (t.tok == Tok::End ? " before end of input"
                                               : " but found '" + t.text + "'"),
                        t.line, t.column);
    lex_.next();
  }

  Lexer lex_;
};

}  // namespace

parse_error::parse_error(std::string msg, int line, int column)
    : std::runtime_error("syntax error at " + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

Term parse_term(const std::string& text) {
  Parser p(text);
  Term t = p.term();
  p.expect_end();
  return t;
}

Equation parse_equation(const std::string& text) {
  Parser p(text);
  Equation e = p.equation();
  p.expect_end();
  return e;
}

QuasiIdentity parse_quasi_identity(const std::string& text) {
  Parser p(text);
  QuasiIdentity q = p.quasi_identity();
  p.expect_end();
  return q;
}

Rule parse_rule(const std::string& text) {
  Parser p(text);
  Rule r = p.rule();
  p.expect_end();
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

// precedence: | = 1, & = 2, unary and atoms = 3
int precedence(const Term& t) {
  if (t.kind() != Term::Kind::Binary) return 3;
  return t.binary_op() == BinaryOp::Or ? 1 : 2;
}

void render(const Term& t, std::ostringstream& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      out << t.var_name();
      return;
    case Term::Kind::Constant:
      out << (t.is_one() ? '1' : '0');
      return;
    case Term::Kind::Unary: {
      if (t.unary_op() == UnaryOp::Neg) {
        out << '~';
        Term c = t.child();
        if (precedence(c) < 3) {
          out << '(';
          render(c, out);
          out << ')';
        } else {
          render(c, out);
        }
      } else {
        int k = t.unary_op() == UnaryOp::J0 ? 0 : t.unary_op() == UnaryOp::J1 ? 1 : 2;
        out << 'J' << k << '(';
        render(t.child(), out);
        out << ')';
      }
      return;
    }
    case Term::Kind::Binary: {
      int prec = precedence(t);
      Term l = t.lhs(), r = t.rhs();
      // left-associative: the right child needs parentheses at equal precedence
      if (precedence(l) < prec) {
        out << '(';
        render(l, out);
        out << ')';
      } else {
        render(l, out);
      }
      out << (t.binary_op() == BinaryOp::Or ? " | " : " & ");
      if (precedence(r) <= prec) {
        out << '(';
        render(r, out);
        out << ')';
      } else {
        render(r, out);
      }
      return;
    }
  }
}

}  // namespace

std::string render_term(const Term& t) {
  std::ostringstream out;
  render(t, out);
  return out.str();
}

std::string render_equation(const Equation& e) {
  return render_term(e.lhs) + " = " + render_term(e.rhs);
}

std::string render_quasi_identity(const QuasiIdentity& q) {
  if (q.antecedents.empty()) return render_equation(q.consequent);
  std::string s;
  for (std::size_t i = 0; i < q.antecedents.size(); ++i) {
    if (i) s += ", ";
    s += render_equation(q.antecedents[i]);
  }
  return s + " => " + render_equation(q.consequent);
}

std::string render_rule(const Rule& r) {
  std::string s;
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    if (i) s += ", ";
    s += render_term(r.premises[i]);
  }
  if (!r.premises.empty()) s += " ";
  return s + "|- " + render_term(r.conclusion);
}

// ---------------------------------------------------------------------------
// Structural operations

Term substitute(const Term& t, const std::map<std::string, Term>& sigma) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto it = sigma.find(t.var_name());
      return it == sigma.end() ? t : it->second;
    }
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Unary:
      return Term::unary(t.unary_op(), substitute(t.child(), sigma));
    case Term::Kind::Binary:
      return Term::binary(t.binary_op(), substitute(t.lhs(), sigma), substitute(t.rhs(), sigma));
  }
  throw std::logic_error("unreachable");
}

std::set<std::string> variables(const Term& t) {
  std::set<std::string> out;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    switch (u.kind()) {
      case Term::Kind::Variable: out.insert(u.var_name()); break;
      case Term::Kind::Constant: break;
      case Term::Kind::Unary: walk(u.child()); break;
      case Term::Kind::Binary: walk(u.lhs()); walk(u.rhs()); break;
    }
  };
  walk(t);
  return out;
}

VariableCover covered_variables(const Term& t) {
  std::set<std::string> all, open;
  std::function<void(const Term&, bool)> walk = [&](const Term& u, bool under_j) {
    switch (u.kind()) {
      case Term::Kind::Variable:
        all.insert(u.var_name());
        if (!under_j) open.insert(u.var_name());
        break;
      case Term::Kind::Constant:
        break;
      case Term::Kind::Unary:
        walk(u.child(), under_j || u.unary_op() != UnaryOp::Neg);
        break;
      case Term::Kind::Binary:
        walk(u.lhs(), under_j);
        walk(u.rhs(), under_j);
        break;
    }
  };
  walk(t, false);
  VariableCover cover;
  cover.open = open;
  for (const auto& v : all)
    if (!open.count(v)) cover.covered.insert(v);
  return cover;
}

bool is_external(const Term& t) { return covered_variables(t).open.empty(); }

Term expand_equiv(const Term& lhs, const Term& rhs) {
  Term e = iff(Term::j(0, lhs), Term::j(0, rhs));
  e = Term::conj(std::move(e), iff(Term::j(1, lhs), Term::j(1, rhs)));
  e = Term::conj(std::move(e), iff(Term::j(2, lhs), Term::j(2, rhs)));
  return e;
}

Equation tau(const Term& phi) { return Equation{phi, Term::constant(true)}; }

Term rho(const Equation& eq) { return expand_equiv(eq.lhs, eq.rhs); }

Term eliminate_J01(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Unary: {
      Term c = eliminate_J01(t.child());
      switch (t.unary_op()) {
        case UnaryOp::J0:
          return Term::j(2, Term::neg(std::move(c)));
        case UnaryOp::J1:
          return Term::neg(Term::disj(Term::j(2, c), Term::j(2, Term::neg(c))));
        default:
          return Term::unary(t.unary_op(), std::move(c));
      }
    }
    case Term::Kind::Binary:
      return Term::binary(t.binary_op(), eliminate_J01(t.lhs()), eliminate_J01(t.rhs()));
  }
  throw std::logic_error("unreachable");
}

std::vector<Term> enumerate_terms(int max_depth, const std::vector<std::string>& vars) {
  std::vector<Term> all;
  for (const auto& v : vars) all.push_back(Term::variable(v));
  all.push_back(Term::constant(false));
  all.push_back(Term::constant(true));
  std::size_t level_begin = 0;
  for (int d = 1; d <= max_depth; ++d) {
    std::size_t level_end = all.size();
    std::vector<Term> next;
    for (UnaryOp op : {UnaryOp::Neg, UnaryOp::J0, UnaryOp::J1, UnaryOp::J2})
      for (std::size_t i = level_begin; i < level_end; ++i)
        next.push_back(Term::unary(op, all[i]));
    for (BinaryOp op : {BinaryOp::And, BinaryOp::Or})
      for (std::size_t i = 0; i < level_end; ++i)
        for (std::size_t k = 0; k < level_end; ++k) {
          // depth exactly d: at least one argument from the previous level
          if (i < level_begin && k < level_begin) continue;
          next.push_back(Term::binary(op, all[i], all[k]));
        }
    level_begin = level_end;
    for (auto& t : next) all.push_back(std::move(t));
  }
  return all;
}

}  // namespace bochvar
