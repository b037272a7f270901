#include "bochvar/hilbert.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "bochvar/matrix.hpp"

namespace bochvar {

namespace {

// Metavariable slots are pattern variables named phi/psi/chi (free) and
// alpha/beta/gamma (restricted to external formulas).
struct Schema {
  std::string id;
  std::vector<Term> patterns;  // indexed families contribute one pattern each
  std::vector<std::string> external_slots;
};

Term mv(const char* name) { return Term::variable(name); }

std::vector<Schema> build_schemas() {
  Term phi = mv("phi"), psi = mv("psi"), chi = mv("chi");
  Term alpha = mv("alpha"), beta = mv("beta"), gamma = mv("gamma");
  Term zero = Term::constant(false), one = Term::constant(true);
  std::vector<Schema> ss;
  auto eq = [&](const std::string& id, std::vector<std::pair<Term, Term>> sides,
                std::vector<std::string> ext = {}) {
    Schema s;
    s.id = id;
    for (auto& [l, r] : sides) s.patterns.push_back(expand_equiv(l, r));
    s.external_slots = std::move(ext);
    ss.push_back(std::move(s));
  };
  auto imp = [&](const std::string& id, Term pattern,
                 std::vector<std::string> ext) {
    Schema s;
    s.id = id;
    s.patterns.push_back(std::move(pattern));
    s.external_slots = std::move(ext);
    ss.push_back(std::move(s));
  };

  eq("A1", {{Term::disj(phi, phi), phi}});
  eq("A2", {{Term::disj(phi, psi), Term::disj(psi, phi)}});
  eq("A3", {{Term::disj(Term::disj(phi, psi), chi), Term::disj(phi, Term::disj(psi, chi))}});
  eq("A4", {{Term::conj(phi, Term::disj(psi, chi)),
             Term::disj(Term::conj(phi, psi), Term::conj(phi, chi))}});
  eq("A5", {{Term::neg(Term::neg(phi)), phi}});
  eq("A6", {{Term::neg(one), zero}});
  eq("A7", {{Term::neg(Term::disj(phi, psi)), Term::conj(Term::neg(phi), Term::neg(psi))}});
  eq("A8", {{Term::disj(zero, phi), phi}});
  eq("A9", {{Term::j(2, alpha), alpha}}, {"alpha"});
  eq("A10", {{Term::j(0, alpha), Term::neg(alpha)}}, {"alpha"});
  eq("A11", {{Term::j(1, alpha), zero}}, {"alpha"});
  {
    std::vector<std::pair<Term, Term>> sides;
    for (int i = 0; i <= 2; ++i) sides.push_back({Term::j(i, Term::neg(phi)), Term::j(2 - i, phi)});
    eq("A12", std::move(sides));
  }
  {
    std::vector<std::pair<Term, Term>> sides;
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j)
        for (int k = 0; k <= 2; ++k)
          if (i != j && j != k && i != k)
            sides.push_back({Term::j(i, phi), Term::neg(Term::disj(Term::j(j, phi), Term::j(k, phi)))});
    eq("A13", std::move(sides));
  }
  {
    std::vector<std::pair<Term, Term>> sides;
    for (int i = 0; i <= 2; ++i)
      sides.push_back({Term::disj(Term::j(i, phi), Term::neg(Term::j(i, phi))), one});
    eq("A14", std::move(sides));
  }
  {
    std::vector<std::pair<Term, Term>> sides;
    for (int i = 0; i <= 2; ++i)
      for (int k = 0; k <= 2; ++k)
        sides.push_back({Term::conj(Term::disj(Term::j(i, phi), Term::j(k, psi)), Term::j(i, phi)),
                         Term::j(i, phi)});
    eq("A15", std::move(sides));
  }
  {
    std::vector<std::pair<Term, Term>> sides;
    for (int i : {1, 2}) sides.push_back({Term::disj(phi, Term::j(i, phi)), phi});
    eq("A16", std::move(sides));
  }
  eq("A17", {{Term::j(0, Term::disj(phi, psi)),
              Term::conj(Term::j(0, phi), Term::j(0, psi))}});
  eq("A18",
     {{Term::j(2, Term::disj(phi, psi)),
       Term::disj(
           Term::disj(Term::conj(Term::j(2, phi), Term::j(2, psi)),
                      Term::conj(Term::j(2, phi), Term::j(2, Term::neg(psi)))),
           Term::conj(Term::j(2, Term::neg(phi)), Term::j(2, psi)))}});

  imp("A19", implies(alpha, implies(beta, alpha)), {"alpha", "beta"});
  imp("A20",
      implies(implies(alpha, implies(beta, gamma)),
              implies(implies(alpha, beta), implies(alpha, gamma))),
      {"alpha", "beta", "gamma"});
  imp("A21", implies(Term::conj(alpha, beta), alpha), {"alpha", "beta"});
  imp("A22", implies(Term::conj(alpha, beta), beta), {"alpha", "beta"});
  imp("A23",
      implies(implies(alpha, beta),
              implies(implies(alpha, gamma), implies(alpha, Term::conj(beta, gamma)))),
      {"alpha", "beta", "gamma"});
  imp("A24", implies(alpha, Term::disj(alpha, beta)), {"alpha", "beta"});
  imp("A25", implies(beta, Term::disj(alpha, beta)), {"alpha", "beta"});
  imp("A26",
      implies(implies(alpha, gamma),
              implies(implies(beta, gamma), implies(Term::disj(alpha, beta), gamma))),
      {"alpha", "beta", "gamma"});
  imp("A27",
      implies(implies(alpha, beta), implies(implies(alpha, Term::neg(beta)), Term::neg(alpha))),
      {"alpha", "beta"});
  imp("A28", implies(alpha, implies(Term::neg(alpha), beta)), {"alpha", "beta"});
  imp("A29", implies(Term::neg(Term::neg(alpha)), alpha), {"alpha"});
  return ss;
}

const std::vector<Schema>& schemas() {
  static const std::vector<Schema> ss = build_schemas();
  return ss;
}

const Schema* find_schema(const std::string& id) {
  for (const Schema& s : schemas())
    if (s.id == id) return &s;
  return nullptr;
}

bool match(const Term& pattern, const Term& target, std::map<std::string, Term>& bind) {
  switch (pattern.kind()) {
    case Term::Kind::Variable: {
      auto [it, inserted] = bind.emplace(pattern.var_name(), target);
      return inserted || it->second == target;
    }
    case Term::Kind::Constant:
      return target.kind() == Term::Kind::Constant && target.is_one() == pattern.is_one();
    case Term::Kind::Unary:
      return target.kind() == Term::Kind::Unary && target.unary_op() == pattern.unary_op() &&
             match(pattern.child(), target.child(), bind);
    case Term::Kind::Binary:
      return target.kind() == Term::Kind::Binary && target.binary_op() == pattern.binary_op() &&
             match(pattern.lhs(), target.lhs(), bind) && match(pattern.rhs(), target.rhs(), bind);
  }
  return false;
}

}  // namespace

std::vector<std::string> schema_ids() {
  std::vector<std::string> ids;
  for (const Schema& s : schemas()) ids.push_back(s.id);
  return ids;
}

SchemaMatch match_schema(const std::string& schema_id, const Term& phi) {
  const Schema* s = find_schema(schema_id);
  if (!s) {
    SchemaMatch m;
    m.reason = "unknown schema '" + schema_id + "'";
    return m;
  }
  std::string guard_failure;
  for (const Term& pattern : s->patterns) {
    std::map<std::string, Term> bind;
    if (!match(pattern, phi, bind)) continue;
    bool guard_ok = true;
    for (const std::string& slot : s->external_slots) {
      auto it = bind.find(slot);
      if (it != bind.end() && !is_external(it->second)) {
        guard_ok = false;
        guard_failure = slot + " not external: " + render_term(it->second);
        break;
      }
    }
    if (guard_ok) {
      SchemaMatch m;
      m.ok = true;
      m.substitution = std::move(bind);
      return m;
    }
  }
  SchemaMatch m;
  m.reason = guard_failure.empty() ? "no pattern of " + schema_id + " matches" : guard_failure;
  return m;
}

DerivationVerdict check_derivation(const Derivation& d) {
  auto fail = [&](int step, std::string reason) {
    return DerivationVerdict{false, step, std::move(reason)};
  };
  if (d.steps.empty()) return fail(0, "empty derivation");
  for (std::size_t s = 0; s < d.steps.size(); ++s) {
    const Step& step = d.steps[s];
    const int num = static_cast<int>(s) + 1;
    switch (step.kind) {
      case Step::Kind::Axiom: {
        SchemaMatch m = match_schema(step.schema, step.formula);
        if (!m.ok) return fail(num, "not an instance of " + step.schema + ": " + m.reason);
        break;
      }
      case Step::Kind::Hypothesis: {
        if (step.hypothesis < 1 || step.hypothesis > static_cast<int>(d.hypotheses.size()))
          return fail(num, "hypothesis index out of range");
        if (!(d.hypotheses[step.hypothesis - 1] == step.formula))
          return fail(num, "formula differs from hypothesis " + std::to_string(step.hypothesis));
        break;
      }
      case Step::Kind::ModusPonens: {
        if (step.minor < 1 || step.minor >= num || step.major < 1 || step.major >= num)
          return fail(num, "modus ponens must cite earlier steps");
        const Term& minor = d.steps[step.minor - 1].formula;
        const Term& major = d.steps[step.major - 1].formula;
        if (!(major == implies(minor, step.formula)))
          return fail(num, "major premise shape mismatch: expected " +
                               render_term(implies(minor, step.formula)));
        break;
      }
    }
  }
  return DerivationVerdict{true, 0, ""};
}

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Derivation parse_derivation(std::istream& in) {
  Derivation d;
  std::string raw;
  int lineno = 0;
  bool saw_header = false, saw_end = false;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = strip(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string first;
    ls >> first;
    if (!saw_header) {
      if (first != "derive") throw parse_error("expected 'derive <name>'", lineno, 1);
      if (!(ls >> d.name)) throw parse_error("missing derivation name", lineno, 1);
      saw_header = true;
      continue;
    }
    if (first == "end") {
      saw_end = true;
      break;
    }
    if (first == "hyp") {
      std::string rest;
      std::getline(ls, rest);
      if (!d.steps.empty())
        throw parse_error("hypotheses must precede the steps", lineno, 1);
      d.hypotheses.push_back(parse_term(rest));
      continue;
    }
    int num = 0;
    try {
      num = std::stoi(first);
    } catch (const std::exception&) {
      throw parse_error("expected a step number, 'hyp' or 'end'", lineno, 1);
    }
    if (num != static_cast<int>(d.steps.size()) + 1)
      throw parse_error("step numbers must be consecutive from 1", lineno, 1);
    std::string kind;
    ls >> kind;
    Step step;
    if (kind == "axiom") {
      step.kind = Step::Kind::Axiom;
      ls >> step.schema;
    } else if (kind == "hyp") {
      step.kind = Step::Kind::Hypothesis;
      ls >> step.hypothesis;
    } else if (kind == "mp") {
      step.kind = Step::Kind::ModusPonens;
      ls >> step.minor >> step.major;
    } else {
      throw parse_error("unknown step kind '" + kind + "'", lineno, 1);
    }
    std::string colon;
    ls >> colon;
    if (colon != ":") throw parse_error("expected ':' before the step formula", lineno, 1);
    std::string rest;
    std::getline(ls, rest);
    step.formula = parse_term(rest);
    d.steps.push_back(std::move(step));
  }
  if (!saw_header) throw parse_error("empty derivation file", lineno, 1);
  if (!saw_end) throw parse_error("missing 'end'", lineno, 1);
  return d;
}

Derivation parse_derivation_text(const std::string& text) {
  std::istringstream in(text);
  return parse_derivation(in);
}

SoundnessReport soundness_scan(int depth, int var_count, int per_schema, unsigned seed) {
  std::vector<std::string> vars;
  static const char* names[] = {"x", "y", "z", "w"};
  for (int i = 0; i < var_count && i < 4; ++i) vars.push_back(names[i]);
  std::vector<Term> pool = enumerate_terms(depth, vars);
  std::vector<Term> external_pool;
  for (const Term& t : pool)
    if (is_external(t)) external_pool.push_back(t);
  if (external_pool.empty()) throw std::invalid_argument("depth too small for external terms");

  std::mt19937 rng(seed);
  SoundnessReport report;
  for (const Schema& s : schemas()) {
    for (int i = 0; i < per_schema; ++i) {
      const Term& pattern = s.patterns[i % s.patterns.size()];
      std::map<std::string, Term> sigma;
      for (const std::string& v : variables(pattern)) {
        bool ext = std::find(s.external_slots.begin(), s.external_slots.end(), v) !=
                   s.external_slots.end();
        const std::vector<Term>& from = ext ? external_pool : pool;
        sigma.emplace(v, from[rng() % from.size()]);
      }
      Term instance = substitute(pattern, sigma);
      ++report.instances;
      if (!is_theorem(matrix_be(), instance))
        report.violations.push_back({s.id, instance});
    }
  }
  return report;
}

}  // namespace bochvar
