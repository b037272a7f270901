#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bochvar/amalgam.hpp"
#include "bochvar/classify.hpp"
#include "bochvar/corpus.hpp"
#include "bochvar/hilbert.hpp"
#include "bochvar/matrix.hpp"
#include "bochvar/plonka.hpp"

using json = nlohmann::json;
using namespace bochvar;

namespace {

Valuation parse_bindings(const FiniteAlgebra& a, const std::vector<std::string>& sets) {
  Valuation v;
  for (const std::string& chunk : sets) {
    std::istringstream in(chunk);
    std::string item;
    while (std::getline(in, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw algebra_error("binding '" + item + "' is not of the form var=elem");
      std::string var = item.substr(0, eq), val = item.substr(eq + 1);
      int e = a.index_of(val);
      if (e < 0) throw algebra_error("unknown element '" + val + "' of " + a.name);
      v[var] = e;
    }
  }
  return v;
}

HomMap parse_map(const FiniteAlgebra& from, const FiniteAlgebra& to, const std::string& text) {
  HomMap h(from.size(), -1);
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    auto arrow = tok.find("->");
    if (arrow == std::string::npos)
      throw algebra_error("map entry '" + tok + "' is not of the form elem->elem");
    int x = from.index_of(tok.substr(0, arrow));
    int y = to.index_of(tok.substr(arrow + 2));
    if (x < 0) throw algebra_error("unknown element '" + tok.substr(0, arrow) + "'");
    if (y < 0) throw algebra_error("unknown element '" + tok.substr(arrow + 2) + "'");
    h[x] = y;
  }
  for (int v : h)
    if (v < 0) throw algebra_error("map leaves elements of " + from.name + " unassigned");
  return h;
}

std::string valuation_text(const FiniteAlgebra& a, const Valuation& v) {
  std::string s;
  for (const auto& [var, e] : v) s += (s.empty() ? "" : " ") + var + "=" + a.label(e);
  return s;
}

json valuation_json(const FiniteAlgebra& a, const Valuation& v) {
  json out = json::object();
  for (const auto& [var, e] : v) out[var] = a.label(e);
  return out;
}

std::string map_text(const FiniteAlgebra& from, const FiniteAlgebra& to, const HomMap& h) {
  std::string s;
  for (int x = 0; x < from.size(); ++x)
    s += (x ? " " : "") + from.label(x) + "->" + to.label(h[x]);
  return s;
}

const LogicalMatrix& matrix_by_name(const std::string& name) {
  if (name == "be") return matrix_be();
  if (name == "nbe") return matrix_nbe();
  throw algebra_error("unknown matrix '" + name + "' (use be or nbe)");
}

int classify_exit_code(AlgebraClass c) {
  switch (c) {
    case AlgebraClass::BCA_proper: return 0;
    case AlgebraClass::NBCA_proper: return 3;
    case AlgebraClass::JBA: return 4;
    case AlgebraClass::Trivial: return 5;
    case AlgebraClass::NotBCA: return 1;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for Bochvar external logic and Bochvar algebras"};
  app.require_subcommand(1);

  // eval
  std::string eval_algebra = "wke", eval_term;
  std::vector<std::string> eval_sets;
  bool eval_json = false;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a term under a valuation");
  eval_cmd->add_option("--algebra", eval_algebra, "built-in name or algebra file");
  eval_cmd->add_option("term", eval_term, "term to evaluate")->required();
  eval_cmd->add_option("--set", eval_sets, "variable binding var=elem (repeatable)");
  eval_cmd->add_flag("--json", eval_json);

  // check
  std::string check_algebra = "wke", check_text;
  bool check_json = false;
  auto* check_cmd = app.add_subcommand("check", "check an identity or quasi-identity");
  check_cmd->add_option("--algebra", check_algebra);
  check_cmd->add_option("quasi-identity", check_text, "e.g. \"x & (x|y) = x\" or \"eq, eq => eq\"")
      ->required();
  check_cmd->add_flag("--json", check_json);

  // consequence
  std::string cons_matrix = "be", cons_algebra, cons_text;
  bool cons_json = false;
  auto* cons_cmd = app.add_subcommand("consequence", "check premises |- conclusion in a matrix");
  cons_cmd->add_option("--matrix", cons_matrix, "be (default) or nbe");
  cons_cmd->add_option("--algebra", cons_algebra, "use <algebra, {1}> instead");
  cons_cmd->add_option("query", cons_text, "e.g. \"x, x->y |- y\"")->required();
  cons_cmd->add_flag("--json", cons_json);

  // theorem
  std::string thm_matrix = "be", thm_term;
  bool thm_json = false;
  auto* thm_cmd = app.add_subcommand("theorem", "check theoremhood in a matrix");
  thm_cmd->add_option("--matrix", thm_matrix, "be (default) or nbe");
  thm_cmd->add_option("term", thm_term)->required();
  thm_cmd->add_flag("--json", thm_json);

  // deduction
  std::string ded_matrix = "be", ded_psi, ded_phi;
  std::vector<std::string> ded_premises;
  bool ded_json = false;
  auto* ded_cmd =
      app.add_subcommand("deduction", "compare premises, psi |- phi with premises |- J2 psi -> J2 phi");
  ded_cmd->add_option("--matrix", ded_matrix);
  ded_cmd->add_option("--premise", ded_premises, "premise term (repeatable)");
  ded_cmd->add_option("--psi", ded_psi)->required();
  ded_cmd->add_option("--phi", ded_phi)->required();
  ded_cmd->add_flag("--json", ded_json);

  // prove-check
  std::string prove_file;
  bool prove_json = false;
  auto* prove_cmd = app.add_subcommand("prove-check", "verify a Hilbert-style derivation file");
  prove_cmd->add_option("file", prove_file, "derivation file, or - for stdin")->required();
  prove_cmd->add_flag("--json", prove_json);

  // compose
  std::string compose_file;
  bool compose_boolean = false;
  auto* compose_cmd = app.add_subcommand("compose", "build the algebra over a system file");
  compose_cmd->add_option("file", compose_file)->required();
  compose_cmd->add_flag("--boolean", compose_boolean, "emit the sum without J operations");

  // decompose
  std::string decomp_file;
  bool decomp_report = false;
  auto* decomp_cmd = app.add_subcommand("decompose", "decompose an algebra into its system");
  decomp_cmd->add_option("algebra", decomp_file, "built-in name or algebra file")->required();
  decomp_cmd->add_flag("--report", decomp_report, "also print the condition report");

  // classify
  std::string classify_file;
  bool classify_json = false;
  auto* classify_cmd = app.add_subcommand("classify", "place an algebra in the chain JBA < NBCA < BCA");
  classify_cmd->add_option("algebra", classify_file)->required();
  classify_cmd->add_flag("--json", classify_json);

  // retract
  std::string retract_file;
  bool retract_json = false;
  auto* retract_cmd = app.add_subcommand("retract", "build the retraction onto B2");
  retract_cmd->add_option("algebra", retract_file)->required();
  retract_cmd->add_flag("--json", retract_json);

  // amalgamate
  std::string am_class = "bca", am_a, am_b, am_c, am_i, am_j;
  auto* am_cmd = app.add_subcommand("amalgamate", "amalgamate a V-formation");
  am_cmd->add_option("--class", am_class, "bca (default) or nbca");
  am_cmd->add_option("A", am_a)->required();
  am_cmd->add_option("B", am_b)->required();
  am_cmd->add_option("C", am_c)->required();
  am_cmd->add_option("--i", am_i, "embedding A->B as \"e->e e->e ...\"")->required();
  am_cmd->add_option("--j", am_j, "embedding A->C")->required();

  // enumerate
  int enum_size = 8;
  bool enum_json = false;
  auto* enum_cmd = app.add_subcommand("enumerate", "enumerate Bochvar algebras up to a size");
  enum_cmd->add_option("--max-size", enum_size);
  enum_cmd->add_flag("--json", enum_json);

  // verify-paper
  int verify_size = 8;
  bool verify_json = false;
  auto* verify_cmd = app.add_subcommand("verify-paper", "run the claim corpus");
  verify_cmd->add_option("--size", verify_size, "scope: enumerated algebras up to this size");
  verify_cmd->add_flag("--json", verify_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eval_cmd) {
      FiniteAlgebra a = load_algebra(eval_algebra);
      Term t = parse_term(eval_term);
      int value = eval(a, t, parse_bindings(a, eval_sets));
      if (eval_json) std::cout << json{{"value", a.label(value)}}.dump() << "\n";
      else std::cout << a.label(value) << "\n";
      return 0;
    }
    if (*check_cmd) {
      FiniteAlgebra a = load_algebra(check_algebra);
      QuasiIdentity q = parse_quasi_identity(check_text);
      CheckResult r = holds_quasi_identity(a, q);
      if (check_json) {
        json out{{"verdict", r.holds ? "holds" : "fails"}};
        if (!r.holds) out["counterexample"] = valuation_json(a, r.counterexample);
        std::cout << out.dump() << "\n";
      } else if (r.holds) {
        std::cout << "holds\n";
      } else {
        std::cout << "counterexample: " << valuation_text(a, r.counterexample) << "\n";
      }
      return r.holds ? 0 : 1;
    }
    if (*cons_cmd || *thm_cmd) {
      bool is_cons = static_cast<bool>(*cons_cmd);
      const std::string& mname = is_cons ? cons_matrix : thm_matrix;
      LogicalMatrix local;
      const LogicalMatrix* m;
      if (is_cons && !cons_algebra.empty()) {
        local.algebra = load_algebra(cons_algebra);
        local.designated = {local.algebra.one};
        m = &local;
      } else {
        m = &matrix_by_name(mname);
      }
      CheckResult r;
      if (is_cons) {
        Rule rule = parse_rule(cons_text);
        r = consequence(*m, rule.premises, rule.conclusion);
      } else {
        r = theorem_check(*m, parse_term(thm_term));
      }
      bool json_mode = is_cons ? cons_json : thm_json;
      if (json_mode) {
        json out{{"verdict", r.holds ? (is_cons ? "holds" : "theorem")
                                     : (is_cons ? "fails" : "not-a-theorem")}};
        if (!r.holds) out["counterexample"] = valuation_json(m->algebra, r.counterexample);
        std::cout << out.dump() << "\n";
      } else if (r.holds) {
        std::cout << (is_cons ? "holds" : "theorem") << "\n";
      } else {
        std::cout << (is_cons ? "counterexample: " : "not a theorem: counterexample: ")
                  << valuation_text(m->algebra, r.counterexample) << "\n";
      }
      return r.holds ? 0 : 1;
    }
    if (*ded_cmd) {
      const LogicalMatrix& m = matrix_by_name(ded_matrix);
      std::vector<Term> premises;
      for (const auto& p : ded_premises) premises.push_back(parse_term(p));
      Term psi = parse_term(ded_psi), phi = parse_term(ded_phi);
      std::vector<Term> with_psi = premises;
      with_psi.push_back(psi);
      bool lhs = consequence(m, with_psi, phi).holds;
      bool rhs = consequence(m, premises, implies(Term::j(2, psi), Term::j(2, phi))).holds;
      bool agree = lhs == rhs;
      if (ded_json) {
        std::cout << json{{"agree", agree}, {"with-psi", lhs}, {"transformed", rhs}}.dump()
                  << "\n";
      } else {
        std::cout << (agree ? "agree" : "DISAGREE") << ": premises,psi |- phi "
                  << (lhs ? "holds" : "fails") << "; premises |- J2 psi -> J2 phi "
                  << (rhs ? "holds" : "fails") << "\n";
      }
      return agree ? 0 : 1;
    }
    if (*prove_cmd) {
      Derivation d;
      if (prove_file == "-") {
        d = parse_derivation(std::cin);
      } else {
        std::ifstream in(prove_file);
        if (!in) throw algebra_error("cannot open derivation file '" + prove_file + "'");
        d = parse_derivation(in);
      }
      DerivationVerdict v = check_derivation(d);
      if (prove_json) {
        json out{{"valid", v.valid}};
        if (v.valid) {
          out["proves"] = render_term(d.steps.back().formula);
          out["hypotheses"] = static_cast<int>(d.hypotheses.size());
        } else {
          out["failed-step"] = v.failed_step;
          out["reason"] = v.reason;
        }
        std::cout << out.dump() << "\n";
      } else if (v.valid) {
        std::cout << "valid: proves " << render_term(d.steps.back().formula) << " from "
                  << d.hypotheses.size() << " hypotheses\n";
      } else {
        std::cout << "invalid at step " << v.failed_step << ": " << v.reason << "\n";
      }
      return v.valid ? 0 : 1;
    }
    if (*compose_cmd) {
      SemilatticeDirectSystem s = load_system(compose_file);
      FiniteAlgebra a = compose_boolean ? plonka_sum(s) : attach_J(s);
      std::cout << write_algebra(a);
      return 0;
    }
    if (*decomp_cmd) {
      FiniteAlgebra a = load_algebra(decomp_file);
      PlonkaDecomposition d = decompose(a);
      std::cout << write_decomposition(d);
      if (decomp_report) {
        ConditionReport r = verify_decomposition_conditions(d);
        for (const auto& item : r.items)
          std::cout << "# " << (item.ok ? "ok   " : "FAIL ") << item.check
                    << (item.detail.empty() ? "" : " (" + item.detail + ")") << "\n";
      }
      return 0;
    }
    if (*classify_cmd) {
      FiniteAlgebra a = load_algebra(classify_file);
      Classification c = classify(a);
      if (classify_json) {
        json out{{"algebra", a.name},
                 {"verdict", to_string(c.verdict)},
                 {"basis-membership", c.basis_membership},
                 {"separation-membership", c.separation_membership}};
        if (!c.witness.empty()) {
          out["witness-source"] = c.witness_source;
          out["witness"] = map_text(builtin_algebra(c.witness_source), a, c.witness);
        }
        if (!c.reason.empty()) out["reason"] = c.reason;
        std::cout << out.dump() << "\n";
      } else {
        std::cout << "verdict: " << to_string(c.verdict) << "\n";
        std::cout << "evidence: basis=" << (c.basis_membership ? "member" : "non-member")
                  << " separation=" << (c.separation_membership ? "member" : "non-member")
                  << "\n";
        if (!c.witness.empty())
          std::cout << "witness: " << c.witness_source << " embeds via "
                    << map_text(builtin_algebra(c.witness_source), a, c.witness) << "\n";
        if (!c.reason.empty()) std::cout << "reason: " << c.reason << "\n";
      }
      return classify_exit_code(c.verdict);
    }
    if (*retract_cmd) {
      FiniteAlgebra a = load_algebra(retract_file);
      Retraction r = build_retraction(a);
      const FiniteAlgebra& b2 = builtin_algebra("b2");
      if (retract_json) {
        std::cout << json{{"r", map_text(a, b2, r.r)}, {"iota", map_text(b2, a, r.iota)}}.dump()
                  << "\n";
      } else {
        std::cout << "r: " << map_text(a, b2, r.r) << "\n";
        std::cout << "iota: " << map_text(b2, a, r.iota) << "\n";
      }
      return 0;
    }
    if (*am_cmd) {
      VFormation v;
      v.A = load_algebra(am_a);
      v.B = load_algebra(am_b);
      v.C = load_algebra(am_c);
      v.i = parse_map(v.A, v.B, am_i);
      v.j = parse_map(v.A, v.C, am_j);
      QuasivarietyClass cls =
          am_class == "nbca" ? QuasivarietyClass::NBCA : QuasivarietyClass::BCA;
      if (am_class != "bca" && am_class != "nbca")
        throw algebra_error("unknown class '" + am_class + "' (use bca or nbca)");
      AmalgamResult r = amalgamate(v, cls);
      if (!r.success) {
        std::cout << "amalgamation failed: " << r.failure << "\n";
        return 1;
      }
      AmalgamVerdict verdict = verify_amalgam(v, r.D, r.h, r.k, cls);
      if (!verdict.valid) {
        std::cout << "amalgam failed verification: " << verdict.reason << "\n";
        return 1;
      }
      std::cout << write_algebra(r.D);
      std::cout << "# h: " << map_text(v.B, r.D, r.h) << "\n";
      std::cout << "# k: " << map_text(v.C, r.D, r.k) << "\n";
      return 0;
    }
    if (*enum_cmd) {
      std::vector<FiniteAlgebra> algebras = enumerate_bca(enum_size);
      if (enum_json) {
        json out = json::array();
        for (const FiniteAlgebra& a : algebras)
          out.push_back({{"name", a.name},
                         {"size", a.size()},
                         {"class", to_string(classify(a).verdict)}});
        std::cout << out.dump() << "\n";
      } else {
        for (const FiniteAlgebra& a : algebras)
          std::cout << "size " << a.size() << " " << a.name << " "
                    << to_string(classify(a).verdict) << "\n";
        std::cout << "total " << algebras.size() << "\n";
      }
      return 0;
    }
    if (*verify_cmd) {
      CorpusReport report = run_corpus(verify_size);
      if (verify_json) {
        json out = json::array();
        for (const ClaimOutcome& o : report.outcomes) {
          json entry{{"id", o.id},
                     {"location", o.location},
                     {"algebra", o.algebra},
                     {"holds", o.holds},
                     {"as-expected", o.as_expected}};
          if (!o.detail.empty()) entry["detail"] = o.detail;
          if (!o.note.empty()) entry["note"] = o.note;
          out.push_back(entry);
        }
        std::cout << json{{"claims", report.claims},
                          {"evaluations", static_cast<int>(report.outcomes.size())},
                          {"mismatches", report.mismatches},
                          {"outcomes", out}}
                         .dump()
                  << "\n";
      } else {
        for (const ClaimOutcome& o : report.outcomes) {
          std::cout << (o.as_expected ? "ok       " : "MISMATCH ") << o.id << " [" << o.algebra
                    << "] " << o.location;
          if (!o.detail.empty()) std::cout << ": " << o.detail;
          if (!o.note.empty()) std::cout << " [" << o.note << "]";
          std::cout << "\n";
        }
        std::cout << report.claims << " claims, " << report.outcomes.size() << " evaluations, "
                  << report.mismatches << " mismatches\n";
      }
      return report.mismatches == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
