// End-to-end verification of the structural results at desk scale. Each
// criterion prints one pass/fail line; the process exits nonzero when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bochvar/amalgam.hpp"
#include "bochvar/classify.hpp"
#include "bochvar/corpus.hpp"
#include "bochvar/hilbert.hpp"
#include "bochvar/matrix.hpp"
#include "bochvar/plonka.hpp"

using namespace bochvar;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, double budget_seconds,
               const std::function<std::string()>& run) {
  auto start = std::chrono::steady_clock::now();
  std::string problem;
  try {
    problem = run();
  } catch (const std::exception& e) {
    problem = std::string("exception: ") + e.what();
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (problem.empty() && budget_seconds > 0 && elapsed > budget_seconds) {
    std::ostringstream msg;
    msg << "runtime " << elapsed << "s exceeds the " << budget_seconds << "s budget";
    problem = msg.str();
  }
  std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", problem.empty() ? "PASS" : "FAIL", number,
              name.c_str(), elapsed, problem.empty() ? "" : " -- ", problem.c_str());
  if (!problem.empty()) ++failures;
}

std::string check(bool ok, const std::string& message) { return ok ? "" : message; }

bool has_prefix(const std::string& id, const std::string& prefix) {
  return id.rfind(prefix, 0) == 0;
}

}  // namespace

int main() {
  // 1. every encoded claim of the axiomatization and the appendix
  //    arithmetic evaluates as expected on the three-element algebra
  criterion(1, "claim corpus green on WK^e", 5.0, [] {
    CorpusReport report = run_corpus(3);  // scope: wke, trivial, b2
    int families = 0;
    for (const ClaimOutcome& o : report.outcomes) {
      bool counted = has_prefix(o.id, "Def3.1") || has_prefix(o.id, "Thm3.3") ||
                     has_prefix(o.id, "L3.6") || has_prefix(o.id, "L3.7") ||
                     has_prefix(o.id, "L3.8") || has_prefix(o.id, "P3.10") ||
                     has_prefix(o.id, "L3.12") || has_prefix(o.id, "A.1") ||
                     has_prefix(o.id, "A.2");
      if (!counted || o.algebra != "wke") continue;
      ++families;
      if (!o.as_expected) return "claim " + o.id + " not as expected: " + o.detail;
    }
    // 20 + 13 + 3 + 4 + 4 + 1 + 2 + 9 + 15 claims evaluate on wke
    return check(families == 71,
                 "expected 71 claim evaluations on wke, got " + std::to_string(families));
  });

  // 2. the three membership tests agree everywhere
  criterion(2, "membership basis equivalence (size <= 6, 200 mutants)", 60.0, [] {
    BasisAgreementReport report = basis_equivalence_check(6, 200);
    if (!report.disagreements.empty())
      return "disagreement: " + report.disagreements.front();
    return check(report.algebras == 6 && report.mutants == 200, "wrong sweep size");
  });

  // 3. decompose/attach_J round-trip with all structure conditions
  criterion(3, "decomposition roundtrip on every member of size <= 8", 120.0, [] {
    for (const FiniteAlgebra& a : enumerate_bca(8)) {
      PlonkaDecomposition d = decompose(a);
      ConditionReport conditions = verify_decomposition_conditions(d);
      if (!conditions.all_ok())
        return a.name + " fails: " + conditions.failures().front();
      FiniteAlgebra rebuilt = attach_J(d.system);
      if (!find_isomorphism(rebuilt, a))
        return "attach_J(decompose(" + a.name + ")) is not isomorphic to the original";
    }
    return std::string();
  });

  // 4. enumeration counts, frozen from a verified run
  criterion(4, "enumeration counts at sizes 3, 4 and 6", 60.0, [] {
    std::vector<FiniteAlgebra> upto3 = enumerate_bca(3);
    if (upto3.size() != 3) return std::string("sizes <= 3: expected 3 algebras");
    if (!find_isomorphism(upto3[1], builtin_algebra("b2")) ||
        !find_isomorphism(upto3[2], builtin_algebra("wke")) || upto3[0].size() != 1)
      return std::string("sizes <= 3 are not {trivial, B2, WK^e}");
    std::vector<FiniteAlgebra> upto4 = enumerate_bca(4);
    if (upto4.size() != 4 || !find_isomorphism(upto4[3], builtin_algebra("b4")))
      return std::string("size 4 does not add exactly B4");
    std::vector<FiniteAlgebra> upto6 = enumerate_bca(6);
    // one new member each at sizes 5 and 6
    if (upto6.size() != 6) return std::string("sizes <= 6: expected 6 algebras");
    const FiniteAlgebra* six = nullptr;
    for (const FiniteAlgebra& a : upto6)
      if (a.size() == 6) six = &a;
    if (!six || !find_isomorphism(*six, builtin_algebra("b4+b2")))
      return std::string("size 6 does not contain B4+B2");
    FiniteAlgebra prod = direct_product(builtin_algebra("wke"), builtin_algebra("b2"));
    if (!find_isomorphism(builtin_algebra("b4+b2"), prod))
      return std::string("B4+B2 is not isomorphic to WK^e x B2");
    return std::string();
  });

  // 5. the subquasivariety chain classifies everything, with witnesses
  criterion(5, "classification with verified witnesses (size <= 8)", 60.0, [] {
    for (const FiniteAlgebra& a : enumerate_bca(8)) {
      Classification c = classify(a);
      if (c.verdict == AlgebraClass::NotBCA) return a.name + " unclassifiable: " + c.reason;
      bool fixpoint = !a.is_trivial() && has_fixpoint(a).has_value();
      if (fixpoint) {
        if (c.verdict != AlgebraClass::BCA_proper || c.witness_source != "wke")
          return a.name + ": fixpoint without a WK^e witness";
        if (!is_homomorphism(builtin_algebra("wke"), a, c.witness) || !is_injective(c.witness))
          return a.name + ": WK^e witness fails the embedding check";
      }
      if (c.verdict == AlgebraClass::NBCA_proper) {
        if (c.witness_source != "b4+b2" ||
            !is_homomorphism(builtin_algebra("b4+b2"), a, c.witness) ||
            !is_injective(c.witness))
          return a.name + ": B4+B2 witness fails the embedding check";
      }
    }
    return std::string();
  });

  // 6. the separating quasi-identity and rule behave as established
  criterion(6, "(NF) and (EFJ) separate the two matrices", 10.0, [] {
    const FiniteAlgebra& wke = builtin_algebra("wke");
    QuasiIdentity nf = parse_quasi_identity("J1 x = 1 => y = 1");
    CheckResult r = holds_quasi_identity(wke, nf);
    if (r.holds) return std::string("(NF) holds in WK^e");
    Valuation expected{{"x", wke.index_of("H")}, {"y", wke.zero}};
    if (r.counterexample != expected) return std::string("(NF) counterexample is not x=H y=0");
    if (!witness_passivity(nf, builtin_algebra("b4+b2")).witnessed)
      return std::string("passivity of (NF) not witnessed by B4+B2");
    Rule efj = parse_rule("J1 x |- y");
    if (rule_derivable(matrix_be(), efj).holds)
      return std::string("(EFJ) unexpectedly derivable in B^e");
    if (!rule_derivable(matrix_nbe(), efj).holds)
      return std::string("(EFJ) not derivable in NB^e");
    Term lem = parse_term("x | ~x"), jlem = parse_term("J2 x | ~J2 x");
    if (is_theorem(matrix_be(), lem) || is_theorem(matrix_nbe(), lem))
      return std::string("x | ~x is a theorem of some matrix");
    if (!is_theorem(matrix_be(), jlem) || !is_theorem(matrix_nbe(), jlem))
      return std::string("J2 x | ~J2 x is not a theorem of both matrices");
    return std::string();
  });

  // 7. the deduction equivalence is exact over the full bounded space
  criterion(7, "deduction theorem sweep (depth <= 3, <= 2 variables)", 60.0, [] {
    DeductionSweep sweep = deduction_theorem_sweep(3, 2);
    if (sweep.violations != 0)
      return std::to_string(sweep.violations) + " violations among " +
             std::to_string(sweep.triples) + " triples";
    return check(sweep.triples > 0, "empty sweep");
  });

  // 8. the two matrices have the same bounded theorems
  criterion(8, "theoremhood agreement (depth <= 3, <= 2 variables)", 60.0, [] {
    AgreementReport report = theoremhood_agreement(3, 2);
    if (!report.discrepancies.empty())
      return "theorem of exactly one matrix: " + report.discrepancies.front().representative;
    return check(report.classes > 0, "empty enumeration");
  });

  // 9. the retraction construction succeeds exactly off fixpoints
  criterion(9, "retraction onto B2 (size <= 8)", 60.0, [] {
    const FiniteAlgebra& b2 = builtin_algebra("b2");
    for (const FiniteAlgebra& a : enumerate_bca(8)) {
      bool fixpoint = a.is_trivial() || has_fixpoint(a).has_value();
      if (fixpoint) {
        try {
          build_retraction(a);
          return a.name + ": retraction built despite a fixpoint";
        } catch (const algebra_error& e) {
          if (std::string(e.what()).find("fixpoint") == std::string::npos)
            return a.name + ": unexpected error " + e.what();
        }
        continue;
      }
      Retraction r = build_retraction(a);
      if (!is_homomorphism(a, b2, r.r) || !is_homomorphism(b2, a, r.iota))
        return a.name + ": retraction maps fail the homomorphism check";
      for (int x = 0; x < 2; ++x)
        if (r.r[r.iota[x]] != x) return a.name + ": r . iota is not the identity";
    }
    return std::string();
  });

  // 10. every V-formation of small members amalgamates in its class
  criterion(10, "amalgamation sweep over members of size <= 6", 600.0, [] {
    std::vector<FiniteAlgebra> members = enumerate_bca(6);
    std::mt19937 rng(0xb0c4);
    long long checked = 0;
    for (QuasivarietyClass cls : {QuasivarietyClass::BCA, QuasivarietyClass::NBCA}) {
      std::vector<const FiniteAlgebra*> in_class;
      for (const FiniteAlgebra& a : members)
        if (member_of(classify(a), cls)) in_class.push_back(&a);
      std::vector<VFormation> exhaustive, sampled_pool;
      for (const FiniteAlgebra* a : in_class) {
        for (const FiniteAlgebra* b : in_class) {
          std::vector<HomMap> into_b;
          for (const HomMap& h : enumerate_homomorphisms(*a, *b))
            if (is_injective(h)) into_b.push_back(h);
          if (into_b.empty()) continue;
          for (const FiniteAlgebra* c : in_class) {
            std::vector<HomMap> into_c;
            for (const HomMap& h : enumerate_homomorphisms(*a, *c))
              if (is_injective(h)) into_c.push_back(h);
            for (const HomMap& i : into_b)
              for (const HomMap& j : into_c) {
                VFormation v{*a, *b, *c, i, j};
                (a->size() <= 4 ? exhaustive : sampled_pool).push_back(std::move(v));
              }
          }
        }
      }
      std::vector<VFormation> sampled;
      if (sampled_pool.size() <= 100) {
        sampled = std::move(sampled_pool);
      } else {
        for (int pick = 0; pick < 100; ++pick)
          sampled.push_back(sampled_pool[rng() % sampled_pool.size()]);
      }
      for (const std::vector<VFormation>* batch : {&exhaustive, &sampled})
        for (const VFormation& v : *batch) {
          AmalgamResult r = amalgamate(v, cls);
          ++checked;
          std::ostringstream maps;
          maps << " i=[";
          for (std::size_t x = 0; x < v.i.size(); ++x)
            maps << (x ? " " : "") << v.A.label((int)x) << "->" << v.B.label(v.i[x]);
          maps << "] j=[";
          for (std::size_t x = 0; x < v.j.size(); ++x)
            maps << (x ? " " : "") << v.A.label((int)x) << "->" << v.C.label(v.j[x]);
          maps << "]";
          std::string tag = to_string(cls) + " (" + v.A.name + ", " + v.B.name + ", " +
                            v.C.name + ")" + maps.str();
          if (!r.success) return "no amalgam for " + tag + ": " + r.failure;
          AmalgamVerdict verdict = verify_amalgam(v, r.D, r.h, r.k, cls);
          if (!verdict.valid) return "amalgam for " + tag + " invalid: " + verdict.reason;
          // fixpoint-freeness characterizes the non-trivial NBCA members
          if (cls == QuasivarietyClass::NBCA && !r.D.is_trivial() && has_fixpoint(r.D))
            return "amalgam for " + tag + " has a fixpoint";
        }
    }
    return check(checked > 50, "sweep too small: " + std::to_string(checked));
  });

  // 11. the congruence extension counterexample
  criterion(11, "relative congruence extension fails as computed", 30.0, [] {
    CongruenceExtensionReport r = congruence_extension_counterexample();
    if (r.theta_blocks != std::vector<std::string>{"{0 a}", "{na 1}"})
      return std::string("theta does not have blocks {1,na} and {a,0}");
    if (!r.quotient_is_b2) return std::string("B4/theta is not isomorphic to B2");
    if (!r.scan_cross_checked)
      return std::string("partition scan and join generation disagree");
    if (r.proper_containing_pair != 0)
      return std::to_string(r.proper_containing_pair) +
             " proper NBCA-congruences contain (na, 1)";
    if (!r.extension_fails) return std::string("extension property did not fail");
    return std::string();
  });

  // 12. the axiom schemas are sound and the external guard bites
  criterion(12, "axiom soundness scan and external guard", 60.0, [] {
    SoundnessReport report = soundness_scan(2, 2, 50);
    if (!report.violations.empty())
      return "non-theorem instance of " + report.violations.front().schema + ": " +
             render_term(report.violations.front().instance);
    SchemaMatch m = match_schema("A19", parse_term("x -> (y -> x)"));
    if (m.ok) return std::string("A19 accepted a bare-variable instance");
    if (m.reason.find("not external") == std::string::npos)
      return std::string("rejection reason does not mention externality");
    return std::string();
  });

  if (failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", failures);
  return 1;
}
