#include <doctest.h>

#include <random>

#include "bochvar/matrix.hpp"

using namespace bochvar;

TEST_CASE("consequence in the three-valued matrix") {
  const LogicalMatrix& be = matrix_be();
  CHECK(consequence(be, {parse_term("x")}, parse_term("J2(x)")).holds);

  CheckResult r = consequence(be, {parse_term("J1(x)")}, parse_term("y"));
  REQUIRE_FALSE(r.holds);
  CHECK(r.counterexample ==
        Valuation{{"x", be.algebra.index_of("H")}, {"y", be.algebra.zero}});

  r = consequence(be, {}, parse_term("x | ~x"));
  REQUIRE_FALSE(r.holds);
  CHECK(r.counterexample == Valuation{{"x", be.algebra.index_of("H")}});
}

TEST_CASE("theoremhood") {
  CHECK(is_theorem(matrix_be(), parse_term("J2 x | ~J2 x")));
  CHECK(is_theorem(matrix_be(), parse_term("1")));
  CHECK_FALSE(is_theorem(matrix_be(), parse_term("x | ~x")));
  CHECK_FALSE(is_theorem(matrix_nbe(), parse_term("x | ~x")));
  CHECK(is_theorem(matrix_nbe(), parse_term("J2 x | ~J2 x")));
  // the excluded-middle witness in the six-element matrix sits in the
  // upper fiber, where the join of top and bottom misses 1
  CheckResult r = theorem_check(matrix_nbe(), parse_term("x | ~x"));
  int witness = r.counterexample.at("x");
  const std::string& label = matrix_nbe().algebra.label(witness);
  CHECK((label == "bot" || label == "top"));
}

TEST_CASE("deduction theorem instances") {
  const LogicalMatrix& be = matrix_be();
  CHECK(check_deduction_instance(be, {}, parse_term("x"), parse_term("x")));
  CHECK(check_deduction_instance(be, {parse_term("x")}, parse_term("y"), parse_term("x & y")));
  CHECK(check_deduction_instance(be, {parse_term("J1(x)")}, parse_term("1"), parse_term("y")));
}

TEST_CASE("rule derivability") {
  Rule efj = parse_rule("J1 x |- y");
  CHECK_FALSE(rule_derivable(matrix_be(), efj).holds);
  CHECK(rule_derivable(matrix_nbe(), efj).holds);
  Rule mp_external = parse_rule("J2 x, J2 x -> J2 y |- J2 y");
  CHECK(rule_derivable(matrix_be(), mp_external).holds);
}

TEST_CASE("passivity witnesses") {
  QuasiIdentity nf = parse_quasi_identity("J1 x = 1 => y = 1");
  PassivityResult in_b4b2 = witness_passivity(nf, builtin_algebra("b4+b2"));
  CHECK(in_b4b2.witnessed);

  PassivityResult in_wke = witness_passivity(nf, builtin_algebra("wke"));
  CHECK_FALSE(in_wke.witnessed);
  CHECK(in_wke.realizing.at("x") == builtin_algebra("wke").index_of("H"));

  QuasiIdentity empty = parse_quasi_identity("x = x");
  CHECK_FALSE(witness_passivity(empty, builtin_algebra("b4+b2")).witnessed);
}

TEST_CASE("structurality of consequence under substitution") {
  const LogicalMatrix& be = matrix_be();
  std::vector<std::pair<std::vector<Term>, Term>> holding = {
      {{parse_term("x")}, parse_term("J2(x)")},
      {{parse_term("x"), parse_term("x -> y")}, parse_term("J2 y | J1 y")},
      {{}, parse_term("J2 x | ~J2 x")},
  };
  std::vector<std::map<std::string, Term>> substitutions = {
      {{"x", parse_term("y & z")}, {"y", parse_term("~x")}},
      {{"x", parse_term("J1(x | y)")}},
      {{"y", parse_term("0")}},
  };
  for (const auto& [premises, phi] : holding) {
    REQUIRE(consequence(be, premises, phi).holds);
    for (const auto& sigma : substitutions) {
      std::vector<Term> mapped;
      for (const Term& p : premises) mapped.push_back(substitute(p, sigma));
      CHECK(consequence(be, mapped, substitute(phi, sigma)).holds);
    }
  }
}

TEST_CASE("algebraizability bridge on sampled instances") {
  const LogicalMatrix& be = matrix_be();
  std::mt19937 rng(31);
  std::vector<Term> pool = enumerate_terms(2, {"x", "y"});
  for (int i = 0; i < 200; ++i) {
    const Term& gamma = pool[rng() % pool.size()];
    const Term& phi = pool[rng() % pool.size()];
    bool logic_side = consequence(be, {gamma}, phi).holds;
    QuasiIdentity q;
    q.antecedents.push_back(tau(gamma));
    q.consequent = tau(phi);
    bool algebra_side = holds_quasi_identity(be.algebra, q).holds;
    CHECK(logic_side == algebra_side);
  }
}

TEST_CASE("theoremhood agreement between the two matrices") {
  AgreementReport small = theoremhood_agreement(1, 1);
  CHECK(small.discrepancies.empty());
  CHECK(small.classes > 4);
  for (const AgreementEntry& e : small.entries)
    CHECK(e.be_theorem == e.nbe_theorem);

  AgreementReport big = theoremhood_agreement(3, 2);
  CHECK(big.discrepancies.empty());
  CHECK(big.classes == 322);  // frozen from a verified enumeration run
}

TEST_CASE("agreement entries carry audit verdicts") {
  AgreementReport r = theoremhood_agreement(1, 1);
  bool found_theorem = false, found_non_theorem = false;
  for (const AgreementEntry& e : r.entries) {
    if (e.be_theorem) found_theorem = true;
    else found_non_theorem = true;
    CHECK_FALSE(e.representative.empty());
  }
  CHECK(found_theorem);
  CHECK(found_non_theorem);
}

TEST_CASE("deduction sweep has no violations at the full bound") {
  DeductionSweep sweep = deduction_theorem_sweep(3, 2);
  CHECK(sweep.violations == 0);
  CHECK(sweep.designation_sets == 214);  // frozen from a verified enumeration run
  CHECK(sweep.triples > 1000000);
}
