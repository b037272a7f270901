#include <doctest.h>

#include "bochvar/hilbert.hpp"
#include "bochvar/matrix.hpp"

using namespace bochvar;

TEST_CASE("schema matching with the external-formula guard") {
  // A19 over external instances
  SchemaMatch m = match_schema("A19", parse_term("J2 x -> (J0 y -> J2 x)"));
  REQUIRE(m.ok);
  CHECK(m.substitution.at("alpha") == parse_term("J2 x"));
  CHECK(m.substitution.at("beta") == parse_term("J0 y"));

  // a bare variable is not external
  m = match_schema("A19", parse_term("x -> (y -> x)"));
  CHECK_FALSE(m.ok);
  CHECK(m.reason.find("not external") != std::string::npos);

  // A11 matches against the expanded equivalence
  m = match_schema("A11", expand_equiv(parse_term("J1(J2(x))"), parse_term("0")));
  REQUIRE(m.ok);
  CHECK(m.substitution.at("alpha") == parse_term("J2 x"));

  // indexed families: any of the A12 instances matches
  m = match_schema("A12", expand_equiv(parse_term("J0(~x)"), parse_term("J2 x")));
  CHECK(m.ok);

  CHECK_FALSE(match_schema("A19", parse_term("x | y")).ok);
  CHECK_FALSE(match_schema("A99", parse_term("x")).ok);
}

TEST_CASE("the matched substitution reproduces the input") {
  Term inst = parse_term("(J2 x -> (J1 y -> J0 z)) -> ((J2 x -> J1 y) -> (J2 x -> J0 z))");
  SchemaMatch m = match_schema("A20", inst);
  REQUIRE(m.ok);
  Term alpha = m.substitution.at("alpha");
  Term beta = m.substitution.at("beta");
  Term gamma = m.substitution.at("gamma");
  Term rebuilt = implies(implies(alpha, implies(beta, gamma)),
                         implies(implies(alpha, beta), implies(alpha, gamma)));
  CHECK(rebuilt == inst);
}

namespace {

Derivation alpha_implies_alpha(const std::string& alpha_text) {
  // the standard five-step derivation of alpha -> alpha
  const std::string a = "(" + alpha_text + ")";
  Derivation d;
  d.name = "imp_refl";
  auto axiom = [&](const std::string& schema, const std::string& formula) {
    Step s;
    s.kind = Step::Kind::Axiom;
    s.schema = schema;
    s.formula = parse_term(formula);
    return s;
  };
  auto mp = [&](int minor, int major, const std::string& formula) {
    Step s;
    s.kind = Step::Kind::ModusPonens;
    s.minor = minor;
    s.major = major;
    s.formula = parse_term(formula);
    return s;
  };
  d.steps.push_back(axiom("A20", "(" + a + " -> ((" + a + " -> " + a + ") -> " + a + ")) -> ((" +
                                     a + " -> (" + a + " -> " + a + ")) -> (" + a + " -> " + a +
                                     "))"));
  d.steps.push_back(axiom("A19", a + " -> ((" + a + " -> " + a + ") -> " + a + ")"));
  d.steps.push_back(mp(2, 1, "(" + a + " -> (" + a + " -> " + a + ")) -> (" + a + " -> " + a + ")"));
  d.steps.push_back(axiom("A19", a + " -> (" + a + " -> " + a + ")"));
  d.steps.push_back(mp(4, 3, a + " -> " + a));
  return d;
}

}  // namespace

TEST_CASE("derivation checking") {
  Derivation good = alpha_implies_alpha("J2 x");
  DerivationVerdict v = check_derivation(good);
  CHECK(v.valid);

  // the guard rejects the same proof over a bare variable
  Derivation bad_guard = alpha_implies_alpha("x");
  v = check_derivation(bad_guard);
  CHECK_FALSE(v.valid);
  CHECK(v.failed_step == 1);
  CHECK(v.reason.find("not external") != std::string::npos);

  // modus ponens with the steps cited in the wrong order
  Derivation swapped = alpha_implies_alpha("J2 x");
  std::swap(swapped.steps[2].minor, swapped.steps[2].major);
  v = check_derivation(swapped);
  CHECK_FALSE(v.valid);
  CHECK(v.failed_step == 3);
  CHECK(v.reason.find("major premise shape mismatch") != std::string::npos);

  // an A9 instance over a bare variable
  Derivation a9;
  a9.name = "bad_a9";
  Step s;
  s.kind = Step::Kind::Axiom;
  s.schema = "A9";
  s.formula = expand_equiv(parse_term("J2(x)"), parse_term("x"));
  a9.steps.push_back(s);
  v = check_derivation(a9);
  CHECK_FALSE(v.valid);
  CHECK(v.reason.find("not external") != std::string::npos);
}

TEST_CASE("hypotheses participate in derivations") {
  Derivation d;
  d.name = "from_hyp";
  d.hypotheses.push_back(parse_term("J2 x"));
  d.hypotheses.push_back(parse_term("J2 x -> J2 y"));
  Step h1;
  h1.kind = Step::Kind::Hypothesis;
  h1.hypothesis = 1;
  h1.formula = parse_term("J2 x");
  Step h2;
  h2.kind = Step::Kind::Hypothesis;
  h2.hypothesis = 2;
  h2.formula = parse_term("J2 x -> J2 y");
  Step conclusion;
  conclusion.kind = Step::Kind::ModusPonens;
  conclusion.minor = 1;
  conclusion.major = 2;
  conclusion.formula = parse_term("J2 y");
  d.steps = {h1, h2, conclusion};
  CHECK(check_derivation(d).valid);

  d.steps[0].formula = parse_term("J2 y");  // mismatch against hypothesis 1
  DerivationVerdict v = check_derivation(d);
  CHECK_FALSE(v.valid);
  CHECK(v.failed_step == 1);
}

TEST_CASE("derivation files") {
  const char* text = R"(derive example
hyp J2 x
1 hyp 1 : J2 x
2 axiom A19 : J2 x -> (J2 x -> J2 x)
3 mp 1 2 : J2 x -> J2 x
end
)";
  Derivation d = parse_derivation_text(text);
  CHECK(d.name == "example");
  CHECK(d.hypotheses.size() == 1);
  CHECK(d.steps.size() == 3);
  CHECK(check_derivation(d).valid);

  CHECK_THROWS_AS(parse_derivation_text("derive x\n2 axiom A1 : x\nend\n"), parse_error);
  CHECK_THROWS_AS(parse_derivation_text("derive x\n1 axiom A1 x\nend\n"), parse_error);
  CHECK_THROWS_AS(parse_derivation_text("derive x\n"), parse_error);
}

TEST_CASE("accepted derivations are matrix consequences") {
  std::vector<Derivation> suite = {alpha_implies_alpha("J2 x"),
                                   alpha_implies_alpha("J0(x & y)"),
                                   alpha_implies_alpha("J1 x | J2 y")};
  for (const Derivation& d : suite) {
    REQUIRE(check_derivation(d).valid);
    CHECK(consequence(matrix_be(), d.hypotheses, d.steps.back().formula).holds);
  }

  // derived-rule packaging: a proof of phi from psi gives the theorem
  // J2 psi -> J2 phi
  Derivation d;
  d.name = "packaged";
  d.hypotheses.push_back(parse_term("J2 x & J2 y"));
  Step h;
  h.kind = Step::Kind::Hypothesis;
  h.hypothesis = 1;
  h.formula = parse_term("J2 x & J2 y");
  Step ax;
  ax.kind = Step::Kind::Axiom;
  ax.schema = "A21";
  ax.formula = parse_term("J2 x & J2 y -> J2 x");
  Step mp;
  mp.kind = Step::Kind::ModusPonens;
  mp.minor = 1;
  mp.major = 2;
  mp.formula = parse_term("J2 x");
  d.steps = {h, ax, mp};
  REQUIRE(check_derivation(d).valid);
  Term packaged = implies(Term::j(2, d.hypotheses[0]), Term::j(2, d.steps.back().formula));
  CHECK(is_theorem(matrix_be(), packaged));
}

TEST_CASE("soundness scan finds no violations") {
  SoundnessReport report = soundness_scan(2, 2, 10);
  CHECK(report.instances == 10 * 29);
  CHECK(report.violations.empty());
}

TEST_CASE("named axiom instances are theorems") {
  // A14 for i = 2
  CHECK(is_theorem(matrix_be(), expand_equiv(parse_term("J2 x | ~J2 x"), parse_term("1"))));
  // A18 over arbitrary formulas
  CHECK(is_theorem(matrix_be(),
                   expand_equiv(parse_term("J2(x | y)"),
                                parse_term("(J2 x & J2 y) | (J2 x & J2(~y)) | (J2(~x) & J2 y)"))));
}
