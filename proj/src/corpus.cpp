#include "bochvar/corpus.hpp"

#include <random>
#include <sstream>

#include "bochvar/amalgam.hpp"
#include "bochvar/classify.hpp"
#include "bochvar/matrix.hpp"
#include "bochvar/plonka.hpp"

namespace bochvar {

namespace {

std::vector<QuasiIdentity> qs(const std::vector<std::string>& texts) {
  std::vector<QuasiIdentity> out;
  for (const auto& t : texts) out.push_back(parse_quasi_identity(t));
  return out;
}

Claim identity_claim(std::string id, std::string location, std::vector<std::string> texts) {
  Claim c;
  c.id = std::move(id);
  c.location = std::move(location);
  c.kind = Claim::Kind::Identity;
  c.instances = qs(texts);
  return c;
}

Claim quasi_claim(std::string id, std::string location, std::vector<std::string> texts) {
  Claim c = identity_claim(std::move(id), std::move(location), std::move(texts));
  c.kind = Claim::Kind::Quasi;
  return c;
}

Claim property_claim(std::string id, std::string location, std::string key) {
  Claim c;
  c.id = std::move(id);
  c.location = std::move(location);
  c.kind = Claim::Kind::Property;
  c.property = std::move(key);
  return c;
}

std::string J(int k, const std::string& arg) { return "J" + std::to_string(k) + "(" + arg + ")"; }

std::vector<Claim> build_claims() {
  std::vector<Claim> claims;
  auto add = [&](Claim c) { claims.push_back(std::move(c)); };

  // ----- the defining identities and quasi-identities (19 items)
  add(identity_claim("Def3.1-1", "Definition 3.1, item 1", {"x | x = x"}));
  add(identity_claim("Def3.1-2", "Definition 3.1, item 2", {"x | y = y | x"}));
  add(identity_claim("Def3.1-3", "Definition 3.1, item 3", {"(x | y) | z = x | (y | z)"}));
  add(identity_claim("Def3.1-4", "Definition 3.1, item 4",
                     {"x & (y | z) = (x & y) | (x & z)"}));
  add(identity_claim("Def3.1-5", "Definition 3.1, item 5", {"~(~x) = x"}));
  add(identity_claim("Def3.1-6", "Definition 3.1, item 6", {"~1 = 0"}));
  add(identity_claim("Def3.1-7", "Definition 3.1, item 7", {"~(x | y) = ~x & ~y"}));
  add(identity_claim("Def3.1-8", "Definition 3.1, item 8", {"0 | x = x"}));
  {
    std::vector<std::string> v9, v10, v11, v12, v14;
    for (int k = 0; k <= 2; ++k) {
      v9.push_back(J(2, J(k, "x")) + " = " + J(k, "x"));
      v10.push_back(J(0, J(k, "x")) + " = ~" + J(k, "x"));
      v11.push_back(J(1, J(k, "x")) + " = 0");
      v12.push_back(J(k, "~x") + " = " + J(2 - k, "x"));
      v14.push_back(J(k, "x") + " | ~" + J(k, "x") + " = 1");
    }
    add(identity_claim("Def3.1-9", "Definition 3.1, item 9", v9));
    add(identity_claim("Def3.1-10", "Definition 3.1, item 10", v10));
    add(identity_claim("Def3.1-11", "Definition 3.1, item 11", v11));
    add(identity_claim("Def3.1-12", "Definition 3.1, item 12", v12));
    std::vector<std::string> v13;
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j)
        for (int k = 0; k <= 2; ++k)
          if (i != j && j != k && i != k)
            v13.push_back(J(i, "x") + " = ~(" + J(j, "x") + " | " + J(k, "x") + ")");
    add(identity_claim("Def3.1-13", "Definition 3.1, item 13", v13));
    add(identity_claim("Def3.1-14", "Definition 3.1, item 14", v14));
  }
  {
    std::vector<std::string> one_var, two_var;
    for (int i = 0; i <= 2; ++i)
      for (int k = 0; k <= 2; ++k) {
        one_var.push_back("(" + J(i, "x") + " | " + J(k, "x") + ") & " + J(i, "x") + " = " +
                          J(i, "x"));
        two_var.push_back("(" + J(i, "x") + " | " + J(k, "y") + ") & " + J(i, "x") + " = " +
                          J(i, "x"));
      }
    Claim a = identity_claim("Def3.1-15a", "Definition 3.1, item 15 (one-variable form)", one_var);
    Claim b = identity_claim("Def3.1-15b", "Definition 3.1, item 15 (two-variable form, as in A15)",
                             two_var);
    b.note = "the axiom list states this with two distinct metavariables";
    add(std::move(a));
    add(std::move(b));
  }
  add(identity_claim("Def3.1-16", "Definition 3.1, item 16",
                     {"x | J1(x) = x", "x | J2(x) = x"}));
  add(identity_claim("Def3.1-17", "Definition 3.1, item 17", {"J0(x | y) = J0 x & J0 y"}));
  add(identity_claim("Def3.1-18", "Definition 3.1, item 18",
                     {"J2(x | y) = (J2 x & J2 y) | (J2 x & J2(~y)) | (J2(~x) & J2 y)"}));
  add(quasi_claim("Def3.1-19", "Definition 3.1, item 19",
                  {"J0 x = J0 y, J1 x = J1 y, J2 x = J2 y => x = y"}));

  // ----- the reduced quasi-equational basis (13 items)
  {
    const std::vector<std::string> items = {
        "x | x = x",
        "x | y = y | x",
        "(x | y) | z = x | (y | z)",
        "x & (y | z) = (x & y) | (x & z)",
        "~(~x) = x",
        "~1 = 0",
        "~(x | y) = ~x & ~y",
        "0 | x = x",
        "J0(J2 x) = ~J2 x",
        "J2 x = ~(J0 x | J1 x)",
        "J2 x | ~J2 x = 1",
        "J2(x | y) = (J2 x & J2 y) | (J2 x & J2(~y)) | (J2(~x) & J2 y)",
        "J0 x = J0 y, J2 x = J2 y => x = y",
    };
    for (std::size_t i = 0; i < items.size(); ++i) {
      std::string id = "Thm3.3-" + std::to_string(i + 1);
      std::string loc = "Theorem 3.3, item " + std::to_string(i + 1);
      if (i + 1 == 13) add(quasi_claim(id, loc, {items[i]}));
      else add(identity_claim(id, loc, {items[i]}));
    }
  }

  // ----- behaviour of the J operations over the Plonka decomposition
  add(quasi_claim("L3.6-1", "Lemma 3.6, item 1", {"x & 0 = 0 => J1 x = 0"}));
  add(quasi_claim("L3.6-2", "Lemma 3.6, item 2", {"x & 0 = 0 => J2 x = x"}));
  add(quasi_claim("L3.6-3", "Lemma 3.6, item 3", {"x & 0 = 0 => J0 x = ~x"}));
  add(quasi_claim("L3.7-1", "Lemma 3.7, item 1",
                  {"x & (x | y) = x, y & (y | x) = y => J1 x = J1 y"}));
  add(quasi_claim("L3.7-2", "Lemma 3.7, item 2", {"x & 0 = 0 => J1 x = 0"}));
  add(quasi_claim("L3.7-3", "Lemma 3.7, item 3", {"x = ~x => J1 x = 1"}));
  add(identity_claim("L3.7-4", "Lemma 3.7, item 4", {"J1 x & (J1 x | x) = x & ~x"}));
  add(property_claim("L3.8-1", "Lemma 3.8, item 1", "decomposition-homs-surjective"));
  add(property_claim("L3.8-2", "Lemma 3.8, item 2", "decomposition-bottom-noninjective"));
  add(identity_claim("L3.8-3", "Lemma 3.8, item 3",
                     {"J2 x & (J2 x | x) = x", "J0 x & (J0 x | x) = ~x"}));
  add(quasi_claim("L3.8-4", "Lemma 3.8, item 4",
                  {"x & (x | y) = x, y & (y | x) = y => J2(x | y) = J2 x | J2 y"}));
  add(property_claim("P3.10", "Proposition 3.10", "interval-isomorphism"));
  add(quasi_claim(
      "L3.12-1", "Lemma 3.12, item 1",
      {"(x | ~x) | (y | ~y) = y | ~y => J2(y | ~y) | J2(x | ~x) = J2(x | ~x)",
       "J2(x | ~x) = J2(y | ~y) => x | ~x = y | ~y"}));
  add(identity_claim("L3.12-2", "Lemma 3.12, item 2", {"J2(x & (x | y)) | J2 x = J2 x"}));

  // ----- the appendix arithmetic (Lemma A.1: 9 items, Lemma A.2: 14 items)
  add(identity_claim("A.1-1", "Lemma A.1, item 1", {"1 & x = x"}));
  {
    std::vector<std::string> v2, v3, v5, v6, v8;
    for (int k = 0; k <= 2; ++k) {
      v2.push_back(J(k, "x") + " | ~" + J(k, "x") + " = 1");
      v3.push_back(J(k, "x") + " & ~" + J(k, "x") + " = 0");
      v5.push_back(J(2, J(k, "x")) + " = " + J(k, "x"));
      v6.push_back(J(0, J(k, "x")) + " = ~" + J(k, "x"));
      v8.push_back(J(k, "x") + " | ~" + J(k, "x") + " = 1");
    }
    add(identity_claim("A.1-2", "Lemma A.1, item 2", v2));
    add(identity_claim("A.1-3", "Lemma A.1, item 3", v3));
    add(identity_claim("A.1-4", "Lemma A.1, item 4", {"J2(x | ~x) = J2 x | J2(~x)"}));
    add(identity_claim("A.1-5", "Lemma A.1, item 5", v5));
    add(identity_claim("A.1-6", "Lemma A.1, item 6", v6));
    std::vector<std::string> v7;
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j)
        for (int k = 0; k <= 2; ++k)
          if (i != j && j != k && i != k)
            v7.push_back(J(i, "x") + " = ~(" + J(j, "x") + " | " + J(k, "x") + ")");
    add(identity_claim("A.1-7", "Lemma A.1, item 7", v7));
    add(identity_claim("A.1-8", "Lemma A.1, item 8 (restates item 2)", v8));
    std::vector<std::string> v9;
    for (int i = 0; i <= 2; ++i)
      for (int k = 0; k <= 2; ++k)
        v9.push_back("(" + J(i, "x") + " | " + J(k, "x") + ") & " + J(i, "x") + " = " +
                     J(i, "x"));
    add(identity_claim("A.1-9", "Lemma A.1, item 9", v9));
  }
  add(identity_claim("A.2-1", "Lemma A.2, item 1",
                     {"J2 1 = 1", "J0 0 = 1", "J2 0 = 0", "J0 1 = 0"}));
  {
    Claim stated = identity_claim("A.2-2-stated", "Lemma A.2, item 2 (as stated)",
                                  {"J2 x | J2 x = J2(1 | x)"});
    stated.expectation = Claim::Expectation::FailsNontrivial;
    stated.note = "erratum candidate: the stated identity fails; the proof computes J2 x | J0 x";
    add(std::move(stated));
    Claim proof = identity_claim("A.2-2-proof", "Lemma A.2, item 2 (as computed in the proof)",
                                 {"J2 x | J0 x = J2(1 | x)"});
    proof.note = "erratum candidate companion: the proof-text variant holds";
    add(std::move(proof));
  }
  add(identity_claim("A.2-3", "Lemma A.2, item 3", {"J2(1 | x) = J2(1 | ~x)"}));
  add(identity_claim("A.2-4", "Lemma A.2, item 4", {"J2(1 | x) = J2(1 | (0 & x))"}));
  {
    std::vector<std::string> v5;
    for (int i = 0; i <= 2; ++i)
      for (int k = 0; k <= 2; ++k)
        if (i != k) v5.push_back(J(i, "x") + " | ~" + J(k, "x") + " = ~" + J(k, "x"));
    add(identity_claim("A.2-5", "Lemma A.2, item 5", v5));
  }
  add(identity_claim("A.2-6", "Lemma A.2, item 6", {"J2(x & 0) = 0"}));
  add(identity_claim("A.2-7", "Lemma A.2, item 7",
                     {"J2(1 | (x & y)) = J2(1 | x) & J2(1 | y)"}));
  add(identity_claim("A.2-8", "Lemma A.2, item 8", {"J1(x & y) = J1 x | J1 y"}));
  add(identity_claim("A.2-9", "Lemma A.2, item 9",
                     {"J0(x & y) = (J2 x & J0 y) | (J0 x & ~J1 y)"}));
  add(identity_claim("A.2-10", "Lemma A.2, item 10",
                     {"J2(x & y) = ~(J2 x & J0 y) & J2 x & ~J1 y"}));
  add(identity_claim("A.2-11", "Lemma A.2, item 11", {"J2(x & y) = J2 x & J2 y"}));
  add(identity_claim("A.2-12", "Lemma A.2, item 12", {"J0(x | y) = J0 x & J0 y"}));
  add(identity_claim("A.2-13", "Lemma A.2, item 13", {"x | J1(x) = x", "x | J2(x) = x"}));
  add(quasi_claim("A.2-14", "Lemma A.2, item 14",
                  {"J0 x = J0 y, J1 x = J1 y, J2 x = J2 y => x = y"}));

  // ----- the involutive bisemilattice identities
  add(identity_claim("I1", "IBSL identity I1", {"x | x = x"}));
  add(identity_claim("I2", "IBSL identity I2", {"x | y = y | x"}));
  add(identity_claim("I3", "IBSL identity I3", {"x | (y | z) = (x | y) | z"}));
  add(identity_claim("I4", "IBSL identity I4", {"~~x = x"}));
  add(identity_claim("I5", "IBSL identity I5", {"x & y = ~(~x | ~y)"}));
  add(identity_claim("I6", "IBSL identity I6", {"x & (~x | y) = x & y"}));
  add(identity_claim("I7", "IBSL identity I7", {"0 | x = x"}));
  add(identity_claim("I8", "IBSL identity I8", {"1 = ~0"}));

  // ----- the separating quasi-identity and rule, and cross-checks
  add(property_claim("NF", "quasi-identity (NF): J1 x = 1 => y = 1", "nf"));
  add(property_claim("EFJ", "rule (EFJ): J1 x |- y", "efj"));
  add(property_claim("NBCA-generator", "the NBCA generator: B4+B2 is isomorphic to WK^e x B2",
                     "nbca-generator-iso"));
  add(property_claim("VarEq-bounded",
                     "the two matrices have the same theorems (bounded check)",
                     "variety-agreement"));
  add(property_claim("RCEP-cex",
                     "relative congruence extension fails for NBCA",
                     "congruence-extension"));
  return claims;
}

const QuasiIdentity& nf_quasi_identity() {
  static const QuasiIdentity q = parse_quasi_identity("J1 x = 1 => y = 1");
  return q;
}

const Rule& efj_rule() {
  static const Rule r = parse_rule("J1 x |- y");
  return r;
}

std::string render_valuation(const FiniteAlgebra& a, const Valuation& v) {
  std::string s;
  for (const auto& [var, e] : v) s += (s.empty() ? "" : " ") + var + "=" + a.label(e);
  return s;
}

// Property checks run once per scope algebra; the global ones (marked
// WkeOnly in the claim table) run on WK^e alone.
std::pair<bool, std::string> run_property(const std::string& key, const FiniteAlgebra& a) {
  if (key == "decomposition-homs-surjective") {
    PlonkaDecomposition d = decompose(a);
    for (const auto& [pair, h] : d.system.homs)
      if (!is_surjective(h, d.system.fibers[pair.second].size()))
        return {false, "hom " + std::to_string(pair.first) + "->" + std::to_string(pair.second) +
                           " not surjective"};
    return {true, std::to_string(d.system.homs.size()) + " homomorphisms surjective"};
  }
  if (key == "decomposition-bottom-noninjective") {
    PlonkaDecomposition d = decompose(a);
    for (int i = 0; i < d.system.count(); ++i) {
      if (i == d.system.bottom) continue;
      if (is_injective(d.system.homs.at({d.system.bottom, i})))
        return {false, "p_{i0 " + d.system.index_labels[i] + "} injective"};
    }
    return {true, "checked " + std::to_string(d.system.count() - 1) + " maps"};
  }
  if (key == "interval-isomorphism") {
    PlonkaDecomposition d = decompose(a);
    ConditionReport report = verify_decomposition_conditions(d);
    if (!report.all_ok()) {
      std::string msg;
      for (const auto& f : report.failures()) msg += (msg.empty() ? "" : "; ") + f;
      return {false, msg};
    }
    return {true, std::to_string(report.items.size()) + " conditions verified"};
  }
  if (key == "nf") {
    CheckResult r = holds_quasi_identity(a, nf_quasi_identity());
    bool expected_holds = a.is_trivial() || !has_fixpoint(a).has_value();
    if (r.holds != expected_holds)
      return {false, std::string("(NF) ") + (r.holds ? "holds" : "fails") +
                         " but the decomposition " +
                         (has_fixpoint(a) ? "has a trivial fiber" : "lacks trivial fibers")};
    if (a.name == "wke") {
      if (r.holds) return {false, "(NF) unexpectedly holds in WK^e"};
      std::string cex = render_valuation(a, r.counterexample);
      if (cex != "x=H y=0") return {false, "unexpected counterexample " + cex};
      return {true, "fails with counterexample " + cex};
    }
    if (a.name == "b4+b2") {
      PassivityResult p = witness_passivity(nf_quasi_identity(), a);
      if (!p.witnessed) return {false, "passivity not witnessed by B4+B2"};
      return {true, "holds; passivity witnessed (J1 never reaches 1)"};
    }
    return {true, r.holds ? (a.is_trivial() ? "holds (trivial algebra)" : "holds (no trivial fiber)")
                          : "fails (trivial fiber present)"};
  }
  if (key == "efj") {
    LogicalMatrix m;
    m.algebra = a;
    m.designated = {a.one};
    CheckResult r = rule_derivable(m, efj_rule());
    bool expected = a.is_trivial() || !has_fixpoint(a).has_value();
    if (r.holds != expected)
      return {false, std::string("(EFJ) ") + (r.holds ? "derivable" : "not derivable") +
                         ", contrary to the fixpoint structure"};
    if (a.name == "b4+b2" && !witness_passivity(efj_rule(), a).witnessed)
      return {false, "passivity of (EFJ) not witnessed by B4+B2"};
    return {true, r.holds ? "derivable (premise never designated)"
                          : "not derivable, counterexample " +
                                render_valuation(a, r.counterexample)};
  }
  if (key == "nbca-generator-iso") {
    FiniteAlgebra prod = direct_product(builtin_algebra("wke"), builtin_algebra("b2"));
    auto iso = find_isomorphism(builtin_algebra("b4+b2"), prod);
    if (!iso) return {false, "no isomorphism B4+B2 -> WK^e x B2"};
    return {true, "explicit isomorphism found"};
  }
  if (key == "variety-agreement") {
    AgreementReport r = theoremhood_agreement(2, 2);
    if (!r.discrepancies.empty())
      return {false, std::to_string(r.discrepancies.size()) + " discrepancies, first: " +
                         r.discrepancies.front().representative};
    return {true, std::to_string(r.classes) + " term classes agree (depth 2, 2 variables)"};
  }
  if (key == "congruence-extension") {
    CongruenceExtensionReport r = congruence_extension_counterexample();
    if (!r.quotient_is_b2) return {false, "B4/theta is not B2"};
    if (!r.scan_cross_checked) return {false, "congruence scans disagree"};
    if (r.proper_containing_pair != 0)
      return {false, std::to_string(r.proper_containing_pair) +
                         " proper NBCA-congruences contain (~a, 1)"};
    return {true, "theta blocks " + r.theta_blocks[0] + " " + r.theta_blocks[1] +
                      "; no proper NBCA-congruence of B4+B2 contains (~a, 1)"};
  }
  return {false, "unknown property '" + key + "'"};
}

bool claim_runs_once(const Claim& c) {
  return c.property == "nbca-generator-iso" || c.property == "variety-agreement" ||
         c.property == "congruence-extension";
}

}  // namespace

const std::vector<Claim>& corpus_claims() {
  static const std::vector<Claim> claims = build_claims();
  return claims;
}

CorpusReport run_corpus(int size_cap) {
  CorpusReport report;
  std::vector<FiniteAlgebra> scope;
  scope.push_back(builtin_algebra("wke"));
  for (FiniteAlgebra& a : enumerate_bca(size_cap))
    if (a.name != "wke") scope.push_back(std::move(a));

  for (const Claim& claim : corpus_claims()) {
    ++report.claims;
    std::vector<const FiniteAlgebra*> algebras;
    if (claim.scope == Claim::Scope::WkeOnly || claim_runs_once(claim))
      algebras.push_back(&scope.front());
    else
      for (const FiniteAlgebra& a : scope) algebras.push_back(&a);

    for (const FiniteAlgebra* a : algebras) {
      ClaimOutcome outcome;
      outcome.id = claim.id;
      outcome.location = claim.location;
      outcome.algebra = a->name;
      outcome.note = claim.note;
      if (claim.kind == Claim::Kind::Property) {
        auto [ok, detail] = run_property(claim.property, *a);
        outcome.holds = ok;
        outcome.as_expected = ok;
        outcome.detail = detail;
      } else {
        bool all_hold = true;
        std::string detail;
        for (const QuasiIdentity& q : claim.instances) {
          CheckResult r = holds_quasi_identity(*a, q);
          if (!r.holds) {
            all_hold = false;
            detail = render_quasi_identity(q) + " fails at " +
                     render_valuation(*a, r.counterexample);
            break;
          }
        }
        bool expected_holds = claim.expectation == Claim::Expectation::Holds || a->is_trivial();
        outcome.holds = all_hold;
        outcome.as_expected = all_hold == expected_holds;
        outcome.detail = all_hold ? "" : detail;
      }
      if (!outcome.as_expected) ++report.mismatches;
      report.outcomes.push_back(std::move(outcome));
    }
  }
  return report;
}

BasisAgreementReport basis_equivalence_check(int max_size, int mutants, unsigned seed) {
  BasisAgreementReport report;
  std::vector<FiniteAlgebra> algebras = enumerate_bca(max_size);
  const FiniteAlgebra& wke = builtin_algebra("wke");

  auto check = [&](const FiniteAlgebra& a, const std::string& description) {
    bool m1 = def31_membership(a).member;
    bool m2 = thm33_membership(a).member;
    bool m3 = separates_into(a, wke).separates;
    if (m1 != m2 || m2 != m3) {
      std::ostringstream msg;
      msg << description << ": def31=" << m1 << " reduced=" << m2 << " separation=" << m3;
      report.disagreements.push_back(msg.str());
    }
  };

  for (const FiniteAlgebra& a : algebras) {
    check(a, a.name);
    ++report.algebras;
  }

  std::mt19937 rng(seed);
  int made = 0;
  while (made < mutants) {
    const FiniteAlgebra& base = algebras[rng() % algebras.size()];
    if (base.size() < 2) continue;
    FiniteAlgebra m = base;
    const int n = m.size();
    std::vector<std::vector<int>*> tables = {&m.neg_table, &m.j0_table, &m.j1_table,
                                             &m.j2_table, &m.or_table, &m.and_table};
    static const char* table_names[] = {"neg", "J0", "J1", "J2", "or", "and"};
    int t = rng() % tables.size();
    int cell = rng() % tables[t]->size();
    int old = (*tables[t])[cell];
    int replacement = (old + 1 + rng() % (n - 1)) % n;
    (*tables[t])[cell] = replacement;
    std::ostringstream desc;
    desc << base.name << " with " << table_names[t] << "[" << cell << "] " << m.label(old)
         << "->" << m.label(replacement);
    check(m, desc.str());
    ++made;
  }
  report.mutants = made;
  return report;
}

}  // namespace bochvar
