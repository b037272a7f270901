#include <doctest.h>

#include <algorithm>
#include <random>

#include "bochvar/classify.hpp"
#include "bochvar/plonka.hpp"

using namespace bochvar;

TEST_CASE("classification of the built-in algebras") {
  Classification c = classify(builtin_algebra("wke"));
  CHECK(c.verdict == AlgebraClass::BCA_proper);
  CHECK(c.witness_source == "wke");
  CHECK(c.witness == HomMap{0, 1, 2});  // the identity embedding
  CHECK(c.basis_membership);
  CHECK(c.separation_membership);

  c = classify(builtin_algebra("b4+b2"));
  CHECK(c.verdict == AlgebraClass::NBCA_proper);
  CHECK(c.witness_source == "b4+b2");
  CHECK(is_injective(c.witness));

  CHECK(classify(builtin_algebra("b4")).verdict == AlgebraClass::JBA);
  CHECK(classify(builtin_algebra("b2")).verdict == AlgebraClass::JBA);
}

TEST_CASE("the trivial algebra sits outside the chain") {
  FiniteAlgebra t;
  t.name = "t";
  t.elements = {"e"};
  t.zero = t.one = 0;
  t.neg_table = t.j0_table = t.j1_table = t.j2_table = {0};
  t.or_table = t.and_table = {0};
  t.finalize();
  CHECK(classify(t).verdict == AlgebraClass::Trivial);
}

TEST_CASE("mutated tables are rejected by both membership tests") {
  FiniteAlgebra broken = builtin_algebra("wke");
  broken.j1_table[broken.index_of("H")] = broken.zero;  // J1(H) := 0
  CHECK_FALSE(def31_membership(broken).member);
  CHECK_FALSE(thm33_membership(broken).member);
  CHECK_FALSE(separates_into(broken, builtin_algebra("wke")).separates);
  Classification c = classify(broken);
  CHECK(c.verdict == AlgebraClass::NotBCA);
  CHECK_FALSE(c.reason.empty());
}

TEST_CASE("fixpoints") {
  CHECK(has_fixpoint(builtin_algebra("wke")) ==
        std::optional<int>{builtin_algebra("wke").index_of("H")});
  CHECK_FALSE(has_fixpoint(builtin_algebra("b4+b2")).has_value());
  FiniteAlgebra t;
  t.name = "t";
  t.elements = {"e"};
  t.zero = t.one = 0;
  t.neg_table = t.j0_table = t.j1_table = t.j2_table = {0};
  t.or_table = t.and_table = {0};
  t.finalize();
  CHECK(has_fixpoint(t) == std::optional<int>{0});
}

TEST_CASE("classification is isomorphism invariant") {
  std::mt19937 rng(41);
  for (const char* name : {"wke", "b4", "b4+b2"}) {
    const FiniteAlgebra& a = builtin_algebra(name);
    // permuted copy
    std::vector<int> perm(a.size());
    for (int i = 0; i < a.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> inv(a.size());
    for (int i = 0; i < a.size(); ++i) inv[perm[i]] = i;
    FiniteAlgebra p;
    p.name = std::string(name) + "_perm";
    p.signature = a.signature;
    p.elements.resize(a.size());
    for (int i = 0; i < a.size(); ++i) p.elements[perm[i]] = a.label(i);
    p.zero = perm[a.zero];
    p.one = perm[a.one];
    auto unary = [&](const std::vector<int>& t) {
      std::vector<int> out(a.size());
      for (int i = 0; i < a.size(); ++i) out[perm[i]] = perm[t[i]];
      return out;
    };
    p.neg_table = unary(a.neg_table);
    p.j0_table = unary(a.j0_table);
    p.j1_table = unary(a.j1_table);
    p.j2_table = unary(a.j2_table);
    p.or_table.resize(a.size() * a.size());
    p.and_table.resize(a.size() * a.size());
    for (int x = 0; x < a.size(); ++x)
      for (int y = 0; y < a.size(); ++y) {
        p.or_table[perm[x] * a.size() + perm[y]] = perm[a.join(x, y)];
        p.and_table[perm[x] * a.size() + perm[y]] = perm[a.meet(x, y)];
      }
    p.finalize();
    CHECK(classify(p).verdict == classify(a).verdict);
  }
}

TEST_CASE("every enumerated algebra classifies with a verified witness") {
  for (const FiniteAlgebra& a : enumerate_bca(8)) {
    Classification c = classify(a);
    CHECK(c.verdict != AlgebraClass::NotBCA);
    if (c.verdict == AlgebraClass::BCA_proper) {
      CHECK(c.witness_source == "wke");
      CHECK(is_homomorphism(builtin_algebra("wke"), a, c.witness));
      CHECK(is_injective(c.witness));
    }
    if (c.verdict == AlgebraClass::NBCA_proper) {
      CHECK(c.witness_source == "b4+b2");
      CHECK(is_homomorphism(builtin_algebra("b4+b2"), a, c.witness));
      CHECK(is_injective(c.witness));
    }
    // (NF) holds exactly on the fixpoint-free members
    bool nf = holds_quasi_identity(a, parse_quasi_identity("J1 x = 1 => y = 1")).holds;
    CHECK(nf == (a.is_trivial() || !has_fixpoint(a).has_value()));
  }
}

TEST_CASE("retraction onto B2") {
  Retraction id = build_retraction(builtin_algebra("b2"));
  CHECK(id.r == HomMap{0, 1});
  CHECK(id.iota == HomMap{0, 1});

  const FiniteAlgebra& b4b2 = builtin_algebra("b4+b2");
  Retraction r = build_retraction(b4b2);
  const FiniteAlgebra& b2 = builtin_algebra("b2");
  CHECK(r.r[b4b2.index_of("a")] == b2.one);
  CHECK(r.r[b4b2.index_of("1")] == b2.one);
  CHECK(r.r[b4b2.index_of("top")] == b2.one);
  CHECK(r.r[b4b2.index_of("0")] == b2.zero);
  CHECK(r.r[b4b2.index_of("na")] == b2.zero);
  CHECK(r.r[b4b2.index_of("bot")] == b2.zero);

  CHECK_THROWS_WITH_AS(build_retraction(builtin_algebra("wke")),
                       doctest::Contains("fixpoint"), algebra_error);
}

TEST_CASE("retraction succeeds exactly on the fixpoint-free members") {
  for (const FiniteAlgebra& a : enumerate_bca(8)) {
    bool fixpoint = a.is_trivial() || has_fixpoint(a).has_value();
    if (fixpoint) {
      CHECK_THROWS_AS(build_retraction(a), algebra_error);
      continue;
    }
    Retraction r = build_retraction(a);
    const FiniteAlgebra& b2 = builtin_algebra("b2");
    CHECK(is_homomorphism(a, b2, r.r));
    CHECK(is_homomorphism(b2, a, r.iota));
    for (int x = 0; x < 2; ++x) CHECK(r.r[r.iota[x]] == x);
  }
}
