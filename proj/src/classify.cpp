#include "bochvar/classify.hpp"

#include <algorithm>

#include "bochvar/plonka.hpp"

namespace bochvar {

std::string to_string(AlgebraClass c) {
  switch (c) {
    case AlgebraClass::NotBCA: return "NotBCA";
    case AlgebraClass::Trivial: return "Trivial";
    case AlgebraClass::JBA: return "JBA";
    case AlgebraClass::NBCA_proper: return "NBCA_proper";
    case AlgebraClass::BCA_proper: return "BCA_proper";
  }
  return "?";
}

namespace {

std::vector<QuasiIdentity> parse_all(const std::vector<std::string>& texts) {
  std::vector<QuasiIdentity> out;
  for (const auto& t : texts) out.push_back(parse_quasi_identity(t));
  return out;
}

}  // namespace

const std::vector<QuasiIdentity>& def31_basis() {
  static const std::vector<QuasiIdentity> basis = [] {
    std::vector<std::string> texts = {
        "x | x = x",
        "x | y = y | x",
        "(x | y) | z = x | (y | z)",
        "x & (y | z) = (x & y) | (x & z)",
        "~(~x) = x",
        "~1 = 0",
        "~(x | y) = ~x & ~y",
        "0 | x = x",
    };
    for (int k = 0; k <= 2; ++k)
      texts.push_back("J2(J" + std::to_string(k) + " x) = J" + std::to_string(k) + " x");
    for (int k = 0; k <= 2; ++k)
      texts.push_back("J0(J" + std::to_string(k) + " x) = ~J" + std::to_string(k) + " x");
    for (int k = 0; k <= 2; ++k)
      texts.push_back("J1(J" + std::to_string(k) + " x) = 0");
    for (int k = 0; k <= 2; ++k)
      texts.push_back("J" + std::to_string(k) + "(~x) = J" + std::to_string(2 - k) + " x");
    std::vector<QuasiIdentity> out = parse_all(texts);
    auto add_all = [&](const std::vector<std::string>& more) {
      for (const auto& q : parse_all(more)) out.push_back(q);
    };
    {
      std::vector<std::string> item13;
      for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j)
          for (int k = 0; k <= 2; ++k)
            if (i != j && j != k && i != k)
              item13.push_back("J" + std::to_string(i) + " x = ~(J" + std::to_string(j) +
                               " x | J" + std::to_string(k) + " x)");
      add_all(item13);
    }
    for (int k = 0; k <= 2; ++k)
      out.push_back(parse_quasi_identity("J" + std::to_string(k) + " x | ~J" + std::to_string(k) +
                                         " x = 1"));
    // item 15, one-variable and two-variable readings
    {
      std::vector<std::string> both;
      for (int i = 0; i <= 2; ++i)
        for (int k = 0; k <= 2; ++k) {
          both.push_back("(J" + std::to_string(i) + " x | J" + std::to_string(k) + " x) & J" +
                         std::to_string(i) + " x = J" + std::to_string(i) + " x");
          both.push_back("(J" + std::to_string(i) + " x | J" + std::to_string(k) + " y) & J" +
                         std::to_string(i) + " x = J" + std::to_string(i) + " x");
        }
      add_all(both);
    }
    for (int k : {1, 2})
      out.push_back(parse_quasi_identity("x | J" + std::to_string(k) + " x = x"));
    add_all({
        "J0(x | y) = J0 x & J0 y",
        "J2(x | y) = (J2 x & J2 y) | (J2 x & J2(~y)) | (J2(~x) & J2 y)",
        "J0 x = J0 y, J1 x = J1 y, J2 x = J2 y => x = y",
    });
    return out;
  }();
  return basis;
}

const std::vector<QuasiIdentity>& thm33_basis() {
  static const std::vector<QuasiIdentity> basis = parse_all({
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
  });
  return basis;
}

namespace {

BasisCheck run_basis(const FiniteAlgebra& a, const std::vector<QuasiIdentity>& basis) {
  BasisCheck check;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    CheckResult r = holds_quasi_identity(a, basis[i]);
    if (!r.holds) {
      check.member = false;
      check.failed_item = static_cast<int>(i) + 1;
      check.failure = std::move(r);
      return check;
    }
  }
  return check;
}

const QuasiIdentity& absorption_identity() {
  static const QuasiIdentity q = parse_quasi_identity("x & (x | y) = x");
  return q;
}

}  // namespace

BasisCheck def31_membership(const FiniteAlgebra& a) { return run_basis(a, def31_basis()); }

BasisCheck thm33_membership(const FiniteAlgebra& a) {
  BasisCheck check = run_basis(a, thm33_basis());
  if (!check.member) return check;
  // the reduced basis constrains only the J2 fragment; the J0/J1 tables
  // must be the derived operations for the full algebra to be a member
  for (int x = 0; x < a.size(); ++x) {
    bool ok = a.j(0, x) == a.j(2, a.neg(x)) &&
              a.j(1, x) == a.neg(a.join(a.j(2, x), a.j(2, a.neg(x))));
    if (!ok) {
      check.member = false;
      check.failed_item = 0;
      check.failure.holds = false;
      check.failure.counterexample["x"] = x;
      return check;
    }
  }
  return check;
}

std::optional<int> has_fixpoint(const FiniteAlgebra& a) {
  std::optional<int> fix;
  for (int x = 0; x < a.size(); ++x)
    if (a.neg(x) == x) {
      if (fix) throw algebra_error("'" + a.name + "' has two negation fixpoints");
      fix = x;
    }
  return fix;
}

Classification classify(const FiniteAlgebra& a) {
  Classification c;
  BasisCheck basis = thm33_membership(a);
  SeparationResult sep = separates_into(a, builtin_algebra("wke"));
  c.basis_membership = basis.member;
  c.separation_membership = sep.separates;
  if (basis.member != sep.separates)
    throw std::logic_error("membership tests disagree on '" + a.name +
                           "': basis=" + std::to_string(basis.member) +
                           " separation=" + std::to_string(sep.separates));
  if (!basis.member) {
    c.verdict = AlgebraClass::NotBCA;
    if (basis.failed_item > 0) {
      c.reason = "fails basis item " + std::to_string(basis.failed_item) + " (" +
                 render_quasi_identity(thm33_basis()[basis.failed_item - 1]) + ")";
      if (!basis.failure.counterexample.empty()) {
        c.reason += " at";
        for (const auto& [v, e] : basis.failure.counterexample)
          c.reason += " " + v + "=" + a.label(e);
      }
    } else {
      c.reason = "J0/J1 tables do not agree with their J2-derived definitions";
    }
    return c;
  }
  if (a.is_trivial()) {
    c.verdict = AlgebraClass::Trivial;
    return c;
  }
  std::optional<int> fix = has_fixpoint(a);
  if (fix) {
    // WK^e embeds through the fixpoint: 0 -> 0, 1 -> 1, H -> the fixpoint
    const FiniteAlgebra& wke = builtin_algebra("wke");
    HomMap h(3, -1);
    h[wke.zero] = a.zero;
    h[wke.one] = a.one;
    h[wke.index_of("H")] = *fix;
    if (!is_homomorphism(wke, a, h) || !is_injective(h))
      throw std::logic_error("fixpoint embedding of WK^e failed on '" + a.name + "'");
    c.verdict = AlgebraClass::BCA_proper;
    c.witness_source = "wke";
    c.witness = std::move(h);
    return c;
  }
  if (holds_quasi_identity(a, absorption_identity()).holds) {
    c.verdict = AlgebraClass::JBA;
    return c;
  }
  // fixpoint-free and at least two fibers: B4+B2 embeds through J2(1_i)
  PlonkaDecomposition d = decompose(a);
  const SemilatticeDirectSystem& s = d.system;
  int upper = -1;
  for (int i = 0; i < s.count(); ++i)
    if (i != s.bottom) {
      upper = i;
      break;
    }
  if (upper < 0) throw std::logic_error("non-absorptive algebra with a single fiber");
  std::vector<std::vector<int>> members(s.count());
  for (int x = 0; x < a.size(); ++x) members[d.fiber_of[x].first].push_back(x);
  auto global = [&](int index, int local) {
    for (int x : members[index])
      if (d.fiber_of[x].second == local) return x;
    return -1;
  };
  int one_i = global(upper, s.fibers[upper].one);
  int zero_i = global(upper, s.fibers[upper].zero);
  int ai = a.j(2, one_i);
  const FiniteAlgebra& b4b2 = builtin_algebra("b4+b2");
  HomMap h(b4b2.size(), -1);
  h[b4b2.index_of("0")] = a.zero;
  h[b4b2.index_of("1")] = a.one;
  h[b4b2.index_of("a")] = ai;
  h[b4b2.index_of("na")] = a.neg(ai);
  h[b4b2.index_of("top")] = one_i;
  h[b4b2.index_of("bot")] = zero_i;
  if (!is_homomorphism(b4b2, a, h) || !is_injective(h))
    throw std::logic_error("B4+B2 embedding failed on '" + a.name + "'");
  c.verdict = AlgebraClass::NBCA_proper;
  c.witness_source = "b4+b2";
  c.witness = std::move(h);
  return c;
}

Retraction build_retraction(const FiniteAlgebra& a) {
  Classification c = classify(a);
  if (c.verdict == AlgebraClass::NotBCA)
    throw algebra_error("'" + a.name + "' is not a Bochvar algebra: " + c.reason);
  if (c.verdict == AlgebraClass::Trivial || has_fixpoint(a))
    throw algebra_error("fixpoint present: '" + a.name + "' has no homomorphism onto B2");

  PlonkaDecomposition d = decompose(a);
  const SemilatticeDirectSystem& s = d.system;
  const FiniteAlgebra& bot = s.fibers[s.bottom];
  int top_index = s.bottom;
  for (int i = 0; i < s.count(); ++i) top_index = s.joined(top_index, i);
  int a_top = d.designated[top_index];
  // least atom of the bottom fiber below a_top
  int atom = -1;
  for (int x = 0; x < bot.size(); ++x) {
    if (x == bot.zero || !bot.leq(x, a_top)) continue;
    bool is_atom = true;
    for (int y = 0; y < bot.size(); ++y)
      if (y != bot.zero && y != x && bot.leq(y, x)) is_atom = false;
    if (is_atom) {
      atom = x;
      break;
    }
  }
  if (atom < 0) throw std::logic_error("no atom below the top designated element");

  const FiniteAlgebra& b2 = builtin_algebra("b2");
  Retraction ret;
  ret.r.assign(a.size(), -1);
  for (int x = 0; x < a.size(); ++x) {
    auto [i, lx] = d.fiber_of[x];
    int threshold = s.push(s.bottom, i, atom);
    ret.r[x] = s.fibers[i].leq(threshold, lx) ? b2.one : b2.zero;
  }
  ret.iota.assign(2, -1);
  ret.iota[b2.zero] = a.zero;
  ret.iota[b2.one] = a.one;
  if (!is_homomorphism(a, b2, ret.r))
    throw std::logic_error("retraction of '" + a.name + "' is not a homomorphism");
  if (!is_homomorphism(b2, a, ret.iota))
    throw std::logic_error("section into '" + a.name + "' is not a homomorphism");
  for (int x = 0; x < 2; ++x)
    if (ret.r[ret.iota[x]] != x) throw std::logic_error("r . iota is not the identity");
  return ret;
}

}  // namespace bochvar
