#include "bochvar/amalgam.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bochvar {

void VFormation::validate() const {
  if (static_cast<int>(i.size()) != A.size() || static_cast<int>(j.size()) != A.size())
    throw algebra_error("V-formation maps must be defined on all of A");
  if (!is_homomorphism(A, B, i) || !is_injective(i))
    throw algebra_error("i: A -> B is not an embedding");
  if (!is_homomorphism(A, C, j) || !is_injective(j))
    throw algebra_error("j: A -> C is not an embedding");
}

std::string to_string(QuasivarietyClass c) {
  return c == QuasivarietyClass::BCA ? "bca" : "nbca";
}

bool member_of(const Classification& c, QuasivarietyClass cls) {
  switch (c.verdict) {
    case AlgebraClass::NotBCA: return false;
    case AlgebraClass::BCA_proper: return cls == QuasivarietyClass::BCA;
    case AlgebraClass::Trivial:
    case AlgebraClass::JBA:
    case AlgebraClass::NBCA_proper: return true;
  }
  return false;
}

AmalgamResult amalgamate(const VFormation& v, QuasivarietyClass cls) {
  v.validate();
  for (const auto* alg : {&v.A, &v.B, &v.C}) {
    Classification c = classify(*alg);
    if (!member_of(c, cls))
      throw algebra_error("'" + alg->name + "' is not in " + to_string(cls) + " (classified " +
                          to_string(c.verdict) + ")");
  }
  const FiniteAlgebra& g =
      builtin_algebra(cls == QuasivarietyClass::BCA ? "wke" : "b4+b2");

  // compatible pairs (f: B -> G, g: C -> G) with f.i = g.j, deduplicated
  // by their joint kernel on B + C; the canonical enumeration order of the
  // pair set fixes D's element order
  std::vector<HomMap> homs_b = enumerate_homomorphisms(v.B, g);
  std::vector<HomMap> homs_c = enumerate_homomorphisms(v.C, g);
  std::vector<std::pair<const HomMap*, const HomMap*>> pairs;
  std::set<std::vector<int>> seen_kernels;
  for (const HomMap& f : homs_b)
    for (const HomMap& gc : homs_c) {
      bool commutes = true;
      for (int x = 0; x < v.A.size() && commutes; ++x)
        commutes = f[v.i[x]] == gc[v.j[x]];
      if (!commutes) continue;
      // joint kernel: which coordinates of (f(B), g(C)) coincide
      std::vector<int> joint;
      joint.reserve(f.size() + gc.size());
      joint.insert(joint.end(), f.begin(), f.end());
      joint.insert(joint.end(), gc.begin(), gc.end());
      std::map<int, int> relabel;
      for (int& x : joint) {
        auto [it, fresh] = relabel.emplace(x, static_cast<int>(relabel.size()));
        x = it->second;
      }
      if (!seen_kernels.insert(joint).second) continue;
      pairs.push_back({&f, &gc});
    }

  AmalgamResult result;
  const std::size_t p = pairs.size();
  // D is generated inside G^P by the rows of B and C
  std::map<std::vector<int>, int> element_of;
  std::vector<std::vector<int>> carrier;
  auto intern = [&](const std::vector<int>& row) {
    auto [it, fresh] = element_of.emplace(row, static_cast<int>(carrier.size()));
    if (fresh) carrier.push_back(row);
    return it->second;
  };
  result.h.resize(v.B.size());
  result.k.resize(v.C.size());
  for (int x = 0; x < v.B.size(); ++x) {
    std::vector<int> row(p);
    for (std::size_t q = 0; q < p; ++q) row[q] = (*pairs[q].first)[x];
    result.h[x] = intern(row);
  }
  for (int x = 0; x < v.C.size(); ++x) {
    std::vector<int> row(p);
    for (std::size_t q = 0; q < p; ++q) row[q] = (*pairs[q].second)[x];
    result.k[x] = intern(row);
  }
  {
    std::vector<int> row(p);
    for (std::size_t q = 0; q < p; ++q) row[q] = g.zero;
    intern(row);
    for (std::size_t q = 0; q < p; ++q) row[q] = g.one;
    intern(row);
  }
  auto apply_unary = [&](UnaryOp op, const std::vector<int>& row) {
    std::vector<int> out(p);
    for (std::size_t q = 0; q < p; ++q) out[q] = g.un(op, row[q]);
    return out;
  };
  auto apply_binary = [&](BinaryOp op, const std::vector<int>& ra, const std::vector<int>& rb) {
    std::vector<int> out(p);
    for (std::size_t q = 0; q < p; ++q) out[q] = g.bin(op, ra[q], rb[q]);
    return out;
  };
  for (std::size_t head = 0; head < carrier.size(); ++head) {
    if (carrier.size() > 4096)
      throw algebra_error("amalgam grew past the size guard (4096 elements)");
    std::vector<int> row = carrier[head];
    for (UnaryOp op : {UnaryOp::Neg, UnaryOp::J0, UnaryOp::J1, UnaryOp::J2})
      intern(apply_unary(op, row));
    for (std::size_t other = 0; other <= head; ++other) {
      for (BinaryOp op : {BinaryOp::Or, BinaryOp::And}) {
        intern(apply_binary(op, row, carrier[other]));
        intern(apply_binary(op, carrier[other], row));
      }
    }
  }

  FiniteAlgebra& d = result.D;
  d.name = "amalgam";
  d.signature = Signature::Full;
  const int n = static_cast<int>(carrier.size());
  for (int e = 0; e < n; ++e) {
    std::string label = "(";
    for (std::size_t q = 0; q < carrier[e].size(); ++q)
      label += (q ? "," : "") + g.label(carrier[e][q]);
    label += ")";
    d.elements.push_back(label);
  }
  {
    std::vector<int> row(p);
    for (std::size_t q = 0; q < p; ++q) row[q] = g.zero;
    d.zero = element_of.at(row);
    for (std::size_t q = 0; q < p; ++q) row[q] = g.one;
    d.one = element_of.at(row);
  }
  d.neg_table.resize(n);
  d.j0_table.resize(n);
  d.j1_table.resize(n);
  d.j2_table.resize(n);
  d.or_table.resize(n * n);
  d.and_table.resize(n * n);
  for (int e = 0; e < n; ++e) {
    d.neg_table[e] = element_of.at(apply_unary(UnaryOp::Neg, carrier[e]));
    d.j0_table[e] = element_of.at(apply_unary(UnaryOp::J0, carrier[e]));
    d.j1_table[e] = element_of.at(apply_unary(UnaryOp::J1, carrier[e]));
    d.j2_table[e] = element_of.at(apply_unary(UnaryOp::J2, carrier[e]));
    for (int f = 0; f < n; ++f) {
      d.or_table[e * n + f] = element_of.at(apply_binary(BinaryOp::Or, carrier[e], carrier[f]));
      d.and_table[e * n + f] = element_of.at(apply_binary(BinaryOp::And, carrier[e], carrier[f]));
    }
  }
  d.finalize();

  for (int x = 0; x < v.A.size(); ++x)
    if (result.h[v.i[x]] != result.k[v.j[x]])
      throw std::logic_error("amalgam square does not commute");
  if (!is_injective(result.h)) {
    for (int x = 0; x < v.B.size(); ++x)
      for (int y = x + 1; y < v.B.size(); ++y)
        if (result.h[x] == result.h[y]) {
          result.failure = "no compatible pair separates " + v.B.label(x) + " and " +
                           v.B.label(y) + " in B";
          return result;
        }
  }
  if (!is_injective(result.k)) {
    for (int x = 0; x < v.C.size(); ++x)
      for (int y = x + 1; y < v.C.size(); ++y)
        if (result.k[x] == result.k[y]) {
          result.failure = "no compatible pair separates " + v.C.label(x) + " and " +
                           v.C.label(y) + " in C";
          return result;
        }
  }
  result.success = true;
  return result;
}

AmalgamVerdict verify_amalgam(const VFormation& v, const FiniteAlgebra& D, const HomMap& h,
                              const HomMap& k, QuasivarietyClass cls) {
  AmalgamVerdict verdict;
  if (!is_homomorphism(v.B, D, h) || !is_homomorphism(v.C, D, k)) {
    verdict.reason = "not a homomorphism";
    return verdict;
  }
  if (!is_injective(h) || !is_injective(k)) {
    verdict.reason = "not injective";
    return verdict;
  }
  for (int x = 0; x < v.A.size(); ++x)
    if (h[v.i[x]] != k[v.j[x]]) {
      verdict.reason = "square broken at " + v.A.label(x);
      return verdict;
    }
  Classification c = classify(D);
  if (!member_of(c, cls)) {
    verdict.reason = "class violation: D classified " + to_string(c.verdict);
    return verdict;
  }
  verdict.valid = true;
  return verdict;
}

namespace {

Congruence normalize_blocks(std::vector<int> raw) {
  std::map<int, int> renumber;
  Congruence c;
  c.block_of.resize(raw.size());
  for (std::size_t x = 0; x < raw.size(); ++x) {
    auto [it, fresh] = renumber.emplace(raw[x], static_cast<int>(renumber.size()));
    c.block_of[x] = it->second;
  }
  c.blocks = static_cast<int>(renumber.size());
  return c;
}

// Congruence lattice as the join closure of the principal congruences;
// the join of two congruences is the transitive closure of their union.
// Used to cross-check the partition scan.
std::vector<Congruence> congruences_by_generation(const FiniteAlgebra& a) {
  const int n = a.size();
  std::set<std::vector<int>> seen;
  std::vector<Congruence> out;
  auto add = [&](Congruence c) {
    if (!seen.insert(c.block_of).second) return false;
    out.push_back(std::move(c));
    return true;
  };
  {
    std::vector<int> id(n);
    for (int x = 0; x < n; ++x) id[x] = x;
    add(normalize_blocks(id));
  }
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) add(principal_congruence(a, x, y));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Congruence> snapshot = out;
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        std::vector<int> parent(n);
        for (int e = 0; e < n; ++e) parent[e] = e;
        std::function<int(int)> find = [&](int e) {
          while (parent[e] != e) e = parent[e] = parent[parent[e]];
          return e;
        };
        for (int e = 0; e < n; ++e)
          for (int f = e + 1; f < n; ++f)
            if (snapshot[i].same(e, f) || snapshot[j].same(e, f)) {
              int re = find(e), rf = find(f);
              if (re != rf) parent[std::max(re, rf)] = std::min(re, rf);
            }
        std::vector<int> raw(n);
        for (int e = 0; e < n; ++e) raw[e] = find(e);
        if (add(normalize_blocks(std::move(raw)))) grew = true;
      }
  }
  return out;
}

}  // namespace

CongruenceExtensionReport congruence_extension_counterexample() {
  CongruenceExtensionReport report;
  const FiniteAlgebra& b4 = builtin_algebra("b4");
  const FiniteAlgebra& b4b2 = builtin_algebra("b4+b2");
  const FiniteAlgebra& b2 = builtin_algebra("b2");

  Congruence theta = principal_congruence(b4, b4.one, b4.index_of("na"));
  std::vector<std::string> blocks(theta.blocks);
  for (int x = 0; x < b4.size(); ++x) {
    std::string& blk = blocks[theta.block_of[x]];
    blk += (blk.empty() ? "{" : " ") + b4.label(x);
  }
  for (auto& b : blocks) report.theta_blocks.push_back(b + "}");

  Quotient q = quotient(b4, theta);
  report.quotient_is_b2 = find_isomorphism(q.algebra, b2).has_value();
  report.quotient_class = classify(q.algebra).verdict;

  std::vector<Congruence> congruences = all_congruences(b4b2);
  report.congruences = static_cast<int>(congruences.size());
  {
    std::vector<Congruence> generated = congruences_by_generation(b4b2);
    std::set<std::vector<int>> scan_set, gen_set;
    for (const auto& c : congruences) scan_set.insert(c.block_of);
    for (const auto& c : generated) gen_set.insert(c.block_of);
    report.scan_cross_checked = scan_set == gen_set;
  }
  const int na = b4b2.index_of("na"), one = b4b2.one;
  for (const Congruence& c : congruences) {
    bool relative = member_of(classify(quotient(b4b2, c).algebra),
                              QuasivarietyClass::NBCA);
    if (!relative) continue;
    ++report.nbca_congruences;
    if (c.same(na, one) && !c.is_total()) ++report.proper_containing_pair;
  }
  report.extension_fails = report.proper_containing_pair == 0 && report.quotient_is_b2;
  return report;
}

}  // namespace bochvar
