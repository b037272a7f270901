#include "bochvar/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <unordered_map>

namespace bochvar {

bool LogicalMatrix::designates(int x) const {
  return std::binary_search(designated.begin(), designated.end(), x);
}

const LogicalMatrix& matrix_be() {
  static const LogicalMatrix m = [] {
    LogicalMatrix r;
    r.algebra = builtin_algebra("wke");
    r.designated = {r.algebra.one};
    return r;
  }();
  return m;
}

const LogicalMatrix& matrix_nbe() {
  static const LogicalMatrix m = [] {
    LogicalMatrix r;
    r.algebra = builtin_algebra("b4+b2");
    r.designated = {r.algebra.one};
    return r;
  }();
  return m;
}

CheckResult consequence(const LogicalMatrix& m, const std::vector<Term>& premises,
                        const Term& phi) {
  const FiniteAlgebra& a = m.algebra;
  std::set<std::string> var_set = variables(phi);
  for (const Term& p : premises) {
    auto vs = variables(p);
    var_set.insert(vs.begin(), vs.end());
  }
  std::vector<std::string> slots(var_set.begin(), var_set.end());
  std::vector<int> vals(slots.size(), 0);
  const int n = a.size();
  while (true) {
    Valuation v;
    for (std::size_t i = 0; i < slots.size(); ++i) v[slots[i]] = vals[i];
    bool premises_ok = true;
    for (const Term& p : premises)
      if (!m.designates(eval(a, p, v))) {
        premises_ok = false;
        break;
      }
    if (premises_ok && !m.designates(eval(a, phi, v))) {
      CheckResult res;
      res.holds = false;
      res.counterexample = std::move(v);
      return res;
    }
    int pos = static_cast<int>(vals.size()) - 1;
    while (pos >= 0 && vals[pos] == n - 1) vals[pos--] = 0;
    if (pos < 0) break;
    ++vals[pos];
  }
  return CheckResult{};
}

CheckResult theorem_check(const LogicalMatrix& m, const Term& phi) {
  return consequence(m, {}, phi);
}

bool is_theorem(const LogicalMatrix& m, const Term& phi) { return theorem_check(m, phi).holds; }

bool check_deduction_instance(const LogicalMatrix& m, const std::vector<Term>& premises,
                              const Term& psi, const Term& phi) {
  std::vector<Term> with_psi = premises;
  with_psi.push_back(psi);
  bool lhs = consequence(m, with_psi, phi).holds;
  bool rhs = consequence(m, premises, implies(Term::j(2, psi), Term::j(2, phi))).holds;
  return lhs == rhs;
}

CheckResult rule_derivable(const LogicalMatrix& m, const Rule& r) {
  return consequence(m, r.premises, r.conclusion);
}

PassivityResult witness_passivity(const QuasiIdentity& q, const FiniteAlgebra& a) {
  PassivityResult res;
  if (q.antecedents.empty()) return res;  // nothing to falsify
  std::set<std::string> var_set;
  for (const auto& e : q.antecedents) {
    auto l = variables(e.lhs), r = variables(e.rhs);
    var_set.insert(l.begin(), l.end());
    var_set.insert(r.begin(), r.end());
  }
  std::vector<std::string> slots(var_set.begin(), var_set.end());
  std::vector<int> vals(slots.size(), 0);
  const int n = a.size();
  while (true) {
    Valuation v;
    for (std::size_t i = 0; i < slots.size(); ++i) v[slots[i]] = vals[i];
    bool all_hold = true;
    for (const auto& e : q.antecedents)
      if (eval(a, e.lhs, v) != eval(a, e.rhs, v)) {
        all_hold = false;
        break;
      }
    if (all_hold) {
      res.witnessed = false;
      res.realizing = std::move(v);
      return res;
    }
    int pos = static_cast<int>(vals.size()) - 1;
    while (pos >= 0 && vals[pos] == n - 1) vals[pos--] = 0;
    if (pos < 0) break;
    ++vals[pos];
  }
  res.witnessed = true;
  return res;
}

PassivityResult witness_passivity(const Rule& r, const FiniteAlgebra& a) {
  QuasiIdentity q;
  for (const Term& p : r.premises) q.antecedents.push_back(tau(p));
  q.consequent = tau(r.conclusion);
  return witness_passivity(q, a);
}

// ---------------------------------------------------------------------------
// Bounded enumeration of terms, collapsed to value-table classes.

namespace {

// A class is a pair of value tables: one over WK^e (3^k entries) and one
// over B4+B2 (6^k entries). The representative term is rebuilt on demand
// from the construction recipe.
struct TermClass {
  std::vector<std::int8_t> be, nbe;
  enum class How { Seed, Unary, Binary } how = How::Seed;
  int seed = 0;  // seed ordinal
  UnaryOp uop{};
  BinaryOp bop{};
  int child1 = -1, child2 = -1;
};

struct TableKey {
  std::vector<std::int8_t> data;
  bool operator==(const TableKey& o) const { return data == o.data; }
};

struct TableKeyHash {
  std::size_t operator()(const TableKey& k) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto b : k.data) h = (h ^ static_cast<unsigned char>(b)) * 1099511628211ULL;
    return h;
  }
};

struct ClassEnumerator {
  const FiniteAlgebra& be_alg;
  const FiniteAlgebra& nbe_alg;
  int var_count;
  std::vector<TermClass> classes;
  std::unordered_map<TableKey, int, TableKeyHash> index;
  std::vector<std::string> var_names;

  ClassEnumerator(int vars)
      : be_alg(matrix_be().algebra), nbe_alg(matrix_nbe().algebra), var_count(vars) {
    static const char* names[] = {"x", "y", "z", "w"};
    for (int i = 0; i < vars; ++i) var_names.push_back(names[i]);
  }

  static std::size_t pow_size(int base, int exp) {
    std::size_t r = 1;
    while (exp--) r *= base;
    return r;
  }

  TableKey key_of(const TermClass& c) const {
    TableKey k;
    k.data = c.be;
    k.data.insert(k.data.end(), c.nbe.begin(), c.nbe.end());
    return k;
  }

  bool add(TermClass c) {
    TableKey k = key_of(c);
    if (index.count(k)) return false;
    index.emplace(std::move(k), static_cast<int>(classes.size()));
    classes.push_back(std::move(c));
    return true;
  }

  // valuation tables: entry i of the WK^e table is the value under the
  // valuation whose digit j (x most significant) is (i / 3^(k-1-j)) % 3
  void seed_classes() {
    std::size_t be_n = pow_size(be_alg.size(), var_count);
    std::size_t nbe_n = pow_size(nbe_alg.size(), var_count);
    for (int vi = 0; vi < var_count; ++vi) {
      TermClass c;
      c.how = TermClass::How::Seed;
      c.seed = vi;
      c.be.resize(be_n);
      c.nbe.resize(nbe_n);
      for (std::size_t i = 0; i < be_n; ++i)
        c.be[i] = static_cast<std::int8_t>(digit(i, vi, be_alg.size()));
      for (std::size_t i = 0; i < nbe_n; ++i)
        c.nbe[i] = static_cast<std::int8_t>(digit(i, vi, nbe_alg.size()));
      add(std::move(c));
    }
    for (bool one : {false, true}) {
      TermClass c;
      c.how = TermClass::How::Seed;
      c.seed = var_count + (one ? 1 : 0);
      c.be.assign(be_n, static_cast<std::int8_t>(be_alg.constant(one)));
      c.nbe.assign(nbe_n, static_cast<std::int8_t>(nbe_alg.constant(one)));
      add(std::move(c));
    }
  }

  int digit(std::size_t i, int var, int base) const {
    for (int p = var_count - 1; p > var; --p) i /= base;
    return static_cast<int>(i % base);
  }

  TermClass apply_unary(UnaryOp op, int ci) const {
    const TermClass& c = classes[ci];
    TermClass r;
    r.how = TermClass::How::Unary;
    r.uop = op;
    r.child1 = ci;
    r.be.resize(c.be.size());
    r.nbe.resize(c.nbe.size());
    for (std::size_t i = 0; i < c.be.size(); ++i)
      r.be[i] = static_cast<std::int8_t>(be_alg.un(op, c.be[i]));
    for (std::size_t i = 0; i < c.nbe.size(); ++i)
      r.nbe[i] = static_cast<std::int8_t>(nbe_alg.un(op, c.nbe[i]));
    return r;
  }

  TermClass apply_binary(BinaryOp op, int ci, int cj) const {
    const TermClass& c1 = classes[ci];
    const TermClass& c2 = classes[cj];
    TermClass r;
    r.how = TermClass::How::Binary;
    r.bop = op;
    r.child1 = ci;
    r.child2 = cj;
    r.be.resize(c1.be.size());
    r.nbe.resize(c1.nbe.size());
    for (std::size_t i = 0; i < c1.be.size(); ++i)
      r.be[i] = static_cast<std::int8_t>(be_alg.bin(op, c1.be[i], c2.be[i]));
    for (std::size_t i = 0; i < c1.nbe.size(); ++i)
      r.nbe[i] = static_cast<std::int8_t>(nbe_alg.bin(op, c1.nbe[i], c2.nbe[i]));
    return r;
  }

  void close(int depth) {
    seed_classes();
    std::size_t level_begin = 0;
    for (int d = 1; d <= depth; ++d) {
      std::size_t level_end = classes.size();
      for (UnaryOp op : {UnaryOp::Neg, UnaryOp::J0, UnaryOp::J1, UnaryOp::J2})
        for (std::size_t i = level_begin; i < level_end; ++i) add(apply_unary(op, (int)i));
      for (BinaryOp op : {BinaryOp::And, BinaryOp::Or})
        for (std::size_t i = 0; i < level_end; ++i)
          for (std::size_t k = 0; k < level_end; ++k) {
            if (i < level_begin && k < level_begin) continue;
            add(apply_binary(op, (int)i, (int)k));
          }
      level_begin = level_end;
    }
  }

  Term rebuild(int ci) const {
    const TermClass& c = classes[ci];
    switch (c.how) {
      case TermClass::How::Seed:
        if (c.seed < var_count) return Term::variable(var_names[c.seed]);
        return Term::constant(c.seed == var_count + 1);
      case TermClass::How::Unary:
        return Term::unary(c.uop, rebuild(c.child1));
      case TermClass::How::Binary:
        return Term::binary(c.bop, rebuild(c.child1), rebuild(c.child2));
    }
    throw std::logic_error("unreachable");
  }

  bool all_designated_be(const TermClass& c) const {
    for (auto v : c.be)
      if (v != be_alg.one) return false;
    return true;
  }

  bool all_designated_nbe(const TermClass& c) const {
    for (auto v : c.nbe)
      if (v != nbe_alg.one) return false;
    return true;
  }
};

}  // namespace

AgreementReport theoremhood_agreement(int depth, int var_count) {
  if (var_count < 0 || var_count > 4) throw algebra_error("variable count must be 0..4");
  ClassEnumerator e(var_count);
  e.close(depth);
  AgreementReport report;
  report.depth = depth;
  report.var_count = var_count;
  report.classes = static_cast<long long>(e.classes.size());
  for (std::size_t i = 0; i < e.classes.size(); ++i) {
    AgreementEntry entry;
    entry.be_theorem = e.all_designated_be(e.classes[i]);
    entry.nbe_theorem = e.all_designated_nbe(e.classes[i]);
    entry.representative = render_term(e.rebuild(static_cast<int>(i)));
    report.entries.push_back(entry);
    if (entry.be_theorem != entry.nbe_theorem) report.discrepancies.push_back(entry);
  }
  return report;
}

DeductionSweep deduction_theorem_sweep(int depth, int var_count) {
  if (var_count < 0 || var_count > 4) throw algebra_error("variable count must be 0..4");
  ClassEnumerator e(var_count);
  e.close(depth);
  const int one = e.be_alg.one;
  // Only the set of valuations a term designates matters on either side of
  // the deduction equivalence, so collapse classes to designation masks.
  std::set<std::uint32_t> mask_set;
  const std::size_t n_vals = e.classes.front().be.size();
  if (n_vals > 31) throw algebra_error("deduction sweep limited to <= 31 valuations");
  for (const TermClass& c : e.classes) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < n_vals; ++i)
      if (c.be[i] == one) m |= 1u << i;
    mask_set.insert(m);
  }
  std::vector<std::uint32_t> masks(mask_set.begin(), mask_set.end());
  const std::uint32_t full = n_vals == 32 ? 0xffffffffu : ((1u << n_vals) - 1);
  DeductionSweep sweep;
  sweep.designation_sets = static_cast<long long>(masks.size());
  // gamma ranges over the premise (or the empty premise set, mask = full)
  std::vector<std::uint32_t> gammas = masks;
  gammas.push_back(full);
  for (std::uint32_t g : gammas)
    for (std::uint32_t psi : masks)
      for (std::uint32_t phi : masks) {
        ++sweep.triples;
        bool lhs = ((g & psi) & ~phi) == 0;            // gamma, psi |- phi
        std::uint32_t imp = (~psi | phi) & full;       // J2 psi -> J2 phi
        bool rhs = (g & ~imp) == 0;                    // gamma |- imp
        if (lhs != rhs) ++sweep.violations;
      }
  return sweep;
}

}  // namespace bochvar
