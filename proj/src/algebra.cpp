#include "bochvar/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace bochvar {

int FiniteAlgebra::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (elements[i] == label) return i;
  return -1;
}

int FiniteAlgebra::j(int k, int x) const {
  if (!has_j()) throw algebra_error("algebra '" + name + "' has no J operations");
  switch (k) {
    case 0: return j0_table[x];
    case 1: return j1_table[x];
    case 2: return j2_table[x];
    default: throw algebra_error("J index out of range");
  }
}

int FiniteAlgebra::un(UnaryOp op, int x) const {
  switch (op) {
    case UnaryOp::Neg: return neg_table[x];
    case UnaryOp::J0: return j(0, x);
    case UnaryOp::J1: return j(1, x);
    case UnaryOp::J2: return j(2, x);
  }
  throw algebra_error("unreachable");
}

void FiniteAlgebra::finalize() {
  const int n = size();
  if (n < 1) throw algebra_error("algebra '" + name + "' has an empty carrier");
  std::set<std::string> seen(elements.begin(), elements.end());
  if (static_cast<int>(seen.size()) != n)
    throw algebra_error("algebra '" + name + "' has duplicate element labels");
  auto check_unary = [&](const std::vector<int>& t, const char* what) {
    if (static_cast<int>(t.size()) != n)
      throw algebra_error("algebra '" + name + "': " + what + " table has wrong size");
    for (int v : t)
      if (v < 0 || v >= n)
        throw algebra_error("algebra '" + name + "': " + what + " table entry out of range");
  };
  auto check_binary = [&](const std::vector<int>& t, const char* what) {
    if (static_cast<int>(t.size()) != n * n)
      throw algebra_error("algebra '" + name + "': " + what + " table has wrong size");
    for (int v : t)
      if (v < 0 || v >= n)
        throw algebra_error("algebra '" + name + "': " + what + " table entry out of range");
  };
  if (zero < 0 || zero >= n || one < 0 || one >= n)
    throw algebra_error("algebra '" + name + "': constants missing or out of range");
  check_unary(neg_table, "neg");
  check_binary(or_table, "or");
  check_binary(and_table, "and");
  if (signature == Signature::Boolean) {
    if (!j0_table.empty() || !j1_table.empty() || !j2_table.empty())
      throw algebra_error("algebra '" + name + "': Boolean signature with J tables");
    return;
  }
  check_unary(j2_table, "J2");
  // a reduced algebra gets its J0/J1 tables from the derived definitions
  if (j0_table.empty()) {
    j0_table.resize(n);
    for (int x = 0; x < n; ++x) j0_table[x] = j2_table[neg_table[x]];
  }
  if (j1_table.empty()) {
    j1_table.resize(n);
    for (int x = 0; x < n; ++x)
      j1_table[x] = neg_table[or_table[j2_table[x] * n + j2_table[neg_table[x]]]];
  }
  check_unary(j0_table, "J0");
  check_unary(j1_table, "J1");
}

FiniteAlgebra FiniteAlgebra::boolean_reduct() const {
  FiniteAlgebra r = *this;
  r.signature = Signature::Boolean;
  r.j0_table.clear();
  r.j1_table.clear();
  r.j2_table.clear();
  return r;
}

int eval(const FiniteAlgebra& a, const Term& t, const Valuation& v) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto it = v.find(t.var_name());
      if (it == v.end())
        throw algebra_error("no binding for variable '" + t.var_name() + "'");
      if (it->second < 0 || it->second >= a.size())
        throw algebra_error("binding for '" + t.var_name() + "' out of range");
      return it->second;
    }
    case Term::Kind::Constant:
      return a.constant(t.is_one());
    case Term::Kind::Unary:
      return a.un(t.unary_op(), eval(a, t.child(), v));
    case Term::Kind::Binary:
      return a.bin(t.binary_op(), eval(a, t.lhs(), v), eval(a, t.rhs(), v));
  }
  throw algebra_error("unreachable");
}

// ---------------------------------------------------------------------------
// Quasi-identity checking. Terms are compiled to postfix programs over
// variable slots so the valuation scan stays cheap.

namespace {

struct Ins {
  enum class Op { Var, Const, Unary, Binary } op;
  int arg = 0;  // slot, constant index, or operator
};

struct Prog {
  std::vector<Ins> code;
};

void compile(const Term& t, const FiniteAlgebra& a, const std::vector<std::string>& slots,
             Prog& out) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto it = std::find(slots.begin(), slots.end(), t.var_name());
      out.code.push_back({Ins::Op::Var, static_cast<int>(it - slots.begin())});
      return;
    }
    case Term::Kind::Constant:
      out.code.push_back({Ins::Op::Const, a.constant(t.is_one())});
      return;
    case Term::Kind::Unary:
      compile(t.child(), a, slots, out);
      out.code.push_back({Ins::Op::Unary, static_cast<int>(t.unary_op())});
      return;
    case Term::Kind::Binary:
      compile(t.lhs(), a, slots, out);
      compile(t.rhs(), a, slots, out);
      out.code.push_back({Ins::Op::Binary, static_cast<int>(t.binary_op())});
      return;
  }
}

int run(const Prog& p, const FiniteAlgebra& a, const std::vector<int>& vals) {
  static thread_local std::vector<int> stack;
  stack.clear();
  for (const Ins& ins : p.code) {
    switch (ins.op) {
      case Ins::Op::Var: stack.push_back(vals[ins.arg]); break;
      case Ins::Op::Const: stack.push_back(ins.arg); break;
      case Ins::Op::Unary:
        stack.back() = a.un(static_cast<UnaryOp>(ins.arg), stack.back());
        break;
      case Ins::Op::Binary: {
        int rhs = stack.back();
        stack.pop_back();
        stack.back() = a.bin(static_cast<BinaryOp>(ins.arg), stack.back(), rhs);
        break;
      }
    }
  }
  return stack.back();
}

}  // namespace

CheckResult holds_quasi_identity(const FiniteAlgebra& a, const QuasiIdentity& q) {
  std::set<std::string> var_set;
  auto add_eq = [&](const Equation& e) {
    auto l = variables(e.lhs), r = variables(e.rhs);
    var_set.insert(l.begin(), l.end());
    var_set.insert(r.begin(), r.end());
  };
  for (const auto& e : q.antecedents) add_eq(e);
  add_eq(q.consequent);
  std::vector<std::string> slots(var_set.begin(), var_set.end());

  std::vector<std::pair<Prog, Prog>> ants, cons;
  for (const auto& e : q.antecedents) {
    std::pair<Prog, Prog> p;
    compile(e.lhs, a, slots, p.first);
    compile(e.rhs, a, slots, p.second);
    ants.push_back(std::move(p));
  }
  {
    std::pair<Prog, Prog> p;
    compile(q.consequent.lhs, a, slots, p.first);
    compile(q.consequent.rhs, a, slots, p.second);
    cons.push_back(std::move(p));
  }

  const int n = a.size();
  std::vector<int> vals(slots.size(), 0);
  while (true) {
    bool applicable = true;
    for (const auto& [l, r] : ants)
      if (run(l, a, vals) != run(r, a, vals)) {
        applicable = false;
        break;
      }
    if (applicable && run(cons[0].first, a, vals) != run(cons[0].second, a, vals)) {
      CheckResult res;
      res.holds = false;
      for (std::size_t i = 0; i < slots.size(); ++i) res.counterexample[slots[i]] = vals[i];
      return res;
    }
    // lexicographic successor: the first variable is most significant
    int pos = static_cast<int>(vals.size()) - 1;
    while (pos >= 0 && vals[pos] == n - 1) vals[pos--] = 0;
    if (pos < 0) break;
    ++vals[pos];
  }
  return CheckResult{};
}

CheckResult holds_identity(const FiniteAlgebra& a, const Term& lhs, const Term& rhs) {
  QuasiIdentity q;
  q.consequent = Equation{lhs, rhs};
  return holds_quasi_identity(a, q);
}

// ---------------------------------------------------------------------------

FiniteAlgebra direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.signature != b.signature)
    throw algebra_error("direct product requires matching signatures");
  FiniteAlgebra p;
  p.name = a.name + "x" + b.name;
  p.signature = a.signature;
  const int na = a.size(), nb = b.size(), n = na * nb;
  auto idx = [&](int x, int y) { return x * nb + y; };
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y)
      p.elements.push_back("(" + a.label(x) + "," + b.label(y) + ")");
  p.zero = idx(a.zero, b.zero);
  p.one = idx(a.one, b.one);
  auto unary = [&](const std::vector<int>& ta, const std::vector<int>& tb) {
    std::vector<int> t(n);
    for (int x = 0; x < na; ++x)
      for (int y = 0; y < nb; ++y) t[idx(x, y)] = idx(ta[x], tb[y]);
    return t;
  };
  p.neg_table = unary(a.neg_table, b.neg_table);
  if (p.signature != Signature::Boolean) {
    p.j0_table = unary(a.j0_table, b.j0_table);
    p.j1_table = unary(a.j1_table, b.j1_table);
    p.j2_table = unary(a.j2_table, b.j2_table);
  }
  auto binary = [&](const std::vector<int>& ta, const std::vector<int>& tb) {
    std::vector<int> t(n * n);
    for (int x1 = 0; x1 < na; ++x1)
      for (int y1 = 0; y1 < nb; ++y1)
        for (int x2 = 0; x2 < na; ++x2)
          for (int y2 = 0; y2 < nb; ++y2)
            t[idx(x1, y1) * n + idx(x2, y2)] = idx(ta[x1 * na + x2], tb[y1 * nb + y2]);
    return t;
  };
  p.or_table = binary(a.or_table, b.or_table);
  p.and_table = binary(a.and_table, b.and_table);
  p.finalize();
  return p;
}

Subalgebra subalgebra_generated(const FiniteAlgebra& a, const std::vector<int>& seed) {
  const int n = a.size();
  std::vector<bool> in(n, false);
  in[a.zero] = in[a.one] = true;
  for (int s : seed) {
    if (s < 0 || s >= n) throw algebra_error("seed element out of range");
    in[s] = true;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      if (!in[x]) continue;
      auto visit = [&](int y) {
        if (!in[y]) {
          in[y] = true;
          changed = true;
        }
      };
      visit(a.neg(x));
      if (a.has_j())
        for (int k = 0; k < 3; ++k) visit(a.j(k, x));
      for (int y = 0; y < n; ++y) {
        if (!in[y]) continue;
        visit(a.join(x, y));
        visit(a.meet(x, y));
      }
    }
  }
  Subalgebra sub;
  std::vector<int> back(n, -1);
  for (int x = 0; x < n; ++x)
    if (in[x]) {
      back[x] = static_cast<int>(sub.inclusion.size());
      sub.inclusion.push_back(x);
      sub.algebra.elements.push_back(a.label(x));
    }
  FiniteAlgebra& s = sub.algebra;
  s.name = a.name + "_sub";
  s.signature = a.signature;
  const int m = s.size();
  s.zero = back[a.zero];
  s.one = back[a.one];
  s.neg_table.resize(m);
  if (s.has_j()) {
    s.j0_table.resize(m);
    s.j1_table.resize(m);
    s.j2_table.resize(m);
  }
  s.or_table.resize(m * m);
  s.and_table.resize(m * m);
  for (int x = 0; x < m; ++x) {
    int px = sub.inclusion[x];
    s.neg_table[x] = back[a.neg(px)];
    if (s.has_j())
      for (int k = 0; k < 3; ++k) {
        (k == 0 ? s.j0_table : k == 1 ? s.j1_table : s.j2_table)[x] = back[a.j(k, px)];
      }
    for (int y = 0; y < m; ++y) {
      int py = sub.inclusion[y];
      s.or_table[x * m + y] = back[a.join(px, py)];
      s.and_table[x * m + y] = back[a.meet(px, py)];
    }
  }
  s.finalize();
  return sub;
}

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const HomMap& h) {
  if (a.signature != b.signature || static_cast<int>(h.size()) != a.size()) return false;
  const int n = a.size();
  for (int v : h)
    if (v < 0 || v >= b.size()) return false;
  if (h[a.zero] != b.zero || h[a.one] != b.one) return false;
  for (int x = 0; x < n; ++x) {
    if (h[a.neg(x)] != b.neg(h[x])) return false;
    if (a.has_j())
      for (int k = 0; k < 3; ++k)
        if (h[a.j(k, x)] != b.j(k, h[x])) return false;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (h[a.join(x, y)] != b.join(h[x], h[y])) return false;
      if (h[a.meet(x, y)] != b.meet(h[x], h[y])) return false;
    }
  return true;
}

bool is_injective(const HomMap& h) {
  std::set<int> seen(h.begin(), h.end());
  return seen.size() == h.size();
}

bool is_surjective(const HomMap& h, int target_size) {
  std::set<int> seen(h.begin(), h.end());
  return static_cast<int>(seen.size()) == target_size;
}

// ---------------------------------------------------------------------------
// Homomorphism search. Elements are derived from a small generator chain,
// so the search branches only over generator images; every candidate map
// is verified by a full table scan afterwards.

namespace {

struct Recipe {
  enum class Kind { Zero, One, Generator, Unary, Binary } kind;
  UnaryOp uop{};
  BinaryOp bop{};
  int x = -1, y = -1;
};

struct GeneratorPlan {
  std::vector<int> order;  // element indices in computation order
  std::vector<Recipe> recipe;
  std::vector<int> generators;
};

GeneratorPlan make_plan(const FiniteAlgebra& a) {
  const int n = a.size();
  GeneratorPlan plan;
  plan.recipe.resize(n);
  std::vector<bool> known(n, false);
  auto add = [&](int e, Recipe r) {
    if (known[e]) return false;
    known[e] = true;
    plan.recipe[e] = r;
    plan.order.push_back(e);
    return true;
  };
  add(a.zero, {Recipe::Kind::Zero});
  add(a.one, {Recipe::Kind::One});
  while (true) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int x = 0; x < n; ++x) {
        if (!known[x]) continue;
        changed |= add(a.neg(x), {Recipe::Kind::Unary, UnaryOp::Neg, {}, x});
        if (a.has_j()) {
          changed |= add(a.j(0, x), {Recipe::Kind::Unary, UnaryOp::J0, {}, x});
          changed |= add(a.j(1, x), {Recipe::Kind::Unary, UnaryOp::J1, {}, x});
          changed |= add(a.j(2, x), {Recipe::Kind::Unary, UnaryOp::J2, {}, x});
        }
        for (int y = 0; y < n; ++y) {
          if (!known[y]) continue;
          changed |= add(a.join(x, y), {Recipe::Kind::Binary, {}, BinaryOp::Or, x, y});
          changed |= add(a.meet(x, y), {Recipe::Kind::Binary, {}, BinaryOp::And, x, y});
        }
      }
    }
    int next = -1;
    for (int x = 0; x < n; ++x)
      if (!known[x]) {
        next = x;
        break;
      }
    if (next < 0) break;
    plan.generators.push_back(next);
    add(next, {Recipe::Kind::Generator});
  }
  return plan;
}

// Completes a map from generator images; returns false on a constraint clash.
bool complete_map(const FiniteAlgebra& a, const FiniteAlgebra& b, const GeneratorPlan& plan,
                  const std::vector<int>& gen_img, HomMap& out) {
  out.assign(a.size(), -1);
  std::size_t g = 0;
  for (int e : plan.order) {
    const Recipe& r = plan.recipe[e];
    switch (r.kind) {
      case Recipe::Kind::Zero: out[e] = b.zero; break;
      case Recipe::Kind::One: out[e] = b.one; break;
      case Recipe::Kind::Generator: out[e] = gen_img[g++]; break;
      case Recipe::Kind::Unary: out[e] = b.un(r.uop, out[r.x]); break;
      case Recipe::Kind::Binary: out[e] = b.bin(r.bop, out[r.x], out[r.y]); break;
    }
  }
  return true;
}

}  // namespace

std::vector<HomMap> enumerate_homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                            const HomMap& constraint) {
  if (a.signature != b.signature)
    throw algebra_error("homomorphism search requires matching signatures");
  if (!constraint.empty() && static_cast<int>(constraint.size()) != a.size())
    throw algebra_error("constraint has wrong size");
  GeneratorPlan plan = make_plan(a);
  std::vector<HomMap> result;
  std::vector<int> gen_img(plan.generators.size(), 0);
  HomMap h;
  std::function<void(std::size_t)> rec = [&](std::size_t g) {
    if (g == gen_img.size()) {
      complete_map(a, b, plan, gen_img, h);
      if (!constraint.empty())
        for (int x = 0; x < a.size(); ++x)
          if (constraint[x] >= 0 && h[x] != constraint[x]) return;
      if (is_homomorphism(a, b, h)) result.push_back(h);
      return;
    }
    int e = plan.generators[g];
    for (int img = 0; img < b.size(); ++img) {
      if (!constraint.empty() && constraint[e] >= 0 && constraint[e] != img) continue;
      gen_img[g] = img;
      rec(g + 1);
    }
  };
  rec(0);
  std::sort(result.begin(), result.end());
  return result;
}

namespace {

// Iso-invariant fingerprint of an element, used only to prune embedding
// and isomorphism search; candidates are always re-verified.
struct ElementInvariant {
  bool is_zero, is_one, self_neg;
  bool j2_fix = false, j1_zero = false, j2_zero = false;
  auto key() const { return std::tuple(is_zero, is_one, self_neg, j2_fix, j1_zero, j2_zero); }
};

ElementInvariant invariant(const FiniteAlgebra& a, int x) {
  ElementInvariant inv{x == a.zero, x == a.one, a.neg(x) == x};
  if (a.has_j()) {
    inv.j2_fix = a.j(2, x) == x;
    inv.j1_zero = a.j(1, x) == a.zero;
    inv.j2_zero = a.j(2, x) == a.zero;
  }
  return inv;
}

std::optional<HomMap> find_injective(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                     bool surjective) {
  if (a.signature != b.signature) return std::nullopt;
  if (a.size() > b.size()) return std::nullopt;
  if (surjective && a.size() != b.size()) return std::nullopt;
  GeneratorPlan plan = make_plan(a);
  std::vector<std::vector<int>> candidates;
  for (int g : plan.generators) {
    std::vector<int> cs;
    auto want = invariant(a, g).key();
    for (int img = 0; img < b.size(); ++img)
      if (invariant(b, img).key() == want) cs.push_back(img);
    if (cs.empty()) return std::nullopt;
    candidates.push_back(std::move(cs));
  }
  std::vector<int> gen_img(plan.generators.size(), 0);
  HomMap h;
  std::optional<HomMap> found;
  std::function<bool(std::size_t)> rec = [&](std::size_t g) {
    if (g == gen_img.size()) {
      complete_map(a, b, plan, gen_img, h);
      if (is_injective(h) && is_homomorphism(a, b, h)) {
        found = h;
        return true;
      }
      return false;
    }
    for (int img : candidates[g]) {
      bool dup = false;
      for (std::size_t p = 0; p < g; ++p) dup |= gen_img[p] == img;
      if (dup) continue;
      gen_img[g] = img;
      if (rec(g + 1)) return true;
    }
    return false;
  };
  rec(0);
  return found;
}

}  // namespace

std::optional<HomMap> find_embedding(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  return find_injective(a, b, false);
}

std::optional<HomMap> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  return find_injective(a, b, true);
}

SeparationResult separates_into(const FiniteAlgebra& a, const FiniteAlgebra& g) {
  std::vector<HomMap> homs = enumerate_homomorphisms(a, g);
  for (int x = 0; x < a.size(); ++x)
    for (int y = x + 1; y < a.size(); ++y) {
      bool separated = false;
      for (const HomMap& h : homs)
        if (h[x] != h[y]) {
          separated = true;
          break;
        }
      if (!separated) return SeparationResult{false, {x, y}};
    }
  return SeparationResult{};
}

// ---------------------------------------------------------------------------
// Congruences

namespace {

Congruence normalize_partition(std::vector<int> block_of) {
  // renumber blocks by least member
  std::map<int, int> renumber;
  for (std::size_t x = 0; x < block_of.size(); ++x)
    if (!renumber.count(block_of[x]))
      renumber[block_of[x]] = static_cast<int>(renumber.size());
  Congruence c;
  c.block_of.resize(block_of.size());
  for (std::size_t x = 0; x < block_of.size(); ++x) c.block_of[x] = renumber[block_of[x]];
  c.blocks = static_cast<int>(renumber.size());
  return c;
}

bool is_congruence(const FiniteAlgebra& a, const std::vector<int>& block_of) {
  const int n = a.size();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (block_of[x] != block_of[y]) continue;
      if (block_of[a.neg(x)] != block_of[a.neg(y)]) return false;
      if (a.has_j())
        for (int k = 0; k < 3; ++k)
          if (block_of[a.j(k, x)] != block_of[a.j(k, y)]) return false;
      for (int z = 0; z < n; ++z) {
        if (block_of[a.join(x, z)] != block_of[a.join(y, z)]) return false;
        if (block_of[a.meet(x, z)] != block_of[a.meet(y, z)]) return false;
      }
    }
  return true;
}

}  // namespace

Congruence principal_congruence(const FiniteAlgebra& alg, int a, int b) {
  const int n = alg.size();
  if (a < 0 || a >= n || b < 0 || b >= n) throw algebra_error("element out of range");
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x > y) std::swap(x, y);
    parent[y] = x;
    return true;
  };
  unite(a, b);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        if (find(x) != find(y)) continue;
        changed |= unite(alg.neg(x), alg.neg(y));
        if (alg.has_j())
          for (int k = 0; k < 3; ++k) changed |= unite(alg.j(k, x), alg.j(k, y));
        for (int z = 0; z < n; ++z) {
          changed |= unite(alg.join(x, z), alg.join(y, z));
          changed |= unite(alg.meet(x, z), alg.meet(y, z));
        }
      }
  }
  std::vector<int> block_of(n);
  for (int x = 0; x < n; ++x) block_of[x] = find(x);
  return normalize_partition(std::move(block_of));
}

std::vector<Congruence> all_congruences(const FiniteAlgebra& a) {
  const int n = a.size();
  if (n > 10) throw algebra_error("congruence scan limited to carriers of size <= 10");
  std::vector<Congruence> result;
  // restricted growth strings enumerate all partitions in canonical form
  std::vector<int> rgs(n, 0);
  while (true) {
    if (is_congruence(a, rgs)) result.push_back(normalize_partition(rgs));
    int pos = n - 1;
    for (; pos > 0; --pos) {
      int cap = *std::max_element(rgs.begin(), rgs.begin() + pos) + 1;
      if (rgs[pos] < cap) break;
    }
    if (pos == 0) break;
    ++rgs[pos];
    std::fill(rgs.begin() + pos + 1, rgs.end(), 0);
  }
  return result;
}

Quotient quotient(const FiniteAlgebra& a, const Congruence& theta) {
  if (static_cast<int>(theta.block_of.size()) != a.size())
    throw algebra_error("congruence does not match the algebra");
  if (!is_congruence(a, theta.block_of))
    throw algebra_error("partition is not a congruence of '" + a.name + "'");
  const int n = a.size(), m = theta.blocks;
  std::vector<int> representative(m, -1);
  for (int x = 0; x < n; ++x)
    if (representative[theta.block_of[x]] < 0) representative[theta.block_of[x]] = x;
  Quotient q;
  FiniteAlgebra& b = q.algebra;
  b.name = a.name + "_quot";
  b.signature = a.signature;
  for (int blk = 0; blk < m; ++blk) {
    // a block containing a constant borrows that constant's label
    if (theta.block_of[a.zero] == blk) b.elements.push_back(a.label(a.zero));
    else if (theta.block_of[a.one] == blk) b.elements.push_back(a.label(a.one));
    else b.elements.push_back(a.label(representative[blk]));
  }
  b.zero = theta.block_of[a.zero];
  b.one = theta.block_of[a.one];
  b.neg_table.resize(m);
  if (b.has_j()) {
    b.j0_table.resize(m);
    b.j1_table.resize(m);
    b.j2_table.resize(m);
  }
  b.or_table.resize(m * m);
  b.and_table.resize(m * m);
  for (int x = 0; x < m; ++x) {
    int rx = representative[x];
    b.neg_table[x] = theta.block_of[a.neg(rx)];
    if (b.has_j())
      for (int k = 0; k < 3; ++k)
        (k == 0 ? b.j0_table : k == 1 ? b.j1_table : b.j2_table)[x] =
            theta.block_of[a.j(k, rx)];
    for (int y = 0; y < m; ++y) {
      int ry = representative[y];
      b.or_table[x * m + y] = theta.block_of[a.join(rx, ry)];
      b.and_table[x * m + y] = theta.block_of[a.meet(rx, ry)];
    }
  }
  b.finalize();
  q.projection = theta.block_of;
  return q;
}

// ---------------------------------------------------------------------------
// Built-in algebras and the file format

namespace {

const char* kWke = R"(algebra wke
elements 0 H 1
const 0 0
const 1 1
op neg 1 H 0
op J0 1 0 0
op J1 0 1 0
op J2 0 0 1
op or
0 H 1
H H H
1 H 1
op and
0 H 0
H H H
0 H 1
end
)";

const char* kB2 = R"(algebra b2
elements 0 1
const 0 0
const 1 1
op neg 1 0
op J0 1 0
op J1 0 0
op J2 0 1
op or
0 1
1 1
op and
0 0
0 1
end
)";

const char* kB4 = R"(algebra b4
elements 0 a na 1
const 0 0
const 1 1
op neg 1 na a 0
op J0 1 na a 0
op J1 0 0 0 0
op J2 0 a na 1
op or
0 a na 1
a a 1 1
na 1 na 1
1 1 1 1
op and
0 0 0 0
0 a 0 a
0 0 na na
0 a na 1
end
)";

const char* kB4B2 = R"(algebra b4+b2
elements 0 a na 1 bot top
const 0 0
const 1 1
op neg 1 na a 0 top bot
op J0 1 na a 0 a 0
op J1 0 0 0 0 na na
op J2 0 a na 1 0 a
op or
0 a na 1 bot top
a a 1 1 top top
na 1 na 1 bot top
1 1 1 1 top top
bot top bot top bot top
top top top top top top
op and
0 0 0 0 bot bot
0 a 0 a bot top
0 0 na na bot bot
0 a na 1 bot top
bot bot bot bot bot bot
bot top bot top bot top
end
)";

std::map<std::string, FiniteAlgebra> make_builtins() {
  std::map<std::string, FiniteAlgebra> m;
  for (const char* text : {kWke, kB2, kB4, kB4B2}) {
    FiniteAlgebra a = parse_algebra_text(text);
    m[a.name] = std::move(a);
  }
  return m;
}

const std::map<std::string, FiniteAlgebra>& builtins() {
  static const std::map<std::string, FiniteAlgebra> m = make_builtins();
  return m;
}

std::vector<std::vector<std::string>> tokenize_lines(std::istream& in) {
  std::vector<std::vector<std::string>> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    lines.push_back(std::move(toks));  // keep blanks so errors carry line numbers
  }
  return lines;
}

}  // namespace

const FiniteAlgebra& builtin_algebra(const std::string& name) {
  auto it = builtins().find(name);
  if (it == builtins().end()) throw algebra_error("unknown built-in algebra '" + name + "'");
  return it->second;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : builtins()) names.push_back(k);
  return names;
}

FiniteAlgebra parse_algebra(std::istream& in) {
  auto lines = tokenize_lines(in);
  std::size_t li = 0;
  auto next_line = [&]() -> const std::vector<std::string>* {
    while (li < lines.size() && lines[li].empty()) ++li;
    if (li >= lines.size()) return nullptr;
    return &lines[li++];
  };
  auto fail = [&](const std::string& msg) -> void {
    throw parse_error(msg, static_cast<int>(li), 1);
  };

  FiniteAlgebra a;
  const auto* line = next_line();
  if (!line || line->size() != 2 || (*line)[0] != "algebra")
    fail("expected 'algebra <name>'");
  a.name = (*line)[1];

  line = next_line();
  if (!line || line->size() < 2 || (*line)[0] != "elements")
    fail("expected 'elements <e1> ... <en>'");
  a.elements.assign(line->begin() + 1, line->end());
  const int n = a.size();
  auto elem = [&](const std::string& lbl) {
    int i = a.index_of(lbl);
    if (i < 0) fail("unknown element '" + lbl + "'");
    return i;
  };
  auto read_outputs = [&](const std::vector<std::string>& toks, std::size_t from) {
    if (toks.size() - from != static_cast<std::size_t>(n))
      fail("expected " + std::to_string(n) + " outputs");
    std::vector<int> out;
    for (std::size_t i = from; i < toks.size(); ++i) out.push_back(elem(toks[i]));
    return out;
  };

  bool saw_j0 = false, saw_j1 = false, saw_j2 = false;
  while ((line = next_line())) {
    const auto& toks = *line;
    if (toks[0] == "end") {
      if (a.zero < 0 || a.one < 0) fail("missing 'const 0' or 'const 1'");
      a.signature = saw_j2 ? ((saw_j0 && saw_j1) ? Signature::Full : Signature::Reduced)
                           : Signature::Boolean;
      if ((saw_j0 || saw_j1) && !saw_j2) fail("J0/J1 given without J2");
      a.finalize();
      return a;
    }
    if (toks[0] == "const") {
      if (toks.size() != 3) fail("expected 'const 0|1 <elem>'");
      if (toks[1] == "0") a.zero = elem(toks[2]);
      else if (toks[1] == "1") a.one = elem(toks[2]);
      else fail("expected 'const 0' or 'const 1'");
      continue;
    }
    if (toks[0] != "op" || toks.size() < 2) fail("expected 'op <name> ...'");
    const std::string& op = toks[1];
    if (op == "neg" || op == "J0" || op == "J1" || op == "J2") {
      auto out = read_outputs(toks, 2);
      if (op == "neg") a.neg_table = out;
      else if (op == "J0") a.j0_table = out, saw_j0 = true;
      else if (op == "J1") a.j1_table = out, saw_j1 = true;
      else a.j2_table = out, saw_j2 = true;
    } else if (op == "or" || op == "and") {
      if (toks.size() != 2) fail("binary op rows start on the next line");
      std::vector<int> table;
      for (int r = 0; r < n; ++r) {
        const auto* row = next_line();
        if (!row) fail("missing row " + std::to_string(r + 1) + " of op " + op);
        auto out = read_outputs(*row, 0);
        table.insert(table.end(), out.begin(), out.end());
      }
      (op == "or" ? a.or_table : a.and_table) = std::move(table);
    } else {
      fail("unknown operation '" + op + "'");
    }
  }
  fail("missing 'end'");
  return a;  // unreachable
}

FiniteAlgebra parse_algebra_text(const std::string& text) {
  std::istringstream in(text);
  return parse_algebra(in);
}

FiniteAlgebra load_algebra(const std::string& name_or_path) {
  if (builtins().count(name_or_path)) return builtins().at(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw algebra_error("cannot open algebra file '" + name_or_path + "'");
  return parse_algebra(in);
}

std::string write_algebra(const FiniteAlgebra& a) {
  std::ostringstream out;
  out << "algebra " << a.name << "\n";
  out << "elements";
  for (const auto& e : a.elements) out << ' ' << e;
  out << "\n";
  out << "const 0 " << a.label(a.zero) << "\n";
  out << "const 1 " << a.label(a.one) << "\n";
  auto unary = [&](const char* name, const std::vector<int>& t) {
    out << "op " << name;
    for (int v : t) out << ' ' << a.label(v);
    out << "\n";
  };
  unary("neg", a.neg_table);
  if (a.signature == Signature::Full) {
    unary("J0", a.j0_table);
    unary("J1", a.j1_table);
  }
  if (a.has_j()) unary("J2", a.j2_table);
  auto binary = [&](const char* name, const std::vector<int>& t) {
    out << "op " << name << "\n";
    for (int x = 0; x < a.size(); ++x) {
      for (int y = 0; y < a.size(); ++y) out << (y ? " " : "") << a.label(t[x * a.size() + y]);
      out << "\n";
    }
  };
  binary("or", a.or_table);
  binary("and", a.and_table);
  out << "end\n";
  return out.str();
}

}  // namespace bochvar
