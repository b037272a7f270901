#include "bochvar/plonka.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace bochvar {

namespace {

class system_error_ : public algebra_error {
 public:
  using algebra_error::algebra_error;
};

[[noreturn]] void sys_fail(const std::string& msg) { throw system_error_(msg); }

// The Boolean algebra identities, scanned exhaustively over a fiber.
bool boolean_identity_failure(const FiniteAlgebra& f, std::string& which) {
  const int n = f.size();
  auto bad = [&](const char* name) {
    which = name;
    return true;
  };
  for (int x = 0; x < n; ++x) {
    if (f.neg(f.neg(x)) != x) return bad("~~x = x");
    if (f.join(x, f.neg(x)) != f.one) return bad("x | ~x = 1");
    if (f.meet(x, f.neg(x)) != f.zero) return bad("x & ~x = 0");
    if (f.join(f.zero, x) != x) return bad("0 | x = x");
    if (f.meet(f.one, x) != x) return bad("1 & x = x");
    if (f.join(x, x) != x) return bad("x | x = x");
    for (int y = 0; y < n; ++y) {
      if (f.join(x, y) != f.join(y, x)) return bad("commutativity of |");
      if (f.meet(x, y) != f.meet(y, x)) return bad("commutativity of &");
      if (f.meet(x, f.join(x, y)) != x) return bad("absorption");
      if (f.join(x, f.meet(x, y)) != x) return bad("absorption");
      if (f.neg(f.join(x, y)) != f.meet(f.neg(x), f.neg(y))) return bad("De Morgan");
      for (int z = 0; z < n; ++z) {
        if (f.join(f.join(x, y), z) != f.join(x, f.join(y, z))) return bad("associativity of |");
        if (f.meet(x, f.join(y, z)) != f.join(f.meet(x, y), f.meet(x, z)))
          return bad("distributivity");
      }
    }
  }
  return false;
}

}  // namespace

int SemilatticeDirectSystem::index_of(const std::string& label) const {
  for (int i = 0; i < count(); ++i)
    if (index_labels[i] == label) return i;
  return -1;
}

int SemilatticeDirectSystem::push(int i, int j, int x) const {
  if (i == j) return x;
  auto it = homs.find({i, j});
  if (it == homs.end())
    sys_fail("system '" + name + "': missing homomorphism " + index_labels[i] + "->" +
             index_labels[j]);
  return it->second[x];
}

void SemilatticeDirectSystem::validate() const {
  const int k = count();
  if (k < 1) sys_fail("system '" + name + "' has no indices");
  if (static_cast<int>(join_table.size()) != k * k)
    sys_fail("system '" + name + "': join table has wrong size");
  for (int v : join_table)
    if (v < 0 || v >= k) sys_fail("system '" + name + "': join entry out of range");
  std::set<std::string> seen(index_labels.begin(), index_labels.end());
  if (static_cast<int>(seen.size()) != k)
    sys_fail("system '" + name + "': duplicate index labels");
  for (int i = 0; i < k; ++i) {
    if (joined(i, i) != i) sys_fail("system '" + name + "': join is not idempotent");
    if (joined(bottom, i) != i)
      sys_fail("system '" + name + "': bottom is not the least index");
    for (int j = 0; j < k; ++j) {
      if (joined(i, j) != joined(j, i)) sys_fail("system '" + name + "': join is not commutative");
      for (int l = 0; l < k; ++l)
        if (joined(joined(i, j), l) != joined(i, joined(j, l)))
          sys_fail("system '" + name + "': join is not associative");
    }
  }
  if (static_cast<int>(fibers.size()) != k)
    sys_fail("system '" + name + "': one fiber per index required");
  for (int i = 0; i < k; ++i) {
    if (fibers[i].signature != Signature::Boolean)
      sys_fail("system '" + name + "': fiber " + index_labels[i] + " is not in Boolean signature");
    std::string which;
    if (boolean_identity_failure(fibers[i], which))
      sys_fail("system '" + name + "': fiber " + index_labels[i] +
               " fails the Boolean identity " + which);
  }
  for (const auto& [key, h] : homs) {
    auto [i, j] = key;
    if (i < 0 || i >= k || j < 0 || j >= k || i == j || !leq(i, j))
      sys_fail("system '" + name + "': homomorphism given for a pair with " +
               "indices not strictly below one another");
    if (static_cast<int>(h.size()) != fibers[i].size())
      sys_fail("system '" + name + "': homomorphism " + index_labels[i] + "->" + index_labels[j] +
               " has wrong size");
    if (!is_homomorphism(fibers[i], fibers[j], h))
      sys_fail("system '" + name + "': map " + index_labels[i] + "->" + index_labels[j] +
               " is not a homomorphism");
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j || !leq(i, j)) continue;
      if (!homs.count({i, j}))
        sys_fail("system '" + name + "': missing homomorphism " + index_labels[i] + "->" +
                 index_labels[j]);
      // compatibility p_jk . p_ij = p_ik
      for (int l = 0; l < k; ++l) {
        if (j == l || !leq(j, l)) continue;
        for (int x = 0; x < fibers[i].size(); ++x)
          if (push(j, l, push(i, j, x)) != push(i, l, x))
            sys_fail("system '" + name + "': compatibility fails along " + index_labels[i] +
                     "->" + index_labels[j] + "->" + index_labels[l]);
      }
    }
  for (const auto& [i, a] : designated) {
    if (i < 0 || i >= k) sys_fail("system '" + name + "': designated index out of range");
    if (a < 0 || a >= fibers[bottom].size())
      sys_fail("system '" + name + "': designated element outside the bottom fiber");
  }
}

FiniteAlgebra plonka_sum(const SemilatticeDirectSystem& s) {
  s.validate();
  const int k = s.count();
  FiniteAlgebra a;
  a.name = s.name;
  a.signature = Signature::Boolean;
  std::vector<std::vector<int>> global(k);  // (index, local) -> global element
  std::set<std::string> labels;
  bool unique = true;
  for (int i = 0; i < k && unique; ++i)
    for (const auto& e : s.fibers[i].elements) unique &= labels.insert(e).second;
  for (int i = 0; i < k; ++i) {
    global[i].resize(s.fibers[i].size());
    for (int x = 0; x < s.fibers[i].size(); ++x) {
      global[i][x] = a.size();
      a.elements.push_back(unique ? s.fibers[i].label(x)
                                  : s.index_labels[i] + ":" + s.fibers[i].label(x));
    }
  }
  const int n = a.size();
  std::vector<std::pair<int, int>> fiber_of(n);
  for (int i = 0; i < k; ++i)
    for (int x = 0; x < s.fibers[i].size(); ++x) fiber_of[global[i][x]] = {i, x};
  a.zero = global[s.bottom][s.fibers[s.bottom].zero];
  a.one = global[s.bottom][s.fibers[s.bottom].one];
  a.neg_table.resize(n);
  a.or_table.resize(n * n);
  a.and_table.resize(n * n);
  for (int e = 0; e < n; ++e) {
    auto [i, x] = fiber_of[e];
    a.neg_table[e] = global[i][s.fibers[i].neg(x)];
    for (int f = 0; f < n; ++f) {
      auto [j, y] = fiber_of[f];
      int m = s.joined(i, j);
      int px = s.push(i, m, x), py = s.push(j, m, y);
      a.or_table[e * n + f] = global[m][s.fibers[m].join(px, py)];
      a.and_table[e * n + f] = global[m][s.fibers[m].meet(px, py)];
    }
  }
  a.finalize();
  return a;
}

namespace {

// The designated element of index i: the meet of the kernel filter of
// p_{i0 i}, which in a finite Boolean algebra generates it.
int kernel_generator(const SemilatticeDirectSystem& s, int i) {
  const FiniteAlgebra& bot = s.fibers[s.bottom];
  int g = -1;
  for (int x = 0; x < bot.size(); ++x) {
    if (s.push(s.bottom, i, x) != s.fibers[i].one) continue;
    g = g < 0 ? x : bot.meet(g, x);
  }
  if (g < 0)
    sys_fail("system '" + s.name + "': homomorphism onto " + s.index_labels[i] +
             " misses the fiber's top");
  return g;
}

std::vector<int> interval_elements(const FiniteAlgebra& bot, int a) {
  std::vector<int> out;
  for (int x = 0; x < bot.size(); ++x)
    if (bot.meet(x, a) == x) out.push_back(x);
  return out;
}

}  // namespace

FiniteAlgebra attach_J(const SemilatticeDirectSystem& s) {
  FiniteAlgebra a = plonka_sum(s);
  const int k = s.count();
  const FiniteAlgebra& bot = s.fibers[s.bottom];

  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j || !s.leq(i, j)) continue;
      if (!is_surjective(s.homs.at({i, j}), s.fibers[j].size()))
        sys_fail("system '" + s.name + "': homomorphism " + s.index_labels[i] + "->" +
                 s.index_labels[j] + " is not surjective");
    }
  for (int i = 0; i < k; ++i) {
    if (i == s.bottom) continue;
    if (is_injective(s.homs.at({s.bottom, i})))
      sys_fail("system '" + s.name + "': homomorphism from the bottom to " + s.index_labels[i] +
               " is injective");
  }

  std::vector<int> a_of(k);
  for (int i = 0; i < k; ++i) {
    auto it = s.designated.find(i);
    a_of[i] = it != s.designated.end() ? it->second : kernel_generator(s, i);
  }
  if (a_of[s.bottom] != bot.one)
    sys_fail("system '" + s.name + "': designated element of the bottom index is not 1");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      if (a_of[i] == a_of[j])
        sys_fail("system '" + s.name + "': designated elements are not pairwise distinct");
      if (s.leq(i, j) && !(bot.leq(a_of[j], a_of[i]) && a_of[i] != a_of[j]))
        sys_fail("system '" + s.name + "': designated elements violate the strict antitone order");
    }
  // p_{i0 i} restricted to [0, a_i] must be a bijection onto fiber i
  std::vector<std::vector<int>> inverse(k);  // fiber-local element -> bottom element
  for (int i = 0; i < k; ++i) {
    std::vector<int> interval = interval_elements(bot, a_of[i]);
    if (static_cast<int>(interval.size()) != s.fibers[i].size())
      sys_fail("system '" + s.name + "': kernel filter of the map onto " + s.index_labels[i] +
               " is not principal with generator " + bot.label(a_of[i]) +
               " (interval and fiber sizes differ)");
    inverse[i].assign(s.fibers[i].size(), -1);
    for (int x : interval) {
      int img = s.push(s.bottom, i, x);
      if (inverse[i][img] != -1)
        sys_fail("system '" + s.name + "': interval [0," + bot.label(a_of[i]) +
                 "] does not map bijectively onto fiber " + s.index_labels[i]);
      inverse[i][img] = x;
    }
    for (int v : inverse[i])
      if (v < 0)
        sys_fail("system '" + s.name + "': interval [0," + bot.label(a_of[i]) +
                 "] does not map onto fiber " + s.index_labels[i]);
  }

  // global element bookkeeping mirrors plonka_sum's layout
  const int n = a.size();
  std::vector<std::pair<int, int>> fiber_of(n);
  std::vector<std::vector<int>> global(k);
  {
    int e = 0;
    for (int i = 0; i < k; ++i) {
      global[i].resize(s.fibers[i].size());
      for (int x = 0; x < s.fibers[i].size(); ++x, ++e) {
        fiber_of[e] = {i, x};
        global[i][x] = e;
      }
    }
  }
  a.signature = Signature::Full;
  a.j2_table.resize(n);
  for (int e = 0; e < n; ++e) {
    auto [i, x] = fiber_of[e];
    a.j2_table[e] = global[s.bottom][inverse[i][x]];
  }
  a.j0_table.resize(n);
  a.j1_table.resize(n);
  for (int e = 0; e < n; ++e) {
    a.j0_table[e] = a.j2_table[a.neg_table[e]];
    a.j1_table[e] = a.neg_table[a.or_table[a.j2_table[e] * n + a.j0_table[e]]];
  }
  a.finalize();
  return a;
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

const std::vector<std::pair<const char*, QuasiIdentity>>& ibsl_identities() {
  static const auto* v = [] {
    auto mk = [](const char* text) { return parse_quasi_identity(text); };
    return new std::vector<std::pair<const char*, QuasiIdentity>>{
        {"I1", mk("x | x = x")},
        {"I2", mk("x | y = y | x")},
        {"I3", mk("x | (y | z) = (x | y) | z")},
        {"I4", mk("~~x = x")},
        {"I5", mk("x & y = ~(~x | ~y)")},
        {"I6", mk("x & (~x | y) = x & y")},
        {"I7", mk("0 | x = x")},
        {"I8", mk("1 = ~0")},
    };
  }();
  return *v;
}

}  // namespace

PlonkaDecomposition decompose(const FiniteAlgebra& a) {
  const int n = a.size();
  FiniteAlgebra reduct = a.has_j() ? a.boolean_reduct() : a;
  for (const auto& [id, q] : ibsl_identities()) {
    CheckResult r = holds_quasi_identity(reduct, q);
    if (!r.holds)
      throw algebra_error("'" + a.name + "' is not an involutive bisemilattice: " +
                          std::string(id) + " fails");
  }
  int fixpoints = 0;
  for (int x = 0; x < n; ++x)
    if (a.neg(x) == x) ++fixpoints;
  if (fixpoints > 1)
    throw algebra_error("'" + a.name + "' has " + std::to_string(fixpoints) +
                        " negation fixpoints; at most one is allowed");

  // mutual absorption puts two elements in the same fiber
  auto same_fiber = [&](int x, int y) {
    return a.meet(x, a.join(x, y)) == x && a.meet(y, a.join(y, x)) == y;
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (same_fiber(x, y) && same_fiber(y, z) && !same_fiber(x, z))
          throw algebra_error("'" + a.name + "': the same-fiber relation is not transitive");

  std::vector<int> cls(n, -1);
  std::vector<std::vector<int>> members;
  // the class of the constants comes first
  {
    std::vector<int> order;
    order.push_back(a.zero);
    for (int x = 0; x < n; ++x)
      if (x != a.zero) order.push_back(x);
    for (int x : order) {
      if (cls[x] >= 0) continue;
      int id = static_cast<int>(members.size());
      members.push_back({});
      for (int y = 0; y < n; ++y)
        if (cls[y] < 0 && same_fiber(x, y)) {
          cls[y] = id;
          members[id].push_back(y);
        }
    }
  }
  const int k = static_cast<int>(members.size());

  PlonkaDecomposition d;
  d.source = a;
  SemilatticeDirectSystem& s = d.system;
  s.name = a.name;
  s.bottom = 0;
  for (int i = 0; i < k; ++i) s.index_labels.push_back("i" + std::to_string(i));
  s.join_table.assign(k * k, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int i = cls[x], j = cls[y], m = cls[a.join(x, y)];
      int& slot = s.join_table[i * k + j];
      if (slot == -1) slot = m;
      else if (slot != m)
        throw algebra_error("'" + a.name + "': the join of two fibers is not well defined");
    }
  for (int i = 0; i < k; ++i)
    if (s.joined(0, i) != i)
      throw algebra_error("'" + a.name + "': the fiber of the constants is not the least index");

  std::vector<int> local_of(n, -1);
  for (int i = 0; i < k; ++i)
    for (std::size_t x = 0; x < members[i].size(); ++x) local_of[members[i][x]] = (int)x;
  d.fiber_of.resize(n);
  for (int x = 0; x < n; ++x) d.fiber_of[x] = {cls[x], local_of[x]};

  for (int i = 0; i < k; ++i) {
    FiniteAlgebra f;
    f.name = a.name + "_" + s.index_labels[i];
    f.signature = Signature::Boolean;
    const auto& mem = members[i];
    const int m = static_cast<int>(mem.size());
    for (int x : mem) f.elements.push_back(a.label(x));
    for (int x : mem) {
      if (cls[a.neg(x)] != i)
        throw algebra_error("'" + a.name + "': fiber " + s.index_labels[i] +
                            " is not closed under negation");
    }
    f.neg_table.resize(m);
    f.or_table.resize(m * m);
    f.and_table.resize(m * m);
    int top = mem[0], bottom_el = mem[0];
    for (int x : mem) {
      top = a.join(top, x);
      bottom_el = a.meet(bottom_el, x);
    }
    if (cls[top] != i || cls[bottom_el] != i)
      throw algebra_error("'" + a.name + "': fiber " + s.index_labels[i] +
                          " is not closed under join/meet");
    f.zero = local_of[bottom_el];
    f.one = local_of[top];
    for (int x = 0; x < m; ++x) {
      f.neg_table[x] = local_of[a.neg(mem[x])];
      for (int y = 0; y < m; ++y) {
        f.or_table[x * m + y] = local_of[a.join(mem[x], mem[y])];
        f.and_table[x * m + y] = local_of[a.meet(mem[x], mem[y])];
      }
    }
    f.finalize();
    s.fibers.push_back(std::move(f));
  }

  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j || !s.leq(i, j)) continue;
      // p_ij(x) = x & (x | b) for any b in fiber j; all choices must agree
      HomMap h(members[i].size(), -1);
      for (std::size_t xi = 0; xi < members[i].size(); ++xi) {
        int x = members[i][xi];
        int image = -1;
        for (int b : members[j]) {
          int v = a.meet(x, a.join(x, b));
          if (cls[v] != j)
            throw algebra_error("'" + a.name + "': projection of " + a.label(x) +
                                " lands outside fiber " + s.index_labels[j]);
          if (image == -1) image = v;
          else if (image != v)
            throw algebra_error("'" + a.name + "': projection onto fiber " + s.index_labels[j] +
                                " depends on the choice of target element");
        }
        h[xi] = local_of[image];
      }
      s.homs[{i, j}] = std::move(h);
    }
  s.validate();

  d.designated.resize(k, -1);
  d.from_j = a.has_j();
  if (d.from_j) {
    for (int i = 0; i < k; ++i) {
      int top_global = members[i][s.fibers[i].one];
      int ai = a.j(2, top_global);
      if (cls[ai] != 0)
        throw algebra_error("'" + a.name + "': J2 of a fiber top lies outside the bottom fiber");
      d.designated[i] = local_of[ai];
      s.designated[i] = d.designated[i];
    }
    ConditionReport report = verify_decomposition_conditions(d);
    if (!report.all_ok()) {
      std::string msg = "'" + a.name + "' fails the decomposition conditions:";
      for (const auto& f : report.failures()) msg += "\n  " + f;
      throw algebra_error(msg);
    }
  } else {
    for (int i = 0; i < k; ++i) {
      d.designated[i] = kernel_generator(s, i);
      s.designated[i] = d.designated[i];
    }
  }
  return d;
}

bool ConditionReport::all_ok() const {
  for (const auto& i : items)
    if (!i.ok) return false;
  return true;
}

std::vector<std::string> ConditionReport::failures() const {
  std::vector<std::string> out;
  for (const auto& i : items)
    if (!i.ok) out.push_back(i.check + (i.detail.empty() ? "" : ": " + i.detail));
  return out;
}

ConditionReport verify_decomposition_conditions(const PlonkaDecomposition& d) {
  ConditionReport report;
  const SemilatticeDirectSystem& s = d.system;
  const FiniteAlgebra& bot = s.fibers[s.bottom];
  const int k = s.count();
  auto item = [&](const std::string& check, bool ok, std::string detail = "") {
    report.items.push_back({check, ok, std::move(detail)});
  };

  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j || !s.leq(i, j)) continue;
      item("hom " + s.index_labels[i] + "->" + s.index_labels[j] + " surjective",
           is_surjective(s.homs.at({i, j}), s.fibers[j].size()));
    }
  for (int i = 0; i < k; ++i) {
    if (i == s.bottom) continue;
    item("hom " + s.index_labels[s.bottom] + "->" + s.index_labels[i] + " not injective",
         !is_injective(s.homs.at({s.bottom, i})));
  }

  for (int i = 0; i < k; ++i) {
    // the kernel filter, its principal generator, and the interval map
    std::vector<int> filter;
    for (int x = 0; x < bot.size(); ++x)
      if (s.push(s.bottom, i, x) == s.fibers[i].one) filter.push_back(x);
    int g = -1;
    for (int x : filter) g = g < 0 ? x : bot.meet(g, x);
    bool principal = g >= 0;
    if (principal)
      for (int x = 0; x < bot.size(); ++x) {
        bool in_filter = std::find(filter.begin(), filter.end(), x) != filter.end();
        if (in_filter != bot.leq(g, x)) principal = false;
      }
    item("kernel filter of p_{i0 " + s.index_labels[i] + "} is the principal filter of " +
             (g >= 0 ? bot.label(g) : std::string("?")),
         principal);
    bool interval_iso = g >= 0;
    if (g >= 0) {
      std::vector<int> interval = interval_elements(bot, g);
      std::set<int> images;
      for (int x : interval) images.insert(s.push(s.bottom, i, x));
      interval_iso = interval.size() == images.size() &&
                     static_cast<int>(images.size()) == s.fibers[i].size();
    }
    item("interval [0," + (g >= 0 ? bot.label(g) : std::string("?")) +
             "] maps bijectively onto fiber " + s.index_labels[i],
         interval_iso);
    item("kernel-filter generator equals the designated element of " + s.index_labels[i],
         g == d.designated[i],
         g >= 0 && d.designated[i] >= 0
             ? bot.label(g) + " vs " + bot.label(d.designated[i])
             : "");
  }

  item("designated element of the bottom index is 1", d.designated[s.bottom] == bot.one);
  {
    bool antitone = true, injective = true;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        if (d.designated[i] == d.designated[j]) injective = false;
        if (s.leq(i, j) &&
            !(bot.leq(d.designated[j], d.designated[i]) && d.designated[i] != d.designated[j]))
          antitone = false;
      }
    item("designated elements pairwise distinct", injective);
    item("designated elements strictly antitone along the index order", antitone);
  }

  if (d.from_j && d.source.has_j()) {
    const FiniteAlgebra& a = d.source;
    const int n = a.size();
    std::vector<std::vector<int>> members(k);
    for (int x = 0; x < n; ++x) members[d.fiber_of[x].first].push_back(x);
    auto global_of = [&](int index, int local) {
      for (int x = 0; x < n; ++x)
        if (d.fiber_of[x] == std::pair<int, int>(index, local)) return x;
      return -1;
    };
    bool right_inverse = true, j2_in_interval = true;
    for (int x = 0; x < n; ++x) {
      auto [i, lx] = d.fiber_of[x];
      int j2x = a.j(2, x);
      if (d.fiber_of[j2x].first != s.bottom) {
        j2_in_interval = false;
        continue;
      }
      int back = s.push(s.bottom, i, d.fiber_of[j2x].second);
      right_inverse &= back == lx;
      j2_in_interval &= bot.leq(d.fiber_of[j2x].second, d.designated[i]);
    }
    item("p_{i0 i} . J2 is the identity on every fiber", right_inverse);
    item("J2 maps fiber i into the interval [0,a_i]", j2_in_interval);

    bool j1_const = true, j1_bottom_zero = true, j1_fix_one = true, j1_meet = true;
    for (int i = 0; i < k; ++i) {
      int first = a.j(1, members[i][0]);
      for (int x : members[i]) {
        if (a.j(1, x) != first) j1_const = false;
        if (i == s.bottom && a.j(1, x) != a.zero) j1_bottom_zero = false;
        if (a.neg(x) == x && a.j(1, x) != a.one) j1_fix_one = false;
        // p_{i0 i}(J1 x) = x & ~x
        int j1x = a.j(1, x);
        if (d.fiber_of[j1x].first == s.bottom) {
          int pushed = global_of(i, s.push(s.bottom, i, d.fiber_of[j1x].second));
          if (pushed != a.meet(x, a.neg(x))) j1_meet = false;
        } else {
          j1_meet = false;
        }
      }
    }
    item("J1 is constant on every fiber", j1_const);
    item("J1 is 0 on the bottom fiber", j1_bottom_zero);
    item("J1 of a fixpoint is 1", j1_fix_one);
    item("p_{i0 i}(J1 a) = a & ~a", j1_meet);

    bool pushdown = true;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i == j || !s.leq(i, j)) continue;
        for (int x : members[i]) {
          int px = global_of(j, s.push(i, j, d.fiber_of[x].second));
          if (!a.leq(a.j(2, px), a.j(2, x))) pushdown = false;
        }
      }
    item("J2(p_ij(a)) <= J2(a) for i <= j", pushdown);

    bool derived = true;
    for (int x = 0; x < n; ++x) {
      if (a.j(0, x) != a.j(2, a.neg(x))) derived = false;
      if (a.j(1, x) != a.neg(a.join(a.j(2, x), a.j(2, a.neg(x))))) derived = false;
    }
    item("J0 and J1 agree with their J2-derived definitions", derived);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Enumeration of all Bochvar algebras up to a size bound

namespace {

FiniteAlgebra boolean_from_atoms(int atoms) {
  FiniteAlgebra b;
  b.name = "b" + std::to_string(1 << atoms);
  b.signature = Signature::Boolean;
  const int n = 1 << atoms;
  const int full = n - 1;
  for (int m = 0; m < n; ++m) {
    if (m == 0) b.elements.push_back("0");
    else if (m == full) b.elements.push_back("1");
    else b.elements.push_back("e" + std::to_string(m));
  }
  b.zero = 0;
  b.one = full;
  b.neg_table.resize(n);
  b.or_table.resize(n * n);
  b.and_table.resize(n * n);
  for (int x = 0; x < n; ++x) {
    b.neg_table[x] = full ^ x;
    for (int y = 0; y < n; ++y) {
      b.or_table[x * n + y] = x | y;
      b.and_table[x * n + y] = x & y;
    }
  }
  b.finalize();
  return b;
}

struct Shape {
  int count;
  std::vector<int> join;  // row-major, index 0 is the bottom
};

const std::vector<Shape>& semilattice_shapes() {
  static const std::vector<Shape> shapes = {
      {1, {0}},
      {2, {0, 1, 1, 1}},
      {3, {0, 1, 2, 1, 1, 2, 2, 2, 2}},
      {4, {0, 1, 2, 3, 1, 1, 2, 3, 2, 2, 2, 3, 3, 3, 3, 3}},           // chain
      {4, {0, 1, 2, 3, 1, 1, 3, 3, 2, 3, 2, 3, 3, 3, 3, 3}},           // diamond
  };
  return shapes;
}

FiniteAlgebra trivial_algebra() {
  FiniteAlgebra t;
  t.name = "trivial";
  t.signature = Signature::Full;
  t.elements = {"e"};
  t.zero = t.one = 0;
  t.neg_table = {0};
  t.j0_table = {0};
  t.j1_table = {0};
  t.j2_table = {0};
  t.or_table = {0};
  t.and_table = {0};
  t.finalize();
  return t;
}

int popcount(int m) {
  int c = 0;
  while (m) {
    c += m & 1;
    m >>= 1;
  }
  return c;
}

FiniteAlgebra build_from_assignment(const FiniteAlgebra& bottom_alg, const Shape& shape,
                                    const std::vector<int>& a_masks) {
  SemilatticeDirectSystem s;
  const int k = shape.count;
  s.join_table = shape.join;
  s.bottom = 0;
  for (int i = 0; i < k; ++i) s.index_labels.push_back("i" + std::to_string(i));
  std::vector<std::vector<int>> submasks(k);
  for (int i = 0; i < k; ++i) {
    if (i == 0) {
      s.fibers.push_back(bottom_alg);
      for (int m = 0; m < bottom_alg.size(); ++m) submasks[0].push_back(m);
      continue;
    }
    FiniteAlgebra f;
    f.name = "f" + std::to_string(i);
    f.signature = Signature::Boolean;
    const int ai = a_masks[i];
    for (int m = 0; m < bottom_alg.size(); ++m)
      if ((m & ai) == m) submasks[i].push_back(m);
    const int fn = static_cast<int>(submasks[i].size());
    auto local = [&](int mask) {
      return static_cast<int>(std::lower_bound(submasks[i].begin(), submasks[i].end(), mask) -
                              submasks[i].begin());
    };
    for (int m : submasks[i])
      f.elements.push_back("f" + std::to_string(i) + "_" + std::to_string(m));
    f.zero = local(0);
    f.one = local(ai);
    f.neg_table.resize(fn);
    f.or_table.resize(fn * fn);
    f.and_table.resize(fn * fn);
    for (int x = 0; x < fn; ++x) {
      f.neg_table[x] = local(ai & ~submasks[i][x]);
      for (int y = 0; y < fn; ++y) {
        f.or_table[x * fn + y] = local(submasks[i][x] | submasks[i][y]);
        f.and_table[x * fn + y] = local(submasks[i][x] & submasks[i][y]);
      }
    }
    f.finalize();
    s.fibers.push_back(std::move(f));
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j || s.joined(i, j) != j) continue;
      HomMap h;
      for (int m : submasks[i]) {
        int target = m & a_masks[j];
        h.push_back(static_cast<int>(
            std::lower_bound(submasks[j].begin(), submasks[j].end(), target) -
            submasks[j].begin()));
      }
      s.homs[{i, j}] = std::move(h);
    }
  for (int i = 0; i < k; ++i) s.designated[i] = a_masks[i];
  s.name = "sum";
  return attach_J(s);
}

}  // namespace

std::vector<FiniteAlgebra> enumerate_bca(int max_size) {
  if (max_size < 1) return {};
  if (max_size > 12) throw algebra_error("enumeration guard: max size is 12");
  std::vector<FiniteAlgebra> found;
  auto consider = [&](FiniteAlgebra a) {
    for (const FiniteAlgebra& b : found)
      if (b.size() == a.size() && find_isomorphism(a, b)) return;
    found.push_back(std::move(a));
  };
  consider(trivial_algebra());
  for (int atoms = 1; (1 << atoms) <= max_size; ++atoms) {
    FiniteAlgebra bottom = boolean_from_atoms(atoms);
    const int full = (1 << atoms) - 1;
    for (const Shape& shape : semilattice_shapes()) {
      const int k = shape.count;
      std::vector<int> a_masks(k, -1);
      a_masks[0] = full;
      std::function<void(int, int)> rec = [&](int idx, int used) {
        if (used > max_size) return;
        if (idx == k) {
          consider(build_from_assignment(bottom, shape, a_masks));
          return;
        }
        for (int m = 0; m <= full; ++m) {
          bool ok = true;
          for (int prev = 0; prev < idx && ok; ++prev) {
            if (a_masks[prev] == m) ok = false;
            // strict antitone along the order (the numbering extends it)
            if (ok && shape.join[prev * k + idx] == idx && ((m & a_masks[prev]) != m || m == a_masks[prev]))
              ok = false;
            if (ok && shape.join[prev * k + idx] == prev)
              ok = false;  // idx below an earlier index cannot happen in our numbering
          }
          if (!ok) continue;
          a_masks[idx] = m;
          rec(idx + 1, used + (1 << popcount(m)));
          a_masks[idx] = -1;
        }
      };
      rec(1, bottom.size());
    }
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const FiniteAlgebra& x, const FiniteAlgebra& y) {
                     return x.size() < y.size();
                   });
  // name by the known algebras where possible, otherwise by fiber sizes
  std::set<std::string> names;
  for (FiniteAlgebra& a : found) {
    std::string name;
    if (a.size() == 1) name = "trivial";
    for (const char* builtin : {"b2", "b4", "wke", "b4+b2"}) {
      const FiniteAlgebra& b = builtin_algebra(builtin);
      if (a.size() == b.size() && find_isomorphism(a, b)) {
        name = builtin;
        break;
      }
    }
    if (name.empty()) {
      PlonkaDecomposition d = decompose(a);
      name = "b" + std::to_string(d.system.fibers[0].size());
      for (int i = 1; i < d.system.count(); ++i)
        name += "+b" + std::to_string(d.system.fibers[i].size());
    }
    std::string candidate = name;
    int suffix = 2;
    while (!names.insert(candidate).second) candidate = name + "#" + std::to_string(suffix++);
    a.name = candidate;
  }
  return found;
}

// ---------------------------------------------------------------------------
// System files

SemilatticeDirectSystem parse_system(std::istream& in) {
  std::vector<std::string> raw_lines;
  std::string raw;
  while (std::getline(in, raw)) raw_lines.push_back(raw);

  auto tokens_of = [](const std::string& line) {
    std::string s = line;
    auto hash = s.find('#');
    if (hash != std::string::npos) s.erase(hash);
    std::istringstream ls(s);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    return toks;
  };

  SemilatticeDirectSystem s;
  std::size_t li = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw parse_error(msg, static_cast<int>(li), 1);
  };
  auto next = [&]() -> std::vector<std::string> {
    while (li < raw_lines.size()) {
      auto toks = tokens_of(raw_lines[li]);
      ++li;
      if (!toks.empty()) return toks;
    }
    return {};
  };

  auto header = next();
  if (header.size() != 2 || header[0] != "system") fail("expected 'system <name>'");
  s.name = header[1];
  auto idx = next();
  if (idx.size() < 2 || idx[0] != "index") fail("expected 'index <i1> ...'");
  s.index_labels.assign(idx.begin() + 1, idx.end());
  const int k = s.count();
  auto bot = next();
  if (bot.size() != 2 || bot[0] != "bottom") fail("expected 'bottom <i>'");
  s.bottom = s.index_of(bot[1]);
  if (s.bottom < 0) fail("unknown index '" + bot[1] + "'");
  auto join_hdr = next();
  if (join_hdr.size() != 1 || join_hdr[0] != "join") fail("expected 'join'");
  for (int r = 0; r < k; ++r) {
    auto row = next();
    if (static_cast<int>(row.size()) != k) fail("join row needs " + std::to_string(k) + " entries");
    for (const auto& lbl : row) {
      int j = s.index_of(lbl);
      if (j < 0) fail("unknown index '" + lbl + "'");
      s.join_table.push_back(j);
    }
  }
  s.fibers.resize(k);
  std::vector<bool> have_fiber(k, false);

  while (true) {
    auto toks = next();
    if (toks.empty()) fail("missing 'end'");
    if (toks[0] == "end") break;
    if (toks[0] == "fiber") {
      if (toks.size() < 3) fail("expected 'fiber <i> file <path>' or 'fiber <i> inline'");
      int i = s.index_of(toks[1]);
      if (i < 0) fail("unknown index '" + toks[1] + "'");
      if (toks[2] == "file") {
        if (toks.size() != 4) fail("expected 'fiber <i> file <path>'");
        std::ifstream f(toks[3]);
        if (!f) fail("cannot open fiber file '" + toks[3] + "'");
        s.fibers[i] = parse_algebra(f);
      } else if (toks[2] == "inline") {
        std::string block;
        bool closed = false;
        while (li < raw_lines.size()) {
          auto peek = tokens_of(raw_lines[li]);
          block += raw_lines[li] + "\n";
          ++li;
          if (!peek.empty() && peek[0] == "end") {
            closed = true;
            break;
          }
        }
        if (!closed) fail("inline fiber block missing its 'end'");
        s.fibers[i] = parse_algebra_text(block);
      } else {
        fail("expected 'file' or 'inline'");
      }
      have_fiber[i] = true;
      continue;
    }
    if (toks[0] == "hom") {
      if (toks.size() < 4 || toks[3] != ":") fail("expected 'hom <i> <j> : <e>-><e'> ...'");
      int i = s.index_of(toks[1]), j = s.index_of(toks[2]);
      if (i < 0 || j < 0) fail("unknown index in hom line");
      if (!have_fiber[i] || !have_fiber[j]) fail("hom line must follow both fiber blocks");
      HomMap h(s.fibers[i].size(), -1);
      for (std::size_t p = 4; p < toks.size(); ++p) {
        auto arrow = toks[p].find("->");
        if (arrow == std::string::npos) fail("expected '<e>-><e'>' in hom line");
        int from = s.fibers[i].index_of(toks[p].substr(0, arrow));
        int to = s.fibers[j].index_of(toks[p].substr(arrow + 2));
        if (from < 0 || to < 0) fail("unknown element in hom line");
        h[from] = to;
      }
      for (int v : h)
        if (v < 0) fail("hom " + toks[1] + "->" + toks[2] + " leaves elements unmapped");
      s.homs[{i, j}] = std::move(h);
      continue;
    }
    if (toks[0] == "designate") {
      if (toks.size() != 3) fail("expected 'designate <i> <elem>'");
      int i = s.index_of(toks[1]);
      if (i < 0) fail("unknown index '" + toks[1] + "'");
      if (!have_fiber[s.bottom]) fail("designate must follow the bottom fiber block");
      int e = s.fibers[s.bottom].index_of(toks[2]);
      if (e < 0) fail("unknown bottom-fiber element '" + toks[2] + "'");
      s.designated[i] = e;
      continue;
    }
    fail("unexpected line '" + toks[0] + "'");
  }
  for (int i = 0; i < k; ++i)
    if (!have_fiber[i]) fail("missing fiber for index '" + s.index_labels[i] + "'");
  s.validate();
  return s;
}

SemilatticeDirectSystem parse_system_text(const std::string& text) {
  std::istringstream in(text);
  return parse_system(in);
}

SemilatticeDirectSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw algebra_error("cannot open system file '" + path + "'");
  return parse_system(in);
}

std::string write_system(const SemilatticeDirectSystem& s) {
  std::ostringstream out;
  out << "system " << s.name << "\n";
  out << "index";
  for (const auto& l : s.index_labels) out << ' ' << l;
  out << "\nbottom " << s.index_labels[s.bottom] << "\njoin\n";
  const int k = s.count();
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) out << (j ? " " : "") << s.index_labels[s.joined(i, j)];
    out << "\n";
  }
  for (int i = 0; i < k; ++i) {
    out << "fiber " << s.index_labels[i] << " inline\n";
    out << write_algebra(s.fibers[i]);
  }
  for (const auto& [key, h] : s.homs) {
    auto [i, j] = key;
    out << "hom " << s.index_labels[i] << ' ' << s.index_labels[j] << " :";
    for (std::size_t x = 0; x < h.size(); ++x)
      out << ' ' << s.fibers[i].label(static_cast<int>(x)) << "->" << s.fibers[j].label(h[x]);
    out << "\n";
  }
  for (const auto& [i, e] : s.designated)
    out << "designate " << s.index_labels[i] << ' '
        << s.fibers[s.bottom].label(e) << "\n";
  out << "end\n";
  return out.str();
}

std::string write_decomposition(const PlonkaDecomposition& d) { return write_system(d.system); }

}  // namespace bochvar
