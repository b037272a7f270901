#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bochvar/amalgam.hpp"
#include "bochvar/classify.hpp"
#include "bochvar/corpus.hpp"
#include "bochvar/hilbert.hpp"
#include "bochvar/matrix.hpp"
#include "bochvar/plonka.hpp"

namespace py = pybind11;
using namespace bochvar;

namespace {

// accepts a built-in name, a path, or inline algebra text
FiniteAlgebra algebra_from(const std::string& source) {
  if (source.find('\n') != std::string::npos) return parse_algebra_text(source);
  return load_algebra(source);
}

const LogicalMatrix& matrix_from(const std::string& name) {
  if (name == "be") return matrix_be();
  if (name == "nbe") return matrix_nbe();
  throw algebra_error("unknown matrix '" + name + "' (use be or nbe)");
}

py::dict valuation_dict(const FiniteAlgebra& a, const Valuation& v) {
  py::dict out;
  for (const auto& [var, e] : v) out[py::str(var)] = a.label(e);
  return out;
}

Valuation valuation_from(const FiniteAlgebra& a, const py::dict& bindings) {
  Valuation v;
  for (const auto& item : bindings) {
    std::string label = py::cast<std::string>(item.second);
    int e = a.index_of(label);
    if (e < 0) throw algebra_error("unknown element '" + label + "'");
    v[py::cast<std::string>(item.first)] = e;
  }
  return v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "workbench for Bochvar external logic and Bochvar algebras";

  m.def("parse", [](const std::string& text) { return render_term(parse_term(text)); },
        py::arg("term"), "parse a term and return its canonical rendering");

  m.def("is_external",
        [](const std::string& text) { return is_external(parse_term(text)); },
        py::arg("term"));

  m.def("eliminate_j01",
        [](const std::string& text) { return render_term(eliminate_J01(parse_term(text))); },
        py::arg("term"));

  m.def(
      "evaluate",
      [](const std::string& algebra, const std::string& term, const py::dict& bindings) {
        FiniteAlgebra a = algebra_from(algebra);
        return a.label(eval(a, parse_term(term), valuation_from(a, bindings)));
      },
      py::arg("algebra"), py::arg("term"), py::arg("bindings") = py::dict());

  m.def(
      "check",
      [](const std::string& algebra, const std::string& quasi_identity) {
        FiniteAlgebra a = algebra_from(algebra);
        CheckResult r = holds_quasi_identity(a, parse_quasi_identity(quasi_identity));
        py::dict out;
        out["holds"] = r.holds;
        if (!r.holds) out["counterexample"] = valuation_dict(a, r.counterexample);
        return out;
      },
      py::arg("algebra"), py::arg("quasi_identity"));

  m.def(
      "consequence",
      [](const std::string& query, const std::string& matrix) {
        const LogicalMatrix& m_ = matrix_from(matrix);
        Rule r = parse_rule(query);
        CheckResult res = bochvar::consequence(m_, r.premises, r.conclusion);
        py::dict out;
        out["holds"] = res.holds;
        if (!res.holds) out["counterexample"] = valuation_dict(m_.algebra, res.counterexample);
        return out;
      },
      py::arg("query"), py::arg("matrix") = "be");

  m.def(
      "is_theorem",
      [](const std::string& term, const std::string& matrix) {
        return is_theorem(matrix_from(matrix), parse_term(term));
      },
      py::arg("term"), py::arg("matrix") = "be");

  m.def(
      "classify",
      [](const std::string& algebra) {
        FiniteAlgebra a = algebra_from(algebra);
        Classification c = bochvar::classify(a);
        py::dict out;
        out["verdict"] = to_string(c.verdict);
        out["basis_membership"] = c.basis_membership;
        out["separation_membership"] = c.separation_membership;
        if (!c.reason.empty()) out["reason"] = c.reason;
        if (!c.witness.empty()) {
          out["witness_source"] = c.witness_source;
          py::dict w;
          const FiniteAlgebra& src = builtin_algebra(c.witness_source);
          for (int x = 0; x < src.size(); ++x)
            w[py::str(src.label(x))] = a.label(c.witness[x]);
          out["witness"] = w;
        }
        return out;
      },
      py::arg("algebra"));

  m.def(
      "decompose",
      [](const std::string& algebra) { return write_decomposition(decompose(algebra_from(algebra))); },
      py::arg("algebra"), "returns the system file text of the Plonka decomposition");

  m.def(
      "compose",
      [](const std::string& system_text, bool boolean_only) {
        SemilatticeDirectSystem s = parse_system_text(system_text);
        return write_algebra(boolean_only ? plonka_sum(s) : attach_J(s));
      },
      py::arg("system"), py::arg("boolean_only") = false,
      "builds the algebra over a system file text");

  m.def(
      "retract",
      [](const std::string& algebra) {
        FiniteAlgebra a = algebra_from(algebra);
        Retraction r = build_retraction(a);
        const FiniteAlgebra& b2 = builtin_algebra("b2");
        py::dict rmap, imap;
        for (int x = 0; x < a.size(); ++x) rmap[py::str(a.label(x))] = b2.label(r.r[x]);
        for (int x = 0; x < 2; ++x) imap[py::str(b2.label(x))] = a.label(r.iota[x]);
        py::dict out;
        out["r"] = rmap;
        out["iota"] = imap;
        return out;
      },
      py::arg("algebra"));

  m.def(
      "amalgamate",
      [](const std::string& a, const std::string& b, const std::string& c,
         const py::dict& i_map, const py::dict& j_map, const std::string& cls_name) {
        VFormation v;
        v.A = algebra_from(a);
        v.B = algebra_from(b);
        v.C = algebra_from(c);
        auto to_hom = [](const FiniteAlgebra& from, const FiniteAlgebra& to,
                         const py::dict& entries) {
          HomMap h(from.size(), -1);
          for (const auto& item : entries) {
            int x = from.index_of(py::cast<std::string>(item.first));
            int y = to.index_of(py::cast<std::string>(item.second));
            if (x < 0 || y < 0) throw algebra_error("unknown element in map");
            h[x] = y;
          }
          for (int e : h)
            if (e < 0) throw algebra_error("map leaves elements unassigned");
          return h;
        };
        v.i = to_hom(v.A, v.B, i_map);
        v.j = to_hom(v.A, v.C, j_map);
        QuasivarietyClass cls =
            cls_name == "nbca" ? QuasivarietyClass::NBCA : QuasivarietyClass::BCA;
        AmalgamResult r = bochvar::amalgamate(v, cls);
        py::dict out;
        out["success"] = r.success;
        if (!r.success) {
          out["failure"] = r.failure;
          return out;
        }
        out["algebra"] = write_algebra(r.D);
        py::dict h, k;
        for (int x = 0; x < v.B.size(); ++x) h[py::str(v.B.label(x))] = r.D.label(r.h[x]);
        for (int x = 0; x < v.C.size(); ++x) k[py::str(v.C.label(x))] = r.D.label(r.k[x]);
        out["h"] = h;
        out["k"] = k;
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("i"), py::arg("j"),
      py::arg("cls") = "bca");

  m.def(
      "enumerate_algebras",
      [](int max_size) {
        py::list out;
        for (const FiniteAlgebra& a : enumerate_bca(max_size)) {
          py::dict entry;
          entry["name"] = a.name;
          entry["size"] = a.size();
          entry["class"] = to_string(bochvar::classify(a).verdict);
          entry["algebra"] = write_algebra(a);
          out.append(entry);
        }
        return out;
      },
      py::arg("max_size") = 8);

  m.def(
      "check_derivation",
      [](const std::string& text) {
        Derivation d = parse_derivation_text(text);
        DerivationVerdict v = bochvar::check_derivation(d);
        py::dict out;
        out["valid"] = v.valid;
        if (v.valid) out["proves"] = render_term(d.steps.back().formula);
        else {
          out["failed_step"] = v.failed_step;
          out["reason"] = v.reason;
        }
        return out;
      },
      py::arg("derivation"));

  m.def(
      "run_corpus",
      [](int size_cap) {
        CorpusReport report = bochvar::run_corpus(size_cap);
        py::list outcomes;
        for (const ClaimOutcome& o : report.outcomes) {
          py::dict entry;
          entry["id"] = o.id;
          entry["algebra"] = o.algebra;
          entry["location"] = o.location;
          entry["holds"] = o.holds;
          entry["as_expected"] = o.as_expected;
          if (!o.detail.empty()) entry["detail"] = o.detail;
          outcomes.append(entry);
        }
        py::dict out;
        out["claims"] = report.claims;
        out["mismatches"] = report.mismatches;
        out["outcomes"] = outcomes;
        return out;
      },
      py::arg("size_cap") = 8);

  m.def("builtin_names", &builtin_names);
  m.def("write_algebra",
        [](const std::string& algebra) { return write_algebra(algebra_from(algebra)); },
        py::arg("algebra"));

  py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
  py::register_exception<algebra_error>(m, "AlgebraError", PyExc_ValueError);
}
