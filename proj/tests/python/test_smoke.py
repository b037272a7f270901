import pytest


def test_parse_and_render(core):
    assert core.parse("x -> y") == "~x | y"
    assert core.parse("J2 x | ~J2 x") == "J2(x) | ~J2(x)"
    with pytest.raises(ValueError):
        core.parse("x |")


def test_external_formulas(core):
    assert core.is_external("J2(x) & J0(y | x)")
    assert not core.is_external("x | J2(x)")
    assert core.eliminate_j01("J0(x)") == "J2(~x)"


def test_evaluate(core):
    assert core.evaluate("wke", "J1(x)", {"x": "H"}) == "1"
    assert core.evaluate("wke", "x | y", {"x": "1", "y": "H"}) == "H"


def test_check(core):
    holds = core.check("wke", "J2 x | ~J2 x = 1")
    assert holds["holds"]
    fails = core.check("wke", "J1 x = 1 => y = 1")
    assert not fails["holds"]
    assert fails["counterexample"] == {"x": "H", "y": "0"}


def test_consequence_and_theorems(core):
    assert core.consequence("x, x->y |- y")["holds"]
    assert not core.consequence("J1(x) |- y")["holds"]
    assert core.consequence("J1(x) |- y", matrix="nbe")["holds"]
    assert core.is_theorem("J2 x | ~J2 x")
    assert not core.is_theorem("x | ~x", matrix="nbe")


def test_classify(core):
    assert core.classify("wke")["verdict"] == "BCA_proper"
    assert core.classify("b4+b2")["verdict"] == "NBCA_proper"
    assert core.classify("b4")["verdict"] == "JBA"


def test_compose_decompose_roundtrip(core):
    system = core.decompose("b4+b2")
    rebuilt = core.compose(system)
    assert core.classify(rebuilt)["verdict"] == "NBCA_proper"


def test_retract(core):
    r = core.retract("b4+b2")
    assert r["r"]["a"] == "1"
    assert r["r"]["na"] == "0"
    assert r["iota"] == {"0": "0", "1": "1"}


def test_enumerate(core):
    algebras = core.enumerate_algebras(4)
    assert [a["name"] for a in algebras] == ["trivial", "b2", "wke", "b4"]


def test_amalgamate(core):
    result = core.amalgamate(
        "b2", "wke", "wke", {"0": "0", "1": "1"}, {"0": "0", "1": "1"}, cls="bca"
    )
    assert result["success"]
    assert len(result["h"]) == 3


def test_check_derivation(core):
    proof = """derive example
1 axiom A19 : J2 x -> (J2 x -> J2 x)
end
"""
    assert core.check_derivation(proof)["valid"]


def test_run_corpus(core):
    report = core.run_corpus(3)
    assert report["mismatches"] == 0
    assert report["claims"] == 84
