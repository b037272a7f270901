"""Workbench for Bochvar external logic and Bochvar algebras."""

from ._core import (
    AlgebraError,
    ParseError,
    amalgamate,
    builtin_names,
    check,
    check_derivation,
    classify,
    compose,
    consequence,
    decompose,
    eliminate_j01,
    enumerate_algebras,
    evaluate,
    is_external,
    is_theorem,
    parse,
    retract,
    run_corpus,
    write_algebra,
)

__all__ = [
    "AlgebraError",
    "ParseError",
    "amalgamate",
    "builtin_names",
    "check",
    "check_derivation",
    "classify",
    "compose",
    "consequence",
    "decompose",
    "eliminate_j01",
    "enumerate_algebras",
    "evaluate",
    "is_external",
    "is_theorem",
    "parse",
    "retract",
    "run_corpus",
    "write_algebra",
]
