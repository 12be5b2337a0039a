"""Fuzzy answer set optimization: solving, preference ranking and translation."""

from .kernel import (
    AConst,
    AFunc,
    And,
    AnnotatedLiteral,
    Atom,
    AVar,
    Const,
    FuzzyInterpretation,
    GeneratorRule,
    Literal,
    Naf,
    Or,
    Pos,
    PreferenceRule,
    Program,
    Var,
    eval_annotation,
    format_grade,
    grade_of,
)
from .parser import parse_program, render_program

__version__ = "0.1.0"

__all__ = [
    "AConst",
    "AFunc",
    "And",
    "AnnotatedLiteral",
    "Atom",
    "AVar",
    "Const",
    "FuzzyInterpretation",
    "GeneratorRule",
    "Literal",
    "Naf",
    "Or",
    "Pos",
    "PreferenceRule",
    "Program",
    "Var",
    "eval_annotation",
    "format_grade",
    "grade_of",
    "parse_program",
    "render_program",
]
