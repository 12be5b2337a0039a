"""Shared fixtures data: corpus loading and the worked scheduling instance."""

from __future__ import annotations

from importlib.resources import files

from fuzzyaso import FuzzyInterpretation, parse_program
from fuzzyaso.grounder import ground_program
from fuzzyaso.kernel import eval_annotation

CORPUS = files("fuzzyaso") / "corpus"
CORPUS_NAMES = ("intro", "intro_neutral", "constraints", "scheduling")


def corpus_path(name: str):
    return CORPUS / f"{name}.faso"


def load(name: str):
    return parse_program(corpus_path(name).read_text())


def load_ground(name: str):
    return ground_program(load(name))


def interp(text: str) -> FuzzyInterpretation:
    """Build an interpretation from ``"a:0.5, b(c):1"``."""
    if not text.strip():
        return FuzzyInterpretation()
    prog = parse_program(". ".join(x.strip() for x in text.split(", ")) + ".")
    return FuzzyInterpretation({r.head[0].literal: eval_annotation(r.head[0].annotation) for r in prog.gen})


_COMMON = "course(c1):1, course(c2):1"

SCHEDULING_SETS = {
    "I1": interp(
        "teaches(i1,c1):0.9, teaches(i2,c2):0.7, at(s1,c1):0.5, at(s2,c2):0.2, "
        f"in(r1,c1):0.8, in(r1,c2):0.3, {_COMMON}"
    ),
    "I2": interp(
        "teaches(i1,c1):0.9, teaches(i2,c2):0.7, at(s2,c1):0.5, at(s1,c2):0.9, "
        f"in(r1,c1):0.8, in(r1,c2):0.3, {_COMMON}"
    ),
    "I3": interp(
        "teaches(i1,c2):0.5, teaches(i2,c1):0.4, at(s2,c2):0.5, at(s1,c1):0.9, "
        f"in(r1,c2):0.8, in(r1,c1):0.3, {_COMMON}"
    ),
    "I4": interp(
        "teaches(i1,c2):0.5, teaches(i2,c1):0.4, at(s1,c2):0.5, at(s2,c1):0.2, "
        f"in(r1,c2):0.8, in(r1,c1):0.3, {_COMMON}"
    ),
}

SCHEDULING_RULES = {
    "r1": "#prefer teaches(i1,c1):0.9 > teaches(i1,c2):0.5.",
    "r2": "#prefer teaches(i2,c2):0.7 > teaches(i2,c1):0.4.",
    "r3": "#prefer at(s1,c1):0.5 || at(s2,c1):0.5 <- teaches(i1,c1):0.9.",
    "r4": "#prefer at(s1,c2):0.5 || at(s2,c2):0.5 <- teaches(i1,c2):0.5.",
    "r5": "#prefer at(s1,c1):0.9 > at(s2,c1):0.2 <- teaches(i2,c1):0.4.",
    "r6": "#prefer at(s1,c2):0.9 > at(s2,c2):0.2 <- teaches(i2,c2):0.7.",
    "r7": "#prefer in(r1,c1):0.8 <- teaches(i1,c1):0.9.",
    "r8": "#prefer in(r1,c2):0.8 <- teaches(i1,c2):0.5.",
    "r9": "#prefer in(r1,c1):0.3 <- teaches(i2,c1):0.4.",
    "r10": "#prefer in(r1,c2):0.3 <- teaches(i2,c2):0.7.",
}

# rows I1..I4, columns r1..r10; "irr" or the satisfied combination index
SAT_TABLE = {
    "I1": ["1", "1", "1", "irr", "irr", "2", "1", "irr", "irr", "1"],
    "I2": ["1", "1", "1", "irr", "irr", "1", "1", "irr", "irr", "1"],
    "I3": ["2", "2", "irr", "1", "1", "irr", "irr", "1", "1", "irr"],
    "I4": ["2", "2", "irr", "1", "2", "irr", "irr", "1", "1", "irr"],
}


def rule_shape(rule):
    return (rule.combos, rule.pos_body, rule.neg_body)


def scheduling_rule(label: str):
    return parse_program(SCHEDULING_RULES[label]).pref[0]


def label_ground_rules(pref_rules) -> dict:
    """Map r1..r10 to the ground rules with the same content."""
    by_shape = {rule_shape(r): r for r in pref_rules}
    return {label: by_shape[rule_shape(scheduling_rule(label))] for label in SCHEDULING_RULES}


def label_answer_sets(sets) -> dict:
    inverse = {v: k for k, v in SCHEDULING_SETS.items()}
    return {inverse[a]: a for a in sets}


# criterion number -> "PASS|FAIL ..." line, filled by the acceptance module
ACCEPTANCE: dict = {}
