"""Preference-rule satisfaction, pairwise comparison and ranking of answer sets."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .kernel import (
    And,
    AnnotatedLiteral,
    FuzzyInterpretation,
    Naf,
    Or,
    Pos,
    PreferenceRule,
    eval_annotation,
    grade_of,
)


@dataclass(frozen=True)
class SatOutcome:
    """``Sat(index)`` for a 1-based combination index, or ``IRR`` when index is None."""

    index: Optional[int] = None

    @property
    def irrelevant(self) -> bool:
        return self.index is None

    def __str__(self) -> str:
        return "irr" if self.index is None else str(self.index)


IRR = SatOutcome(None)


def Sat(index: int) -> SatOutcome:
    if index < 1:
        raise ValueError("combination indices start at 1")
    return SatOutcome(index)


class ComparisonOutcome(enum.Enum):
    FIRST_STRICT = "first_strict"
    SECOND_STRICT = "second_strict"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"

    def mirror(self) -> "ComparisonOutcome":
        if self is ComparisonOutcome.FIRST_STRICT:
            return ComparisonOutcome.SECOND_STRICT
        if self is ComparisonOutcome.SECOND_STRICT:
            return ComparisonOutcome.FIRST_STRICT
        return self

    @property
    def first_at_least(self) -> bool:
        return self in (ComparisonOutcome.FIRST_STRICT, ComparisonOutcome.EQUAL)

    @property
    def second_at_least(self) -> bool:
        return self in (ComparisonOutcome.SECOND_STRICT, ComparisonOutcome.EQUAL)


FIRST = ComparisonOutcome.FIRST_STRICT
SECOND = ComparisonOutcome.SECOND_STRICT
EQUAL = ComparisonOutcome.EQUAL
INCOMPARABLE = ComparisonOutcome.INCOMPARABLE


# -- satisfaction ----------------------------------------------------------------


def _lit_holds(interp, al: AnnotatedLiteral) -> bool:
    g = grade_of(interp, al.literal)
    return g > 0 and eval_annotation(al.annotation) <= g


def holds_combination(interp, combo) -> bool:
    # grade 0 means undefined, so a positive literal needs support even at l:0
    if isinstance(combo, Pos):
        return _lit_holds(interp, combo.literal)
    if isinstance(combo, Naf):
        return not _lit_holds(interp, combo.literal)
    if isinstance(combo, And):
        return holds_combination(interp, combo.left) and holds_combination(interp, combo.right)
    if isinstance(combo, Or):
        return holds_combination(interp, combo.left) or holds_combination(interp, combo.right)
    raise TypeError(f"not a boolean combination: {combo!r}")


def body_holds(interp, rule: PreferenceRule) -> bool:
    for al in rule.pos_body:
        if not eval_annotation(al.annotation) <= grade_of(interp, al.literal):
            return False
    for al in rule.neg_body:
        g = grade_of(interp, al.literal)
        if g > 0 and eval_annotation(al.annotation) <= g:
            return False
    return True


def sat_outcome(interp, rule: PreferenceRule) -> SatOutcome:
    if not body_holds(interp, rule):
        return IRR
    for i, combo in enumerate(rule.combos, start=1):
        if holds_combination(interp, combo):
            return Sat(i)
    return IRR


# -- comparisons -------------------------------------------------------------------


def _grade_cmp(a, b) -> ComparisonOutcome:
    return FIRST if a > b else SECOND if a < b else EQUAL


def compare_combination(i1, i2, combo) -> ComparisonOutcome:
    h1, h2 = holds_combination(i1, combo), holds_combination(i2, combo)
    if h1 != h2:
        return FIRST if h1 else SECOND
    if not h1:
        return EQUAL
    if isinstance(combo, Pos):
        lit = combo.literal.literal
        return _grade_cmp(grade_of(i1, lit), grade_of(i2, lit))
    if isinstance(combo, Naf):
        # lower grade wins; undefined is grade 0
        lit = combo.literal.literal
        return _grade_cmp(grade_of(i2, lit), grade_of(i1, lit))
    children = (compare_combination(i1, i2, combo.left), compare_combination(i1, i2, combo.right))
    if FIRST in children and all(c.first_at_least for c in children):
        return FIRST
    if SECOND in children and all(c.second_at_least for c in children):
        return SECOND
    if isinstance(combo, And):
        equal = all(c is EQUAL for c in children)
    else:
        equal = sum(c.first_at_least for c in children) == sum(c.second_at_least for c in children)
    return EQUAL if equal else INCOMPARABLE


def compare_rule(i1, i2, rule: PreferenceRule) -> ComparisonOutcome:
    s1, s2 = sat_outcome(i1, rule), sat_outcome(i2, rule)
    if s1.irrelevant and s2.irrelevant:
        return EQUAL
    if s2.irrelevant:
        return FIRST
    if s1.irrelevant:
        return SECOND
    if s1.index != s2.index:
        return FIRST if s1.index < s2.index else SECOND
    return compare_combination(i1, i2, rule.combos[s1.index - 1])


def pareto_compare(i1, i2, rules: Sequence[PreferenceRule]) -> ComparisonOutcome:
    outcomes = [compare_rule(i1, i2, r) for r in rules]
    if all(o is EQUAL for o in outcomes):
        return EQUAL
    if FIRST in outcomes and all(o.first_at_least for o in outcomes):
        return FIRST
    if SECOND in outcomes and all(o.second_at_least for o in outcomes):
        return SECOND
    return INCOMPARABLE


def maximal_counts(i1, i2, rules: Sequence[PreferenceRule]) -> Tuple[int, int]:
    """Number of rules where the first is at least as good, and the same for the second."""
    outcomes = [compare_rule(i1, i2, r) for r in rules]
    return sum(o.first_at_least for o in outcomes), sum(o.second_at_least for o in outcomes)


def maximal_compare(i1, i2, rules: Sequence[PreferenceRule]) -> ComparisonOutcome:
    a, b = maximal_counts(i1, i2, rules)
    return FIRST if a > b else SECOND if b > a else EQUAL


STRATEGIES = {"pareto": pareto_compare, "maximal": maximal_compare}


@dataclass
class RankReport:
    pairwise: List[List[ComparisonOutcome]]
    tiers: List[List[int]]
    cycles_detected: bool


def rank(
    answer_sets: Sequence[FuzzyInterpretation],
    rules: Sequence[PreferenceRule],
    strategy: str = "maximal",
) -> RankReport:
    """Pairwise matrix plus tiers of answer-set indices, most preferred first."""
    compare = STRATEGIES[strategy]
    n = len(answer_sets)
    pairwise = [[EQUAL] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            out = compare(answer_sets[i], answer_sets[j], rules)
            pairwise[i][j] = out
            pairwise[j][i] = out.mirror()
    remaining = list(range(n))
    tiers: List[List[int]] = []
    cycles = False
    while remaining:
        top = [i for i in remaining if not any(pairwise[i][j] is SECOND for j in remaining)]
        if not top:
            cycles = True
            tiers.append(remaining)
            break
        tiers.append(top)
        remaining = [i for i in remaining if i not in top]
    return RankReport(pairwise, tiers, cycles)
