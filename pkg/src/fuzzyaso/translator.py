"""Compile preference rules into plain generator rules over reserved ``aux_`` atoms.

For a ground preference rule ``r`` with id ``<rid>`` and combinations
``C1 > ... > Ck`` the output contains::

    aux_body__<rid>:1 <- body(r).
    aux_sat__<rid>__<i>:1 <- clause, aux_body__<rid>:1.     one per DNF clause of Ci
    aux_sat__<rid>__irr:1 <- not aux_body__<rid>:1.
    aux_sat__<rid>__irr:1 <- not aux_sat__<rid>__1:1, ..., aux_body__<rid>:1.

Double underscores separate the parts, so distinct rule ids give distinct atoms.

A literal annotated with 0 inside a combination, or under ``not`` in a body,
refers to the literal being defined at all.  Generator rules cannot say that
directly, so ``l:0`` is rewritten to ``l:g`` where ``g`` is the smallest positive
head grade of ``l``.  Answer-set grades are drawn from head grades, so the two
agree on every answer set.  When ``l`` never appears in a head the element is
constant and is folded away.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import CorrespondenceFailure, ReservedPrefixCollision, SizeExplosion
from .kernel import (
    ONE,
    AConst,
    And,
    AnnotatedLiteral,
    Atom,
    FuzzyInterpretation,
    GeneratorRule,
    Literal,
    Naf,
    Or,
    Pos,
    PreferenceRule,
    Program,
    eval_annotation,
)
from .preferences import SatOutcome, holds_combination, sat_outcome
from .solver import SolverConfig, enumerate_answer_sets

AUX_PREFIX = "aux_"
DNF_LIMIT = 4096

Element = Union[Pos, Naf]


@dataclass(frozen=True)
class DnfCombination:
    clauses: Tuple[Tuple[Element, ...], ...]

    def holds(self, interp) -> bool:
        return any(all(holds_combination(interp, e) for e in clause) for clause in self.clauses)


def to_dnf(combo, limit: int = DNF_LIMIT) -> DnfCombination:
    def walk(c) -> List[Tuple[Element, ...]]:
        if isinstance(c, (Pos, Naf)):
            return [(c,)]
        left, right = walk(c.left), walk(c.right)
        if isinstance(c, Or):
            out = left + right
        elif isinstance(c, And):
            if len(left) * len(right) > limit:
                raise SizeExplosion(limit)
            out = [a + b for a in left for b in right]
        else:
            raise TypeError(f"not a boolean combination: {c!r}")
        if len(out) > limit:
            raise SizeExplosion(limit)
        return out

    return DnfCombination(tuple(walk(combo)))


@dataclass
class TranslationOutput:
    program: Program
    rule_index: Dict[Tuple[str, Union[int, str]], Literal] = field(default_factory=dict)


def _aux(name: str) -> Literal:
    return Literal(Atom(name))


def _al(lit: Literal, grade=ONE) -> AnnotatedLiteral:
    return AnnotatedLiteral(lit, AConst(grade))


def _check_reserved(program: Program) -> None:
    for r in program.rules():
        for al in r.literals():
            if al.literal.predicate.startswith(AUX_PREFIX):
                raise ReservedPrefixCollision(al.literal.predicate)


def _least_head_grades(gen: Sequence[GeneratorRule]) -> Dict[Literal, object]:
    least = {}
    for r in gen:
        for al in r.head:
            g = eval_annotation(al.annotation)
            if g > 0 and (al.literal not in least or g < least[al.literal]):
                least[al.literal] = g
    return least


def translate(program: Program, dnf_limit: int = DNF_LIMIT) -> TranslationOutput:
    if not program.is_ground():
        raise ValueError("translate expects a ground program")
    _check_reserved(program)
    least = _least_head_grades(program.gen)

    def defined(al) -> Optional[AnnotatedLiteral]:
        """``al`` with a 0 annotation replaced by the least head grade, or None."""
        g = eval_annotation(al.annotation)
        if g > 0:
            return _al(al.literal, g)
        if al.literal in least:
            return _al(al.literal, least[al.literal])
        return None

    rules: List[GeneratorRule] = []
    index: Dict[Tuple[str, Union[int, str]], Literal] = {}
    for r in program.pref:
        rid = r.id
        body = _aux(f"aux_body__{rid}")
        irr = _aux(f"aux_sat__{rid}__irr")
        index[(rid, "body")] = body
        index[(rid, "irr")] = irr

        neg = []
        for al in r.neg_body:
            d = defined(al)
            if d is not None:
                neg.append(d)
        rules.append(GeneratorRule((_al(body),), tuple(r.pos_body), tuple(neg), (), f"{rid}__body"))

        sat_atoms = []
        for i, combo in enumerate(r.combos, start=1):
            sat = _aux(f"aux_sat__{rid}__{i}")
            index[(rid, i)] = sat
            sat_atoms.append(sat)
            for c, clause in enumerate(to_dnf(combo, dnf_limit).clauses, start=1):
                pos, neg, possible = [], [], True
                for e in clause:
                    d = defined(e.literal)
                    if isinstance(e, Pos):
                        if d is None:
                            possible = False
                            break
                        pos.append(d)
                    elif d is not None:
                        neg.append(d)
                if possible:
                    rules.append(
                        GeneratorRule(
                            (_al(sat),), (*pos, _al(body)), tuple(neg), (), f"{rid}__sat{i}_{c}"
                        )
                    )
        rules.append(GeneratorRule((_al(irr),), (), (_al(body),), (), f"{rid}__irr1"))
        rules.append(
            GeneratorRule(
                (_al(irr),), (_al(body),), tuple(_al(s) for s in sat_atoms), (), f"{rid}__irr2"
            )
        )
    return TranslationOutput(Program(tuple(program.gen) + tuple(rules), ()), index)


# -- verification ------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationEntry:
    answer_set: int
    rule_id: str
    outcome: SatOutcome
    translated: SatOutcome
    matched: bool


@dataclass
class VerificationReport:
    answer_sets: List[FuzzyInterpretation]
    translated_answer_sets: List[FuzzyInterpretation]
    entries: List[VerificationEntry]

    @property
    def bijective(self) -> bool:
        return len(self.answer_sets) == len(self.translated_answer_sets)

    @property
    def matched(self) -> int:
        return sum(e.matched for e in self.entries)

    @property
    def all_matched(self) -> bool:
        return self.matched == len(self.entries)


def _is_original(lit: Literal) -> bool:
    return not lit.predicate.startswith(AUX_PREFIX)


def _translated_outcome(interp, rule: PreferenceRule, index) -> Tuple[SatOutcome, bool]:
    """The outcome read off aux atoms, and whether exactly one family is present."""
    sats = [i for i in range(1, len(rule.combos) + 1) if interp.get(index[(rule.id, i)], 0) >= ONE]
    irr = interp.get(index[(rule.id, "irr")], 0) >= ONE
    outcome = SatOutcome(min(sats)) if sats else SatOutcome(None)
    return outcome, irr != bool(sats)


def verify_translation(
    program: Program,
    engine: str = "split",
    config: SolverConfig = SolverConfig(),
) -> VerificationReport:
    """Solve the program and its translation, pair answer sets, compare outcomes."""
    output = translate(program)
    originals = enumerate_answer_sets(program.gen, engine, config).answer_sets
    translated = enumerate_answer_sets(output.program, engine, config).answer_sets
    by_support: Dict[FuzzyInterpretation, FuzzyInterpretation] = {}
    for t in translated:
        key = t.restrict(_is_original)
        if key in by_support:
            raise CorrespondenceFailure(f"two translated answer sets restrict to {key!r}")
        by_support[key] = t
    if len(by_support) != len(originals) or any(a not in by_support for a in originals):
        raise CorrespondenceFailure(
            f"{len(originals)} answer sets before translation, {len(translated)} after"
        )
    entries = []
    for k, interp in enumerate(originals):
        image = by_support[interp]
        for r in program.pref:
            expected = sat_outcome(interp, r)
            got, exclusive = _translated_outcome(image, r, output.rule_index)
            entries.append(VerificationEntry(k, r.id, expected, got, exclusive and got == expected))
    return VerificationReport(originals, [by_support[a] for a in originals], entries)
