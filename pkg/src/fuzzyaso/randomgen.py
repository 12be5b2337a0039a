"""Random small programs for differential testing and experiments.

The generators only need an object with ``randint(a, b)`` and ``choice(seq)``,
so either :class:`random.Random` or a hypothesis-backed adapter can drive them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .kernel import (
    AConst,
    And,
    AnnotatedLiteral,
    Atom,
    AVar,
    Const,
    GeneratorRule,
    Literal,
    Naf,
    Or,
    Pos,
    PreferenceRule,
    Program,
    Var,
)

QUARTERS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


@dataclass(frozen=True)
class RandomProgramConfig:
    atoms: int = 4
    min_rules: int = 0
    max_rules: int = 5
    max_head: int = 2
    max_pos: int = 2
    max_neg: int = 1
    grades: Tuple[Fraction, ...] = QUARTERS
    classical_negation: bool = False
    zero_annotations: bool = False
    max_pref_rules: int = 2
    max_combos: int = 3
    combo_depth: int = 2
    max_pref_body: int = 1


CLASSICAL = RandomProgramConfig(
    atoms=8, max_rules=6, max_head=2, max_pos=2, max_neg=2, grades=(Fraction(1),), max_pref_rules=3
)


def _atom(k: int) -> Atom:
    return Atom(f"a{k}")


def _literal(rng, cfg: RandomProgramConfig) -> Literal:
    neg = cfg.classical_negation and rng.randint(0, 4) == 0
    return Literal(_atom(rng.randint(0, cfg.atoms - 1)), neg)


def _grade(rng, cfg: RandomProgramConfig) -> Fraction:
    pool = tuple(cfg.grades) + ((Fraction(0),) if cfg.zero_annotations else ())
    return rng.choice(pool)


def _annotated(rng, cfg, positive_only=False) -> AnnotatedLiteral:
    g = rng.choice(cfg.grades) if positive_only else _grade(rng, cfg)
    return AnnotatedLiteral(_literal(rng, cfg), AConst(g))


def random_generator_rules(rng, cfg: RandomProgramConfig = RandomProgramConfig()) -> List[GeneratorRule]:
    rules = []
    for k in range(rng.randint(cfg.min_rules, cfg.max_rules)):
        head, seen = [], set()
        for _ in range(rng.randint(1, cfg.max_head)):
            # head grades stay positive so every disjunct can be derived
            al = _annotated(rng, cfg, positive_only=True)
            if al.literal not in seen:
                seen.add(al.literal)
                head.append(al)
        pos = tuple(_annotated(rng, cfg) for _ in range(rng.randint(0, cfg.max_pos)))
        neg = tuple(_annotated(rng, cfg) for _ in range(rng.randint(0, cfg.max_neg)))
        rules.append(GeneratorRule(tuple(head), pos, neg, (), f"g{k + 1}"))
    return rules


def random_combination(rng, cfg: RandomProgramConfig = RandomProgramConfig(), depth: int = None):
    depth = cfg.combo_depth if depth is None else depth
    kind = rng.randint(0, 3) if depth > 0 else rng.randint(0, 1)
    if kind == 0:
        return Pos(_annotated(rng, cfg))
    if kind == 1:
        return Naf(_annotated(rng, cfg))
    op = And if kind == 2 else Or
    return op(random_combination(rng, cfg, depth - 1), random_combination(rng, cfg, depth - 1))


def random_preference_rules(rng, cfg: RandomProgramConfig = RandomProgramConfig()) -> List[PreferenceRule]:
    rules = []
    for k in range(rng.randint(0, cfg.max_pref_rules)):
        combos = tuple(random_combination(rng, cfg) for _ in range(rng.randint(1, cfg.max_combos)))
        pos, neg = [], []
        for _ in range(rng.randint(0, cfg.max_pref_body)):
            (pos if rng.randint(0, 1) else neg).append(_annotated(rng, cfg))
        rules.append(PreferenceRule(combos, tuple(pos), tuple(neg), (), f"p{k + 1}"))
    return rules


def random_program(rng, cfg: RandomProgramConfig = RandomProgramConfig()) -> Program:
    """A ground program over atoms ``a0 .. a{n-1}``."""
    return Program(tuple(random_generator_rules(rng, cfg)), tuple(random_preference_rules(rng, cfg)))


def random_nonground_program(rng, constants: Sequence[str] = ("b", "c"), max_rules: int = 4) -> Program:
    """A small non-ground program over unary predicates ``p, q, r`` and facts ``d(x)``.

    Every rule is safe: its variable ``X`` and annotation variable ``V`` are
    bound by a leading ``d(X):V`` or ``p(X):V`` body literal.
    """
    preds = ("p", "q", "r")
    x, v = Var("X"), AVar("V")
    rules = []
    for k, c in enumerate(constants):
        rules.append(
            GeneratorRule((AnnotatedLiteral(Literal(Atom("d", (Const(c),))), AConst(rng.choice(QUARTERS))),),
                          id=f"f{k + 1}")
        )
    for k in range(rng.randint(1, max_rules)):
        anchor = rng.choice(("d",) + preds)
        pos = [AnnotatedLiteral(Literal(Atom(anchor, (x,))), v)]
        if rng.randint(0, 1):
            pos.append(AnnotatedLiteral(Literal(Atom(rng.choice(preds), (x,))), AConst(rng.choice(QUARTERS))))
        neg = []
        if rng.randint(0, 2) == 0:
            neg.append(AnnotatedLiteral(Literal(Atom(rng.choice(preds), (x,))), AConst(rng.choice(QUARTERS))))
        head = []
        for p in sorted({rng.choice(preds) for _ in range(rng.randint(1, 2))}):
            ann = v if rng.randint(0, 2) == 0 else AConst(rng.choice(QUARTERS))
            head.append(AnnotatedLiteral(Literal(Atom(p, (x,))), ann))
        rules.append(GeneratorRule(tuple(head), tuple(pos), tuple(neg), (), f"g{k + 1}"))
    return Program(tuple(rules), ())
