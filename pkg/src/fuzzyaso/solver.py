"""Satisfaction, fuzzy reducts and answer-set enumeration for ground generator rules.

Two engines are provided and are expected to agree exactly:

``split``
    Splits the program into strongly connected components of the literal
    dependency graph and solves them bottom-up.  Inside a component it guesses
    the truth of every negated body literal, takes the reduct, computes the
    minimal fixpoints of the positive remainder over all head-disjunct
    selections, and keeps the candidates that confirm the guess.
``brute``
    Enumerates every interpretation whose grades come from ``{0}`` plus the
    head grades of each literal and keeps those passing :func:`is_answer_set`.

An interpretation during search is a plain ``dict`` from ground literal to
grade; interpretations handed back to callers are :class:`FuzzyInterpretation`.
"""

from __future__ import annotations

import itertools
import math
import time
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, NamedTuple, Sequence, Tuple

import networkx as nx

from .errors import CandidateSpaceExceeded, IterationCapExceeded
from .kernel import (
    FuzzyInterpretation,
    GeneratorRule,
    Literal,
    Program,
    eval_annotation,
)


@dataclass(frozen=True)
class SolverConfig:
    max_iterations: int = 10_000
    max_candidates: int = 2_000_000


@dataclass
class SolveStats:
    candidates: int = 0
    iterations: int = 0
    wall_time: float = 0.0


@dataclass
class SolveReport:
    answer_sets: List[FuzzyInterpretation]
    stats: SolveStats = field(default_factory=SolveStats)


class _Rule(NamedTuple):
    head: Tuple[Tuple[Literal, Fraction], ...]
    pos: Tuple[Tuple[Literal, Fraction], ...]
    neg: Tuple[Tuple[Literal, Fraction], ...]
    id: str


def _compile(rules) -> List[_Rule]:
    if isinstance(rules, Program):
        rules = rules.gen
    out = []
    for r in rules:
        if isinstance(r, _Rule):
            out.append(r)
            continue
        out.append(
            _Rule(
                tuple((al.literal, eval_annotation(al.annotation)) for al in r.head),
                tuple((al.literal, eval_annotation(al.annotation)) for al in r.pos_body),
                tuple((al.literal, eval_annotation(al.annotation)) for al in r.neg_body),
                r.id,
            )
        )
    return out


class _Encoding:
    """Integer view of a ground program used during search.

    Atom ``k`` becomes literal id ``2k`` and its classical negation ``2k + 1``,
    so the complement of ``x`` is ``x ^ 1``.  Grades are multiplied by the lcm
    of all denominators so comparisons run on ints.
    """

    def __init__(self, rules: Sequence[_Rule], extra: Mapping = None):
        extra = dict(extra or {})
        atoms = {l.atom for r in rules for l, _ in (*r.head, *r.pos, *r.neg)}
        atoms |= {l.atom for l in extra}
        self.atoms = sorted(atoms, key=str)
        self.atom_id = {a: i for i, a in enumerate(self.atoms)}
        scale = 1
        for r in rules:
            for _, mu in (*r.head, *r.pos, *r.neg):
                scale = math.lcm(scale, mu.denominator)
        for g in extra.values():
            scale = math.lcm(scale, Fraction(g).denominator)
        self.scale = scale

        def conv(items):
            return tuple((self.lit(l), int(mu * scale)) for l, mu in items)

        self.rules = [_Rule(conv(r.head), conv(r.pos), conv(r.neg), r.id) for r in rules]

    def lit(self, l: Literal) -> int:
        return 2 * self.atom_id[l.atom] + int(l.negated)

    def literal(self, x: int) -> Literal:
        return Literal(self.atoms[x >> 1], bool(x & 1))

    def encode(self, interp: Mapping) -> dict:
        return {self.lit(l): int(Fraction(g) * self.scale) for l, g in interp.items() if g > 0}

    def decode(self, interp: dict) -> FuzzyInterpretation:
        return FuzzyInterpretation({self.literal(x): Fraction(g, self.scale) for x, g in interp.items()})


# -- satisfaction -------------------------------------------------------------


def _body_holds(interp, r: _Rule) -> bool:
    for lit, mu in r.pos:
        if not mu <= interp.get(lit, 0):
            return False
    for lit, mu in r.neg:
        if mu <= interp.get(lit, 0):
            return False
    return True


def _head_holds(interp, r: _Rule) -> bool:
    return any(mu <= interp.get(lit, 0) for lit, mu in r.head)


def _satisfies(interp, rules: Sequence[_Rule]) -> bool:
    best: Dict[int, int] = {}
    for r in rules:
        if not _body_holds(interp, r):
            continue
        satisfied = [(lit, mu) for lit, mu in r.head if mu <= interp.get(lit, 0)]
        if not satisfied:
            return False
        for lit, mu in satisfied:
            if mu > best.get(lit, 0):
                best[lit] = mu
    # the max-condition over satisfied head occurrences of fired rules
    return all(mu <= interp.get(lit, 0) for lit, mu in best.items())


def satisfies_rule(interp, rule: GeneratorRule) -> bool:
    r = _compile([rule])[0]
    return not _body_holds(interp, r) or _head_holds(interp, r)


def satisfies_program(interp, rules) -> bool:
    return _satisfies(interp, _compile(rules))


def _reduct(rules: Sequence[_Rule], interp) -> List[_Rule]:
    return [
        _Rule(r.head, r.pos, (), r.id)
        for r in rules
        if all(not mu <= interp.get(lit, 0) for lit, mu in r.neg)
    ]


def fuzzy_reduct(rules, interp) -> List[GeneratorRule]:
    """Rules whose negated literals all hold in ``interp``, negations stripped."""
    if isinstance(rules, Program):
        rules = rules.gen
    out = []
    for r in rules:
        if all(not eval_annotation(al.annotation) <= interp.get(al.literal, 0) for al in r.neg_body):
            out.append(GeneratorRule(r.head, r.pos_body, (), (), r.id, r.span))
    return out


# -- positive programs ----------------------------------------------------------


def _leq(a, b) -> bool:
    return all(g <= b.get(lit, 0) for lit, g in a.items())


def _minimal_fixpoints(rules: Sequence[_Rule], stats: SolveStats, cap: int) -> List[dict]:
    """Minimal fixpoints of the raise operator over all head selections.

    A disjunctive rule gets a selected disjunct only once its body fires, so
    the search branches on fired rules alone.
    """
    def closure(choices):
        interp = {}
        changed = True
        steps = 0
        while changed:
            changed = False
            steps += 1
            stats.iterations += 1
            if steps > cap:
                raise IterationCapExceeded(cap)
            for idx, r in enumerate(rules):
                if not all(mu <= interp.get(lit, 0) for lit, mu in r.pos):
                    continue
                if len(r.head) == 1:
                    lit, g = r.head[0]
                elif idx in choices:
                    lit, g = r.head[choices[idx]]
                else:
                    return interp, idx
                if g > interp.get(lit, 0):
                    interp[lit] = g
                    changed = True
        return interp, None

    found = {}
    stack = [{}]
    while stack:
        choices = stack.pop()
        interp, branch = closure(choices)
        if branch is None:
            found.setdefault(frozenset(interp.items()), interp)
            continue
        for j in reversed(range(len(rules[branch].head))):
            stack.append({**choices, branch: j})
    models = [m for m in found.values() if _satisfies(m, rules)]
    return [m for m in models if not any(o is not m and _leq(o, m) and o != m for o in models)]


def _consistent(interp: dict) -> bool:
    return not any(x & 1 and (x ^ 1) in interp for x in interp)


def _sorted(interps) -> List[FuzzyInterpretation]:
    return sorted(interps, key=FuzzyInterpretation.sort_key)


def least_models_of_positive(rules, config: SolverConfig = SolverConfig()) -> List[FuzzyInterpretation]:
    compiled = _compile(rules)
    if any(r.neg for r in compiled):
        raise ValueError("least_models_of_positive expects a negation-free program")
    enc = _Encoding(compiled)
    found = _minimal_fixpoints(enc.rules, SolveStats(), config.max_iterations)
    return _sorted(enc.decode(m) for m in found if _consistent(m))


# -- answer sets -----------------------------------------------------------------


def _head_grades(rules: Sequence[_Rule]) -> Dict[int, set]:
    grades = defaultdict(set)
    for r in rules:
        for lit, mu in r.head:
            if mu > 0:
                grades[lit].add(mu)
    return grades


def _is_answer_set(rules: Sequence[_Rule], interp: dict, config: SolverConfig, stats=None) -> bool:
    reduct = _reduct(rules, interp)
    if not _satisfies(interp, reduct):
        return False
    heads = _head_grades(reduct)
    support = sorted(l for l, g in interp.items() if g > 0)
    # grades of a smaller model can be rounded down onto this lattice
    # without losing model-hood, so checking the lattice is exhaustive
    lattice = [
        sorted({0, interp[l]} | {g for g in heads.get(l, ()) if g < interp[l]})
        for l in support
    ]
    size = math.prod(len(v) for v in lattice)
    if size > config.max_candidates:
        raise CandidateSpaceExceeded(config.max_candidates, size)
    for values in itertools.product(*lattice):
        smaller = {l: g for l, g in zip(support, values) if g > 0}
        if len(smaller) == len(support) and all(smaller[l] == interp[l] for l in support):
            continue
        if stats is not None:
            stats.candidates += 1
        if _satisfies(smaller, reduct):
            return False
    return True


def is_answer_set(rules, interp, config: SolverConfig = SolverConfig()) -> bool:
    """``interp`` is a minimal fuzzy model of the reduct of ``rules`` w.r.t. itself."""
    enc = _Encoding(_compile(rules), interp)
    encoded = enc.encode(interp)
    if not _consistent(encoded):
        return False
    return _is_answer_set(enc.rules, encoded, config)


def _components(rules: Sequence[_Rule]) -> List[Tuple[set, List[_Rule]]]:
    """Strongly connected components of the head literals, dependencies first."""
    heads = sorted({lit for r in rules for lit, _ in r.head})
    head_set = set(heads)
    graph = nx.DiGraph()
    graph.add_nodes_from(heads)
    for r in rules:
        hs = [lit for lit, _ in r.head]
        body = [lit for lit, _ in (*r.pos, *r.neg) if lit in head_set]
        for h in hs:
            graph.add_edges_from((h, b) for b in body)
            graph.add_edges_from((h, o) for o in hs if o != h)
    dag = nx.condensation(graph)
    order = list(reversed(list(nx.lexicographical_topological_sort(
        dag, key=lambda n: min(dag.nodes[n]["members"])))))
    comps = [set(dag.nodes[n]["members"]) for n in order]
    where = {lit: i for i, c in enumerate(comps) for lit in c}
    per_comp = [[] for _ in comps]
    for r in rules:
        per_comp[where[r.head[0][0]]].append(r)
    return list(zip(comps, per_comp))


def _solve_component(rules: Sequence[_Rule], stats: SolveStats, config: SolverConfig):
    # "not l:0" never holds, so rules carrying it never reach a reduct
    rules = [r for r in rules if all(mu > 0 for _, mu in r.neg)]
    guesses = sorted({n for r in rules for n in r.neg})
    for values in itertools.product((True, False), repeat=len(guesses)):
        assumed = dict(zip(guesses, values))
        reduct = [_Rule(r.head, r.pos, (), r.id) for r in rules if all(assumed[n] for n in r.neg)]
        for model in _minimal_fixpoints(reduct, stats, config.max_iterations):
            stats.candidates += 1
            if all((mu > model.get(lit, 0)) == assumed[(lit, mu)] for lit, mu in guesses):
                yield model


def _split_engine(rules: Sequence[_Rule], stats: SolveStats, config: SolverConfig) -> List[dict]:
    partials = [{}]
    for comp, comp_rules in _components(rules):
        extended = []
        for base in partials:
            local = []
            for r in comp_rules:
                pos, neg, ok = [], [], True
                for lit, mu in r.pos:
                    if lit in comp:
                        pos.append((lit, mu))
                    elif not mu <= base.get(lit, 0):
                        ok = False
                        break
                if not ok:
                    continue
                for lit, mu in r.neg:
                    if lit in comp:
                        neg.append((lit, mu))
                    elif mu <= base.get(lit, 0):
                        ok = False
                        break
                if ok:
                    local.append(_Rule(r.head, tuple(pos), tuple(neg), r.id))
            for model in _solve_component(local, stats, config):
                extended.append({**base, **model})
        partials = extended
        if not partials:
            break
    return partials


def _brute_engine(rules: Sequence[_Rule], stats: SolveStats, config: SolverConfig) -> List[dict]:
    heads = _head_grades(rules)
    lits = sorted(heads)
    lattice = [[0, *sorted(heads[l])] for l in lits]
    size = math.prod(len(v) for v in lattice)
    if size > config.max_candidates:
        raise CandidateSpaceExceeded(config.max_candidates, size)
    out = []
    for values in itertools.product(*lattice):
        interp = {l: g for l, g in zip(lits, values) if g > 0}
        stats.candidates += 1
        if not _consistent(interp):
            continue
        if _is_answer_set(rules, interp, config):
            out.append(interp)
    return out


ENGINES = {"split": _split_engine, "brute": _brute_engine}


def enumerate_answer_sets(rules, engine: str = "split", config: SolverConfig = SolverConfig()) -> SolveReport:
    enc = _Encoding(_compile(rules))
    stats = SolveStats()
    t0 = time.perf_counter()
    found = ENGINES[engine](enc.rules, stats, config)
    unique = {enc.decode(m) for m in found if _consistent(m)}
    stats.wall_time = time.perf_counter() - t0
    return SolveReport(_sorted(unique), stats)
