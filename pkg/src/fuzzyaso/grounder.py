"""Instantiate object and annotation variables.

Object variables range over the Herbrand universe (constants closed under the
program's function symbols up to a nesting depth).  Annotation variables are
placeholders for the grade of the literal they annotate, so they range over a
finite set of grades rather than all of ``[0, 1]``:

* ``relevant=True`` (default): a bottom-up pass computes, for every ground
  literal, the grades it can receive from rule heads.  A positive body literal
  ``l:V`` binds ``V`` to those grades, and instances whose positive body can
  never hold are dropped.  Annotation variables that occur only in the head of
  a preference rule are bound to the grades generator rules would assign to
  that literal when their bodies follow from the preference rule's own body
  plus the program's facts.
* ``relevant=False``: exhaustive instantiation over the Herbrand universe and
  every grade of the program's :func:`grade_vocabulary`, with no pruning.
  The union is used rather than the predicate's own grades because a rule like
  ``p(X):V <- d(X):V`` moves grades between predicates.  Without annotation
  functions this set contains every reachable grade, so it is the reference
  the pruned grounding is checked against on small programs.

Rules that are already ground pass through unchanged in both modes.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Set

from .errors import GroundingExplosion
from .kernel import (
    ONE,
    ZERO,
    AConst,
    AnnotatedLiteral,
    AVar,
    Compound,
    Const,
    GeneratorRule,
    Literal,
    PreferenceRule,
    Program,
    Term,
    Var,
    combination_literals,
    eval_annotation,
    map_combination,
    term_depth,
    format_grade,
)


@dataclass(frozen=True)
class GroundingConfig:
    depth: int = 1
    max_instances: int = 100_000
    max_rounds: int = 1_000


# -- vocabulary and universe ---------------------------------------------------


def grade_vocabulary(program: Program) -> Dict[str, frozenset]:
    """Per predicate: every constant annotation it carries anywhere, plus 1."""
    vocab = defaultdict(set)
    for r in program.rules():
        for al in r.literals():
            s = vocab[al.literal.predicate]
            s.add(ONE)
            if isinstance(al.annotation, AConst):
                s.add(al.annotation.value)
    return {p: frozenset(s) for p, s in vocab.items()}


def _walk_terms(program: Program):
    for r in program.rules():
        for al in r.literals():
            stack = list(al.literal.atom.args)
            while stack:
                t = stack.pop()
                yield t
                if isinstance(t, Compound):
                    stack.extend(t.args)
        for c in r.builtins:
            stack = [c.left, c.right]
            while stack:
                t = stack.pop()
                yield t
                if isinstance(t, Compound):
                    stack.extend(t.args)


def herbrand_universe(program: Program, depth: int = 1) -> frozenset:
    constants = set()
    functors = set()
    for t in _walk_terms(program):
        if isinstance(t, Const):
            constants.add(t)
        elif isinstance(t, Compound):
            functors.add((t.functor, len(t.args)))
    if not constants:
        constants.add(Const("u0"))
    universe = set(constants)
    for _ in range(depth):
        layer = set(universe)
        for name, arity in sorted(functors):
            for args in itertools.product(sorted(universe, key=str), repeat=arity):
                layer.add(Compound(name, args))
        universe = layer
    return frozenset(universe)


# -- matching helpers --------------------------------------------------------------


def _match(pattern: Term, ground: Term, theta: dict) -> Optional[dict]:
    if isinstance(pattern, Var):
        bound = theta.get(pattern.name)
        if bound is None:
            out = dict(theta)
            out[pattern.name] = ground
            return out
        return theta if bound == ground else None
    if isinstance(pattern, Const):
        return theta if pattern == ground else None
    if not isinstance(ground, Compound) or ground.functor != pattern.functor or len(ground.args) != len(pattern.args):
        return None
    for p, g in zip(pattern.args, ground.args):
        theta = _match(p, g, theta)
        if theta is None:
            return None
    return theta


def _match_literal(pattern: Literal, ground: Literal, theta: dict) -> Optional[dict]:
    if pattern.negated != ground.negated or pattern.atom.predicate != ground.atom.predicate:
        return None
    if len(pattern.atom.args) != len(ground.atom.args):
        return None
    for p, g in zip(pattern.atom.args, ground.atom.args):
        theta = _match(p, g, theta)
        if theta is None:
            return None
    return theta


def _rule_object_vars(rule) -> List[str]:
    names = set()
    for al in rule.literals():
        names.update(al.vars())
    for c in rule.builtins:
        names.update(c.vars())
    return sorted(names)


def _rule_annotation_vars(rule) -> List[str]:
    names = set()
    for al in rule.literals():
        names.update(al.annotation_vars())
    return sorted(names)


def _value_key(v) -> str:
    return format_grade(v) if isinstance(v, Fraction) else str(v)


def _within_depth(al: AnnotatedLiteral, depth: int) -> bool:
    return all(term_depth(t) <= depth for t in al.literal.atom.args)


class _Grounder:
    def __init__(self, program: Program, config: GroundingConfig):
        self.program = program
        self.config = config
        self.universe = sorted(herbrand_universe(program, config.depth), key=str)
        self.vocab = grade_vocabulary(program)
        self.all_grades = frozenset().union(*self.vocab.values()) | {ONE}
        self.count = 0

    def _bump(self, n=1):
        self.count += n
        if self.count > self.config.max_instances:
            raise GroundingExplosion(self.config.max_instances)

    # object-level substitutions ---------------------------------------------

    def _object_substitutions(self, rule, index=None):
        """Yield object substitutions.  With an index of derivable literals,
        positive body literals (except those annotated with the constant 0)
        are matched against it; every other variable ranges over the universe."""
        all_vars = _rule_object_vars(rule)
        matchable = []
        if index is not None:
            matchable = [
                al for al in rule.pos_body
                if not (isinstance(al.annotation, AConst) and al.annotation.value == 0)
            ]

        def rest(theta):
            free = [v for v in all_vars if v not in theta]
            for values in itertools.product(self.universe, repeat=len(free)):
                full = dict(theta)
                full.update(zip(free, values))
                if all(c.holds(full) for c in rule.builtins):
                    yield full

        def search(k, theta):
            if k == len(matchable):
                yield from rest(theta)
                return
            pattern = matchable[k].literal
            for cand in index.get((pattern.atom.predicate, pattern.negated), ()):
                theta2 = _match_literal(pattern, cand, theta)
                if theta2 is not None:
                    yield from search(k + 1, theta2)

        yield from search(0, {})

    # annotation-level bindings --------------------------------------------

    def _annotation_domains_relevant(self, rule, theta, derivable):
        domains = {}
        for al in rule.pos_body:
            if isinstance(al.annotation, AVar):
                lit = al.literal.substitute(theta)
                domains.setdefault(al.annotation.name, set()).update(derivable.get(lit, ()))
        return domains

    def _annotation_domains_naive(self, rule, names):
        domains = {}
        for al in (*rule.pos_body, *(l for c in getattr(rule, "combos", ()) for l in combination_literals(c))):
            if isinstance(al.annotation, AVar) and al.annotation.name in names:
                domains.setdefault(al.annotation.name, set()).update(self.all_grades)
        return domains

    def _body_relevant(self, pos_body, derivable) -> bool:
        for al in pos_body:
            mu = eval_annotation(al.annotation)
            if mu == 0:
                continue
            grades = derivable.get(al.literal, ())
            if not grades or max(grades) < mu:
                return False
        return True

    @staticmethod
    def _bindings(domains: Mapping[str, Iterable[Fraction]]):
        names = sorted(domains)
        for values in itertools.product(*(sorted(domains[n]) for n in names)):
            yield dict(zip(names, values))

    # generator rules ----------------------------------------------------------

    def ground_generator(self, rule: GeneratorRule, derivable=None, index=None) -> List[GeneratorRule]:
        """Ground instances of ``rule``; relevance mode iff ``derivable`` given."""
        out = []
        relevant = derivable is not None
        for theta in self._object_substitutions(rule, index if relevant else None):
            ann_names = _rule_annotation_vars(rule)
            if relevant:
                domains = self._annotation_domains_relevant(rule, theta, derivable)
            else:
                domains = self._annotation_domains_naive(rule, ann_names)
            if any(not domains.get(n) for n in ann_names):
                continue
            for beta in self._bindings({n: domains[n] for n in ann_names}):
                head = tuple(al.substitute(theta, beta) for al in rule.head)
                pos = tuple(al.substitute(theta, beta) for al in rule.pos_body)
                neg = tuple(al.substitute(theta, beta) for al in rule.neg_body)
                if not all(_within_depth(al, self.config.depth) for al in (*head, *pos, *neg)):
                    continue
                if relevant and not self._body_relevant(pos, derivable):
                    continue
                key = tuple((n, _value_key(theta[n])) for n in sorted(theta)) + tuple(
                    (n, _value_key(beta[n])) for n in sorted(beta)
                )
                out.append((key, GeneratorRule(head, pos, neg, (), rule.id, rule.span)))
                self._bump()
        out.sort(key=lambda kv: kv[0])
        return _dedupe([r for _, r in out])

    # preference rules ----------------------------------------------------------

    def ground_preference(self, rule: PreferenceRule, derivable=None, index=None, gen_instances=(), facts=None):
        out = []
        relevant = derivable is not None
        ann_names = _rule_annotation_vars(rule)
        body_bound = {al.annotation.name for al in rule.pos_body if isinstance(al.annotation, AVar)}
        for theta in self._object_substitutions(rule, index if relevant else None):
            if relevant:
                domains = self._annotation_domains_relevant(rule, theta, derivable)
                for name in ann_names:
                    if name not in body_bound:
                        domains[name] = set()
            else:
                domains = self._annotation_domains_naive(rule, set(ann_names))
            if any(not domains.get(n) for n in ann_names if n in body_bound or not relevant):
                continue
            for beta0 in self._bindings({n: domains[n] for n in ann_names if n in body_bound or not relevant}):
                pos = tuple(al.substitute(theta, beta0) for al in rule.pos_body)
                if relevant and not self._body_relevant(pos, derivable):
                    continue
                free = [n for n in ann_names if n not in beta0]
                free_domains = {}
                if free:
                    free_domains = self._supported_grades(rule, theta, free, pos, gen_instances, facts)
                    if any(not free_domains.get(n) for n in free):
                        continue
                for beta1 in self._bindings(free_domains):
                    beta = {**beta0, **beta1}
                    combos = tuple(map_combination(c, lambda al: al.substitute(theta, beta)) for c in rule.combos)
                    pos_i = tuple(al.substitute(theta, beta) for al in rule.pos_body)
                    neg_i = tuple(al.substitute(theta, beta) for al in rule.neg_body)
                    lits = [*pos_i, *neg_i, *(l for c in combos for l in combination_literals(c))]
                    if not all(_within_depth(al, self.config.depth) for al in lits):
                        continue
                    key = tuple((n, _value_key(theta[n])) for n in sorted(theta)) + tuple(
                        (n, _value_key(beta[n])) for n in sorted(beta)
                    )
                    out.append((key, PreferenceRule(combos, pos_i, neg_i, (), rule.id, rule.span)))
                    self._bump()
        out.sort(key=lambda kv: kv[0])
        return _dedupe([r for _, r in out])

    def _supported_grades(self, rule, theta, free, pos, gen_instances, facts):
        """Grades a combination literal annotated by a free variable would get
        from generator instances whose positive bodies follow from ``pos`` and
        the facts."""
        given = defaultdict(lambda: ZERO)
        for lit, g in facts.items():
            given[lit] = max(given[lit], g)
        for al in pos:
            given[al.literal] = max(given[al.literal], eval_annotation(al.annotation))
        targets = defaultdict(set)
        for c in rule.combos:
            for al in combination_literals(c):
                if isinstance(al.annotation, AVar) and al.annotation.name in free:
                    targets[al.literal.substitute(theta)].add(al.annotation.name)
        domains = {n: set() for n in free}
        for inst in gen_instances:
            hits = [(h, targets[h.literal]) for h in inst.head if h.literal in targets]
            if not hits:
                continue
            if all(eval_annotation(b.annotation) <= given[b.literal] for b in inst.pos_body):
                for h, names in hits:
                    g = eval_annotation(h.annotation)
                    if g > 0:
                        for n in names:
                            domains[n].add(g)
        return domains


def _dedupe(instances: list) -> list:
    seen = set()
    unique = []
    for r in instances:
        if r not in seen:
            seen.add(r)
            unique.append(r)
    return unique


def _with_ids(parent, instances):
    from dataclasses import replace

    if parent.is_ground():
        return [parent]
    return [replace(r, id=f"{parent.id}_{k}") for k, r in enumerate(instances, 1)]


def _index(derivable) -> dict:
    index = defaultdict(list)
    for lit in sorted(derivable, key=str):
        index[(lit.atom.predicate, lit.negated)].append(lit)
    return index


def _heads(instances) -> Dict[Literal, Set[Fraction]]:
    derivable = defaultdict(set)
    for inst in instances:
        for h in inst.head:
            g = eval_annotation(h.annotation)
            if g > 0:
                derivable[h.literal].add(g)
    return derivable


def derivable_grades(program: Program, config: Optional[GroundingConfig] = None):
    """Least fixpoint of head grades reachable through relevant instances.

    Returns ``(derivable, instances)`` where ``instances`` maps every generator
    rule id to its relevant ground instances in the final round.
    """
    config = config or GroundingConfig()
    g = _Grounder(program, config)
    derivable: Dict[Literal, Set[Fraction]] = {}
    for _ in range(config.max_rounds):
        g.count = 0
        per_rule = {}
        for rule in program.gen:
            if rule.is_ground():
                per_rule[rule.id] = [rule] if g._body_relevant(rule.pos_body, derivable) else []
            else:
                per_rule[rule.id] = g.ground_generator(rule, derivable, _index(derivable))
        new = _heads(r for rs in per_rule.values() for r in rs)
        if new == derivable:
            return derivable, per_rule
        derivable = new
    raise GroundingExplosion(config.max_rounds)


def ground_program(program: Program, config: Optional[GroundingConfig] = None, *, relevant: bool = True) -> Program:
    config = config or GroundingConfig()
    if program.is_ground():
        return program
    g = _Grounder(program, config)
    gen_out: List[GeneratorRule] = []
    pref_out: List[PreferenceRule] = []
    if relevant:
        derivable, per_rule = derivable_grades(program, config)
        index = _index(derivable)
        instances = [r for rule in program.gen for r in per_rule[rule.id]]
        facts = {}
        for inst in instances:
            if inst.is_fact():
                h = inst.head[0]
                facts[h.literal] = max(facts.get(h.literal, ZERO), eval_annotation(h.annotation))
        for rule in program.gen:
            gen_out.extend(_with_ids(rule, per_rule[rule.id]))
        g.count = len(gen_out)
        for rule in program.pref:
            if rule.is_ground():
                pref_out.append(rule)
                continue
            found = g.ground_preference(rule, derivable, index, instances, facts)
            pref_out.extend(_with_ids(rule, found))
    else:
        for rule in program.gen:
            gen_out.extend(_with_ids(rule, [] if rule.is_ground() else g.ground_generator(rule)))
        for rule in program.pref:
            pref_out.extend(_with_ids(rule, [] if rule.is_ground() else g.ground_preference(rule)))
    return Program(tuple(gen_out), tuple(pref_out))
