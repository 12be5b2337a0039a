"""Core value types: grades, terms, annotated literals, rules, interpretations.

Everything here is immutable.  Grades are :class:`fractions.Fraction`
values in ``[0, 1]``; no floating point is used anywhere in the semantics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Tuple, Union

from .errors import DuplicateRuleId, InconsistentInterpretation, UnboundAnnotationVariable

Grade = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def to_grade(value) -> Fraction:
    """Coerce ``value`` to an exact grade, refusing floats and out-of-range values."""
    if isinstance(value, float):
        raise TypeError("grades must be exact; pass a string, int or Fraction")
    g = Fraction(value)
    if not ZERO <= g <= ONE:
        raise ValueError(f"grade {g} outside [0, 1]")
    return g


def format_grade(g: Fraction) -> str:
    """Exact text for a grade: a terminating decimal when possible, else ``p/q``."""
    if g.denominator == 1:
        return str(g.numerator)
    d = g.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{g.numerator}/{g.denominator}"
    places = max(twos, fives)
    digits = str(g.numerator * 10**places // g.denominator).rjust(places + 1, "0")
    text = digits[:-places] + "." + digits[-places:]
    return text.rstrip("0")


# -- terms -------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Compound:
    functor: str
    args: Tuple["Term", ...]

    def __str__(self) -> str:
        return f"{self.functor}({','.join(map(str, self.args))})"


Term = Union[Const, Var, Compound]


def term_vars(t: Term) -> Iterator[str]:
    if isinstance(t, Var):
        yield t.name
    elif isinstance(t, Compound):
        for a in t.args:
            yield from term_vars(a)


def term_depth(t: Term) -> int:
    if isinstance(t, Compound):
        return 1 + max((term_depth(a) for a in t.args), default=0)
    return 0


def substitute_term(t: Term, theta: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return theta.get(t.name, t)
    if isinstance(t, Compound):
        return Compound(t.functor, tuple(substitute_term(a, theta) for a in t.args))
    return t


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: Tuple[Term, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(map(str, self.args))})"

    @property
    def arity(self) -> int:
        return len(self.args)

    def vars(self) -> Iterator[str]:
        for a in self.args:
            yield from term_vars(a)

    def substitute(self, theta: Mapping[str, Term]) -> "Atom":
        return Atom(self.predicate, tuple(substitute_term(a, theta) for a in self.args))


@dataclass(frozen=True)
class Literal:
    """An atom or its classical negation ``-A``."""

    atom: Atom
    negated: bool = False

    def __str__(self) -> str:
        return ("-" if self.negated else "") + str(self.atom)

    @property
    def predicate(self) -> str:
        return self.atom.predicate

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.negated)

    def is_ground(self) -> bool:
        return next(self.atom.vars(), None) is None

    def substitute(self, theta: Mapping[str, Term]) -> "Literal":
        return Literal(self.atom.substitute(theta), self.negated)


# -- annotations ---------------------------------------------------------------

FUNCTIONS = ("min", "max", "prod", "bsum", "compl")


@dataclass(frozen=True)
class AConst:
    value: Fraction

    def __str__(self) -> str:
        return format_grade(self.value)


@dataclass(frozen=True)
class AVar:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class AFunc:
    name: str
    args: Tuple["Annotation", ...]

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError(f"unknown annotation function {self.name}")
        if self.name == "compl":
            if len(self.args) != 1:
                raise ValueError("compl takes exactly one argument")
        elif len(self.args) < 2:
            raise ValueError(f"{self.name} takes at least two arguments")

    def __str__(self) -> str:
        return f"{self.name}({','.join(map(str, self.args))})"


Annotation = Union[AConst, AVar, AFunc]


def annotation_vars(ann: Annotation) -> Iterator[str]:
    if isinstance(ann, AVar):
        yield ann.name
    elif isinstance(ann, AFunc):
        for a in ann.args:
            yield from annotation_vars(a)


def eval_annotation(ann: Annotation, binding: Mapping[str, Fraction] = {}) -> Fraction:
    if isinstance(ann, AConst):
        return ann.value
    if isinstance(ann, AVar):
        try:
            return binding[ann.name]
        except KeyError:
            raise UnboundAnnotationVariable(ann.name) from None
    vals = [eval_annotation(a, binding) for a in ann.args]
    if ann.name == "min":
        return min(vals)
    if ann.name == "max":
        return max(vals)
    if ann.name == "prod":
        out = ONE
        for v in vals:
            out *= v
        return out
    if ann.name == "bsum":
        return min(ONE, sum(vals, ZERO))
    return ONE - vals[0]


def substitute_annotation(ann: Annotation, beta: Mapping[str, Fraction]) -> Annotation:
    """Replace bound variables and fold any function whose arguments became constant."""
    if isinstance(ann, AVar):
        return AConst(beta[ann.name]) if ann.name in beta else ann
    if isinstance(ann, AFunc):
        args = tuple(substitute_annotation(a, beta) for a in ann.args)
        if all(isinstance(a, AConst) for a in args):
            return AConst(eval_annotation(AFunc(ann.name, args)))
        return AFunc(ann.name, args)
    return ann


@dataclass(frozen=True)
class AnnotatedLiteral:
    literal: Literal
    annotation: Annotation

    def __str__(self) -> str:
        return f"{self.literal}:{self.annotation}"

    def vars(self) -> Iterator[str]:
        return self.literal.atom.vars()

    def annotation_vars(self) -> Iterator[str]:
        return annotation_vars(self.annotation)

    def grade(self) -> Fraction:
        """Constant value of the annotation; the literal must be annotation-ground."""
        return eval_annotation(self.annotation)

    def substitute(self, theta, beta) -> "AnnotatedLiteral":
        return AnnotatedLiteral(self.literal.substitute(theta), substitute_annotation(self.annotation, beta))


@dataclass(frozen=True)
class Comparison:
    """Built-in term comparison ``X != Y`` or ``X = Y`` used as a grounding filter."""

    op: str
    left: Term
    right: Term

    def __str__(self) -> str:
        return f"{self.left} {self.op} {self.right}"

    def vars(self) -> Iterator[str]:
        yield from term_vars(self.left)
        yield from term_vars(self.right)

    def holds(self, theta: Mapping[str, Term]) -> bool:
        same = substitute_term(self.left, theta) == substitute_term(self.right, theta)
        return same if self.op == "=" else not same


# -- rules -------------------------------------------------------------------


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 0


@dataclass(frozen=True)
class GeneratorRule:
    head: Tuple[AnnotatedLiteral, ...]
    pos_body: Tuple[AnnotatedLiteral, ...] = ()
    neg_body: Tuple[AnnotatedLiteral, ...] = ()
    builtins: Tuple[Comparison, ...] = ()
    id: str = ""
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.head:
            raise ValueError("generator rule needs at least one head disjunct")

    def literals(self) -> Iterator[AnnotatedLiteral]:
        yield from self.head
        yield from self.pos_body
        yield from self.neg_body

    def is_ground(self) -> bool:
        return all(
            next(al.vars(), None) is None and next(al.annotation_vars(), None) is None
            for al in self.literals()
        ) and not self.builtins

    def is_fact(self) -> bool:
        return len(self.head) == 1 and not self.pos_body and not self.neg_body

    def __str__(self) -> str:
        from .parser import render_rule

        return render_rule(self)


@dataclass(frozen=True)
class Pos:
    literal: AnnotatedLiteral


@dataclass(frozen=True)
class Naf:
    """Negation as failure applied to a single annotated literal."""

    literal: AnnotatedLiteral


@dataclass(frozen=True)
class And:
    left: "BooleanCombination"
    right: "BooleanCombination"


@dataclass(frozen=True)
class Or:
    left: "BooleanCombination"
    right: "BooleanCombination"


BooleanCombination = Union[Pos, Naf, And, Or]


def combination_literals(c: BooleanCombination) -> Iterator[AnnotatedLiteral]:
    if isinstance(c, (Pos, Naf)):
        yield c.literal
    else:
        yield from combination_literals(c.left)
        yield from combination_literals(c.right)


def map_combination(c: BooleanCombination, fn) -> BooleanCombination:
    """Rebuild ``c`` with ``fn`` applied to every annotated literal."""
    if isinstance(c, Pos):
        return Pos(fn(c.literal))
    if isinstance(c, Naf):
        return Naf(fn(c.literal))
    return type(c)(map_combination(c.left, fn), map_combination(c.right, fn))


@dataclass(frozen=True)
class PreferenceRule:
    combos: Tuple[BooleanCombination, ...]
    pos_body: Tuple[AnnotatedLiteral, ...] = ()
    neg_body: Tuple[AnnotatedLiteral, ...] = ()
    builtins: Tuple[Comparison, ...] = ()
    id: str = ""
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.combos:
            raise ValueError("preference rule needs at least one combination")

    def literals(self) -> Iterator[AnnotatedLiteral]:
        for c in self.combos:
            yield from combination_literals(c)
        yield from self.pos_body
        yield from self.neg_body

    def is_ground(self) -> bool:
        return all(
            next(al.vars(), None) is None and next(al.annotation_vars(), None) is None
            for al in self.literals()
        ) and not self.builtins

    def __str__(self) -> str:
        from .parser import render_rule

        return render_rule(self)


@dataclass(frozen=True)
class Program:
    gen: Tuple[GeneratorRule, ...] = ()
    pref: Tuple[PreferenceRule, ...] = ()

    def __post_init__(self):
        seen = set()
        for r in (*self.gen, *self.pref):
            if r.id in seen:
                raise DuplicateRuleId(r.id)
            seen.add(r.id)

    def rules(self):
        yield from self.gen
        yield from self.pref

    def is_ground(self) -> bool:
        return all(r.is_ground() for r in self.rules())


# -- interpretations -------------------------------------------------------------


class FuzzyInterpretation(Mapping[Literal, Fraction]):
    """Finite-support fuzzy interpretation.

    Literals outside the support have grade 0; zero grades passed to the
    constructor are dropped.  A literal and its complement may not both be
    in the support.
    """

    __slots__ = ("_grades", "_hash")

    def __init__(self, grades: Union[Mapping[Literal, Fraction], Iterable[Tuple[Literal, Fraction]]] = ()):
        items = grades.items() if isinstance(grades, Mapping) else grades
        clean = {}
        for lit, g in items:
            g = to_grade(g)
            if g:
                clean[lit] = g
        for lit in clean:
            if lit.negated and lit.complement() in clean:
                raise InconsistentInterpretation(lit.atom)
        self._grades = clean
        self._hash = None

    def grade(self, lit: Literal) -> Fraction:
        return self._grades.get(lit, ZERO)

    def __getitem__(self, lit: Literal) -> Fraction:
        return self._grades[lit]

    def __iter__(self):
        return iter(self._grades)

    def __len__(self) -> int:
        return len(self._grades)

    def __eq__(self, other) -> bool:
        if isinstance(other, FuzzyInterpretation):
            return self._grades == other._grades
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._grades.items()))
        return self._hash

    def __le__(self, other: "FuzzyInterpretation") -> bool:
        """Pointwise order."""
        return all(g <= other.grade(lit) for lit, g in self._grades.items())

    def __lt__(self, other: "FuzzyInterpretation") -> bool:
        return self <= other and self != other

    def sort_key(self):
        return tuple(sorted((str(lit), g) for lit, g in self._grades.items()))

    def as_strings(self) -> dict:
        return {str(lit): format_grade(g) for lit, g in sorted(self._grades.items(), key=lambda kv: str(kv[0]))}

    def restrict(self, keep) -> "FuzzyInterpretation":
        return FuzzyInterpretation({l: g for l, g in self._grades.items() if keep(l)})

    def __repr__(self) -> str:
        body = ", ".join(f"{k}:{v}" for k, v in self.as_strings().items())
        return "{" + body + "}"


def grade_of(interp: Mapping[Literal, Fraction], lit: Literal) -> Fraction:
    return interp.get(lit, ZERO)
