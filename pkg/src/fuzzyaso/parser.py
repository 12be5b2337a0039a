"""Reader and printer for the ``.faso`` program format.

Example::

    % generator rules
    teaches(i,c1):0.3 v teaches(i,c2):0.5.
    in(r1,C):0.8 <- teaches(i1,C):V, course(C):1.
    inconsistent:1 <- not inconsistent:1, teaches(I,C):V, teaches(J,C):W, I != J.
    % preference rules
    @r3 #prefer at(s1,c1):0.5 || at(s2,c1):0.5 <- teaches(i1,c1):0.9.
    #prefer a:1 && not b:0.5 > c:0.3.

An optional ``@label`` names a rule; otherwise generator rules are
numbered ``g1, g2, ...`` and preference rules ``p1, p2, ...``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple

from .errors import AnnotationRangeError, ArityError, FasoSyntaxError, SafetyError
from .kernel import (
    FUNCTIONS,
    AConst,
    AFunc,
    And,
    AnnotatedLiteral,
    Atom,
    AVar,
    Comparison,
    Compound,
    Const,
    GeneratorRule,
    Literal,
    Naf,
    Or,
    Pos,
    PreferenceRule,
    Program,
    SourceSpan,
    Var,
    combination_literals,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<number>\d+/\d+|\d+(?:\.\d+)?)
  | (?P<prefer>\#prefer\b)
  | (?P<label>@[a-z][a-z0-9_]*)
  | (?P<op><-|&&|\|\||!=|[=>(),.:\-])
  | (?P<ident>[a-z][A-Za-z0-9_']*)
  | (?P<var>[A-Z][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)

KEYWORDS = ("v", "not")
_LABEL = re.compile(r"[a-z][a-z0-9_]*\Z")


class _Tok:
    __slots__ = ("kind", "text", "span")

    def __init__(self, kind, text, span):
        self.kind = kind
        self.text = text
        self.span = span

    def __repr__(self):
        return f"{self.kind}:{self.text!r}"


def tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        span = SourceSpan(line, pos - line_start + 1, 1)
        if m is None:
            raise FasoSyntaxError(f"unexpected character {text[pos]!r}", span)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            if kind == "ident" and chunk in KEYWORDS:
                kind = chunk
            toks.append(_Tok(kind, chunk, SourceSpan(span.line, span.column, len(chunk))))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", SourceSpan(line, pos - line_start + 1, 0)))
    return toks


def parse_grade_text(text: str, span=None) -> Fraction:
    try:
        value = Fraction(text)
    except ZeroDivisionError:
        raise FasoSyntaxError(f"invalid grade {text}", span) from None
    if value > 1:
        raise AnnotationRangeError(f"annotation {text} outside [0, 1]", span)
    return value


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    # token helpers
    def peek(self, offset=0) -> _Tok:
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def at(self, *texts) -> bool:
        t = self.peek()
        return (t.kind == "op" and t.text in texts) or t.kind in texts

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if not self.at(text):
            raise FasoSyntaxError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.span)
        return self.next()

    def error(self, what: str):
        t = self.peek()
        raise FasoSyntaxError(f"expected {what}, found {t.text or 'end of input'!r}", t.span)

    # grammar
    def program(self):
        stmts = []
        while self.peek().kind != "eof":
            stmts.append(self.statement())
        return stmts

    def statement(self):
        start = self.peek().span
        label = None
        if self.peek().kind == "label":
            label = self.next().text[1:]
        if self.peek().kind == "prefer":
            self.next()
            combos = [self.combination()]
            while self.at(">"):
                self.next()
                combos.append(self.combination())
            body = self.body()
            end = self.expect(".")
            kind = "pref"
            parts = (tuple(combos), body)
        else:
            head = [self.annotated_literal()]
            while self.at("v"):
                self.next()
                head.append(self.annotated_literal())
            body = self.body()
            end = self.expect(".")
            kind = "gen"
            parts = (tuple(head), body)
        length = end.span.column - start.column + 1 if end.span.line == start.line else 0
        return kind, label, parts, SourceSpan(start.line, start.column, max(length, 0))

    def body(self):
        pos, neg, builtins = [], [], []
        if not self.at("<-"):
            return pos, neg, builtins
        self.next()
        if self.at("."):
            return pos, neg, builtins
        while True:
            if self.at("not"):
                self.next()
                neg.append(self.annotated_literal())
            elif self.peek().kind == "var" or self.peek().kind == "number":
                builtins.append(self.comparison(self.term()))
            elif self.at("-"):
                pos.append(self.annotated_literal())
            elif self.peek().kind == "ident":
                save = self.i
                self.atom()
                if self.at("!=", "="):
                    self.i = save
                    builtins.append(self.comparison(self.term()))
                else:
                    self.i = save
                    pos.append(self.annotated_literal())
            else:
                self.error("body literal")
            if not self.at(","):
                break
            self.next()
        return pos, neg, builtins

    def comparison(self, left):
        if not self.at("!=", "="):
            self.error("'!=' or '='")
        op = self.next().text
        return Comparison(op, left, self.term())

    def combination(self):
        left = self.conjunction()
        while self.at("||"):
            self.next()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.combo_unit()
        while self.at("&&"):
            self.next()
            left = And(left, self.combo_unit())
        return left

    def combo_unit(self):
        if self.at("("):
            self.next()
            inner = self.combination()
            self.expect(")")
            return inner
        if self.at("not"):
            self.next()
            return Naf(self.annotated_literal())
        return Pos(self.annotated_literal())

    def annotated_literal(self) -> AnnotatedLiteral:
        negated = False
        if self.at("-"):
            self.next()
            negated = True
        atom = self.atom()
        self.expect(":")
        return AnnotatedLiteral(Literal(atom, negated), self.annotation())

    def atom(self) -> Atom:
        t = self.peek()
        if t.kind != "ident":
            self.error("predicate name")
        self.next()
        return Atom(t.text, self.arguments())

    def arguments(self) -> Tuple:
        if not self.at("("):
            return ()
        self.next()
        args = [self.term()]
        while self.at(","):
            self.next()
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    def term(self):
        t = self.peek()
        if t.kind == "var":
            self.next()
            return Var(t.text)
        if t.kind == "number" and re.fullmatch(r"\d+", t.text):
            self.next()
            return Const(t.text)
        if t.kind == "ident":
            self.next()
            args = self.arguments()
            return Compound(t.text, args) if args else Const(t.text)
        self.error("term")

    def annotation(self):
        t = self.peek()
        if t.kind == "number":
            self.next()
            return AConst(parse_grade_text(t.text, t.span))
        if t.kind == "var":
            self.next()
            return AVar(t.text)
        if t.kind == "op" and t.text == "-" and self.peek(1).kind == "number":
            raise AnnotationRangeError(f"annotation -{self.peek(1).text} outside [0, 1]", t.span)
        if t.kind == "ident" and t.text in FUNCTIONS:
            self.next()
            self.expect("(")
            args = [self.annotation()]
            while self.at(","):
                self.next()
                args.append(self.annotation())
            self.expect(")")
            try:
                return AFunc(t.text, tuple(args))
            except ValueError as exc:
                raise FasoSyntaxError(str(exc), t.span) from None
        self.error("annotation (grade, variable or function)")


def parse_program(text: str) -> Program:
    stmts = _Parser(text).program()
    gen, pref = [], []
    for kind, label, parts, span in stmts:
        if kind == "gen":
            head, (pos, neg, bi) = parts
            rid = label or f"g{len(gen) + 1}"
            gen.append(GeneratorRule(head, tuple(pos), tuple(neg), tuple(bi), rid, span))
        else:
            combos, (pos, neg, bi) = parts
            rid = label or f"p{len(pref) + 1}"
            pref.append(PreferenceRule(combos, tuple(pos), tuple(neg), tuple(bi), rid, span))
    seen = {}
    for r in (*gen, *pref):
        if r.id in seen:
            raise FasoSyntaxError(f"duplicate rule label {r.id}", r.span)
        seen[r.id] = r
    program = Program(tuple(gen), tuple(pref))
    check_program(program)
    return program


def check_program(program: Program) -> None:
    """Arity consistency and rule safety."""
    arities = {}
    for r in program.rules():
        for al in r.literals():
            a = al.literal.atom
            expected = arities.setdefault(a.predicate, a.arity)
            if expected != a.arity:
                raise ArityError(a.predicate, a.arity, expected, r.span)
    for r in program.gen:
        check_generator_safety(r)
    for r in program.pref:
        check_preference_safety(r)


def _bound_annotation_vars(pos_body):
    return {al.annotation.name for al in pos_body if isinstance(al.annotation, AVar)}


def check_generator_safety(r: GeneratorRule) -> None:
    obj = {v for al in r.pos_body for v in al.vars()}
    for al in (*r.head, *r.neg_body):
        for v in al.vars():
            if v not in obj:
                raise SafetyError(r.id, v, r.span)
    for c in r.builtins:
        for v in c.vars():
            if v not in obj:
                raise SafetyError(r.id, v, r.span)
    bound = _bound_annotation_vars(r.pos_body)
    for al in r.literals():
        for v in al.annotation_vars():
            if v not in bound:
                raise SafetyError(r.id, v, r.span)


def check_preference_safety(r: PreferenceRule) -> None:
    # object variables range over the Herbrand universe; an annotation
    # variable needs a direct occurrence that binds it during grounding:
    # on a positive body literal, or (head-only variables) on a combination literal
    body_bound = _bound_annotation_vars(r.pos_body)
    for al in (*r.pos_body, *r.neg_body):
        for v in al.annotation_vars():
            if v not in body_bound:
                raise SafetyError(r.id, v, r.span)
    bound = set(body_bound)
    for c in r.combos:
        bound |= {al.annotation.name for al in combination_literals(c) if isinstance(al.annotation, AVar)}
    for c in r.combos:
        for al in combination_literals(c):
            for v in al.annotation_vars():
                if v not in bound:
                    raise SafetyError(r.id, v, r.span)
    obj = {v for al in r.literals() for v in al.vars()}
    for c in r.builtins:
        for v in c.vars():
            if v not in obj:
                raise SafetyError(r.id, v, r.span)


# -- rendering ---------------------------------------------------------------


def _render_combination(c, parent=None) -> str:
    if isinstance(c, Pos):
        return str(c.literal)
    if isinstance(c, Naf):
        return f"not {c.literal}"
    op = " && " if isinstance(c, And) else " || "
    left = _render_combination(c.left, type(c))
    right = _render_combination(c.right, type(c))
    # left-associative parse: a right child of the same operator needs brackets
    if isinstance(c.right, type(c)):
        right = f"({right})"
    text = left + op + right
    if parent is And and isinstance(c, Or):
        return f"({text})"
    return text


def _render_body(r) -> str:
    parts = [str(al) for al in r.pos_body]
    parts += [f"not {al}" for al in r.neg_body]
    parts += [str(c) for c in r.builtins]
    return " <- " + ", ".join(parts) if parts else ""


def render_rule(r) -> str:
    if isinstance(r, GeneratorRule):
        return " v ".join(map(str, r.head)) + _render_body(r) + "."
    combos = " > ".join(_render_combination(c) for c in r.combos)
    return "#prefer " + combos + _render_body(r) + "."


def render_program(p: Program) -> str:
    lines = []
    for n, r in enumerate(p.gen, 1):
        label = "" if r.id == f"g{n}" else f"@{r.id} "
        lines.append(label + render_rule(r))
    for n, r in enumerate(p.pref, 1):
        label = "" if r.id == f"p{n}" else f"@{r.id} "
        lines.append(label + render_rule(r))
    return "".join(line + "\n" for line in lines)


def is_valid_label(rule_id: str) -> bool:
    return bool(_LABEL.match(rule_id))
