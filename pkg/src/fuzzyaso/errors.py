"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations


class FuzzyASOError(Exception):
    """Base class for all errors raised by this package."""


class InputError(FuzzyASOError):
    """Malformed or semantically invalid input program."""


class ResourceLimitError(FuzzyASOError):
    """A configured resource cap was hit."""


class UnboundAnnotationVariable(FuzzyASOError):
    def __init__(self, name: str):
        super().__init__(f"annotation variable {name} is unbound")
        self.name = name


class InconsistentInterpretation(FuzzyASOError):
    def __init__(self, atom):
        super().__init__(f"interpretation contains both {atom} and its classical negation")
        self.atom = atom


class ParseError(InputError):
    """Error tied to a location in the source text."""

    def __init__(self, message: str, span=None):
        where = f"{span.line}:{span.column}: " if span is not None else ""
        super().__init__(where + message)
        self.message = message
        self.span = span


class FasoSyntaxError(ParseError):
    pass


class AnnotationRangeError(ParseError):
    pass


class SafetyError(InputError):
    def __init__(self, rule_id: str, variable: str, span=None):
        where = f"{span.line}:{span.column}: " if span is not None else ""
        super().__init__(f"{where}rule {rule_id}: variable {variable} is unsafe")
        self.rule_id = rule_id
        self.variable = variable
        self.span = span


class ArityError(InputError):
    def __init__(self, predicate: str, seen: int, expected: int, span=None):
        where = f"{span.line}:{span.column}: " if span is not None else ""
        super().__init__(
            f"{where}predicate {predicate} used with arity {seen}, expected {expected}"
        )
        self.predicate = predicate
        self.seen = seen
        self.expected = expected
        self.span = span


class DuplicateRuleId(InputError):
    def __init__(self, rule_id: str):
        super().__init__(f"duplicate rule id {rule_id}")
        self.rule_id = rule_id


class ReservedPrefixCollision(InputError):
    def __init__(self, predicate: str):
        super().__init__(f"predicate {predicate} uses the reserved prefix 'aux_'")
        self.predicate = predicate


class GroundingExplosion(ResourceLimitError):
    def __init__(self, limit: int):
        super().__init__(f"grounding produced more than {limit} rule instances")
        self.limit = limit


class IterationCapExceeded(ResourceLimitError):
    def __init__(self, limit: int):
        super().__init__(f"fixpoint iteration exceeded {limit} steps")
        self.limit = limit


class CandidateSpaceExceeded(ResourceLimitError):
    def __init__(self, limit: int, size: int):
        super().__init__(f"candidate space of size {size} exceeds limit {limit}")
        self.limit = limit
        self.size = size


class SizeExplosion(ResourceLimitError):
    def __init__(self, limit: int):
        super().__init__(f"DNF expansion exceeds {limit} clauses")
        self.limit = limit


class CorrespondenceFailure(FuzzyASOError):
    def __init__(self, message: str):
        super().__init__(message)
