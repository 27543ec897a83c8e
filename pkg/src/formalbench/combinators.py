"""Reduction and abstraction for the operations language.

Reduction is normal order (leftmost-outermost) over five rule shapes:
the two basic combinators, the two pair projections applied to a
literal pair, and definition by cases applied to two exact numerals.
Everything else — partial applications, projections of non-pairs,
case terms over non-numerals, comprehension constants — is inert, so
every term either reaches a normal form or runs out of budget.

Lambda abstraction is the standard bracket algorithm (identity, then
constant, then application), defined only for operation variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import coding
from .expressions import Bot, OP, OpConstant, SortError, Variable, Zero, typed_set
from .external import (
    App,
    DC,
    ExternalTerm,
    KC,
    P1C,
    P2C,
    PC,
    SC,
    comp,
    numeral_value,
    term_substitute,
    term_vars,
)

DEFAULT_BUDGET = 10_000


@dataclass(frozen=True)
class ReductionResult:
    """Outcome of a bounded reduction."""

    term: ExternalTerm
    steps: int
    normal: bool
    trace: tuple[ExternalTerm, ...] = ()


def root_step(term: ExternalTerm) -> ExternalTerm | None:
    """Contract the root if it is a redex; ``None`` otherwise."""
    match term:
        case App(App(OpConstant("kc", None), a), _):
            return a
        case App(App(App(OpConstant("sc", None), a), b), c):
            return App(App(a, c), App(b, c))
        case App(OpConstant("p1c", None), App(App(OpConstant("pc", None), a), _)):
            return a
        case App(OpConstant("p2c", None), App(App(OpConstant("pc", None), _), b)):
            return b
        case App(App(App(App(OpConstant("dc", None), a), b), u), v):
            left = numeral_value(u)
            right = numeral_value(v)
            if left is not None and right is not None:
                return a if left == right else b
    return None


def step(term: ExternalTerm) -> ExternalTerm | None:
    """One leftmost-outermost step; ``None`` when the term is normal."""
    contracted = root_step(term)
    if contracted is not None:
        return contracted
    if isinstance(term, App):
        fn_next = step(term.fn)
        if fn_next is not None:
            return App(fn_next, term.arg)
        arg_next = step(term.arg)
        if arg_next is not None:
            return App(term.fn, arg_next)
    return None


def reduce_term(
    term: ExternalTerm, budget: int = DEFAULT_BUDGET, trace: bool = False
) -> ReductionResult:
    """Reduce up to ``budget`` steps, optionally keeping every stage."""
    stages = [term] if trace else None
    steps = 0
    while steps < budget:
        next_term = step(term)
        if next_term is None:
            return ReductionResult(term, steps, True, tuple(stages or ()))
        term = next_term
        steps += 1
        if stages is not None:
            stages.append(term)
    normal = step(term) is None
    return ReductionResult(term, steps, normal, tuple(stages or ()))


def lambda_abstract(var: Variable, body: ExternalTerm) -> ExternalTerm:
    """Bracket abstraction of an operation variable out of a term."""
    if not (isinstance(var, Variable) and var.sort == OP):
        raise SortError(f"abstraction binds operation variables, got {var!r}")
    if body == var:
        return App(App(SC, KC), KC)
    if var not in term_vars(body):
        return App(KC, body)
    if isinstance(body, App):
        return App(
            App(SC, lambda_abstract(var, body.fn)),
            lambda_abstract(var, body.arg),
        )
    raise SortError(f"cannot abstract {var!r} from {body!r}")


def successor_term() -> ExternalTerm:
    """The operation sending each numeral to its successor."""
    x = Variable(0, OP)
    return lambda_abstract(x, App(App(PC, x), Zero()))


def empty_set_code(level: int) -> int:
    """Falsum-comprehension code binding a variable of the given type.

    The coded abstraction defines the canonical empty set one type above
    the bound variable; a type-j parameter is closed by the constant
    with the type-j bound variable.
    """
    if level < 0:
        raise ValueError("type levels are non-negative")
    bound = Variable(0, OP) if level == 0 else Variable(0, typed_set(level))
    return coding.encode_abstraction(bound, [], Bot())


def closing_value(var: Variable) -> ExternalTerm:
    """Canonical closed term for one open parameter."""
    if var.sort.kind == "num":
        return Zero()
    if var.sort == OP:
        return KC
    if var.sort.kind == "typed-set":
        return comp(empty_set_code(var.sort.level))
    raise SortError(f"no closing value for {var!r}")


def close_term(term: ExternalTerm) -> ExternalTerm:
    """Replace every variable by its canonical closed value."""
    for var in sorted(term_vars(term), key=lambda v: (v.sort.kind, v.sort.level, v.index)):
        term = term_substitute(term, var, closing_value(var))
    return term


class Disjunct(Enum):
    """Which half of a disjunction a realizer selects."""

    LEFT = "left"
    RIGHT = "right"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ExtractResult:
    """Outcome of disjunct extraction from a realizer."""

    choice: Disjunct
    component: ExternalTerm
    steps: int


def extract_disjunct(term: ExternalTerm, budget: int = DEFAULT_BUDGET) -> ExtractResult:
    """Read a realizer's selector component.

    The term is closed, its first pair component is reduced, and the
    resulting numeral picks the disjunct: 0 means left, any other
    numeral means right.  A non-numeral normal form or an exhausted
    budget reports unknown.
    """
    selector = App(P1C, close_term(term))
    result = reduce_term(selector, budget)
    value = numeral_value(result.term)
    if value is None or not result.normal:
        return ExtractResult(Disjunct.UNKNOWN, result.term, result.steps)
    choice = Disjunct.LEFT if value == 0 else Disjunct.RIGHT
    return ExtractResult(choice, result.term, result.steps)
