"""Desk-scale semantics over the standard model of arithmetic.

Three entry points.  :func:`eval_closed_term` computes the value of a
numeric term against a parameter list.  :func:`eval_arithmetic` gives a
three-valued verdict on an arithmetic formula, searching quantifiers
over an initial segment of the naturals.  :func:`tr_eval` evaluates a
coded truth-language sentence at a stage, descending through truth
atoms one stage at a time.

``true`` and ``false`` only ever report what the standard model
certifies: an existential claim becomes true on a found witness but
never false just because the search bound ran out, and a universal
claim becomes false on a counterexample but never true.  Everything
else is ``unknown``, tagged with whether the search space or the step
budget was the obstacle.  Connectives combine sub-verdicts in the
strong three-valued sense (both sides are always evaluated), so a
conjunction with one false side is false even when the other side is
unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import coding
from .expressions import (
    Add,
    And,
    Bot,
    Eq,
    Exists,
    Forall,
    Formula,
    Imp,
    Language,
    Mul,
    NumTerm,
    One,
    Or,
    TruthAtom,
    Variable,
    Zero,
    free_vars,
)

__all__ = [
    "DEFAULT_BOUND",
    "EvaluationError",
    "TruthVerdict",
    "eval_arithmetic",
    "eval_closed_term",
    "tr_eval",
]

DEFAULT_BOUND = 100


class EvaluationError(ValueError):
    """A term or formula fell outside what the evaluator handles."""


@dataclass(frozen=True)
class TruthVerdict:
    """Three-valued answer: ``true``, ``false``, or ``unknown``.

    ``reason`` explains an unknown — ``unbounded-quantifier`` when a
    quantifier search exhausted its bound without deciding, ``budget``
    when the optional step budget ran out.  ``witness`` carries the
    deciding instance when a quantifier settled the answer: a witness
    for an existential, a counterexample for a universal.
    """

    value: str
    reason: str | None = None
    witness: int | None = None

    @property
    def decided(self) -> bool:
        return self.value != "unknown"


def _true(witness: int | None = None) -> TruthVerdict:
    return TruthVerdict("true", witness=witness)


def _false(witness: int | None = None) -> TruthVerdict:
    return TruthVerdict("false", witness=witness)


def _unknown(reason: str) -> TruthVerdict:
    return TruthVerdict("unknown", reason=reason)


# Environments are packed into single numbers whose size grows fast
# with their contents, so unpacking the same packed environment on
# every truth-atom descent is the dominant cost; it is pure, hence
# memoized across calls.
@lru_cache(maxsize=512)
def _unpack_env(packed: int) -> tuple[int, ...]:
    return tuple(coding.seq_decode(packed))


class _Budget:
    """Mutable step counter; ``None`` means unlimited."""

    def __init__(self, limit: int | None) -> None:
        self.left = limit

    def spend(self) -> bool:
        if self.left is None:
            return True
        if self.left <= 0:
            return False
        self.left -= 1
        return True


def _term_value(term: NumTerm, values: dict[int, int]) -> int:
    match term:
        case Zero():
            return 0
        case One():
            return 1
        case Add(a, b):
            return _term_value(a, values) + _term_value(b, values)
        case Mul(a, b):
            return _term_value(a, values) * _term_value(b, values)
        case Variable(index, sort) if sort.kind == "num":
            return values.get(index, 0)
    raise EvaluationError(f"not a numeric term: {term!r}")


def eval_closed_term(term: NumTerm, env: Sequence[int] = ()) -> int:
    """Value of a numeric term whose parameters ``env`` covers.

    ``env`` lists parameter values 1-based: variable ``n_i`` reads the
    i-th entry.  A free variable without an entry (index 0, or past
    the end of the list) raises :class:`EvaluationError`.
    """
    for var in sorted(free_vars(term), key=lambda v: v.index):
        if var.sort.kind != "num":
            raise EvaluationError(f"not a numeric term: {term!r}")
        if not 1 <= var.index <= len(env):
            raise EvaluationError(f"uncovered parameter n_{var.index}")
    return _term_value(term, {i + 1: value for i, value in enumerate(env)})


def _pick_reason(*verdicts: TruthVerdict) -> str:
    for verdict in verdicts:
        if verdict.value == "unknown" and verdict.reason == "budget":
            return "budget"
    for verdict in verdicts:
        if verdict.value == "unknown":
            return verdict.reason or "unbounded-quantifier"
    return "unbounded-quantifier"


def _verdict_and(a: TruthVerdict, b: TruthVerdict) -> TruthVerdict:
    if a.value == "false" or b.value == "false":
        return _false()
    if a.value == "true" and b.value == "true":
        return _true()
    return _unknown(_pick_reason(a, b))


def _verdict_or(a: TruthVerdict, b: TruthVerdict) -> TruthVerdict:
    if a.value == "true" or b.value == "true":
        return _true()
    if a.value == "false" and b.value == "false":
        return _false()
    return _unknown(_pick_reason(a, b))


def _verdict_imp(a: TruthVerdict, b: TruthVerdict) -> TruthVerdict:
    if a.value == "false" or b.value == "true":
        return _true()
    if a.value == "true" and b.value == "false":
        return _false()
    return _unknown(_pick_reason(a, b))


_COMBINE = {And: _verdict_and, Or: _verdict_or, Imp: _verdict_imp}


def _search(
    quantifier: type,
    index: int,
    body: Formula,
    values: dict[int, int],
    bound: int,
    steps: _Budget,
    recurse,
) -> TruthVerdict:
    """Bounded quantifier search over {0..bound} for either quantifier."""
    unknowns: list[TruthVerdict] = []
    shadowed = values.get(index)
    try:
        for candidate in range(bound + 1):
            values[index] = candidate
            sub = recurse(body, values, bound, steps)
            if quantifier is Exists and sub.value == "true":
                return _true(witness=candidate)
            if quantifier is Forall and sub.value == "false":
                return _false(witness=candidate)
            if sub.value == "unknown":
                unknowns.append(sub)
    finally:
        if shadowed is None:
            values.pop(index, None)
        else:
            values[index] = shadowed
    if unknowns:
        return _unknown(_pick_reason(*unknowns))
    return _unknown("unbounded-quantifier")


def eval_arithmetic(
    formula: Formula,
    env: Sequence[int] = (),
    bound: int = DEFAULT_BOUND,
    *,
    budget: int | None = None,
) -> TruthVerdict:
    """Three-valued truth of an arithmetic formula under ``env``.

    Equalities compute both sides (variables without an ``env`` entry
    read 0); quantifiers search {0..bound}; quantifier-free formulas
    always decide.  ``budget`` optionally caps the number of formula
    nodes visited, after which everything answers unknown(budget).
    """
    values = {i + 1: value for i, value in enumerate(env)}
    return _arithmetic_verdict(formula, values, bound, _Budget(budget))


def _arithmetic_verdict(
    formula: Formula, values: dict[int, int], bound: int, steps: _Budget
) -> TruthVerdict:
    if not steps.spend():
        return _unknown("budget")
    match formula:
        case Bot():
            return _false()
        case Eq(a, b):
            equal = _term_value(a, values) == _term_value(b, values)
            return _true() if equal else _false()
        case And(a, b) | Or(a, b) | Imp(a, b):
            combine = _COMBINE[type(formula)]
            return combine(
                _arithmetic_verdict(a, values, bound, steps),
                _arithmetic_verdict(b, values, bound, steps),
            )
        case Forall(Variable(index, sort), body) | Exists(
            Variable(index, sort), body
        ) if sort.kind == "num":
            return _search(
                type(formula), index, body, values, bound, steps, _arithmetic_verdict
            )
    raise EvaluationError(f"not an arithmetic formula: {formula!r}")


def tr_eval(
    level: int,
    code: int,
    env: Sequence[int] = (),
    bound: int = DEFAULT_BOUND,
    *,
    budget: int | None = None,
) -> TruthVerdict:
    """Staged truth of the coded sentence ``code`` under ``env``.

    False outright unless ``code`` is a stage ``level - 1`` formula
    whose parameters ``env`` covers.  Equalities compute both sides;
    connectives combine; quantifiers search {0..bound} on an updated
    environment; a truth atom computes its two arguments — a code and
    a packed environment — and descends to its own (strictly lower)
    stage, where the same coverage gate applies to the inner code.
    Recursion terminates: descent lowers the stage, everything else
    lowers the formula rank.
    """
    if level < 1:
        raise EvaluationError("truth evaluation starts at stage 1")
    cache: dict | None = {} if budget is None else None
    return _tr_gate(level, code, list(env), bound, _Budget(budget), cache)


def _tr_gate(
    level: int,
    code: int,
    env: Sequence[int],
    bound: int,
    steps: _Budget,
    cache: dict | None,
) -> TruthVerdict:
    # A quantifier search above a truth atom asks the same inner
    # question once per candidate; caching (sound without a budget,
    # since evaluation is pure) collapses those repeats.
    key = None
    if cache is not None:
        key = (level, code, tuple(env))
        hit = cache.get(key)
        if hit is not None:
            return hit
    verdict = _tr_checked(level, code, env, bound, steps, cache)
    if key is not None:
        cache[key] = verdict
    return verdict


def _tr_checked(
    level: int,
    code: int,
    env: Sequence[int],
    bound: int,
    steps: _Budget,
    cache: dict | None,
) -> TruthVerdict:
    if not coding.form_p(level - 1, code):
        return _false()
    # Coverage, computed on the list itself: packing the environment
    # just to measure its length would square the already-large codes
    # sitting in it.  Same predicate as coding.ev_p.
    if coding.max_param(code) > len(env):
        return _false()
    formula = coding.decode_formula(code, Language.TRUTH)
    values = {i + 1: value for i, value in enumerate(env)}
    return _tr_verdict(level, formula, values, bound, steps, cache)


def _tr_verdict(
    level: int,
    formula: Formula,
    values: dict[int, int],
    bound: int,
    steps: _Budget,
    cache: dict | None,
) -> TruthVerdict:
    if not steps.spend():
        return _unknown("budget")
    match formula:
        case Bot():
            return _false()
        case Eq(a, b):
            equal = _term_value(a, values) == _term_value(b, values)
            return _true() if equal else _false()
        case TruthAtom(stage, code_term, env_term):
            inner_code = _term_value(code_term, values)
            inner_env = _unpack_env(_term_value(env_term, values))
            return _tr_gate(stage, inner_code, inner_env, bound, steps, cache)
        case And(a, b) | Or(a, b) | Imp(a, b):
            combine = _COMBINE[type(formula)]
            return combine(
                _tr_verdict(level, a, values, bound, steps, cache),
                _tr_verdict(level, b, values, bound, steps, cache),
            )
        case Forall(Variable(index, _), body) | Exists(Variable(index, _), body):

            def recurse(sub, sub_values, sub_bound, sub_steps, _level=level):
                return _tr_verdict(_level, sub, sub_values, sub_bound, sub_steps, cache)

            return _search(type(formula), index, body, values, bound, steps, recurse)
    raise EvaluationError(f"not a truth-language formula: {formula!r}")
