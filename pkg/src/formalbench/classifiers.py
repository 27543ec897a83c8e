"""Syntactic class checks: elementary stages, simple stages, fragments.

Each check returns a :class:`ClassReport` that is truthy on success and
carries the path (child positions from the root) and reason of the
first violation otherwise, so tests and the CLI can point at the exact
offending node.
"""

from __future__ import annotations

from dataclasses import dataclass

from .expressions import (
    And,
    AppliesTo,
    AuxTruthSet,
    Bot,
    ClassMember,
    Eq,
    Exists,
    Forall,
    Formula,
    Imp,
    LeveledMember,
    NamesNumber,
    NamesTyped,
    Or,
    TruthAtom,
    TruthSetApp,
    TypedMember,
    Variable,
)


@dataclass(frozen=True)
class ClassReport:
    """Verdict of a class check, with a witness for failures."""

    ok: bool
    reason: str = ""
    path: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


_OK = ClassReport(True)


def _fail(reason: str, path: tuple[int, ...]) -> ClassReport:
    return ClassReport(False, reason, path)


def _operation_type(var: Variable) -> int | None:
    """Type level of an operations-language variable; numbers have none."""
    if var.sort.kind == "op":
        return 0
    if var.sort.kind == "typed-set":
        return var.sort.level
    return None


def is_elementary(stage: int, formula: Formula) -> ClassReport:
    """Whether an operations-language formula is stage-``stage`` elementary.

    Elementary at stage n: every type occurring is at most n, no
    quantifier binds a type-n variable, and no naming atom relates an
    operation to a type-n object.  Numeric variables and numeric
    equality are unconstrained.
    """
    return _elementary(stage, formula, ())


def _elementary(stage: int, formula: Formula, path: tuple[int, ...]) -> ClassReport:
    match formula:
        case Forall(var, body) | Exists(var, body):
            var_type = _operation_type(var)
            if var_type is not None and var_type > stage:
                return _fail(f"type {var_type} exceeds stage {stage}", path)
            if var_type == stage:
                return _fail(f"quantifier over a type-{stage} variable", path)
            return _elementary(stage, body, path + (1,))
        case And(a, b) | Or(a, b) | Imp(a, b):
            left = _elementary(stage, a, path + (0,))
            if not left:
                return left
            return _elementary(stage, b, path + (1,))
        case Bot() | Eq():
            return _OK
        case NamesTyped(level, _, _):
            if level == stage:
                return _fail(f"naming atom at the stage level {stage}", path)
            if level > stage:
                return _fail(f"type {level} exceeds stage {stage}", path)
            return _OK
        case NamesNumber():
            return _OK
        case AppliesTo(_, _, result):
            if isinstance(result, Variable):
                result_type = _operation_type(result)
                if result_type is not None and result_type > stage:
                    return _fail(f"type {result_type} exceeds stage {stage}", path)
            return _OK
        case TypedMember(level, _, _):
            if level + 1 > stage:
                return _fail(f"type {level + 1} exceeds stage {stage}", path)
            return _OK
    return _fail(f"not an operations-language formula: {formula!r}", path)


def _set_sort_level(expr) -> int:
    match expr:
        case AuxTruthSet(level):
            return level + 1
        case TruthSetApp(level, _):
            return level
        case Variable():
            return expr.sort.level
    raise ValueError(f"not a set expression: {expr!r}")


def is_k_simple(stage: int, formula: Formula) -> ClassReport:
    """Whether a leveled-arithmetic formula is ``stage``-simple.

    Simple at stage k: no set quantifiers at all, and no set sort above
    k anywhere.  Numeric quantifiers are unconstrained.
    """
    return _simple(stage, formula, ())


def _simple(stage: int, formula: Formula, path: tuple[int, ...]) -> ClassReport:
    match formula:
        case Forall(var, body) | Exists(var, body):
            if var.sort.kind != "num":
                return _fail("set quantifier in a simple formula", path)
            return _simple(stage, body, path + (1,))
        case And(a, b) | Or(a, b) | Imp(a, b):
            left = _simple(stage, a, path + (0,))
            if not left:
                return left
            return _simple(stage, b, path + (1,))
        case Bot() | Eq():
            return _OK
        case LeveledMember(level, _, container):
            level = max(level, _set_sort_level(container))
            if level > stage:
                return _fail(f"set sort {level} exceeds stage {stage}", path)
            return _OK
    return _fail(f"not a leveled-arithmetic formula: {formula!r}", path)


def fragment_of(formula: Formula) -> int:
    """Smallest stage whose fragment contains the formula.

    Operations formulas report their largest type level, leveled
    formulas their largest set sort, truth formulas their largest truth
    index, and class formulas 1 when a class variable occurs.  Purely
    arithmetic formulas report 0 in every language.
    """
    match formula:
        case Forall(var, body) | Exists(var, body):
            var_level = 0
            if var.sort.kind in ("typed-set", "leveled-set", "class"):
                var_level = var.sort.level
            return max(var_level, fragment_of(body))
        case And(a, b) | Or(a, b) | Imp(a, b):
            return max(fragment_of(a), fragment_of(b))
        case Bot() | Eq() | NamesNumber() | AppliesTo():
            return 0
        case NamesTyped(level, _, _):
            return level
        case TypedMember(level, _, _):
            return level + 1
        case LeveledMember(_, _, container):
            return _set_sort_level(container)
        case ClassMember():
            return 1
        case TruthAtom(level, _, _):
            return level
    raise ValueError(f"not a formula: {formula!r}")
