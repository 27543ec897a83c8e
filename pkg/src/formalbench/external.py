"""External applicative terms over the operations language.

Compound applications are not part of the official formula language:
``t = x`` for a compound ``t`` is a notation that unfolds into primitive
formulas with fresh, existentially bound operation variables.  This
module provides the term trees, the canonical unfolding, and the
abbreviations built on top of it (definedness, shared value,
extensional equality, tupling, numerals, set equality).

The unfolding is deterministic and other modules depend on its exact
shape: fresh variables are the smallest-index operation variables not
already in use, allocated at the outermost application first, function
side before argument side, and every application node contributes
exactly two existential quantifiers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .expressions import (
    And,
    AppliesTo,
    Exists,
    Forall,
    Formula,
    LeveledMember,
    NamesNumber,
    NamesTyped,
    OP,
    OpConstant,
    SortError,
    SortTag,
    TypedMember,
    Variable,
    Zero,
    free_vars,
    iff,
    substitute,
    typed_set,
)

# The operation constants, by their surface names.
KC = OpConstant("kc")
SC = OpConstant("sc")
DC = OpConstant("dc")
PC = OpConstant("pc")
P1C = OpConstant("p1c")
P2C = OpConstant("p2c")


def comp(code: int) -> OpConstant:
    """The comprehension constant with the given formula code."""
    return OpConstant("comp", code)


@dataclass(frozen=True)
class App:
    """Application of one external term to another."""

    fn: "ExternalTerm"
    arg: "ExternalTerm"

    def __post_init__(self) -> None:
        _require_external(self.fn)
        _require_external(self.arg)


ExternalTerm = App | Variable | OpConstant | Zero


def _require_external(term: ExternalTerm) -> None:
    match term:
        case App() | OpConstant() | Zero():
            return
        case Variable() if term.sort.kind in ("num", "op", "typed-set"):
            return
    raise SortError(f"not an external term: {term!r}")


def is_leaf(term: ExternalTerm) -> bool:
    return not isinstance(term, App)


def term_vars(term: ExternalTerm) -> frozenset[Variable]:
    """All variables occurring in the term."""
    match term:
        case App(fn, arg):
            return term_vars(fn) | term_vars(arg)
        case Variable():
            return frozenset((term,))
        case OpConstant() | Zero():
            return frozenset()
    raise SortError(f"not an external term: {term!r}")


def term_constants(term: ExternalTerm) -> tuple[OpConstant, ...]:
    """All operation-constant occurrences, left to right."""
    match term:
        case App(fn, arg):
            return term_constants(fn) + term_constants(arg)
        case OpConstant():
            return (term,)
        case _:
            return ()


def app_count(term: ExternalTerm) -> int:
    """Number of application nodes."""
    if isinstance(term, App):
        return 1 + app_count(term.fn) + app_count(term.arg)
    return 0


def spine(term: ExternalTerm) -> tuple[ExternalTerm, list[ExternalTerm]]:
    """Head and argument list of the leftmost application spine."""
    args: list[ExternalTerm] = []
    while isinstance(term, App):
        args.append(term.arg)
        term = term.fn
    args.reverse()
    return term, args


def apply_chain(head: ExternalTerm, *args: ExternalTerm) -> ExternalTerm:
    """Left-associated application of ``head`` to the arguments."""
    term = head
    for arg in args:
        term = App(term, arg)
    return term


def term_substitute(
    term: ExternalTerm, var: Variable, replacement: ExternalTerm
) -> ExternalTerm:
    """Replace every occurrence of the variable leaf by a term."""
    match term:
        case App(fn, arg):
            return App(
                term_substitute(fn, var, replacement),
                term_substitute(arg, var, replacement),
            )
        case Variable() if term == var:
            return replacement
        case _:
            return term


def replace_constants(term: ExternalTerm, mapping) -> ExternalTerm:
    """Rebuild the term, passing every constant leaf through ``mapping``.

    ``mapping`` takes an :class:`OpConstant` and returns an external
    term (constants may be mapped to the numeral seed).
    """
    match term:
        case App(fn, arg):
            return App(replace_constants(fn, mapping), replace_constants(arg, mapping))
        case OpConstant():
            return mapping(term)
        case _:
            return term


def numeral(value: int) -> ExternalTerm:
    """Operations-language numeral: 0, or the pair of the predecessor and 0."""
    if value < 0:
        raise ValueError("numerals are non-negative")
    term: ExternalTerm = Zero()
    for _ in range(value):
        term = App(App(PC, term), Zero())
    return term


def numeral_value(term: ExternalTerm) -> int | None:
    """Exact value of a numeral term, ``None`` for any other shape."""
    count = 0
    while True:
        match term:
            case Zero():
                return count
            case App(App(OpConstant("pc", None), prev), Zero()):
                count += 1
                term = prev
            case _:
                return None


def tuple_term(parts: list[ExternalTerm]) -> ExternalTerm:
    """Left-nested pairing: one part is itself, more are paired onto the left."""
    if not parts:
        raise ValueError("tuples need at least one component")
    term = parts[0]
    for part in parts[1:]:
        term = App(App(PC, term), part)
    return term


# ---------------------------------------------------------------------------
# Canonical unfolding


def _fresh_op_var(used: set[Variable]) -> Variable:
    taken = {v.index for v in used if v.sort == OP}
    index = 0
    while index in taken:
        index += 1
    var = Variable(index, OP)
    used.add(var)
    return var


def _leaf_names(leaf: ExternalTerm, target: Variable) -> Formula:
    """The primitive atom for ``leaf = target`` (target on the left)."""
    if target.sort == OP:
        match leaf:
            case Zero() | Variable(sort=SortTag("num")):
                return NamesNumber(target, leaf)
            case OpConstant() | Variable(sort=SortTag("op")):
                return NamesTyped(0, target, leaf)
            case Variable(sort=SortTag("typed-set", level)):
                return NamesTyped(level, target, leaf)
    elif target.sort.kind == "num":
        match leaf:
            case OpConstant() | Variable(sort=SortTag("op")):
                return NamesNumber(leaf, target)
    elif target.sort.kind == "typed-set":
        match leaf:
            case OpConstant() | Variable(sort=SortTag("op")):
                return NamesTyped(target.sort.level, leaf, target)
    raise SortError(f"no naming atom relates {leaf!r} to {target!r}")


def _unfold(term: ExternalTerm, target: Variable, used: set[Variable]) -> Formula:
    if isinstance(term, App):
        fn_var = _fresh_op_var(used)
        arg_var = _fresh_op_var(used)
        fn_part = _unfold(term.fn, fn_var, used)
        arg_part = _unfold(term.arg, arg_var, used)
        return Exists(
            fn_var,
            Exists(arg_var, And(fn_part, And(arg_part, AppliesTo(fn_var, arg_var, target)))),
        )
    return _leaf_names(term, target)


def evaluates_to(
    term: ExternalTerm, target: Variable, avoid: frozenset[Variable] = frozenset()
) -> Formula:
    """The formula stating that the term denotes the target variable.

    A leaf becomes a single naming atom with the target on the left; an
    application becomes two fresh existentials around the parts and a
    ternary application atom.  ``avoid`` widens the set of variable
    indices the fresh allocator must skip.
    """
    if not isinstance(target, Variable):
        raise SortError(f"unfolding target must be a variable, got {target!r}")
    _require_external(term)
    used = set(term_vars(term)) | {target} | set(avoid)
    return _unfold(term, target, used)


def is_defined(
    term: ExternalTerm, avoid: frozenset[Variable] = frozenset()
) -> Formula:
    """The formula stating that the term has a value."""
    used = set(term_vars(term)) | set(avoid)
    target = _fresh_op_var(used)
    return Exists(target, _unfold(term, target, used))


def same_value(
    term: ExternalTerm,
    other: ExternalTerm,
    avoid: frozenset[Variable] = frozenset(),
) -> Formula:
    """The formula stating that the two terms share a value.

    When either side is a variable it serves as the unfolding target
    directly; otherwise a fresh operation variable is bound around both
    unfoldings.
    """
    if isinstance(other, Variable):
        return evaluates_to(term, other, avoid)
    if isinstance(term, Variable):
        return evaluates_to(other, term, avoid)
    used = set(term_vars(term)) | set(term_vars(other)) | set(avoid)
    target = _fresh_op_var(used)
    left = evaluates_to(term, target, frozenset(used))
    right = evaluates_to(other, target, frozenset(used))
    return Exists(target, And(left, right))


def ext_equal(
    term: ExternalTerm,
    other: ExternalTerm,
    avoid: frozenset[Variable] = frozenset(),
    result_sort: SortTag = OP,
) -> Formula:
    """Extensional equality: every value of one is a value of the other."""
    used = set(term_vars(term)) | set(term_vars(other)) | set(avoid)
    taken = {v.index for v in used if v.sort == result_sort}
    index = 0
    while index in taken:
        index += 1
    target = Variable(index, result_sort)
    used.add(target)
    left = evaluates_to(term, target, frozenset(used))
    right = evaluates_to(other, target, frozenset(used))
    return Forall(target, iff(left, right))


def holds_at(
    formula: Formula,
    var: Variable,
    term: ExternalTerm,
    avoid: frozenset[Variable] = frozenset(),
) -> Formula:
    """Apply a one-variable predicate to a term.

    The result binds a value of the term and asserts the formula of it.
    The original variable is reused as the bound value when the term
    does not contain it; otherwise the smallest fresh variable of its
    sort is substituted through the formula first.
    """
    if var in term_vars(term):
        used = set(term_vars(term)) | free_vars(formula) | set(avoid)
        taken = {v.index for v in used if v.sort == var.sort}
        index = 0
        while index in taken:
            index += 1
        value = Variable(index, var.sort)
        formula = substitute(formula, var, value)
        var = value
    inner_avoid = frozenset(free_vars(formula)) | avoid
    return Exists(var, And(evaluates_to(term, var, inner_avoid), formula))


def set_equal(level: int, left: Variable, right: Variable) -> Formula:
    """Equality of type-``level`` objects.

    Level 0 is the primitive naming atom between operations; positive
    levels abbreviate extensional equality over type-``level - 1``
    members, with the smallest fresh member variable bound.
    """
    if level == 0:
        return NamesTyped(0, left, right)
    for var, name in ((left, "left"), (right, "right")):
        if not (isinstance(var, Variable) and var.sort == typed_set(level)):
            raise SortError(f"{name} side is not a level-{level} set variable")
    member_sort = OP if level == 1 else typed_set(level - 1)
    taken = {v.index for v in (left, right) if v.sort == member_sort}
    index = 0
    while index in taken:
        index += 1
    member = Variable(index, member_sort)
    return Forall(
        member,
        iff(
            TypedMember(level - 1, member, left),
            TypedMember(level - 1, member, right),
        ),
    )


def leveled_set_equal(level: int, left, right) -> Formula:
    """Extensional equality of two leveled sets over their numeric members."""
    if level < 1:
        raise SortError("leveled-set equality needs a positive level")
    used = frozenset(free_vars(left)) | frozenset(free_vars(right))
    taken = {v.index for v in used if v.sort.kind == "num"}
    index = 0
    while index in taken:
        index += 1
    member = Variable(index)
    return Forall(
        member,
        iff(
            LeveledMember(level, member, left),
            LeveledMember(level, member, right),
        ),
    )
