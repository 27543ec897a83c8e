"""Expression trees shared by the workbench's four object languages.

The workbench manipulates formulas of four interrelated languages:

* the operations language: operation variables and constants, numeric
  variables, set variables carrying a positive type level, and four
  primitive predicates (ternary application, naming a number, naming an
  operation or typed set, typed membership);
* multi-sorted arithmetic whose set variables carry a positive level;
* second-order arithmetic with a single sort of number classes;
* first-order arithmetic extended by a tower of binary truth predicates.

Connectives and numeric terms are shared.  Every atom belongs to exactly
one language except numeric equality, which all four admit (the
operations language uses it only for the numeric fragments produced by
the set-to-operations translation and by the case-combinator laws).

All nodes are immutable dataclasses.  Sort discipline is enforced at
construction time: an ill-sorted slot raises :class:`SortError`, and
substitution re-validates whatever it rebuilds.  Negation and
equivalence are abbreviations, provided as the helpers :func:`neg` and
:func:`iff`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Language(Enum):
    """The four object languages."""

    OPERATIONS = "operations"
    LEVELED = "leveled"
    SECOND_ORDER = "second-order"
    TRUTH = "truth"


ALL_LANGUAGES = frozenset(Language)


class SortError(ValueError):
    """An expression slot received a term of the wrong sort."""


_SORT_KINDS = ("num", "op", "typed-set", "leveled-set", "class")

# Binding order used by universal_closure: numbers, then operations,
# then set sorts by level.
_KIND_ORDER = {kind: i for i, kind in enumerate(_SORT_KINDS)}


@dataclass(frozen=True)
class SortTag:
    """Sort of a variable: numbers, operations, or one of the set sorts."""

    kind: str
    level: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _SORT_KINDS:
            raise SortError(f"unknown sort kind {self.kind!r}")
        if self.kind in ("num", "op"):
            if self.level != 0:
                raise SortError(f"{self.kind} sort carries no level")
        elif self.kind == "class":
            if self.level != 1:
                raise SortError("class sort has fixed level 1")
        elif self.level < 1:
            raise SortError(f"{self.kind} sort needs a positive level")


NUM = SortTag("num")
OP = SortTag("op")
CLASS = SortTag("class", 1)


def typed_set(level: int) -> SortTag:
    """Sort of an operations-language set variable of the given type level."""
    return SortTag("typed-set", level)


def leveled_set(level: int) -> SortTag:
    """Sort of a multi-sorted set variable of the given level."""
    return SortTag("leveled-set", level)


@dataclass(frozen=True)
class Variable:
    """A variable.  ``name`` is display-only and ignored by comparisons."""

    index: int
    sort: SortTag = NUM
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.index < 0:
            raise SortError("variable indices are non-negative")


def num_var(index: int, name: str = "") -> Variable:
    return Variable(index, NUM, name)


def op_var(index: int, name: str = "") -> Variable:
    return Variable(index, OP, name)


def set_var(level: int, index: int) -> Variable:
    return Variable(index, leveled_set(level))


def class_var(index: int) -> Variable:
    return Variable(index, CLASS)


def typed_set_var(level: int, index: int) -> Variable:
    return Variable(index, typed_set(level))


@dataclass(frozen=True)
class Zero:
    """The numeric constant 0."""


@dataclass(frozen=True)
class One:
    """The numeric constant 1."""


@dataclass(frozen=True)
class Add:
    left: "NumTerm"
    right: "NumTerm"

    def __post_init__(self) -> None:
        _require_num(self.left)
        _require_num(self.right)


@dataclass(frozen=True)
class Mul:
    left: "NumTerm"
    right: "NumTerm"

    def __post_init__(self) -> None:
        _require_num(self.left)
        _require_num(self.right)


# Operation constants of the operations language: the two basic
# combinators, definition by numeric cases, pairing with its two
# projections, and the comprehension family indexed by formula codes.
# The numeral seed 0 is a numeric constant, not an operation.
_PLAIN_CONSTANTS = ("kc", "sc", "dc", "pc", "p1c", "p2c")


@dataclass(frozen=True)
class OpConstant:
    """An operation constant; ``comp`` constants carry a code index."""

    name: str
    index: int | None = None

    def __post_init__(self) -> None:
        if self.name == "comp":
            if self.index is None or self.index < 0:
                raise SortError("comprehension constants carry a non-negative code")
        elif self.name in _PLAIN_CONSTANTS:
            if self.index is not None:
                raise SortError(f"constant {self.name!r} carries no index")
        else:
            raise SortError(f"unknown operation constant {self.name!r}")


@dataclass(frozen=True)
class TruthSetApp:
    """Defined leveled set: the true code/environment pairs for one formula.

    ``code`` is a numeric term naming the formula; the expression denotes
    a set of sort ``leveled_set(level)``.  Eliminated by the
    defined-set expansion pass before proof checking.
    """

    level: int
    code: "NumTerm"

    def __post_init__(self) -> None:
        if self.level < 1:
            raise SortError("truth-set levels are positive")
        _require_num(self.code)


@dataclass(frozen=True)
class AuxTruthSet:
    """Auxiliary constant naming a full level truth set (sort ``level + 1``)."""

    level: int

    def __post_init__(self) -> None:
        if self.level < 1:
            raise SortError("truth-set levels are positive")


def sort_of(term: "TermLike") -> SortTag:
    """Sort of a term or set expression."""
    match term:
        case Zero() | One() | Add() | Mul():
            return NUM
        case Variable():
            return term.sort
        case OpConstant():
            return OP
        case TruthSetApp(level=k):
            return leveled_set(k)
        case AuxTruthSet(level=j):
            return leveled_set(j + 1)
    raise SortError(f"not a term: {term!r}")


def _require_num(term: "NumTerm") -> None:
    if isinstance(term, (Zero, One, Add, Mul)):
        return
    if isinstance(term, Variable) and term.sort == NUM:
        return
    raise SortError(f"expected a numeric term, got {term!r}")


def _require_operand(term: "Operand") -> None:
    if isinstance(term, OpConstant):
        return
    if isinstance(term, Variable) and term.sort == OP:
        return
    raise SortError(f"expected an operation variable or constant, got {term!r}")


def _require_var(term: Variable, sort: SortTag) -> None:
    if not (isinstance(term, Variable) and term.sort == sort):
        raise SortError(f"expected a variable of sort {sort}, got {term!r}")


# ---------------------------------------------------------------------------
# Atoms


@dataclass(frozen=True)
class Eq:
    """Numeric equality between two arithmetic terms."""

    left: "NumTerm"
    right: "NumTerm"

    def __post_init__(self) -> None:
        _require_num(self.left)
        _require_num(self.right)


@dataclass(frozen=True)
class LeveledMember:
    """Membership of a number in a leveled set."""

    level: int
    element: "NumTerm"
    container: "SetExpr"

    def __post_init__(self) -> None:
        if self.level < 1:
            raise SortError("set levels are positive")
        _require_num(self.element)
        if sort_of(self.container) != leveled_set(self.level):
            raise SortError(
                f"container {self.container!r} is not a level-{self.level} set"
            )


@dataclass(frozen=True)
class ClassMember:
    """Membership of a number in a second-order-arithmetic class."""

    element: "NumTerm"
    container: Variable

    def __post_init__(self) -> None:
        _require_num(self.element)
        _require_var(self.container, CLASS)


@dataclass(frozen=True)
class TruthAtom:
    """Truth-predicate atom over a code term and an environment term."""

    level: int
    code: "NumTerm"
    env: "NumTerm"

    def __post_init__(self) -> None:
        if self.level < 1:
            raise SortError("truth-predicate levels are positive")
        _require_num(self.code)
        _require_num(self.env)


@dataclass(frozen=True)
class AppliesTo:
    """Application atom: ``fn`` applied to ``arg`` yields ``result``.

    The first two slots are operations; the result slot may be a variable
    of any sort (application can yield a number or a typed set).
    """

    fn: "Operand"
    arg: "Operand"
    result: "Operand | Variable"

    def __post_init__(self) -> None:
        _require_operand(self.fn)
        _require_operand(self.arg)
        if not isinstance(self.result, (Variable, OpConstant)):
            raise SortError(f"bad application result slot: {self.result!r}")


@dataclass(frozen=True)
class NamesNumber:
    """The operation on the left denotes the number on the right.

    The right slot is a numeric variable or the constant 0 (the case
    laws and the numeral tests need the constant form).
    """

    operation: "Operand"
    number: "Variable | Zero"

    def __post_init__(self) -> None:
        _require_operand(self.operation)
        if not isinstance(self.number, Zero):
            _require_var(self.number, NUM)


@dataclass(frozen=True)
class NamesTyped:
    """The operation denotes the type-``level`` object on the right.

    At level 0 this is equality of operations, so the target is another
    operation variable or constant; at level >= 1 the target is a typed
    set variable of that level.
    """

    level: int
    operation: "Operand"
    target: "Operand | Variable"

    def __post_init__(self) -> None:
        if self.level < 0:
            raise SortError("naming levels are non-negative")
        _require_operand(self.operation)
        if self.level == 0:
            _require_operand(self.target)
        else:
            _require_var(self.target, typed_set(self.level))


@dataclass(frozen=True)
class TypedMember:
    """Membership of a type-``level`` object in a type-``level + 1`` set.

    At level 0 the element is an operation variable; at level >= 1 it is
    a typed set variable of that level.  The container always sits one
    type level above the element.
    """

    level: int
    element: Variable
    container: Variable

    def __post_init__(self) -> None:
        if self.level < 0:
            raise SortError("membership levels are non-negative")
        element_sort = OP if self.level == 0 else typed_set(self.level)
        _require_var(self.element, element_sort)
        _require_var(self.container, typed_set(self.level + 1))


# ---------------------------------------------------------------------------
# Connectives and quantifiers


@dataclass(frozen=True)
class Bot:
    """Falsum."""


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __post_init__(self) -> None:
        _require_formula(self.left)
        _require_formula(self.right)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __post_init__(self) -> None:
        _require_formula(self.left)
        _require_formula(self.right)


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"

    def __post_init__(self) -> None:
        _require_formula(self.left)
        _require_formula(self.right)


@dataclass(frozen=True)
class Forall:
    var: Variable
    body: "Formula"

    def __post_init__(self) -> None:
        if not isinstance(self.var, Variable):
            raise SortError(f"binder needs a variable, got {self.var!r}")
        _require_formula(self.body)


@dataclass(frozen=True)
class Exists:
    var: Variable
    body: "Formula"

    def __post_init__(self) -> None:
        if not isinstance(self.var, Variable):
            raise SortError(f"binder needs a variable, got {self.var!r}")
        _require_formula(self.body)


ATOM_TYPES = (
    Eq,
    LeveledMember,
    ClassMember,
    TruthAtom,
    AppliesTo,
    NamesNumber,
    NamesTyped,
    TypedMember,
)
_FORMULA_TYPES = ATOM_TYPES + (Bot, And, Or, Imp, Forall, Exists)

NumTerm = Zero | One | Add | Mul | Variable
Operand = Variable | OpConstant
SetExpr = Variable | TruthSetApp | AuxTruthSet
TermLike = NumTerm | OpConstant | TruthSetApp | AuxTruthSet
Atom = Eq | LeveledMember | ClassMember | TruthAtom | AppliesTo | NamesNumber | NamesTyped | TypedMember
Formula = Atom | Bot | And | Or | Imp | Forall | Exists


def _require_formula(node: Formula) -> None:
    if not isinstance(node, _FORMULA_TYPES):
        raise SortError(f"expected a formula, got {node!r}")


def neg(phi: Formula) -> Imp:
    """Negation as the abbreviation ``phi -> bottom``."""
    return Imp(phi, Bot())


def iff(left: Formula, right: Formula) -> And:
    """Equivalence as the abbreviation ``(left -> right) & (right -> left)``."""
    return And(Imp(left, right), Imp(right, left))


def and_chain(parts: list[Formula]) -> Formula:
    """Right-associated conjunction of one or more formulas."""
    if not parts:
        raise ValueError("empty conjunction")
    out = parts[-1]
    for part in reversed(parts[:-1]):
        out = And(part, out)
    return out


def or_chain(parts: list[Formula]) -> Formula:
    """Right-associated disjunction of one or more formulas."""
    if not parts:
        raise ValueError("empty disjunction")
    out = parts[-1]
    for part in reversed(parts[:-1]):
        out = Or(part, out)
    return out


def exists_many(variables: list[Variable], body: Formula) -> Formula:
    """Nest existentials with the first variable outermost."""
    for var in reversed(variables):
        body = Exists(var, body)
    return body


def forall_many(variables: list[Variable], body: Formula) -> Formula:
    """Nest universals with the first variable outermost."""
    for var in reversed(variables):
        body = Forall(var, body)
    return body


# ---------------------------------------------------------------------------
# Traversal


def free_vars(node: Formula | TermLike) -> frozenset[Variable]:
    """Free variables of a term, set expression, or formula."""
    match node:
        case Variable():
            return frozenset((node,))
        case Zero() | One() | Bot() | OpConstant() | AuxTruthSet():
            return frozenset()
        case Add(a, b) | Mul(a, b) | Eq(a, b):
            return free_vars(a) | free_vars(b)
        case TruthSetApp(_, code):
            return free_vars(code)
        case LeveledMember(_, element, container):
            return free_vars(element) | free_vars(container)
        case ClassMember(element, container):
            return free_vars(element) | frozenset((container,))
        case TruthAtom(_, code, env):
            return free_vars(code) | free_vars(env)
        case AppliesTo(fn, arg, result):
            return free_vars(fn) | free_vars(arg) | free_vars(result)
        case NamesNumber(operation, number):
            return free_vars(operation) | free_vars(number)
        case NamesTyped(_, operation, target):
            return free_vars(operation) | free_vars(target)
        case TypedMember(_, element, container):
            return frozenset((element, container))
        case And(a, b) | Or(a, b) | Imp(a, b):
            return free_vars(a) | free_vars(b)
        case Forall(v, body) | Exists(v, body):
            return free_vars(body) - {v}
    raise SortError(f"not an expression: {node!r}")


def fresh_variable(sort: SortTag, avoid: frozenset[Variable]) -> Variable:
    """Smallest-index variable of ``sort`` not occurring in ``avoid``."""
    used = {v.index for v in avoid if v.sort == sort}
    index = 0
    while index in used:
        index += 1
    return Variable(index, sort)


def substitute(node, var: Variable, replacement):
    """Replace free occurrences of ``var`` by ``replacement``.

    Capture-avoiding: binders that would capture a free variable of the
    replacement are renamed to the smallest-index fresh variable of
    their sort.  Rebuilding re-validates every touched slot, so an
    ill-sorted replacement raises :class:`SortError`.
    """
    if not isinstance(var, Variable):
        raise SortError("substitution target must be a variable")
    sub = lambda child: substitute(child, var, replacement)  # noqa: E731
    match node:
        case Variable():
            return replacement if node == var else node
        case Zero() | One() | Bot() | OpConstant() | AuxTruthSet():
            return node
        case Add(a, b):
            return Add(sub(a), sub(b))
        case Mul(a, b):
            return Mul(sub(a), sub(b))
        case TruthSetApp(level, code):
            return TruthSetApp(level, sub(code))
        case Eq(a, b):
            return Eq(sub(a), sub(b))
        case LeveledMember(level, element, container):
            return LeveledMember(level, sub(element), sub(container))
        case ClassMember(element, container):
            return ClassMember(sub(element), sub(container))
        case TruthAtom(level, code, env):
            return TruthAtom(level, sub(code), sub(env))
        case AppliesTo(fn, arg, result):
            return AppliesTo(sub(fn), sub(arg), sub(result))
        case NamesNumber(operation, number):
            return NamesNumber(sub(operation), sub(number))
        case NamesTyped(level, operation, target):
            return NamesTyped(level, sub(operation), sub(target))
        case TypedMember(level, element, container):
            return TypedMember(level, sub(element), sub(container))
        case And(a, b):
            return And(sub(a), sub(b))
        case Or(a, b):
            return Or(sub(a), sub(b))
        case Imp(a, b):
            return Imp(sub(a), sub(b))
        case Forall(bound, body):
            return _substitute_binder(Forall, bound, body, var, replacement)
        case Exists(bound, body):
            return _substitute_binder(Exists, bound, body, var, replacement)
    raise SortError(f"not an expression: {node!r}")


def _substitute_binder(ctor, bound: Variable, body, var: Variable, replacement):
    if bound == var:
        return ctor(bound, body)
    if bound in free_vars(replacement) and var in free_vars(body):
        avoid = free_vars(body) | free_vars(replacement) | {var}
        fresh = fresh_variable(bound.sort, avoid)
        body = substitute(body, bound, fresh)
        bound = fresh
    return ctor(bound, substitute(body, var, replacement))


def complexity(formula: Formula) -> int:
    """Number of connectives and quantifiers; atoms and falsum count zero."""
    match formula:
        case And(a, b) | Or(a, b) | Imp(a, b):
            return 1 + complexity(a) + complexity(b)
        case Forall(_, body) | Exists(_, body):
            return 1 + complexity(body)
        case _ if isinstance(formula, _FORMULA_TYPES):
            return 0
    raise SortError(f"not a formula: {formula!r}")


def subformulas(formula: Formula):
    """Pre-order iteration over the subformula tree, including the root."""
    yield formula
    match formula:
        case And(a, b) | Or(a, b) | Imp(a, b):
            yield from subformulas(a)
            yield from subformulas(b)
        case Forall(_, body) | Exists(_, body):
            yield from subformulas(body)


def atoms(formula: Formula):
    """All atom occurrences of a formula, in pre-order."""
    return (f for f in subformulas(formula) if isinstance(f, ATOM_TYPES))


def closure_order(variables) -> list[Variable]:
    """Deterministic binding order: sort kind, then level, then index."""
    return sorted(
        variables, key=lambda v: (_KIND_ORDER[v.sort.kind], v.sort.level, v.index)
    )


def universal_closure(formula: Formula) -> Formula:
    """Universally close the formula over its free variables.

    The first variable in :func:`closure_order` ends up outermost.
    """
    out = formula
    for v in reversed(closure_order(free_vars(formula))):
        out = Forall(v, out)
    return out


def languages(node: Formula | TermLike) -> frozenset[Language]:
    """The set of languages in which the expression is well-formed."""
    match node:
        case Variable():
            return {
                "num": ALL_LANGUAGES,
                "op": frozenset((Language.OPERATIONS,)),
                "typed-set": frozenset((Language.OPERATIONS,)),
                "leveled-set": frozenset((Language.LEVELED,)),
                "class": frozenset((Language.SECOND_ORDER,)),
            }[node.sort.kind]
        case Zero() | One() | Bot():
            return ALL_LANGUAGES
        case OpConstant():
            return frozenset((Language.OPERATIONS,))
        case AuxTruthSet():
            return frozenset((Language.LEVELED,))
        case Add(a, b) | Mul(a, b) | Eq(a, b) | And(a, b) | Or(a, b) | Imp(a, b):
            return languages(a) & languages(b)
        case TruthSetApp(_, code):
            return frozenset((Language.LEVELED,)) & languages(code)
        case LeveledMember(_, element, container):
            return (
                frozenset((Language.LEVELED,))
                & languages(element)
                & languages(container)
            )
        case ClassMember(element, _):
            return frozenset((Language.SECOND_ORDER,)) & languages(element)
        case TruthAtom(_, code, env):
            return frozenset((Language.TRUTH,)) & languages(code) & languages(env)
        case AppliesTo() | NamesNumber() | NamesTyped() | TypedMember():
            return frozenset((Language.OPERATIONS,))
        case Forall(v, body) | Exists(v, body):
            return languages(v) & languages(body)
    raise SortError(f"not an expression: {node!r}")


def number_term(value: int) -> NumTerm:
    """Canonical numeral: 0, 1, or a left-associated sum of ones."""
    if value < 0:
        raise ValueError("numerals are non-negative")
    if value == 0:
        return Zero()
    term: NumTerm = One()
    for _ in range(value - 1):
        term = Add(term, One())
    return term


def number_value(term: NumTerm) -> int | None:
    """Exact value of a canonical numeral term, ``None`` for any other shape."""
    count = 0
    while isinstance(term, Add):
        if not isinstance(term.right, One):
            return None
        count += 1
        term = term.left
    if isinstance(term, One):
        return count + 1
    if isinstance(term, Zero) and count == 0:
        return 0
    return None
