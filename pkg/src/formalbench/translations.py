"""Compilers between the four workbench languages.

Four total syntactic translations connect the languages:

* :func:`collapse_sorts` — leveled arithmetic into second-order
  arithmetic; sorts are erased into the variable index through the
  pairing function.
* :func:`truth_as_membership` — truth-predicate arithmetic into leveled
  arithmetic extended with defined truth-set applications; the defined
  sets are expanded away by :func:`eliminate_defined`.
* :func:`to_operations` — leveled arithmetic into the operations
  language, with set members coded as iterated singletons and set
  quantifiers relativized to the coded domains.
* :func:`negative_translation` — the double-negation image, recoding
  comprehension constants through a simultaneous recursion on their
  bodies.

All translators are pure functions on immutable trees and keep no
caches.  Eliminated truth sets grow quickly with the stage (each stage
inlines the full lower-stage truth relation); the output is emitted
as-is rather than shared or normalized.
"""

from __future__ import annotations

from dataclasses import replace as _rebuild

from .arithmetization import FreshNums, pair_eq
from .coding import decode_abstraction, encode_abstraction, is_abstraction, pair
from .expressions import (
    ATOM_TYPES,
    NUM,
    OP,
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
    NumTerm,
    OpConstant,
    Or,
    SortError,
    TruthAtom,
    TruthSetApp,
    TypedMember,
    Variable,
    Zero,
    and_chain,
    class_var,
    exists_many,
    free_vars,
    fresh_variable,
    leveled_set,
    neg,
    typed_set,
)
from .external import App, ExternalTerm, comp, evaluates_to, replace_constants
from .truthsets import build_formula_set, build_truth_relation

__all__ = [
    "collapse_sorts",
    "truth_as_membership",
    "eliminate_defined",
    "to_operations",
    "singleton_code",
    "singleton_term",
    "singleton_domain",
    "negative_translation",
    "negative_code",
    "negative_constant",
    "negative_term",
    "is_negative",
]


# ---------------------------------------------------------------------------
# Leveled arithmetic -> second-order arithmetic


def _collapse_var(var: Variable) -> Variable:
    if var.sort == NUM:
        return var
    if var.sort.kind == "leveled-set":
        return class_var(pair(var.sort.level, var.index))
    raise SortError(f"not a leveled-arithmetic variable: {var!r}")


def collapse_sorts(formula: Formula) -> Formula:
    """Second-order image of a leveled-arithmetic formula.

    A sort-k set variable of index i becomes the class variable of
    index ``pair(k, i)``; everything else is carried over unchanged.
    The pairing keeps distinct variables distinct, so the map is
    injective and preserves :func:`~.expressions.complexity`.
    """
    match formula:
        case Eq() | Bot():
            return formula
        case LeveledMember(_, element, container):
            if not isinstance(container, Variable):
                raise SortError(
                    f"defined sets have no second-order image: {container!r}"
                )
            return ClassMember(element, _collapse_var(container))
        case And(a, b):
            return And(collapse_sorts(a), collapse_sorts(b))
        case Or(a, b):
            return Or(collapse_sorts(a), collapse_sorts(b))
        case Imp(a, b):
            return Imp(collapse_sorts(a), collapse_sorts(b))
        case Forall(var, body):
            return Forall(_collapse_var(var), collapse_sorts(body))
        case Exists(var, body):
            return Exists(_collapse_var(var), collapse_sorts(body))
    raise SortError(f"not a leveled-arithmetic formula: {formula!r}")


# ---------------------------------------------------------------------------
# Truth-predicate arithmetic -> leveled arithmetic with defined sets


def truth_as_membership(formula: Formula) -> Formula:
    """Leveled image of a truth-predicate formula.

    Arithmetic atoms are unchanged.  A stage-k truth atom over a code
    and an environment asserts that their pair belongs to the defined
    truth set of the code; the pair value is introduced by one fresh
    existential over its doubled defining equation, so the output stays
    inside the polynomial-free term grammar.
    """
    match formula:
        case Eq() | Bot():
            return formula
        case TruthAtom(level, code, env):
            alloc = FreshNums(free_vars(code) | free_vars(env))
            member = alloc.take()
            return Exists(
                member,
                And(
                    pair_eq(member, code, env),
                    LeveledMember(level, member, TruthSetApp(level, code)),
                ),
            )
        case And(a, b):
            return And(truth_as_membership(a), truth_as_membership(b))
        case Or(a, b):
            return Or(truth_as_membership(a), truth_as_membership(b))
        case Imp(a, b):
            return Imp(truth_as_membership(a), truth_as_membership(b))
        case Forall(var, body) if var.sort == NUM:
            return Forall(var, truth_as_membership(body))
        case Exists(var, body) if var.sort == NUM:
            return Exists(var, truth_as_membership(body))
    raise SortError(f"not a truth-language formula: {formula!r}")


# ---------------------------------------------------------------------------
# Defined-set elimination


def _all_variables(node) -> frozenset[Variable]:
    """Every variable occurrence, bound or free."""
    out: set[Variable] = set()

    def walk(item) -> None:
        match item:
            case Variable():
                out.add(item)
            case Forall(var, body) | Exists(var, body):
                out.add(var)
                walk(body)
            case TruthSetApp(_, code):
                walk(code)
            case _ if hasattr(item, "__dataclass_fields__"):
                for name in item.__dataclass_fields__:
                    value = getattr(item, name)
                    if hasattr(value, "__dataclass_fields__"):
                        walk(value)

    walk(node)
    return frozenset(out)


def _expand_truth_sets(formula: Formula) -> Formula:
    match formula:
        case LeveledMember(level, element, TruthSetApp(_, code)):
            aux = [AuxTruthSet(q) for q in range(1, level)]
            section = fresh_variable(leveled_set(level), free_vars(formula))
            defining = build_formula_set(
                level, code, aux, section, avoid=free_vars(element)
            )
            return Exists(
                section, And(defining, LeveledMember(level, element, section))
            )
        case And(a, b):
            return And(_expand_truth_sets(a), _expand_truth_sets(b))
        case Or(a, b):
            return Or(_expand_truth_sets(a), _expand_truth_sets(b))
        case Imp(a, b):
            return Imp(_expand_truth_sets(a), _expand_truth_sets(b))
        case Forall(var, body):
            return Forall(var, _expand_truth_sets(body))
        case Exists(var, body):
            return Exists(var, _expand_truth_sets(body))
        case _:
            return formula


def _aux_levels(formula: Formula) -> set[int]:
    out: set[int] = set()

    def walk(item: Formula) -> None:
        match item:
            case LeveledMember(_, _, AuxTruthSet(level)):
                out.add(level)
            case And(a, b) | Or(a, b) | Imp(a, b):
                walk(a)
                walk(b)
            case Forall(_, body) | Exists(_, body):
                walk(body)

    walk(formula)
    return out


def _replace_aux(formula: Formula, level: int, replacement: Variable) -> Formula:
    match formula:
        case LeveledMember(atom_level, element, AuxTruthSet(aux_level)) if (
            aux_level == level
        ):
            return LeveledMember(atom_level, element, replacement)
        case And(a, b):
            return And(
                _replace_aux(a, level, replacement), _replace_aux(b, level, replacement)
            )
        case Or(a, b):
            return Or(
                _replace_aux(a, level, replacement), _replace_aux(b, level, replacement)
            )
        case Imp(a, b):
            return Imp(
                _replace_aux(a, level, replacement), _replace_aux(b, level, replacement)
            )
        case Forall(var, body):
            return Forall(var, _replace_aux(body, level, replacement))
        case Exists(var, body):
            return Exists(var, _replace_aux(body, level, replacement))
        case _:
            return formula


def eliminate_defined(formula: Formula) -> Formula:
    """Expand defined truth sets into pure leveled arithmetic.

    Each membership in a defined truth set becomes an existential over
    the stage's formula-set description (sections of the stage are
    unique, which licenses the existential rendering of the definite
    description).  The auxiliary stage constants left behind are then
    eliminated highest stage first, each one bound by an existential
    over the full truth relation of its stage.
    """
    out = _expand_truth_sets(formula)
    while levels := _aux_levels(out):
        stage = max(levels)
        lower = [AuxTruthSet(q) for q in range(1, stage)]
        package = fresh_variable(leveled_set(stage + 1), _all_variables(out))
        defining = build_truth_relation(stage, lower, package)
        out = Exists(package, And(defining, _replace_aux(out, stage, package)))
    return out


# ---------------------------------------------------------------------------
# Leveled arithmetic -> operations


def singleton_code(level: int, param: Variable | None = None) -> int:
    """Comprehension index of the one-point set at the given type level.

    At level 1 the body names the given numeric parameter directly; at
    higher levels the code is closed and the body states that the member
    and the formal parameter share a name, which keeps every body inside
    the elementary fragment of its level.
    """
    if level < 1:
        raise ValueError("singleton codes start at level 1")
    if level == 1:
        if param is None:
            param = Variable(0)
        if param.sort != NUM:
            raise SortError(f"level-1 singleton parameter is numeric: {param!r}")
        bound = Variable(0, OP)
        return encode_abstraction(bound, [param], NamesNumber(bound, param))
    bound = Variable(0, typed_set(level - 1))
    formal = Variable(1, typed_set(level - 1))
    witness = Variable(0, OP)
    body = Exists(
        witness,
        And(
            NamesTyped(level - 1, witness, bound),
            NamesTyped(level - 1, witness, formal),
        ),
    )
    return encode_abstraction(bound, [formal], body)


def singleton_term(term: ExternalTerm, count: int) -> ExternalTerm:
    """Iterated singleton of a numeric variable or the zero constant."""
    if count < 0:
        raise ValueError("iteration counts are non-negative")
    if not (isinstance(term, Zero) or (isinstance(term, Variable) and term.sort == NUM)):
        raise SortError(f"singleton base must be a numeric variable or zero: {term!r}")
    out: ExternalTerm = term
    for stage in range(1, count + 1):
        if stage == 1:
            param = term if isinstance(term, Variable) else Variable(0)
            code = singleton_code(1, param)
        else:
            code = singleton_code(stage)
        out = App(comp(code), out)
    return out


def singleton_domain(level: int, container: Variable | None = None) -> Formula:
    """Every member of the container is an iterated singleton of a number.

    The result has the container as its single free variable; set
    quantifiers of :func:`to_operations` are relativized to it.
    """
    if level < 1:
        raise ValueError("singleton domains start at level 1")
    if container is None:
        container = Variable(0, typed_set(level))
    if container.sort != typed_set(level):
        raise SortError(f"domain container must have type {level}: {container!r}")
    member_sort = OP if level == 1 else typed_set(level - 1)
    member = fresh_variable(member_sort, frozenset({container}))
    seed = fresh_variable(NUM, frozenset())
    named = evaluates_to(
        singleton_term(seed, level - 1), member, avoid=frozenset({container})
    )
    return Forall(
        member,
        Imp(TypedMember(level - 1, member, container), Exists(seed, named)),
    )


def _singleton_member(base, level: int, container: Variable) -> Formula:
    avoid = {container} | ({base} if isinstance(base, Variable) else set())
    member_sort = OP if level == 1 else typed_set(level - 1)
    member = fresh_variable(member_sort, frozenset(avoid))
    named = evaluates_to(
        singleton_term(base, level - 1), member, avoid=frozenset(avoid)
    )
    return Exists(member, And(named, TypedMember(level - 1, member, container)))


def to_operations(formula: Formula) -> Formula:
    """Operations-language image of a leveled-arithmetic formula.

    Numeric parts are unchanged.  Membership of t in a sort-k set
    variable becomes membership of the (k-1)-fold singleton of t in the
    corresponding type-k variable, unfolded into genuine application and
    naming atoms; a compound t is first normalized through a fresh
    value variable.  Set quantifiers are relativized to the coded
    domain of their level, so a stage-k simple input lands in the
    k-elementary fragment.
    """
    match formula:
        case Eq() | Bot():
            return formula
        case LeveledMember(level, element, container):
            if not isinstance(container, Variable):
                raise SortError(
                    f"defined sets have no operations image: {container!r}"
                )
            target = Variable(container.index, typed_set(level))
            if isinstance(element, (Zero, Variable)):
                return _singleton_member(element, level, target)
            alloc = FreshNums(free_vars(element))
            value = alloc.take()
            return Exists(
                value,
                And(Eq(value, element), _singleton_member(value, level, target)),
            )
        case And(a, b):
            return And(to_operations(a), to_operations(b))
        case Or(a, b):
            return Or(to_operations(a), to_operations(b))
        case Imp(a, b):
            return Imp(to_operations(a), to_operations(b))
        case Forall(var, body):
            if var.sort == NUM:
                return Forall(var, to_operations(body))
            if var.sort.kind == "leveled-set":
                image = Variable(var.index, typed_set(var.sort.level))
                return Forall(
                    image,
                    Imp(
                        singleton_domain(var.sort.level, image),
                        to_operations(body),
                    ),
                )
            raise SortError(f"not a leveled-arithmetic binder: {var!r}")
        case Exists(var, body):
            if var.sort == NUM:
                return Exists(var, to_operations(body))
            if var.sort.kind == "leveled-set":
                image = Variable(var.index, typed_set(var.sort.level))
                return Exists(
                    image,
                    And(
                        singleton_domain(var.sort.level, image),
                        to_operations(body),
                    ),
                )
            raise SortError(f"not a leveled-arithmetic binder: {var!r}")
    raise SortError(f"not a leveled-arithmetic formula: {formula!r}")


# ---------------------------------------------------------------------------
# Double-negation translation


_OPERAND_FIELDS: dict[type, tuple[str, ...]] = {
    AppliesTo: ("fn", "arg", "result"),
    NamesNumber: ("operation",),
    NamesTyped: ("operation", "target"),
}


def negative_code(code: int) -> int:
    """Recode a comprehension index through the translation."""
    bound, params, body = decode_abstraction(code)
    return encode_abstraction(bound, params, negative_translation(body))


def negative_constant(constant: OpConstant) -> OpConstant | Zero:
    """Image of an operation constant.

    Combinator constants are fixed; a comprehension constant is recoded
    through its body, and one whose index does not decode to an
    abstraction collapses to the zero constant.
    """
    if constant.name != "comp":
        return constant
    if is_abstraction(constant.index):
        return comp(negative_code(constant.index))
    return Zero()


def negative_term(term: ExternalTerm) -> ExternalTerm:
    """Rebuild an external term, recoding every comprehension constant."""
    return replace_constants(term, negative_constant)


def _negative_atom(atom) -> Formula:
    fields = _OPERAND_FIELDS.get(type(atom), ())
    junk: list[str] = []
    updates: dict[str, OpConstant] = {}
    for field in fields:
        value = getattr(atom, field)
        if isinstance(value, OpConstant) and value.name == "comp":
            image = negative_constant(value)
            if isinstance(image, Zero):
                junk.append(field)
            else:
                updates[field] = image
    if junk:
        # A collapsed constant denotes the number zero, which no operand
        # slot accepts; unfold the value through fresh operation
        # variables and translate the unfolded formula instead.
        taken = {v.index for v in free_vars(atom) if v.sort == OP}
        witnesses: dict[str, Variable] = {}
        index = 0
        for field in junk:
            while index in taken:
                index += 1
            witnesses[field] = Variable(index, OP)
            index += 1
        base = _rebuild(atom, **updates, **witnesses)
        naming = [NamesNumber(witnesses[field], Zero()) for field in junk]
        return negative_translation(
            exists_many(list(witnesses.values()), and_chain(naming + [base]))
        )
    if updates:
        atom = _rebuild(atom, **updates)
    return neg(neg(atom))


def negative_translation(formula: Formula) -> Formula:
    """Double-negation image of a formula.

    Atoms are doubly negated (with comprehension constants recoded);
    falsum, conjunction, implication, and universal quantification are
    homomorphic; disjunction and existential quantification are wrapped
    in a double negation.  The output always lies in the negative
    grammar decided by :func:`is_negative`.  On formulas outside the
    operations language only the connective, quantifier, and plain-atom
    clauses apply.
    """
    match formula:
        case Bot():
            return formula
        case And(a, b):
            return And(negative_translation(a), negative_translation(b))
        case Imp(a, b):
            return Imp(negative_translation(a), negative_translation(b))
        case Forall(var, body):
            return Forall(var, negative_translation(body))
        case Or(a, b):
            return neg(neg(Or(negative_translation(a), negative_translation(b))))
        case Exists(var, body):
            return neg(neg(Exists(var, negative_translation(body))))
        case _ if isinstance(formula, ATOM_TYPES):
            return _negative_atom(formula)
    raise SortError(f"not a formula: {formula!r}")


def is_negative(formula: Formula) -> bool:
    """Membership in the negative grammar.

    N ::= falsum | ~~atom | N&N | N->N | forall x N | ~~(N|N) | ~~exists x N
    """
    match formula:
        case Bot():
            return True
        case Imp(Imp(inner, Bot()) as left, Bot()):
            if isinstance(inner, ATOM_TYPES):
                return True
            if isinstance(inner, Or):
                return is_negative(inner.left) and is_negative(inner.right)
            if isinstance(inner, Exists):
                return is_negative(inner.body)
            # Not a wrapper use: read the tree as N -> falsum instead.
            return is_negative(left)
        case And(a, b) | Imp(a, b):
            return is_negative(a) and is_negative(b)
        case Forall(_, body):
            return is_negative(body)
        case _:
            return False
