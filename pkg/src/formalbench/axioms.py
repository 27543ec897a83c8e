"""Axiom schemas for the workbench theories, as builders plus recognizers.

Two layers:

* a Hilbert-style logical base shared by every theory — intuitionistic
  propositional and quantifier axioms plus numeric equality, with the
  double-negation schema available only to the classical theories;
* per-theory axiom groups keyed by short descriptive ids (``comb-k``,
  ``succ-nonzero``, ``truth-lift``, ...).

Every schema ships as a *builder* producing the canonical instance for
given slots and a *recognizer* deciding whether a formula is such an
instance.  Theory schemas are variable-instance schemas: their slots
are variables, and instances at compound terms are derived in proofs
by generalization plus universal instantiation.  Recognizers work by
extracting the slots from the candidate's shape (enumerating over the
candidate's free variables where a slot is not directly visible) and
comparing against a rebuild, so acceptance is exactly "this formula is
a builder output".  Schemas that introduce bound witnesses accept them
as explicit keyword slots so alpha-variants of the canonical choice
are still recognized.

The normative table of ids, statements, and side conditions is
``docs/axioms.md``.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Callable, Iterable

from . import coding
from .arithmetization import (
    FreshNums,
    ev_graph,
    eval_graph,
    form_graph,
    guard_conn_shape,
    guard_eq_shape,
    guard_quant_shape,
    guard_tr_shape,
    pair_eq,
    subst_graph,
)
from .classifiers import is_elementary, is_k_simple
from .coding import decode_abstraction, is_abstraction
from .expressions import (
    CLASS,
    NUM,
    OP,
    Add,
    And,
    AppliesTo,
    Bot,
    ClassMember,
    Eq,
    Exists,
    Forall,
    Formula,
    Imp,
    LeveledMember,
    Mul,
    NamesNumber,
    NamesTyped,
    One,
    OpConstant,
    Or,
    SortError,
    SortTag,
    TruthAtom,
    TypedMember,
    Variable,
    Zero,
    and_chain,
    atoms,
    free_vars,
    fresh_variable,
    iff,
    leveled_set,
    neg,
    number_term,
    subformulas,
    substitute,
    typed_set,
)
from .external import (
    DC,
    KC,
    P1C,
    P2C,
    PC,
    SC,
    App,
    apply_chain,
    comp,
    evaluates_to,
    ext_equal,
    is_defined,
    leveled_set_equal,
    same_value,
    set_equal,
    tuple_term,
)

__all__ = [
    "LOGICAL_AXIOMS",
    "CLASSICAL_AXIOMS",
    "THEORY_AXIOMS",
    "logical_axiom_id",
    "logical_axiom_matches",
    "theory_axiom_id",
    "theory_axiom_matches",
    "no_leveled_set_binders",
    "no_truth_atoms",
    "no_typed_set_binders",
    "succ_term",
    "peano_succ_nonzero",
    "peano_succ_inject",
    "peano_add_zero",
    "peano_add_succ",
    "peano_mul_zero",
    "peano_mul_succ",
    "induction_axiom",
    "sa_comprehension",
    "sa_choice",
    "ar_comprehension",
    "ar_unique_choice",
    "ar_delta_comprehension",
    "class_equal",
    "bt_eq_op_refl",
    "bt_name_transfer",
    "bt_num_unique",
    "bt_num_transport",
    "bt_ap_congruence",
    "bt_mem_congruence",
    "bt_ap_functional",
    "bt_comb_k",
    "bt_comb_s_defined",
    "bt_comb_s",
    "bt_pair_defined",
    "bt_pair_nonzero",
    "bt_proj_defined",
    "bt_proj_pair",
    "bt_pair_num_closed",
    "bt_pair_set_closed",
    "bt_case_eq",
    "bt_case_neq",
    "bt_num_named",
    "bt_set_named",
    "bt_comprehension",
    "tr_wf",
    "tr_eq",
    "tr_lift",
    "tr_falsum",
    "tr_conn",
    "tr_quant",
]


# ---------------------------------------------------------------------------
# Logical base


def _match_k(phi: Formula) -> bool:
    match phi:
        case Imp(a, Imp(_, b)):
            return a == b
    return False


def _match_s(phi: Formula) -> bool:
    match phi:
        case Imp(Imp(a1, Imp(b1, c1)), Imp(Imp(a2, b2), Imp(a3, c2))):
            return a1 == a2 == a3 and b1 == b2 and c1 == c2
    return False


def _match_and_intro(phi: Formula) -> bool:
    match phi:
        case Imp(a1, Imp(b1, And(a2, b2))):
            return a1 == a2 and b1 == b2
    return False


def _match_and_left(phi: Formula) -> bool:
    match phi:
        case Imp(And(a1, _), a2):
            return a1 == a2
    return False


def _match_and_right(phi: Formula) -> bool:
    match phi:
        case Imp(And(_, b1), b2):
            return b1 == b2
    return False


def _match_or_left(phi: Formula) -> bool:
    match phi:
        case Imp(a1, Or(a2, _)):
            return a1 == a2
    return False


def _match_or_right(phi: Formula) -> bool:
    match phi:
        case Imp(b1, Or(_, b2)):
            return b1 == b2
    return False


def _match_or_elim(phi: Formula) -> bool:
    match phi:
        case Imp(Imp(a1, c1), Imp(Imp(b1, c2), Imp(Or(a2, b2), c3))):
            return a1 == a2 and b1 == b2 and c1 == c2 == c3
    return False


def _match_efq(phi: Formula) -> bool:
    match phi:
        case Imp(Bot(), _):
            return True
    return False


def _match_dne(phi: Formula) -> bool:
    match phi:
        case Imp(Imp(Imp(a1, Bot()), Bot()), a2):
            return a1 == a2
    return False


_NO_WITNESS = object()


def _aligned_replacement(phi, x: Variable, psi):
    """The psi-subtree sitting where phi has a free occurrence of x.

    Returns the replacement candidate, ``None`` on a structural
    mismatch, or ``_NO_WITNESS`` when the trees agree and x is not
    free.  Soundness rests on the caller re-checking with
    :func:`substitute`; this walk only proposes a witness.
    """
    if phi == x:
        return psi
    if type(phi) is not type(psi):
        return None
    if isinstance(phi, Variable):
        return _NO_WITNESS if phi == psi else None
    if isinstance(phi, (Forall, Exists)) and phi.var == x:
        return _NO_WITNESS if phi == psi else None
    found = _NO_WITNESS
    for field in dataclasses.fields(phi):
        a = getattr(phi, field.name)
        b = getattr(psi, field.name)
        if isinstance(a, (int, str)) or a is None:
            if a != b:
                return None
            continue
        sub = _aligned_replacement(a, x, b)
        if sub is None:
            return None
        if sub is _NO_WITNESS:
            continue
        if found is _NO_WITNESS:
            found = sub
        elif found != sub:
            return None
    return found


def _instantiation_witness(phi: Formula, x: Variable, psi: Formula):
    """A term t with phi[x:=t] == psi, or None if there is none."""
    probe = _aligned_replacement(phi, x, psi)
    if probe is _NO_WITNESS:
        return x if phi == psi else None
    if probe is None:
        return None
    try:
        if substitute(phi, x, probe) == psi:
            return probe
    except SortError:
        return None
    return None


def _match_univ_inst(phi: Formula) -> bool:
    match phi:
        case Imp(Forall(x, body), instance):
            return _instantiation_witness(body, x, instance) is not None
    return False


def _match_exists_intro(phi: Formula) -> bool:
    match phi:
        case Imp(instance, Exists(x, body)):
            return _instantiation_witness(body, x, instance) is not None
    return False


def _match_univ_dist(phi: Formula) -> bool:
    match phi:
        case Imp(Forall(x1, Imp(psi1, body1)), Imp(psi2, Forall(x2, body2))):
            return (
                x1 == x2
                and psi1 == psi2
                and body1 == body2
                and x1 not in free_vars(psi1)
            )
    return False


def _match_exists_elim(phi: Formula) -> bool:
    match phi:
        case Imp(Forall(x1, Imp(body1, psi1)), Imp(Exists(x2, body2), psi2)):
            return (
                x1 == x2
                and psi1 == psi2
                and body1 == body2
                and x1 not in free_vars(psi1)
            )
    return False


def _match_eq_refl(phi: Formula) -> bool:
    match phi:
        case Eq(left, right):
            return left == right
    return False


def _generalize(a, b, t, u, x: Variable):
    """Anti-unify a and b, mapping aligned (t, u) divergences to x."""
    if a == b:
        return a
    if a == t and b == u:
        return x
    if type(a) is not type(b):
        return None
    if not dataclasses.is_dataclass(a):
        return None
    kwargs = {}
    for field in dataclasses.fields(a):
        av = getattr(a, field.name)
        bv = getattr(b, field.name)
        if isinstance(av, (int, str)) or av is None:
            if av != bv:
                return None
            kwargs[field.name] = av
            continue
        sub = _generalize(av, bv, t, u, x)
        if sub is None:
            return None
        kwargs[field.name] = sub
    try:
        return type(a)(**kwargs)
    except (SortError, ValueError):
        return None


def _match_eq_subst(phi: Formula) -> bool:
    match phi:
        case Imp(Eq(t, u), Imp(before, after)):
            if before == after:
                return True
            x = fresh_variable(
                NUM,
                free_vars(before) | free_vars(after) | free_vars(t) | free_vars(u),
            )
            template = _generalize(before, after, t, u, x)
            if template is None:
                return False
            try:
                return (
                    substitute(template, x, t) == before
                    and substitute(template, x, u) == after
                )
            except SortError:
                return False
    return False


_LOGICAL_MATCHERS: dict[str, Callable[[Formula], bool]] = {
    "k": _match_k,
    "s": _match_s,
    "and-intro": _match_and_intro,
    "and-left": _match_and_left,
    "and-right": _match_and_right,
    "or-left": _match_or_left,
    "or-right": _match_or_right,
    "or-elim": _match_or_elim,
    "efq": _match_efq,
    "univ-inst": _match_univ_inst,
    "univ-dist": _match_univ_dist,
    "exists-intro": _match_exists_intro,
    "exists-elim": _match_exists_elim,
    "eq-refl": _match_eq_refl,
    "eq-subst": _match_eq_subst,
}

_CLASSICAL_MATCHERS: dict[str, Callable[[Formula], bool]] = {
    "dne": _match_dne,
}

LOGICAL_AXIOMS: tuple[str, ...] = tuple(_LOGICAL_MATCHERS)
CLASSICAL_AXIOMS: tuple[str, ...] = tuple(_CLASSICAL_MATCHERS)


def logical_axiom_matches(axiom_id: str, formula: Formula, classical: bool = False) -> bool:
    """Whether the formula instantiates the named logical schema."""
    matcher = _LOGICAL_MATCHERS.get(axiom_id)
    if matcher is None and classical:
        matcher = _CLASSICAL_MATCHERS.get(axiom_id)
    return matcher is not None and matcher(formula)


def logical_axiom_id(formula: Formula, classical: bool = False) -> str | None:
    """The first logical schema the formula instantiates, if any."""
    for name, matcher in _LOGICAL_MATCHERS.items():
        if matcher(formula):
            return name
    if classical:
        for name, matcher in _CLASSICAL_MATCHERS.items():
            if matcher(formula):
                return name
    return None


# ---------------------------------------------------------------------------
# Shared numeric schemas (successor arithmetic and induction)


def succ_term(n):
    """The successor n + 1 as written in the numeric axioms."""
    return Add(n, One())


def _require_sort(v, sort: SortTag, role: str) -> None:
    if not isinstance(v, Variable) or v.sort != sort:
        raise SortError(f"{role} must be a variable of sort {sort}, got {v!r}")


def peano_succ_nonzero(n: Variable) -> Formula:
    _require_sort(n, NUM, "n")
    return neg(Eq(succ_term(n), Zero()))


def peano_succ_inject(n: Variable, m: Variable) -> Formula:
    _require_sort(n, NUM, "n")
    _require_sort(m, NUM, "m")
    return Imp(Eq(succ_term(n), succ_term(m)), Eq(n, m))


def peano_add_zero(n: Variable) -> Formula:
    _require_sort(n, NUM, "n")
    return Eq(Add(n, Zero()), n)


def peano_add_succ(n: Variable, m: Variable) -> Formula:
    _require_sort(n, NUM, "n")
    _require_sort(m, NUM, "m")
    return Eq(Add(n, succ_term(m)), succ_term(Add(n, m)))


def peano_mul_zero(n: Variable) -> Formula:
    _require_sort(n, NUM, "n")
    return Eq(Mul(n, Zero()), Zero())


def peano_mul_succ(n: Variable, m: Variable) -> Formula:
    _require_sort(n, NUM, "n")
    _require_sort(m, NUM, "m")
    return Eq(Mul(n, succ_term(m)), Add(Mul(n, m), n))


def induction_axiom(n: Variable, phi: Formula) -> Formula:
    """phi(0) and (phi(n) -> phi(n+1)) entail phi everywhere."""
    _require_sort(n, NUM, "induction variable")
    base = substitute(phi, n, Zero())
    step = Forall(n, Imp(phi, substitute(phi, n, succ_term(n))))
    return Imp(And(base, step), Forall(n, phi))


def _match_succ_nonzero(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(Eq(Add(Variable(sort=SortTag("num")) as n, One()), Zero()), Bot()):
            return phi == peano_succ_nonzero(n)
    return False


def _match_succ_inject(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(
            Eq(
                Add(Variable(sort=SortTag("num")) as n, One()),
                Add(Variable(sort=SortTag("num")) as m, One()),
            ),
            Eq(_, _),
        ):
            return phi == peano_succ_inject(n, m)
    return False


def _match_add_zero(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Eq(Add(Variable(sort=SortTag("num")) as n, Zero()), _):
            return phi == peano_add_zero(n)
    return False


def _match_add_succ(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Eq(
            Add(
                Variable(sort=SortTag("num")) as n,
                Add(Variable(sort=SortTag("num")) as m, One()),
            ),
            _,
        ):
            return phi == peano_add_succ(n, m)
    return False


def _match_mul_zero(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Eq(Mul(Variable(sort=SortTag("num")) as n, Zero()), Zero()):
            return phi == peano_mul_zero(n)
    return False


def _match_mul_succ(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Eq(
            Mul(
                Variable(sort=SortTag("num")) as n,
                Add(Variable(sort=SortTag("num")) as m, One()),
            ),
            _,
        ):
            return phi == peano_mul_succ(n, m)
    return False


def no_leveled_set_binders(formula: Formula) -> bool:
    """No quantifier over a leveled-set variable anywhere in the formula."""
    return all(
        part.var.sort.kind != "leveled-set"
        for part in subformulas(formula)
        if isinstance(part, (Forall, Exists))
    )


def no_truth_atoms(formula: Formula) -> bool:
    """No truth-predicate atom anywhere in the formula."""
    return not any(isinstance(atom, TruthAtom) for atom in atoms(formula))


def no_typed_set_binders(formula: Formula) -> bool:
    """No quantifier over a typed-set variable anywhere in the formula."""
    return all(
        part.var.sort.kind != "typed-set"
        for part in subformulas(formula)
        if isinstance(part, (Forall, Exists))
    )


def _arithmetical(formula: Formula) -> bool:
    """No quantifier over a class variable (free class slots allowed)."""
    return all(
        part.var.sort != CLASS
        for part in subformulas(formula)
        if isinstance(part, (Forall, Exists))
    )


def _match_induction(phi: Formula, body_ok=None) -> bool:
    match phi:
        case Imp(And(base, Forall(n1, Imp(body1, step))), Forall(n2, body2)):
            if n1 != n2 or body1 != body2 or n2.sort != NUM:
                return False
            if phi != induction_axiom(n2, body2):
                return False
            return body_ok is None or body_ok(body2)
    return False


_PEANO_MATCHERS: dict[str, Callable[[Formula, bool], bool]] = {
    "succ-nonzero": _match_succ_nonzero,
    "succ-inject": _match_succ_inject,
    "add-zero": _match_add_zero,
    "add-succ": _match_add_succ,
    "mul-zero": _match_mul_zero,
    "mul-succ": _match_mul_succ,
}


# ---------------------------------------------------------------------------
# Leveled arithmetic (comprehension and choice)


def sa_comprehension(z: Variable, n: Variable, phi: Formula) -> Formula:
    """The set z of numbers n satisfying a simple formula exists."""
    _require_sort(n, NUM, "member variable")
    if not isinstance(z, Variable) or z.sort.kind != "leveled-set":
        raise SortError(f"comprehension variable must be a leveled set, got {z!r}")
    if z in free_vars(phi):
        raise SortError("comprehension variable occurs in the body")
    return Exists(z, Forall(n, iff(LeveledMember(z.sort.level, n, z), phi)))


def _match_sa_comprehension(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Exists(
            Variable(sort=SortTag("leveled-set")) as z,
            Forall(
                Variable(sort=SortTag("num")) as n,
                And(Imp(LeveledMember(_, _, _), body), _),
            ),
        ):
            try:
                rebuilt = sa_comprehension(z, n, body)
            except SortError:
                return False
            return phi == rebuilt and is_k_simple(z.sort.level, body)
    return False


def sa_choice(
    n: Variable,
    x: Variable,
    phi: Formula,
    *,
    z: Variable | None = None,
    y: Variable | None = None,
    m: Variable | None = None,
    w: Variable | None = None,
) -> Formula:
    """Unique per-number sets collate into one set of coded pairs."""
    _require_sort(n, NUM, "index variable")
    if not isinstance(x, Variable) or x.sort.kind != "leveled-set":
        raise SortError(f"choice variable must be a leveled set, got {x!r}")
    level = x.sort.level
    avoid = free_vars(phi) | {n, x}
    if z is None:
        z = fresh_variable(x.sort, frozenset(avoid))
    if z.sort != x.sort or z == x or z in free_vars(phi):
        raise SortError("uniqueness witness must be fresh and of the choice sort")
    if y is None:
        y = fresh_variable(leveled_set(level + 1), frozenset(avoid))
    if y.sort != leveled_set(level + 1) or y in free_vars(phi):
        raise SortError("collation set must be fresh of the next sort up")
    alloc = FreshNums(frozenset(avoid))
    if m is None:
        m = alloc.take()
    if w is None:
        w = alloc.take()
    taken = free_vars(phi) | {n}
    if m.sort != NUM or w.sort != NUM or m == w or m in taken or w in taken:
        raise SortError("member and pair witnesses must be distinct fresh numbers")
    unique = Exists(
        x,
        And(phi, Forall(z, Imp(substitute(phi, x, z), leveled_set_equal(level, x, z)))),
    )
    members = Forall(
        m,
        iff(
            LeveledMember(level, m, x),
            Exists(w, And(pair_eq(w, n, m), LeveledMember(level + 1, w, y))),
        ),
    )
    return Imp(Forall(n, unique), Exists(y, Forall(n, Exists(x, And(phi, members)))))


def _match_sa_choice(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(
            Forall(n, Exists(x, And(body, Forall(z, Imp(_, _))))),
            Exists(y, Forall(_, Exists(_, And(_, Forall(m, And(Imp(_, Exists(w, _)), _)))))),
        ):
            try:
                rebuilt = sa_choice(n, x, body, z=z, y=y, m=m, w=w)
            except SortError:
                return False
            return phi == rebuilt and is_k_simple(x.sort.level, body)
    return False


# ---------------------------------------------------------------------------
# Second-order arithmetic (classes)


def class_equal(left: Variable, right: Variable) -> Formula:
    """Extensional equality of two classes."""
    _require_sort(left, CLASS, "left class")
    _require_sort(right, CLASS, "right class")
    member = fresh_variable(NUM, frozenset())
    return Forall(member, iff(ClassMember(member, left), ClassMember(member, right)))


def ar_comprehension(z: Variable, n: Variable, phi: Formula) -> Formula:
    """The class of numbers satisfying an arithmetical formula exists."""
    _require_sort(z, CLASS, "comprehension variable")
    _require_sort(n, NUM, "member variable")
    if z in free_vars(phi):
        raise SortError("comprehension variable occurs in the body")
    return Exists(z, Forall(n, iff(ClassMember(n, z), phi)))


def _match_ar_comprehension(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Exists(
            Variable(sort=SortTag("class")) as z,
            Forall(
                Variable(sort=SortTag("num")) as n,
                And(Imp(ClassMember(_, _), body), _),
            ),
        ):
            try:
                rebuilt = ar_comprehension(z, n, body)
            except SortError:
                return False
            return phi == rebuilt and _arithmetical(body)
    return False


def ar_unique_choice(
    k: Variable,
    x: Variable,
    phi: Formula,
    *,
    z: Variable | None = None,
    y: Variable | None = None,
    m: Variable | None = None,
    w: Variable | None = None,
) -> Formula:
    """Unique per-number classes collate into one class of coded pairs."""
    _require_sort(k, NUM, "index variable")
    _require_sort(x, CLASS, "choice variable")
    avoid = free_vars(phi) | {k, x}
    if z is None:
        z = fresh_variable(CLASS, frozenset(avoid))
    if z.sort != CLASS or z == x or z in free_vars(phi):
        raise SortError("uniqueness witness must be a fresh class")
    if y is None:
        y = fresh_variable(CLASS, frozenset(avoid))
    if y.sort != CLASS or y in free_vars(phi):
        raise SortError("collation class must be fresh")
    alloc = FreshNums(frozenset(avoid))
    if m is None:
        m = alloc.take()
    if w is None:
        w = alloc.take()
    taken = free_vars(phi) | {k}
    if m.sort != NUM or w.sort != NUM or m == w or m in taken or w in taken:
        raise SortError("member and pair witnesses must be distinct fresh numbers")
    unique = Exists(
        x, And(phi, Forall(z, Imp(substitute(phi, x, z), class_equal(x, z))))
    )
    members = Forall(
        m,
        iff(
            ClassMember(m, x),
            Exists(w, And(pair_eq(w, k, m), ClassMember(w, y))),
        ),
    )
    return Imp(Forall(k, unique), Exists(y, Forall(k, Exists(x, And(phi, members)))))


def _match_ar_unique_choice(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(
            Forall(k, Exists(x, And(body, Forall(z, Imp(_, _))))),
            Exists(y, Forall(_, Exists(_, And(_, Forall(m, And(Imp(_, Exists(w, _)), _)))))),
        ):
            try:
                rebuilt = ar_unique_choice(k, x, body, z=z, y=y, m=m, w=w)
            except SortError:
                return False
            return phi == rebuilt and _arithmetical(body)
    return False


def ar_delta_comprehension(
    n: Variable,
    v: Variable,
    u: Variable,
    phi: Formula,
    psi: Formula,
    *,
    z: Variable | None = None,
) -> Formula:
    """A class exists for any membership condition with matching bounds."""
    _require_sort(n, NUM, "member variable")
    _require_sort(v, CLASS, "universal witness")
    _require_sort(u, CLASS, "existential witness")
    if z is None:
        z = fresh_variable(CLASS, frozenset(free_vars(phi) | free_vars(psi) | {n}))
    if z.sort != CLASS or z in free_vars(phi) | free_vars(psi):
        raise SortError("comprehension class must be fresh")
    premise = Forall(n, iff(Forall(v, phi), Exists(u, psi)))
    conclusion = Exists(z, Forall(n, iff(ClassMember(n, z), Exists(u, psi))))
    return Imp(premise, conclusion)


def _match_ar_delta_comprehension(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(
            Forall(n, And(Imp(Forall(v, upper), Exists(u, lower)), _)),
            Exists(z, Forall(_, And(Imp(ClassMember(_, _), _), _))),
        ):
            try:
                rebuilt = ar_delta_comprehension(n, v, u, upper, lower, z=z)
            except SortError:
                return False
            return phi == rebuilt and _arithmetical(upper) and _arithmetical(lower)
    return False


# ---------------------------------------------------------------------------
# Operations and typed sets


def bt_eq_op_refl(x: Variable) -> Formula:
    _require_sort(x, OP, "x")
    return NamesTyped(0, x, x)


def _object_level(obj: Variable) -> int:
    if obj.sort == OP:
        return 0
    if obj.sort.kind == "typed-set":
        return obj.sort.level
    raise SortError(f"expected an operation or typed set, got {obj!r}")


def bt_name_transfer(u: Variable, v: Variable, first: Variable, second: Variable) -> Formula:
    """Two names of one object name all the same objects."""
    _require_sort(u, OP, "u")
    _require_sort(v, OP, "v")
    k = _object_level(first)
    n = _object_level(second)
    premise = and_chain(
        [NamesTyped(k, u, first), NamesTyped(k, v, first), NamesTyped(n, u, second)]
    )
    return Imp(premise, NamesTyped(n, v, second))


def bt_num_unique(u: Variable, v: Variable, m: Variable) -> Formula:
    _require_sort(u, OP, "u")
    _require_sort(v, OP, "v")
    _require_sort(m, NUM, "m")
    return Imp(And(NamesNumber(u, m), NamesNumber(v, m)), NamesTyped(0, u, v))


def bt_num_transport(u: Variable, m: Variable, v: Variable) -> Formula:
    _require_sort(u, OP, "u")
    _require_sort(v, OP, "v")
    _require_sort(m, NUM, "m")
    return Imp(And(NamesNumber(u, m), NamesTyped(0, u, v)), NamesNumber(v, m))


def bt_ap_congruence(
    f: Variable, x: Variable, y: Variable, g: Variable, u: Variable, v: Variable
) -> Formula:
    for var, role in ((f, "f"), (x, "x"), (y, "y"), (g, "g"), (u, "u"), (v, "v")):
        _require_sort(var, OP, role)
    premise = and_chain(
        [AppliesTo(f, x, y), NamesTyped(0, f, g), NamesTyped(0, x, u), NamesTyped(0, y, v)]
    )
    return Imp(premise, AppliesTo(g, u, v))


def bt_mem_congruence(
    element: Variable, container: Variable, other_element: Variable, other_container: Variable
) -> Formula:
    """Membership respects object equality on both sides."""
    k = _object_level(element)
    if _object_level(other_element) != k:
        raise SortError("elements must share a level")
    premise = and_chain(
        [
            TypedMember(k, element, container),
            set_equal(k, element, other_element),
            set_equal(k + 1, container, other_container),
        ]
    )
    return Imp(premise, TypedMember(k, other_element, other_container))


def bt_ap_functional(f: Variable, x: Variable, y: Variable, z: Variable) -> Formula:
    for var, role in ((f, "f"), (x, "x"), (y, "y"), (z, "z")):
        _require_sort(var, OP, role)
    return Imp(And(AppliesTo(f, x, y), AppliesTo(f, x, z)), NamesTyped(0, y, z))


def bt_comb_k(x: Variable, y: Variable) -> Formula:
    _require_sort(x, OP, "x")
    _require_sort(y, OP, "y")
    return same_value(apply_chain(KC, x, y), x)


def bt_comb_s_defined(x: Variable, y: Variable) -> Formula:
    _require_sort(x, OP, "x")
    _require_sort(y, OP, "y")
    return is_defined(apply_chain(SC, x, y))


def bt_comb_s(x: Variable, y: Variable, z: Variable) -> Formula:
    for var, role in ((x, "x"), (y, "y"), (z, "z")):
        _require_sort(var, OP, role)
    return ext_equal(apply_chain(SC, x, y, z), apply_chain(x, z, App(y, z)))


def bt_pair_defined(x: Variable, y: Variable) -> Formula:
    _require_sort(x, OP, "x")
    _require_sort(y, OP, "y")
    return is_defined(apply_chain(PC, x, y))


def bt_pair_nonzero(x: Variable, y: Variable) -> Formula:
    _require_sort(x, OP, "x")
    _require_sort(y, OP, "y")
    return neg(same_value(apply_chain(PC, x, y), Zero()))


def bt_proj_defined(which: int, x: Variable) -> Formula:
    _require_sort(x, OP, "x")
    head = P1C if which == 1 else P2C
    return is_defined(App(head, x))


def bt_proj_pair(which: int, x: Variable, y: Variable) -> Formula:
    _require_sort(x, OP, "x")
    _require_sort(y, OP, "y")
    head = P1C if which == 1 else P2C
    return same_value(App(head, apply_chain(PC, x, y)), x if which == 1 else y)


def bt_pair_num_closed(n: Variable, value: Variable | None = None) -> Formula:
    """Successors of numbers exist: p n 0 denotes some number."""
    _require_sort(n, NUM, "n")
    if value is None:
        value = fresh_variable(NUM, frozenset({n}))
    if value.sort != NUM or value == n:
        raise SortError("successor witness must be a fresh number")
    return Exists(value, evaluates_to(apply_chain(PC, n, Zero()), value))


def bt_pair_set_closed(
    x: Variable, container: Variable, value: Variable | None = None
) -> Formula:
    """Pairing an operation onto a set denotes a set of the same level."""
    _require_sort(x, OP, "x")
    level = _object_level(container)
    if level < 1:
        raise SortError("pairing closure targets a typed set")
    if value is None:
        value = fresh_variable(typed_set(level), frozenset({x, container}))
    if value.sort != typed_set(level) or value == container:
        raise SortError("closure witness must be a fresh set of the same level")
    return Exists(value, evaluates_to(apply_chain(PC, x, container), value))


def bt_case_eq(x: Variable, y: Variable, n: Variable, m: Variable) -> Formula:
    for var, role in ((x, "x"), (y, "y")):
        _require_sort(var, OP, role)
    for var, role in ((n, "n"), (m, "m")):
        _require_sort(var, NUM, role)
    return Imp(Eq(n, m), same_value(apply_chain(DC, x, y, n, m), x))


def bt_case_neq(x: Variable, y: Variable, n: Variable, m: Variable) -> Formula:
    for var, role in ((x, "x"), (y, "y")):
        _require_sort(var, OP, role)
    for var, role in ((n, "n"), (m, "m")):
        _require_sort(var, NUM, role)
    return Imp(neg(Eq(n, m)), same_value(apply_chain(DC, x, y, n, m), y))


def bt_num_named(n: Variable, value: Variable | None = None) -> Formula:
    _require_sort(n, NUM, "n")
    if value is None:
        value = fresh_variable(OP, frozenset({n}))
    _require_sort(value, OP, "name witness")
    return Exists(value, NamesNumber(value, n))


def bt_set_named(container: Variable, value: Variable | None = None) -> Formula:
    level = _object_level(container)
    if level < 1:
        raise SortError("naming closure targets a typed set")
    if value is None:
        value = fresh_variable(OP, frozenset({container}))
    _require_sort(value, OP, "name witness")
    return Exists(value, NamesTyped(level, value, container))


def bt_comprehension(code: int, value: Variable | None = None) -> Formula:
    """The set defined by a coded abstraction exists and is named.

    The displayed body and binder are exactly the decoded ones, applied
    to the code's own parameter list.
    """
    bound, params, body = decode_abstraction(code)
    level = _object_level(bound)
    for param in params:
        if param.sort not in (NUM, OP) and not (
            param.sort.kind == "typed-set" and param.sort.level <= level + 1
        ):
            raise SortError(f"parameter {param!r} exceeds the comprehension level")
    if not is_elementary(level + 1, body):
        raise SortError("comprehension body must be elementary at the next level")
    if not free_vars(body) <= frozenset({bound, *params}):
        raise SortError("comprehension body has parameters outside the code")
    avoid = frozenset({bound, *params}) | free_vars(body)
    if value is None:
        value = fresh_variable(typed_set(level + 1), avoid)
    if value.sort != typed_set(level + 1) or value in avoid:
        raise SortError("comprehension witness must be fresh of the next level")
    term = App(comp(code), tuple_term(list(params))) if params else comp(code)
    named = evaluates_to(term, value, avoid)
    return Exists(value, And(named, Forall(bound, iff(TypedMember(level, bound, value), body))))


def _formula_comp_codes(node) -> set[int]:
    found: set[int] = set()
    if isinstance(node, OpConstant):
        if node.name == "comp":
            found.add(node.index)
        return found
    if not dataclasses.is_dataclass(node):
        return found
    for field in dataclasses.fields(node):
        part = getattr(node, field.name)
        if dataclasses.is_dataclass(part):
            found |= _formula_comp_codes(part)
    return found


def _match_bt_comprehension(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Exists(value, And(_, Forall(_, And(Imp(TypedMember(_, _, _), _), _)))):
            for code in sorted(_formula_comp_codes(phi)):
                if not is_abstraction(code):
                    continue
                try:
                    rebuilt = bt_comprehension(code, value=value)
                except (SortError, ValueError):
                    continue
                if phi == rebuilt:
                    return True
    return False


def _free_by_sort(formula: Formula) -> dict[str, list[Variable]]:
    pools: dict[str, list[Variable]] = {}
    for var in sorted(free_vars(formula), key=lambda v: (v.sort.kind, v.sort.level or 0, v.index)):
        pools.setdefault(var.sort.kind, []).append(var)
    return pools


def _enumerate_slots(formula: Formula, sorts: Iterable[SortTag]):
    """All tuples of free variables of the requested sorts."""
    pools = _free_by_sort(formula)
    choices = []
    for sort in sorts:
        pool = [v for v in pools.get(sort.kind, []) if v.sort == sort]
        if not pool:
            return
        choices.append(pool)
    yield from itertools.product(*choices)


def _match_rebuild(formula: Formula, builder, sorts: Iterable[SortTag]) -> bool:
    for slots in _enumerate_slots(formula, sorts):
        try:
            if formula == builder(*slots):
                return True
        except SortError:
            continue
    return False


def _match_eq_op_refl(phi: Formula, restricted: bool) -> bool:
    match phi:
        case NamesTyped(0, Variable(sort=SortTag("op")) as x, y):
            return x == y
    return False


def _match_name_transfer(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(
            And(NamesTyped(_, u, first), And(NamesTyped(_, v, _), NamesTyped(_, _, second))),
            NamesTyped(_, _, _),
        ) if all(isinstance(s, Variable) for s in (u, v, first, second)):
            try:
                return phi == bt_name_transfer(u, v, first, second)
            except SortError:
                return False
    return False


def _match_num_unique(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(And(NamesNumber(u, m), NamesNumber(v, _)), NamesTyped(0, _, _)) if all(
            isinstance(s, Variable) for s in (u, v, m)
        ):
            try:
                return phi == bt_num_unique(u, v, m)
            except SortError:
                return False
    return False


def _match_num_transport(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(And(NamesNumber(u, m), NamesTyped(0, _, v)), NamesNumber(_, _)) if all(
            isinstance(s, Variable) for s in (u, v, m)
        ):
            try:
                return phi == bt_num_transport(u, m, v)
            except SortError:
                return False
    return False


def _match_ap_congruence(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(
            And(AppliesTo(f, x, y), And(NamesTyped(0, _, g), _)),
            AppliesTo(_, u, v),
        ) if all(isinstance(s, Variable) for s in (f, x, y, g, u, v)):
            try:
                return phi == bt_ap_congruence(f, x, y, g, u, v)
            except SortError:
                return False
    return False


def _match_mem_congruence(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(
            And(TypedMember(_, element, container), _),
            TypedMember(_, other_element, other_container),
        ) if all(
            isinstance(s, Variable)
            for s in (element, container, other_element, other_container)
        ):
            try:
                return phi == bt_mem_congruence(
                    element, container, other_element, other_container
                )
            except SortError:
                return False
    return False


def _match_ap_functional(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(And(AppliesTo(f, x, y), AppliesTo(_, _, z)), NamesTyped(0, _, _)) if all(
            isinstance(s, Variable) for s in (f, x, y, z)
        ):
            try:
                return phi == bt_ap_functional(f, x, y, z)
            except SortError:
                return False
    return False


def _match_pair_num_closed(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Exists(Variable(sort=SortTag("num")) as value, _):
            return _match_rebuild(
                phi, lambda n: bt_pair_num_closed(n, value=value), (NUM,)
            )
    return False


def _match_pair_set_closed(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Exists(Variable(sort=SortTag("typed-set", level)) as value, _):
            return _match_rebuild(
                phi,
                lambda x, container: bt_pair_set_closed(x, container, value=value),
                (OP, typed_set(level)),
            )
    return False


def _match_num_named(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Exists(value, NamesNumber(inner, Variable(sort=SortTag("num")) as n)):
            if inner != value:
                return False
            try:
                return phi == bt_num_named(n, value=value)
            except SortError:
                return False
    return False


def _match_set_named(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Exists(value, NamesTyped(_, inner, Variable() as container)):
            if inner != value:
                return False
            try:
                return phi == bt_set_named(container, value=value)
            except SortError:
                return False
    return False


def _match_case_eq(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(Eq(Variable() as n, Variable() as m), _):
            return _match_rebuild(
                phi, lambda x, y: bt_case_eq(x, y, n, m), (OP, OP)
            )
    return False


def _match_case_neq(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(Imp(Eq(Variable() as n, Variable() as m), Bot()), _):
            return _match_rebuild(
                phi, lambda x, y: bt_case_neq(x, y, n, m), (OP, OP)
            )
    return False


def _enumerated_matcher(builder, sorts):
    def matcher(phi: Formula, restricted: bool) -> bool:
        return _match_rebuild(phi, builder, sorts)

    return matcher


_BT_MATCHERS: dict[str, Callable[[Formula, bool], bool]] = {
    "eq-op-refl": _match_eq_op_refl,
    "eq-name-transfer": _match_name_transfer,
    "eq-num-unique": _match_num_unique,
    "eq-num-transport": _match_num_transport,
    "ap-congruence": _match_ap_congruence,
    "mem-congruence": _match_mem_congruence,
    "ap-functional": _match_ap_functional,
    "comb-k": _enumerated_matcher(bt_comb_k, (OP, OP)),
    "comb-s-defined": _enumerated_matcher(bt_comb_s_defined, (OP, OP)),
    "comb-s": _enumerated_matcher(bt_comb_s, (OP, OP, OP)),
    "pair-defined": _enumerated_matcher(bt_pair_defined, (OP, OP)),
    "pair-nonzero": _enumerated_matcher(bt_pair_nonzero, (OP, OP)),
    "proj1-defined": _enumerated_matcher(lambda x: bt_proj_defined(1, x), (OP,)),
    "proj2-defined": _enumerated_matcher(lambda x: bt_proj_defined(2, x), (OP,)),
    "proj1-pair": _enumerated_matcher(lambda x, y: bt_proj_pair(1, x, y), (OP, OP)),
    "proj2-pair": _enumerated_matcher(lambda x, y: bt_proj_pair(2, x, y), (OP, OP)),
    "pair-num-closed": _match_pair_num_closed,
    "pair-set-closed": _match_pair_set_closed,
    "case-eq": _match_case_eq,
    "case-neq": _match_case_neq,
    "num-named": _match_num_named,
    "set-named": _match_set_named,
    "comprehension": _match_bt_comprehension,
}


# ---------------------------------------------------------------------------
# Truth predicates


def _default_truth_slots(m, l, i, j):
    m = Variable(1) if m is None else m
    l = Variable(2) if l is None else l
    i = Variable(3) if i is None else i
    j = Variable(4) if j is None else j
    for var, role in ((m, "code"), (l, "environment"), (i, "left"), (j, "right")):
        _require_sort(var, NUM, role)
    return m, l, i, j


def tr_wf(k: int, m=None, l=None) -> Formula:
    """A truth atom only holds of coded formulas under evaluations."""
    if k < 1:
        raise ValueError("truth predicates start at stage 1")
    m, l, _, _ = _default_truth_slots(m, l, None, None)
    alloc = FreshNums(frozenset({m, l}))
    return Imp(
        TruthAtom(k, m, l),
        And(form_graph(number_term(k - 1), m, alloc), ev_graph(m, l, alloc)),
    )


def tr_eq(k: int, m=None, l=None, i=None, j=None) -> Formula:
    """Truth of a coded equation is equality of the evaluated sides."""
    if k < 1:
        raise ValueError("truth predicates start at stage 1")
    m, l, i, j = _default_truth_slots(m, l, i, j)
    alloc = FreshNums(frozenset({m, l, i, j}))
    premise = And(ev_graph(m, l, alloc), guard_eq_shape(m, i, j, alloc))
    u, v = alloc.take_many(2)
    value = Exists(
        u,
        And(
            eval_graph(i, l, u, alloc),
            Exists(v, And(eval_graph(j, l, v, alloc), Eq(u, v))),
        ),
    )
    return Imp(premise, iff(TruthAtom(k, m, l), value))


def tr_lift(k: int, m=None, l=None, i=None, j=None) -> Formula:
    """Truth of a coded truth atom defers to the stage below."""
    if k < 1:
        raise ValueError("truth predicates start at stage 1")
    m, l, i, j = _default_truth_slots(m, l, i, j)
    alloc = FreshNums(frozenset({m, l, i, j}))
    premise = And(ev_graph(m, l, alloc), guard_tr_shape(m, k, i, j, alloc))
    u, v = alloc.take_many(2)
    value = Exists(
        u,
        And(
            eval_graph(i, l, u, alloc),
            Exists(v, And(eval_graph(j, l, v, alloc), TruthAtom(k, u, v))),
        ),
    )
    return Imp(premise, iff(TruthAtom(k + 1, m, l), value))


def tr_falsum(k: int, l=None) -> Formula:
    """The coded absurdity is never true."""
    if k < 1:
        raise ValueError("truth predicates start at stage 1")
    _, l, _, _ = _default_truth_slots(None, l, None, None)
    return neg(TruthAtom(k, Zero(), l))


_CONNECTIVES = {coding.TAG_AND: And, coding.TAG_OR: Or, coding.TAG_IMP: Imp}
_QUANTIFIERS = {coding.TAG_FORALL: Forall, coding.TAG_EXISTS: Exists}


def tr_conn(k: int, tag: int, m=None, l=None, i=None, j=None) -> Formula:
    """Truth commutes with each coded binary connective."""
    if k < 1:
        raise ValueError("truth predicates start at stage 1")
    combine = _CONNECTIVES.get(tag)
    if combine is None:
        raise ValueError(f"not a connective tag: {tag}")
    m, l, i, j = _default_truth_slots(m, l, i, j)
    alloc = FreshNums(frozenset({m, l, i, j}))
    premise = And(ev_graph(m, l, alloc), guard_conn_shape(m, tag, i, j, alloc))
    value = combine(TruthAtom(k, i, l), TruthAtom(k, j, l))
    return Imp(premise, iff(TruthAtom(k, m, l), value))


def tr_quant(k: int, tag: int, m=None, l=None, i=None, j=None) -> Formula:
    """Truth of a coded quantifier quantifies over updated evaluations."""
    if k < 1:
        raise ValueError("truth predicates start at stage 1")
    quantify = _QUANTIFIERS.get(tag)
    if quantify is None:
        raise ValueError(f"not a quantifier tag: {tag}")
    m, l, i, j = _default_truth_slots(m, l, i, j)
    alloc = FreshNums(frozenset({m, l, i, j}))
    premise = And(ev_graph(m, l, alloc), guard_quant_shape(m, tag, i, j, alloc))
    witness = alloc.take()
    updated = alloc.take()
    value = quantify(
        witness,
        Exists(
            updated,
            And(subst_graph(l, i, witness, updated, alloc), TruthAtom(k, j, updated)),
        ),
    )
    return Imp(premise, iff(TruthAtom(k, m, l), value))


def _num_pool(phi: Formula) -> list[Variable]:
    return sorted(
        (v for v in free_vars(phi) if v.sort == NUM), key=lambda v: v.index
    )


def _match_tr_wf(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(TruthAtom(k, Variable() as m, Variable() as l), And(_, _)):
            try:
                return phi == tr_wf(k, m, l)
            except (SortError, ValueError):
                return False
    return False


def _match_tr_falsum(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(TruthAtom(k, Zero(), Variable() as l), Bot()):
            try:
                return phi == tr_falsum(k, l)
            except (SortError, ValueError):
                return False
    return False


def _match_tr_pairwise(phi: Formula, k: int, m, l, builder) -> bool:
    pool = _num_pool(phi)
    for i, j in itertools.product(pool, repeat=2):
        try:
            if phi == builder(k, m, l, i, j):
                return True
        except (SortError, ValueError):
            continue
    return False


def _match_tr_eq(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(And(_, _), And(Imp(TruthAtom(k, Variable() as m, Variable() as l), _), _)):
            return _match_tr_pairwise(phi, k, m, l, tr_eq)
    return False


def _match_tr_lift(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(And(_, _), And(Imp(TruthAtom(k, Variable() as m, Variable() as l), _), _)):
            if k < 2:
                return False
            return _match_tr_pairwise(phi, k - 1, m, l, tr_lift)
    return False


def _quant_matcher(tag: int):
    def matcher(phi: Formula, restricted: bool) -> bool:
        match phi:
            case Imp(And(_, _), And(Imp(TruthAtom(k, Variable() as m, Variable() as l), _), _)):
                return _match_tr_pairwise(
                    phi, k, m, l, lambda k_, m_, l_, i_, j_: tr_quant(k_, tag, m_, l_, i_, j_)
                )
        return False

    return matcher


def _match_tr_and(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(
            And(_, _),
            And(
                Imp(
                    TruthAtom(k, Variable() as m, Variable() as l),
                    And(TruthAtom(_, Variable() as i, _), TruthAtom(_, Variable() as j, _)),
                ),
                _,
            ),
        ):
            try:
                return phi == tr_conn(k, coding.TAG_AND, m, l, i, j)
            except (SortError, ValueError):
                return False
    return False


def _match_tr_or(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(
            And(_, _),
            And(
                Imp(
                    TruthAtom(k, Variable() as m, Variable() as l),
                    Or(TruthAtom(_, Variable() as i, _), TruthAtom(_, Variable() as j, _)),
                ),
                _,
            ),
        ):
            try:
                return phi == tr_conn(k, coding.TAG_OR, m, l, i, j)
            except (SortError, ValueError):
                return False
    return False


def _match_tr_imp(phi: Formula, restricted: bool) -> bool:
    match phi:
        case Imp(
            And(_, _),
            And(
                Imp(
                    TruthAtom(k, Variable() as m, Variable() as l),
                    Imp(TruthAtom(_, Variable() as i, _), TruthAtom(_, Variable() as j, _)),
                ),
                _,
            ),
        ):
            try:
                return phi == tr_conn(k, coding.TAG_IMP, m, l, i, j)
            except (SortError, ValueError):
                return False
    return False


_TRUTH_MATCHERS: dict[str, Callable[[Formula, bool], bool]] = {
    "truth-wf": _match_tr_wf,
    "truth-eq": _match_tr_eq,
    "truth-lift": _match_tr_lift,
    "truth-falsum": _match_tr_falsum,
    "truth-and": _match_tr_and,
    "truth-or": _match_tr_or,
    "truth-imp": _match_tr_imp,
    "truth-forall": _quant_matcher(coding.TAG_FORALL),
    "truth-exists": _quant_matcher(coding.TAG_EXISTS),
}


# ---------------------------------------------------------------------------
# Per-theory tables


def _sa_induction(phi: Formula, restricted: bool) -> bool:
    return _match_induction(phi, no_leveled_set_binders if restricted else None)


def _ar_induction(phi: Formula, restricted: bool) -> bool:
    return _match_induction(phi, None)


def _patr_induction(phi: Formula, restricted: bool) -> bool:
    return _match_induction(phi, no_truth_atoms if restricted else None)


_SA_MATCHERS: dict[str, Callable[[Formula, bool], bool]] = {
    **_PEANO_MATCHERS,
    "induction": _sa_induction,
    "comprehension": _match_sa_comprehension,
    "choice": _match_sa_choice,
}

_AR_MATCHERS: dict[str, Callable[[Formula, bool], bool]] = {
    **_PEANO_MATCHERS,
    "induction": _ar_induction,
    "comprehension": _match_ar_comprehension,
}

_AR_AC_MATCHERS: dict[str, Callable[[Formula, bool], bool]] = {
    **_AR_MATCHERS,
    "unique-choice": _match_ar_unique_choice,
}

_AR_DELTA_MATCHERS: dict[str, Callable[[Formula, bool], bool]] = {
    **_AR_MATCHERS,
    "delta-comprehension": _match_ar_delta_comprehension,
}

_PATR_MATCHERS: dict[str, Callable[[Formula, bool], bool]] = {
    **_PEANO_MATCHERS,
    "induction": _patr_induction,
    **_TRUTH_MATCHERS,
}

_THEORY_MATCHERS: dict[str, dict[str, Callable[[Formula, bool], bool]]] = {
    "BT": _BT_MATCHERS,
    "BTcl": _BT_MATCHERS,
    "SA": _SA_MATCHERS,
    "Ar": _AR_MATCHERS,
    "ArACBang": _AR_AC_MATCHERS,
    "ArDelta11C": _AR_DELTA_MATCHERS,
    "PATr": _PATR_MATCHERS,
}

THEORY_AXIOMS: dict[str, tuple[str, ...]] = {
    base: tuple(matchers) for base, matchers in _THEORY_MATCHERS.items()
}


def theory_axiom_matches(
    base: str, axiom_id: str, formula: Formula, restricted: bool = False
) -> bool:
    """Whether the formula instantiates the named schema of the theory."""
    matchers = _THEORY_MATCHERS.get(base)
    if matchers is None:
        raise ValueError(f"unknown theory base: {base}")
    matcher = matchers.get(axiom_id)
    return matcher is not None and matcher(formula, restricted)


def theory_axiom_id(base: str, formula: Formula, restricted: bool = False) -> str | None:
    """The first schema of the theory the formula instantiates, if any."""
    matchers = _THEORY_MATCHERS.get(base)
    if matchers is None:
        raise ValueError(f"unknown theory base: {base}")
    for name, matcher in matchers.items():
        if matcher(formula, restricted):
            return name
    return None
