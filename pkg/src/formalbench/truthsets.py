"""Object-level truth-set definitions in the leveled language.

For each stage k >= 1 there are three related formulas, built from the
arithmetic renderings of the coding predicates plus leveled membership
atoms:

* the local clause (:func:`build_clause`) says that the coded formula
  ``code`` holds at the environment ``env``, given lower-stage truth
  relations ``sets`` and the current per-formula set ``target``.  Its
  shape is fixed: an existential over the two immediate child codes
  whose body is a right-associated disjunction of ``level + 2`` groups
  — the equality group, one group per lower stage for inherited truth
  atoms, one group covering the three binary connectives, and one
  group covering the two quantifiers;
* :func:`build_formula_set` pins ``target`` to the set of
  (subformula, environment) pairs satisfying the local clause;
* :func:`build_truth_relation` packages the per-formula sets into one
  relation of sort ``level + 1`` keyed by formula codes, whose
  elements pair each formula code with the members of its set.

The stage-q truth relation ``sets[q-1]`` has sort ``q + 1``; the
per-formula set has sort ``level``; every other quantifier ranges over
numbers.  Membership of a coded pair is always rendered by binding the
pair value with one doubled equation first.
"""

from __future__ import annotations

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
    subform_graph,
    subst_graph,
)
from .expressions import (
    And,
    Eq,
    Exists,
    Forall,
    Formula,
    Imp,
    LeveledMember,
    NumTerm,
    Or,
    SetExpr,
    SortError,
    Variable,
    and_chain,
    atoms,
    exists_many,
    free_vars,
    fresh_variable,
    iff,
    leveled_set,
    number_term,
    or_chain,
    sort_of,
)


def _set_level(expr: SetExpr) -> int:
    sort = sort_of(expr)
    if sort.kind != "leveled-set":
        raise SortError(f"expected a leveled set, got sort {sort}")
    return sort.level


def _check_lower_sets(level: int, sets) -> None:
    if level < 1:
        raise ValueError("truth sets start at stage 1")
    if len(sets) != level - 1:
        raise SortError(
            f"stage {level} needs {level - 1} lower truth relations, got {len(sets)}"
        )
    for stage, relation in enumerate(sets, start=1):
        found = _set_level(relation)
        if found != stage + 1:
            raise SortError(
                f"stage-{stage} truth relation must have sort {stage + 1}, got {found}"
            )


def _alloc_over(alloc, parts, avoid) -> FreshNums:
    if alloc is not None:
        return alloc
    seen = set(avoid)
    for part in parts:
        seen |= free_vars(part)
    return FreshNums(frozenset(seen))


def build_clause(
    level: int,
    code: NumTerm,
    env: NumTerm,
    sets,
    target: SetExpr,
    alloc: FreshNums | None = None,
    avoid=frozenset(),
) -> Formula:
    """Local satisfaction clause for one coded subformula at one stage."""
    _check_lower_sets(level, sets)
    if _set_level(target) != level:
        raise SortError(
            f"stage-{level} formula set must have sort {level}, got {_set_level(target)}"
        )
    alloc = _alloc_over(alloc, [code, env, target, *sets], avoid)
    left, right = alloc.take_many(2)

    def pair_member(member_level: int, container: SetExpr, a: NumTerm, b: NumTerm) -> Formula:
        value = alloc.take()
        return Exists(
            value,
            And(pair_eq(value, a, b), LeveledMember(member_level, value, container)),
        )

    groups: list[Formula] = []

    value_l, value_r = alloc.take_many(2)
    groups.append(
        And(
            guard_eq_shape(code, left, right, alloc),
            Exists(
                value_l,
                And(
                    eval_graph(left, env, value_l, alloc),
                    Exists(
                        value_r,
                        And(eval_graph(right, env, value_r, alloc), Eq(value_l, value_r)),
                    ),
                ),
            ),
        )
    )

    for stage in range(1, level):
        u, v, inner = alloc.take_many(3)
        query = Exists(
            u,
            And(
                eval_graph(left, env, u, alloc),
                Exists(
                    v,
                    And(
                        eval_graph(right, env, v, alloc),
                        Exists(
                            inner,
                            And(
                                pair_eq(inner, u, v),
                                pair_member(stage + 1, sets[stage - 1], u, inner),
                            ),
                        ),
                    ),
                ),
            ),
        )
        groups.append(And(guard_tr_shape(code, stage, left, right, alloc), query))

    connective_cases = []
    for tag, combine in (
        (coding.TAG_AND, And),
        (coding.TAG_OR, Or),
        (coding.TAG_IMP, Imp),
    ):
        connective_cases.append(
            And(
                guard_conn_shape(code, tag, left, right, alloc),
                combine(
                    pair_member(level, target, left, env),
                    pair_member(level, target, right, env),
                ),
            )
        )
    groups.append(or_chain(connective_cases))

    quantifier_cases = []
    for tag, quantify in (
        (coding.TAG_FORALL, Forall),
        (coding.TAG_EXISTS, Exists),
    ):
        witness = alloc.take()
        updated = alloc.take()
        quantifier_cases.append(
            And(
                guard_quant_shape(code, tag, left, right, alloc),
                quantify(
                    witness,
                    Exists(
                        updated,
                        And(
                            subst_graph(env, left, witness, updated, alloc),
                            pair_member(level, target, right, updated),
                        ),
                    ),
                ),
            )
        )
    groups.append(or_chain(quantifier_cases))

    return exists_many([left, right], or_chain(groups))


def clause_groups(clause: Formula) -> list[Formula]:
    """The disjunct groups of a local clause, in spine order.

    The quantifier group closes the disjunction, so its own two cases
    sit on the spine; they are merged back into one group here, after
    checking they have the expected guarded shapes.
    """
    body = clause
    for _ in range(2):
        if not isinstance(body, Exists):
            raise ValueError("not a local clause: missing child-code existentials")
        body = body.body
    flat = []
    while isinstance(body, Or):
        flat.append(body.left)
        body = body.right
    flat.append(body)
    if (
        len(flat) < 4
        or not isinstance(flat[-2], And)
        or not isinstance(flat[-2].right, Forall)
        or not isinstance(flat[-1], And)
        or not isinstance(flat[-1].right, Exists)
    ):
        raise ValueError("not a local clause: missing quantifier cases")
    return flat[:-2] + [or_chain(flat[-2:])]


def inherited_truth_groups(clause: Formula, sets) -> list[Formula]:
    """The clause groups that consult a lower-stage truth relation."""
    lower = list(sets)
    picked = []
    for group in clause_groups(clause):
        uses_lower = any(
            isinstance(atom, LeveledMember) and atom.container in lower
            for atom in atoms(group)
        )
        if uses_lower:
            picked.append(group)
    return picked


def build_formula_set(
    level: int,
    code: NumTerm,
    sets,
    target: SetExpr,
    alloc: FreshNums | None = None,
    avoid=frozenset(),
) -> Formula:
    """``target`` is exactly the truth set of the coded formula."""
    _check_lower_sets(level, sets)
    if _set_level(target) != level:
        raise SortError(
            f"stage-{level} formula set must have sort {level}, got {_set_level(target)}"
        )
    alloc = _alloc_over(alloc, [code, target, *sets], avoid)
    pair_var, sub, env = alloc.take_many(3)
    membership = exists_many(
        [sub, env],
        and_chain(
            [
                pair_eq(pair_var, sub, env),
                subform_graph(code, sub, alloc),
                ev_graph(sub, env, alloc),
                build_clause(level, sub, env, sets, target, alloc),
            ]
        ),
    )
    return And(
        form_graph(number_term(level - 1), code, alloc),
        Forall(pair_var, iff(LeveledMember(level, pair_var, target), membership)),
    )


def build_truth_relation(
    level: int,
    sets,
    package: SetExpr,
    alloc: FreshNums | None = None,
    avoid=frozenset(),
) -> Formula:
    """``package`` holds every (formula code, member) pair of the stage."""
    _check_lower_sets(level, sets)
    if _set_level(package) != level + 1:
        raise SortError(
            f"stage-{level} truth relation must have sort {level + 1},"
            f" got {_set_level(package)}"
        )
    alloc = _alloc_over(alloc, [package, *sets], avoid)
    element, code, rest = alloc.take_many(3)
    domain = Forall(
        element,
        Imp(
            LeveledMember(level + 1, element, package),
            exists_many(
                [code, rest],
                And(
                    pair_eq(element, code, rest),
                    form_graph(number_term(level - 1), code, alloc),
                ),
            ),
        ),
    )
    formula_code = alloc.take()
    member, keyed = alloc.take_many(2)
    section = fresh_variable(
        leveled_set(level),
        {part for part in [*sets, package] if isinstance(part, Variable)},
    )
    completeness = Forall(
        formula_code,
        Imp(
            form_graph(number_term(level - 1), formula_code, alloc),
            Exists(
                section,
                And(
                    build_formula_set(level, formula_code, sets, section, alloc),
                    Forall(
                        member,
                        iff(
                            LeveledMember(level, member, section),
                            Exists(
                                keyed,
                                And(
                                    pair_eq(keyed, formula_code, member),
                                    LeveledMember(level + 1, keyed, package),
                                ),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    )
    return And(domain, completeness)


# ---------------------------------------------------------------------------
# Canonical free-variable interfaces


def _canonical_lower_sets(level: int) -> list[Variable]:
    return [Variable(q, leveled_set(q + 1)) for q in range(1, level)]


def stage_clause(level: int) -> Formula:
    """The local clause over the canonical variable interface.

    Free variables: the formula code is numeric variable 1, the
    environment numeric variable 2, the lower-stage relation of stage q
    is set variable q of sort q + 1, and the per-formula set is set
    variable 0 of sort ``level``.
    """
    if level < 1:
        raise ValueError("stages are positive")
    return build_clause(
        level,
        Variable(1),
        Variable(2),
        _canonical_lower_sets(level),
        Variable(0, leveled_set(level)),
    )


def stage_formula_set(level: int) -> Formula:
    """The per-formula set description over the canonical interface.

    Free variables: the formula code is numeric variable 1, the
    lower-stage relations are as in :func:`stage_clause`, and the
    described set is set variable 0 of sort ``level``.
    """
    if level < 1:
        raise ValueError("stages are positive")
    return build_formula_set(
        level,
        Variable(1),
        _canonical_lower_sets(level),
        Variable(0, leveled_set(level)),
    )


def stage_truth_relation(level: int) -> Formula:
    """The packaged truth relation over the canonical interface.

    Free variables: the lower-stage relations are as in
    :func:`stage_clause` and the package is set variable 0 of sort
    ``level + 1``.
    """
    if level < 1:
        raise ValueError("stages are positive")
    return build_truth_relation(
        level,
        _canonical_lower_sets(level),
        Variable(0, leveled_set(level + 1)),
    )
