"""Arithmetic renderings of the coding apparatus.

The pairing function, sequence operations, term evaluation, and the
formula/subformula/parameter predicates all have executable versions in
the coding module; the truth-set generators and the truth axioms need
the same predicates as honest object-level formulas over 0, 1, + and
multiplication.  This module builds those formulas.

Conventions, fixed once and relied on by tests:

* the pairing polynomial is halved, so it is not a term of the
  signature; a pair value is always rendered as one doubled equation
  (:func:`pair_eq`), and sequence codes via :func:`cons_eq`;
* defined functions are rendered by their graphs and bound at the use
  site with an existential (the graphs are graphs of total functions,
  so nothing is lost against the universal rendering);
* recursions (sequence length, term evaluation, formula shape) become
  computation traces coded by a beta-function pair, locally checked
  under one bounded universal quantifier;
* fresh variables are the smallest unused numeric indices, allocated
  in construction order by a :class:`FreshNums` threaded through each
  top-level build.

Everything produced here is pure arithmetic — the only atoms are
numeric equalities — so the output is welcome in all four languages.
The formulas are meant to be inspected structurally, not evaluated.
"""

from __future__ import annotations

from . import coding
from .expressions import (
    Add,
    And,
    Eq,
    Exists,
    Forall,
    Formula,
    Imp,
    Mul,
    NumTerm,
    One,
    Or,
    Variable,
    Zero,
    and_chain,
    exists_many,
    free_vars,
    neg,
    number_term,
    or_chain,
)


class FreshNums:
    """Allocator of smallest-index numeric variables, never reusing one."""

    def __init__(self, avoid=frozenset()):
        self._taken = {
            v.index
            for v in avoid
            if isinstance(v, Variable) and v.sort.kind == "num"
        }

    def take(self) -> Variable:
        index = 0
        while index in self._taken:
            index += 1
        self._taken.add(index)
        return Variable(index)

    def take_many(self, count: int) -> list[Variable]:
        return [self.take() for _ in range(count)]


def _vars_of(terms) -> frozenset[Variable]:
    out: set[Variable] = set()
    for term in terms:
        out |= free_vars(term)
    return frozenset(out)


def _alloc_for(alloc, terms, avoid) -> FreshNums:
    if alloc is not None:
        return alloc
    return FreshNums(_vars_of(terms) | frozenset(avoid))


def pair_eq(result: NumTerm, a: NumTerm, b: NumTerm) -> Eq:
    """``result`` is the pair code of ``(a, b)``, as one doubled equation."""
    total = Add(a, b)
    return Eq(Add(result, result), Add(Mul(total, Add(total, One())), Add(b, b)))


def cons_eq(seq: NumTerm, head: NumTerm, tail: NumTerm) -> Eq:
    """``seq`` is the nonempty-sequence code ``pair(head, tail) + 1``."""
    total = Add(head, tail)
    return Eq(
        Add(seq, seq),
        Add(
            Add(Mul(total, Add(total, One())), Add(tail, tail)),
            Add(One(), One()),
        ),
    )


def less_eq(a: NumTerm, b: NumTerm, alloc: FreshNums) -> Formula:
    gap = alloc.take()
    return Exists(gap, Eq(Add(a, gap), b))


def less_than(a: NumTerm, b: NumTerm, alloc: FreshNums) -> Formula:
    gap = alloc.take()
    return Exists(gap, Eq(Add(Add(a, gap), One()), b))


def exists_pair(a: NumTerm, b: NumTerm, alloc: FreshNums, body_fn) -> Formula:
    """Bind the pair value of ``(a, b)`` and assert ``body_fn`` of it."""
    value = alloc.take()
    return Exists(value, And(pair_eq(value, a, b), body_fn(value)))


def code_shape(
    result: NumTerm, tag: int, children: list[NumTerm], alloc: FreshNums
) -> Formula:
    """``result`` is the node code with this tag over these child values."""
    if not children:
        return pair_eq(result, number_term(tag), number_term(0))
    links = alloc.take_many(len(children))
    parts: list[Formula] = []
    for position, (link, child) in enumerate(zip(links, children)):
        tail: NumTerm
        if position + 1 < len(links):
            tail = Add(links[position + 1], One())
        else:
            tail = number_term(0)
        parts.append(pair_eq(link, child, tail))
    parts.append(pair_eq(result, number_term(tag), Add(links[0], One())))
    return exists_many(links, and_chain(parts))


def guard_eq_shape(code: NumTerm, left: NumTerm, right: NumTerm, alloc: FreshNums) -> Formula:
    """The coded formula is an equality of the terms coded left and right."""
    return code_shape(code, coding.TAG_EQ, [left, right], alloc)


def guard_tr_shape(
    code: NumTerm, level: int, left: NumTerm, right: NumTerm, alloc: FreshNums
) -> Formula:
    """The coded formula is a level-``level`` truth atom over coded terms."""
    return code_shape(
        code, coding.TAG_TRUTH_ATOM, [number_term(level), left, right], alloc
    )


def guard_conn_shape(
    code: NumTerm, tag: int, left: NumTerm, right: NumTerm, alloc: FreshNums
) -> Formula:
    """The coded formula is a binary connective over the coded parts."""
    if tag not in (coding.TAG_AND, coding.TAG_OR, coding.TAG_IMP):
        raise ValueError(f"tag {tag} is not a binary connective")
    return code_shape(code, tag, [left, right], alloc)


def guard_quant_shape(
    code: NumTerm, tag: int, index: NumTerm, body: NumTerm, alloc: FreshNums
) -> Formula:
    """The coded formula quantifies numeric variable ``index`` over ``body``."""
    if tag not in (coding.TAG_FORALL, coding.TAG_EXISTS):
        raise ValueError(f"tag {tag} is not a quantifier")
    var_code = alloc.take()
    return Exists(
        var_code,
        And(
            code_shape(var_code, coding.TAG_NUM_VAR, [index], alloc),
            code_shape(code, tag, [var_code, body], alloc),
        ),
    )


def beta_value(a: NumTerm, b: NumTerm, i: NumTerm, r: NumTerm, alloc: FreshNums) -> Formula:
    """The beta function of the pair ``(a, b)`` at position ``i`` equals ``r``."""
    divisor = Add(One(), Mul(Add(i, One()), b))
    quotient = alloc.take()
    gap = alloc.take()
    return exists_many(
        [quotient, gap],
        And(
            Eq(a, Add(Mul(quotient, divisor), r)),
            Eq(Add(Add(r, gap), One()), divisor),
        ),
    )


# ---------------------------------------------------------------------------
# Sequence graphs


def lh_graph(seq: NumTerm, length: NumTerm, alloc: FreshNums | None = None, avoid=frozenset()) -> Formula:
    """Graph of sequence length: the coded list has exactly this length."""
    alloc = _alloc_for(alloc, [seq, length], avoid)
    a, b = alloc.take_many(2)
    j = alloc.take()
    rest, head, tail = alloc.take_many(3)
    step = Exists(
        rest,
        And(
            beta_value(a, b, j, rest, alloc),
            exists_many(
                [head, tail],
                And(
                    cons_eq(rest, head, tail),
                    beta_value(a, b, Add(j, One()), tail, alloc),
                ),
            ),
        ),
    )
    return exists_many(
        [a, b],
        and_chain(
            [
                beta_value(a, b, Zero(), seq, alloc),
                beta_value(a, b, length, Zero(), alloc),
                Forall(j, Imp(less_than(j, length, alloc), step)),
            ]
        ),
    )


def elem_graph(seq: NumTerm, position: NumTerm, value: NumTerm, alloc: FreshNums | None = None, avoid=frozenset()) -> Formula:
    """Graph of 1-based element access, with 0 beyond the end of the list."""
    alloc = _alloc_for(alloc, [seq, position, value], avoid)
    a, b = alloc.take_many(2)
    last = alloc.take()
    j = alloc.take()
    rest, head, tail = alloc.take_many(3)
    step = Exists(
        rest,
        And(
            beta_value(a, b, j, rest, alloc),
            Or(
                exists_many(
                    [head, tail],
                    And(
                        cons_eq(rest, head, tail),
                        beta_value(a, b, Add(j, One()), tail, alloc),
                    ),
                ),
                And(
                    Eq(rest, Zero()),
                    beta_value(a, b, Add(j, One()), Zero(), alloc),
                ),
            ),
        ),
    )
    final_rest, final_tail = alloc.take_many(2)
    final = Exists(
        final_rest,
        And(
            beta_value(a, b, last, final_rest, alloc),
            Or(
                And(Eq(final_rest, Zero()), Eq(value, Zero())),
                Exists(final_tail, cons_eq(final_rest, value, final_tail)),
            ),
        ),
    )
    return exists_many(
        [a, b, last],
        and_chain(
            [
                beta_value(a, b, Zero(), seq, alloc),
                Eq(Add(last, One()), position),
                Forall(j, Imp(less_than(j, last, alloc), step)),
                final,
            ]
        ),
    )


def subst_graph(
    seq: NumTerm,
    position: NumTerm,
    value: NumTerm,
    result: NumTerm,
    alloc: FreshNums | None = None,
    avoid=frozenset(),
) -> Formula:
    """Graph of the environment update with zero padding up to the position."""
    alloc = _alloc_for(alloc, [seq, position, value, result], avoid)
    w, w_out = alloc.take_many(2)
    j = alloc.take()
    shared = alloc.take()
    agree = Forall(
        j,
        Imp(
            and_chain(
                [
                    less_eq(One(), j, alloc),
                    less_eq(j, w_out, alloc),
                    neg(Eq(j, position)),
                ]
            ),
            Exists(
                shared,
                And(
                    elem_graph(seq, j, shared, alloc),
                    elem_graph(result, j, shared, alloc),
                ),
            ),
        ),
    )
    return exists_many(
        [w, w_out],
        and_chain(
            [
                lh_graph(seq, w, alloc),
                lh_graph(result, w_out, alloc),
                Or(
                    And(less_eq(position, w, alloc), Eq(w_out, w)),
                    And(less_than(w, position, alloc), Eq(w_out, position)),
                ),
                elem_graph(result, position, value, alloc),
                agree,
            ]
        ),
    )


# ---------------------------------------------------------------------------
# Term evaluation


def eval_graph(code: NumTerm, env: NumTerm, value: NumTerm, alloc: FreshNums | None = None, avoid=frozenset()) -> Formula:
    """Graph of term evaluation under a 1-based environment list.

    A trace of (term code, value) pairs is coded beta-style; every
    entry is locally correct, referring back to earlier entries for
    its subterms, and the final entry is the requested pair.
    """
    alloc = _alloc_for(alloc, [code, env, value], avoid)
    a, b = alloc.take_many(2)

    def entry(at: NumTerm, node: NumTerm, out: NumTerm) -> Formula:
        cell = alloc.take()
        return Exists(
            cell, And(beta_value(a, b, at, cell, alloc), pair_eq(cell, node, out))
        )

    j = alloc.take()
    c, u = alloc.take_many(2)
    index = alloc.take()
    zero_case = And(
        code_shape(c, coding.TAG_ZERO, [], alloc), Eq(u, Zero())
    )
    one_case = And(code_shape(c, coding.TAG_ONE, [], alloc), Eq(u, One()))
    var_case = Exists(
        index,
        And(
            code_shape(c, coding.TAG_NUM_VAR, [index], alloc),
            elem_graph(env, index, u, alloc),
        ),
    )

    def binary_case(tag: int, combine) -> Formula:
        c1, c2, u1, u2, j1, j2 = alloc.take_many(6)
        return exists_many(
            [c1, c2, u1, u2, j1, j2],
            and_chain(
                [
                    code_shape(c, tag, [c1, c2], alloc),
                    less_than(j1, j, alloc),
                    less_than(j2, j, alloc),
                    entry(j1, c1, u1),
                    entry(j2, c2, u2),
                    Eq(u, combine(u1, u2)),
                ]
            ),
        )

    local = or_chain(
        [
            zero_case,
            one_case,
            var_case,
            binary_case(coding.TAG_ADD, Add),
            binary_case(coding.TAG_MUL, Mul),
        ]
    )
    w = alloc.take()
    last = alloc.take()
    return exists_many(
        [a, b, w],
        And(
            Forall(
                j,
                Imp(
                    less_than(j, w, alloc),
                    exists_many(
                        [c, u],
                        And(entry(j, c, u), local),
                    ),
                ),
            ),
            Exists(
                last,
                And(Eq(Add(last, One()), w), entry(last, code, value)),
            ),
        ),
    )


# ---------------------------------------------------------------------------
# Formula-shape predicates


def form_graph(stage: NumTerm, code: NumTerm, alloc: FreshNums | None = None, avoid=frozenset()) -> Formula:
    """Object-level counterpart of the executable stage check.

    The coded object is a truth-language formula whose truth atoms have
    indices between 1 and ``stage``.  The trace interleaves term
    entries (kind 0) and formula entries (kind 1).
    """
    alloc = _alloc_for(alloc, [stage, code], avoid)
    a, b = alloc.take_many(2)

    def entry(at: NumTerm, kind: int, node: NumTerm) -> Formula:
        cell = alloc.take()
        return Exists(
            cell,
            And(
                beta_value(a, b, at, cell, alloc),
                pair_eq(cell, number_term(kind), node),
            ),
        )

    j = alloc.take()

    def earlier(kind: int, node: NumTerm) -> Formula:
        before = alloc.take()
        return Exists(
            before, And(less_than(before, j, alloc), entry(before, kind, node))
        )

    c = alloc.take()
    index = alloc.take()
    term_cases = [
        code_shape(c, coding.TAG_ZERO, [], alloc),
        code_shape(c, coding.TAG_ONE, [], alloc),
        Exists(index, code_shape(c, coding.TAG_NUM_VAR, [index], alloc)),
    ]
    for tag in (coding.TAG_ADD, coding.TAG_MUL):
        c1, c2 = alloc.take_many(2)
        term_cases.append(
            exists_many(
                [c1, c2],
                and_chain(
                    [
                        code_shape(c, tag, [c1, c2], alloc),
                        earlier(0, c1),
                        earlier(0, c2),
                    ]
                ),
            )
        )

    formula_cases = [Eq(c, number_term(coding.BOT_CODE))]
    t1, t2 = alloc.take_many(2)
    formula_cases.append(
        exists_many(
            [t1, t2],
            and_chain(
                [
                    code_shape(c, coding.TAG_EQ, [t1, t2], alloc),
                    earlier(0, t1),
                    earlier(0, t2),
                ]
            ),
        )
    )
    q, t3, t4 = alloc.take_many(3)
    formula_cases.append(
        exists_many(
            [q, t3, t4],
            and_chain(
                [
                    code_shape(c, coding.TAG_TRUTH_ATOM, [q, t3, t4], alloc),
                    less_eq(One(), q, alloc),
                    less_eq(q, stage, alloc),
                    earlier(0, t3),
                    earlier(0, t4),
                ]
            ),
        )
    )
    for tag in (coding.TAG_AND, coding.TAG_OR, coding.TAG_IMP):
        f1, f2 = alloc.take_many(2)
        formula_cases.append(
            exists_many(
                [f1, f2],
                and_chain(
                    [
                        code_shape(c, tag, [f1, f2], alloc),
                        earlier(1, f1),
                        earlier(1, f2),
                    ]
                ),
            )
        )
    for tag in (coding.TAG_FORALL, coding.TAG_EXISTS):
        var_code, body, bound_index = alloc.take_many(3)
        formula_cases.append(
            exists_many(
                [var_code, body],
                and_chain(
                    [
                        code_shape(c, tag, [var_code, body], alloc),
                        Exists(
                            bound_index,
                            code_shape(
                                var_code, coding.TAG_NUM_VAR, [bound_index], alloc
                            ),
                        ),
                        earlier(1, body),
                    ]
                ),
            )
        )

    kind = alloc.take()
    local = Exists(
        kind,
        exists_many(
            [c],
            And(
                _entry_cell(a, b, j, kind, c, alloc),
                Or(
                    And(Eq(kind, Zero()), or_chain(term_cases)),
                    And(Eq(kind, One()), or_chain(formula_cases)),
                ),
            ),
        ),
    )
    w = alloc.take()
    last = alloc.take()
    return exists_many(
        [a, b, w],
        And(
            Forall(j, Imp(less_than(j, w, alloc), local)),
            Exists(
                last,
                And(Eq(Add(last, One()), w), entry(last, 1, code)),
            ),
        ),
    )


def _entry_cell(a, b, at, kind, node, alloc: FreshNums) -> Formula:
    cell = alloc.take()
    return Exists(
        cell,
        And(beta_value(a, b, at, cell, alloc), pair_eq(cell, kind, node)),
    )


def _descend_step(current: NumTerm, child: NumTerm, alloc: FreshNums) -> Formula:
    """One step from a formula code to a direct subformula code."""
    cases = []
    for tag in (coding.TAG_AND, coding.TAG_OR, coding.TAG_IMP):
        x, y = alloc.take_many(2)
        cases.append(
            exists_many(
                [x, y],
                And(
                    code_shape(current, tag, [x, y], alloc),
                    Or(Eq(child, x), Eq(child, y)),
                ),
            )
        )
    for tag in (coding.TAG_FORALL, coding.TAG_EXISTS):
        var_code, body = alloc.take_many(2)
        cases.append(
            exists_many(
                [var_code, body],
                And(
                    code_shape(current, tag, [var_code, body], alloc),
                    Eq(child, body),
                ),
            )
        )
    return or_chain(cases)


def subform_graph(code: NumTerm, sub: NumTerm, alloc: FreshNums | None = None, avoid=frozenset()) -> Formula:
    """Object-level subformula relation as a descent path (reflexive)."""
    alloc = _alloc_for(alloc, [code, sub], avoid)
    a, b, w = alloc.take_many(3)
    j = alloc.take()
    current, child = alloc.take_many(2)
    step = exists_many(
        [current, child],
        and_chain(
            [
                beta_value(a, b, j, current, alloc),
                beta_value(a, b, Add(j, One()), child, alloc),
                _descend_step(current, child, alloc),
            ]
        ),
    )
    last = alloc.take()
    return exists_many(
        [a, b, w],
        and_chain(
            [
                beta_value(a, b, Zero(), code, alloc),
                Exists(
                    last,
                    And(Eq(Add(last, One()), w), beta_value(a, b, last, sub, alloc)),
                ),
                Forall(j, Imp(less_than(Add(j, One()), w, alloc), step)),
            ]
        ),
    )


def param_graph(code: NumTerm, index: NumTerm, alloc: FreshNums | None = None, avoid=frozenset()) -> Formula:
    """Object-level parameter relation: the numeric variable occurs free.

    Rendered as a descent path that never crosses a binder of the
    variable, ending at an atom one of whose term slots contains the
    variable code (a second descent path through term codes).
    """
    alloc = _alloc_for(alloc, [code, index], avoid)
    var_code = alloc.take()
    a, b, w = alloc.take_many(3)
    j = alloc.take()

    current, child = alloc.take_many(2)
    step_cases = []
    for tag in (coding.TAG_AND, coding.TAG_OR, coding.TAG_IMP):
        x, y = alloc.take_many(2)
        step_cases.append(
            exists_many(
                [x, y],
                And(
                    code_shape(current, tag, [x, y], alloc),
                    Or(Eq(child, x), Eq(child, y)),
                ),
            )
        )
    for tag in (coding.TAG_FORALL, coding.TAG_EXISTS):
        bound_code, body = alloc.take_many(2)
        step_cases.append(
            exists_many(
                [bound_code, body],
                and_chain(
                    [
                        code_shape(current, tag, [bound_code, body], alloc),
                        Eq(child, body),
                        neg(Eq(bound_code, var_code)),
                    ]
                ),
            )
        )
    step = exists_many(
        [current, child],
        and_chain(
            [
                beta_value(a, b, j, current, alloc),
                beta_value(a, b, Add(j, One()), child, alloc),
                or_chain(step_cases),
            ]
        ),
    )

    def term_path(root: NumTerm) -> Formula:
        a2, b2, w2 = alloc.take_many(3)
        j2 = alloc.take()
        c2, n2 = alloc.take_many(2)
        branch_cases = []
        for tag in (coding.TAG_ADD, coding.TAG_MUL):
            x, y = alloc.take_many(2)
            branch_cases.append(
                exists_many(
                    [x, y],
                    And(
                        code_shape(c2, tag, [x, y], alloc),
                        Or(Eq(n2, x), Eq(n2, y)),
                    ),
                )
            )
        inner_step = exists_many(
            [c2, n2],
            and_chain(
                [
                    beta_value(a2, b2, j2, c2, alloc),
                    beta_value(a2, b2, Add(j2, One()), n2, alloc),
                    or_chain(branch_cases),
                ]
            ),
        )
        last2 = alloc.take()
        return exists_many(
            [a2, b2, w2],
            and_chain(
                [
                    beta_value(a2, b2, Zero(), root, alloc),
                    Exists(
                        last2,
                        And(
                            Eq(Add(last2, One()), w2),
                            beta_value(a2, b2, last2, var_code, alloc),
                        ),
                    ),
                    Forall(j2, Imp(less_than(Add(j2, One()), w2, alloc), inner_step)),
                ]
            ),
        )

    atom = alloc.take()
    t1, t2 = alloc.take_many(2)
    atom_cases = [
        exists_many(
            [t1, t2],
            And(
                code_shape(atom, coding.TAG_EQ, [t1, t2], alloc),
                Or(term_path(t1), term_path(t2)),
            ),
        )
    ]
    q, t3, t4 = alloc.take_many(3)
    atom_cases.append(
        exists_many(
            [q, t3, t4],
            And(
                code_shape(atom, coding.TAG_TRUTH_ATOM, [q, t3, t4], alloc),
                Or(term_path(t3), term_path(t4)),
            ),
        )
    )
    last = alloc.take()
    return Exists(
        var_code,
        And(
            code_shape(var_code, coding.TAG_NUM_VAR, [index], alloc),
            exists_many(
                [a, b, w],
                and_chain(
                    [
                        beta_value(a, b, Zero(), code, alloc),
                        Forall(j, Imp(less_than(Add(j, One()), w, alloc), step)),
                        Exists(
                            last,
                            And(
                                Eq(Add(last, One()), w),
                                Exists(
                                    atom,
                                    And(
                                        beta_value(a, b, last, atom, alloc),
                                        or_chain(atom_cases),
                                    ),
                                ),
                            ),
                        ),
                    ]
                ),
            ),
        ),
    )


def ev_graph(code: NumTerm, env: NumTerm, alloc: FreshNums | None = None, avoid=frozenset()) -> Formula:
    """Object-level environment coverage, with the verbatim code bound.

    Every parameter index up to the code itself is within the length of
    the environment list.
    """
    alloc = _alloc_for(alloc, [code, env], avoid)
    length = alloc.take()
    i = alloc.take()
    return Exists(
        length,
        And(
            lh_graph(env, length, alloc),
            Forall(
                i,
                Imp(
                    less_eq(i, code, alloc),
                    Imp(
                        param_graph(code, i, alloc),
                        less_eq(i, length, alloc),
                    ),
                ),
            ),
        ),
    )


# ---------------------------------------------------------------------------
# Use-site bindings for the defined functions


def eval_to(code: NumTerm, env: NumTerm, alloc: FreshNums, body_fn) -> Formula:
    """Bind the value of the coded term under the environment."""
    value = alloc.take()
    return Exists(value, And(eval_graph(code, env, value, alloc), body_fn(value)))


def subst_to(
    env: NumTerm, position: NumTerm, value: NumTerm, alloc: FreshNums, body_fn
) -> Formula:
    """Bind the updated environment list."""
    updated = alloc.take()
    return Exists(
        updated,
        And(subst_graph(env, position, value, updated, alloc), body_fn(updated)),
    )
