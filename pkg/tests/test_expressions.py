"""Sort discipline, substitution, and structural helpers."""

import pytest

from formalbench.expressions import (
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
    Imp,
    Language,
    LeveledMember,
    Mul,
    One,
    Or,
    SortError,
    TruthAtom,
    TruthSetApp,
    Variable,
    Zero,
    and_chain,
    atoms,
    class_var,
    complexity,
    free_vars,
    fresh_variable,
    languages,
    leveled_set,
    neg,
    num_var,
    number_term,
    number_value,
    op_var,
    set_var,
    sort_of,
    subformulas,
    substitute,
    typed_set,
    typed_set_var,
    universal_closure,
)


def test_sort_tags_compare_by_kind_and_level():
    assert typed_set(2) == typed_set(2)
    assert leveled_set(3) == leveled_set(3)
    assert typed_set(1) != leveled_set(1)
    assert typed_set(1) != typed_set(2)


def test_sort_tags_require_positive_levels():
    with pytest.raises(ValueError):
        typed_set(0)
    with pytest.raises(ValueError):
        leveled_set(-1)


def test_variable_identity_ignores_display_name():
    assert num_var(0, "n") == num_var(0)
    assert num_var(0) != num_var(1)
    assert num_var(0) != op_var(0)
    assert set_var(1, 0) != set_var(2, 0)


def test_sort_of_terms():
    assert sort_of(Zero()) is NUM
    assert sort_of(Add(One(), num_var(0))) is NUM
    assert sort_of(op_var(2)) is OP
    assert sort_of(class_var(0)) is CLASS
    assert sort_of(TruthSetApp(2, num_var(0))) == leveled_set(2)


def test_num_positions_reject_other_sorts():
    with pytest.raises(SortError):
        Add(Zero(), op_var(0))
    with pytest.raises(SortError):
        Mul(typed_set_var(1, 0), One())
    with pytest.raises(SortError):
        Eq(Zero(), op_var(0))


def test_atom_constructors_enforce_sorts():
    with pytest.raises(SortError):
        LeveledMember(1, num_var(0), Zero())
    with pytest.raises(SortError):
        ClassMember(num_var(0), Zero())
    with pytest.raises(SortError):
        AppliesTo(num_var(0), op_var(1), op_var(2))
    with pytest.raises(SortError):
        TruthAtom(0, Zero(), Zero())


def test_connectives_reject_non_formulas():
    with pytest.raises(SortError):
        And(Bot(), Zero())
    with pytest.raises(SortError):
        Forall(num_var(0), One())


def test_free_vars_respects_binding():
    n, m = num_var(0), num_var(1)
    phi = Forall(n, Eq(n, m))
    assert free_vars(phi) == frozenset({m})
    assert free_vars(Exists(m, phi)) == frozenset()


def test_free_vars_of_atoms():
    f, a, r = op_var(0), op_var(1), op_var(2)
    assert free_vars(AppliesTo(f, a, r)) == frozenset({f, a, r})
    z = set_var(2, 0)
    assert free_vars(LeveledMember(2, num_var(3), z)) == frozenset({z, num_var(3)})


def test_substitute_replaces_free_occurrences_only():
    n, m = num_var(0), num_var(1)
    phi = And(Eq(n, Zero()), Forall(n, Eq(n, n)))
    out = substitute(phi, n, m)
    assert out == And(Eq(m, Zero()), Forall(n, Eq(n, n)))


def test_substitute_avoids_capture():
    n, m = num_var(0), num_var(1)
    phi = Forall(m, Eq(n, m))
    out = substitute(phi, n, m)
    # The binder must be renamed so the substituted m stays free.
    assert isinstance(out, Forall)
    assert out.var != m
    assert m in free_vars(out)


def test_substitute_checks_sorts():
    n = num_var(0)
    with pytest.raises(SortError):
        substitute(Eq(n, n), n, op_var(0))


def test_fresh_variable_avoids_collisions():
    avoid = frozenset({num_var(0), num_var(1), num_var(5)})
    fresh = fresh_variable(NUM, avoid)
    assert fresh not in avoid
    assert fresh.sort is NUM


def test_number_term_round_trip():
    for value in (0, 1, 2, 7, 40):
        assert number_value(number_term(value)) == value
    assert number_value(Add(num_var(0), One())) is None


def test_complexity_and_subformulas():
    phi = Imp(Bot(), And(Bot(), Bot()))
    assert complexity(Bot()) == 0
    assert complexity(phi) == complexity(And(Bot(), Bot())) + 1
    subs = list(subformulas(phi))
    assert phi in subs and Bot() in subs


def test_atoms_lists_atomic_leaves():
    phi = Or(Eq(Zero(), Zero()), neg(Eq(One(), One())))
    found = list(atoms(phi))
    assert Eq(Zero(), Zero()) in found
    assert Eq(One(), One()) in found
    assert Bot() not in found  # falsum is a connective leaf, not an atom


def test_and_chain_associates_right_and_rejects_empty():
    a, b, c = Eq(Zero(), Zero()), Bot(), Eq(One(), One())
    assert and_chain([a, b, c]) == And(a, And(b, c))
    assert and_chain([b]) == b
    with pytest.raises(ValueError):
        and_chain([])


def test_universal_closure_closes_everything():
    n, m = num_var(0), num_var(1)
    closed = universal_closure(Eq(n, m))
    assert free_vars(closed) == frozenset()
    assert isinstance(closed, Forall)


def test_languages_of_mixed_nodes():
    assert Language.OPERATIONS in languages(AppliesTo(op_var(0), op_var(1), op_var(2)))
    assert Language.LEVELED in languages(LeveledMember(1, Zero(), set_var(1, 0)))
    assert Language.SECOND_ORDER in languages(ClassMember(Zero(), class_var(0)))
    assert Language.TRUTH in languages(TruthAtom(1, Zero(), Zero()))
    # Pure arithmetic sits in every language.
    assert languages(Eq(Zero(), One())) == frozenset(Language)
