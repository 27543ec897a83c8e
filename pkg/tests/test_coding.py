"""Numeric codes: pairing, sequences, and the coded syntax predicates."""

import pytest

from formalbench.coding import (
    BOT_CODE,
    DecodeError,
    decode_external_term,
    decode_formula,
    decode_num_term,
    decode_variable,
    encode,
    eval_term_code,
    ev_p,
    form_p,
    max_param,
    pair,
    param_p,
    seq_code,
    seq_decode,
    seq_element,
    seq_length,
    subform_p,
    subst_eval,
    unpair,
)
from formalbench.expressions import (
    Add,
    And,
    Bot,
    Eq,
    Forall,
    Language,
    Mul,
    One,
    OP,
    TruthAtom,
    Variable,
    Zero,
    free_vars,
    num_var,
    number_term,
    subformulas,
)

import corpus


def test_pair_is_a_bijection_on_a_grid():
    seen = {}
    for a in range(60):
        for b in range(60):
            code = pair(a, b)
            assert code not in seen, (a, b, seen[code])
            seen[code] = (a, b)
            assert unpair(code) == (a, b)


def test_unpair_covers_an_initial_segment():
    # Every natural number decodes to exactly one pair.
    for code in range(500):
        a, b = unpair(code)
        assert pair(a, b) == code


def test_seq_codes_round_trip():
    for items in ([], [0], [5, 0, 5], list(range(8)), [3] * 5):
        code = seq_code(items)
        assert seq_decode(code) == items
        assert seq_length(code) == len(items)
        for i, item in enumerate(items):
            assert seq_element(code, i + 1) == item


def test_seq_element_is_one_based_and_padded():
    code = seq_code([9, 8])
    assert seq_element(code, 1) == 9
    assert seq_element(code, 5) == 0
    with pytest.raises(ValueError):
        seq_element(code, 0)


def test_empty_sequence_is_zero():
    assert seq_code([]) == 0
    assert BOT_CODE == pair(0, 0)


def test_formula_round_trip_every_language():
    for name in ("operations", "leveled", "second-order", "truth"):
        language = Language(name)
        for phi in corpus.language_corpus(name, seed=23, count=40):
            code = encode(phi)
            assert decode_formula(code, language) == phi


def test_term_round_trip():
    for term in corpus.closed_terms(seed=19, count=50):
        assert decode_external_term(encode(term)) == term


def test_num_term_and_variable_round_trip():
    for term in (Zero(), One(), Add(num_var(1), One()), Mul(number_term(3), num_var(2))):
        assert decode_num_term(encode(term)) == term
    for var in (num_var(4), Variable(0, OP)):
        assert decode_variable(encode(var)) == var


def test_distinct_objects_get_distinct_codes():
    phis = corpus.language_corpus("operations", seed=5, count=60)
    codes = {encode(phi) for phi in phis}
    assert len(codes) == len(set(map(str, phis)))


def test_decode_rejects_garbage():
    rejected = 0
    for code in corpus.garbage_codes(seed=3, count=30, stage=1):
        assert not form_p(1, code)
        try:
            decode_formula(code, Language.TRUTH)
        except DecodeError:
            rejected += 1
    assert rejected > 0


def test_form_p_tracks_truth_stages():
    phi = Eq(num_var(1), Zero())
    assert form_p(1, encode(phi))
    assert form_p(0, encode(phi))
    high = TruthAtom(2, Zero(), Zero())
    assert not form_p(1, encode(high))
    assert form_p(2, encode(high))
    assert not form_p(-1, encode(phi))


def test_subform_p_matches_ast_subformulas():
    for phi in corpus.language_corpus("truth", seed=31, count=25):
        code = encode(phi)
        for sub in subformulas(phi):
            assert subform_p(code, encode(sub))
        # A formula strictly larger than phi is never a subformula.
        assert not subform_p(code, encode(And(phi, Bot())))


def test_subform_p_rejects_garbage_roots():
    assert not subform_p(3, encode(Bot())) or form_p(0, 3)


def test_param_p_matches_free_numeric_variables():
    n, m = num_var(1), num_var(5)
    phi = Forall(m, And(Eq(n, m), Eq(m, m)))
    code = encode(phi)
    assert param_p(code, 1)
    assert not param_p(code, 5)  # bound, not a parameter
    assert not param_p(code, 3)
    assert max_param(code) == 1


def test_max_param_is_the_largest_free_index():
    assert max_param(encode(Eq(num_var(3), Zero()))) == 3
    assert max_param(encode(Eq(Zero(), Zero()))) == 0


def test_ev_p_is_environment_coverage():
    phi = Eq(num_var(2), Zero())  # needs the first two positions
    code = encode(phi)
    assert not ev_p(code, seq_code([0]))
    assert ev_p(code, seq_code([1, 1]))
    assert ev_p(code, seq_code([1, 1, 0]))
    assert ev_p(encode(Bot()), seq_code([]))
    assert not ev_p(12345678901, seq_code([])) or form_p(9, 12345678901)


def test_eval_term_code_on_arithmetic():
    term = Add(Mul(num_var(1), number_term(3)), One())
    code = encode(term)
    assert eval_term_code(code, seq_code([4])) == 13
    assert eval_term_code(code, seq_code([])) == 1  # missing slots read 0


def test_subst_eval_updates_one_slot():
    env = seq_code([7, 7, 7])
    assert seq_decode(subst_eval(env, 2, 5)) == [7, 5, 7]
    assert seq_decode(subst_eval(seq_code([]), 3, 9)) == [0, 0, 9]
    with pytest.raises(ValueError):
        subst_eval(env, 0, 1)


def test_codes_are_stable_across_calls():
    phi = corpus.language_corpus("leveled", seed=40, count=1)[0]
    assert encode(phi) == encode(phi)
    assert free_vars(phi) == free_vars(decode_formula(encode(phi), Language.LEVELED))
