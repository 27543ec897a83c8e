"""Reader/printer round trips and canonical text forms."""

import pytest

from formalbench.expressions import Language
from formalbench.external import KC, PC, App, numeral
from formalbench.sexpr import (
    ParseError,
    parse_formula,
    parse_term,
    print_formula,
    print_term,
    read_all,
    read_one,
)

import corpus


def test_read_one_nested_lists_and_atoms():
    node = read_one("(and (eq (n 0) (n 1)) (bot))")
    assert isinstance(node.value, tuple)
    assert node.value[0].value == "and"


def test_read_one_rejects_trailing_input():
    with pytest.raises(ParseError):
        read_one("(bot) (bot)")
    assert len(read_all("(bot) (bot)")) == 2


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as info:
        read_one("(and (bot)")
    assert info.value.line == 1
    assert str(info.value).startswith("1:")  # formatted as line:column: message


def test_unknown_head_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_formula("(nand (bot) (bot))", Language.OPERATIONS)


def test_language_gate_on_foreign_atoms():
    with pytest.raises(ParseError):
        parse_formula("(in 1 (set 1 0) (n 0))", Language.OPERATIONS)
    with pytest.raises(ParseError):
        parse_formula("(tr 1 (n 0) (n 0))", Language.LEVELED)
    # The same text is fine in its home language.
    parse_formula("(in 1 (set 1 0) (n 0))", Language.LEVELED)
    parse_formula("(tr 1 (n 0) (n 0))", Language.TRUTH)


def test_formula_round_trip_every_language():
    for name in ("operations", "leveled", "second-order", "truth"):
        language = Language(name)
        for phi in corpus.language_corpus(name, seed=11, count=40):
            text = print_formula(phi)
            again = parse_formula(text, language)
            assert again == phi, text
            assert print_formula(again) == text


def test_term_round_trip():
    for term in corpus.closed_terms(seed=7, count=60):
        text = print_term(term)
        assert parse_term(text) == term
        assert print_term(parse_term(text)) == text


def test_numeral_shorthand_expands_on_parse():
    assert parse_term("(n 2)") == numeral(2)
    # Printing does not re-sugar: numerals come back as their raw spine.
    assert print_term(numeral(2)) == print_term(parse_term("(n 2)"))


def test_named_term_variables_keep_first_occurrence_order():
    term = parse_term("(p x (k y x))")
    assert isinstance(term, App)
    text = print_term(term)
    assert text == "(p x (k y x))"


def test_term_constants_print_bare():
    assert print_term(KC) == "k"
    assert print_term(App(PC, KC)) == "(p k)"


def test_canonical_formula_texts():
    samples = [
        ("(bot)", Language.OPERATIONS),
        ("(imp (bot) (bot))", Language.OPERATIONS),
        ("(forall (v 0) (eq (v 0) (v 0)))", Language.OPERATIONS),
        ("(exists (op 1) (ap (op 1) (op 1) (op 1)))", Language.OPERATIONS),
        ("(in 2 (set 2 0) (plus (v 0) (n 1)))", Language.LEVELED),
        ("(in (set 0) (times (v 1) (v 1)))", Language.SECOND_ORDER),
        ("(tr 1 (v 0) (n 0))", Language.TRUTH),
        ("(mem 1 (op 0) (op 1))", Language.OPERATIONS),
        ("(eqow (op 0) (v 0))", Language.OPERATIONS),
        ("(eqok 1 (op 0) (bt 1 0))", Language.OPERATIONS),
    ]
    for text, language in samples:
        assert print_formula(parse_formula(text, language)) == text


def test_whitespace_and_newlines_are_insignificant():
    ragged = "(and\n  (bot)\n  (or (bot)\t(bot)))"
    tidy = "(and (bot) (or (bot) (bot)))"
    lang = Language.OPERATIONS
    assert parse_formula(ragged, lang) == parse_formula(tidy, lang)


def test_arity_errors_are_rejected():
    for text in ("(and (bot))", "(eq (n 0))", "(forall (v 0))", "(in 1 (set 1 0))"):
        with pytest.raises(ParseError):
            parse_formula(text, Language.LEVELED)


def test_variable_spelling_is_strict():
    with pytest.raises(ParseError):
        parse_formula("(eq (v -1) (v 0))", Language.OPERATIONS)
    with pytest.raises(ParseError):
        parse_formula("(forall (w 0) (bot))", Language.OPERATIONS)
