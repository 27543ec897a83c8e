"""Seeded random corpora backing the property and acceptance tests.

Grammar-driven generators for terms and formulas in each language,
plus semantically filtered corpora (normal-form closed terms,
terminating abstraction triples, decided truth sentences) that send
candidates through the real implementation and keep the survivors.
Every generator is deterministic in its seed.
"""

from __future__ import annotations

from random import Random

from formalbench import coding
from formalbench.combinators import lambda_abstract, reduce_term
from formalbench.evaluator import tr_eval
from formalbench.expressions import (
    Add,
    And,
    AppliesTo,
    Bot,
    CLASS,
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
    NumTerm,
    OP,
    One,
    OpConstant,
    Or,
    TruthAtom,
    TypedMember,
    Variable,
    Zero,
    free_vars,
    leveled_set,
    typed_set,
)
from formalbench.external import (
    App,
    DC,
    ExternalTerm,
    KC,
    P1C,
    P2C,
    PC,
    SC,
    comp,
    numeral,
    term_substitute,
)

_CONSTANTS = (KC, SC, DC, PC, P1C, P2C)


# --------------------------------------------------------------------------
# operations-language terms


def _comp_pool() -> tuple[OpConstant, ...]:
    """A few comprehension constants over tiny bodies, built once."""
    bound0 = Variable(0, OP)
    bound1 = Variable(0, typed_set(1))
    param = Variable(1)
    codes = (
        coding.encode_abstraction(bound0, [], Bot()),
        coding.encode_abstraction(bound0, [param], NamesNumber(bound0, param)),
        coding.encode_abstraction(bound1, [], TypedMember(0, Variable(1, OP), bound1)),
    )
    return tuple(comp(code) for code in codes)


COMP_POOL = _comp_pool()

# Codes grow by a constant bit factor per expression level, so only the
# smallest comprehension constant (the one over falsum) goes into
# formula grammars; the bigger pool members serve targeted tests.
_SMALL_COMP = COMP_POOL[0]


def _closed_leaf(rng: Random) -> ExternalTerm:
    roll = rng.randrange(8)
    if roll < 6:
        return _CONSTANTS[roll]
    if roll == 6:
        return numeral(rng.randrange(4))
    return _SMALL_COMP


def _closed_term(rng: Random, depth: int) -> ExternalTerm:
    if depth == 0 or rng.random() < 0.3:
        return _closed_leaf(rng)
    return App(_closed_term(rng, depth - 1), _closed_term(rng, depth - 1))


def closed_terms(seed: int, count: int) -> list[ExternalTerm]:
    """Closed operation terms in normal form (normalized, then kept)."""
    rng = Random(seed)
    out: list[ExternalTerm] = []
    while len(out) < count:
        result = reduce_term(_closed_term(rng, rng.randint(1, 4)))
        if result.normal:
            out.append(result.term)
    return out


def _open_term(rng: Random, depth: int, variables: list[Variable]) -> ExternalTerm:
    if depth == 0 or rng.random() < 0.3:
        if variables and rng.random() < 0.5:
            return rng.choice(variables)
        return _closed_leaf(rng)
    return App(
        _open_term(rng, depth - 1, variables), _open_term(rng, depth - 1, variables)
    )


def lambda_triples(
    seed: int, count: int, budget: int = 10_000
) -> list[tuple[ExternalTerm, Variable, ExternalTerm]]:
    """Triples (body, variable, closed argument), both reduction routes
    terminating within the budget."""
    rng = Random(seed)
    var = Variable(9, OP)
    spare = Variable(8, OP)
    out: list[tuple[ExternalTerm, Variable, ExternalTerm]] = []
    while len(out) < count:
        body = _open_term(rng, rng.randint(1, 4), [var, var, spare])
        argument = _closed_term(rng, rng.randint(0, 3))
        applied = App(lambda_abstract(var, body), argument)
        substituted = term_substitute(body, var, argument)
        if reduce_term(applied, budget).normal and reduce_term(substituted, budget).normal:
            out.append((body, var, argument))
    return out


def realizer_terms(seed: int, count: int) -> list[tuple[ExternalTerm, int]]:
    """Pair-shaped realizers with a numeral selector, some with open
    parameters; returns (term, selector value)."""
    rng = Random(seed)
    params = [Variable(3, OP), Variable(4, OP)]
    out: list[tuple[ExternalTerm, int]] = []
    for position in range(count):
        selector = 0 if position % 2 == 0 else rng.randint(1, 6)
        variables = params if position % 3 == 0 else []
        payload = _open_term(rng, rng.randint(0, 3), variables)
        out.append((App(App(PC, numeral(selector)), payload), selector))
    return out


# --------------------------------------------------------------------------
# numeric terms and arithmetic formulas


def _num_term(rng: Random, depth: int, indices: list[int]) -> NumTerm:
    if depth == 0 or rng.random() < 0.4:
        leaves: list[NumTerm] = [Zero(), One()]
        if indices:
            leaves.append(Variable(rng.choice(indices)))
        return rng.choice(leaves)
    left = _num_term(rng, depth - 1, indices)
    right = _num_term(rng, depth - 1, indices)
    return Add(left, right) if rng.random() < 0.5 else Mul(left, right)


def numeric_term_envs(seed: int, count: int) -> list[tuple[NumTerm, list[int]]]:
    """Numeric terms over parameters 1..4 with a covering environment."""
    rng = Random(seed)
    out = []
    for _ in range(count):
        term = _num_term(rng, rng.randint(1, 4), [1, 2, 3, 4])
        out.append((term, [rng.randrange(6) for _ in range(4)]))
    return out


def _fresh_index(indices: list[int]) -> int:
    return max(indices, default=4) + 1


def _connective(rng: Random, left: Formula, right: Formula) -> Formula:
    return rng.choice((And, Or, Imp))(left, right)


def _arith_atom(rng: Random, indices: list[int], depth: int = 1) -> Formula:
    if rng.random() < 0.1:
        return Bot()
    return Eq(_num_term(rng, depth, indices), _num_term(rng, depth, indices))


def _arith_formula(rng: Random, depth: int, indices: list[int]) -> Formula:
    if depth == 0:
        return _arith_atom(rng, indices)
    roll = rng.random()
    if roll < 0.25:
        index = _fresh_index(indices)
        quantifier = Forall if rng.random() < 0.5 else Exists
        return quantifier(
            Variable(index), _arith_formula(rng, depth - 1, indices + [index])
        )
    if roll < 0.35:
        return _arith_atom(rng, indices)
    left = _arith_formula(rng, depth - 1, indices)
    right = _arith_formula(rng, depth - 1, indices)
    return _connective(rng, left, right)


# --------------------------------------------------------------------------
# leveled-arithmetic formulas


def _leveled_atom(rng: Random, indices: list[int], sets: list[Variable]) -> Formula:
    if sets and rng.random() < 0.55:
        container = rng.choice(sets)
        return LeveledMember(
            container.sort.level, _num_term(rng, 1, indices), container
        )
    return _arith_atom(rng, indices)


def simple_formulas(seed: int, count: int, stage: int) -> list[Formula]:
    """Stage-``stage`` simple formulas: free set parameters up to the
    stage, numeric quantifiers only."""
    rng = Random(seed)
    sets = [
        Variable(j, leveled_set(level))
        for level in range(1, stage + 1)
        for j in (0, 1)
    ]

    def build(depth: int, indices: list[int]) -> Formula:
        if depth == 0:
            return _leveled_atom(rng, indices, sets)
        roll = rng.random()
        if roll < 0.2:
            index = _fresh_index(indices)
            quantifier = Forall if rng.random() < 0.5 else Exists
            return quantifier(Variable(index), build(depth - 1, indices + [index]))
        if roll < 0.35:
            return _leveled_atom(rng, indices, sets)
        return _connective(rng, build(depth - 1, indices), build(depth - 1, indices))

    return [build(rng.randint(1, 3), [1, 2]) for _ in range(count)]


def leveled_fragment_formulas(seed: int, count: int, stage: int) -> list[Formula]:
    """Leveled-arithmetic formulas whose sorts all stay at or below
    ``stage``, set quantifiers included."""
    rng = Random(seed)

    def build(depth: int, indices: list[int], sets: list[Variable]) -> Formula:
        if depth == 0:
            return _leveled_atom(rng, indices, sets)
        roll = rng.random()
        if roll < 0.15:
            index = _fresh_index(indices)
            quantifier = Forall if rng.random() < 0.5 else Exists
            return quantifier(
                Variable(index), build(depth - 1, indices + [index], sets)
            )
        if roll < 0.3 and stage >= 1:
            level = rng.randint(1, stage)
            bound = Variable(2 + len(sets), leveled_set(level))
            quantifier = Forall if rng.random() < 0.5 else Exists
            return quantifier(bound, build(depth - 1, indices, sets + [bound]))
        if roll < 0.45:
            return _leveled_atom(rng, indices, sets)
        return _connective(
            rng, build(depth - 1, indices, sets), build(depth - 1, indices, sets)
        )

    sets = [Variable(j, leveled_set(level)) for level in range(1, stage + 1) for j in (0, 1)]
    return [build(rng.randint(1, 3), [1, 2], sets) for _ in range(count)]


def truth_fragment_formulas(seed: int, count: int, stage: int) -> list[Formula]:
    """Truth-language formulas with atoms of stage at most ``stage``."""
    rng = Random(seed)

    def atom(indices: list[int]) -> Formula:
        if stage >= 1 and rng.random() < 0.4:
            return TruthAtom(
                rng.randint(1, stage),
                _num_term(rng, 1, indices),
                _num_term(rng, 1, indices),
            )
        return _arith_atom(rng, indices)

    def build(depth: int, indices: list[int]) -> Formula:
        if depth == 0:
            return atom(indices)
        roll = rng.random()
        if roll < 0.2:
            index = _fresh_index(indices)
            quantifier = Forall if rng.random() < 0.5 else Exists
            return quantifier(Variable(index), build(depth - 1, indices + [index]))
        if roll < 0.35:
            return atom(indices)
        return _connective(rng, build(depth - 1, indices), build(depth - 1, indices))

    return [build(rng.randint(1, 3), [1, 2]) for _ in range(count)]


# --------------------------------------------------------------------------
# operations-language formulas


def operations_formulas(seed: int, count: int) -> list[Formula]:
    """Operations-language formulas over numeric, operation, and typed
    set variables, naming and application atoms included."""
    rng = Random(seed)
    ops = [Variable(j, OP) for j in (0, 1, 2)]
    sets = {level: [Variable(j, typed_set(level)) for j in (0, 1)] for level in (1, 2)}

    def op_leaf() -> ExternalTerm:
        if rng.random() < 0.6:
            return rng.choice(ops)
        return rng.choice(_CONSTANTS + (_SMALL_COMP,))

    def atom(indices: list[int]) -> Formula:
        roll = rng.randrange(6)
        if roll == 0:
            return Eq(_num_term(rng, 1, indices), _num_term(rng, 1, indices))
        if roll == 1:
            number = Zero() if rng.random() < 0.3 else Variable(rng.choice(indices))
            return NamesNumber(op_leaf(), number)
        if roll == 2:
            level = rng.randrange(3)
            target = rng.choice(ops) if level == 0 else rng.choice(sets[level])
            return NamesTyped(level, op_leaf(), target)
        if roll == 3:
            return AppliesTo(op_leaf(), op_leaf(), rng.choice(ops))
        if roll == 4:
            level = rng.randrange(2)
            element = rng.choice(ops) if level == 0 else rng.choice(sets[level])
            return TypedMember(level, element, rng.choice(sets[level + 1]))
        return Bot()

    def build(depth: int, indices: list[int]) -> Formula:
        if depth == 0:
            return atom(indices)
        roll = rng.random()
        if roll < 0.1:
            index = _fresh_index(indices)
            quantifier = Forall if rng.random() < 0.5 else Exists
            return quantifier(Variable(index), build(depth - 1, indices + [index]))
        if roll < 0.2:
            sort = rng.choice((OP, typed_set(1), typed_set(2)))
            bound = Variable(rng.randint(3, 5), sort)
            quantifier = Forall if rng.random() < 0.5 else Exists
            return quantifier(bound, build(depth - 1, indices))
        if roll < 0.4:
            return atom(indices)
        return _connective(rng, build(depth - 1, indices), build(depth - 1, indices))

    return [build(rng.randint(1, 3), [1, 2]) for _ in range(count)]


def class_formulas(seed: int, count: int) -> list[Formula]:
    """Second-order arithmetic formulas with class parameters and
    class quantifiers."""
    rng = Random(seed)
    classes = [Variable(j, CLASS) for j in (0, 1)]

    def atom(indices: list[int]) -> Formula:
        if rng.random() < 0.5:
            return ClassMember(_num_term(rng, 1, indices), rng.choice(classes))
        return _arith_atom(rng, indices)

    def build(depth: int, indices: list[int]) -> Formula:
        if depth == 0:
            return atom(indices)
        roll = rng.random()
        if roll < 0.15:
            index = _fresh_index(indices)
            quantifier = Forall if rng.random() < 0.5 else Exists
            return quantifier(Variable(index), build(depth - 1, indices + [index]))
        if roll < 0.25:
            bound = Variable(rng.randint(2, 4), CLASS)
            quantifier = Forall if rng.random() < 0.5 else Exists
            return quantifier(bound, build(depth - 1, indices))
        if roll < 0.4:
            return atom(indices)
        return _connective(rng, build(depth - 1, indices), build(depth - 1, indices))

    return [build(rng.randint(1, 3), [1, 2]) for _ in range(count)]


def language_corpus(language: str, seed: int, count: int) -> list[Formula]:
    """A formula corpus for one language, by short name."""
    builders = {
        "operations": lambda: operations_formulas(seed, count),
        "leveled": lambda: leveled_fragment_formulas(seed, count, 3),
        "second-order": lambda: class_formulas(seed, count),
        "truth": lambda: truth_fragment_formulas(seed, count, 3),
    }
    return builders[language]()


# --------------------------------------------------------------------------
# decided truth sentences


def decided_truth_pairs(
    seed: int, count: int, stage: int, bound: int = 50, quantifiers: bool = True
) -> tuple[list[Formula], list[int]]:
    """Formulas of truth stage ``stage`` decided at the bound, sharing
    one environment.

    The environment starts with four small numbers for parameters 1–4;
    each stage q in 1..``stage`` appends two (code, packed environment)
    pairs of decided stage q−1 sentences, which the truth atoms of the
    generated formulas point at by parameter position.  The sentences
    sitting in the environment are kept quantifier-free so that the
    bounded searches of the outer sentence stay cheap.
    """
    rng = Random(seed)
    env = [0, 1, 2, 3]
    atom_pool: list[tuple[int, int, int]] = []
    for lower in range(1, stage + 1):
        inner, inner_env = decided_truth_pairs(
            seed + lower, 2, lower - 1, bound, quantifiers=False
        )
        for sentence in inner:
            env.extend([coding.encode(sentence), coding.seq_code(inner_env)])
            atom_pool.append((lower, len(env) - 1, len(env)))

    def atom(indices: list[int]) -> Formula:
        if atom_pool and rng.random() < 0.35:
            lower, code_at, env_at = rng.choice(atom_pool)
            return TruthAtom(lower, Variable(code_at), Variable(env_at))
        return _arith_atom(rng, indices)

    def build(depth: int, indices: list[int], binders: int) -> Formula:
        if depth == 0:
            return atom(indices)
        roll = rng.random()
        if quantifiers and binders < 2 and roll < 0.12:
            index = _fresh_index(indices + [len(env)])
            quantifier = Forall if rng.random() < 0.5 else Exists
            return quantifier(
                Variable(index), build(depth - 1, indices + [index], binders + 1)
            )
        if roll < 0.3:
            return atom(indices)
        return _connective(
            rng,
            build(depth - 1, indices, binders),
            build(depth - 1, indices, binders),
        )

    # Decidedness is monotone in the bound (a witness or counterexample
    # found under a small bound persists under a larger one), so a
    # cheap screening bound keeps generation fast while every survivor
    # stays decided at the caller's bound.
    screen = min(bound, 6)
    out: list[Formula] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 80 * count:
            raise RuntimeError("decided-sentence generation stalled")
        candidate = build(rng.randint(1, 2) if quantifiers else 2, [1, 2, 3, 4], 0)
        verdict = tr_eval(stage + 1, coding.encode(candidate), env, screen)
        if verdict.decided:
            out.append(candidate)
    return out, env


def garbage_codes(seed: int, count: int, stage: int) -> list[int]:
    """Numbers that do not code a formula of the given truth stage."""
    rng = Random(seed)
    out: list[int] = []
    while len(out) < count:
        digits = rng.randint(1, 40)
        candidate = rng.randrange(10**digits)
        if not coding.form_p(stage, candidate):
            out.append(candidate)
    return out
