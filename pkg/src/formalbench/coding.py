"""Numbering of expressions, external terms, and proofs.

The scheme is one pairing function all the way down:

* ``pair(m, n) = (m + n)(m + n + 1)/2 + n`` — the classic diagonal
  bijection between pairs of naturals and naturals;
* ``seq_code([]) = 0`` and ``seq_code([a, *rest]) = pair(a, seq_code(rest)) + 1``;
* every node codes to ``pair(tag, seq_code(children))`` over a fixed
  tag table, with integer attributes (levels, indices) listed among the
  children as raw naturals.

Since ``pair(m, n) >= n`` and sequence codes strictly exceed their
members, a proper subexpression always has a strictly smaller code;
recursions over codes (the comprehension-constant rewriting, the truth
evaluator) are well-founded by strong induction on the code.

Decoding validates against a target language; the executable predicates
(``form_p``, ``subform_p``, ``param_p``, ``ev_p``) return ``False``
rather than raising on garbage codes, which is what the truth
machinery's gates need.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

from .expressions import (
    Add,
    And,
    AppliesTo,
    AuxTruthSet,
    Bot,
    CLASS,
    ClassMember,
    Eq,
    Exists,
    Forall,
    Formula,
    Imp,
    Language,
    LeveledMember,
    Mul,
    NamesNumber,
    NamesTyped,
    NumTerm,
    OP,
    OpConstant,
    Or,
    TruthAtom,
    TruthSetApp,
    TypedMember,
    Variable,
    Zero,
    One,
    free_vars,
    languages,
    leveled_set,
    typed_set,
)
from .external import App, ExternalTerm


def pair(m: int, n: int) -> int:
    """Diagonal pairing bijection."""
    if m < 0 or n < 0:
        raise ValueError("pairing is defined on naturals")
    return (m + n) * (m + n + 1) // 2 + n


def unpair(code: int) -> tuple[int, int]:
    """Inverse of :func:`pair`."""
    if code < 0:
        raise ValueError("codes are naturals")
    w = (isqrt(8 * code + 1) - 1) // 2
    n = code - w * (w + 1) // 2
    return w - n, n


def seq_code(items: list[int]) -> int:
    """Code of a finite sequence of naturals."""
    code = 0
    for item in reversed(items):
        code = pair(item, code) + 1
    return code


def seq_decode(code: int) -> list[int]:
    """The sequence a code denotes."""
    items: list[int] = []
    while code:
        head, code = unpair(code - 1)
        items.append(head)
    return items


def seq_length(code: int) -> int:
    """Length of the coded sequence."""
    length = 0
    while code:
        _, code = unpair(code - 1)
        length += 1
    return length


def seq_element(code: int, position: int) -> int:
    """1-based element of the coded sequence; 0 beyond its end."""
    if position < 1:
        raise ValueError("sequence positions are 1-based")
    for _ in range(position - 1):
        if not code:
            return 0
        _, code = unpair(code - 1)
    if not code:
        return 0
    head, _ = unpair(code - 1)
    return head


# ---------------------------------------------------------------------------
# Tag table (stable; decoding depends on every value)

TAG_BOT = 0
TAG_AND = 1
TAG_OR = 2
TAG_IMP = 3
TAG_FORALL = 4
TAG_EXISTS = 5
TAG_EQ = 6
TAG_ZERO = 7
TAG_ONE = 8
TAG_ADD = 9
TAG_MUL = 10
TAG_NUM_VAR = 11
TAG_OP_VAR = 12
TAG_TYPED_VAR = 13
TAG_LEVELED_VAR = 14
TAG_CLASS_VAR = 15
TAG_CONSTANT = 16
TAG_COMP = 17
TAG_LEVELED_MEMBER = 18
TAG_CLASS_MEMBER = 19
TAG_TRUTH_ATOM = 20
TAG_APPLIES = 21
TAG_NAMES_NUMBER = 22
TAG_NAMES_TYPED = 23
TAG_TYPED_MEMBER = 24
TAG_TRUTH_SET = 25
TAG_AUX_SET = 26
TAG_EXT_APP = 27
TAG_ABSTRACTION = 28
TAG_JUSTIFICATION = 29
TAG_PROOF_LINE = 30
TAG_PROOF = 31

_PLAIN_ORDER = ("kc", "sc", "dc", "pc", "p1c", "p2c")

BOT_CODE = pair(TAG_BOT, 0)


def _node(tag: int, children: list[int]) -> int:
    return pair(tag, seq_code(children))


def encode(obj) -> int:
    """Code of a formula, term, set expression, or external term."""
    match obj:
        case Bot():
            return _node(TAG_BOT, [])
        case And(a, b):
            return _node(TAG_AND, [encode(a), encode(b)])
        case Or(a, b):
            return _node(TAG_OR, [encode(a), encode(b)])
        case Imp(a, b):
            return _node(TAG_IMP, [encode(a), encode(b)])
        case Forall(v, body):
            return _node(TAG_FORALL, [encode(v), encode(body)])
        case Exists(v, body):
            return _node(TAG_EXISTS, [encode(v), encode(body)])
        case Eq(a, b):
            return _node(TAG_EQ, [encode(a), encode(b)])
        case Zero():
            return _node(TAG_ZERO, [])
        case One():
            return _node(TAG_ONE, [])
        case Add(a, b):
            return _node(TAG_ADD, [encode(a), encode(b)])
        case Mul(a, b):
            return _node(TAG_MUL, [encode(a), encode(b)])
        case Variable(index, sort):
            match sort.kind:
                case "num":
                    return _node(TAG_NUM_VAR, [index])
                case "op":
                    return _node(TAG_OP_VAR, [index])
                case "typed-set":
                    return _node(TAG_TYPED_VAR, [sort.level, index])
                case "leveled-set":
                    return _node(TAG_LEVELED_VAR, [sort.level, index])
                case "class":
                    return _node(TAG_CLASS_VAR, [index])
        case OpConstant("comp", code):
            return _node(TAG_COMP, [code])
        case OpConstant(name, None):
            return _node(TAG_CONSTANT, [_PLAIN_ORDER.index(name)])
        case LeveledMember(level, element, container):
            return _node(TAG_LEVELED_MEMBER, [level, encode(element), encode(container)])
        case ClassMember(element, container):
            return _node(TAG_CLASS_MEMBER, [encode(element), encode(container)])
        case TruthAtom(level, code, env):
            return _node(TAG_TRUTH_ATOM, [level, encode(code), encode(env)])
        case AppliesTo(fn, arg, result):
            return _node(TAG_APPLIES, [encode(fn), encode(arg), encode(result)])
        case NamesNumber(operation, number):
            return _node(TAG_NAMES_NUMBER, [encode(operation), encode(number)])
        case NamesTyped(level, operation, target):
            return _node(TAG_NAMES_TYPED, [level, encode(operation), encode(target)])
        case TypedMember(level, element, container):
            return _node(TAG_TYPED_MEMBER, [level, encode(element), encode(container)])
        case TruthSetApp(level, code):
            return _node(TAG_TRUTH_SET, [level, encode(code)])
        case AuxTruthSet(level):
            return _node(TAG_AUX_SET, [level])
        case App(fn, arg):
            return _node(TAG_EXT_APP, [encode(fn), encode(arg)])
    raise ValueError(f"cannot encode {obj!r}")


def encode_abstraction(bound: Variable, params: list[Variable], body: Formula) -> int:
    """Code of a comprehension abstraction (bound variable, parameters, body)."""
    return _node(
        TAG_ABSTRACTION,
        [encode(bound), seq_code([encode(p) for p in params]), encode(body)],
    )


def encode_justification(name: str, args: list[int]) -> int:
    """Code of a proof-line justification: rule name plus integer arguments."""
    return _node(
        TAG_JUSTIFICATION,
        [seq_code([ord(ch) for ch in name]), seq_code(args)],
    )


def encode_proof(lines: list[tuple[Formula, int]]) -> int:
    """Code of a proof: a sequence of (formula, justification-code) lines."""
    line_codes = [
        _node(TAG_PROOF_LINE, [encode(formula), justification])
        for formula, justification in lines
    ]
    return _node(TAG_PROOF, [seq_code(line_codes)])


class DecodeError(ValueError):
    """The code does not denote an object of the requested kind."""


def _children(code: int, tag: int, count: int) -> list[int]:
    found_tag, seq = unpair(code)
    if found_tag != tag:
        raise DecodeError(f"expected tag {tag}, found {found_tag}")
    children = seq_decode(seq)
    if len(children) != count:
        raise DecodeError(f"tag {tag} takes {count} children, found {len(children)}")
    return children


def decode_num_term(code: int) -> NumTerm:
    """Decode a numeric term."""
    tag, seq = unpair(code)
    children = seq_decode(seq)
    match tag, children:
        case (t, []) if t == TAG_ZERO:
            return Zero()
        case (t, []) if t == TAG_ONE:
            return One()
        case (t, [a, b]) if t == TAG_ADD:
            return Add(decode_num_term(a), decode_num_term(b))
        case (t, [a, b]) if t == TAG_MUL:
            return Mul(decode_num_term(a), decode_num_term(b))
        case (t, [i]) if t == TAG_NUM_VAR:
            return Variable(i)
    raise DecodeError(f"code {code} is not a numeric term")


def decode_variable(code: int) -> Variable:
    """Decode a variable of any sort."""
    tag, seq = unpair(code)
    children = seq_decode(seq)
    match tag, children:
        case (t, [i]) if t == TAG_NUM_VAR:
            return Variable(i)
        case (t, [i]) if t == TAG_OP_VAR:
            return Variable(i, OP)
        case (t, [level, i]) if t == TAG_TYPED_VAR:
            return Variable(i, typed_set(level))
        case (t, [level, i]) if t == TAG_LEVELED_VAR:
            return Variable(i, leveled_set(level))
        case (t, [i]) if t == TAG_CLASS_VAR:
            return Variable(i, CLASS)
    raise DecodeError(f"code {code} is not a variable")


def _decode_operand(code: int):
    tag, seq = unpair(code)
    children = seq_decode(seq)
    match tag, children:
        case (t, [i]) if t == TAG_OP_VAR:
            return Variable(i, OP)
        case (t, [which]) if t == TAG_CONSTANT:
            if which >= len(_PLAIN_ORDER):
                raise DecodeError(f"no operation constant number {which}")
            return OpConstant(_PLAIN_ORDER[which])
        case (t, [index]) if t == TAG_COMP:
            return OpConstant("comp", index)
    raise DecodeError(f"code {code} is not an operation")


def _decode_set_expr(code: int, level: int):
    tag, seq = unpair(code)
    children = seq_decode(seq)
    match tag, children:
        case (t, [found, i]) if t == TAG_LEVELED_VAR:
            if found != level:
                raise DecodeError("set level mismatch")
            return Variable(i, leveled_set(level))
        case (t, [found, inner]) if t == TAG_TRUTH_SET:
            if found != level:
                raise DecodeError("set level mismatch")
            return TruthSetApp(level, decode_num_term(inner))
        case (t, [found]) if t == TAG_AUX_SET:
            if found + 1 != level:
                raise DecodeError("set level mismatch")
            return AuxTruthSet(found)
    raise DecodeError(f"code {code} is not a level-{level} set")


def decode_formula(code: int, language: Language) -> Formula:
    """Decode a formula and validate it belongs to the language."""
    formula = _decode_formula(code)
    if language not in languages(formula):
        raise DecodeError(f"code {code} is not a {language.value} formula")
    return formula


# The truth machinery decodes the same codes over and over (its gates
# check a code three ways before recursing), so decoding memoizes.
@lru_cache(maxsize=4096)
def _decode_formula(code: int) -> Formula:
    tag, seq = unpair(code)
    children = seq_decode(seq)
    try:
        return _decode_formula_node(tag, children)
    except DecodeError:
        raise
    except ValueError as exc:
        raise DecodeError(str(exc)) from exc


def _decode_formula_node(tag: int, children: list[int]) -> Formula:
    match tag, children:
        case (t, []) if t == TAG_BOT:
            return Bot()
        case (t, [a, b]) if t == TAG_AND:
            return And(_decode_formula(a), _decode_formula(b))
        case (t, [a, b]) if t == TAG_OR:
            return Or(_decode_formula(a), _decode_formula(b))
        case (t, [a, b]) if t == TAG_IMP:
            return Imp(_decode_formula(a), _decode_formula(b))
        case (t, [v, body]) if t == TAG_FORALL:
            return Forall(decode_variable(v), _decode_formula(body))
        case (t, [v, body]) if t == TAG_EXISTS:
            return Exists(decode_variable(v), _decode_formula(body))
        case (t, [a, b]) if t == TAG_EQ:
            return Eq(decode_num_term(a), decode_num_term(b))
        case (t, [level, element, container]) if t == TAG_LEVELED_MEMBER:
            return LeveledMember(
                level, decode_num_term(element), _decode_set_expr(container, level)
            )
        case (t, [element, container]) if t == TAG_CLASS_MEMBER:
            var = decode_variable(container)
            return ClassMember(decode_num_term(element), var)
        case (t, [level, inner, env]) if t == TAG_TRUTH_ATOM:
            return TruthAtom(level, decode_num_term(inner), decode_num_term(env))
        case (t, [fn, arg, result]) if t == TAG_APPLIES:
            try:
                result_obj = _decode_operand(result)
            except DecodeError:
                result_obj = decode_variable(result)
            return AppliesTo(_decode_operand(fn), _decode_operand(arg), result_obj)
        case (t, [operation, number]) if t == TAG_NAMES_NUMBER:
            number_tag, _ = unpair(number)
            target = Zero() if number_tag == TAG_ZERO else decode_variable(number)
            return NamesNumber(_decode_operand(operation), target)
        case (t, [level, operation, target]) if t == TAG_NAMES_TYPED:
            target_obj = (
                _decode_operand(target) if level == 0 else decode_variable(target)
            )
            return NamesTyped(level, _decode_operand(operation), target_obj)
        case (t, [level, element, container]) if t == TAG_TYPED_MEMBER:
            return TypedMember(
                level, decode_variable(element), decode_variable(container)
            )
    raise DecodeError(f"tag {tag} does not head a formula")


def decode_external_term(code: int) -> ExternalTerm:
    """Decode an external term."""
    tag, seq = unpair(code)
    children = seq_decode(seq)
    match tag, children:
        case (t, [fn, arg]) if t == TAG_EXT_APP:
            return App(decode_external_term(fn), decode_external_term(arg))
        case (t, []) if t == TAG_ZERO:
            return Zero()
        case _:
            try:
                return _decode_operand(code)
            except DecodeError:
                pass
            var = decode_variable(code)
            if var.sort.kind in ("num", "typed-set"):
                return var
            raise DecodeError(f"code {code} is not an external term")


def decode_abstraction(code: int) -> tuple[Variable, list[Variable], Formula]:
    """Decode a comprehension abstraction code."""
    bound_code, params_code, body_code = _children(code, TAG_ABSTRACTION, 3)
    bound = decode_variable(bound_code)
    params = [decode_variable(p) for p in seq_decode(params_code)]
    body = _decode_formula(body_code)
    return bound, params, body


def is_abstraction(code: int) -> bool:
    """Whether the code denotes a comprehension abstraction."""
    try:
        decode_abstraction(code)
    except DecodeError:
        return False
    return True


def decode_justification(code: int) -> tuple[str, list[int]]:
    """Decode a justification code back to the rule name and arguments."""
    name_code, args_code = _children(code, TAG_JUSTIFICATION, 2)
    name = "".join(chr(c) for c in seq_decode(name_code))
    return name, seq_decode(args_code)


def decode_proof(code: int) -> list[tuple[Formula, int]]:
    """Decode a proof code back to its lines."""
    (lines_code,) = _children(code, TAG_PROOF, 1)
    lines = []
    for line_code in seq_decode(lines_code):
        formula_code, justification = _children(line_code, TAG_PROOF_LINE, 2)
        lines.append((_decode_formula(formula_code), justification))
    return lines


# ---------------------------------------------------------------------------
# Executable predicates over codes (the evaluator's gates)


def form_p(level: int, code: int) -> bool:
    """Whether the code denotes a truth-language formula of stage ``level``.

    Stage 0 is plain arithmetic; stage ``k`` admits truth atoms of
    indices 1..k.  Garbage codes answer ``False``.
    """
    if level < 0:
        return False
    try:
        formula = decode_formula(code, Language.TRUTH)
    except DecodeError:
        return False
    return _truth_stage_ok(formula, level)


def _truth_stage_ok(formula: Formula, level: int) -> bool:
    match formula:
        case TruthAtom(found, _, _):
            return 1 <= found <= level
        case And(a, b) | Or(a, b) | Imp(a, b):
            return _truth_stage_ok(a, level) and _truth_stage_ok(b, level)
        case Forall(_, body) | Exists(_, body):
            return _truth_stage_ok(body, level)
        case _:
            return True


def subform_p(code: int, sub: int) -> bool:
    """Whether ``sub`` codes a subformula occurrence of ``code`` (itself included)."""
    try:
        _decode_formula(code)
    except DecodeError:
        return False
    return _subform_search(code, sub)


def _subform_search(code: int, sub: int) -> bool:
    if code == sub:
        return True
    tag, seq = unpair(code)
    children = seq_decode(seq)
    match tag, children:
        case (t, [a, b]) if t in (TAG_AND, TAG_OR, TAG_IMP):
            return _subform_search(a, sub) or _subform_search(b, sub)
        case (t, [_, body]) if t in (TAG_FORALL, TAG_EXISTS):
            return _subform_search(body, sub)
        case _:
            return False


def param_p(code: int, index: int) -> bool:
    """Whether numeric variable ``index`` occurs free in the coded formula."""
    try:
        formula = _decode_formula(code)
    except DecodeError:
        return False
    return Variable(index) in free_vars(formula)


def max_param(code: int) -> int:
    """Largest free numeric-variable index of the coded formula, 0 if none."""
    formula = _decode_formula(code)
    indices = [v.index for v in free_vars(formula) if v.sort.kind == "num"]
    return max(indices, default=0)


def ev_p(code: int, env: int) -> bool:
    """Whether the environment list covers every parameter of the formula.

    Mirrors the object-level bounded form (every parameter index up to
    the code itself is covered); since every free index of a formula is
    below its code under this scheme, scanning the actual parameters
    computes the same predicate.
    """
    try:
        formula = _decode_formula(code)
    except DecodeError:
        return False
    length = seq_length(env)
    return all(
        v.index <= length
        for v in free_vars(formula)
        if v.sort.kind == "num"
    )


def eval_term_code(code: int, env: int) -> int:
    """Value of the coded numeric term under a 1-based environment list.

    Variable ``n_i`` reads position ``i``; positions beyond the list are
    0; position 0 does not exist and raises :class:`ValueError`.
    """
    term = decode_num_term(code)
    return _eval_term(term, env)


def _eval_term(term: NumTerm, env: int) -> int:
    match term:
        case Zero():
            return 0
        case One():
            return 1
        case Add(a, b):
            return _eval_term(a, env) + _eval_term(b, env)
        case Mul(a, b):
            return _eval_term(a, env) * _eval_term(b, env)
        case Variable(index, _):
            return seq_element(env, index)
    raise ValueError(f"cannot evaluate {term!r}")


def subst_eval(env: int, position: int, value: int) -> int:
    """Environment update: set the 1-based position, padding gaps with 0."""
    if position < 1:
        raise ValueError("environment positions are 1-based")
    items = seq_decode(env)
    if len(items) < position:
        items.extend([0] * (position - len(items)))
    items[position - 1] = value
    return seq_code(items)
