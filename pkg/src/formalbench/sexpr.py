"""S-expression surfaces for formulas, external terms, and proof files.

Two surfaces share one reader:

* the formula surface, parsed against a target language so every slot
  is checked for sort and language membership as it is read;
* the external-term surface, where a bare list is left-associated
  application, the short names ``k s d p p1 p2`` are the operation
  constants, and any other bare name is a display-named operation
  variable (indices assigned in order of first occurrence).

Errors carry the line and column of the offending token.  Printing is
canonical: parse–print–parse is the identity on every accepted input.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from . import external

# Comprehension indices and whole-expression codes routinely run to
# thousands of digits; lift the interpreter's int/str conversion guard
# so they can be read and written as plain decimal numerals.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)
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
    SetExpr,
    SortError,
    TruthAtom,
    TruthSetApp,
    TypedMember,
    Variable,
    Zero,
    One,
    leveled_set,
    number_term,
    number_value,
    typed_set,
)
from .external import App, ExternalTerm


class ParseError(ValueError):
    """A syntax or sort error at a known source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Node:
    """One read S-expression: an integer, a symbol, or a tuple of nodes."""

    value: "int | str | tuple[Node, ...]"
    line: int
    column: int

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.column)


def _tokenize(text: str):
    line, column = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            column = 1
            i += 1
        elif ch in " \t\r":
            column += 1
            i += 1
        elif ch == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif ch in "()":
            yield ch, ch, line, column
            column += 1
            i += 1
        else:
            start = i
            start_column = column
            while i < len(text) and text[i] not in " \t\r\n();":
                i += 1
                column += 1
            yield "atom", text[start:i], line, start_column


def read_all(text: str) -> list[Node]:
    """Read every top-level S-expression in the text."""
    stack: list[tuple[list[Node], int, int]] = []
    top: list[Node] = []
    for kind, tok, line, column in _tokenize(text):
        if kind == "(":
            stack.append(([], line, column))
        elif kind == ")":
            if not stack:
                raise ParseError("unmatched ')'", line, column)
            items, open_line, open_column = stack.pop()
            node = Node(tuple(items), open_line, open_column)
            (stack[-1][0] if stack else top).append(node)
        else:
            if tok.isdigit() or (tok[0] == "-" and tok[1:].isdigit()):
                value: int | str = int(tok)
            else:
                value = tok
            node = Node(value, line, column)
            (stack[-1][0] if stack else top).append(node)
    if stack:
        _, line, column = stack[-1]
        raise ParseError("unclosed '('", line, column)
    return top


def read_one(text: str) -> Node:
    """Read exactly one S-expression."""
    nodes = read_all(text)
    if not nodes:
        raise ParseError("empty input", 1, 1)
    if len(nodes) > 1:
        raise nodes[1].error("trailing content after the first expression")
    return nodes[0]


# ---------------------------------------------------------------------------
# Formula surface

_CONSTANT_NAMES = ("kc", "sc", "dc", "pc", "p1c", "p2c")


def _head(node: Node) -> tuple[str, tuple[Node, ...]]:
    if not isinstance(node.value, tuple):
        raise node.error(f"expected a list, got {node.value!r}")
    if not node.value:
        raise node.error("empty list")
    head = node.value[0]
    if not isinstance(head.value, str):
        raise head.error("list head must be a symbol")
    return head.value, node.value[1:]


def _nat(node: Node, what: str) -> int:
    if not isinstance(node.value, int) or node.value < 0:
        raise node.error(f"{what} must be a non-negative integer")
    return node.value


def _arity(node: Node, args: tuple[Node, ...], count: int, form: str) -> None:
    if len(args) != count:
        raise node.error(f"{form} takes {count} arguments, got {len(args)}")


def _check_language(node: Node, language: Language, allowed: tuple[Language, ...], what: str) -> None:
    if language not in allowed:
        raise node.error(f"{what} is not part of the {language.value} language")


def parse_variable(node: Node, language: Language) -> Variable:
    """Parse a variable form, validating it against the language."""
    if isinstance(node.value, str):
        raise node.error(f"expected a variable form, got {node.value!r}")
    head, args = _head(node)
    if head in ("v", "num"):
        _arity(node, args, 1, f"({head} i)")
        return Variable(_nat(args[0], "variable index"))
    if head == "set":
        if len(args) == 1:
            _check_language(node, language, (Language.SECOND_ORDER,), "a class variable")
            return Variable(_nat(args[0], "variable index"), CLASS)
        _arity(node, args, 2, "(set k i)")
        _check_language(node, language, (Language.LEVELED,), "a leveled set variable")
        level = _nat(args[0], "set level")
        if level < 1:
            raise args[0].error("set levels are positive")
        return Variable(_nat(args[1], "variable index"), leveled_set(level))
    if head == "bt":
        _arity(node, args, 2, "(bt k i)")
        _check_language(node, language, (Language.OPERATIONS,), "a typed set variable")
        level = _nat(args[0], "type level")
        index = _nat(args[1], "variable index")
        return Variable(index, OP) if level == 0 else Variable(index, typed_set(level))
    if head == "op":
        _arity(node, args, 1, "(op i)")
        _check_language(node, language, (Language.OPERATIONS,), "an operation variable")
        return Variable(_nat(args[0], "variable index"), OP)
    raise node.error(f"unknown variable form {head!r}")


def _parse_num_term(node: Node, language: Language) -> NumTerm:
    if isinstance(node.value, str):
        if node.value == "zero":
            return Zero()
        if node.value == "one":
            return One()
        raise node.error(f"expected a numeric term, got {node.value!r}")
    if isinstance(node.value, int):
        raise node.error("bare integers are not terms; use (n m)")
    head, args = _head(node)
    if head == "n":
        _arity(node, args, 1, "(n m)")
        return number_term(_nat(args[0], "numeral value"))
    if head == "plus":
        _arity(node, args, 2, "(plus t u)")
        return Add(_parse_num_term(args[0], language), _parse_num_term(args[1], language))
    if head == "times":
        _arity(node, args, 2, "(times t u)")
        return Mul(_parse_num_term(args[0], language), _parse_num_term(args[1], language))
    var = parse_variable(node, language)
    if var.sort.kind != "num":
        raise node.error("expected a numeric term, got a non-numeric variable")
    return var


def _parse_operand(node: Node, language: Language):
    if isinstance(node.value, str):
        if node.value in _CONSTANT_NAMES:
            return OpConstant(node.value)
        raise node.error(f"expected an operation, got {node.value!r}")
    head, args = _head(node)
    if head == "comp":
        _arity(node, args, 1, "(comp n)")
        return OpConstant("comp", _nat(args[0], "comprehension code"))
    var = parse_variable(node, language)
    if var.sort != OP:
        raise node.error("expected an operation variable or constant")
    return var


def _parse_set_expr(node: Node, language: Language, level: int) -> SetExpr:
    if isinstance(node.value, tuple) and node.value:
        head = node.value[0].value
        if head == "gset":
            args = node.value[1:]
            _arity(node, args, 2, "(gset k m)")
            found = _nat(args[0], "truth-set level")
            if found != level:
                raise node.error(f"expected a level-{level} set, got level {found}")
            return TruthSetApp(found, _parse_num_term(args[1], language))
        if head == "aux":
            args = node.value[1:]
            _arity(node, args, 1, "(aux k)")
            found = _nat(args[0], "truth-set level")
            if found + 1 != level:
                raise node.error(f"expected a level-{level} set, got level {found + 1}")
            return AuxTruthSet(found)
    var = parse_variable(node, language)
    if var.sort != leveled_set(level):
        raise node.error(f"expected a level-{level} set variable")
    return var


def parse_formula(node_or_text, language: Language) -> Formula:
    """Parse a formula of the given language from text or a read node."""
    node = read_one(node_or_text) if isinstance(node_or_text, str) else node_or_text
    return _parse_formula(node, language)


def _parse_formula(node: Node, language: Language) -> Formula:
    head, args = _head(node)
    try:
        return _dispatch_formula(node, head, args, language)
    except SortError as exc:
        raise node.error(str(exc)) from exc


def _dispatch_formula(node: Node, head: str, args: tuple[Node, ...], language: Language) -> Formula:
    match head:
        case "bot":
            _arity(node, args, 0, "(bot)")
            return Bot()
        case "and" | "or" | "imp":
            _arity(node, args, 2, f"({head} a b)")
            ctor = {"and": And, "or": Or, "imp": Imp}[head]
            return ctor(_parse_formula(args[0], language), _parse_formula(args[1], language))
        case "forall" | "exists":
            _arity(node, args, 2, f"({head} var body)")
            ctor = {"forall": Forall, "exists": Exists}[head]
            return ctor(parse_variable(args[0], language), _parse_formula(args[1], language))
        case "eq":
            _arity(node, args, 2, "(eq t u)")
            return Eq(_parse_num_term(args[0], language), _parse_num_term(args[1], language))
        case "in":
            if len(args) == 2:
                _check_language(node, language, (Language.SECOND_ORDER,), "class membership")
                container = parse_variable(args[0], language)
                return ClassMember(_parse_num_term(args[1], language), container)
            _arity(node, args, 3, "(in k x t)")
            _check_language(node, language, (Language.LEVELED,), "leveled membership")
            level = _nat(args[0], "set level")
            container = _parse_set_expr(args[1], language, level)
            return LeveledMember(level, _parse_num_term(args[2], language), container)
        case "tr":
            _arity(node, args, 3, "(tr k m l)")
            _check_language(node, language, (Language.TRUTH,), "a truth atom")
            return TruthAtom(
                _nat(args[0], "truth level"),
                _parse_num_term(args[1], language),
                _parse_num_term(args[2], language),
            )
        case "ap":
            _arity(node, args, 3, "(ap f x y)")
            _check_language(node, language, (Language.OPERATIONS,), "an application atom")
            result_node = args[2]
            result: Variable | OpConstant
            if isinstance(result_node.value, str) or (
                isinstance(result_node.value, tuple)
                and result_node.value
                and result_node.value[0].value == "comp"
            ):
                result = _parse_operand(result_node, language)
            else:
                result = parse_variable(result_node, language)
            return AppliesTo(
                _parse_operand(args[0], language),
                _parse_operand(args[1], language),
                result,
            )
        case "eqow":
            _arity(node, args, 2, "(eqow x m)")
            _check_language(node, language, (Language.OPERATIONS,), "a number-naming atom")
            target_node = args[1]
            if isinstance(target_node.value, str) and target_node.value == "zero":
                target: Variable | Zero = Zero()
            elif isinstance(target_node.value, tuple) and target_node.value and target_node.value[0].value == "n":
                inner = target_node.value[1:]
                _arity(target_node, inner, 1, "(n m)")
                if _nat(inner[0], "numeral value") != 0:
                    raise target_node.error("only the numeral 0 may stand in a naming atom")
                target = Zero()
            else:
                target = parse_variable(target_node, language)
            return NamesNumber(_parse_operand(args[0], language), target)
        case "eqok":
            _arity(node, args, 3, "(eqok k x y)")
            _check_language(node, language, (Language.OPERATIONS,), "a set-naming atom")
            level = _nat(args[0], "naming level")
            operation = _parse_operand(args[1], language)
            if level == 0:
                return NamesTyped(0, operation, _parse_operand(args[2], language))
            return NamesTyped(level, operation, parse_variable(args[2], language))
        case "mem":
            _arity(node, args, 3, "(mem k x y)")
            _check_language(node, language, (Language.OPERATIONS,), "a typed membership atom")
            level = _nat(args[0], "membership level")
            return TypedMember(
                level,
                parse_variable(args[1], language),
                parse_variable(args[2], language),
            )
    raise node.error(f"unknown formula form {head!r}")


# ---------------------------------------------------------------------------
# Term surface

_TERM_CONSTANTS = {
    "k": external.KC,
    "s": external.SC,
    "d": external.DC,
    "p": external.PC,
    "p1": external.P1C,
    "p2": external.P2C,
}
_TERM_CONSTANT_NAMES = {
    constant.name: short for short, constant in _TERM_CONSTANTS.items()
}
_RESERVED_HEADS = ("v", "num", "op", "bt", "comp", "n")


def parse_term(node_or_text) -> ExternalTerm:
    """Parse an external term; names not otherwise reserved are variables."""
    node = read_one(node_or_text) if isinstance(node_or_text, str) else node_or_text
    names: dict[str, Variable] = {}
    return _parse_term(node, names)


def _parse_term(node: Node, names: dict[str, Variable]) -> ExternalTerm:
    if isinstance(node.value, int):
        raise node.error("bare integers are not terms; use (n m)")
    if isinstance(node.value, str):
        name = node.value
        if name in _TERM_CONSTANTS:
            return _TERM_CONSTANTS[name]
        if name in _CONSTANT_NAMES:
            return OpConstant(name)
        if name == "zero":
            return Zero()
        if name == "one":
            return external.numeral(1)
        if name not in names:
            names[name] = Variable(len(names), OP, name)
        return names[name]
    if not node.value:
        raise node.error("empty list")
    head = node.value[0].value
    if isinstance(head, str) and head in _RESERVED_HEADS:
        if head == "comp":
            args = node.value[1:]
            _arity(node, args, 1, "(comp n)")
            return OpConstant("comp", _nat(args[0], "comprehension code"))
        if head == "n":
            args = node.value[1:]
            _arity(node, args, 1, "(n m)")
            return external.numeral(_nat(args[0], "numeral value"))
        return parse_variable(node, Language.OPERATIONS)
    if len(node.value) < 2:
        raise node.error("application needs at least two parts")
    term = _parse_term(node.value[0], names)
    for arg in node.value[1:]:
        term = App(term, _parse_term(arg, names))
    return term


# ---------------------------------------------------------------------------
# Printers


def print_variable(var: Variable) -> str:
    match var.sort.kind:
        case "num":
            return f"(v {var.index})"
        case "op":
            return f"(op {var.index})"
        case "typed-set":
            return f"(bt {var.sort.level} {var.index})"
        case "leveled-set":
            return f"(set {var.sort.level} {var.index})"
        case "class":
            return f"(set {var.index})"
    raise SortError(f"unprintable variable {var!r}")


def _print_num_term(term: NumTerm) -> str:
    value = number_value(term)
    if value is not None:
        return f"(n {value})"
    match term:
        case Add(a, b):
            return f"(plus {_print_num_term(a)} {_print_num_term(b)})"
        case Mul(a, b):
            return f"(times {_print_num_term(a)} {_print_num_term(b)})"
        case Variable():
            return print_variable(term)
    raise SortError(f"unprintable numeric term {term!r}")


def _print_operand(term) -> str:
    match term:
        case OpConstant("comp", code):
            return f"(comp {code})"
        case OpConstant(name, None):
            return name
        case Variable():
            return print_variable(term)
    raise SortError(f"unprintable operand {term!r}")


def _print_set_expr(expr: SetExpr) -> str:
    match expr:
        case TruthSetApp(level, code):
            return f"(gset {level} {_print_num_term(code)})"
        case AuxTruthSet(level):
            return f"(aux {level})"
        case Variable():
            return print_variable(expr)
    raise SortError(f"unprintable set expression {expr!r}")


def print_formula(formula: Formula) -> str:
    """Canonical text for a formula; inverse of :func:`parse_formula`."""
    match formula:
        case Bot():
            return "(bot)"
        case And(a, b):
            return f"(and {print_formula(a)} {print_formula(b)})"
        case Or(a, b):
            return f"(or {print_formula(a)} {print_formula(b)})"
        case Imp(a, b):
            return f"(imp {print_formula(a)} {print_formula(b)})"
        case Forall(v, body):
            return f"(forall {print_variable(v)} {print_formula(body)})"
        case Exists(v, body):
            return f"(exists {print_variable(v)} {print_formula(body)})"
        case Eq(a, b):
            return f"(eq {_print_num_term(a)} {_print_num_term(b)})"
        case LeveledMember(level, element, container):
            return f"(in {level} {_print_set_expr(container)} {_print_num_term(element)})"
        case ClassMember(element, container):
            return f"(in {print_variable(container)} {_print_num_term(element)})"
        case TruthAtom(level, code, env):
            return f"(tr {level} {_print_num_term(code)} {_print_num_term(env)})"
        case AppliesTo(fn, arg, result):
            result_text = (
                _print_operand(result)
                if isinstance(result, OpConstant)
                else print_variable(result)
            )
            return f"(ap {_print_operand(fn)} {_print_operand(arg)} {result_text})"
        case NamesNumber(operation, number):
            number_text = "(n 0)" if isinstance(number, Zero) else print_variable(number)
            return f"(eqow {_print_operand(operation)} {number_text})"
        case NamesTyped(level, operation, target):
            target_text = (
                _print_operand(target) if level == 0 else print_variable(target)
            )
            return f"(eqok {level} {_print_operand(operation)} {target_text})"
        case TypedMember(level, element, container):
            return f"(mem {level} {print_variable(element)} {print_variable(container)})"
    raise SortError(f"unprintable formula {formula!r}")


def print_term(term: ExternalTerm) -> str:
    """Canonical text for an external term; inverse of :func:`parse_term`."""
    match term:
        case App():
            head, args = external.spine(term)
            parts = [print_term(head)] + [print_term(arg) for arg in args]
            return f"({' '.join(parts)})"
        case Zero():
            return "zero"
        case OpConstant("comp", code):
            return f"(comp {code})"
        case OpConstant(name, None):
            return _TERM_CONSTANT_NAMES[name]
        case Variable() if term.name:
            return term.name
        case Variable():
            return print_variable(term)
    raise SortError(f"unprintable term {term!r}")
