"""Command-line front end: one executable, eleven subcommands.

Every subcommand reads its input — an S-expression, a code number, or a
proof file, as noted per command — from a file argument or stdin and
writes one answer to stdout.  Text output is the canonical printer's
S-expression form; ``--json`` switches to a JSON envelope (one object,
``command`` discriminated, schema shipped in ``data/cli_schema.json``)
whose expression payloads mirror the canonical tree as nested arrays.

Exit status: 0 on success, 1 when well-formed input is rejected on its
merits (a proof that fails checking, a class test that comes back
negative, a reduction or extraction that does not land), 2 on usage or
parse errors.

The rewrite budget for ``reduce`` and ``extract`` defaults to the
engine's; the ``THEORY_WORKBENCH_BUDGET`` environment variable
overrides the default, and an explicit ``--budget`` overrides both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import coding, combinators, evaluator, proofs, sexpr, translations
from .classifiers import fragment_of, is_elementary, is_k_simple
from .expressions import OP, Language, SortError, Variable
from .external import term_vars

__all__ = ["main"]

_LANGUAGES = {
    "operations": Language.OPERATIONS,
    "leveled": Language.LEVELED,
    "second-order": Language.SECOND_ORDER,
    "truth": Language.TRUTH,
}

# method -> (source theory, target theory, source language, function)
_METHODS = {
    "hat": ("SA", "Ar", Language.LEVELED, translations.collapse_sorts),
    "star": ("SA", "BTcl", Language.LEVELED, translations.to_operations),
    "tilde": ("PATr", "SA", Language.TRUTH, translations.truth_as_membership),
    "minus": ("BTcl", "BT", Language.OPERATIONS, translations.negative_translation),
}


class UsageError(Exception):
    """Bad flags or malformed input; reported on stderr with exit 2."""


# ---------------------------------------------------------------------------
# Shared plumbing


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _mirror(node: sexpr.Node):
    if isinstance(node.value, tuple):
        return [_mirror(child) for child in node.value]
    return node.value


def _tree(text: str):
    """JSON mirror of canonical text, so both outputs share one printer."""
    return _mirror(sexpr.read_one(text))


def _emit(args: argparse.Namespace, text: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _formula_language(args: argparse.Namespace) -> Language:
    if args.kind == "term":
        if args.language not in (None, "operations"):
            raise UsageError("external terms belong to the operations language")
        return Language.OPERATIONS
    if args.language is None:
        raise UsageError("--language is required for formulas")
    return _LANGUAGES[args.language]


def _parse_input(args: argparse.Namespace):
    """Parse the input as the flags direct; returns (object, language name)."""
    language = _formula_language(args)
    text = _read_input(args.input)
    if args.kind == "term":
        return sexpr.parse_term(text), "operations"
    return sexpr.parse_formula(text, language), args.language


def _budget(args: argparse.Namespace) -> int:
    if args.budget is not None:
        return args.budget
    override = os.environ.get("THEORY_WORKBENCH_BUDGET")
    if override is not None:
        if not override.isdigit():
            raise UsageError(
                f"THEORY_WORKBENCH_BUDGET must be a natural number: {override!r}"
            )
        return int(override)
    return combinators.DEFAULT_BUDGET


def _parse_env(text: str) -> tuple[int, ...]:
    parts = [part for part in text.replace(",", " ").split() if part]
    for part in parts:
        if not part.isdigit():
            raise UsageError(f"--env takes comma-separated naturals: {part!r}")
    return tuple(int(part) for part in parts)


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_parse(args: argparse.Namespace) -> int:
    obj, language = _parse_input(args)
    text = sexpr.print_term(obj) if args.kind == "term" else sexpr.print_formula(obj)
    _emit(
        args,
        text,
        {
            "command": "parse",
            "language": language,
            "kind": args.kind,
            "expression": _tree(text),
        },
    )
    return 0


def _cmd_print(args: argparse.Namespace) -> int:
    language = _formula_language(args)
    raw = _read_input(args.input).strip()
    if not raw.isdigit():
        raise UsageError(f"expected a code number, got {raw[:40]!r}")
    code = int(raw)
    if args.kind == "term":
        text = sexpr.print_term(coding.decode_external_term(code))
    else:
        text = sexpr.print_formula(coding.decode_formula(code, language))
    _emit(
        args,
        text,
        {
            "command": "print",
            "language": args.language or "operations",
            "kind": args.kind,
            "code": code,
            "expression": _tree(text),
        },
    )
    return 0


def _cmd_godel(args: argparse.Namespace) -> int:
    obj, language = _parse_input(args)
    code = coding.encode(obj)
    _emit(
        args,
        str(code),
        {
            "command": "godel",
            "language": language,
            "kind": args.kind,
            "code": code,
        },
    )
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    if args.stage < 0:
        raise UsageError("--stage must be non-negative")
    if args.kind == "elementary":
        language, check = Language.OPERATIONS, is_elementary
    else:
        language, check = Language.LEVELED, is_k_simple
    formula = sexpr.parse_formula(_read_input(args.input), language)
    report = check(args.stage, formula)
    if report.ok:
        text = "yes"
    elif report.path:
        text = f"no: {report.reason} at {'.'.join(map(str, report.path))}"
    else:
        text = f"no: {report.reason}"
    _emit(
        args,
        text,
        {
            "command": "classify",
            "kind": args.kind,
            "stage": args.stage,
            "ok": report.ok,
            "reason": report.reason or None,
            "path": list(report.path),
        },
    )
    return 0 if report.ok else 1


def _cmd_fragment(args: argparse.Namespace) -> int:
    formula = sexpr.parse_formula(_read_input(args.input), _LANGUAGES[args.language])
    stage = fragment_of(formula)
    _emit(
        args,
        str(stage),
        {"command": "fragment", "language": args.language, "stage": stage},
    )
    return 0


def _cmd_translate(args: argparse.Namespace) -> int:
    source, target, language, translate = _METHODS[args.method]
    if args.source is not None and args.source != source:
        raise UsageError(f"--method {args.method} translates {source} to {target}")
    if args.target is not None and args.target != target:
        raise UsageError(f"--method {args.method} translates {source} to {target}")
    if args.eliminate and args.method != "tilde":
        raise UsageError("--eliminate applies to the tilde method only")
    formula = sexpr.parse_formula(_read_input(args.input), language)
    image = translate(formula)
    if args.eliminate:
        image = translations.eliminate_defined(image)
    text = sexpr.print_formula(image)
    _emit(
        args,
        text,
        {
            "command": "translate",
            "method": args.method,
            "from": source,
            "to": target,
            "eliminated": bool(args.eliminate),
            "expression": _tree(text),
        },
    )
    return 0


def _cmd_reduce(args: argparse.Namespace) -> int:
    term = sexpr.parse_term(_read_input(args.input))
    budget = _budget(args)
    result = combinators.reduce_term(term, budget, trace=args.trace)
    lines = (
        [sexpr.print_term(stage) for stage in result.trace]
        if args.trace
        else [sexpr.print_term(result.term)]
    )
    payload = {
        "command": "reduce",
        "normal": result.normal,
        "steps": result.steps,
        "budget": budget,
        "term": _tree(sexpr.print_term(result.term)),
    }
    if args.trace:
        payload["trace"] = [_tree(line) for line in lines]
    _emit(args, "\n".join(lines), payload)
    if not result.normal:
        print(f"error: no normal form within {budget} steps", file=sys.stderr)
        return 1
    return 0


def _find_term_variable(name: str, term) -> Variable:
    if name.lstrip().startswith("("):
        return sexpr.parse_variable(sexpr.read_one(name), Language.OPERATIONS)
    operations = [var for var in term_vars(term) if var.sort == OP]
    for var in operations:
        if var.name == name:
            return var
    free = max((var.index for var in operations), default=-1) + 1
    return Variable(free, OP, name)


def _cmd_lambda(args: argparse.Namespace) -> int:
    term = sexpr.parse_term(_read_input(args.input))
    var = _find_term_variable(args.var, term)
    image = combinators.lambda_abstract(var, term)
    text = sexpr.print_term(image)
    _emit(
        args,
        text,
        {
            "command": "lambda",
            "var": _tree(sexpr.print_term(var)),
            "term": _tree(text),
        },
    )
    return 0


def _cmd_extract(args: argparse.Namespace) -> int:
    term = sexpr.parse_term(_read_input(args.input))
    result = combinators.extract_disjunct(term, _budget(args))
    component = sexpr.print_term(result.component)
    _emit(
        args,
        f"{result.choice.value} {component}",
        {
            "command": "extract",
            "choice": result.choice.value,
            "component": _tree(component),
            "steps": result.steps,
        },
    )
    return 0 if result.choice is not combinators.Disjunct.UNKNOWN else 1


def _cmd_check(args: argparse.Namespace) -> int:
    theory = proofs.parse_theory(args.theory)
    proof = proofs.parse_proof(_read_input(args.input), theory.language)
    verdict = proofs.check_proof(theory, proof)
    if verdict.accepted:
        formula = sexpr.print_formula(verdict.formula)
        text = f"accepted: {formula}"
    elif verdict.line is not None:
        text = f"rejected at line {verdict.line}: {verdict.reason}"
    else:
        text = f"rejected: {verdict.reason}"
    _emit(
        args,
        text,
        {
            "command": "check",
            "theory": str(theory),
            "accepted": verdict.accepted,
            "formula": _tree(formula) if verdict.accepted else None,
            "line": verdict.line,
            "reason": verdict.reason,
        },
    )
    return 0 if verdict.accepted else 1


def _cmd_eval_truth(args: argparse.Namespace) -> int:
    if args.level < 1:
        raise UsageError("--level must be at least 1")
    if args.bound < 0:
        raise UsageError("--bound must be non-negative")
    env = _parse_env(args.env)
    raw = _read_input(args.input).strip()
    if raw.isdigit():
        code = int(raw)
    else:
        code = coding.encode(sexpr.parse_formula(raw, Language.TRUTH))
    verdict = evaluator.tr_eval(args.level, code, env, args.bound)
    text = verdict.value
    if verdict.witness is not None:
        label = "witness" if verdict.value == "true" else "counterexample"
        text = f"{verdict.value} {label} {verdict.witness}"
    elif verdict.reason is not None:
        text = f"{verdict.value} {verdict.reason}"
    _emit(
        args,
        text,
        {
            "command": "eval-truth",
            "level": args.level,
            "bound": args.bound,
            "env": list(env),
            "code": code,
            "verdict": verdict.value,
            "reason": verdict.reason,
            "witness": verdict.witness,
        },
    )
    return 0


# ---------------------------------------------------------------------------
# Parser assembly


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="formalbench",
        description="Workbench for the theories of operations, leveled sets, "
        "classes, and truth: parsing, classification, translation, reduction, "
        "coding, proof checking, and truth evaluation.",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    def command(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text, description=help_text)
        sub.add_argument("input", nargs="?", default="-", help="input file, - for stdin")
        sub.add_argument(
            "--json", action="store_true", help="emit a JSON envelope instead of text"
        )
        sub.set_defaults(handler=handler)
        return sub

    def language_flag(sub: argparse.ArgumentParser, required: bool) -> None:
        sub.add_argument(
            "--language",
            choices=sorted(_LANGUAGES),
            required=required,
            help="language the input is read in",
        )

    def kind_flag(sub: argparse.ArgumentParser) -> None:
        sub.add_argument(
            "--kind",
            choices=("formula", "term"),
            default="formula",
            help="read a formula (default) or an external term",
        )

    def budget_flag(sub: argparse.ArgumentParser) -> None:
        sub.add_argument(
            "--budget",
            type=int,
            default=None,
            help="rewrite step budget (default from THEORY_WORKBENCH_BUDGET "
            f"or {combinators.DEFAULT_BUDGET})",
        )

    sub = command("parse", _cmd_parse, "parse input and reprint it canonically")
    language_flag(sub, required=False)
    kind_flag(sub)

    sub = command("print", _cmd_print, "decode a code number into canonical text")
    language_flag(sub, required=False)
    kind_flag(sub)

    sub = command("classify", _cmd_classify, "test class membership at a stage")
    sub.add_argument(
        "--kind",
        choices=("elementary", "simple"),
        required=True,
        help="elementary reads the operations language, simple the leveled one",
    )
    sub.add_argument("--stage", type=int, required=True, help="stage to test at")

    sub = command("fragment", _cmd_fragment, "smallest stage containing the formula")
    language_flag(sub, required=True)

    sub = command("translate", _cmd_translate, "interpret a formula in another theory")
    sub.add_argument(
        "--method",
        choices=sorted(_METHODS),
        required=True,
        help="hat: SA to Ar; star: SA to BTcl; tilde: PATr to SA; minus: BTcl to BT",
    )
    sub.add_argument("--from", dest="source", help="source theory (checked)")
    sub.add_argument("--to", dest="target", help="target theory (checked)")
    sub.add_argument(
        "--eliminate",
        action="store_true",
        help="after tilde, replace truth-set abbreviations by their definitions",
    )

    sub = command("reduce", _cmd_reduce, "reduce an external term to normal form")
    budget_flag(sub)
    sub.add_argument(
        "--trace", action="store_true", help="print every stage, one per line"
    )

    sub = command("lambda", _cmd_lambda, "abstract a variable out of a term")
    sub.add_argument(
        "--var", required=True, help="variable to bind: a name or (op i) form"
    )

    sub = command("extract", _cmd_extract, "read a realizer's disjunct selector")
    budget_flag(sub)

    sub = command("godel", _cmd_godel, "encode input as a code number")
    language_flag(sub, required=False)
    kind_flag(sub)

    sub = command("check", _cmd_check, "check a proof file against a theory")
    sub.add_argument(
        "--theory",
        required=True,
        help="theory id: BASE, BASE:LEVEL, with optional :restricted",
    )

    sub = command("eval-truth", _cmd_eval_truth, "evaluate a coded sentence at a stage")
    sub.add_argument("--level", type=int, required=True, help="truth stage, at least 1")
    sub.add_argument(
        "--bound",
        type=int,
        default=evaluator.DEFAULT_BOUND,
        help=f"quantifier search bound (default {evaluator.DEFAULT_BOUND})",
    )
    sub.add_argument(
        "--env",
        default="",
        help="parameter values, comma-separated naturals (default empty)",
    )

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (sexpr.ParseError, SortError, coding.DecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
