"""Theory identifiers, proof objects, and the checking kernel.

A proof is an assumption-free sequence of lines, each carrying a
formula and a justification: a logical schema id, a theory schema id,
modus ponens, generalization, or (in the operations theories) the
induction rule.  :func:`check_proof` validates a proof against a
:class:`TheoryId` — every line must lie in the theory's language and
level fragment and be justified from earlier lines — and reports
either the proved formula or the first offending line.

The normative listing of schemas and rules is ``docs/axioms.md``.
Proof files are S-expressions::

    (proof
      ((formula <formula>) (by (logical k)))
      ((formula <formula>) (by (axiom comb-k)))
      ((formula <formula>) (by (mp 2 1)))
      ((formula <formula>) (by (gen 3 (v 0))))
      ((formula <formula>) (by (ind 4 5))))

Line citations are 1-based and must point backwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .axioms import (
    CLASSICAL_AXIOMS,
    LOGICAL_AXIOMS,
    THEORY_AXIOMS,
    logical_axiom_matches,
    no_typed_set_binders,
    theory_axiom_matches,
)
from .classifiers import fragment_of
from .expressions import (
    NUM,
    And,
    Exists,
    Forall,
    Formula,
    Imp,
    Language,
    SortError,
    Variable,
    Zero,
    free_vars,
    languages,
    substitute,
)
from .external import PC, apply_chain, evaluates_to
from .sexpr import (
    Node,
    parse_formula,
    parse_variable,
    print_formula,
    print_variable,
    read_one,
)

__all__ = [
    "TheoryId",
    "parse_theory",
    "LogicalAxiom",
    "TheoryAxiom",
    "ModusPonens",
    "Generalization",
    "InductionRule",
    "ProofLine",
    "Proof",
    "ProofVerdict",
    "induction_step",
    "check_proof",
    "parse_proof",
    "print_proof",
]


# ---------------------------------------------------------------------------
# Theories

_BASES: dict[str, tuple[Language, bool]] = {
    "BT": (Language.OPERATIONS, False),
    "BTcl": (Language.OPERATIONS, True),
    "SA": (Language.LEVELED, True),
    "Ar": (Language.SECOND_ORDER, True),
    "ArACBang": (Language.SECOND_ORDER, True),
    "ArDelta11C": (Language.SECOND_ORDER, True),
    "PATr": (Language.TRUTH, True),
}

_LEVELED_BASES = frozenset({"BT", "BTcl", "SA", "PATr"})
_RESTRICTABLE_BASES = frozenset({"BT", "BTcl", "SA", "PATr"})


@dataclass(frozen=True)
class TheoryId:
    """A theory base, an optional level fragment, and the induction flag.

    ``level=None`` is the full theory; a number keeps only formulas
    whose fragment stage is at most that level.  The class-based
    theories have no level structure and no restricted variant.
    """

    base: str
    level: int | None = None
    restricted_induction: bool = False

    def __post_init__(self) -> None:
        if self.base not in _BASES:
            raise ValueError(f"unknown theory base: {self.base!r}")
        if self.level is not None:
            if self.base not in _LEVELED_BASES:
                raise ValueError(f"{self.base} has no level fragments")
            if self.level < 0:
                raise ValueError("theory levels are non-negative")
        if self.restricted_induction and self.base not in _RESTRICTABLE_BASES:
            raise ValueError(f"{self.base} does not take the restricted-induction flag")

    @property
    def language(self) -> Language:
        return _BASES[self.base][0]

    @property
    def classical(self) -> bool:
        return _BASES[self.base][1]

    @property
    def axiom_ids(self) -> tuple[str, ...]:
        return THEORY_AXIOMS[self.base]

    def __str__(self) -> str:
        text = self.base if self.level is None else f"{self.base}:{self.level}"
        return f"{text}:restricted" if self.restricted_induction else text


def parse_theory(text: str) -> TheoryId:
    """Parse ``BASE``, ``BASE:LEVEL``, with an optional ``:restricted``."""
    parts = text.split(":")
    restricted = False
    if len(parts) > 1 and parts[-1] == "restricted":
        restricted = True
        parts = parts[:-1]
    if len(parts) == 1:
        return TheoryId(parts[0], restricted_induction=restricted)
    if len(parts) == 2:
        base, level_text = parts
        if not level_text.isdigit():
            raise ValueError(f"theory level must be a natural number: {level_text!r}")
        return TheoryId(base, int(level_text), restricted_induction=restricted)
    raise ValueError(f"malformed theory id: {text!r}")


# ---------------------------------------------------------------------------
# Proof objects


@dataclass(frozen=True)
class LogicalAxiom:
    axiom_id: str


@dataclass(frozen=True)
class TheoryAxiom:
    axiom_id: str


@dataclass(frozen=True)
class ModusPonens:
    """Cites the implication line and the antecedent line, in that order."""

    implication: int
    antecedent: int


@dataclass(frozen=True)
class Generalization:
    source: int
    var: Variable


@dataclass(frozen=True)
class InductionRule:
    """Cites the zero-case line and the successor-step line."""

    base: int
    step: int


Justification = LogicalAxiom | TheoryAxiom | ModusPonens | Generalization | InductionRule


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Proof:
    lines: tuple[ProofLine, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class ProofVerdict:
    """Outcome of a check: the proved formula, or the first bad line."""

    accepted: bool
    formula: Formula | None = None
    line: int | None = None
    reason: str | None = None


# ---------------------------------------------------------------------------
# The induction rule


def induction_step(phi: Formula, n: Variable, m: Variable) -> Formula:
    """The step premise: phi pushes forward to the denoted successor."""
    for var, role in ((n, "induction variable"), (m, "successor witness")):
        if not isinstance(var, Variable) or var.sort != NUM:
            raise SortError(f"{role} must be a numeric variable, got {var!r}")
    if m == n or m in free_vars(phi):
        raise SortError("successor witness must be fresh")
    avoid = free_vars(phi) | {n, m}
    named = evaluates_to(apply_chain(PC, n, Zero()), m, frozenset(avoid))
    return Imp(phi, Exists(m, And(named, substitute(phi, n, m))))


def _check_induction(
    theory: TheoryId, conclusion: Formula, base_formula: Formula, step_formula: Formula
) -> str | None:
    if theory.base not in ("BT", "BTcl"):
        return "the induction rule belongs to the operations theories"
    if theory.restricted_induction and not no_typed_set_binders(conclusion):
        return "restricted induction forbids typed-set quantifiers in the conclusion"
    match step_formula:
        case Imp(premise, Exists(Variable(sort=sort) as m, And(_, _))) if (
            premise == conclusion and sort == NUM
        ):
            pass
        case _:
            return "step line does not have the successor-step shape"
    candidates = sorted(
        {v for v in free_vars(conclusion) | free_vars(step_formula) if v.sort == NUM},
        key=lambda v: v.index,
    )
    for n in candidates:
        try:
            rebuilt = induction_step(conclusion, n, m)
        except SortError:
            continue
        if rebuilt == step_formula and substitute(conclusion, n, Zero()) == base_formula:
            return None
    return "premises do not instantiate the induction rule for any variable"


# ---------------------------------------------------------------------------
# Checking


def _check_citation(cited: int, current: int, role: str) -> str | None:
    if cited < 1 or cited >= current:
        return f"{role} citation {cited} does not point to an earlier line"
    return None


def _check_line(
    theory: TheoryId, lines: tuple[ProofLine, ...], number: int, line: ProofLine
) -> str | None:
    formula = line.formula
    match line.justification:
        case LogicalAxiom(axiom_id):
            known = axiom_id in LOGICAL_AXIOMS or (
                theory.classical and axiom_id in CLASSICAL_AXIOMS
            )
            if not known:
                return f"no logical schema {axiom_id!r} in this theory"
            if not logical_axiom_matches(axiom_id, formula, theory.classical):
                return f"not an instance of logical schema {axiom_id!r}"
        case TheoryAxiom(axiom_id):
            if axiom_id not in THEORY_AXIOMS[theory.base]:
                return f"no axiom schema {axiom_id!r} in {theory.base}"
            if not theory_axiom_matches(
                theory.base, axiom_id, formula, theory.restricted_induction
            ):
                return f"not an instance of {theory.base} schema {axiom_id!r}"
        case ModusPonens(implication, antecedent):
            for cited, role in ((implication, "implication"), (antecedent, "antecedent")):
                bad = _check_citation(cited, number, role)
                if bad:
                    return bad
            expected = Imp(lines[antecedent - 1].formula, formula)
            if lines[implication - 1].formula != expected:
                return (
                    f"line {implication} is not the implication from line "
                    f"{antecedent} to this line"
                )
        case Generalization(source, var):
            bad = _check_citation(source, number, "source")
            if bad:
                return bad
            if formula != Forall(var, lines[source - 1].formula):
                return f"not the generalization of line {source} over {print_variable(var)}"
        case InductionRule(base, step):
            for cited, role in ((base, "zero-case"), (step, "step")):
                bad = _check_citation(cited, number, role)
                if bad:
                    return bad
            return _check_induction(
                theory, formula, lines[base - 1].formula, lines[step - 1].formula
            )
        case _:
            return f"unknown justification {line.justification!r}"
    return None


def check_proof(theory: TheoryId, proof: Proof) -> ProofVerdict:
    """Check every line; accepted proofs prove their last line."""
    if not proof.lines:
        return ProofVerdict(False, reason="a proof needs at least one line")
    for number, line in enumerate(proof.lines, start=1):
        if theory.language not in languages(line.formula):
            return ProofVerdict(
                False,
                line=number,
                reason=f"formula is not in the {theory.base} language",
            )
        if theory.level is not None:
            stage = fragment_of(line.formula)
            if stage > theory.level:
                return ProofVerdict(
                    False,
                    line=number,
                    reason=f"formula needs stage {stage}, theory level is {theory.level}",
                )
        reason = _check_line(theory, proof.lines, number, line)
        if reason is not None:
            return ProofVerdict(False, line=number, reason=reason)
    return ProofVerdict(True, formula=proof.lines[-1].formula)


# ---------------------------------------------------------------------------
# Proof files


def _node_list(node: Node) -> tuple[Node, ...]:
    if not isinstance(node.value, tuple):
        raise node.error(f"expected a list, got {node.value!r}")
    return node.value


def _symbol_head(node: Node) -> tuple[str, tuple[Node, ...]]:
    items = _node_list(node)
    if not items or not isinstance(items[0].value, str):
        raise node.error("expected a list starting with a symbol")
    return items[0].value, items[1:]


def _citation(node: Node) -> int:
    if not isinstance(node.value, int) or node.value < 1:
        raise node.error("line citations are positive integers")
    return node.value


def _parse_justification(node: Node, language: Language) -> Justification:
    head, args = _symbol_head(node)
    if head in ("logical", "axiom"):
        if len(args) != 1 or not isinstance(args[0].value, str):
            raise node.error(f"({head} <id>) takes one schema id")
        return (LogicalAxiom if head == "logical" else TheoryAxiom)(args[0].value)
    if head == "mp":
        if len(args) != 2:
            raise node.error("(mp i j) cites the implication then the antecedent")
        return ModusPonens(_citation(args[0]), _citation(args[1]))
    if head == "gen":
        if len(args) != 2:
            raise node.error("(gen i <variable>) takes a citation and a variable")
        return Generalization(_citation(args[0]), parse_variable(args[1], language))
    if head == "ind":
        if len(args) != 2:
            raise node.error("(ind i j) cites the zero case then the step")
        return InductionRule(_citation(args[0]), _citation(args[1]))
    raise node.error(f"unknown justification {head!r}")


def _parse_line(node: Node, language: Language) -> ProofLine:
    items = _node_list(node)
    if len(items) != 2:
        raise node.error("a proof line is ((formula ...) (by ...))")
    formula_node, by_node = items
    head, args = _symbol_head(formula_node)
    if head != "formula" or len(args) != 1:
        raise formula_node.error("expected (formula <formula>)")
    formula = parse_formula(args[0], language)
    head, args = _symbol_head(by_node)
    if head != "by" or len(args) != 1:
        raise by_node.error("expected (by <justification>)")
    return ProofLine(formula, _parse_justification(args[0], language))


def parse_proof(text: str, language: Language) -> Proof:
    """Parse a proof file against the theory's language."""
    node = read_one(text)
    head, args = _symbol_head(node)
    if head != "proof":
        raise node.error("a proof file is (proof <line>*)")
    return Proof(tuple(_parse_line(item, language) for item in args))


def _print_justification(justification: Justification) -> str:
    match justification:
        case LogicalAxiom(axiom_id):
            return f"(logical {axiom_id})"
        case TheoryAxiom(axiom_id):
            return f"(axiom {axiom_id})"
        case ModusPonens(implication, antecedent):
            return f"(mp {implication} {antecedent})"
        case Generalization(source, var):
            return f"(gen {source} {print_variable(var)})"
        case InductionRule(base, step):
            return f"(ind {base} {step})"
    raise ValueError(f"unknown justification {justification!r}")


def print_proof(proof: Proof) -> str:
    """Canonical proof-file text; parse-print-parse is the identity."""
    if not proof.lines:
        return "(proof)"
    parts = ["(proof"]
    for line in proof.lines:
        formula = print_formula(line.formula)
        parts.append(f"  ((formula {formula}) (by {_print_justification(line.justification)}))")
    return "\n".join(parts) + ")"
