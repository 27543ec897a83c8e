"""Proof corpus: builders, frozen-file access, and single-node mutants.

The corpus proper lives under ``tests/data/proofs/<theory>/<name>.sexp``
as printed proof files; ``build_corpus`` reconstructs the same proofs
programmatically so a test can assert the files are fresh.  Run this
module directly to (re)write the files.

``mutants`` produces the single-node corruptions the kernel must
reject: one formula node toggled, one citation bumped, one axiom id
swapped.  Every operator changes exactly one node of one line.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path

from formalbench import axioms, coding
from formalbench.expressions import (
    CLASS,
    NUM,
    OP,
    Add,
    And,
    Bot,
    Eq,
    Exists,
    Forall,
    Imp,
    One,
    Or,
    SortError,
    Variable,
    Zero,
    leveled_set,
    substitute,
    typed_set,
)
from formalbench.proofs import (
    Generalization,
    InductionRule,
    LogicalAxiom,
    ModusPonens,
    Proof,
    ProofLine,
    TheoryAxiom,
    induction_step,
)

DATA_DIR = Path(__file__).parent / "data" / "proofs"

_n = Variable(0, NUM)
_m = Variable(1, NUM)
_x = Variable(0, OP)
_y = Variable(1, OP)


def _proof(*lines: tuple) -> Proof:
    return Proof(tuple(ProofLine(formula, just) for formula, just in lines))


def _shift(lines: list[tuple], offset: int) -> list[tuple]:
    """Shift block-relative citations to absolute line numbers."""
    out = []
    for formula, just in lines:
        match just:
            case ModusPonens(i, j):
                just = ModusPonens(i + offset, j + offset)
            case Generalization(i, var):
                just = Generalization(i + offset, var)
            case InductionRule(i, j):
                just = InductionRule(i + offset, j + offset)
        out.append((formula, just))
    return out


# ---------------------------------------------------------------------------
# Shared arithmetic proofs (valid in every numeric theory)


def _add_zero_general() -> Proof:
    add_zero = axioms.peano_add_zero(_n)
    return _proof(
        (add_zero, TheoryAxiom("add-zero")),
        (Forall(_n, add_zero), Generalization(1, _n)),
    )


def _weaken_chain() -> Proof:
    phi = axioms.peano_succ_nonzero(_n)
    psi = axioms.peano_add_zero(_n)
    return _proof(
        (phi, TheoryAxiom("succ-nonzero")),
        (Imp(phi, Imp(psi, phi)), LogicalAxiom("k")),
        (Imp(psi, phi), ModusPonens(2, 1)),
    )


def _exists_refl() -> Proof:
    refl0 = Eq(Zero(), Zero())
    return _proof(
        (refl0, LogicalAxiom("eq-refl")),
        (Imp(refl0, Exists(_n, Eq(_n, _n))), LogicalAxiom("exists-intro")),
        (Exists(_n, Eq(_n, _n)), ModusPonens(2, 1)),
    )


def _univ_inst_one() -> Proof:
    add_zero = axioms.peano_add_zero(_n)
    inst = Eq(Add(One(), Zero()), One())
    return _proof(
        (add_zero, TheoryAxiom("add-zero")),
        (Forall(_n, add_zero), Generalization(1, _n)),
        (Imp(Forall(_n, add_zero), inst), LogicalAxiom("univ-inst")),
        (inst, ModusPonens(3, 2)),
    )


def _induction_schema() -> Proof:
    return _proof(
        (axioms.induction_axiom(_n, axioms.peano_add_zero(_n)), TheoryAxiom("induction")),
    )


_NUMERIC_SHARED = (
    ("add-zero-general", _add_zero_general),
    ("weaken-chain", _weaken_chain),
    ("exists-refl", _exists_refl),
    ("univ-inst-one", _univ_inst_one),
    ("induction-schema", _induction_schema),
)


# ---------------------------------------------------------------------------
# Operations-theory proofs


def _comb_k_general() -> Proof:
    comb_k = axioms.bt_comb_k(_x, _y)
    return _proof(
        (comb_k, TheoryAxiom("comb-k")),
        (Forall(_y, comb_k), Generalization(1, _y)),
        (Forall(_x, Forall(_y, comb_k)), Generalization(2, _x)),
    )


def _proj_weaken() -> Proof:
    proj = axioms.bt_proj_pair(1, _x, _y)
    nonzero = axioms.bt_pair_nonzero(_x, _y)
    return _proof(
        (proj, TheoryAxiom("proj1-pair")),
        (Imp(proj, Imp(nonzero, proj)), LogicalAxiom("k")),
        (Imp(nonzero, proj), ModusPonens(2, 1)),
    )


def _case_eq_general() -> Proof:
    case_eq = axioms.bt_case_eq(_x, _y, _n, _m)
    return _proof(
        (case_eq, TheoryAxiom("case-eq")),
        (Forall(_m, case_eq), Generalization(1, _m)),
        (Forall(_n, Forall(_m, case_eq)), Generalization(2, _n)),
    )


def _empty_set_comprehension() -> Proof:
    code = coding.encode_abstraction(Variable(0, OP), [], Bot())
    return _proof((axioms.bt_comprehension(code), TheoryAxiom("comprehension")))


def _induction_proof(phi, phi_lines, theta_lines, exists_line) -> Proof:
    """The induction rule driven end to end.

    ``phi`` must have exactly ``n`` free.  ``phi_lines`` derives phi and
    ``theta_lines`` derives phi[n:=m], both with block-relative
    citations ending on their formula; ``exists_line`` is the axiom line
    for the successor's existence.  The skeleton derives the zero case
    by instantiating the generalization of phi, conjoins the successor
    witness with theta under the existential, and closes with the rule.
    """
    theta = substitute(phi, _n, _m)
    step = induction_step(phi, _n, _m)
    named = step.right.body.left
    witnessed = And(named, theta)
    exists_witnessed = Exists(_m, witnessed)
    lines = list(phi_lines)
    phi_line = len(lines)
    lines.append((Forall(_n, phi), Generalization(phi_line, _n)))
    lines.append(
        (Imp(Forall(_n, phi), substitute(phi, _n, Zero())), LogicalAxiom("univ-inst"))
    )
    lines.append((substitute(phi, _n, Zero()), ModusPonens(phi_line + 2, phi_line + 1)))
    base_line = len(lines)
    lines.extend(_shift(theta_lines, len(lines)))
    theta_line = len(lines)
    lines.append((Imp(named, Imp(theta, witnessed)), LogicalAxiom("and-intro")))
    lines.append(
        (
            Imp(
                Imp(named, Imp(theta, witnessed)),
                Imp(Imp(named, theta), Imp(named, witnessed)),
            ),
            LogicalAxiom("s"),
        )
    )
    lines.append(
        (Imp(Imp(named, theta), Imp(named, witnessed)), ModusPonens(len(lines), len(lines) - 1))
    )
    lines.append((Imp(theta, Imp(named, theta)), LogicalAxiom("k")))
    lines.append((Imp(named, theta), ModusPonens(len(lines), theta_line)))
    lines.append((Imp(named, witnessed), ModusPonens(len(lines) - 2, len(lines))))
    conjunction_line = len(lines)
    lines.append((Imp(witnessed, exists_witnessed), LogicalAxiom("exists-intro")))
    lines.append(
        (
            Imp(Imp(witnessed, exists_witnessed), Imp(named, Imp(witnessed, exists_witnessed))),
            LogicalAxiom("k"),
        )
    )
    lines.append(
        (Imp(named, Imp(witnessed, exists_witnessed)), ModusPonens(len(lines), len(lines) - 1))
    )
    lines.append(
        (
            Imp(
                Imp(named, Imp(witnessed, exists_witnessed)),
                Imp(Imp(named, witnessed), Imp(named, exists_witnessed)),
            ),
            LogicalAxiom("s"),
        )
    )
    lines.append(
        (
            Imp(Imp(named, witnessed), Imp(named, exists_witnessed)),
            ModusPonens(len(lines), len(lines) - 1),
        )
    )
    lines.append((Imp(named, exists_witnessed), ModusPonens(len(lines), conjunction_line)))
    lines.append((Forall(_m, Imp(named, exists_witnessed)), Generalization(len(lines), _m)))
    lines.append(
        (
            Imp(
                Forall(_m, Imp(named, exists_witnessed)),
                Imp(Exists(_m, named), exists_witnessed),
            ),
            LogicalAxiom("exists-elim"),
        )
    )
    lines.append(
        (Imp(Exists(_m, named), exists_witnessed), ModusPonens(len(lines), len(lines) - 1))
    )
    lines.append(exists_line)
    lines.append((exists_witnessed, ModusPonens(len(lines) - 1, len(lines))))
    lines.append((Imp(exists_witnessed, Imp(phi, exists_witnessed)), LogicalAxiom("k")))
    lines.append((Imp(phi, exists_witnessed), ModusPonens(len(lines), len(lines) - 1)))
    step_line = len(lines)
    if lines[step_line - 1][0] != step:
        raise AssertionError("assembled step premise does not match the rule")
    lines.append((phi, InductionRule(base_line, step_line)))
    return _proof(*lines)


def _num_named_induction() -> Proof:
    phi = axioms.bt_num_named(_n)
    theta = axioms.bt_num_named(_m)
    return _induction_proof(
        phi,
        [(phi, TheoryAxiom("num-named"))],
        [(theta, TheoryAxiom("num-named"))],
        (axioms.bt_pair_num_closed(_n, value=_m), TheoryAxiom("pair-num-closed")),
    )


def _set_binder_induction() -> Proof:
    """Induction whose conclusion quantifies a typed set.

    Plain operations theories accept it; the restricted-induction flag
    must reject it at the rule application.
    """
    X = Variable(0, typed_set(1))
    phi = Exists(X, Eq(_n, _n))
    theta = Exists(X, Eq(_m, _m))
    return _induction_proof(
        phi,
        [
            (Eq(_n, _n), LogicalAxiom("eq-refl")),
            (Imp(Eq(_n, _n), phi), LogicalAxiom("exists-intro")),
            (phi, ModusPonens(2, 1)),
        ],
        [
            (Eq(_m, _m), LogicalAxiom("eq-refl")),
            (Imp(Eq(_m, _m), theta), LogicalAxiom("exists-intro")),
            (theta, ModusPonens(2, 1)),
        ],
        (axioms.bt_pair_num_closed(_n, value=_m), TheoryAxiom("pair-num-closed")),
    )


def _dne_instance() -> Proof:
    refl = axioms.bt_eq_op_refl(_x)
    return _proof(
        (Imp(Imp(Imp(refl, Bot()), Bot()), refl), LogicalAxiom("dne")),
    )


# ---------------------------------------------------------------------------
# Theory-specific single-axiom proofs


def _sa_comprehension() -> Proof:
    z = Variable(0, leveled_set(1))
    return _proof((axioms.sa_comprehension(z, _n, Eq(_n, _n)), TheoryAxiom("comprehension")))


def _sa_choice() -> Proof:
    z = Variable(0, leveled_set(1))
    return _proof((axioms.sa_choice(_n, z, Eq(_n, _n)), TheoryAxiom("choice")))


def _ar_comprehension() -> Proof:
    z = Variable(0, CLASS)
    return _proof((axioms.ar_comprehension(z, _n, Eq(_n, _n)), TheoryAxiom("comprehension")))


def _ar_unique_choice() -> Proof:
    z = Variable(0, CLASS)
    return _proof((axioms.ar_unique_choice(_n, z, Eq(_n, _n)), TheoryAxiom("unique-choice")))


def _ar_delta_comprehension() -> Proof:
    v = Variable(1, CLASS)
    u = Variable(2, CLASS)
    return _proof(
        (
            axioms.ar_delta_comprehension(_n, v, u, Eq(_n, _n), Eq(_n, _n)),
            TheoryAxiom("delta-comprehension"),
        )
    )


def _truth_falsum_general() -> Proof:
    body = axioms.tr_falsum(1)
    env = body.left.env
    return _proof(
        (body, TheoryAxiom("truth-falsum")),
        (Forall(env, body), Generalization(1, env)),
    )


def _truth_axiom(name: str, formula) -> Proof:
    return _proof((formula, TheoryAxiom(name)))


# ---------------------------------------------------------------------------
# The corpus


def build_corpus() -> dict[str, list[tuple[str, Proof]]]:
    """Every shipped proof, keyed by the theory that accepts it."""
    operations = [
        ("comb-k-general", _comb_k_general()),
        ("proj-weaken", _proj_weaken()),
        ("case-eq-general", _case_eq_general()),
        ("empty-set-comprehension", _empty_set_comprehension()),
        ("num-named-induction", _num_named_induction()),
    ]
    numeric = [(name, build()) for name, build in _NUMERIC_SHARED]
    return {
        "BT": operations + [("set-binder-induction", _set_binder_induction())],
        "BTcl": operations + [("dne-instance", _dne_instance())],
        "SA": numeric
        + [
            ("simple-comprehension", _sa_comprehension()),
            ("simple-choice", _sa_choice()),
        ],
        "Ar": numeric + [("arithmetical-comprehension", _ar_comprehension())],
        "ArACBang": numeric
        + [
            ("arithmetical-comprehension", _ar_comprehension()),
            ("unique-choice", _ar_unique_choice()),
        ],
        "ArDelta11C": numeric
        + [
            ("arithmetical-comprehension", _ar_comprehension()),
            ("delta-comprehension", _ar_delta_comprehension()),
        ],
        "PATr": numeric
        + [
            ("truth-falsum-general", _truth_falsum_general()),
            ("truth-wf", _truth_axiom("truth-wf", axioms.tr_wf(1))),
            ("truth-eq", _truth_axiom("truth-eq", axioms.tr_eq(1))),
            ("truth-and", _truth_axiom("truth-and", axioms.tr_conn(1, coding.TAG_AND))),
            ("truth-lift", _truth_axiom("truth-lift", axioms.tr_lift(1))),
            ("truth-exists", _truth_axiom("truth-exists", axioms.tr_quant(1, coding.TAG_EXISTS))),
        ],
    }


# ---------------------------------------------------------------------------
# Single-node mutants


def _rewrite_first(node, transform):
    """Apply transform at the first node (preorder) where it returns one."""
    replacement = transform(node)
    if replacement is not None:
        return replacement, True
    if not dataclasses.is_dataclass(node):
        return node, False
    for field in dataclasses.fields(node):
        part = getattr(node, field.name)
        if not dataclasses.is_dataclass(part):
            continue
        rewritten, found = _rewrite_first(part, transform)
        if found:
            return dataclasses.replace(node, **{field.name: rewritten}), True
    return node, False


def _toggle(before, after):
    def transform(node):
        if type(node) is type(before) and node == before:
            return after
        if isinstance(node, (And, Or)) and isinstance(before, (And, Or)):
            if type(node) is type(before):
                return type(after)(node.left, node.right)
        return None

    return transform


_NODE_TOGGLES = (
    ("zero-to-one", _toggle(Zero(), One())),
    ("one-to-zero", _toggle(One(), Zero())),
    ("and-to-or", _toggle(And(Bot(), Bot()), Or(Bot(), Bot()))),
    ("or-to-and", _toggle(Or(Bot(), Bot()), And(Bot(), Bot()))),
)


def _justification_mutants(just, line_count: int):
    match just:
        case LogicalAxiom(axiom_id):
            pool = axioms.LOGICAL_AXIOMS + axioms.CLASSICAL_AXIOMS
            swapped = pool[(pool.index(axiom_id) + 1) % len(pool)]
            yield "logical-id-swap", LogicalAxiom(swapped)
        case TheoryAxiom(axiom_id):
            yield "theory-id-swap", TheoryAxiom(axiom_id + "-mutant")
            yield "theory-to-logical", LogicalAxiom("k")
        case ModusPonens(implication, antecedent):
            yield "mp-implication-bump", ModusPonens(implication + 1, antecedent)
            yield "mp-role-swap", ModusPonens(antecedent, implication)
        case Generalization(source, var):
            yield "gen-source-bump", Generalization(source + 1, var)
            yield "gen-var-bump", Generalization(
                source, Variable(var.index + 1, var.sort)
            )
        case InductionRule(base, step):
            yield "ind-base-swap", InductionRule(step, base)


def mutants(proof: Proof):
    """Yield (label, mutant) pairs, each differing in exactly one node.

    Formula toggles hit the first matching node of each line; citation
    and id corruptions rewrite one justification.  Mutations whose
    result cannot even be constructed (sort errors) are skipped — those
    are not proofs at all.
    """
    for index, line in enumerate(proof.lines):
        for label, transform in _NODE_TOGGLES:
            try:
                formula, found = _rewrite_first(line.formula, transform)
            except SortError:
                continue
            if not found:
                continue
            lines = list(proof.lines)
            lines[index] = ProofLine(formula, line.justification)
            yield f"line{index + 1}-{label}", Proof(tuple(lines))
        for label, corrupted in _justification_mutants(
            line.justification, len(proof.lines)
        ):
            lines = list(proof.lines)
            lines[index] = ProofLine(line.formula, corrupted)
            yield f"line{index + 1}-{label}", Proof(tuple(lines))


# ---------------------------------------------------------------------------
# Freezing


def write_corpus() -> None:
    from formalbench.proofs import print_proof

    for theory, entries in build_corpus().items():
        directory = DATA_DIR / theory
        directory.mkdir(parents=True, exist_ok=True)
        for name, proof in entries:
            (directory / f"{name}.sexp").write_text(print_proof(proof) + "\n")
            print(f"wrote {theory}/{name}.sexp ({len(proof.lines)} lines)")


if __name__ == "__main__":
    write_corpus()
