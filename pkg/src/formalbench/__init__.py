"""Workbench for a family of interrelated formal theories.

The package splits along the objects it manipulates:

* :mod:`~formalbench.expressions` — formulas and sorts of the four languages;
* :mod:`~formalbench.external` — applicative terms over the operation constants;
* :mod:`~formalbench.sexpr` — canonical text surface for both;
* :mod:`~formalbench.coding` — numeric codes and the coded-syntax predicates;
* :mod:`~formalbench.combinators` — rewrite engine, numerals, bracket
  abstraction, realizer extraction;
* :mod:`~formalbench.classifiers` — elementary and simple classes, fragment
  stages;
* :mod:`~formalbench.arithmetization` — coded-sequence talk inside the leveled
  language;
* :mod:`~formalbench.truthsets` — defining clauses for the stagewise truth sets;
* :mod:`~formalbench.translations` — the four interpretations between theories;
* :mod:`~formalbench.axioms` — axiom schemata and instance recognizers;
* :mod:`~formalbench.proofs` — Hilbert-style checker over the theory bases;
* :mod:`~formalbench.evaluator` — bounded semantics over the standard model;
* :mod:`~formalbench.cli` — the ``formalbench`` command-line entry point.

The names most sessions start from are re-exported here.
"""

from .classifiers import ClassReport, fragment_of, is_elementary, is_k_simple
from .coding import decode_external_term, decode_formula, encode, pair, unpair
from .combinators import (
    Disjunct,
    ExtractResult,
    ReductionResult,
    close_term,
    extract_disjunct,
    lambda_abstract,
    reduce_term,
    successor_term,
)
from .evaluator import TruthVerdict, eval_arithmetic, eval_closed_term, tr_eval
from .expressions import Language, SortError, Variable, free_vars, languages
from .external import App, ExternalTerm
from .proofs import (
    Proof,
    ProofVerdict,
    TheoryId,
    check_proof,
    parse_proof,
    parse_theory,
    print_proof,
)
from .sexpr import ParseError, parse_formula, parse_term, print_formula, print_term
from .translations import (
    collapse_sorts,
    eliminate_defined,
    negative_translation,
    to_operations,
    truth_as_membership,
)

__version__ = "0.1.0"

__all__ = [
    "App",
    "ClassReport",
    "Disjunct",
    "ExternalTerm",
    "ExtractResult",
    "Language",
    "ParseError",
    "Proof",
    "ProofVerdict",
    "ReductionResult",
    "SortError",
    "TheoryId",
    "TruthVerdict",
    "Variable",
    "check_proof",
    "close_term",
    "collapse_sorts",
    "decode_external_term",
    "decode_formula",
    "eliminate_defined",
    "encode",
    "eval_arithmetic",
    "eval_closed_term",
    "extract_disjunct",
    "fragment_of",
    "free_vars",
    "is_elementary",
    "is_k_simple",
    "lambda_abstract",
    "languages",
    "negative_translation",
    "pair",
    "parse_formula",
    "parse_proof",
    "parse_term",
    "parse_theory",
    "print_formula",
    "print_proof",
    "print_term",
    "reduce_term",
    "successor_term",
    "to_operations",
    "tr_eval",
    "truth_as_membership",
    "unpair",
    "__version__",
]
