"""Abductive reasoning in Belnap–Dunn four-valued logic and its expansions
with a consistency operator (∘) and an information operator (△)."""

from .abduction import (AbductionProblem, SolutionClass, check_candidate,
                        enumerate_solutions, is_bd_minimal, is_necessary,
                        is_proper_solution, is_relevant, is_solution,
                        is_theory_minimal, make_problem)
from .errors import (BDError, FragmentError, ParseError, ProblemError,
                     ResourceLimitError, TermError)
from .formula import (And, Circ, Formula, Fragment, Neg, Or, Tri, Var, flatten,
                      fragment, nnf, parse, props, to_cnf, to_dnf, to_str)
from .literals import Language, LitKind, Literal, Term
from .semantics import (B, F, N, T, TruthValue, bd_entails_oracle, bd_sat,
                        evaluate, strong_equiv, weak_equiv)

__version__ = "0.1.0"

__all__ = [
    "AbductionProblem", "SolutionClass", "check_candidate", "enumerate_solutions",
    "is_bd_minimal", "is_necessary", "is_proper_solution", "is_relevant",
    "is_solution", "is_theory_minimal", "make_problem",
    "BDError", "FragmentError", "ParseError", "ProblemError", "ResourceLimitError",
    "TermError",
    "And", "Circ", "Formula", "Fragment", "Neg", "Or", "Tri", "Var", "flatten",
    "fragment", "nnf", "parse", "props", "to_cnf", "to_dnf", "to_str",
    "Language", "LitKind", "Literal", "Term",
    "B", "F", "N", "T", "TruthValue", "bd_entails_oracle", "bd_sat", "evaluate",
    "strong_equiv", "weak_equiv", "AbductionSolver",
]


def __getattr__(name):
    # keep scikit-learn off the import path unless the estimator is used
    if name == "AbductionSolver":
        from .estimator import AbductionSolver
        return AbductionSolver
    raise AttributeError(name)
