"""A scikit-learn style front-end to the abduction engine.

>>> from bdabduction.estimator import AbductionSolver
>>> solver = AbductionSolver(solution_class="bd-minimal").fit(
...     "theory: p | q\\ntheory: p\\nobserve: !p\\nlanguage: circ\\n")
>>> [str(t) for t in solver.solutions_]
['%p']
>>> solver.predict(["%p", "q"]).tolist()
[True, False]
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .abduction import (SolutionClass, check_candidate, enumerate_solutions,
                        is_bd_minimal, is_consistent, is_proper_solution,
                        is_solution, is_theory_minimal, explains)
from .reduction import solve_via_classical
from .validation import check_problem, check_terms

__all__ = ["AbductionSolver", "FEATURES"]

FEATURES = ("consistent", "explains", "solution", "proper", "bd_minimal", "theory_minimal")


class AbductionSolver(BaseEstimator):
    """Fit on a problem; predict class membership of candidate terms.

    ``fit`` accepts a problem object, a problem-file path or its text.
    ``transform`` returns one boolean row per candidate with the columns
    of :data:`FEATURES`.
    """

    def __init__(self, solution_class="proper", max_size=None, via="native"):
        self.solution_class = solution_class
        self.max_size = max_size
        self.via = via

    def fit(self, X, y=None):
        cls = SolutionClass(self.solution_class)
        if self.via not in ("native", "classical"):
            raise ValueError(f"via must be 'native' or 'classical', not {self.via!r}")
        self.problem_ = check_problem(X)
        solve = enumerate_solutions if self.via == "native" else solve_via_classical
        self.solutions_ = solve(self.problem_, cls, self.max_size)
        return self

    def _candidates(self, X):
        if not hasattr(self, "problem_"):
            raise AttributeError("call fit before predict/transform")
        return check_terms(X, self.problem_.language)

    def predict(self, X) -> np.ndarray:
        cls = SolutionClass(self.solution_class)
        terms = self._candidates(X)
        return np.array([bool(check_candidate(self.problem_, t, cls, self.max_size))
                         for t in terms], dtype=bool)

    def transform(self, X) -> np.ndarray:
        P = self.problem_ if hasattr(self, "problem_") else None
        rows = []
        for t in self._candidates(X):
            rows.append([is_consistent(P, t), explains(P, t), is_solution(P, t),
                         is_proper_solution(P, t), is_bd_minimal(P, t),
                         is_theory_minimal(P, t)])
        return np.array(rows, dtype=bool).reshape(-1, len(FEATURES))

    def fit_predict(self, X, candidates):
        return self.fit(X).predict(candidates)
