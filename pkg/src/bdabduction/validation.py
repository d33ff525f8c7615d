"""Input coercion shared by the estimator and the CLI."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Union

from .abduction import AbductionProblem
from .errors import ProblemError, TermError
from .literals import Language, Term

__all__ = ["check_problem", "check_term", "check_terms"]


def check_problem(obj) -> AbductionProblem:
    """An :class:`AbductionProblem` from a problem, a path, or file text."""
    from .problem_io import load_problem, parse_problem

    if isinstance(obj, AbductionProblem):
        return obj
    if isinstance(obj, Path) or (isinstance(obj, str) and "\n" not in obj
                                 and Path(obj).is_file()):
        problem = load_problem(obj)
    elif isinstance(obj, str):
        problem = parse_problem(obj)
    else:
        raise ProblemError(f"cannot read a problem from {type(obj).__name__}")
    if not isinstance(problem, AbductionProblem):
        raise ProblemError("expected a four-valued problem, got a classical one")
    return problem


def check_term(obj, language: Union[Language, str]) -> Term:
    language = Language(language)
    if isinstance(obj, Term):
        if obj.language is not language:
            raise TermError(f"expected a {language.value} term")
        return obj
    if isinstance(obj, str):
        return Term.parse(obj, language)
    raise TermError(f"cannot read a term from {type(obj).__name__}")


def check_terms(objs: Iterable, language) -> list[Term]:
    if isinstance(objs, (str, Term)):
        objs = [objs]
    return [check_term(o, language) for o in objs]
