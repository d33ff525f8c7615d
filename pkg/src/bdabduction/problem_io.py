"""Reading and writing problem files.

One ``key: value`` per line::

    theory: p | q          # repeatable
    observe: q             # exactly once
    hyp: @p                # repeatable; none means the default set
    language: circ         # exactly once (circ or triangle)

Lines whose first non-blank character is ``#`` are comments.  A file
starting with ``classical: true`` holds a classical problem instead; it
has no ``language`` line and its formulas use ``~ & |``.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Union

from .abduction import AbductionProblem, make_problem
from .classical import cparse
from .errors import ParseError, TermError
from .formula import parse
from .literals import Language, Literal
from .reduction import ClassicalProblem, clit_key

__all__ = ["parse_problem", "load_problem", "format_problem", "bundled_problems",
           "bundled_problem_path", "load_theory"]

_KEYS = {"theory", "observe", "hyp", "language", "classical"}


def _lines(text):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in _KEYS:
            raise ParseError(f"line {n}: unknown or missing key in {line!r}")
        yield n, key, value.strip()


def _wrap(n, fn, value):
    try:
        return fn(value)
    except (ParseError, TermError) as exc:
        raise ParseError(f"line {n}: {exc}") from None


def parse_problem(text: str) -> Union[AbductionProblem, ClassicalProblem]:
    entries = list(_lines(text))
    classical = bool(entries) and entries[0][1] == "classical"
    if classical:
        if entries[0][2].lower() != "true":
            raise ParseError(f"line {entries[0][0]}: expected 'classical: true'")
        entries = entries[1:]
    theory, observe, hyps, language = [], [], [], []
    for n, key, value in entries:
        if key == "classical":
            raise ParseError(f"line {n}: 'classical' must be the first entry")
        if key == "language":
            if classical:
                raise ParseError(f"line {n}: classical problems take no language")
            if value not in ("circ", "triangle"):
                raise ParseError(f"line {n}: language must be circ or triangle")
            language.append(Language(value))
            continue
        if classical:
            f = _wrap(n, cparse, value)
        elif key == "hyp":
            f = _wrap(n, Literal.parse, value)
        else:
            f = _wrap(n, parse, value)
        {"theory": theory, "observe": observe, "hyp": hyps}[key].append(f)
    if len(observe) != 1:
        raise ParseError(f"expected exactly one 'observe' line, found {len(observe)}")
    if classical:
        return ClassicalProblem(tuple(theory), observe[0],
                                tuple(sorted(set(hyps), key=clit_key)))
    if len(language) != 1:
        raise ParseError(f"expected exactly one 'language' line, found {len(language)}")
    return make_problem(theory, observe[0], hyps or None, language[0])


def load_problem(path) -> Union[AbductionProblem, ClassicalProblem]:
    return parse_problem(Path(path).read_text(encoding="utf-8"))


def format_problem(problem) -> str:
    """File text of a problem (hypotheses are written out even when they
    are the default set)."""
    return str(problem) + "\n"


def load_theory(path) -> list:
    """Formulas of a theory file: one per line, ``#`` comment lines."""
    out = []
    for n, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(_wrap(n, parse, line))
    return out


def bundled_problems() -> list[str]:
    """Names of the example problem files shipped with the package."""
    root = resources.files("bdabduction") / "problems"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".bd"))


def bundled_problem_path(name: str) -> Path:
    path = Path(str(resources.files("bdabduction") / "problems" / name))
    if not path.exists():
        raise FileNotFoundError(name)
    return path
