"""Formulas of the four-valued language with ``¬ ∧ ∨ ∘ △``.

Surface syntax (ASCII)::

    !  negation          @  consistency (∘)     #  information (△)
    %  unreliability, sugar for ``!@``
    &  conjunction       |  disjunction          ( ) grouping

Unary operators bind tighter than ``&``, which binds tighter than ``|``.
Binary operators associate to the left.  Variables match
``[a-z][a-zA-Z0-9_]*`` and may not contain ``__`` (reserved for the
signed variables of the classical translation).

>>> f = parse("!#p | q & %r")
>>> f
Or(left=Neg(arg=Tri(arg=Var(name='p'))), right=And(left=Var(name='q'), right=Neg(arg=Circ(arg=Var(name='r')))))
>>> to_str(f)
'!#p | q & %r'
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Union

from .errors import FragmentError, ParseError

__all__ = [
    "Var", "Neg", "And", "Or", "Circ", "Tri", "Formula", "Fragment",
    "parse", "to_str", "props", "fragment", "subformulas", "conj", "disj",
    "bullet", "nnf", "flatten", "expand_circ", "to_dnf", "to_cnf",
    "dnf_terms", "cnf_clauses", "constants", "is_literal_shape",
]


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return to_str(self)


@dataclass(frozen=True)
class Neg:
    arg: "Formula"

    def __str__(self):
        return to_str(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_str(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_str(self)


@dataclass(frozen=True)
class Circ:
    arg: "Formula"

    def __str__(self):
        return to_str(self)


@dataclass(frozen=True)
class Tri:
    arg: "Formula"

    def __str__(self):
        return to_str(self)


Formula = Union[Var, Neg, And, Or, Circ, Tri]


class Fragment(enum.IntFlag):
    """Language fragments; ``CIRC | TRIANGLE == FULL``."""

    BD = 0
    CIRC = 1
    TRIANGLE = 2
    FULL = 3


def bullet(f: Formula) -> Formula:
    """``•f``, i.e. ``¬∘f``."""
    return Neg(Circ(f))


def conj(fs: Iterable[Formula]) -> Formula:
    """Left-associated conjunction of a non-empty sequence."""
    fs = list(fs)
    if not fs:
        raise ValueError("empty conjunction")
    return reduce(And, fs)


def disj(fs: Iterable[Formula]) -> Formula:
    """Left-associated disjunction of a non-empty sequence."""
    fs = list(fs)
    if not fs:
        raise ValueError("empty disjunction")
    return reduce(Or, fs)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:([a-z][a-zA-Z0-9_]*)|(\S)|$)")


def tokenize(text: str, symbols: str) -> list[tuple[str, str, int]]:
    """Split ``text`` into ``(kind, value, position)`` triples.

    ``kind`` is ``"var"`` or ``"sym"``; a final ``("end", "", len)`` is
    appended.  Characters outside ``symbols`` raise :class:`ParseError`.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            tokens.append(("var", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            ch = m.group(2)
            if ch not in symbols:
                raise ParseError(f"unexpected character {ch!r}", m.start(2))
            tokens.append(("sym", ch, m.start(2)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, allow_reserved=False):
        if not text.strip():
            raise ParseError("empty formula", 0)
        self.tokens = tokenize(text, "!@#%&|()")
        self.i = 0
        self.allow_reserved = allow_reserved

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            found = repr(val) if kind != "end" else "end of input"
            raise ParseError(f"expected {value!r}, found {found}", pos)

    def parse(self):
        f = self.disjunction()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return f

    def disjunction(self):
        f = self.conjunction()
        while self.peek()[1] == "|" and self.peek()[0] == "sym":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.unary()
        while self.peek()[1] == "&" and self.peek()[0] == "sym":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        kind, val, pos = self.take()
        if kind == "var":
            if "__" in val and not self.allow_reserved:
                raise ParseError(f"variable {val!r} contains reserved '__'", pos)
            return Var(val)
        if kind == "sym":
            if val == "!":
                return Neg(self.unary())
            if val == "@":
                return Circ(self.unary())
            if val == "#":
                return Tri(self.unary())
            if val == "%":
                return Neg(Circ(self.unary()))
            if val == "(":
                f = self.disjunction()
                self.expect(")")
                return f
        found = repr(val) if kind != "end" else "end of input"
        raise ParseError(f"expected a formula, found {found}", pos)


def parse(text: str) -> Formula:
    """Parse ASCII formula text into an AST."""
    return _Parser(text).parse()


# ---------------------------------------------------------------- printing

_PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3


def _prec(f):
    if isinstance(f, Or):
        return _PREC_OR
    if isinstance(f, And):
        return _PREC_AND
    return _PREC_UNARY


def to_str(f: Formula) -> str:
    """Render ``f`` with the minimum of parentheses; ``¬∘`` prints as ``%``."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Neg):
        if isinstance(f.arg, Circ):
            return "%" + _unary_operand(f.arg.arg)
        return "!" + _unary_operand(f.arg)
    if isinstance(f, Circ):
        return "@" + _unary_operand(f.arg)
    if isinstance(f, Tri):
        return "#" + _unary_operand(f.arg)
    op, prec = (" & ", _PREC_AND) if isinstance(f, And) else (" | ", _PREC_OR)
    left = to_str(f.left)
    if _prec(f.left) < prec:
        left = f"({left})"
    right = to_str(f.right)
    # left associativity: an equal-precedence right operand needs parentheses
    if _prec(f.right) <= prec:
        right = f"({right})"
    return left + op + right


def _unary_operand(f):
    s = to_str(f)
    return s if _prec(f) == _PREC_UNARY else f"({s})"


# ---------------------------------------------------------------- queries

def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal of all subformulas, ``f`` included."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, (And, Or)):
            stack.append(g.right)
            stack.append(g.left)
        elif not isinstance(g, Var):
            stack.append(g.arg)


def props(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Var))


def fragment(f: Formula) -> Fragment:
    tag = Fragment.BD
    for g in subformulas(f):
        if isinstance(g, Circ):
            tag |= Fragment.CIRC
        elif isinstance(g, Tri):
            tag |= Fragment.TRIANGLE
    return tag


def constants(var: str = "p") -> dict[str, Formula]:
    """The defined constants over ``var``: always-``T`` and always-``F``
    formulas of the ∘- and △-expansions."""
    p = Var(var)
    return {
        "top_circ": Circ(Circ(p)),
        "bot_circ": Neg(Circ(Circ(p))),
        "top_tri": Or(Tri(p), Neg(Tri(p))),
        "bot_tri": And(Tri(p), Neg(Tri(p))),
    }


def is_literal_shape(f: Formula) -> bool:
    """True for the L△-literals and the atomic L∘-literals."""
    if isinstance(f, Var):
        return True
    if isinstance(f, (Circ, Tri)):
        return isinstance(f.arg, Var) or (
            isinstance(f, Tri) and isinstance(f.arg, Neg) and isinstance(f.arg.arg, Var))
    if isinstance(f, Neg):
        g = f.arg
        if isinstance(g, Var):
            return True
        if isinstance(g, Circ):
            return isinstance(g.arg, Var)
        if isinstance(g, Tri):
            return isinstance(g.arg, Var) or (
                isinstance(g.arg, Neg) and isinstance(g.arg.arg, Var))
    return False


# ---------------------------------------------------------------- rewriting

def nnf(f: Formula, opaque_circ: bool = False) -> Formula:
    """Strongly equivalent negation normal form.

    The result is built with ``∧``/``∨`` from the literals ``p, ¬p, △p,
    ¬△p, △¬p, ¬△¬p``.  Formulas containing ``∘`` are rejected unless
    ``opaque_circ`` is set, in which case ``∘φ`` and ``•φ`` are kept as
    indivisible literals (nothing under ``∘`` is rewritten).
    """
    return _lit(f, False, opaque_circ)


def _lit(f, neg, opaque):
    # NNF of f (neg=False) or of ¬f (neg=True)
    if isinstance(f, Var):
        return Neg(f) if neg else f
    if isinstance(f, Neg):
        return _lit(f.arg, not neg, opaque)
    if isinstance(f, And):
        a, b = _lit(f.left, neg, opaque), _lit(f.right, neg, opaque)
        return Or(a, b) if neg else And(a, b)
    if isinstance(f, Or):
        a, b = _lit(f.left, neg, opaque), _lit(f.right, neg, opaque)
        return And(a, b) if neg else Or(a, b)
    if isinstance(f, Tri):
        return _tri(f.arg, False, neg, opaque)
    if isinstance(f, Circ):
        if not opaque:
            raise FragmentError(f"∘ not allowed here: {to_str(f)}")
        return Neg(f) if neg else f
    raise TypeError(f"not a formula: {f!r}")


def _tri(g, inner_neg, outer_neg, opaque):
    # NNF of △g' (outer_neg=False) or ¬△g', where g' = ¬g if inner_neg else g
    if isinstance(g, Var):
        core = Tri(Neg(g)) if inner_neg else Tri(g)
        return Neg(core) if outer_neg else core
    if isinstance(g, Neg):
        return _tri(g.arg, not inner_neg, outer_neg, opaque)
    if isinstance(g, (And, Or)):
        # De Morgan inside, then △ distributes over both ∧ and ∨
        is_and = isinstance(g, And) != inner_neg
        a = _tri(g.left, inner_neg, outer_neg, opaque)
        b = _tri(g.right, inner_neg, outer_neg, opaque)
        # ¬△ turns the distributed connective into its dual
        return And(a, b) if is_and != outer_neg else Or(a, b)
    if isinstance(g, Tri):
        # △△h ≡ △h ; △¬△h ≡ ¬△h
        return _tri(g.arg, False, outer_neg != inner_neg, opaque)
    if isinstance(g, Circ):
        if not opaque:
            raise FragmentError(f"∘ not allowed here: {to_str(g)}")
        # ∘h is T/F-valued, so △ is the identity on it
        return Neg(g) if inner_neg != outer_neg else g
    raise TypeError(f"not a formula: {g!r}")


def flatten(f: Formula) -> Formula:
    """Weakly equivalent form of an L△-formula without △ outside ``¬``.

    The input is normalised first; then ``△p ↦ p`` and ``△¬p ↦ ¬p``.
    """
    if fragment(f) & Fragment.CIRC:
        raise FragmentError("flatten expects an L△-formula")
    return _drop_tri(nnf(f))


def _drop_tri(f):
    if isinstance(f, Tri):
        return f.arg
    if isinstance(f, And):
        return And(_drop_tri(f.left), _drop_tri(f.right))
    if isinstance(f, Or):
        return Or(_drop_tri(f.left), _drop_tri(f.right))
    return f


def expand_circ(f: Formula) -> Formula:
    """Replace every ``∘φ`` by ``(△φ ∧ ¬△¬φ) ∨ (△¬φ ∧ ¬△φ)``."""
    if isinstance(f, Var):
        return f
    if isinstance(f, Circ):
        g = expand_circ(f.arg)
        return Or(And(Tri(g), Neg(Tri(Neg(g)))), And(Tri(Neg(g)), Neg(Tri(g))))
    if isinstance(f, And):
        return And(expand_circ(f.left), expand_circ(f.right))
    if isinstance(f, Or):
        return Or(expand_circ(f.left), expand_circ(f.right))
    return type(f)(expand_circ(f.arg))


def _dedup(items):
    return list(dict.fromkeys(items))


def dnf_terms(f: Formula) -> list[list[Formula]]:
    """Disjuncts of the DNF of ``f`` as lists of literal formulas.

    ``∘φ`` and ``•φ`` stay opaque.  No classical simplification is applied:
    ``p ∧ ¬p`` is not a contradiction here.
    """
    return _dist(nnf(f, opaque_circ=True), And)


def cnf_clauses(f: Formula) -> list[list[Formula]]:
    """Conjuncts of the CNF of ``f`` as lists of literal formulas."""
    return _dist(nnf(f, opaque_circ=True), Or)


def _dist(f, inner):
    # inner is the connective inside each group (And for DNF, Or for CNF)
    if isinstance(f, inner):
        left, right = _dist(f.left, inner), _dist(f.right, inner)
        return [list(t) for t in _dedup(
            tuple(_dedup(a + b)) for a in left for b in right)]
    if isinstance(f, (And, Or)):
        return [list(t) for t in _dedup(
            tuple(g) for g in _dist(f.left, inner) + _dist(f.right, inner))]
    return [[f]]


def to_dnf(f: Formula) -> Formula:
    """Strongly equivalent disjunction of terms."""
    return disj(conj(t) for t in dnf_terms(f))


def to_cnf(f: Formula) -> Formula:
    """Strongly equivalent conjunction of clauses."""
    return conj(disj(c) for c in cnf_clauses(f))
