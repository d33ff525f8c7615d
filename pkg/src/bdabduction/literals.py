"""Literals and terms of the two solution languages.

Eight literal kinds exist over a variable ``p``::

    POS p    NEG ¬p    TRI △p    NTRI ¬△p    TRINEG △¬p    NTRINEG ¬△¬p
    CIRC ∘p  BULLET •p

The first six are the L△-literals; ``POS, NEG, CIRC, BULLET`` are the
atomic L∘-literals.  Each literal is designated exactly when the value of
its variable lies in :attr:`Literal.values`, so a satisfiable term
designates exactly a product of per-variable value sets.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import TermError
from .formula import And, Circ, Formula, Neg, Tri, Var, conj, parse, to_str
from .semantics import B, F, N, T, TruthValue

__all__ = [
    "LitKind", "Literal", "Language", "Term", "ALL_VALUES",
    "TRIANGLE_KINDS", "CIRC_KINDS", "PROP_KINDS",
]


class LitKind(enum.IntEnum):
    # declaration order is the canonical order
    POS = 0
    NEG = 1
    TRI = 2
    NTRI = 3
    TRINEG = 4
    NTRINEG = 5
    CIRC = 6
    BULLET = 7


PROP_KINDS = frozenset({LitKind.POS, LitKind.NEG})
TRIANGLE_KINDS = frozenset(LitKind) - {LitKind.CIRC, LitKind.BULLET}
CIRC_KINDS = frozenset({LitKind.POS, LitKind.NEG, LitKind.CIRC, LitKind.BULLET})
ALL_VALUES = frozenset({T, B, N, F})

_VALUES = {
    LitKind.POS: frozenset({T, B}),
    LitKind.NEG: frozenset({F, B}),
    LitKind.TRI: frozenset({T, B}),
    LitKind.NTRI: frozenset({N, F}),
    LitKind.TRINEG: frozenset({F, B}),
    LitKind.NTRINEG: frozenset({T, N}),
    LitKind.CIRC: frozenset({T, F}),
    LitKind.BULLET: frozenset({B, N}),
}


@dataclass(frozen=True, order=True)
class Literal:
    var: str
    kind: LitKind

    @property
    def values(self) -> frozenset[TruthValue]:
        """Values of the variable under which the literal is designated."""
        return _VALUES[self.kind]

    @property
    def is_propositional(self) -> bool:
        return self.kind in PROP_KINDS

    def to_formula(self) -> Formula:
        p = Var(self.var)
        k = self.kind
        if k is LitKind.POS:
            return p
        if k is LitKind.NEG:
            return Neg(p)
        if k is LitKind.TRI:
            return Tri(p)
        if k is LitKind.NTRI:
            return Neg(Tri(p))
        if k is LitKind.TRINEG:
            return Tri(Neg(p))
        if k is LitKind.NTRINEG:
            return Neg(Tri(Neg(p)))
        if k is LitKind.CIRC:
            return Circ(p)
        return Neg(Circ(p))

    @classmethod
    def from_formula(cls, f: Formula) -> "Literal":
        kind = _shape(f)
        if kind is None:
            raise TermError(f"not a literal: {to_str(f)}")
        return cls(_base(f), kind)

    @classmethod
    def parse(cls, text: str) -> "Literal":
        return cls.from_formula(parse(text))

    def __str__(self):
        return to_str(self.to_formula())


def _base(f):
    while not isinstance(f, Var):
        f = f.arg
    return f.name


def _shape(f) -> Optional[LitKind]:
    if isinstance(f, Var):
        return LitKind.POS
    if isinstance(f, Circ) and isinstance(f.arg, Var):
        return LitKind.CIRC
    if isinstance(f, Tri):
        if isinstance(f.arg, Var):
            return LitKind.TRI
        if isinstance(f.arg, Neg) and isinstance(f.arg.arg, Var):
            return LitKind.TRINEG
        return None
    if isinstance(f, Neg):
        g = f.arg
        if isinstance(g, Var):
            return LitKind.NEG
        if isinstance(g, Circ) and isinstance(g.arg, Var):
            return LitKind.BULLET
        if isinstance(g, Tri):
            if isinstance(g.arg, Var):
                return LitKind.NTRI
            if isinstance(g.arg, Neg) and isinstance(g.arg.arg, Var):
                return LitKind.NTRINEG
    return None


class Language(enum.Enum):
    TRIANGLE = "triangle"
    CIRC = "circ"

    @property
    def kinds(self) -> frozenset[LitKind]:
        return TRIANGLE_KINDS if self is Language.TRIANGLE else CIRC_KINDS

    def __str__(self):
        return self.value


def _conjuncts(f):
    if isinstance(f, And):
        yield from _conjuncts(f.left)
        yield from _conjuncts(f.right)
    else:
        yield f


@dataclass(frozen=True)
class Term:
    """A conjunction of literals of one language (order and repetition
    are immaterial)."""

    literals: frozenset[Literal]
    language: Language

    def __post_init__(self):
        object.__setattr__(self, "literals", frozenset(self.literals))
        bad = [lit for lit in self.literals if lit.kind not in self.language.kinds]
        if bad:
            raise TermError(f"{bad[0]} is not a {self.language.value} literal")

    @classmethod
    def of(cls, literals: Iterable[Literal], language: Language) -> "Term":
        return cls(frozenset(literals), language)

    @classmethod
    def from_formula(cls, f: Formula, language: Language) -> "Term":
        lits = []
        for g in _conjuncts(f):
            kind = _shape(g)
            if kind is None or kind not in language.kinds:
                raise TermError(
                    f"conjunct {to_str(g)!r} is not a {language.value} literal")
            lits.append(Literal(_base(g), kind))
        return cls(frozenset(lits), language)

    @classmethod
    def parse(cls, text: str, language: Language) -> "Term":
        return cls.from_formula(parse(text), language)

    def sorted(self) -> list[Literal]:
        return sorted(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.sorted())

    def __len__(self):
        return len(self.literals)

    def __contains__(self, lit):
        return lit in self.literals

    @property
    def props(self) -> frozenset[str]:
        return frozenset(lit.var for lit in self.literals)

    def key(self):
        """Size-then-lexicographic sort key."""
        return (len(self.literals), tuple((lit.var, int(lit.kind)) for lit in self.sorted()))

    def formulas(self) -> list[Formula]:
        return [lit.to_formula() for lit in self.sorted()]

    def to_formula(self) -> Optional[Formula]:
        """The conjunction, or ``None`` for the empty term."""
        fs = self.formulas()
        return conj(fs) if fs else None

    def with_literals(self, literals: Iterable[Literal]) -> "Term":
        return Term(frozenset(literals), self.language)

    def __str__(self):
        f = self.to_formula()
        return "(empty)" if f is None else to_str(f)
