"""Two-valued counterparts of four-valued formulas, and a small SAT solver.

A four-valued variable ``p`` is split into independent classical variables
``p__pos`` (``p`` is told true) and ``p__neg`` (``p`` is told false); a
third one, ``p__circ``, tracks ``∘p`` in the ∘-reduction.  Under this split
every NNF L△-formula becomes a classical formula with the same
designation behaviour, which is what :func:`to_classical` computes.

Classical formulas print with ``~``, ``&``, ``|`` and the constants ``1``
and ``0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .errors import FragmentError, ParseError
from .formula import And, Circ, Formula, Neg, Or, Tri, Var, conj, disj
from .formula import expand_circ, nnf, props, tokenize, to_str
from .literals import Language, LitKind, Term
from .semantics import N, TruthValue

__all__ = [
    "CVar", "CNot", "CAnd", "COr", "CConst", "TOP", "BOT", "ClassicalFormula",
    "POS", "NEG", "CIRC", "signed_name", "split_signed", "pos", "neg", "circ",
    "c_and", "c_or", "c_not", "c_iff", "cprops", "cevaluate", "cnnf",
    "cparse", "cto_str", "to_classical", "literal_to_classical",
    "term_to_classical", "embed_triangle", "embed_circ", "embed_cpl_entailment",
    "substitute", "reduce01", "classical_sat", "classical_entails",
    "valuation_to_classical", "classical_to_valuation", "circ_term_counterpart",
    "bd_entails_sat", "is_clit", "clit_var",
]


# ---------------------------------------------------------------- AST

@dataclass(frozen=True)
class CVar:
    name: str

    def __str__(self):
        return cto_str(self)


@dataclass(frozen=True)
class CNot:
    arg: "ClassicalFormula"

    def __str__(self):
        return cto_str(self)


@dataclass(frozen=True)
class CAnd:
    args: tuple

    def __str__(self):
        return cto_str(self)


@dataclass(frozen=True)
class COr:
    args: tuple

    def __str__(self):
        return cto_str(self)


@dataclass(frozen=True)
class CConst:
    value: bool

    def __str__(self):
        return cto_str(self)


TOP = CConst(True)
BOT = CConst(False)
ClassicalFormula = Union[CVar, CNot, CAnd, COr, CConst]


def c_not(f):
    return f.arg if isinstance(f, CNot) else CNot(f)


def c_and(fs: Iterable) -> "ClassicalFormula":
    """n-ary conjunction; nested conjunctions are spliced, ``[]`` is ⊤."""
    out = []
    for f in fs:
        out.extend(f.args if isinstance(f, CAnd) else [f])
    if not out:
        return TOP
    return out[0] if len(out) == 1 else CAnd(tuple(out))


def c_or(fs: Iterable) -> "ClassicalFormula":
    """n-ary disjunction; ``[]`` is ⊥."""
    out = []
    for f in fs:
        out.extend(f.args if isinstance(f, COr) else [f])
    if not out:
        return BOT
    return out[0] if len(out) == 1 else COr(tuple(out))


def c_iff(a, b):
    """``a ↔ b`` spelled out as ``(a ∧ b) ∨ (∼a ∧ ∼b)``."""
    return c_or([c_and([a, b]), c_and([c_not(a), c_not(b)])])


# ---------------------------------------------------------------- signed variables

POS, NEG, CIRC = "pos", "neg", "circ"
_TAGS = (POS, NEG, CIRC)


def signed_name(var: str, tag: str) -> str:
    if tag not in _TAGS:
        raise ValueError(f"unknown tag {tag!r}")
    return f"{var}__{tag}"


def split_signed(name: str) -> Optional[tuple[str, str]]:
    """``("p", "pos")`` for ``p__pos``; ``None`` for a plain name."""
    base, sep, tag = name.rpartition("__")
    if sep and base and tag in _TAGS:
        return base, tag
    return None


def pos(var: str) -> CVar:
    return CVar(signed_name(var, POS))


def neg(var: str) -> CVar:
    return CVar(signed_name(var, NEG))


def circ(var: str) -> CVar:
    return CVar(signed_name(var, CIRC))


def is_clit(f) -> bool:
    return isinstance(f, CVar) or (isinstance(f, CNot) and isinstance(f.arg, CVar))


def clit_var(f) -> str:
    return f.name if isinstance(f, CVar) else f.arg.name


# ---------------------------------------------------------------- queries

def cprops(f) -> frozenset[str]:
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, CVar):
            out.add(g.name)
        elif isinstance(g, CNot):
            stack.append(g.arg)
        elif isinstance(g, (CAnd, COr)):
            stack.extend(g.args)
    return frozenset(out)


def cevaluate(a: Mapping[str, bool], f) -> bool:
    """Two-valued value of ``f``; unassigned variables are false."""
    if isinstance(f, CVar):
        return bool(a.get(f.name, False))
    if isinstance(f, CNot):
        return not cevaluate(a, f.arg)
    if isinstance(f, CAnd):
        return all(cevaluate(a, g) for g in f.args)
    if isinstance(f, COr):
        return any(cevaluate(a, g) for g in f.args)
    if isinstance(f, CConst):
        return f.value
    raise TypeError(f"not a classical formula: {f!r}")


def cnnf(f, negate=False):
    """Negation normal form: ``∼`` only in front of variables."""
    if isinstance(f, CVar):
        return CNot(f) if negate else f
    if isinstance(f, CNot):
        return cnnf(f.arg, not negate)
    if isinstance(f, CConst):
        return CConst(f.value != negate)
    args = [cnnf(g, negate) for g in f.args]
    return c_or(args) if isinstance(f, CAnd) == negate else c_and(args)


# ---------------------------------------------------------------- text

_P_OR, _P_AND, _P_UN = 1, 2, 3


def _cprec(f):
    if isinstance(f, COr):
        return _P_OR
    if isinstance(f, CAnd):
        return _P_AND
    return _P_UN


def cto_str(f) -> str:
    if isinstance(f, CVar):
        return f.name
    if isinstance(f, CConst):
        return "1" if f.value else "0"
    if isinstance(f, CNot):
        s = cto_str(f.arg)
        return "~" + (s if _cprec(f.arg) == _P_UN else f"({s})")
    op, prec = (" & ", _P_AND) if isinstance(f, CAnd) else (" | ", _P_OR)
    parts = []
    for g in f.args:
        s = cto_str(g)
        parts.append(f"({s})" if _cprec(g) <= prec else s)
    return op.join(parts)


class _CParser:
    def __init__(self, text):
        if not text.strip():
            raise ParseError("empty formula", 0)
        self.tokens = tokenize(text, "~&|()01")
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        f = self.disjunction()
        kind, val, p = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", p)
        return f

    def disjunction(self):
        args = [self.conjunction()]
        while self.peek()[:2] == ("sym", "|"):
            self.take()
            args.append(self.conjunction())
        return args[0] if len(args) == 1 else COr(tuple(args))

    def conjunction(self):
        args = [self.unary()]
        while self.peek()[:2] == ("sym", "&"):
            self.take()
            args.append(self.unary())
        return args[0] if len(args) == 1 else CAnd(tuple(args))

    def unary(self):
        kind, val, p = self.take()
        if kind == "var":
            return CVar(val)
        if val == "~":
            return CNot(self.unary())
        if val in ("0", "1"):
            return CConst(val == "1")
        if val == "(":
            f = self.disjunction()
            kind, val2, p2 = self.take()
            if val2 != ")":
                raise ParseError("expected ')'", p2)
            return f
        found = repr(val) if kind != "end" else "end of input"
        raise ParseError(f"expected a formula, found {found}", p)


def cparse(text: str):
    """Parse classical formula text (``~ & | ( ) 0 1``)."""
    return _CParser(text).parse()


# ---------------------------------------------------------------- translations

def _nnf_literal_cl(f):
    # classical image of one NNF L△-literal, or None
    if isinstance(f, Var):
        return pos(f.name)
    if isinstance(f, Neg):
        g = f.arg
        if isinstance(g, Var):
            return neg(g.name)
        if isinstance(g, Tri):
            if isinstance(g.arg, Var):
                return CNot(pos(g.arg.name))
            if isinstance(g.arg, Neg) and isinstance(g.arg.arg, Var):
                return CNot(neg(g.arg.arg.name))
        return None
    if isinstance(f, Tri):
        if isinstance(f.arg, Var):
            return pos(f.arg.name)
        if isinstance(f.arg, Neg) and isinstance(f.arg.arg, Var):
            return neg(f.arg.arg.name)
    return None


def to_classical(f: Formula):
    """Structural translation of an NNF L△-formula.

    Non-NNF input is rejected; normalise with :func:`~bdabduction.formula.nnf`
    first.
    """
    if isinstance(f, And):
        return c_and([to_classical(f.left), to_classical(f.right)])
    if isinstance(f, Or):
        return c_or([to_classical(f.left), to_classical(f.right)])
    out = _nnf_literal_cl(f)
    if out is None:
        raise FragmentError(f"not an NNF L△-formula: {to_str(f)}")
    return out


def literal_to_classical(lit) -> "ClassicalFormula":
    """Classical literal of a term literal (∘p ↦ p∘, •p ↦ ∼p∘)."""
    if lit.kind is LitKind.CIRC:
        return circ(lit.var)
    if lit.kind is LitKind.BULLET:
        return CNot(circ(lit.var))
    return to_classical(lit.to_formula())


def term_to_classical(term: Term):
    """``τ^cl`` for L△-terms, the signed conjunction ``τ∼`` for ∘-terms."""
    return c_and(literal_to_classical(lit) for lit in term)


def _map_vars(f, fn):
    if isinstance(f, Var):
        return fn(f)
    if isinstance(f, (And, Or)):
        return type(f)(_map_vars(f.left, fn), _map_vars(f.right, fn))
    if isinstance(f, Neg):
        return Neg(_map_vars(f.arg, fn))
    raise FragmentError(f"expected an L_BD formula, found {to_str(f)}")


def embed_triangle(f: Formula) -> Formula:
    """Replace every variable ``p`` by ``△p``."""
    return _map_vars(f, Tri)


def embed_circ(f: Formula) -> Formula:
    """Replace every variable ``p`` by ``∘p``."""
    return _map_vars(f, Circ)


def embed_cpl_entailment(phi: Formula, chi: Formula):
    """Premises and conclusion whose four-valued entailment coincides with
    the classical entailment ``phi ⊨ chi``.

    Returns ``([phi ∧ ⋀(p ∨ ¬p)], chi ∨ ⋁(p ∧ ¬p))`` over the shared
    variables in sorted order.
    """
    names = sorted(props(phi) | props(chi))
    excluded = [Or(Var(p), Neg(Var(p))) for p in names]
    glut = [And(Var(p), Neg(Var(p))) for p in names]
    return [conj([phi] + excluded)], disj([chi] + glut)


# ---------------------------------------------------------------- ⊤/⊥ reduction

def substitute(f, assignment: Mapping[str, bool]):
    """Replace assigned variables by ``1``/``0`` (no simplification)."""
    if isinstance(f, CVar):
        if f.name in assignment:
            return CConst(bool(assignment[f.name]))
        return f
    if isinstance(f, CNot):
        return CNot(substitute(f.arg, assignment))
    if isinstance(f, (CAnd, COr)):
        return type(f)(tuple(substitute(g, assignment) for g in f.args))
    return f


def reduce01(f):
    """Exhaustively apply ``⊤∧ψ⇝ψ, ⊤∨ψ⇝⊤, ⊥∧ψ⇝⊥, ⊥∨ψ⇝ψ`` (and ``∼⊤⇝⊥``,
    ``∼⊥⇝⊤``)."""
    if isinstance(f, CNot):
        g = reduce01(f.arg)
        if isinstance(g, CConst):
            return CConst(not g.value)
        return CNot(g)
    if isinstance(f, (CAnd, COr)):
        absorbing = isinstance(f, COr)
        kept = []
        for g in f.args:
            g = reduce01(g)
            if isinstance(g, CConst):
                if g.value == absorbing:
                    return g
                continue
            kept.append(g)
        if not kept:
            return CConst(not absorbing)
        return c_or(kept) if absorbing else c_and(kept)
    return f


# ---------------------------------------------------------------- SAT

class _Solver:
    """DPLL with two watched literals and chronological backtracking.

    Decisions take the lowest-numbered free variable and try false first,
    so the model returned is deterministic.
    """

    def __init__(self, nvars, clauses):
        self.val = [0] * (nvars + 1)
        self.nvars = nvars
        self.clauses = []
        self.watch = {}
        self.trail = []
        self.units = []
        self.empty = False
        for c in clauses:
            c = list(dict.fromkeys(c))
            if any(-x in c for x in c):
                continue
            if not c:
                self.empty = True
            elif len(c) == 1:
                self.units.append(c[0])
            else:
                idx = len(self.clauses)
                self.clauses.append(c)
                self.watch.setdefault(c[0], []).append(idx)
                self.watch.setdefault(c[1], []).append(idx)

    def value(self, lit):
        v = self.val[abs(lit)]
        return v if lit > 0 else -v

    def assign(self, lit):
        self.val[abs(lit)] = 1 if lit > 0 else -1
        self.trail.append(lit)

    def propagate(self, head):
        while head < len(self.trail):
            false_lit = -self.trail[head]
            head += 1
            watchers = self.watch.get(false_lit, [])
            keep = []
            conflict = False
            for n, ci in enumerate(watchers):
                if conflict:
                    keep.append(ci)
                    continue
                c = self.clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                if self.value(c[0]) == 1:
                    keep.append(ci)
                    continue
                for k in range(2, len(c)):
                    if self.value(c[k]) != -1:
                        c[1], c[k] = c[k], c[1]
                        self.watch.setdefault(c[1], []).append(ci)
                        break
                else:
                    keep.append(ci)
                    if self.value(c[0]) == -1:
                        conflict = True
                    else:
                        self.assign(c[0])
            self.watch[false_lit] = keep
            if conflict:
                return None
        return head

    def undo(self, size):
        while len(self.trail) > size:
            self.val[abs(self.trail.pop())] = 0

    def solve(self):
        if self.empty:
            return None
        for u in self.units:
            if self.value(u) == -1:
                return None
            if self.value(u) == 0:
                self.assign(u)
        head = self.propagate(0)
        if head is None:
            return None
        decisions = []  # (trail size before decision, variable, flipped)
        nxt = 1
        while True:
            while nxt <= self.nvars and self.val[nxt] != 0:
                nxt += 1
            if nxt > self.nvars:
                return [self.val[i] == 1 for i in range(self.nvars + 1)]
            decisions.append((len(self.trail), nxt, False))
            self.assign(-nxt)
            head = self.propagate(len(self.trail) - 1)
            while head is None:
                # backtrack to the most recent unflipped decision
                while decisions and decisions[-1][2]:
                    decisions.pop()
                if not decisions:
                    return None
                size, var, _ = decisions.pop()
                self.undo(size)
                decisions.append((size, var, True))
                self.assign(var)
                head = self.propagate(size)
                nxt = 1
            nxt = 1


class _Encoder:
    """Polarity-aware Tseitin encoding of an NNF classical formula."""

    def __init__(self, names):
        self.index = {}
        for name in names:
            self.num(name)
        self.clauses = []

    def num(self, name):
        if name not in self.index:
            self.index[name] = len(self.index) + 1
        return self.index[name]

    def fresh(self):
        key = ("aux", len(self.index))
        self.index[key] = len(self.index) + 1
        return self.index[key]

    def lit(self, f):
        if isinstance(f, CVar):
            return self.num(f.name)
        if isinstance(f, CNot):
            return -self.num(f.arg.name)
        x = self.fresh()
        if isinstance(f, CAnd):
            for g in f.args:
                self.clauses.append([-x, self.lit(g)])
        else:
            self.clauses.append([-x] + [self.lit(g) for g in f.args])
        return x

    def assert_(self, f):
        if isinstance(f, CConst):
            if not f.value:
                self.clauses.append([])
        elif isinstance(f, CAnd):
            for g in f.args:
                self.assert_(g)
        elif isinstance(f, COr):
            self.clauses.append([self.lit(g) for g in f.args])
        else:
            self.clauses.append([self.lit(f)])


def classical_sat(fs) -> Optional[dict]:
    """A satisfying assignment of the conjunction of ``fs``, or ``None``.

    The assignment covers exactly the variables of ``fs``; among models the
    search prefers false values for variables in sorted-name order.
    """
    if isinstance(fs, (CVar, CNot, CAnd, COr, CConst)):
        fs = [fs]
    fs = list(fs)
    names = sorted(set().union(*[cprops(f) for f in fs])) if fs else []
    enc = _Encoder(names)
    for f in fs:
        enc.assert_(reduce01(cnnf(f)))
    model = _Solver(len(enc.index), enc.clauses).solve()
    if model is None:
        return None
    return {name: model[enc.index[name]] for name in names}


def classical_entails(premises, conclusion, witness: bool = False):
    """Classical entailment by refutation; ``witness=True`` also returns a
    countermodel (or ``None``)."""
    if isinstance(premises, (CVar, CNot, CAnd, COr, CConst)):
        premises = [premises]
    counter = classical_sat(list(premises) + [CNot(conclusion)])
    if witness:
        return counter is None, counter
    return counter is None


# ---------------------------------------------------------------- valuations

def valuation_to_classical(v: Mapping[str, TruthValue], vars: Iterable[str] = None,
                           with_circ: bool = False) -> dict:
    """``v^cl``: ``p__pos`` iff told true, ``p__neg`` iff told false, and
    ``p__circ`` iff ``v(p)`` is ``T`` or ``F``."""
    names = sorted(set(vars) if vars is not None else set(v))
    out = {}
    for p in names:
        x = v.get(p, N)
        out[signed_name(p, POS)] = x.told_true
        out[signed_name(p, NEG)] = x.told_false
        if with_circ:
            out[signed_name(p, CIRC)] = x.told_true != x.told_false
    return out


def classical_to_valuation(a: Mapping[str, bool], vars: Iterable[str] = None) -> dict:
    """``v^4``, read off the ``pos``/``neg`` variables (missing ones are false)."""
    if vars is None:
        vars = {split[0] for name in a if (split := split_signed(name))}
    out = {}
    for p in sorted(vars):
        t = bool(a.get(signed_name(p, POS), False))
        fl = bool(a.get(signed_name(p, NEG), False))
        out[p] = TruthValue.from_bits(t, fl)
    return out


def circ_term_counterpart(term: Term, xs: Iterable[str]):
    """``(τ∼, ↔_X)`` for an atomic ∘-term.

    ``↔_X`` is ``⋀_{q∈X} (∼q∘ ↔ (q⁺ ↔ q⁻))`` with ``↔`` spelled out.
    """
    if term.language is not Language.CIRC:
        raise FragmentError("expected an atomic ∘-term")
    xs = sorted(set(xs))
    missing = term.props - set(xs)
    if missing:
        raise FragmentError(f"variables {sorted(missing)} not in X")
    tilde = term_to_classical(term)
    link = c_and(c_iff(CNot(circ(q)), c_iff(pos(q), neg(q))) for q in xs)
    return tilde, link


def _bd_to_classical(f):
    return to_classical(nnf(expand_circ(f)))


def bd_entails_sat(theory, conclusion: Formula, witness: bool = False):
    """Four-valued entailment for arbitrary formulas through the SAT solver.

    ``∘`` is expanded into △-form, everything is put in NNF and translated;
    a classical countermodel is mapped back with ``v^4``.
    """
    if isinstance(theory, (Var, Neg, And, Or, Circ, Tri)):
        theory = [theory]
    theory = list(theory)
    names = set(props(conclusion))
    for g in theory:
        names |= props(g)
    ok, counter = classical_entails([_bd_to_classical(g) for g in theory],
                                    _bd_to_classical(conclusion), witness=True)
    if not witness:
        return ok
    return ok, (None if ok else classical_to_valuation(counter, names))
