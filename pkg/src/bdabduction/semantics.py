"""Belnapian truth values, valuations and brute-force semantic oracles.

A value is stored as a pair of independent bits: *told true* and *told
false*.  ``T = (1, 0)``, ``B = (1, 1)``, ``N = (0, 0)``, ``F = (0, 1)``.
The connectives act on the bits classically and independently, which is
how the truth tables come out.

The oracles (:func:`bd_sat`, :func:`bd_entails_oracle`, ...) enumerate
all ``4**n`` valuations of the relevant variables.  They are vectorised
with numpy over blocks of valuations and are meant as test instruments
and as the authoritative engine of the CLI's ``--engine oracle``.
"""

from __future__ import annotations

import enum
import itertools
from typing import Iterable, Mapping, Optional

import numpy as np

from .errors import ParseError, ResourceLimitError
from .formula import And, Circ, Formula, Neg, Or, Tri, Var, props

__all__ = [
    "TruthValue", "T", "B", "N", "F", "DESIGNATED", "VALUE_ORDER",
    "Valuation", "evaluate", "designated", "bd_sat", "bd_entails_oracle",
    "bd_cons_entails", "bd_valid", "weak_equiv", "strong_equiv",
    "format_valuation", "parse_valuation", "valuations", "DEFAULT_CAP",
]

DEFAULT_CAP = 16


class TruthValue(enum.Enum):
    T = "T"
    B = "B"
    N = "N"
    F = "F"

    @property
    def told_true(self) -> bool:
        return self in (TruthValue.T, TruthValue.B)

    @property
    def told_false(self) -> bool:
        return self in (TruthValue.F, TruthValue.B)

    @property
    def designated(self) -> bool:
        return self.told_true

    @classmethod
    def from_bits(cls, told_true, told_false) -> "TruthValue":
        return _FROM_BITS[bool(told_true), bool(told_false)]

    def __repr__(self):
        return self.value

    def __str__(self):
        return self.value


T, B, N, F = TruthValue.T, TruthValue.B, TruthValue.N, TruthValue.F
_FROM_BITS = {(True, False): T, (True, True): B, (False, False): N, (False, True): F}
VALUE_ORDER = (T, B, N, F)
DESIGNATED = frozenset({T, B})

Valuation = Mapping[str, TruthValue]


def designated(x: TruthValue) -> bool:
    return x in DESIGNATED


def evaluate(v: Valuation, f: Formula) -> TruthValue:
    """Value of ``f`` under ``v``; unmapped variables are ``N``."""
    t, fl = _bits(v, f)
    return _FROM_BITS[t, fl]


def _bits(v, f):
    if isinstance(f, Var):
        x = v.get(f.name, N)
        return x.told_true, x.told_false
    if isinstance(f, Neg):
        t, fl = _bits(v, f.arg)
        return fl, t
    if isinstance(f, And):
        t1, f1 = _bits(v, f.left)
        t2, f2 = _bits(v, f.right)
        return t1 and t2, f1 or f2
    if isinstance(f, Or):
        t1, f1 = _bits(v, f.left)
        t2, f2 = _bits(v, f.right)
        return t1 or t2, f1 and f2
    if isinstance(f, Circ):
        t, fl = _bits(v, f.arg)
        classical = t != fl
        return classical, not classical
    if isinstance(f, Tri):
        t, _ = _bits(v, f.arg)
        return t, not t
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------- vectorised

# block of trailing variables evaluated at once (4**8 valuations)
_BLOCK = 8


def _eval_block(f, env, cache):
    """Vectorised (told_true, told_false) arrays of ``f`` over a block."""
    hit = cache.get(id(f))
    if hit is not None:
        return hit
    if isinstance(f, Var):
        out = env[f.name]
    elif isinstance(f, Neg):
        t, fl = _eval_block(f.arg, env, cache)
        out = (fl, t)
    elif isinstance(f, And):
        t1, f1 = _eval_block(f.left, env, cache)
        t2, f2 = _eval_block(f.right, env, cache)
        out = (t1 & t2, f1 | f2)
    elif isinstance(f, Or):
        t1, f1 = _eval_block(f.left, env, cache)
        t2, f2 = _eval_block(f.right, env, cache)
        out = (t1 | t2, f1 & f2)
    elif isinstance(f, Circ):
        t, fl = _eval_block(f.arg, env, cache)
        c = t ^ fl
        out = (c, ~c)
    elif isinstance(f, Tri):
        t, _ = _eval_block(f.arg, env, cache)
        out = (t, ~t)
    else:
        raise TypeError(f"not a formula: {f!r}")
    cache[id(f)] = out
    return out


_TT = np.array([v.told_true for v in VALUE_ORDER])
_TF = np.array([v.told_false for v in VALUE_ORDER])


def _blocks(names):
    """Yield ``(prefix_assignment, env, size)`` in lexicographic order.

    Valuations are ordered lexicographically by variable name with
    ``T < B < N < F``; the first name is the most significant digit.
    """
    split = max(len(names) - _BLOCK, 0)
    head, tail = names[:split], names[split:]
    k = len(tail)
    size = 4 ** k
    idx = np.arange(size)
    tail_env = {}
    for pos, name in enumerate(tail):
        digit = (idx // 4 ** (k - 1 - pos)) % 4
        tail_env[name] = (_TT[digit], _TF[digit])
    for prefix in itertools.product(VALUE_ORDER, repeat=len(head)):
        env = dict(tail_env)
        for name, x in zip(head, prefix):
            env[name] = (np.full(size, x.told_true), np.full(size, x.told_false))
        yield prefix, head, tail, env, size


def _decode(prefix, head, tail, index):
    v = dict(zip(head, prefix))
    k = len(tail)
    for pos, name in enumerate(tail):
        v[name] = VALUE_ORDER[(index // 4 ** (k - 1 - pos)) % 4]
    return v


def _check_cap(names, cap):
    if cap is not None and len(names) > cap:
        raise ResourceLimitError(
            f"{len(names)} variables exceed the brute-force cap of {cap}")


def _names(formulas, extra=()):
    names = set(extra)
    for f in formulas:
        names |= props(f)
    return sorted(names)


def _first_counterexample(premises, conclusion, names):
    """Least valuation designating all premises and not the conclusion
    (``conclusion=None`` means "designate all premises")."""
    for prefix, head, tail, env, size in _blocks(names):
        cache = {}
        ok = np.ones(size, dtype=bool)
        for g in premises:
            ok &= _eval_block(g, env, cache)[0]
            if not ok.any():
                break
        if conclusion is not None and ok.any():
            ok &= ~_eval_block(conclusion, env, cache)[0]
        hits = np.flatnonzero(ok)
        if hits.size:
            return _decode(prefix, head, tail, int(hits[0]))
    return None


def valuations(names: Iterable[str]):
    """All valuations of ``names`` in the canonical order."""
    names = sorted(names)
    for values in itertools.product(VALUE_ORDER, repeat=len(names)):
        yield dict(zip(names, values))


def _as_list(fs):
    if isinstance(fs, (Var, Neg, And, Or, Circ, Tri)):
        return [fs]
    return list(fs)


def bd_sat(fs, vars: Optional[Iterable[str]] = None, cap: int = DEFAULT_CAP) -> Optional[dict]:
    """A valuation designating every formula of ``fs``, or ``None``.

    The witness is the least one in the canonical enumeration order over
    ``vars`` (default: the variables of ``fs``).
    """
    fs = _as_list(fs)
    names = _names(fs, vars or ())
    _check_cap(names, cap)
    return _first_counterexample(fs, None, names)


def bd_entails_oracle(theory, conclusion: Formula, cap: int = DEFAULT_CAP,
                      witness: bool = False):
    """Brute-force four-valued entailment.

    With ``witness=True`` returns ``(verdict, counter_valuation_or_None)``.
    """
    theory = _as_list(theory)
    names = _names(theory + [conclusion])
    _check_cap(names, cap)
    counter = _first_counterexample(theory, conclusion, names)
    if witness:
        return counter is None, counter
    return counter is None


def bd_cons_entails(theory, conclusion: Formula, cap: int = DEFAULT_CAP) -> bool:
    """Consistent entailment: ``theory`` is satisfiable and entails ``conclusion``."""
    theory = _as_list(theory)
    return bd_sat(theory, cap=cap) is not None and bd_entails_oracle(theory, conclusion, cap)


def bd_valid(f: Formula, cap: int = DEFAULT_CAP) -> bool:
    return bd_entails_oracle([], f, cap)


def weak_equiv(a: Formula, b: Formula, cap: int = DEFAULT_CAP) -> bool:
    """Mutual entailment."""
    return bd_entails_oracle([a], b, cap) and bd_entails_oracle([b], a, cap)


def strong_equiv(a: Formula, b: Formula, cap: int = DEFAULT_CAP) -> bool:
    """Identical value under every valuation."""
    names = _names([a, b])
    _check_cap(names, cap)
    for _, _, _, env, _ in _blocks(names):
        cache = {}
        ta, fa = _eval_block(a, env, cache)
        tb, fb = _eval_block(b, env, cache)
        if not (np.array_equal(ta, tb) and np.array_equal(fa, fb)):
            return False
    return True


def format_valuation(v: Valuation) -> str:
    """``p=B, q=T`` with names sorted."""
    return ", ".join(f"{name}={v[name].value}" for name in sorted(v))


def parse_valuation(text: str) -> dict:
    """Inverse of :func:`format_valuation`; whitespace is insignificant."""
    out = {}
    text = text.strip()
    if not text:
        return out
    for item in text.split(","):
        name, sep, value = item.partition("=")
        name, value = name.strip(), value.strip().upper()
        if not sep or not name or value not in ("T", "B", "N", "F"):
            raise ParseError(f"bad valuation entry {item.strip()!r}")
        out[name] = TruthValue(value)
    return out
