"""Decision procedures on terms.

Everything here runs in polynomial time except
:func:`term_theory_entails_circ` and :func:`circ_term_entails_formula`,
which go through the classical translation and the SAT solver.
"""

from __future__ import annotations

from typing import Sequence

from .classical import (BOT, TOP, c_and, circ_term_counterpart,
                        classical_entails, reduce01, substitute,
                        term_to_classical, to_classical)
from .errors import FragmentError, TermError
from .formula import Formula, Fragment, expand_circ, fragment, nnf, props
from .literals import (ALL_VALUES, Language, LitKind, Literal, Term)
from .semantics import B, F, N, T

__all__ = [
    "complement", "term_sat", "atomic_circ_sat", "atomic_circ_entails",
    "triangle_term_sat", "flatten_term", "triangle_term_entails",
    "term_entails", "term_theory_entails_triangle", "term_theory_entails_circ",
    "term_theory_entails", "triangle_term_entails_formula",
    "circ_term_entails_formula", "term_entails_formula", "prefix_profile",
    "value_profile", "is_determined", "is_n_free", "circ_to_triangle",
    "triangle_to_circ", "cl_literals",
]

K = LitKind


def _require(term: Term, language: Language):
    if term.language is not language:
        raise TermError(f"expected a {language.value} term, got {term.language.value}")


def _kinds_by_var(term: Term) -> dict[str, set]:
    out: dict[str, set] = {}
    for lit in term.literals:
        out.setdefault(lit.var, set()).add(lit.kind)
    return out


def complement(lit: Literal) -> Literal:
    """``p ↦ ¬p`` and ``¬p ↦ p``."""
    if lit.kind is K.POS:
        return Literal(lit.var, K.NEG)
    if lit.kind is K.NEG:
        return Literal(lit.var, K.POS)
    raise TermError(f"complement is defined on propositional literals only, not {lit}")


# ---------------------------------------------------------------- ∘-terms

def atomic_circ_sat(term: Term) -> bool:
    """Unsatisfiable iff some ``p`` has ``p, ¬p, ∘p`` or ``∘p, •p``."""
    _require(term, Language.CIRC)
    for kinds in _kinds_by_var(term).values():
        if K.CIRC in kinds and (K.BULLET in kinds or {K.POS, K.NEG} <= kinds):
            return False
    return True


def atomic_circ_entails(sigma: Term, sigma2: Term) -> bool:
    _require(sigma, Language.CIRC)
    _require(sigma2, Language.CIRC)
    if not atomic_circ_sat(sigma):
        return True
    if not atomic_circ_sat(sigma2):
        return False
    lits = sigma.literals
    for lit in sigma2.literals:
        if lit in lits:
            continue
        if lit.kind is K.CIRC:
            return False
        if lit.kind is K.BULLET:
            if not (Literal(lit.var, K.POS) in lits and Literal(lit.var, K.NEG) in lits):
                return False
        else:
            if not (complement(lit) in lits and Literal(lit.var, K.BULLET) in lits):
                return False
    return True


def prefix_profile(term: Term) -> dict[str, frozenset]:
    """Per-variable value sets of a satisfiable atomic ∘-term."""
    _require(term, Language.CIRC)
    if not atomic_circ_sat(term):
        raise TermError(f"unsatisfiable term {term}")
    out = {}
    for p, kinds in _kinds_by_var(term).items():
        if K.CIRC in kinds:
            if K.POS in kinds:
                out[p] = frozenset({T})
            elif K.NEG in kinds:
                out[p] = frozenset({F})
            else:
                out[p] = frozenset({T, F})
        elif len(kinds & {K.POS, K.NEG, K.BULLET}) >= 2:
            out[p] = frozenset({B})
        elif K.POS in kinds:
            out[p] = frozenset({T, B})
        elif K.NEG in kinds:
            out[p] = frozenset({F, B})
        else:
            out[p] = frozenset({B, N})
    return out


def is_determined(term: Term) -> bool:
    _require(term, Language.CIRC)
    if not atomic_circ_sat(term):
        raise TermError(f"unsatisfiable term {term}")
    for kinds in _kinds_by_var(term).values():
        if kinds & {K.CIRC, K.BULLET} and not kinds & {K.POS, K.NEG}:
            return False
    return True


def circ_to_triangle(term: Term) -> Term:
    """Weakly equivalent L△-term of a determined ∘-term."""
    if not is_determined(term):
        raise TermError(f"{term} is not determined")
    out = []
    for p, kinds in _kinds_by_var(term).items():
        if K.CIRC in kinds:
            if K.POS in kinds:
                out += [Literal(p, K.TRI), Literal(p, K.NTRINEG)]
            else:
                out += [Literal(p, K.TRINEG), Literal(p, K.NTRI)]
        elif K.BULLET in kinds:
            out += [Literal(p, K.POS), Literal(p, K.NEG)]
        else:
            out += [Literal(p, k) for k in kinds]
    return Term.of(out, Language.TRIANGLE)


# ---------------------------------------------------------------- △-terms

# classical literal of each L△-kind: (tag, polarity)
_CL = {
    K.POS: ("pos", True), K.TRI: ("pos", True),
    K.NEG: ("neg", True), K.TRINEG: ("neg", True),
    K.NTRI: ("pos", False), K.NTRINEG: ("neg", False),
}
_FLAT = {K.TRI: K.POS, K.TRINEG: K.NEG}
# (¬△s)♭ for each literal kind s
_NEG_TRI_FLAT = {
    K.POS: K.NTRI, K.TRI: K.NTRI, K.NEG: K.NTRINEG, K.TRINEG: K.NTRINEG,
    K.NTRI: K.POS, K.NTRINEG: K.NEG,
}


def cl_literals(term: Term) -> dict[str, bool]:
    """Signed classical literals of an L△-term as ``name -> polarity``.

    Raises :class:`TermError` if the term is unsatisfiable (complementary
    pair).
    """
    _require(term, Language.TRIANGLE)
    out: dict[str, bool] = {}
    for lit in term.literals:
        tag, polarity = _CL[lit.kind]
        name = f"{lit.var}__{tag}"
        if out.get(name, polarity) != polarity:
            raise TermError(f"unsatisfiable term {term}")
        out[name] = polarity
    return out


def triangle_term_sat(term: Term) -> bool:
    try:
        cl_literals(term)
    except TermError:
        return False
    return True


def flatten_term(term: Term) -> Term:
    """Drop △ outside negation: ``△p ↦ p``, ``△¬p ↦ ¬p``."""
    _require(term, Language.TRIANGLE)
    return term.with_literals(Literal(l.var, _FLAT.get(l.kind, l.kind)) for l in term.literals)


def triangle_term_entails(sigma: Term, sigma2: Term) -> bool:
    _require(sigma, Language.TRIANGLE)
    _require(sigma2, Language.TRIANGLE)
    if not triangle_term_sat(sigma):
        return True
    if not triangle_term_sat(sigma2):
        return False
    return flatten_term(sigma2).literals <= flatten_term(sigma).literals


def is_n_free(term: Term) -> bool:
    _require(term, Language.TRIANGLE)
    if not triangle_term_sat(term):
        raise TermError(f"unsatisfiable term {term}")
    flat = flatten_term(term).literals
    for lit in flat:
        if lit.kind is K.NTRI and Literal(lit.var, K.NEG) not in flat:
            return False
        if lit.kind is K.NTRINEG and Literal(lit.var, K.POS) not in flat:
            return False
    return True


def triangle_to_circ(term: Term) -> Term:
    """Weakly equivalent atomic ∘-term of an N-free L△-term."""
    if not is_n_free(term):
        raise TermError(f"{term} is not N-free")
    out = []
    for lit in flatten_term(term).literals:
        if lit.kind in (K.NTRI, K.NTRINEG):
            out.append(Literal(lit.var, K.CIRC))
        else:
            out.append(lit)
    return Term.of(out, Language.CIRC)


# ---------------------------------------------------------------- generic

def term_sat(term: Term) -> bool:
    if term.language is Language.CIRC:
        return atomic_circ_sat(term)
    return triangle_term_sat(term)


def term_entails(sigma: Term, sigma2: Term) -> bool:
    if sigma.language is Language.CIRC:
        return atomic_circ_entails(sigma, sigma2)
    return triangle_term_entails(sigma, sigma2)


def value_profile(term: Term) -> dict[str, frozenset]:
    """Per-variable intersection of literal value sets (either language).

    A term designates exactly the valuations whose value at every listed
    variable lies in the listed set; an empty set means unsatisfiable.
    """
    out: dict[str, frozenset] = {}
    for lit in term.literals:
        out[lit.var] = out.get(lit.var, ALL_VALUES) & lit.values
    return out


# ---------------------------------------------------------------- with a theory

def _theory_cl(theory: Sequence[Formula]):
    out = []
    for g in theory:
        if fragment(g) != Fragment.BD:
            raise FragmentError("theory formulas must be in L_BD")
        out.append(to_classical(nnf(g)))
    return out


def _bd_cl(f: Formula):
    return to_classical(nnf(expand_circ(f)))


def term_theory_entails_triangle(theory: Sequence[Formula], rho: Term, sigma: Term,
                                 _theory_cl_cache=None) -> bool:
    """``Γ, ϱ ⊨ σ`` for L_BD ``Γ`` and L△-terms, without a SAT call.

    Each literal ``s`` of ``σ`` is refuted separately: add ``(¬△s)♭`` to
    ``ϱ``, substitute the resulting classical literals into ``Γ^cl`` and
    simplify with the ⊤/⊥ rules; ``s`` follows iff the result is ``⊥``.
    """
    _require(rho, Language.TRIANGLE)
    _require(sigma, Language.TRIANGLE)
    gamma = _theory_cl_cache if _theory_cl_cache is not None else _theory_cl(theory)
    conj_gamma = c_and(gamma)
    for s in sigma.literals:
        extended = rho.with_literals(rho.literals | {Literal(s.var, _NEG_TRI_FLAT[s.kind])})
        try:
            assignment = cl_literals(extended)
        except TermError:
            continue
        if reduce01(substitute(conj_gamma, assignment)) != BOT:
            return False
    return True


def term_theory_entails_circ(theory: Sequence[Formula], rho: Term, sigma: Term,
                             _theory_cl_cache=None) -> bool:
    """``Γ, ϱ ⊨ σ`` for L_BD ``Γ`` and atomic ∘-terms via the classical
    counterpart and one SAT call."""
    _require(rho, Language.CIRC)
    _require(sigma, Language.CIRC)
    gamma = _theory_cl_cache if _theory_cl_cache is not None else _theory_cl(theory)
    xs = set(rho.props) | set(sigma.props)
    for g in theory:
        xs |= props(g)
    tilde, link = circ_term_counterpart(rho, xs)
    return classical_entails(list(gamma) + [tilde, link], term_to_classical(sigma))


def term_theory_entails(theory, rho: Term, sigma: Term) -> bool:
    if rho.language is Language.CIRC:
        return term_theory_entails_circ(theory, rho, sigma)
    return term_theory_entails_triangle(theory, rho, sigma)


def triangle_term_entails_formula(term: Term, chi: Formula) -> bool:
    """``τ ⊨ χ`` for an L△-term; polynomial when ``χ`` is in L_BD."""
    _require(term, Language.TRIANGLE)
    if not triangle_term_sat(term):
        return True
    if fragment(chi) != Fragment.BD:
        # outside L_BD the ⊤/⊥ collapse is not complete; use the solver
        return classical_entails([term_to_classical(term)], _bd_cl(chi))
    if not (term.props & props(chi)):
        return False
    reduced = reduce01(substitute(to_classical(nnf(chi)), cl_literals(term)))
    return reduced == TOP


def circ_term_entails_formula(term: Term, chi: Formula) -> bool:
    """``τ ⊨ χ`` for an atomic ∘-term via the classical counterpart."""
    _require(term, Language.CIRC)
    tilde, link = circ_term_counterpart(term, term.props | props(chi))
    return classical_entails([tilde, link], _bd_cl(chi))


def term_entails_formula(term: Term, chi: Formula) -> bool:
    if term.language is Language.CIRC:
        return circ_term_entails_formula(term, chi)
    return triangle_term_entails_formula(term, chi)
