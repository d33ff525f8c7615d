"""Reductions between four-valued and classical abduction.

``reduce_triangle`` and ``reduce_circ`` turn a four-valued problem into a
classical one whose (proper, theory-minimal) solutions correspond to the
original ones; ``map_back`` translates classical solutions back.
``wrap_classical_problem`` goes the other way and is used to generate
test problems with known answers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .abduction import (AbductionProblem, SolutionClass, make_problem,
                        is_bd_minimal, profile_of)
from .classical import (CAnd, CNot, COr, CVar, CIRC, NEG, POS, c_or,
                        classical_entails, classical_sat,
                        clit_var, cprops, cto_str, is_clit, literal_to_classical,
                        split_signed)
from .errors import FragmentError, TermError
from .formula import And, Formula, Neg, Or, Var, conj, disj, props
from .literals import Language, LitKind, Literal, Term

__all__ = [
    "ClassicalProblem", "reduce_triangle", "reduce_circ", "reduce_problem",
    "classical_solve", "map_back", "solve_via_classical",
    "wrap_classical_problem", "is_wrappable", "classical_to_bd",
    "clit_key",
]


def clit_key(lit):
    """Sort key of a classical literal: by name, positive first."""
    return (clit_var(lit), isinstance(lit, CNot))


@dataclass(frozen=True)
class ClassicalProblem:
    theory: tuple
    observation: object
    hypotheses: tuple  # classical literals, sorted by clit_key

    def __post_init__(self):
        for h in self.hypotheses:
            if not is_clit(h):
                raise FragmentError(f"hypothesis {cto_str(h)} is not a literal")

    def __str__(self):
        lines = ["classical: true"]
        lines += [f"theory: {cto_str(g)}" for g in self.theory]
        lines.append(f"observe: {cto_str(self.observation)}")
        lines += [f"hyp: {cto_str(h)}" for h in self.hypotheses]
        return "\n".join(lines)


def _hyps_cl(problem: AbductionProblem):
    out = {}
    for h in sorted(problem.hypotheses):
        out.setdefault(literal_to_classical(h), h)
    return tuple(sorted(out, key=clit_key))


def reduce_triangle(problem: AbductionProblem) -> ClassicalProblem:
    """``⟨Γ^cl, χ^cl, H^cl⟩``; ``p, △p ↦ p⁺``, ``¬p, △¬p ↦ p⁻``,
    ``¬△p ↦ ∼p⁺``, ``¬△¬p ↦ ∼p⁻``."""
    if problem.language is not Language.TRIANGLE:
        raise FragmentError("reduce_triangle expects a triangle problem")
    return ClassicalProblem(tuple(problem.theory_cl), problem.observation_cl,
                            _hyps_cl(problem))


def reduce_circ(problem: AbductionProblem) -> ClassicalProblem:
    """``⟨Γ^cl ∪ {↔}, ∼↔ ∨ χ^cl, H^cl⟩`` with ``↔`` linking ``q∘`` to
    ``q⁺ ≠ q⁻`` for every variable of the problem and of ``H``."""
    if problem.language is not Language.CIRC:
        raise FragmentError("reduce_circ expects a circ problem")
    link = problem.circ_link
    return ClassicalProblem(tuple(problem.theory_cl) + (link,),
                            c_or([CNot(link), problem.observation_cl]),
                            _hyps_cl(problem))


def reduce_problem(problem: AbductionProblem) -> ClassicalProblem:
    if problem.language is Language.TRIANGLE:
        return reduce_triangle(problem)
    return reduce_circ(problem)


def classical_solve(pcl: ClassicalProblem,
                    cls: Union[SolutionClass, str] = SolutionClass.PROPER,
                    max_size: Optional[int] = None) -> list[tuple]:
    """Classical solutions as sorted literal tuples, size-then-lexicographic.

    Subsets of ``H`` with a complementary pair are skipped (they are
    inconsistent).  Minimality is judged among all proper solutions
    within ``max_size`` (default ``|H|``, which is complete).
    """
    cls = SolutionClass(cls)
    hyps = list(pcl.hypotheses)
    bound = len(hyps) if max_size is None else max_size
    theory = list(pcl.theory)
    solutions = []
    for r in range(bound + 1):
        for combo in itertools.combinations(hyps, r):
            names = [clit_var(h) for h in combo]
            if len(set(names)) < len(names):
                continue
            if classical_sat(theory + list(combo)) is None:
                continue
            if not classical_entails(theory + list(combo), pcl.observation):
                continue
            proper = not classical_entails(list(combo), pcl.observation)
            solutions.append((combo, proper))
    if cls is SolutionClass.ALL:
        return [s for s, _ in solutions]
    proper = [s for s, ok in solutions if ok]
    if cls is SolutionClass.PROPER:
        return proper
    if cls is SolutionClass.BD_MINIMAL:
        # no proper solution is a strictly weaker literal set
        sets = [frozenset(s) for s in proper]
        return [s for s, fs in zip(proper, sets) if not any(o < fs for o in sets)]
    entailed = {}
    for s in proper:
        entailed[s] = frozenset(h for h in hyps
                                if classical_entails(theory + list(s), h))
    return [s for s in proper
            if not any(set(o) <= entailed[s] and not set(s) <= entailed[o]
                       for o in proper)]


def map_back(solution: Iterable, problem: AbductionProblem) -> Term:
    """Four-valued term of a classical solution of the reduced ``problem``.

    For triangle problems the flattened literal is used whenever it is a
    hypothesis (``p⁺ ↦ p`` rather than ``△p``).
    """
    lits = []
    hyps = problem.hypotheses
    for h in solution:
        if not is_clit(h):
            raise TermError(f"{cto_str(h)} is not a classical literal")
        split = split_signed(clit_var(h))
        if split is None:
            raise TermError(f"{cto_str(h)} is not a signed variable")
        var, tag = split
        negated = isinstance(h, CNot)
        if problem.language is Language.CIRC:
            table = {(POS, False): LitKind.POS, (NEG, False): LitKind.NEG,
                     (CIRC, False): LitKind.CIRC, (CIRC, True): LitKind.BULLET}
            kind = table.get((tag, negated))
            if kind is None:
                raise TermError(f"{cto_str(h)} has no ∘-preimage")
        else:
            if tag == CIRC:
                raise TermError(f"{cto_str(h)} has no △-preimage")
            if negated:
                kind = LitKind.NTRI if tag == POS else LitKind.NTRINEG
            elif tag == POS:
                kind = LitKind.POS if Literal(var, LitKind.POS) in hyps else LitKind.TRI
            else:
                kind = LitKind.NEG if Literal(var, LitKind.NEG) in hyps else LitKind.TRINEG
        lits.append(Literal(var, kind))
    return Term.of(lits, problem.language)


def solve_via_classical(problem: AbductionProblem,
                        cls: Union[SolutionClass, str] = SolutionClass.PROPER,
                        max_size: Optional[int] = None) -> list[Term]:
    """Solutions through the classical reduction, one per weak-equivalence
    class, size-then-lexicographic.

    ∘-problems: the reduction does not preserve ⊨-minimality, so for
    ``bd-minimal`` the proper solutions are mapped back and filtered
    natively.
    """
    cls = SolutionClass(cls)
    pcl = reduce_problem(problem)
    bound = len(problem.hypotheses) if max_size is None else max_size
    circ_min = problem.language is Language.CIRC and cls is SolutionClass.BD_MINIMAL
    raw = classical_solve(pcl, SolutionClass.PROPER if circ_min else cls)
    seen = {}
    for sol in raw:
        term = map_back(sol, problem)
        if len(term) > bound:
            continue
        if circ_min and not is_bd_minimal(problem, term):
            continue
        key = profile_of(term)
        if key not in seen or term.key() < seen[key].key():
            seen[key] = term
    return sorted(seen.values(), key=Term.key)


# ---------------------------------------------------------------- classical → BD

def classical_to_bd(f) -> Formula:
    """Read a classical formula as an L_BD formula (``∼`` becomes ``¬``)."""
    if isinstance(f, CVar):
        return Var(f.name)
    if isinstance(f, CNot):
        return Neg(classical_to_bd(f.arg))
    if isinstance(f, CAnd):
        return conj(classical_to_bd(g) for g in f.args)
    if isinstance(f, COr):
        return disj(classical_to_bd(g) for g in f.args)
    raise FragmentError("constants have no L_BD counterpart")


def is_wrappable(pcl: ClassicalProblem) -> bool:
    """Conditions under which the wrapped problem has exactly the classical
    solutions as proper solutions: positive hypotheses outside the
    observation's variables, ``Γ ∪ H`` classically satisfiable, and
    ``Γ ⊭ χ``."""
    if not all(isinstance(h, CVar) for h in pcl.hypotheses):
        return False
    if {h.name for h in pcl.hypotheses} & cprops(pcl.observation):
        return False
    if classical_sat(list(pcl.theory) + list(pcl.hypotheses)) is None:
        return False
    return not classical_entails(list(pcl.theory), pcl.observation)


def wrap_classical_problem(pcl: ClassicalProblem,
                           language: Union[Language, str] = Language.TRIANGLE
                           ) -> AbductionProblem:
    """Four-valued problem that restores classical behaviour.

    Adds ``q ∨ ¬q`` to the theory and ``∨ (q ∧ ¬q)`` to the observation for
    every variable ``q`` of the theory, observation and hypotheses.
    """
    for h in pcl.hypotheses:
        if not isinstance(h, CVar):
            raise FragmentError("wrapping needs positive hypotheses")
    theory = [classical_to_bd(g) for g in pcl.theory]
    chi = classical_to_bd(pcl.observation)
    names = set(props(chi)).union(*[props(g) for g in theory])
    names |= {h.name for h in pcl.hypotheses}
    names = sorted(names)
    theory += [Or(Var(q), Neg(Var(q))) for q in names]
    chi4 = disj([chi] + [And(Var(q), Neg(Var(q))) for q in names])
    hyps = [Literal(h.name, LitKind.POS) for h in pcl.hypotheses]
    return make_problem(theory, chi4, hyps, language)
