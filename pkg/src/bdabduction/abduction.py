"""Abduction problems and their solutions.

A satisfiable term designates exactly the valuations whose value at each
of its variables lies in a fixed set (see
:func:`~bdabduction.terms.value_profile`).  Whether a term is a
solution, proper, or minimal depends only on that profile, so the
search runs over profiles ("classes") rather than over literal sets.
Each class is reported through its representative: the smallest
realization from ``H``, ties broken lexicographically.
"""

from __future__ import annotations

import enum
import itertools
import warnings
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence, Union

from .classical import (c_and, circ_term_counterpart, classical_entails,
                        classical_sat, reduce01, substitute, term_to_classical,
                        to_classical, BOT)
from .errors import FragmentError, ProblemError, ResourceLimitError, TermError
from .formula import Formula, Fragment, fragment, nnf, parse, props, to_str
from .literals import ALL_VALUES, Language, Literal, Term
from .terms import (cl_literals, flatten_term, prefix_profile, term_entails,
                    term_entails_formula, term_sat, term_theory_entails,
                    value_profile)

__all__ = [
    "SolutionClass", "AbductionProblem", "make_problem", "default_hypotheses",
    "is_consistent", "explains", "is_solution", "is_proper_solution",
    "is_bd_minimal", "is_theory_minimal", "enumerate_solutions", "is_relevant",
    "is_necessary", "RelevanceResult", "solution_classes", "profile_of",
    "TruncationWarning", "CLASS_LIMIT", "CheckResult", "check_candidate",
]

# refuse to build more candidate classes than this
CLASS_LIMIT = 200_000


class TruncationWarning(UserWarning):
    """A size bound cut a search short; the answer may be incomplete."""


class SolutionClass(enum.Enum):
    ALL = "all"
    PROPER = "proper"
    BD_MINIMAL = "bd-minimal"
    THEORY_MINIMAL = "theory-minimal"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class AbductionProblem:
    """``⟨Γ, χ, H⟩`` together with the language of its solutions.

    Build instances with :func:`make_problem`, which validates them.
    """

    theory: tuple
    observation: Formula
    hypotheses: frozenset
    language: Language
    default_h: bool = field(default=False, compare=False)

    @cached_property
    def variables(self) -> frozenset[str]:
        """Variables of the theory and the observation."""
        out = set(props(self.observation))
        for g in self.theory:
            out |= props(g)
        return frozenset(out)

    @cached_property
    def hyp_variables(self) -> list[str]:
        return sorted({h.var for h in self.hypotheses})

    @cached_property
    def all_variables(self) -> frozenset[str]:
        return self.variables | frozenset(self.hyp_variables)

    @cached_property
    def theory_cl(self) -> list:
        return [to_classical(nnf(g)) for g in self.theory]

    @cached_property
    def observation_cl(self):
        return to_classical(nnf(self.observation))

    @cached_property
    def circ_link(self):
        return circ_term_counterpart(Term.of([], Language.CIRC), self.all_variables)[1]

    def term(self, text_or_formula) -> Term:
        """Parse a term of this problem's language."""
        if isinstance(text_or_formula, Term):
            return text_or_formula
        if isinstance(text_or_formula, str):
            return Term.parse(text_or_formula, self.language)
        return Term.from_formula(text_or_formula, self.language)

    def __str__(self):
        lines = [f"theory: {to_str(g)}" for g in self.theory]
        lines.append(f"observe: {to_str(self.observation)}")
        lines += [f"hyp: {h}" for h in sorted(self.hypotheses)]
        lines.append(f"language: {self.language.value}")
        return "\n".join(lines)


def default_hypotheses(variables: Iterable[str], language: Language) -> frozenset:
    """Every literal of ``language`` over ``variables``."""
    return frozenset(Literal(p, k) for p in variables for k in language.kinds)


def _as_formula(f) -> Formula:
    return parse(f) if isinstance(f, str) else f


def make_problem(theory: Sequence, observation, hypotheses: Optional[Iterable] = None,
                 language: Union[Language, str] = Language.CIRC) -> AbductionProblem:
    """Validated problem; ``hypotheses=None`` means all literals over the
    variables of the theory and observation.

    Raises :class:`ProblemError` when the theory already entails the
    observation, and :class:`FragmentError`/:class:`TermError` for
    formulas or hypotheses outside the allowed fragments.
    """
    language = Language(language)
    theory = tuple(_as_formula(g) for g in theory)
    observation = _as_formula(observation)
    for g in theory:
        if fragment(g) != Fragment.BD:
            raise FragmentError(f"theory formula {to_str(g)} is not in L_BD")
    if fragment(observation) != Fragment.BD:
        raise FragmentError(f"observation {to_str(observation)} is not in L_BD")
    if hypotheses is None:
        variables = set(props(observation)).union(*[props(g) for g in theory])
        hyps = default_hypotheses(variables, language)
        default = True
    else:
        hyps = frozenset(h if isinstance(h, Literal) else Literal.parse(h) for h in hypotheses)
        default = False
        for h in hyps:
            if h.kind not in language.kinds:
                raise TermError(f"hypothesis {h} is not a {language.value} literal")
    problem = AbductionProblem(theory, observation, hyps, language, default)
    if classical_entails(problem.theory_cl, problem.observation_cl):
        raise ProblemError("the theory already entails the observation")
    return problem


# ---------------------------------------------------------------- single terms

def _check_term(problem: AbductionProblem, term: Term):
    if term.language is not problem.language:
        raise TermError(f"expected a {problem.language.value} term")
    outside = term.literals - problem.hypotheses
    if outside:
        raise TermError(f"literal {min(outside)} is not a hypothesis")


def _consistent(problem, term) -> bool:
    if not term_sat(term):
        return False
    if term.language is Language.TRIANGLE:
        # Γ^cl is ∼-free: after fixing the term's literals, setting every
        # remaining variable true satisfies whatever is left unless it is ⊥
        reduced = reduce01(substitute(c_and(problem.theory_cl), cl_literals(term)))
        return reduced != BOT
    tilde, link = circ_term_counterpart(term, problem.all_variables | term.props)
    return classical_sat(problem.theory_cl + [tilde, link]) is not None


def _explains(problem, term) -> bool:
    if term.language is Language.TRIANGLE:
        premises = problem.theory_cl + [term_to_classical(term)]
    else:
        tilde, link = circ_term_counterpart(term, problem.all_variables | term.props)
        premises = problem.theory_cl + [tilde, link]
    return classical_entails(premises, problem.observation_cl)


def _proper(problem, term) -> bool:
    return (_consistent(problem, term) and _explains(problem, term)
            and not term_entails_formula(term, problem.observation))


def is_consistent(problem: AbductionProblem, term: Term) -> bool:
    """``Γ, τ ⊭ ⊥``."""
    _check_term(problem, term)
    return _consistent(problem, term)


def explains(problem: AbductionProblem, term: Term) -> bool:
    """``Γ, τ ⊨ χ``."""
    _check_term(problem, term)
    return _explains(problem, term)


def is_solution(problem: AbductionProblem, term: Term) -> bool:
    _check_term(problem, term)
    return _consistent(problem, term) and _explains(problem, term)


def is_proper_solution(problem: AbductionProblem, term: Term) -> bool:
    _check_term(problem, term)
    return _proper(problem, term)


def is_bd_minimal(problem: AbductionProblem, term: Term) -> bool:
    """Proper, and no proper solution is strictly weaker.

    Candidates are single-literal deletions of the flattened term (L△),
    plus, for ∘-terms, weakenings of one variable's value set to a larger
    set realizable from ``H``.
    """
    _check_term(problem, term)
    return _proper(problem, term) and _bd_witness(problem, term) is None


def _bd_witness(problem, term):
    for cand in _weaker_candidates(problem, term):
        if _proper(problem, cand) and not term_entails(cand, term):
            return cand
    return None


def _weaker_candidates(problem, term):
    base = flatten_term(term) if term.language is Language.TRIANGLE else term
    for lit in base.sorted():
        yield base.with_literals(base.literals - {lit})
    if term.language is Language.CIRC:
        profile = prefix_profile(term)
        options = _var_options(problem)
        for p, values in sorted(profile.items()):
            rest = [l for l in term.literals if l.var != p]
            for opt in options.get(p, ()):
                if opt.values > values and opt.values != ALL_VALUES:
                    yield term.with_literals(rest + list(opt.realizations[0]))


def is_theory_minimal(problem: AbductionProblem, term: Term,
                      max_size: Optional[int] = None) -> bool:
    """Proper, and no proper solution ``φ`` has ``Γ,τ ⊨ φ`` and ``Γ,φ ⊭ τ``.

    Candidates ``φ`` are searched over all classes whose representative has
    at most ``max_size`` literals (default: no bound, which is complete).
    """
    _check_term(problem, term)
    return _proper(problem, term) and _theory_witness(problem, term, max_size) is None


def _theory_witness(problem, term, max_size=None):
    an = _analysis(problem)
    own = an.entailed_hyps_of_term(term)
    skipped = 0
    for c in an.proper_classes():
        if max_size is not None and c.size > max_size:
            skipped += 1
            continue
        if c.rep.literals <= own and not term.literals <= an.entailed_hyps(c):
            return c.rep
    if skipped:
        warnings.warn(f"{skipped} candidate classes above size {max_size} were not checked",
                      TruncationWarning, stacklevel=3)
    return None


@dataclass(frozen=True)
class CheckResult:
    """Outcome of :func:`check_candidate`; ``witness`` is a better solution
    when a minimality test fails."""

    ok: bool
    reason: str = ""
    witness: Optional[Term] = None

    def __bool__(self):
        return self.ok


def check_candidate(problem: AbductionProblem, term: Term,
                    cls: Union[SolutionClass, str] = SolutionClass.PROPER,
                    max_size: Optional[int] = None) -> CheckResult:
    """Membership of ``term`` in a solution class, naming the first
    condition that fails."""
    cls = SolutionClass(cls)
    _check_term(problem, term)
    if not term_sat(term):
        return CheckResult(False, "the candidate is unsatisfiable")
    if not _consistent(problem, term):
        return CheckResult(False, "inconsistent with the theory")
    if not _explains(problem, term):
        return CheckResult(False, "does not explain the observation")
    if cls is SolutionClass.ALL:
        return CheckResult(True)
    if term_entails_formula(term, problem.observation):
        return CheckResult(False, "not proper: entails the observation by itself")
    if cls is SolutionClass.BD_MINIMAL:
        w = _bd_witness(problem, term)
        if w is not None:
            return CheckResult(False, f"not bd-minimal: weaker proper solution {w}", w)
    if cls is SolutionClass.THEORY_MINIMAL:
        w = _theory_witness(problem, term, max_size)
        if w is not None:
            return CheckResult(False, f"not theory-minimal: preferred solution {w}", w)
    return CheckResult(True)


# ---------------------------------------------------------------- classes

@dataclass(frozen=True)
class _Option:
    """A realizable value set for one variable and its realizations."""

    values: frozenset
    realizations: tuple  # tuples of literals, smallest then lexicographic


@lru_cache(maxsize=128)
def _var_options(problem: AbductionProblem) -> dict:
    by_var: dict[str, list] = {}
    for h in problem.hypotheses:
        by_var.setdefault(h.var, []).append(h)
    out = {}
    for p, lits in by_var.items():
        lits.sort()
        groups: dict = {}
        for r in range(len(lits) + 1):
            for combo in itertools.combinations(lits, r):
                values = ALL_VALUES
                for lit in combo:
                    values = values & lit.values
                if values:
                    groups.setdefault(values, []).append(combo)
        opts = [_Option(v, tuple(sorted(rs, key=lambda c: (len(c), c))))
                for v, rs in groups.items()]
        opts.sort(key=lambda o: (len(o.realizations[0]), o.realizations[0]))
        out[p] = opts
    return out


def profile_of(term: Term) -> tuple:
    """Hashable weak-equivalence key of a satisfiable term."""
    prof = value_profile(term)
    return tuple(sorted((p, v) for p, v in prof.items() if v != ALL_VALUES))


@dataclass
class _Class:
    profile: tuple
    rep: Term
    size: int
    choice: tuple  # option per hypothesis variable
    consistent: bool = False
    explains: bool = False
    proper: bool = False

    @property
    def solution(self):
        return self.consistent and self.explains


class _Analysis:
    """All classes of a problem with their solution status (computed once)."""

    def __init__(self, problem: AbductionProblem):
        self.problem = problem
        self.vars = problem.hyp_variables
        self.options = _var_options(problem)
        count = 1
        for p in self.vars:
            count *= len(self.options[p])
        if count > CLASS_LIMIT:
            raise ResourceLimitError(
                f"{count} candidate classes exceed the limit of {CLASS_LIMIT}")
        self.classes = []
        self.by_profile = {}
        for choice in itertools.product(*[range(len(self.options[p])) for p in self.vars]):
            lits = []
            prof = []
            for p, i in zip(self.vars, choice):
                opt = self.options[p][i]
                lits.extend(opt.realizations[0])
                if opt.values != ALL_VALUES:
                    prof.append((p, opt.values))
            rep = Term.of(lits, problem.language)
            c = _Class(tuple(prof), rep, len(lits), choice)
            self.classes.append(c)
            self.by_profile[c.profile] = c
        self.classes.sort(key=lambda c: c.rep.key())
        for c in self.classes:
            c.consistent = _consistent(problem, c.rep)
            if c.consistent:
                c.explains = _explains(problem, c.rep)
                c.proper = c.explains and not term_entails_formula(c.rep, problem.observation)
        self._entailed = {}
        self._bd_min = None
        self._th_min = None

    def proper_classes(self):
        return [c for c in self.classes if c.proper]

    def lookup(self, term: Term) -> Optional[_Class]:
        if not term_sat(term):
            return None
        return self.by_profile.get(profile_of(term))

    def entailed_hyps_of_term(self, term: Term) -> frozenset:
        return frozenset(h for h in self.problem.hypotheses
                         if term_theory_entails(self.problem.theory, term,
                                                Term.of([h], self.problem.language)))

    def entailed_hyps(self, c: _Class) -> frozenset:
        hit = self._entailed.get(c.profile)
        if hit is None:
            hit = self.entailed_hyps_of_term(c.rep)
            self._entailed[c.profile] = hit
        return hit

    def bd_minimal(self) -> list:
        if self._bd_min is None:
            out = []
            for c in self.proper_classes():
                if not any(w.proper for w in self._single_weakenings(c)):
                    out.append(c)
            self._bd_min = out
        return self._bd_min

    def _single_weakenings(self, c: _Class):
        for k, p in enumerate(self.vars):
            mine = self.options[p][c.choice[k]].values
            for j, opt in enumerate(self.options[p]):
                if opt.values > mine:
                    choice = c.choice[:k] + (j,) + c.choice[k + 1:]
                    yield self._by_choice(choice)

    def _by_choice(self, choice):
        prof = tuple((p, self.options[p][i].values) for p, i in zip(self.vars, choice)
                     if self.options[p][i].values != ALL_VALUES)
        return self.by_profile[prof]

    def theory_minimal(self) -> list:
        if self._th_min is None:
            proper = self.proper_classes()
            out = []
            for c in proper:
                own = self.entailed_hyps(c)
                mine = c.rep.literals
                if not any(d.rep.literals <= own and not mine <= self.entailed_hyps(d)
                           for d in proper):
                    out.append(c)
            self._th_min = out
        return self._th_min

    def select(self, cls: SolutionClass) -> list:
        if cls is SolutionClass.ALL:
            return [c for c in self.classes if c.solution]
        if cls is SolutionClass.PROPER:
            return self.proper_classes()
        if cls is SolutionClass.BD_MINIMAL:
            return self.bd_minimal()
        return self.theory_minimal()


@lru_cache(maxsize=32)
def _analysis(problem: AbductionProblem) -> _Analysis:
    return _Analysis(problem)


def solution_classes(problem: AbductionProblem, cls: Union[SolutionClass, str]) -> list:
    """Profiles of every class of solutions of kind ``cls`` (no size bound)."""
    return [c.profile for c in _analysis(problem).select(SolutionClass(cls))]


def enumerate_solutions(problem: AbductionProblem,
                        cls: Union[SolutionClass, str] = SolutionClass.PROPER,
                        max_size: Optional[int] = None) -> list[Term]:
    """One representative per weak-equivalence class of solutions of kind
    ``cls`` with at most ``max_size`` literals (default ``|H|``), in
    size-then-lexicographic order."""
    cls = SolutionClass(cls)
    bound = len(problem.hypotheses) if max_size is None else max_size
    return [c.rep for c in _analysis(problem).select(cls) if c.size <= bound]


# ---------------------------------------------------------------- relevance

@dataclass(frozen=True)
class RelevanceResult:
    answer: bool
    vacuous: bool = False  # necessity over an empty set of solutions

    def __bool__(self):
        return self.answer


def _realizable_with(an, c: _Class, var: str, values, want_h: Literal,
                     include: bool, bound: int) -> bool:
    rest = c.size - len(an.options[var][c.choice[an.vars.index(var)]].realizations[0])
    for opt in an.options[var]:
        if opt.values != values:
            continue
        for r in opt.realizations:
            if rest + len(r) > bound:
                break
            if (want_h in r) == include:
                return True
    return False


def is_relevant(problem: AbductionProblem, h: Union[Literal, str],
                cls: Union[SolutionClass, str] = SolutionClass.PROPER,
                max_size: Optional[int] = None) -> RelevanceResult:
    """Does ``h`` occur in some solution of kind ``cls`` with at most
    ``max_size`` literals?"""
    h = h if isinstance(h, Literal) else Literal.parse(h)
    if h not in problem.hypotheses:
        raise TermError(f"{h} is not a hypothesis")
    an = _analysis(problem)
    bound = len(problem.hypotheses) if max_size is None else max_size
    k = an.vars.index(h.var)
    for c in an.select(SolutionClass(cls)):
        values = an.options[h.var][c.choice[k]].values
        if _realizable_with(an, c, h.var, values, h, True, bound):
            return RelevanceResult(True)
    return RelevanceResult(False)


def is_necessary(problem: AbductionProblem, h: Union[Literal, str],
                 cls: Union[SolutionClass, str] = SolutionClass.PROPER,
                 max_size: Optional[int] = None) -> RelevanceResult:
    """Does ``h`` occur in every solution of kind ``cls`` with at most
    ``max_size`` literals?  Vacuously true when there is none."""
    h = h if isinstance(h, Literal) else Literal.parse(h)
    if h not in problem.hypotheses:
        raise TermError(f"{h} is not a hypothesis")
    an = _analysis(problem)
    bound = len(problem.hypotheses) if max_size is None else max_size
    k = an.vars.index(h.var)
    selected = [c for c in an.select(SolutionClass(cls)) if c.size <= bound]
    if not selected:
        return RelevanceResult(True, vacuous=True)
    for c in selected:
        values = an.options[h.var][c.choice[k]].values
        if _realizable_with(an, c, h.var, values, h, False, bound):
            return RelevanceResult(False)
    return RelevanceResult(True)
