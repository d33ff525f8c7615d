import itertools
import random
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from bdabduction.abduction import (SolutionClass, TruncationWarning, check_candidate,
                                   default_hypotheses, enumerate_solutions, explains,
                                   is_bd_minimal, is_consistent, is_necessary,
                                   is_proper_solution, is_relevant, is_solution,
                                   is_theory_minimal, make_problem, profile_of,
                                   solution_classes)
from bdabduction.errors import FragmentError, ProblemError, TermError
from bdabduction.literals import Language, Literal, Term
from bdabduction.problem_io import bundled_problem_path, load_problem
from bdabduction.semantics import bd_entails_oracle

from gen import brute_solutions, rand_problem

CIRC, TRI = Language.CIRC, Language.TRIANGLE
CLASSES = list(SolutionClass)


def _strs(terms):
    return [str(t) for t in terms]


def bundled(name):
    return load_problem(bundled_problem_path(name))


def _small_problems(n, seed, with_solutions):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        pr = rand_problem(rng, n_vars=3, restrict_h=0.7)
        if len(pr.hypotheses) > 8:
            continue
        if bool(enumerate_solutions(pr, "proper")) == with_solutions:
            out.append(pr)
    return out


# mostly problems that have proper solutions, a few that have none
PROBLEMS = _small_problems(40, 7, True) + _small_problems(8, 8, False)


def _reps(terms):
    best = {}
    for t in terms:
        k = profile_of(t)
        if k not in best or t.key() < best[k].key():
            best[k] = t
    return sorted(best.values(), key=Term.key)


@pytest.mark.parametrize("problem", PROBLEMS, ids=lambda p: str(p).replace("\n", "; "))
def test_enumeration_matches_brute_force(problem):
    brute = brute_solutions(problem, len(problem.hypotheses))
    for cls, expected in zip(CLASSES, brute):
        got = enumerate_solutions(problem, cls)
        assert got == _reps(expected), cls
        # every member of a class is recognised as such
        for t in expected:
            assert check_candidate(problem, t, cls).ok, (cls, t)


@pytest.mark.parametrize("problem", PROBLEMS[:20], ids=lambda p: str(p).replace("\n", "; "))
def test_recognition_matches_brute_force(problem):
    all_, proper, bd_min, th_min = brute_solutions(problem, len(problem.hypotheses))
    hyps = sorted(problem.hypotheses)
    for r in range(len(hyps) + 1):
        for combo in itertools.combinations(hyps, r):
            t = Term.of(combo, problem.language)
            assert is_solution(problem, t) == (t in all_)
            assert is_proper_solution(problem, t) == (t in proper)
            assert is_bd_minimal(problem, t) == (t in bd_min)
            assert is_theory_minimal(problem, t) == (t in th_min)


@pytest.mark.parametrize("problem", PROBLEMS, ids=lambda p: str(p).replace("\n", "; "))
def test_relevance_matches_brute_force(problem):
    brute = brute_solutions(problem, len(problem.hypotheses))
    for cls, terms in zip(CLASSES, brute):
        for h in sorted(problem.hypotheses):
            rel = is_relevant(problem, h, cls)
            nec = is_necessary(problem, h, cls)
            assert rel.answer == any(h in t for t in terms)
            assert nec.answer == all(h in t for t in terms)
            assert nec.vacuous == (not terms)


def test_bounded_enumeration_matches_brute_force():
    for problem in PROBLEMS[:20]:
        brute = brute_solutions(problem, 2)
        # bd-minimality is decided among classes anyway, so a bound only cuts
        for cls, expected in zip(CLASSES[:3], brute[:3]):
            assert enumerate_solutions(problem, cls, max_size=2) == _reps(expected)


# ---------------------------------------------------------------- examples

@pytest.mark.parametrize("name, cls, expected", [
    ("example1.bd", "bd-minimal", ["@p"]),
    ("example1.bd", "theory-minimal", ["@p", "!p & @p"]),
    ("example1_triangle.bd", "bd-minimal", ["!#p"]),
    ("example1_triangle.bd", "theory-minimal", ["!#p", "!p & !#p"]),
    ("example1_default.bd", "theory-minimal", ["%q", "!p & %q"]),
    ("example2.bd", "bd-minimal", ["%p"]),
    ("example2_triangle.bd", "proper", []),
    ("example3_triangle.bd", "theory-minimal", ["!#p & !#!p"]),
    ("example3.bd", "proper", []),
    ("contrast.bd", "bd-minimal", ["q", "!p & @p"]),
    ("contrast.bd", "theory-minimal", ["q"]),
    ("contrast_triangle.bd", "bd-minimal", ["!#p", "q"]),
    ("contrast_triangle.bd", "theory-minimal", ["q"]),
])
def test_bundled_examples(name, cls, expected):
    assert _strs(enumerate_solutions(bundled(name), cls)) == expected


def test_example3_improper_solutions_contain_q():
    problem = bundled("example3.bd")
    sols = enumerate_solutions(problem, "all")
    assert sols and all(Literal.parse("q") in t for t in sols)
    assert not enumerate_solutions(problem, "proper")


def test_example2_necessity():
    problem = bundled("example2.bd")
    assert is_necessary(problem, "%p", "bd-minimal", max_size=2).answer


def test_theory_minimal_need_not_be_bd_minimal():
    # the two notions are incomparable: here a theory-minimal solution has
    # a strictly weaker proper solution
    problem = bundled("example1.bd")
    t = problem.term("!p & @p")
    assert is_theory_minimal(problem, t)
    assert not is_bd_minimal(problem, t)
    res = check_candidate(problem, t, "bd-minimal")
    assert not res.ok and str(res.witness) == "@p"


def test_bd_minimal_need_not_be_theory_minimal():
    problem = bundled("contrast.bd")
    t = problem.term("!p & @p")
    assert is_bd_minimal(problem, t)
    assert not is_theory_minimal(problem, t)
    res = check_candidate(problem, t, "theory-minimal")
    assert res.reason == "not theory-minimal: preferred solution q"


def _theory_entails_term(problem, rho, sigma):
    prem = list(problem.theory) + rho.formulas()
    return len(sigma) == 0 or bd_entails_oracle(prem, sigma.to_formula())


@pytest.mark.parametrize("problem", PROBLEMS, ids=lambda p: str(p).replace("\n", "; "))
def test_theory_minimal_has_equivalent_bd_minimal(problem):
    # each theory-minimal class is theory-equivalent to one that is also
    # bd-minimal
    th = enumerate_solutions(problem, "theory-minimal")
    both = [t for t in th if is_bd_minimal(problem, t)]
    for t in th:
        assert any(_theory_entails_term(problem, t, u) and _theory_entails_term(problem, u, t)
                   for u in both), t


def test_check_candidate_reasons():
    problem = bundled("example1.bd")
    cases = {
        "p & !p & @p": "the candidate is unsatisfiable",
        "p & @p": "inconsistent with the theory",
        "%p": "does not explain the observation",
        "!p & @p": "",
    }
    for text, reason in cases.items():
        res = check_candidate(problem, problem.term(text), "proper")
        assert res.reason == reason, text
    problem = make_problem(["p | q"], "q & p", None, "triangle")
    res = check_candidate(problem, problem.term("q & p"), "proper")
    assert res.reason == "not proper: entails the observation by itself"


def test_single_term_checks():
    problem = bundled("example1.bd")
    t = problem.term("@p")
    assert is_consistent(problem, t) and explains(problem, t)
    assert is_solution(problem, t) and is_proper_solution(problem, t)


def test_terms_outside_h_are_rejected():
    problem = bundled("example1.bd")
    with pytest.raises(TermError):
        is_solution(problem, problem.term("q"))
    with pytest.raises(TermError):
        is_solution(problem, Term.parse("!#p", TRI))
    with pytest.raises(TermError):
        is_relevant(problem, "q")


def test_make_problem_validation():
    with pytest.raises(ProblemError):
        make_problem(["p & q"], "q")
    with pytest.raises(FragmentError):
        make_problem(["#p"], "q")
    with pytest.raises(FragmentError):
        make_problem(["p"], "@q")
    with pytest.raises(TermError):
        make_problem(["p"], "q", ["#q"], "circ")
    problem = make_problem(["p | q"], "q")
    assert problem.hypotheses == default_hypotheses(["p", "q"], CIRC)
    assert len(problem.hypotheses) == 8
    assert len(default_hypotheses(["p"], TRI)) == 6


def test_theory_minimal_bound_warns():
    problem = bundled("contrast.bd")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert is_theory_minimal(problem, problem.term("!p & @p"), max_size=0)
    assert any(issubclass(w.category, TruncationWarning) for w in caught)


def test_solution_classes_are_profiles():
    problem = bundled("contrast.bd")
    profs = solution_classes(problem, "theory-minimal")
    assert profs == [profile_of(problem.term("q"))]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_representatives_are_canonical(seed):
    problem = rand_problem(random.Random(seed), n_vars=2, restrict_h=0.5)
    for cls in CLASSES:
        reps = enumerate_solutions(problem, cls)
        assert reps == sorted(reps, key=Term.key)
        assert len({profile_of(t) for t in reps}) == len(reps)
        for t in reps:
            assert t.literals <= problem.hypotheses
            assert check_candidate(problem, t, cls).ok
