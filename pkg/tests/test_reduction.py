import itertools
import random

import pytest

from bdabduction.abduction import enumerate_solutions, make_problem, profile_of
from bdabduction.classical import CNot, CVar, cevaluate, cparse, cprops, cto_str
from bdabduction.errors import FragmentError, TermError
from bdabduction.formula import to_str
from bdabduction.literals import Language, Term
from bdabduction.problem_io import bundled_problem_path, load_problem
from bdabduction.reduction import (ClassicalProblem, classical_solve, classical_to_bd,
                                   clit_key, is_wrappable, map_back, reduce_circ,
                                   reduce_problem, reduce_triangle, solve_via_classical,
                                   wrap_classical_problem)
from bdabduction.semantics import bd_entails_oracle, bd_sat

from gen import rand_classical, rand_problem

CIRC, TRI = Language.CIRC, Language.TRIANGLE


def bundled(name):
    return load_problem(bundled_problem_path(name))


def _cl(*texts):
    return tuple(cparse(t) for t in texts)


def _show(solutions):
    return [" & ".join(cto_str(x) for x in s) for s in solutions]


def test_reduce_triangle_example():
    pcl = reduce_triangle(bundled("example1_triangle.bd"))
    assert [cto_str(g) for g in pcl.theory] == ["p__pos | q__pos", "p__neg", "q__neg"]
    assert cto_str(pcl.observation) == "q__pos"
    assert set(_show([pcl.hypotheses])[0].split(" & ")) == \
        {"p__pos", "p__neg", "~p__pos", "~p__neg"}


def test_reduce_triangle_maps_triangle_literals():
    problem = make_problem(["p | q"], "q", ["#p", "#!p", "p"], "triangle")
    assert _show([reduce_triangle(problem).hypotheses]) == ["p__neg & p__pos"]
    problem = make_problem(["p | q"], "q", [], "triangle")
    assert reduce_triangle(problem).hypotheses == ()


def test_reduce_circ_example():
    problem = bundled("example1.bd")
    pcl = reduce_circ(problem)
    assert [cto_str(g) for g in pcl.theory[:3]] == ["p__pos | q__pos", "p__neg", "q__neg"]
    link = pcl.theory[3]
    assert {n.split("__")[0] for n in cprops(link)} == {"p", "q"}
    assert _show([pcl.hypotheses]) == ["p__circ & ~p__circ & p__neg & p__pos"]
    assert pcl.observation == cparse(f"~({cto_str(link)}) | q__pos")


def test_reduce_rejects_wrong_language():
    with pytest.raises(FragmentError):
        reduce_circ(bundled("example1_triangle.bd"))
    with pytest.raises(FragmentError):
        reduce_triangle(bundled("example1.bd"))


@pytest.mark.parametrize("name, cls, expected", [
    ("example1_triangle.bd", "theory-minimal", ["~p__pos", "p__neg & ~p__pos"]),
    ("example1_triangle.bd", "bd-minimal", ["~p__pos"]),
    ("example1.bd", "theory-minimal", ["p__circ", "p__circ & p__neg"]),
])
def test_classical_solve_examples(name, cls, expected):
    assert _show(classical_solve(reduce_problem(bundled(name)), cls)) == expected


def test_classical_solve_small_cases():
    pcl = ClassicalProblem(_cl("~a | b"), cparse("b"), _cl("a"))
    assert _show(classical_solve(pcl)) == ["a"]
    pcl = ClassicalProblem(_cl("~a"), cparse("b"), _cl("a"))
    assert classical_solve(pcl, "all") == []


def _brute_classical(pcl):
    """Proper solutions by truth tables, independent of the SAT solver."""
    theory = list(pcl.theory)
    names = sorted(set().union(cprops(pcl.observation), *[cprops(g) for g in theory],
                               *[cprops(h) for h in pcl.hypotheses]))
    rows = [dict(zip(names, bits)) for bits in itertools.product([False, True], repeat=len(names))]

    def entails(prem, concl):
        return all(cevaluate(a, concl) for a in rows if all(cevaluate(a, g) for g in prem))

    out = []
    for r in range(len(pcl.hypotheses) + 1):
        for combo in itertools.combinations(pcl.hypotheses, r):
            prem = theory + list(combo)
            if not any(all(cevaluate(a, g) for g in prem) for a in rows):
                continue
            if entails(prem, pcl.observation) and not entails(list(combo), pcl.observation):
                out.append(combo)
    return out


def _rand_classical_problem(rng, names=("a", "b", "c")):
    theory = tuple(rand_classical(rng, list(names), 2) for _ in range(rng.randint(1, 2)))
    obs = rand_classical(rng, list(names), 2)
    pool = [CVar(n) for n in names] + [CNot(CVar(n)) for n in names]
    hyps = tuple(sorted(rng.sample(pool, rng.randint(1, 4)), key=clit_key))
    return ClassicalProblem(theory, obs, hyps)


def test_classical_solve_matches_truth_tables():
    rng = random.Random(3)
    for _ in range(60):
        pcl = _rand_classical_problem(rng)
        assert classical_solve(pcl, "proper") == _brute_classical(pcl)


@pytest.mark.parametrize("text, language, expected", [
    ("~p__pos", TRI, "!#p"),
    ("~p__neg", TRI, "!#!p"),
    ("p__pos & q__neg", TRI, "p & !q"),
    ("p__circ", CIRC, "@p"),
    ("~p__circ", CIRC, "%p"),
    ("p__pos & p__neg", CIRC, "p & !p"),
])
def test_map_back(text, language, expected):
    problem = make_problem(["p | q"], "q", None, language)
    sol = [cparse(x) for x in text.split(" & ")]
    assert str(map_back(sol, problem)) == expected


def test_map_back_prefers_flat_literals():
    problem = make_problem(["p | q"], "q", ["#p"], "triangle")
    assert str(map_back([cparse("p__pos")], problem)) == "#p"


@pytest.mark.parametrize("text, language", [
    ("p__circ", TRI), ("~p__pos", CIRC), ("p", TRI), ("p__pos | q__pos", TRI),
])
def test_map_back_errors(text, language):
    problem = make_problem(["p | q"], "q", None, language)
    with pytest.raises(TermError):
        map_back([cparse(text)], problem)


def test_hypotheses_round_trip():
    for name in ["example1.bd", "example1_triangle.bd", "contrast.bd"]:
        problem = bundled(name)
        back = {map_back([h], problem) for h in reduce_problem(problem).hypotheses}
        assert {profile_of(t) for t in back} == \
            {profile_of(Term.of([h], problem.language)) for h in problem.hypotheses}


@pytest.mark.parametrize("name", ["example1.bd", "example1_triangle.bd", "example2.bd",
                                  "example2_triangle.bd", "example3.bd",
                                  "example3_triangle.bd", "contrast.bd",
                                  "contrast_triangle.bd"])
@pytest.mark.parametrize("cls", ["all", "proper", "bd-minimal", "theory-minimal"])
def test_via_classical_on_bundled(name, cls):
    problem = bundled(name)
    assert solve_via_classical(problem, cls) == enumerate_solutions(problem, cls)


def test_via_classical_on_random_problems():
    rng = random.Random(11)
    for _ in range(40):
        problem = rand_problem(rng, n_vars=3, restrict_h=0.6)
        if len(problem.hypotheses) > 9:
            continue
        for cls in ["proper", "bd-minimal", "theory-minimal"]:
            assert solve_via_classical(problem, cls) == enumerate_solutions(problem, cls), \
                (str(problem), cls)


# ---------------------------------------------------------------- wrapping

def test_wrap_example():
    pcl = ClassicalProblem(_cl("~a | b"), cparse("b"), _cl("a"))
    problem = wrap_classical_problem(pcl)
    assert [to_str(g) for g in problem.theory] == ["!a | b", "a | !a", "b | !b"]
    assert to_str(problem.observation) == "b | a & !a | b & !b"
    assert [str(t) for t in enumerate_solutions(problem, "proper")] == ["a"]
    assert is_wrappable(pcl)


def test_wrap_unsolvable_stays_unsolvable():
    pcl = ClassicalProblem(_cl("a | b"), cparse("b"), _cl("a"))
    assert classical_solve(pcl) == []
    assert enumerate_solutions(wrap_classical_problem(pcl), "proper") == []


def test_wrap_rejects_negative_hypotheses():
    with pytest.raises(FragmentError):
        wrap_classical_problem(ClassicalProblem(_cl("a"), cparse("b"), _cl("~a")))


def test_classical_to_bd():
    assert to_str(classical_to_bd(cparse("~(a & b) | c"))) == "!(a & b) | c"
    with pytest.raises(FragmentError):
        classical_to_bd(cparse("a & 1"))


def test_wrap_needs_consistent_hypotheses():
    # ¬r ↔ r′ makes r ∧ r′ classically inconsistent with the theory; in the
    # wrapped problem a glut on r is allowed, and then every model has a
    # glut, so r ∧ r′ explains the wrapped observation.
    pcl = ClassicalProblem(_cl("(~r | ~s) & (r | s)"), cparse("t"), _cl("r", "s"))
    assert not is_wrappable(pcl)
    assert classical_solve(pcl) == []
    wrapped = wrap_classical_problem(pcl)
    assert [str(t) for t in enumerate_solutions(wrapped, "proper")] == ["r & s"]


def _wrappable_problems(n, seed):
    rng = random.Random(seed)
    out, rejected = [], 0
    while len(out) < n:
        names = ["a", "b", "c", "d"][:rng.randint(2, 4)]
        theory = tuple(rand_classical(rng, names, 2) for _ in range(rng.randint(1, 2)))
        obs = rand_classical(rng, names[:2], 2)
        hyps = tuple(CVar(x) for x in sorted(rng.sample(names[1:], rng.randint(1, len(names) - 1))))
        pcl = ClassicalProblem(theory, obs, hyps)
        if is_wrappable(pcl):
            out.append(pcl)
        else:
            rejected += 1
    return out, rejected


def test_wrap_round_trip():
    problems, _ = _wrappable_problems(30, 5)
    for pcl in problems:
        classical = {frozenset(h.name for h in s) for s in classical_solve(pcl)}
        wrapped = wrap_classical_problem(pcl)
        # positive literals over distinct variables: one class per term
        native = {frozenset(l.var for l in t) for t in enumerate_solutions(wrapped, "proper")}
        assert classical == native, str(pcl)


def test_wrap_preserves_oracle_verdicts():
    problems, _ = _wrappable_problems(10, 9)
    for pcl in problems:
        wrapped = wrap_classical_problem(pcl)
        for t in enumerate_solutions(wrapped, "proper"):
            prem = list(wrapped.theory) + t.formulas()
            assert bd_sat(prem) is not None
            assert bd_entails_oracle(prem, wrapped.observation)
            assert not bd_entails_oracle(t.formulas(), wrapped.observation)
