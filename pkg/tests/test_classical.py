import itertools

import pytest
from hypothesis import given, settings, strategies as st

from bdabduction.classical import (BOT, TOP, CAnd, CConst, CNot, COr, CVar, bd_entails_sat,
                                   c_iff, cevaluate, circ_term_counterpart, classical_entails,
                                   classical_sat, classical_to_valuation, cnnf, cparse, cprops,
                                   cto_str, embed_circ, embed_cpl_entailment, embed_triangle,
                                   literal_to_classical, reduce01, split_signed, substitute,
                                   term_to_classical, to_classical, valuation_to_classical)
from bdabduction.errors import FragmentError, ParseError
from bdabduction.formula import And, Neg, Var, nnf, parse, props
from bdabduction.literals import Language, Literal, LitKind, Term
from bdabduction.semantics import VALUE_ORDER, bd_entails_oracle, evaluate, valuations

from gen import bd_formulas, formulas, terms


def _models(fs):
    names = sorted(set().union(*[cprops(f) for f in fs]))
    for bits in itertools.product([False, True], repeat=len(names)):
        a = dict(zip(names, bits))
        if all(cevaluate(a, f) for f in fs):
            yield a


def _cl(f, a):
    """Two-valued reading of an L_BD formula."""
    if isinstance(f, Var):
        return a[f.name]
    if isinstance(f, Neg):
        return not _cl(f.arg, a)
    if isinstance(f, And):
        return _cl(f.left, a) and _cl(f.right, a)
    return _cl(f.left, a) or _cl(f.right, a)


def _cpl_entails(phi, chi):
    names = sorted(props(phi) | props(chi))
    return all(_cl(chi, a) for bits in itertools.product([False, True], repeat=len(names))
               for a in [dict(zip(names, bits))] if _cl(phi, a))


cformulas = st.recursive(
    st.sampled_from(["a", "b", "c", "d"]).map(CVar) | st.sampled_from([TOP, BOT]),
    lambda ch: st.one_of(ch.map(CNot),
                         st.lists(ch, min_size=2, max_size=3).map(lambda xs: CAnd(tuple(xs))),
                         st.lists(ch, min_size=2, max_size=3).map(lambda xs: COr(tuple(xs)))),
    max_leaves=12)


@pytest.mark.parametrize("text, expected", [
    ("!#p | #!q & r", "~p__pos | q__neg & r__pos"),
    ("!p & #!#!p", "p__neg & ~p__neg"),
    ("p | !q", "p__pos | q__neg"),
])
def test_translation_examples(text, expected):
    assert cto_str(to_classical(nnf(parse(text)))) == expected


@pytest.mark.parametrize("text", ["@p", "!(p & q)", "!!p", "##p"])
def test_translation_needs_nnf(text):
    with pytest.raises(FragmentError):
        to_classical(parse(text))


@settings(max_examples=200)
@given(formulas(circ=False), st.lists(st.sampled_from(VALUE_ORDER), min_size=3, max_size=3))
def test_translation_preserves_designation(f, vals):
    v = dict(zip("pqr", vals))
    a = valuation_to_classical(v, "pqr")
    assert evaluate(v, f).designated == cevaluate(a, to_classical(nnf(f)))


@given(st.lists(st.sampled_from(VALUE_ORDER), min_size=3, max_size=3))
def test_valuation_bijection(vals):
    v = dict(zip("pqr", vals))
    assert classical_to_valuation(valuation_to_classical(v, "pqr"), "pqr") == v
    a = valuation_to_classical(v, "pqr", with_circ=True)
    for name in "pqr":
        assert a[f"{name}__circ"] == evaluate(v, parse(f"@{name}")).designated


@settings(max_examples=200)
@given(st.lists(cformulas, min_size=1, max_size=3))
def test_sat_matches_brute_force(fs):
    first = next(_models(fs), None)
    model = classical_sat(fs)
    if first is None:
        assert model is None
    else:
        assert model is not None and all(cevaluate(model, f) for f in fs)
        # least model with false < true, variables in sorted order
        assert model == first


def test_sat_prefers_false():
    assert classical_sat([cparse("a | b")]) == {"a": False, "b": True}
    assert classical_sat([cparse("a & ~a")]) is None
    assert classical_sat([TOP]) == {}
    assert classical_sat([BOT]) is None


@settings(max_examples=100)
@given(cformulas, cformulas)
def test_entails_with_witness(a, b):
    ok, w = classical_entails([a], b, witness=True)
    expected = all(cevaluate(m, b) for m in _models([a])) if cprops(a) >= cprops(b) else None
    if expected is not None:
        assert ok == expected
    if not ok:
        assert cevaluate(w, a) and not cevaluate(w, b)


@given(cformulas)
def test_cnnf_and_reduce01_equivalent(f):
    names = sorted(cprops(f))
    for bits in itertools.product([False, True], repeat=len(names)):
        a = dict(zip(names, bits))
        assert cevaluate(a, cnnf(f)) == cevaluate(a, f)
        assert cevaluate(a, reduce01(f)) == cevaluate(a, f)
    g = reduce01(f)
    assert isinstance(g, CConst) or TOP not in _leaves(g) and BOT not in _leaves(g)


def _leaves(f):
    if isinstance(f, (CAnd, COr)):
        return [x for g in f.args for x in _leaves(g)]
    if isinstance(f, CNot):
        return _leaves(f.arg)
    return [f]


def test_reduce01_rules():
    assert reduce01(cparse("1 & a")) == CVar("a")
    assert reduce01(cparse("1 | a")) == TOP
    assert reduce01(cparse("0 & a")) == BOT
    assert reduce01(cparse("0 | a")) == CVar("a")
    assert reduce01(substitute(cparse("a & (b | ~c)"), {"a": True, "c": True})) == CVar("b")


@given(cformulas)
def test_cparse_round_trip(f):
    assert cparse(cto_str(f)) == f


@pytest.mark.parametrize("text", ["a &", "a ! b", "(a", "A"])
def test_cparse_errors(text):
    with pytest.raises(ParseError):
        cparse(text)


def test_signed_names():
    assert split_signed("p__pos") == ("p", "pos")
    assert split_signed("p__circ") == ("p", "circ")
    assert split_signed("p") is None


@settings(max_examples=100)
@given(st.lists(formulas(max_leaves=5), max_size=2), formulas(max_leaves=5))
def test_sat_engine_agrees_with_oracle(theory, concl):
    ok, w = bd_entails_sat(theory, concl, witness=True)
    assert ok == bd_entails_oracle(theory, concl)
    if not ok:
        assert all(evaluate(w, g).designated for g in theory)
        assert not evaluate(w, concl).designated


@settings(max_examples=100)
@given(bd_formulas(max_leaves=6), bd_formulas(max_leaves=6))
def test_embeddings_capture_classical_entailment(phi, chi):
    expected = _cpl_entails(phi, chi)
    assert bd_entails_oracle([embed_triangle(phi)], embed_triangle(chi)) == expected
    assert bd_entails_oracle([embed_circ(phi)], embed_circ(chi)) == expected
    premises, conclusion = embed_cpl_entailment(phi, chi)
    assert bd_entails_oracle(premises, conclusion) == expected


def test_embedding_rejects_modal_input():
    with pytest.raises(FragmentError):
        embed_triangle(parse("#p"))


@settings(max_examples=150)
@given(terms(Language.CIRC), st.lists(st.sampled_from(VALUE_ORDER), min_size=3, max_size=3))
def test_circ_counterpart(term, vals):
    v = dict(zip("pqr", vals))
    tilde, link = circ_term_counterpart(term, "pqr")
    a = valuation_to_classical(v, "pqr", with_circ=True)
    assert cevaluate(a, link)
    designated = all(evaluate(v, f).designated for f in term.formulas())
    assert cevaluate(a, tilde) == designated


def test_circ_counterpart_needs_all_variables():
    with pytest.raises(FragmentError):
        circ_term_counterpart(Term.parse("@p & q", Language.CIRC), ["p"])


def test_literal_images():
    assert cto_str(literal_to_classical(Literal("p", LitKind.CIRC))) == "p__circ"
    assert cto_str(literal_to_classical(Literal("p", LitKind.BULLET))) == "~p__circ"
    assert cto_str(term_to_classical(Term.parse("!#!p & q", Language.TRIANGLE))) == \
        "~p__neg & q__pos"


def test_link_shape():
    _, link = circ_term_counterpart(Term.parse("@p", Language.CIRC), ["p"])
    assert link == c_iff(CNot(CVar("p__circ")), c_iff(CVar("p__pos"), CVar("p__neg")))
    assert {split_signed(n)[0] for n in cprops(link)} == {"p"}
    for v in valuations(["p"]):
        a = valuation_to_classical(v, ["p"], with_circ=True)
        assert cevaluate(a, link)
        a["p__circ"] = not a["p__circ"]
        assert not cevaluate(a, link)
