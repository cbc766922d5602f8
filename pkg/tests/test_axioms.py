import pytest
from hypothesis import given

from cantorlab import automata as am
from cantorlab.axioms import (finite_union_property, is_closed_finite_mods, is_downward_closed,
                              is_filter, is_ideal, is_semifilter, is_semiideal, is_upward_closed,
                              semifilter_sanity)
from cantorlab.constructions import (comp, cof, cylinder, elaborate, fin, full,
                                     from_automaton, q_times, relabel_complement, semifilter_S,
                                     semifilter_T)
from cantorlab.corpus import CORPUS, corpus_set
from cantorlab.sandbox import brute_finite_union_words
from conftest import automata


def test_upward_examples():
    assert is_upward_closed(cof())
    v = is_upward_closed(fin())
    assert not v and v.axiom == "upward closure"
    x, y = v.witness
    assert am.membership(fin().automaton, x) and not am.membership(fin().automaton, y)
    assert is_upward_closed(full())


def test_downward_examples():
    assert is_downward_closed(fin())
    assert not is_downward_closed(cof())
    assert is_downward_closed(relabel_complement(semifilter_S()))


def test_finite_mods_examples():
    assert is_closed_finite_mods(fin())
    assert not is_closed_finite_mods(cylinder("1"))
    assert is_closed_finite_mods(semifilter_T())


def test_semifilter_examples():
    assert is_semifilter(cof())
    v = is_semifilter(fin())
    assert not v and v.axiom == "∅∉𝒮"
    assert is_semiideal(comp(semifilter_S()))


def test_filter_examples():
    assert is_filter(cof())
    assert is_filter(q_times(full()))
    v = is_filter(semifilter_S())
    assert not v and v.axiom == "closed under intersections"
    x, y = v.witness
    A = semifilter_S().automaton
    assert am.membership(A, x) and am.membership(A, y)


def test_finite_union_examples():
    assert finite_union_property(fin(), 2)
    assert not finite_union_property(full(), 2)
    with pytest.raises(am.AutomatonError):
        finite_union_property(fin(), 4)


@pytest.mark.parametrize("X", [relabel_complement(comp(semifilter_S())), fin(), full(),
                               comp(semifilter_T()), comp(semifilter_S())])
def test_finite_union_matches_depth8_oracle(X):
    brute, _ = brute_finite_union_words(X.automaton, 8, 2)
    assert finite_union_property(X, 2).ok == brute


@pytest.mark.parametrize("name", [e.name for e in CORPUS])
def test_duality(name):
    X = corpus_set(name)
    assert is_semifilter(X).ok == is_semiideal(relabel_complement(X)).ok
    if is_filter(X):
        assert is_semifilter(X)
    if is_ideal(X):
        assert is_semiideal(X)
    if is_semifilter(X):
        assert semifilter_sanity(X)


@given(automata())
def test_duality_random(A):
    X = from_automaton(A)
    assert is_semifilter(X).ok == is_semiideal(relabel_complement(X)).ok


@given(automata())
def test_witnesses_valid(A):
    X = from_automaton(A)
    for check in (is_upward_closed, is_downward_closed, is_closed_finite_mods):
        v = check(X)
        if not v:
            x, y = v.witness
            assert am.membership(X.automaton, x) and not am.membership(X.automaton, y)


def test_expected_failure_names():
    assert is_semifilter(full()).axiom == "∅∉𝒮"
    assert is_semifilter(elaborate(cylinder("1").expr)).axiom == "closed under finite modifications"
