import itertools
import random

import pytest
from hypothesis import given, strategies as st

from cantorlab import automata as am
from cantorlab.automata import UPWord
from cantorlab.constructions import (ConstructionError, E, comp, cof, cylinder, diff_hierarchy,
                                     elaborate, empty, fin, fin_shield, finite_flip, full,
                                     interleave_and, interleave_or, phi_closure, phi_decode, q0,
                                     q1, q_times, relabel_complement, semifilter_S, semifilter_T,
                                     separated_union)
from cantorlab.corpus import CORPUS, corpus_set
from conftest import all_words, words

ALL = lambda: all_words(3, 3)  # noqa: E731


def eq(X, Y):
    return am.is_equivalent(X.automaton, Y.automaton)


def mem(X, w):
    return am.membership(X.automaton, w)


def long_prefix(w, n=64):
    return w.prefix(n)


def test_basic_memberships():
    assert mem(fin(), UPWord((), (0,)))
    assert mem(cof(), UPWord((), (1,)))
    assert eq(q0(), fin())
    assert not mem(q1(), UPWord((), (0,)))


def test_cylinder():
    C = cylinder("01")
    for w in ALL():
        assert mem(C, w) == (w.prefix(2) == (0, 1))


def test_relabel_complement_of_fin_is_cof():
    assert eq(relabel_complement(fin()), cof())


@pytest.mark.parametrize("name", [e.name for e in CORPUS])
def test_comp_involution(name):
    X = corpus_set(name)
    assert eq(comp(comp(X)), X)
    assert eq(finite_flip(X, []), X)


@given(words(max_stem=5), st.lists(st.integers(0, 5), max_size=3))
def test_finite_flip_pointwise(w, flips):
    X = semifilter_S()
    stem = list(w.stem) + list(w.cycle) * 6
    flipped = [b ^ (1 if i in flips else 0) for i, b in enumerate(stem)]
    v = UPWord(flipped, w.cycle)
    u = UPWord(stem, w.cycle)
    assert mem(finite_flip(X, flips), u) == mem(X, v)


def test_named_semifilters_contain_omega():
    ones = UPWord((), (1,))
    assert mem(semifilter_T(), ones) and mem(semifilter_S(), ones)


def test_q_times_full_is_even_track_filter():
    F = q_times(full())
    for w in all_words(4, 4):
        p = long_prefix(w)
        even_cofinite = all(p[i] == 1 for i in range(40, 64, 2))
        assert mem(F, w) == even_cofinite


def test_fin_shield_of_cof_is_T():
    assert eq(fin_shield(cof()), semifilter_T())


@pytest.mark.parametrize("X", [fin, cof, empty, semifilter_S])
def test_fin_shield_even_ones(X):
    Y = fin_shield(X())
    for w in all_words(2, 2):
        odd = [w[2 * i + 1] for i in range(8)]
        word = UPWord((), tuple(b for o in odd for b in (1, o)))
        assert mem(Y, word)


def test_interleave_forms():
    A, B = fin(), cof()
    for w in all_words(3, 4):
        p = long_prefix(w)
        even_fin = all(p[i] == 0 for i in range(40, 64, 2))
        odd_cof = all(p[i] == 1 for i in range(41, 64, 2))
        assert mem(interleave_or(A, B), w) == (even_fin or odd_cof)
        assert mem(interleave_and(A, B), w) == (even_fin and odd_cof)


def test_diff_hierarchy_small_cases():
    A0, A1 = cylinder("00"), cylinder("0")
    assert eq(diff_hierarchy([A1]), A1)
    expected = elaborate(E("And", A1.expr, E("Comp", A0.expr)))
    assert eq(diff_hierarchy([A0, A1]), expected)


def test_diff_hierarchy_rejects_non_increasing():
    with pytest.raises(ConstructionError, match="0.*1"):
        diff_hierarchy([cylinder("0"), cylinder("1")])


def test_separated_union():
    assert eq(separated_union([(fin(), full())]), fin())
    assert eq(separated_union([]), empty())
    X = separated_union([(fin(), cylinder("0")), (cof(), cylinder("1"))])
    rng = random.Random(7)
    sample = list(all_words(4, 4))
    for w in rng.sample(sample, 50):
        piece = fin() if w[0] == 0 else cof()
        assert mem(X, w) == mem(piece, w)


def test_separated_union_rejects_overlap():
    with pytest.raises(ConstructionError, match="0.*1"):
        separated_union([(fin(), cylinder("0")), (cof(), cylinder("01"))])


def test_phi_closure_trivial_cases():
    assert eq(phi_closure(empty()), q0())
    assert eq(phi_closure(full()), comp(q1()))


def brute_blocks(prefix):
    out, run = [], 0
    for b in prefix:
        if b == 0:
            run += 1
        elif run:
            out.append(run % 2)
            run = 0
    return out


def test_phi_decode_matches_block_parsing():
    for w in all_words(4, 4):
        d = phi_decode(w)
        c = w.cycle
        if all(b == c[0] for b in c):
            assert d is None
            continue
        blocks = brute_blocks(w.prefix(80))
        assert d.prefix(len(blocks)) == tuple(blocks)


def test_phi_closure_membership():
    X = semifilter_T()
    P = phi_closure(X)
    for w in all_words(3, 4):
        d = phi_decode(w)
        expected = mem(q0(), w) if d is None else mem(X, d)
        assert mem(P, w) == expected


def test_semifilter_definitions_pointwise():
    # S: even track infinite, or the positions 1 mod 4 eventually all ones
    # T: even track infinite, or the odd track cofinite
    for w in all_words(4, 4):
        p = long_prefix(w, 96)
        even_inf = any(p[i] for i in range(48, 96, 2))
        mod4 = all(p[i] for i in range(49, 96, 4))
        odd_cof = all(p[i] for i in range(49, 96, 2))
        assert mem(semifilter_S(), w) == (even_inf or mod4)
        assert mem(semifilter_T(), w) == (even_inf or odd_cof)


def test_constructed_semifilters_dense():
    for X in (semifilter_S(), semifilter_T(), q_times(semifilter_S())):
        A = X.automaton
        for n in range(7):
            for s in itertools.product((0, 1), repeat=n):
                q = A.run(s)
                assert not am.is_empty(A.with_initial(q))[0]
