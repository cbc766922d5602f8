import pytest
from hypothesis import given

from cantorlab import automata as am
from cantorlab.automata import UPWord
from cantorlab.constructions import (E, comp, cof, cylinder, elaborate, empty, fin,
                                     from_automaton, full, interleave_and, relabel_complement,
                                     semifilter_S, semifilter_T)
from cantorlab.wadge import (PreconditionError, ReductionWitness, WitnessError,
                             closed_subset_reduction_check, compose, constant_witness, dichotomy,
                             everywhere_properly, flip_witness, identity_witness, is_self_dual,
                             verify_witness, wadge_compare, wadge_le)
from conftest import automata


def test_fin_to_cof_by_flip():
    res = wadge_le(fin(), cof())
    assert res.holds and verify_witness(res.witness, fin(), cof())
    assert verify_witness(flip_witness(), fin(), cof())
    assert not verify_witness(identity_witness(), fin(), cof())


def test_pi_does_not_reduce_to_sigma():
    assert not wadge_le(comp(fin()), fin()).holds


def test_empty_reduces_by_constant():
    res = wadge_le(empty(), cof())
    assert res.holds
    assert verify_witness(constant_witness(UPWord((), (0,))), empty(), cof())


def test_degenerate_table():
    assert not wadge_le(empty(), full()).holds
    assert not wadge_le(full(), empty()).holds
    assert wadge_le(empty(), fin()).holds
    assert wadge_le(full(), fin()).holds
    assert not wadge_le(fin(), empty()).holds


def test_compare_examples():
    assert wadge_compare(fin(), comp(fin())) == "dual-incomparable"
    assert is_self_dual(cylinder("0"))
    assert wadge_compare(semifilter_S(), semifilter_T()) == "A≡B"
    assert not is_self_dual(fin())


def test_everywhere_properly():
    assert everywhere_properly(fin())
    assert not everywhere_properly(elaborate(E("And", cylinder("0").expr, E("Fin"))))
    assert everywhere_properly(semifilter_S())


def test_closed_subset_lemma():
    S, T = semifilter_S(), semifilter_T()
    assert closed_subset_reduction_check(S, S)
    # a cylinder trace is closed in T
    piece = elaborate(E("And", T.expr, cylinder("0").expr))
    assert closed_subset_reduction_check(piece, T)
    with pytest.raises(PreconditionError):
        closed_subset_reduction_check(cof(), fin())
    with pytest.raises(PreconditionError):
        closed_subset_reduction_check(fin(), full())


def test_closed_copy_inside_S():
    # words vanishing on even positions form a closed set; its trace on S is closed in S
    zero_even = am.ParityAutomaton.build(
        2, 0, [[1, 2], [0, 0], [2, 2]], [[2, 2], [2, 2], [1, 1]])
    X = elaborate(E("And", E("Automaton", zero_even), E("SemifilterS")))
    assert closed_subset_reduction_check(X, semifilter_S())


def test_witness_text_round_trip():
    w = wadge_le(semifilter_S(), semifilter_T()).witness
    assert ReductionWitness.from_text(w.to_text()) == w


def test_non_live_witness_rejected():
    silent = ReductionWitness(0, (((0, ()), (0, ())),))
    assert not silent.is_live()
    assert not verify_witness(silent, fin(), cof())
    with pytest.raises(WitnessError):
        ReductionWitness.from_text("nonsense")


def test_transitivity_by_composition():
    A, B, C = fin(), interleave_and(fin(), full()), semifilter_T()
    ab, bc = wadge_le(A, B), wadge_le(B, C)
    assert ab.holds and bc.holds
    assert verify_witness(compose(ab.witness, bc.witness), A, C)


@given(automata(max_states=3, max_prio=3), automata(max_states=3, max_prio=3))
def test_dichotomy_and_relabel_invariance(A, B):
    X, Y = from_automaton(A), from_automaton(B)
    le, other = dichotomy(X, Y)
    assert le.holds or other.holds
    assert wadge_le(X, Y).holds == wadge_le(relabel_complement(X), relabel_complement(Y)).holds
