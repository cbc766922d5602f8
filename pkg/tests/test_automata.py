import pytest
from hypothesis import given

from cantorlab import automata as am
from cantorlab.automata import AutomatonError, Formula, ParityAutomaton, UPWord
from cantorlab.constructions import cof_automaton, fin_automaton
from conftest import all_words, automata, words

FIN = fin_automaton()
COF = cof_automaton()


def test_membership_examples():
    assert am.membership(FIN, UPWord((), (0,)))
    assert not am.membership(FIN, UPWord((), (1,)))
    assert am.membership(FIN, UPWord((1, 1, 0, 1), (0,)))


def test_membership_rejects_bad_letter():
    with pytest.raises(AutomatonError):
        am.membership(FIN, UPWord((), (2,)))


def test_upword_parse_and_canonical():
    w = UPWord.parse("01(01)")
    assert w.canonical() == UPWord.parse("(01)").canonical()
    assert w.same_word(UPWord((0,), (1, 0)))
    assert str(UPWord((1,), (0, 0)).canonical()) == "1(0)"


def test_cycle_must_be_nonempty():
    with pytest.raises(AutomatonError):
        UPWord((0,), ())


def test_transition_must_be_total():
    with pytest.raises(AutomatonError):
        ParityAutomaton.build(2, 0, [[0]], [[0, 0]])


def test_combine_fin_and_cof_is_empty():
    both = am.combine([FIN, COF], "and")
    assert am.is_empty(both)[0]
    assert not any(am.membership(both, w) for w in all_words())


def test_combine_alphabet_mismatch():
    with pytest.raises(AutomatonError):
        am.combine([FIN, am.constant(True, 4)], "and")


def test_empty_and_full():
    assert am.is_empty(am.constant(False))[0]
    empty, w = am.is_empty(am.constant(True))
    assert not empty and am.membership(am.constant(True), w)


def test_subset_examples():
    assert am.is_subset(COF, am.complement(FIN))[0]
    ok, w = am.is_subset(am.complement(FIN), COF)
    assert not ok
    assert am.membership(am.complement(FIN), w) and not am.membership(COF, w)
    assert am.is_equivalent(FIN, FIN)


@given(automata(), words())
def test_complement_involution(A, w):
    assert am.membership(am.complement(A), w) != am.membership(A, w)
    assert am.membership(am.combine([A], "not"), w) != am.membership(A, w)
    assert am.is_equivalent(am.complement(am.complement(A)), A)


@given(automata(), automata())
def test_de_morgan(A, B):
    lhs = am.complement(am.combine([A, B], "and"))
    rhs = am.combine([am.complement(A), am.complement(B)], "or")
    assert am.is_equivalent(lhs, rhs)


@given(automata(), automata(), words())
def test_combine_matches_pointwise(A, B, w):
    a, b = am.membership(A, w), am.membership(B, w)
    f = Formula.var(0).xor(Formula.var(1))
    assert am.membership(am.combine([A, B], f), w) == (a != b)
    assert am.membership(am.combine([A, B], "or"), w) == (a or b)


@given(automata())
def test_combine_idempotent(A):
    assert am.is_equivalent(am.combine([A, A], "and"), A)


@given(automata())
def test_emptiness_witness_sound(A):
    empty, w = am.is_empty(A)
    if not empty:
        assert am.membership(A, w)


@given(automata(), words())
def test_normalize_preserves_language(A, w):
    N = am.normalize(A)
    assert am.membership(N, w) == am.membership(A, w)
    assert am.normalize(N) == N
    assert am.reachable_states(N) == set(range(N.num_states))


@given(automata(alphabet_size=4, max_states=3), words(alphabet_size=4))
def test_four_letter_alphabet(A, w):
    assert am.membership(am.complement(A), w) != am.membership(A, w)
