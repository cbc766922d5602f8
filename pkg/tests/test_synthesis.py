import json

import pytest

from cantorlab import automata as am
from cantorlab.axioms import is_semifilter, is_semiideal
from cantorlab.constructions import (E, comp, cof, elaborate, fin, full, q_times, semifilter_S,
                                     semifilter_T)
from cantorlab.synthesis import (Refused, SynthesisError, all_indices,
                                 build_semifilter_in_class, certify_main_theorem,
                                 index_from_label, load_certificate,
                                 meager_semiideal_counterpart, semiideal_form, valid_index)
from cantorlab.topology import baire_category, classify, is_locally_compact
from cantorlab.wadge import wadge_compare


def test_index_validity():
    assert valid_index(-1, 1) and valid_index(0, 0) and valid_index(6, 2)
    assert not valid_index(0, 1) and not valid_index(2, 0) and not valid_index(-2, 1)
    assert index_from_label("X^2_6") == (6, 2) and index_from_label("X_4") == (4, 0)
    assert index_from_label("S") == (2, 2)


def test_base_cases():
    X = build_semifilter_in_class(-1, 1)
    assert am.is_equivalent(X.automaton, cof().automaton)
    assert classify(X).label == "Q"
    assert classify(build_semifilter_in_class(-1, 2)).label == "QxC"


def test_S_and_T_rows():
    S = build_semifilter_in_class(2, 2)
    assert classify(S).label == "S"
    assert wadge_compare(S, semifilter_S()) == "A≡B"
    assert classify(build_semifilter_in_class(2, 1)).label == "T"


@pytest.mark.parametrize("n,i", all_indices(7))
def test_builds_are_semifilters_in_their_class(n, i):
    X = build_semifilter_in_class(n, i)
    assert is_semifilter(X)
    assert not is_locally_compact(X)
    assert classify(X, max_class=7).index == (n, i)


def test_build_guards():
    with pytest.raises(SynthesisError):
        build_semifilter_in_class(8, 0)
    with pytest.raises(SynthesisError):
        build_semifilter_in_class(2, 0)


def test_semiideal_form():
    assert is_semiideal(semiideal_form(4))
    assert is_semiideal(semiideal_form(2, 1))


def test_certify_examples():
    cert = certify_main_theorem(comp(fin()))
    assert cert.index == (0, 0) and cert.valid
    cert = certify_main_theorem(q_times(semifilter_S()))
    assert cert.index == (3, 2)
    with pytest.raises(Refused, match="locally compact"):
        certify_main_theorem(full())
    mixed = elaborate(E("Or", E("Cylinder", "1"), E("Fin")))
    with pytest.raises(Refused, match="credential"):
        certify_main_theorem(mixed)


def test_certificate_round_trip():
    cert = certify_main_theorem(semifilter_T())
    text = cert.to_json()
    again = load_certificate(text)
    assert again.valid and again.index == cert.index
    data = json.loads(text)
    data["evidence"]["labels_equal"] = False
    with pytest.raises(SynthesisError):
        load_certificate(json.dumps(data))


def test_meager_counterpart():
    R = meager_semiideal_counterpart(semifilter_S())
    assert is_semiideal(R) and baire_category(R) == "meager"
    assert wadge_compare(comp(R), semifilter_S()) == "A≡B"
    meager_semiideal_counterpart(comp(fin()))
    with pytest.raises(Refused):
        meager_semiideal_counterpart(fin())
