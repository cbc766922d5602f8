import random

import pytest

from cantorlab.automata import UPWord
from cantorlab.axioms import is_semifilter, is_upward_closed
from cantorlab.constructions import cof, elaborate, E, fin, semifilter_S
from cantorlab.sandbox import (FiniteFamily, GuardError, TreeCode, accepts, brute_axioms,
                               brute_D_operator, brute_parity_game, filter_h, hat,
                               h_homeomorphism_check, is_downward_closed, k_construction,
                               mask_of, prefilter_normalize, r_family, read_report, shadow,
                               shadow_agreement, up_word_mask, write_report)


def upset(n, core):
    return FiniteFamily.of(n, [m for m in range(1 << n) if m & core == core])


def test_family_bounds():
    with pytest.raises(ValueError):
        FiniteFamily.of(2, [4])


def test_brute_axioms_examples():
    assert brute_axioms(upset(3, 0b001))["upward"][0]
    F = FiniteFamily.of(2, [0b01])
    ok, pair = brute_axioms(F)["upward"]
    assert not ok and pair == (0b01, 0b01 | 0b10)
    assert brute_axioms(F)["finite-mods"][0] == "n/a"


def test_cof_shadow_agrees_with_symbolic():
    A = cof().automaton
    verdicts = {"upward": (True, ()), "∅∉𝒮": (True, ()), "Ω∈𝒮": (True, ())}
    for pad in ((0,), (1,)):
        res = shadow_agreement(A, verdicts, 8, pad)
        assert all(v is not False for v in res.values())
    assert shadow_agreement(A, verdicts, 8, (1,))["Ω∈𝒮"] is True


def test_negative_shadow_comparable():
    v = is_upward_closed(fin())
    res = shadow_agreement(fin().automaton, {"upward": (False, v.witness)}, 8, (0,))
    assert res["upward"] in (True, None)


def test_independent_membership_matches():
    A = semifilter_S().automaton
    from cantorlab.automata import membership
    rng = random.Random(3)
    for _ in range(200):
        stem = [rng.randint(0, 1) for _ in range(rng.randint(0, 5))]
        cyc = [rng.randint(0, 1) for _ in range(rng.randint(1, 5))]
        assert accepts(A, stem, cyc) == membership(A, UPWord(stem, cyc))


def test_cycle_padding():
    assert up_word_mask((1,), (0, 1), 5) == mask_of([1, 0, 1, 0, 1])


def test_tree_code():
    code = TreeCode(3)
    assert len(code) == 7
    assert code.strings[:4] == ["", "0", "1", "00"]
    assert all(code.decode(code.code(s)) == s for s in code.strings)


def test_k_construction():
    K, code = k_construction(2)
    assert len(K) == 4
    H = hat(K)
    assert K.members <= H.members and is_downward_closed(H)
    with pytest.raises(GuardError):
        k_construction(6)


def test_r_family_semiideal_shadow():
    K, _ = k_construction(3)
    R = r_family(hat(K), 1)
    rec = brute_axioms(R)
    assert rec["downward"][0]
    assert 0 in R.members


def test_prefilter_normalize():
    rep = prefilter_normalize(upset(3, 0b011))
    assert rep.branch == "principal" and rep.holds
    assert rep.restricted.members == {0, 0b100}
    edge = prefilter_normalize(FiniteFamily.of(3, [0b111]))
    assert edge.branch == "degenerate"
    with pytest.raises(ValueError):
        prefilter_normalize(FiniteFamily.of(2, [0b01, 0b10, 0b11]))


def test_random_closed_families_are_principal():
    rng = random.Random(5)
    n = 5
    for _ in range(40):
        seeds = [rng.randrange(1, 1 << n) for _ in range(rng.randint(1, 3))]
        mem = {m for m in range(1 << n) if any(m & s == s for s in seeds)}
        while True:
            extra = {x & y for x in mem for y in mem} - mem
            if not extra:
                break
            mem = {m for m in range(1 << n) if any(m & e == e for e in mem | extra)}
        rep = prefilter_normalize(FiniteFamily.of(n, mem))
        assert rep.holds and rep.branch in ("principal", "degenerate")


def test_h_checks():
    assert h_homeomorphism_check("h_F", {"flips": []}, 8).ok
    fam = shadow(fin().automaton, 12)
    assert h_homeomorphism_check("h_F", {"flips": [0], "family": fam}, 12).ok
    F = elaborate(E("Filter51")).automaton
    assert h_homeomorphism_check("filter_h", {"filter": F, "s": (1,)}, 12).ok
    assert h_homeomorphism_check("psi_e", {"e": 0b1001}, 10).ok
    with pytest.raises(GuardError):
        h_homeomorphism_check("psi_e", {"e": 1}, 17)
    with pytest.raises(ValueError):
        h_homeomorphism_check("other", {}, 4)


def test_filter_h_shape():
    x = [0, 1, 1, 0, 1, 1, 0, 0]
    y = filter_h(x)
    assert y[0] == 1 and y[2::2] == x[2::2]
    assert y[1] == x[0] and y[3] == x[1] and y[5] == x[3]


def test_brute_games_single_position():
    for owner in (0, 1):
        for p in range(4):
            assert brute_parity_game([owner], [p], [[0]]) == (p % 2,)
    with pytest.raises(GuardError):
        brute_parity_game([0] * 9, [0] * 9, [[0]] * 9)


def test_brute_D():
    A0 = FiniteFamily.of(3, [1, 3])
    assert brute_D_operator([A0]) == A0
    A1 = FiniteFamily.of(3, [1, 3, 5])
    assert brute_D_operator([A0, A1]).members == {5}
    with pytest.raises(ValueError):
        brute_D_operator([A1, A0])


def test_report_round_trip(tmp_path):
    path = tmp_path / "r.txt"
    write_report(path, [("a", 1), ("b", "x y")])
    assert read_report(path) == [("a", "1"), ("b", "x y")]


def test_semifilter_shadow_is_upward():
    X = semifilter_S()
    assert is_semifilter(X)
    for pad in ((0,), (1,)):
        assert brute_axioms(shadow(X.automaton, 8, pad))["upward"][0]
