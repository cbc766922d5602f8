"""Decision procedures for the closure axioms of semifilters and semiideals.

Each check builds a product automaton over tuples of bits and asks whether
it is empty.  With ``k`` tracks a letter ``l`` carries bit
``(l >> (k - 1 - i)) & 1`` on track ``i``, so a pair ``(x, y)`` is the
letter ``2x + y``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import automata as am
from .automata import Formula, ParityAutomaton, UPWord
from .constructions import CantorSet, cof_automaton

ZEROS = UPWord((), (0,))
ONES = UPWord((), (1,))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    axiom: str | None = None
    witness: tuple = ()

    def __bool__(self):
        return self.ok

    def record(self) -> dict:
        return {"verdict": self.ok, "axiom": self.axiom,
                "witness": [str(w) for w in self.witness]}


@dataclass(frozen=True)
class PairRelation:
    name: str
    automaton: ParityAutomaton


def track(A: ParityAutomaton, i: int, k: int) -> ParityAutomaton:
    return am.map_letters(A, 1 << k, lambda l: (l >> (k - 1 - i)) & 1)


def split_word(w: UPWord, k: int) -> tuple:
    def bits(seq, i):
        return [(l >> (k - 1 - i)) & 1 for l in seq]

    return tuple(UPWord(bits(w.stem, i), bits(w.cycle, i)).canonical() for i in range(k))


def pointwise_le() -> PairRelation:
    # letter (1,0) = 2 falls into the rejecting sink
    A = ParityAutomaton.build(4, 0, [[0, 0, 1, 0], [1, 1, 1, 1]], [[0, 0, 1, 0], [1, 1, 1, 1]])
    return PairRelation("pointwise-<=", am.normalize(A))


def pointwise_ge() -> PairRelation:
    A = ParityAutomaton.build(4, 0, [[0, 1, 0, 0], [1, 1, 1, 1]], [[0, 1, 0, 0], [1, 1, 1, 1]])
    return PairRelation("pointwise->=", am.normalize(A))


def eventually_equal() -> PairRelation:
    A = ParityAutomaton.build(4, 0, [[0, 0, 0, 0]], [[2, 1, 1, 2]])
    return PairRelation("eventually-equal", am.normalize(A))


def _relation_check(A: ParityAutomaton, rel: PairRelation, axiom: str) -> Verdict:
    """Is ``{(x, y) : x in A, rel(x, y), y not in A}`` empty?"""
    prod = am.combine([track(A, 0, 2), rel.automaton, track(A, 1, 2)],
                      Formula.var(0) & Formula.var(1) & ~Formula.var(2))
    empty, w = am.is_empty(prod)
    if empty:
        return Verdict(True)
    x, y = split_word(w, 2)
    assert am.membership(A, x) and not am.membership(A, y), "invalid counterexample"
    return Verdict(False, axiom, (x, y))


def _aut(X) -> ParityAutomaton:
    return X.automaton if isinstance(X, CantorSet) else X


@lru_cache(maxsize=None)
def _upward(A):
    return _relation_check(A, pointwise_le(), "upward closure")


@lru_cache(maxsize=None)
def _downward(A):
    return _relation_check(A, pointwise_ge(), "downward closure")


@lru_cache(maxsize=None)
def _finite_mods(A):
    return _relation_check(A, eventually_equal(), "closed under finite modifications")


def is_upward_closed(X) -> Verdict:
    return _upward(am.normalize(_aut(X)))


def is_downward_closed(X) -> Verdict:
    return _downward(am.normalize(_aut(X)))


def is_closed_finite_mods(X) -> Verdict:
    return _finite_mods(am.normalize(_aut(X)))


def _constants(A, zeros_in: bool, ones_in: bool, names) -> Verdict | None:
    if am.membership(A, ZEROS) != zeros_in:
        return Verdict(False, names[0], (ZEROS,))
    if am.membership(A, ONES) != ones_in:
        return Verdict(False, names[1], (ONES,))
    return None


def is_semifilter(X) -> Verdict:
    A = am.normalize(_aut(X))
    bad = _constants(A, False, True, ("∅∉𝒮", "Ω∈𝒮"))
    if bad is not None:
        return bad
    for check in (_finite_mods, _upward):
        v = check(A)
        if not v:
            return v
    return Verdict(True)


def is_semiideal(X) -> Verdict:
    A = am.normalize(_aut(X))
    bad = _constants(A, True, False, ("∅∈ℛ", "Ω∉ℛ"))
    if bad is not None:
        return bad
    for check in (_finite_mods, _downward):
        v = check(A)
        if not v:
            return v
    return Verdict(True)


def _lattice_check(A, meet: bool, axiom: str) -> Verdict:
    op = (lambda l: (l >> 1) & l & 1) if meet else (lambda l: ((l >> 1) | l) & 1)
    combined = am.map_letters(A, 4, op)
    prod = am.combine([track(A, 0, 2), track(A, 1, 2), combined],
                      Formula.var(0) & Formula.var(1) & ~Formula.var(2))
    empty, w = am.is_empty(prod)
    if empty:
        return Verdict(True)
    x, y = split_word(w, 2)
    z = UPWord([op(l) for l in w.stem], [op(l) for l in w.cycle])
    assert am.membership(A, x) and am.membership(A, y) and not am.membership(A, z)
    return Verdict(False, axiom, (x, y))


def is_meet_closed(X) -> Verdict:
    return _lattice_check(am.normalize(_aut(X)), True, "closed under intersections")


def is_join_closed(X) -> Verdict:
    return _lattice_check(am.normalize(_aut(X)), False, "closed under unions")


def is_filter(X) -> Verdict:
    v = is_semifilter(X)
    if not v:
        return v
    return is_meet_closed(X)


def is_ideal(X) -> Verdict:
    v = is_semiideal(X)
    if not v:
        return v
    return is_join_closed(X)


def finite_union_property(X, k: int = 2) -> Verdict:
    """No ``k`` members of ``X`` have a cofinite union (checked for k in {2, 3})."""
    if k not in (2, 3):
        raise am.AutomatonError("finite union property is supported for k = 2 or 3 only")
    A = am.normalize(_aut(X))
    tracks = [track(A, i, k) for i in range(k)]
    joined = am.map_letters(cof_automaton(), 1 << k, lambda l: 1 if l else 0)
    f = Formula.var(0)
    for i in range(1, k + 1):
        f = f & Formula.var(i)
    empty, w = am.is_empty(am.combine(tracks + [joined], f))
    if empty:
        return Verdict(True)
    parts = split_word(w, k)
    assert all(am.membership(A, p) for p in parts)
    return Verdict(False, "finite union property", parts)


def semifilter_sanity(X) -> bool:
    """Cof is contained in X and X misses Fin."""
    from .constructions import fin_automaton

    A = am.normalize(_aut(X))
    return am.is_subset(cof_automaton(), A)[0] and am.is_empty(
        am.intersect(A, fin_automaton()))[0]
