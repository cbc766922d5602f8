"""Named subsets of Cantor space and the constructors that combine them.

Every set is a :class:`CantorSet`: a two-letter parity automaton paired with
the :class:`SetExpr` that produced it.  Positions are split into two tracks,
evens and odds; inside the odd track the positions congruent to 1 mod 4
form the sub-track used by the S construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import automata as am
from .automata import AutomatonError, ParityAutomaton, UPWord, normalize


class ConstructionError(AutomatonError):
    pass


# ---------------------------------------------------------------------------
# expressions

NULLARY = ("Empty", "Full", "Fin", "Cof", "Q0", "Q1", "SemifilterS", "SemifilterT")
UNARY = ("Comp", "RelabelComplement", "PhiClosure", "QTimes", "FinShield")
BINARY = ("InterleaveOr", "InterleaveAnd", "And", "Or")
VARIADIC = ("Diff", "SepUnion")
SPECIAL = ("Cylinder", "FiniteFlip")
ALIASES = {
    "CompFin": ("Comp", ("Fin",)),
    "Filter51": ("QTimes", ("Full",)),
    "QxP": ("QTimes", (("Comp", ("Fin",)),)),
    "QxS": ("QTimes", ("SemifilterS",)),
    "QxT": ("QTimes", ("SemifilterT",)),
    "S": ("SemifilterS", ()),
    "T": ("SemifilterT", ()),
}


@dataclass(frozen=True)
class SetExpr:
    """Construction AST node.

    ``args`` holds sub-expressions, except for ``Cylinder`` (a bit string),
    ``FiniteFlip`` (an expression and a sorted tuple of positions) and
    ``SepUnion`` (a tuple of ``(piece, window)`` expression pairs).
    """

    op: str
    args: tuple = ()

    def __str__(self) -> str:
        from .expr import print_expr

        return print_expr(self)


def E(op: str, *args) -> SetExpr:
    return SetExpr(op, tuple(args))


@dataclass(frozen=True)
class CantorSet:
    automaton: ParityAutomaton
    expr: SetExpr

    def __post_init__(self):
        if self.automaton.alphabet_size != 2:
            raise ConstructionError("a Cantor set needs a two-letter automaton")

    def __contains__(self, w: UPWord) -> bool:
        return am.membership(self.automaton, w)

    def __str__(self) -> str:
        return str(self.expr)


# ---------------------------------------------------------------------------
# base automata


def _one_state(p0: int, p1: int) -> ParityAutomaton:
    return ParityAutomaton.build(2, 0, [[0, 0]], [[p0, p1]])


def fin_automaton() -> ParityAutomaton:
    return _one_state(2, 1)


def cof_automaton() -> ParityAutomaton:
    return _one_state(1, 2)


def cylinder_automaton(s: str) -> ParityAutomaton:
    bits = [int(c) for c in s]
    if any(b not in (0, 1) for b in bits):
        raise ConstructionError(f"cylinder prefix must be a bit string, got {s!r}")
    n = len(bits)
    acc, rej = n, n + 1
    delta, prio = [], []
    for i, b in enumerate(bits):
        row = [rej, rej]
        row[b] = i + 1 if i + 1 < n else acc
        delta.append(row)
        prio.append([1, 1])
    delta += [[acc, acc], [rej, rej]]
    prio += [[0, 0], [1, 1]]
    return normalize(ParityAutomaton.build(2, 0, delta, prio))


def track_lift(A: ParityAutomaton, phase: int, period: int = 2) -> ParityAutomaton:
    """Automaton reading ``A`` on positions congruent to ``phase`` mod ``period``.

    Off-track steps keep the state and carry ``A``'s largest priority, which
    never changes the least priority seen infinitely often.
    """
    n = A.num_states
    neutral = A.max_priority
    delta, prio = [], []
    for q in range(n):
        for r in range(period):
            nxt = (r + 1) % period
            if r == phase:
                delta.append([A.delta[q][a] * period + nxt for a in range(2)])
                prio.append([A.prio[q][a] for a in range(2)])
            else:
                delta.append([q * period + nxt] * 2)
                prio.append([neutral, neutral])
    return normalize(ParityAutomaton.build(2, A.initial * period, delta, prio))


def finite_flip_automaton(A: ParityAutomaton, flips: Sequence[int]) -> ParityAutomaton:
    """Image of ``L(A)`` under the map flipping the bits at the given positions."""
    F = set(flips)
    if any(n < 0 for n in F):
        raise ConstructionError("flip positions must be natural numbers")
    if not F:
        return A
    N = max(F) + 1
    n = A.num_states
    # state (q, i) for i < N is "at position i in state q"; index N*n + q is the tail
    def sid(q, i):
        return i * n + q if i < N else N * n + q

    delta = [[0, 0] for _ in range((N + 1) * n)]
    prio = [[0, 0] for _ in range((N + 1) * n)]
    for i in range(N + 1):
        for q in range(n):
            for a in range(2):
                b = a ^ (1 if i in F else 0)
                delta[sid(q, i)][a] = sid(A.delta[q][b], min(i + 1, N))
                prio[sid(q, i)][a] = A.prio[q][b]
    return normalize(ParityAutomaton.build(2, sid(A.initial, 0), delta, prio))


def phi_decoder(A: ParityAutomaton) -> ParityAutomaton:
    """Words whose zero-block parities decode into ``L(A)``, plus eventually-zero words.

    Mode 0 means "not inside a zero block", 1 "inside a block of odd length
    so far", 2 "even length so far".  A 1 that closes a block feeds ``A`` the
    bit 1 for odd length and 0 for even length.  Steps that do not close a
    block carry a high priority: even while reading zeros (so an eventually
    zero word is accepted) and odd while reading ones outside a block (so an
    eventually one word is rejected).
    """
    n = A.num_states
    base = A.max_priority + 3
    high_even, high_odd = (base, base + 1) if base % 2 == 0 else (base + 1, base)
    delta, prio = [], []
    for q in range(n):
        for mode in range(3):
            if mode == 0:
                d0, p0 = q * 3 + 1, high_even
                d1, p1 = q * 3 + 0, high_odd
            else:
                d0, p0 = q * 3 + (2 if mode == 1 else 1), high_even
                bit = 1 if mode == 1 else 0
                d1, p1 = A.delta[q][bit] * 3 + 0, A.prio[q][bit] + 2
            delta.append([d0, d1])
            prio.append([p0, p1])
    return normalize(ParityAutomaton.build(2, A.initial * 3, delta, prio))


# ---------------------------------------------------------------------------
# elaboration


def _check_increasing(parts: Sequence[ParityAutomaton]):
    for i in range(len(parts) - 1):
        ok, w = am.is_subset(parts[i], parts[i + 1])
        if not ok:
            raise ConstructionError(
                f"Diff operands must increase: operand {i} is not contained in operand {i + 1}"
                f" (witness {w})")


def _check_disjoint(windows: Sequence[ParityAutomaton]):
    for i in range(len(windows)):
        for j in range(i + 1, len(windows)):
            empty, w = am.is_empty(am.intersect(windows[i], windows[j]))
            if not empty:
                raise ConstructionError(
                    f"SepUnion windows {i} and {j} overlap (common point {w})")


def diff_automaton(parts: Sequence[ParityAutomaton]) -> ParityAutomaton:
    """The difference operator on an increasing list, checked eagerly."""
    parts = list(parts)
    if not parts:
        return am.constant(False)
    _check_increasing(parts)
    keep = 0 if len(parts) % 2 == 1 else 1
    pieces = []
    for z in range(keep, len(parts), 2):
        if z == 0:
            pieces.append(parts[0])
        else:
            pieces.append(am.intersect(parts[z], am.complement(parts[z - 1])))
    return am.combine(pieces, "or") if len(pieces) > 1 else normalize(pieces[0])


def sep_union_automaton(pairs) -> ParityAutomaton:
    pairs = list(pairs)
    if not pairs:
        return am.constant(False)
    _check_disjoint([w for _, w in pairs])
    pieces = [am.intersect(x, w) for x, w in pairs]
    return am.combine(pieces, "or") if len(pieces) > 1 else pieces[0]


def interleave(X: ParityAutomaton, Y: ParityAutomaton, how: str) -> ParityAutomaton:
    """``X`` on the even track combined with ``Y`` on the odd track."""
    return am.combine([track_lift(X, 0), track_lift(Y, 1)], how)


def guarded_track(X: ParityAutomaton, how: str) -> ParityAutomaton:
    """``X`` on the odd track, combined with a one-letter condition on the even track.

    ``how == "and"``: also require finitely many 0s on the even track; a 0
    there carries priority 1 and everything else is shifted up by 2.
    ``how == "or"``: alternatively accept infinitely many 1s on the even
    track; such a 1 carries priority 0.  Both avoid any product memory.
    """
    n = X.num_states
    shift = [[p + 2 for p in row] for row in X.prio]
    neutral = X.max_priority + 2
    delta, prio = [], []
    for q in range(n):
        # phase 0 (even position), then phase 1 (odd position)
        special = 0 if how == "and" else 1
        mark = 1 if how == "and" else 0
        delta.append([2 * q + 1, 2 * q + 1])
        prio.append([mark if a == special else neutral for a in range(2)])
        delta.append([2 * X.delta[q][a] for a in range(2)])
        prio.append(shift[q])
    return normalize(ParityAutomaton.build(2, 2 * X.initial, delta, prio))


def _s_odd_track() -> ParityAutomaton:
    # finitely many zeros at positions 1 mod 4, read on the odd track
    return track_lift(cof_automaton(), 0, 2)


@lru_cache(maxsize=None)
def _elab(e: SetExpr) -> ParityAutomaton:
    op, args = e.op, e.args
    if op in ALIASES:
        inner, sub = ALIASES[op]
        return _elab(_alias_expr(inner, sub))
    if op == "Automaton":
        return normalize(args[0])
    if op == "Empty":
        return am.constant(False)
    if op == "Full":
        return am.constant(True)
    if op in ("Fin", "Q0"):
        return normalize(fin_automaton())
    if op in ("Cof", "Q1"):
        return normalize(cof_automaton())
    if op == "Cylinder":
        return cylinder_automaton(args[0])
    if op == "SemifilterS":
        return interleave(am.complement(fin_automaton()), _s_odd_track(), "or")
    if op == "SemifilterT":
        return interleave(am.complement(fin_automaton()), cof_automaton(), "or")
    if op == "Comp":
        return am.complement(_elab(args[0]))
    if op == "RelabelComplement":
        return normalize(am.map_letters(_elab(args[0]), 2, lambda b: 1 - b))
    if op == "FiniteFlip":
        return finite_flip_automaton(_elab(args[0]), args[1])
    if op == "PhiClosure":
        # the decoder already accepts every eventually-zero word
        return phi_decoder(_elab(args[0]))
    if op == "QTimes":
        return guarded_track(_elab(args[0]), "and")
    if op == "FinShield":
        return guarded_track(_elab(args[0]), "or")
    if op == "InterleaveOr":
        return interleave(_elab(args[0]), _elab(args[1]), "or")
    if op == "InterleaveAnd":
        return interleave(_elab(args[0]), _elab(args[1]), "and")
    if op == "And":
        return am.intersect(_elab(args[0]), _elab(args[1]))
    if op == "Or":
        return am.union(_elab(args[0]), _elab(args[1]))
    if op == "Diff":
        return diff_automaton([_elab(a) for a in args])
    if op == "SepUnion":
        return sep_union_automaton([(_elab(x), _elab(w)) for x, w in args])
    raise ConstructionError(f"unknown constructor {op!r}")


def _alias_expr(op, sub) -> SetExpr:
    return SetExpr(op, tuple(_alias_expr(s, ()) if isinstance(s, str) else _alias_expr(*s)
                             for s in sub))


def validate(e: SetExpr):
    op, args = e.op, e.args
    if op in NULLARY or op in ALIASES:
        n = 0
    elif op in UNARY:
        n = 1
    elif op in BINARY:
        n = 2
    elif op == "Automaton":
        if len(args) != 1 or not isinstance(args[0], ParityAutomaton):
            raise ConstructionError("an Automaton leaf holds one automaton")
        if args[0].alphabet_size != 2:
            raise ConstructionError("a Cantor set needs a two-letter automaton")
        return
    elif op == "Cylinder":
        if len(args) != 1 or not isinstance(args[0], str) or set(args[0]) - {"0", "1"}:
            raise ConstructionError("Cylinder takes one bit string")
        return
    elif op == "FiniteFlip":
        if len(args) != 2 or not isinstance(args[0], SetExpr):
            raise ConstructionError("FiniteFlip takes a set and a position list")
        if any((not isinstance(i, int)) or i < 0 for i in args[1]):
            raise ConstructionError("FiniteFlip positions must be natural numbers")
        validate(args[0])
        return
    elif op == "Diff":
        for a in args:
            validate(a)
        return
    elif op == "SepUnion":
        for pair in args:
            if len(pair) != 2:
                raise ConstructionError("SepUnion takes (set, window) pairs")
            validate(pair[0])
            validate(pair[1])
        return
    else:
        raise ConstructionError(f"unknown constructor {op!r}")
    if len(args) != n:
        raise ConstructionError(f"{op} takes {n} argument(s), got {len(args)}")
    for a in args:
        validate(a)


def elaborate(e: SetExpr) -> CantorSet:
    validate(e)
    return CantorSet(_elab(e), e)


# ---------------------------------------------------------------------------
# public constructors


def empty() -> CantorSet:
    return elaborate(E("Empty"))


def full() -> CantorSet:
    return elaborate(E("Full"))


def fin() -> CantorSet:
    return elaborate(E("Fin"))


def cof() -> CantorSet:
    return elaborate(E("Cof"))


def q0() -> CantorSet:
    return elaborate(E("Q0"))


def q1() -> CantorSet:
    return elaborate(E("Q1"))


def cylinder(s: str) -> CantorSet:
    return elaborate(E("Cylinder", s))


def comp(X: CantorSet) -> CantorSet:
    return elaborate(E("Comp", X.expr))


def relabel_complement(X: CantorSet) -> CantorSet:
    return elaborate(E("RelabelComplement", X.expr))


def finite_flip(X: CantorSet, positions: Sequence[int]) -> CantorSet:
    return elaborate(E("FiniteFlip", X.expr, tuple(sorted(set(positions)))))


def semifilter_S() -> CantorSet:
    return elaborate(E("SemifilterS"))


def semifilter_T() -> CantorSet:
    return elaborate(E("SemifilterT"))


def q_times(X: CantorSet) -> CantorSet:
    return elaborate(E("QTimes", X.expr))


def fin_shield(X: CantorSet) -> CantorSet:
    return elaborate(E("FinShield", X.expr))


def interleave_or(X: CantorSet, Y: CantorSet) -> CantorSet:
    return elaborate(E("InterleaveOr", X.expr, Y.expr))


def interleave_and(X: CantorSet, Y: CantorSet) -> CantorSet:
    return elaborate(E("InterleaveAnd", X.expr, Y.expr))


def diff_hierarchy(sets: Sequence[CantorSet]) -> CantorSet:
    return elaborate(E("Diff", *(X.expr for X in sets)))


def separated_union(pieces) -> CantorSet:
    return elaborate(E("SepUnion", *((X.expr, W.expr) for X, W in pieces)))


def phi_closure(X: CantorSet) -> CantorSet:
    return elaborate(E("PhiClosure", X.expr))


def from_automaton(A: ParityAutomaton) -> CantorSet:
    """Wrap an automaton as a leaf so constructors can build on it."""
    return elaborate(E("Automaton", normalize(A)))


def phi_decode(w: UPWord):
    """Decode a word's zero-block parities.

    Returns ``None`` when the word is eventually constant (outside the
    decoder's domain), else the decoded ultimately periodic word.
    """
    c = w.cycle
    if all(b == c[0] for b in c):
        return None
    def blocks(seq):
        out, run, inside = [], 0, False
        for b in seq:
            if b == 0:
                run += 1
                inside = True
            elif inside:
                out.append(run % 2)
                run, inside = 0, False
        return out, run, inside

    # unroll until the cycle starts at a 1 right after a closed block boundary
    rot = next(i for i in range(len(c)) if c[i] == 1 and c[i - 1] == 0)
    head = list(w.stem) + list(c) + list(c[:rot])
    tail = list(c[rot:]) + list(c[:rot])
    pre, _, _ = blocks(head + [tail[0]])
    cyc, _, _ = blocks(tail[1:] + [tail[0]])
    return UPWord(pre, cyc)
