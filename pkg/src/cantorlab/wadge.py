"""Wadge reducibility between regular subsets of Cantor space.

The Wadge game for ``A <= B``: Player I plays letters ``x``, Player II
answers each with a letter or a pass, producing ``y``.  II wins iff ``y`` is
infinite and ``x in A <=> y in B``.  Both runs are tracked in the arena; a
memory over A's priority levels (the same record used by
:func:`automata.lex_product`) turns the winning condition into a parity
condition.  A winning strategy of II is read off as a letter-to-word
transducer, and every transducer is verified by composing it with ``B`` and
checking equivalence with ``A``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from . import automata as am
from .automata import INF, ParityAutomaton, normalize, sccs
from .constructions import CantorSet
from .games import GameArena, solve_parity_game

PASS = 2


class WitnessError(ValueError):
    pass


def _aut(X) -> ParityAutomaton:
    return normalize(X.automaton if isinstance(X, CantorSet) else X)


# ---------------------------------------------------------------------------
# transducers


@dataclass(frozen=True)
class ReductionWitness:
    """Deterministic transducer; ``step[s][a] = (next state, output tuple)``."""

    initial: int
    step: tuple

    def __post_init__(self):
        n = len(self.step)
        if n == 0 or not 0 <= self.initial < n:
            raise WitnessError("transducer needs a valid initial state")
        for s in range(n):
            if len(self.step[s]) != 2:
                raise WitnessError(f"state {s} is not total over the two letters")
            for nxt, out in self.step[s]:
                if not 0 <= nxt < n or any(b not in (0, 1) for b in out):
                    raise WitnessError(f"state {s} has a malformed step")

    @property
    def num_states(self):
        return len(self.step)

    def is_live(self) -> bool:
        """Every reachable cycle emits at least one letter."""
        reach = {self.initial}
        stack = [self.initial]
        while stack:
            s = stack.pop()
            for nxt, _ in self.step[s]:
                if nxt not in reach:
                    reach.add(nxt)
                    stack.append(nxt)
        silent = {s: [nxt for nxt, out in self.step[s] if not out] for s in reach}
        for comp in sccs(sorted(reach), lambda v: silent[v]):
            if len(comp) > 1 or comp[0] in silent[comp[0]]:
                return False
        return True

    def apply(self, word, limit: int | None = None) -> list:
        s, out = self.initial, []
        for a in word:
            s, w = self.step[s][a]
            out.extend(w)
        return out

    def to_text(self) -> str:
        lines = ["transducer v1", f"states {self.num_states}", f"initial {self.initial}"]
        for s in range(self.num_states):
            for a in range(2):
                nxt, out = self.step[s][a]
                lines.append(f"{s} {a} -> {nxt} {''.join(map(str, out)) or '-'}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ReductionWitness":
        lines = [l.strip() for l in text.splitlines() if l.strip()]
        if not lines or lines[0] != "transducer v1":
            raise WitnessError("not a transducer file")
        n = int(lines[1].split()[1])
        init = int(lines[2].split()[1])
        step = [[None, None] for _ in range(n)]
        for l in lines[3:]:
            lhs, rhs = l.split("->")
            s, a = map(int, lhs.split())
            nxt, out = rhs.split()
            step[s][a] = (int(nxt), tuple(int(c) for c in out) if out != "-" else ())
        return cls(init, tuple(tuple(r) for r in step))


def identity_witness() -> ReductionWitness:
    return ReductionWitness(0, (((0, (0,)), (0, (1,))),))


def flip_witness() -> ReductionWitness:
    return ReductionWitness(0, (((0, (1,)), (0, (0,))),))


def constant_witness(word: am.UPWord) -> ReductionWitness:
    """Outputs ``word`` regardless of the input, one letter per step."""
    stem, cyc = list(word.stem), list(word.cycle)
    n = len(stem) + len(cyc)
    seq = stem + cyc
    step = []
    for i in range(n):
        nxt = i + 1 if i + 1 < n else len(stem)
        step.append(((nxt, (seq[i],)), (nxt, (seq[i],))))
    return ReductionWitness(0, tuple(step))


def compose(first: ReductionWitness, second: ReductionWitness) -> ReductionWitness:
    """The transducer for ``second o first``."""
    ids = {(first.initial, second.initial): 0}
    order = [(first.initial, second.initial)]
    step = []
    i = 0
    while i < len(order):
        s1, s2 = order[i]
        row = []
        for a in range(2):
            n1, mid = first.step[s1][a]
            n2, out = s2, []
            for b in mid:
                n2, w = second.step[n2][b]
                out.extend(w)
            key = (n1, n2)
            if key not in ids:
                ids[key] = len(order)
                order.append(key)
            row.append((ids[key], tuple(out)))
        step.append(tuple(row))
        i += 1
    return ReductionWitness(0, tuple(step))


def preimage(w: ReductionWitness, B: ParityAutomaton) -> ParityAutomaton:
    """Deterministic parity automaton for ``f^-1[B]`` where ``f`` is the transducer."""
    if not w.is_live():
        raise WitnessError("transducer may emit finitely many letters")
    B = _aut(B)
    neutral = B.max_priority
    ids = {(w.initial, B.initial): 0}
    order = [(w.initial, B.initial)]
    delta, prio = [], []
    i = 0
    while i < len(order):
        s, q = order[i]
        drow, prow = [], []
        for a in range(2):
            ns, out = w.step[s][a]
            p, r = neutral, q
            for b in out:
                p = min(p, B.prio[r][b])
                r = B.delta[r][b]
            key = (ns, r)
            if key not in ids:
                ids[key] = len(order)
                order.append(key)
            drow.append(ids[key])
            prow.append(p)
        delta.append(drow)
        prio.append(prow)
        i += 1
    return normalize(ParityAutomaton.build(2, 0, delta, prio))


def verify_witness(w: ReductionWitness, A, B) -> bool:
    try:
        pre = preimage(w, _aut(B))
    except WitnessError:
        return False
    return am.is_equivalent(pre, _aut(A))


# ---------------------------------------------------------------------------
# the game


def _rank_table(la, lb):
    """Monotone map from (A level, B value) pairs to priorities.

    II wins iff B's value is a real priority (not the pass marker) whose
    parity matches A's.
    """
    rank = {}
    g = prev = None
    for a in la:
        for b in lb:
            win = b != INF and a % 2 == b % 2
            if g is None:
                g = 0 if win else 1
            elif win != prev:
                g += 1
            prev = win
            rank[(a, b)] = g
    return rank


def build_game(A: ParityAutomaton, B: ParityAutomaton):
    """Reachable Wadge arena.  Returns (arena, index of keys, initial position)."""
    la = A.priorities()
    lb = B.priorities() + [INF]
    idx = {p: i for i, p in enumerate(la)}
    rank = _rank_table(la, lb)
    neutral = max(rank.values()) + 1
    top = (INF,) * len(la)
    owner, prio, moves = [], [], []
    ids = {}

    def node(key, own, p):
        v = ids.get(key)
        if v is None:
            v = ids[key] = len(owner)
            owner.append(own)
            prio.append(p)
            moves.append(None)
            pending.append(key)
        return v

    pending: list = []
    start = node(("I", A.initial, B.initial, top), 1, neutral)
    while pending:
        key = pending.pop()
        v = ids[key]
        kind = key[0]
        if kind == "I":
            _, qa, qb, mem = key
            moves[v] = [node(("II", A.delta[qa][x], qb, mem, A.prio[qa][x]), 0, neutral)
                        for x in range(2)]
        elif kind == "II":
            _, qa, qb, mem, pa = key
            i0 = idx[pa]
            out = []
            for y in (0, 1, PASS):
                if y == PASS:
                    pb, nb = INF, qb
                else:
                    pb, nb = B.prio[qb][y], B.delta[qb][y]
                b = min(mem[i0], pb)
                nm = tuple(min(m, pb) for m in mem[:i0]) + top[i0:]
                nxt = ("I", qa, nb, nm)
                g = rank[(pa, b)]
                out.append(node(("R", y, g, nxt), 0, g))
            moves[v] = out
        else:
            moves[v] = [node(key[3], 1, neutral)]
    return GameArena.build(owner, prio, moves), ids, start


def _extract(G: GameArena, ids: dict, sol, start) -> ReductionWitness:
    keys = {v: k for k, v in ids.items()}
    order = [start]
    tid = {start: 0}
    step = []
    i = 0
    while i < len(order):
        v = order[i]
        row = []
        for u in G.moves[v]:
            r = sol.strategy[u]
            y = keys[r][1]
            nxt = G.moves[r][0]
            if nxt not in tid:
                tid[nxt] = len(order)
                order.append(nxt)
            row.append((tid[nxt], () if y == PASS else (y,)))
        step.append(tuple(row))
        i += 1
    return ReductionWitness(0, tuple(step))


@dataclass(frozen=True)
class WadgeResult:
    holds: bool
    witness: ReductionWitness | None
    arena_size: int = 0

    def __bool__(self):
        return self.holds


def _degenerate(A: ParityAutomaton, B: ParityAutomaton):
    """Constant-output answers when one side is empty or everything."""
    a_empty = am.is_empty(A)[0]
    a_full = am.is_empty(am.complement(A))[0]
    b_empty, b_in = am.is_empty(B)
    b_full, b_out = am.is_empty(am.complement(B))
    if a_empty:
        return (False, None) if b_full else (True, constant_witness(b_out))
    if a_full:
        return (False, None) if b_empty else (True, constant_witness(b_in))
    if b_empty or b_full:
        return False, None
    return None


@lru_cache(maxsize=None)
def _wadge_le(A: ParityAutomaton, B: ParityAutomaton) -> WadgeResult:
    if A == B:
        return WadgeResult(True, identity_witness())
    deg = _degenerate(A, B)
    if deg is not None:
        return WadgeResult(deg[0], deg[1])
    G, ids, start = build_game(A, B)
    sol = solve_parity_game(G)
    if sol.winner[start] != 0:
        return WadgeResult(False, None, len(G))
    w = _extract(G, ids, sol, start)
    return WadgeResult(True, w, len(G))


def wadge_le(A, B, verify: bool = True) -> WadgeResult:
    res = _wadge_le(_aut(A), _aut(B))
    if verify and res.holds and not verify_witness(res.witness, A, B):
        raise AssertionError("extracted Wadge witness failed verification")
    return res


def wadge_compare(A, B) -> str:
    le = wadge_le(A, B).holds
    ge = wadge_le(B, A).holds
    if le and ge:
        return "A≡B"
    if le:
        return "A<B"
    if ge:
        return "B<A"
    return "dual-incomparable"


def is_self_dual(A) -> bool:
    return wadge_le(A, am.complement(_aut(A))).holds


def dichotomy(A, B) -> tuple[WadgeResult, WadgeResult]:
    """Both directions of Wadge's lemma: ``A <= B`` and ``B <= comp(A)``."""
    return wadge_le(A, B), wadge_le(B, am.complement(_aut(A)))


def everywhere_properly(X) -> bool:
    """Every residual is Wadge-equivalent to X and not self-dual."""
    A = _aut(X)
    for q in sorted(am.reachable_states(A)):
        r = normalize(A.with_initial(q))
        if wadge_compare(r, A) != "A≡B" or is_self_dual(r):
            return False
    return True


class PreconditionError(ValueError):
    pass


def closed_subset_reduction_check(X, Y) -> bool:
    """For X closed in Y (X a subset of Y equal to Y within its own closure), X <=_W Y."""
    from .topology import closure

    A, B = _aut(X), _aut(Y)
    ok, w = am.is_subset(A, B)
    if not ok:
        raise PreconditionError(f"not a subset: {w} lies in X but not in Y")
    cl = closure(A).automaton
    if not am.is_equivalent(A, am.intersect(B, cl)):
        raise PreconditionError("X is not closed in Y")
    return wadge_le(A, B).holds


def result_record(res: WadgeResult) -> str:
    return json.dumps({"holds": res.holds, "arena": res.arena_size})
