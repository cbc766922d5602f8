"""Topological classification of regular subsets of Cantor space.

Most verdicts come from alternating chains of loops.  A loop is a strongly
connected set of transitions; it is accepting when its least priority is
even.  ``chain_plus`` is the longest strictly nested alternating chain of
loops starting with an accepting one, ``chain_minus`` the longest starting
with a rejecting one.  A set lies in the ``k``-th level of the difference
hierarchy over sigma-compact sets iff ``chain_plus <= k`` and
``chain_minus <= k + 1``; the dual level swaps the roles.

The "thin" chain numbers treat loops that are simple cycles as rejecting.
Words whose run ends in a simple cycle form a countable set, so thin numbers
bound the level of the set after a countable part has been discarded.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import automata as am
from .automata import ParityAutomaton, edge_sccs, normalize, sccs
from .constructions import CantorSet, from_automaton
from .games import GameArena, solve_parity_game

SIGMA, PI, DELTA = "Sigma", "Pi", "Delta"


def _aut(X) -> ParityAutomaton:
    return normalize(X.automaton if isinstance(X, CantorSet) else X)


# ---------------------------------------------------------------------------
# chain numbers


def _is_simple_cycle(edges) -> bool:
    return len({e[0] for e in edges}) == len(edges)


def _chain(A: ParityAutomaton, H) -> tuple[int, int]:
    """(accepting-first, rejecting-first) chain lengths inside loop ``H``."""
    m = min(A.prio[q][a] for q, a, _ in H)
    subs = [_chain(A, Hs) for Hs in edge_sccs(e for e in H if A.prio[e[0]][e[1]] != m)]
    best_acc = max((s[0] for s in subs), default=0)
    best_rej = max((s[1] for s in subs), default=0)
    if m % 2 == 0:
        return 1 + best_rej, best_rej
    return best_acc, 1 + best_acc


def _thin_chain(A: ParityAutomaton, H) -> tuple[int, int]:
    if _is_simple_cycle(H):
        return 0, 1
    m = min(A.prio[q][a] for q, a, _ in H)
    subs = [_thin_chain(A, Hs) for Hs in edge_sccs(e for e in H if A.prio[e[0]][e[1]] != m)]
    best_acc = max((s[0] for s in subs), default=0)
    best_rej = max((s[1] for s in subs), default=0)
    if m % 2 == 0:
        # some simple cycle through a least edge is a rejecting subloop
        inner = max(1, best_rej)
        return 1 + inner, inner
    return best_acc, 1 + best_acc


@dataclass(frozen=True)
class StateProfile:
    plus: int
    minus: int
    thin_plus: int
    thin_minus: int


def _scc_dag(A: ParityAutomaton, edges):
    """Per-state maxima over loops reachable through ``edges``."""
    states = sorted({e[0] for e in edges} | {e[2] for e in edges})
    adj = {q: [] for q in states}
    for s, _, d in edges:
        adj[s].append(d)
    comps = sccs(states, lambda v: adj[v])  # reverse topological order
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    return comps, comp_of, adj


@lru_cache(maxsize=None)
def profiles(A: ParityAutomaton) -> tuple:
    """StateProfile for every state (chains among loops reachable from it)."""
    A = normalize(A)
    edges = list(A.edges())
    comps, comp_of, adj = _scc_dag(A, edges)
    local = {}
    for H in edge_sccs(edges):
        c = comp_of[H[0][0]]
        local[c] = _chain(A, H) + _thin_chain(A, H)
    best = {}
    for i, comp in enumerate(comps):
        vals = list(local.get(i, (0, 0, 0, 0)))
        for v in comp:
            for w in adj[v]:
                j = comp_of[w]
                if j != i:
                    vals = [max(x, y) for x, y in zip(vals, best[j])]
        best[i] = tuple(vals)
    return tuple(StateProfile(*best[comp_of[q]]) for q in range(A.num_states))


def chain_numbers(X) -> tuple[int, int]:
    A = _aut(X)
    p = profiles(A)[A.initial]
    return p.plus, p.minus


def in_level(plus: int, minus: int, k: int, side: str) -> bool:
    if side == SIGMA:
        return plus <= k and minus <= k + 1
    return minus <= k and plus <= k + 1


def level_of(plus: int, minus: int) -> tuple[int, str]:
    ks = max(minus - 1, plus)
    kp = max(plus - 1, minus)
    if ks == kp:
        return ks, DELTA
    return (ks, SIGMA) if ks < kp else (kp, PI)


def difference_level(X) -> tuple[int, str]:
    return level_of(*chain_numbers(X))


def is_sigma02(X) -> bool:
    return in_level(*chain_numbers(X), 1, SIGMA)


def is_pi02(X) -> bool:
    return in_level(*chain_numbers(X), 1, PI)


def is_countable(X) -> bool:
    """Countable iff every accepting loop is a simple cycle."""
    A = _aut(X)
    return profiles(A)[A.initial].thin_plus == 0


# ---------------------------------------------------------------------------
# live states, closure and compactness


@lru_cache(maxsize=None)
def live_states(A: ParityAutomaton) -> frozenset:
    return frozenset(am.accepting_states(A))


def live_edges(A: ParityAutomaton):
    live = live_states(A)
    return [e for e in A.edges() if e[0] in live and e[2] in live]


def closure(X) -> CantorSet:
    """Smallest closed superset: every run that stays among live states."""
    A = _aut(X)
    live = live_states(A)
    n = A.num_states
    sink = n
    delta = [[A.delta[q][a] if A.delta[q][a] in live else sink for a in range(2)]
             for q in range(n)] + [[sink, sink]]
    prio = [[0 if A.delta[q][a] in live else 1 for a in range(2)] for q in range(n)] + [[1, 1]]
    if A.initial not in live:
        delta, prio = [[0, 0]], [[1, 1]]
        init = 0
    else:
        init = A.initial
    return from_automaton(ParityAutomaton.build(2, init, delta, prio))


@lru_cache(maxsize=None)
def _closed_states(A: ParityAutomaton) -> frozenset:
    """Live states whose residual is closed: no rejecting loop among live transitions."""
    live = live_states(A)
    edges = live_edges(A)
    bad_comps = set()
    if not edges:
        return frozenset(live)
    comps, comp_of, adj = _scc_dag(A, edges)

    def has_rejecting(E):
        for H in edge_sccs(E):
            m = min(A.prio[q][a] for q, a, _ in H)
            if m % 2 == 1:
                return True
            if has_rejecting([e for e in H if A.prio[e[0]][e[1]] != m]):
                return True
        return False

    for H in edge_sccs(edges):
        if has_rejecting(H):
            bad_comps.add(comp_of[H[0][0]])
    bad = {}
    for i, comp in enumerate(comps):
        b = i in bad_comps
        for v in comp:
            for w in adj[v]:
                if comp_of[w] != i and bad[comp_of[w]]:
                    b = True
        bad[i] = b
    ok = {q for q in live if q not in comp_of or not bad[comp_of[q]]}
    return frozenset(ok)


def is_closed(X) -> bool:
    A = _aut(X)
    return A.initial not in live_states(A) or A.initial in _closed_states(A)


def is_open(X) -> bool:
    return is_closed(am.complement(_aut(X)))


def is_clopen(X) -> bool:
    return is_closed(X) and is_open(X)


def is_compact(X) -> bool:
    return is_closed(X)


def is_locally_compact(X) -> bool:
    A = _aut(X)
    cl = closure(A).automaton
    boundary = am.intersect(cl, am.complement(A))
    return am.is_empty(am.intersect(closure(boundary).automaton, A))[0]


def has_isolated_point(X) -> bool:
    """Some cylinder meets the set in exactly one point."""
    A = _aut(X)
    live = live_states(A)
    out = {q: [A.delta[q][a] for a in range(2) if A.delta[q][a] in live] for q in live}
    branching = {q for q in live if len(out[q]) > 1}
    # a live state all of whose live descendants are non-branching
    reach_branch = set(branching)
    changed = True
    while changed:
        changed = False
        for q in live:
            if q not in reach_branch and any(r in reach_branch for r in out[q]):
                reach_branch.add(q)
                changed = True
    return any(q not in reach_branch for q in live)


def is_dense_in_itself(X) -> bool:
    return not has_isolated_point(X)


# ---------------------------------------------------------------------------
# Baire category


def bottom_components(A: ParityAutomaton):
    """Bottom strongly connected parts of the live graph, with acceptance."""
    live = live_states(A)
    edges = live_edges(A)
    adj = {q: [] for q in live}
    for s, _, d in edges:
        adj[s].append(d)
    out = []
    for comp in sccs(sorted(live), lambda v: adj[v]):
        cs = set(comp)
        if all(w in cs for v in comp for w in adj[v]):
            E = [e for e in edges if e[0] in cs]
            m = min(A.prio[q][a] for q, a, _ in E)
            out.append((frozenset(comp), m % 2 == 0))
    return out, adj


def baire_category(X) -> str:
    A = _aut(X)
    live = live_states(A)
    if not live:
        return "meager"
    bottoms, adj = bottom_components(A)
    flags = [acc for _, acc in bottoms]
    if all(flags):
        return "comeager-in-closure"
    if not any(flags):
        return "meager"
    good = set().union(*(c for c, acc in bottoms if acc))
    reach = set(good)
    changed = True
    while changed:
        changed = False
        for q in live:
            if q not in reach and any(w in reach for w in adj[q]):
                reach.add(q)
                changed = True
    return "Baire" if reach >= live else "neither"


def default_bm_bound(A: ParityAutomaton) -> int:
    return A.num_states * len(A.priorities())


def banach_mazur_category(X, bound: int | None = None) -> str:
    """Category verdict from the Banach-Mazur game played on live words.

    Moves are live words of length 1..bound.  Player 0 wants the play to be
    accepted.  Positions ``(q, mover)`` carry a neutral high priority and
    each move passes through an intermediate position carrying the least
    priority of the chosen word.
    """
    A = _aut(X)
    live = live_states(A)
    if not live:
        return "meager"
    bound = bound or default_bm_bound(A)
    top = A.max_priority + 2 - (A.max_priority % 2)  # even, above everything
    reach = {}
    for q in live:
        outcomes = set()
        frontier = {(q, None)}
        for _ in range(bound):
            nxt = set()
            for s, m in frontier:
                for a in range(2):
                    r = A.delta[s][a]
                    if r in live:
                        mm = A.prio[s][a] if m is None else min(m, A.prio[s][a])
                        nxt.add((r, mm))
            nxt -= outcomes
            outcomes |= nxt
            frontier = nxt
            if not frontier:
                break
        reach[q] = outcomes
    ids = {}
    owner, prio, moves = [], [], []

    def node(key, own, p):
        if key not in ids:
            ids[key] = len(owner)
            owner.append(own)
            prio.append(p)
            moves.append([])
        return ids[key]

    for q in live:
        for mover in (0, 1):
            node(("pos", q, mover), mover, top)
    for q in live:
        for mover in (0, 1):
            v = ids[("pos", q, mover)]
            for r, m in reach[q]:
                w = node(("mid", r, m, 1 - mover), 0, m)
                moves[v].append(w)
                if not moves[w]:
                    moves[w].append(ids[("pos", r, 1 - mover)])
    G = GameArena.build(owner, prio, moves)
    sol = solve_parity_game(G)
    win0 = lambda q, mover: sol.winner[ids[("pos", q, mover)]] == 0
    q0 = A.initial
    if win0(q0, 1):
        return "comeager-in-closure"
    if not win0(q0, 0):
        return "meager"
    if all(win0(q, 0) for q in live):
        return "Baire"
    return "neither"


# ---------------------------------------------------------------------------
# properties, residuals and labels


PROPERTY_ORDER = [
    ("P", -1, 1), ("P", -1, 2), ("P", 0, 0), ("P", 1, 0),
    ("P", 2, 1), ("P", 3, 1), ("P", 2, 2), ("P", 3, 2),
]


def property_sequence(limit: int):
    """Properties in increasing order up to index ``limit``."""
    out = PROPERTY_ORDER[:2]
    k = 0
    while 4 * k <= limit:
        for n, i in ((4 * k, 0), (4 * k + 1, 0), (4 * k + 2, 1), (4 * k + 3, 1),
                     (4 * k + 2, 2), (4 * k + 3, 2)):
            if n <= limit:
                out.append(("P", n, i))
        k += 1
    return out


def property_name(prop) -> str:
    _, n, i = prop
    return f"P_{n}" if i == 0 else f"P^{i}_{n}"


def check_property(p: StateProfile, prop) -> tuple[bool, bool]:
    """(verdict, heuristic) of a decomposition property for a residual profile."""
    _, n, i = prop
    if n == -1:
        if i == 1:
            return p.thin_plus == 0, False
        return in_level(p.plus, p.minus, 1, SIGMA), False
    k, r = divmod(n, 4)
    if r == 0:
        return in_level(p.plus, p.minus, 2 * k + 1, PI), False
    if r == 1:
        return in_level(p.plus, p.minus, 2 * k + 2, SIGMA), False
    if i == 2:
        if r == 2:
            return in_level(p.plus, p.minus, 2 * k + 2, PI), False
        return in_level(p.plus, p.minus, 2 * k + 3, SIGMA), False
    if r == 2:
        ok = in_level(p.thin_plus, p.thin_minus, 2 * k + 1, PI)
    else:
        ok = in_level(p.thin_plus, p.thin_minus, 2 * k + 2, SIGMA)
    return ok, not ok


SIMPLE_PROPERTIES = ("sigma-compact", "complete", "countable", "compact")


def residuals(X) -> dict:
    """Map each reachable state to the set recognized from it."""
    A = _aut(X)
    return {q: from_automaton(A.with_initial(q)) for q in range(A.num_states)}


def _holds(A: ParityAutomaton, q: int, prop) -> tuple[bool, bool]:
    p = profiles(A)[q]
    if prop == "sigma-compact":
        return in_level(p.plus, p.minus, 1, SIGMA), False
    if prop == "complete":
        return in_level(p.plus, p.minus, 1, PI), False
    if prop == "countable":
        return p.thin_plus == 0, False
    if prop == "compact":
        return q in _closed_states(A), False
    if isinstance(prop, tuple):
        return check_property(p, prop)
    raise ValueError(f"unknown property {prop!r}")


def parse_property(name: str):
    if name in SIMPLE_PROPERTIES:
        return name
    if name.startswith("P"):
        body = name[1:]
        i = 0
        if body.startswith("^"):
            i = int(body[1])
            body = body[2:]
        if body.startswith("_"):
            return ("P", int(body[1:]), i)
    raise ValueError(f"unknown property {name!r}")


def nowhere(X, prop, with_flag: bool = False):
    """Nonempty, and no nonempty residual has the property."""
    if isinstance(prop, str):
        prop = parse_property(prop)
    A = _aut(X)
    live = live_states(A)
    heuristic = False
    result = A.initial in live
    if result:
        for q in reachable_live(A):
            ok, h = _holds(A, q, prop)
            heuristic |= h
            if ok:
                result = False
                break
    return (result, heuristic) if with_flag else result


def reachable_live(A: ParityAutomaton):
    live = live_states(A)
    return sorted(q for q in am.reachable_states(A) if q in live)


NAMED = {
    (0, 0): "P",
    (1, 0): "QxP",
    (2, 1): "T",
    (2, 2): "S",
    (3, 1): "QxT",
    (3, 2): "QxS",
}


@dataclass
class ClassReport:
    diff_level: tuple
    flags: dict
    category: str
    nowhere: dict
    label: str
    index: tuple | None = None
    heuristic: bool = False
    chains: tuple = ()
    notes: list = field(default_factory=list)

    def record(self) -> dict:
        return {
            "diff_level": {"k": self.diff_level[0], "side": self.diff_level[1]},
            "flags": dict(self.flags),
            "category": self.category,
            "nowhere": dict(self.nowhere),
            "label": self.label,
            "index": list(self.index) if self.index else None,
            "heuristic": self.heuristic,
        }


def classify(X, max_class: int = 11, bm_bound: int | None = None) -> ClassReport:
    A = _aut(X)
    plus, minus = chain_numbers(A)
    flags = {
        "is_open": is_open(A),
        "is_closed": is_closed(A),
        "is_sigma02": in_level(plus, minus, 1, SIGMA),
        "is_pi02": in_level(plus, minus, 1, PI),
        "is_countable": is_countable(A),
        "is_compact": is_compact(A),
        "is_locally_compact": is_locally_compact(A),
        "is_dense_in_itself": is_dense_in_itself(A),
    }
    category = baire_category(A)
    if bm_bound is not None:
        bm = banach_mazur_category(A, bm_bound)
        if bm != category:
            raise AssertionError(f"Banach-Mazur verdict {bm} disagrees with {category}")
    report = ClassReport(level_of(plus, minus), flags, category, {}, "unlabeled",
                         chains=(plus, minus))
    for name in SIMPLE_PROPERTIES:
        report.nowhere[name] = nowhere(A, name)
    if A.initial not in live_states(A):
        report.notes.append("empty set")
        return report
    heuristic = False
    minimal = None
    below = []
    prof = profiles(A)[A.initial]
    for prop in property_sequence(max_class):
        ok, h = check_property(prof, prop)
        heuristic |= h
        if ok:
            minimal = prop
            break
        below.append(prop)
    if minimal is None:
        report.notes.append(f"above the classification bound {max_class}")
        report.heuristic = heuristic
        return report
    lower_ok = True
    for prop in below:
        nw, h = nowhere(A, prop, with_flag=True)
        heuristic |= h
        report.nowhere[property_name(prop)] = nw
        if not nw:
            lower_ok = False
    _, n, i = minimal
    report.heuristic = heuristic
    if not lower_ok:
        report.notes.append("not nowhere a lower property")
        return report
    if n == -1:
        if i == 1 and flags["is_dense_in_itself"]:
            report.label, report.index = "Q", (-1, 1)
        elif i == 2 and report.nowhere["countable"] and report.nowhere["compact"]:
            report.label, report.index = "QxC", (-1, 2)
        return report
    report.index = (n, i)
    report.label = NAMED.get((n, i), f"X_{n}" if i == 0 else f"X^{i}_{n}")
    return report
