"""Two-player parity games (min-even for Player 0) and a recursive solver."""
from __future__ import annotations

import sys
from dataclasses import dataclass

from .automata import sccs


class ArenaError(ValueError):
    pass


@dataclass(frozen=True)
class GameArena:
    owner: tuple  # owner[v] in {0, 1}
    priority: tuple
    moves: tuple  # moves[v] -> tuple of successors

    def __post_init__(self):
        n = len(self.owner)
        if len(self.priority) != n or len(self.moves) != n:
            raise ArenaError("owner, priority and moves must have equal length")
        for v in range(n):
            if self.owner[v] not in (0, 1):
                raise ArenaError(f"position {v} has invalid owner")
            if self.priority[v] < 0:
                raise ArenaError("priorities must be natural numbers")
            if not self.moves[v]:
                raise ArenaError(f"position {v} is a dead end")
            if any(not 0 <= w < n for w in self.moves[v]):
                raise ArenaError(f"position {v} has a move outside the arena")

    @classmethod
    def build(cls, owner, priority, moves) -> "GameArena":
        return cls(tuple(owner), tuple(priority), tuple(tuple(m) for m in moves))

    def __len__(self):
        return len(self.owner)


@dataclass(frozen=True)
class GameSolution:
    winner: tuple  # winner[v] in {0, 1}
    strategy: tuple  # strategy[v] = chosen successor for the owner of v (in its own region), else -1

    def region(self, player: int) -> frozenset:
        return frozenset(v for v, w in enumerate(self.winner) if w == player)


def _attractor(G: GameArena, nodes: set, target: set, player: int, preds, strat: dict) -> set:
    attr = set(target)
    count = {}
    for v in nodes:
        if v not in attr and G.owner[v] != player:
            count[v] = sum(1 for w in G.moves[v] if w in nodes)
    queue = list(target)
    while queue:
        w = queue.pop()
        for v in preds[w]:
            if v not in nodes or v in attr:
                continue
            if G.owner[v] == player:
                attr.add(v)
                strat[v] = w
                queue.append(v)
            else:
                count[v] -= 1
                if count[v] == 0:
                    attr.add(v)
                    queue.append(v)
    return attr


def _own(G: GameArena, strat: dict, res) -> dict:
    return {v: w for v, w in strat.items() if v in res[G.owner[v]]}


def _zielonka(G: GameArena, nodes: set, preds):
    """Returns (W0, W1, strategy) restricted to the subgame ``nodes``."""
    if not nodes:
        return set(), set(), {}
    m = min(G.priority[v] for v in nodes)
    p = m % 2
    top = {v for v in nodes if G.priority[v] == m}
    strat: dict = {}
    A = _attractor(G, nodes, top, p, preds, strat)
    W = [None, None]
    sub0, sub1, s_sub = _zielonka(G, nodes - A, preds)
    W[0], W[1] = sub0, sub1
    if not W[1 - p]:
        win_p = set(nodes)
        out = dict(s_sub)
        out.update(strat)
        for v in top:
            if G.owner[v] == p:
                out[v] = next(w for w in G.moves[v] if w in nodes)
        res = [set(), set()]
        res[p] = win_p
        return res[0], res[1], _own(G, out, res)
    opp_strat: dict = {}
    B = _attractor(G, nodes, W[1 - p], 1 - p, preds, opp_strat)
    r0, r1, s_rest = _zielonka(G, nodes - B, preds)
    res = [r0, r1]
    res[1 - p] = res[1 - p] | B
    out = dict(s_rest)
    for v in W[1 - p]:
        if v in s_sub:
            out[v] = s_sub[v]
    out.update(opp_strat)
    return res[0], res[1], _own(G, out, res)


def _has_bad_cycle(G: GameArena, region: set, player: int, strategy) -> bool:
    """Does the strategy-restricted region contain a cycle won by the opponent?"""
    def succ(v):
        if G.owner[v] == player:
            return [strategy[v]]
        return [w for w in G.moves[v] if w in region]

    for p in sorted({G.priority[v] for v in region}):
        if p % 2 == player:
            continue
        sub = {v for v in region if G.priority[v] >= p}
        for comp in sccs(sub, lambda v: [w for w in succ(v) if w in sub]):
            cs = set(comp)
            if any(G.priority[v] == p for v in comp):
                if len(comp) > 1 or any(w in cs for w in succ(comp[0])):
                    return True
    return False


def solve_parity_game(G: GameArena, check: bool = True) -> GameSolution:
    """Solve a min-even parity game; Player 0 wins plays whose least recurring priority is even."""
    n = len(G)
    preds = [[] for _ in range(n)]
    for v in range(n):
        for w in G.moves[v]:
            preds[w].append(v)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10000 + 4 * n))
    try:
        W0, W1, strat = _zielonka(G, set(range(n)), preds)
    finally:
        sys.setrecursionlimit(limit)
    winner = tuple(0 if v in W0 else 1 for v in range(n))
    strategy = []
    for v in range(n):
        if G.owner[v] == winner[v]:
            w = strat.get(v)
            if w is None or winner[w] != winner[v]:
                w = next(x for x in G.moves[v] if winner[x] == winner[v])
            strategy.append(w)
        else:
            strategy.append(-1)
    sol = GameSolution(winner, tuple(strategy))
    if check:
        for player in (0, 1):
            region = set(sol.region(player))
            for v in region:
                if G.owner[v] != player and any(winner[w] != player for w in G.moves[v]):
                    raise AssertionError("solver produced a region that is not a trap")
            if _has_bad_cycle(G, region, player, sol.strategy):
                raise AssertionError("solver strategy admits a losing cycle")
    return sol
