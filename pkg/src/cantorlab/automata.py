"""Deterministic parity automata over small alphabets.

Acceptance is min-even on transitions: a run is accepting iff the least
priority seen infinitely often is even.  Every automaton is total and
deterministic, so languages are closed under complement by shifting
priorities, and Boolean combinations are built by synchronized products.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Iterable, Sequence

INF = 1 << 30


class AutomatonError(ValueError):
    """Raised on malformed input (bad letters, alphabet mismatch, ...)."""


# ---------------------------------------------------------------------------
# ultimately periodic words


def _primitive_root(s: tuple) -> tuple:
    n = len(s)
    for d in range(1, n + 1):
        if n % d == 0 and s[:d] * (n // d) == s:
            return s[:d]
    return s


@dataclass(frozen=True)
class UPWord:
    """The infinite word ``stem + cycle + cycle + ...``."""

    stem: tuple
    cycle: tuple

    def __init__(self, stem: Iterable[int] = (), cycle: Iterable[int] = (0,)):
        stem = tuple(int(c) for c in stem)
        cycle = tuple(int(c) for c in cycle)
        if not cycle:
            raise AutomatonError("cycle of an ultimately periodic word must be nonempty")
        object.__setattr__(self, "stem", stem)
        object.__setattr__(self, "cycle", cycle)

    @classmethod
    def parse(cls, text: str) -> "UPWord":
        """Parse ``stem(cycle)`` notation, e.g. ``"1101(0)"``."""
        text = text.strip()
        if not text.endswith(")") or "(" not in text:
            raise AutomatonError(f"expected stem(cycle) notation, got {text!r}")
        stem, cycle = text[:-1].split("(", 1)
        return cls((int(c) for c in stem), (int(c) for c in cycle))

    def canonical(self) -> "UPWord":
        cycle = _primitive_root(self.cycle)
        stem = list(self.stem)
        while stem and stem[-1] == cycle[-1]:
            stem.pop()
            cycle = (cycle[-1],) + cycle[:-1]
        return UPWord(stem, cycle)

    def __getitem__(self, n: int) -> int:
        if n < len(self.stem):
            return self.stem[n]
        return self.cycle[(n - len(self.stem)) % len(self.cycle)]

    def prefix(self, n: int) -> tuple:
        return tuple(self[i] for i in range(n))

    def same_word(self, other: "UPWord") -> bool:
        return self.canonical() == other.canonical()

    def __str__(self) -> str:
        return "".join(map(str, self.stem)) + "(" + "".join(map(str, self.cycle)) + ")"


# ---------------------------------------------------------------------------
# graph helpers


def sccs(nodes: Iterable[int], succ: Callable[[int], Iterable[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative.  Returns components in reverse topological order."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def edge_sccs(edges: Iterable[tuple]) -> list[list[tuple]]:
    """Group edges ``(src, letter, dst)`` into strongly connected edge sets.

    Edges that lie on no cycle are dropped.
    """
    edges = list(edges)
    adj: dict[int, list[int]] = {}
    for s, _, d in edges:
        adj.setdefault(s, []).append(d)
        adj.setdefault(d, [])
    comp_of = {}
    for i, comp in enumerate(sccs(list(adj), lambda v: adj[v])):
        for v in comp:
            comp_of[v] = i
    groups: dict[int, list[tuple]] = {}
    for e in edges:
        if comp_of[e[0]] == comp_of[e[2]]:
            groups.setdefault(comp_of[e[0]], []).append(e)
    return list(groups.values())


# ---------------------------------------------------------------------------
# the automaton


@dataclass(frozen=True)
class ParityAutomaton:
    alphabet_size: int
    initial: int
    delta: tuple  # delta[q][a] -> state
    prio: tuple  # prio[q][a] -> priority
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        k = self.alphabet_size
        if k < 1:
            raise AutomatonError("alphabet size must be positive")
        n = len(self.delta)
        if n == 0 or len(self.prio) != n:
            raise AutomatonError("delta and prio must describe the same nonempty state set")
        if not 0 <= self.initial < n:
            raise AutomatonError("initial state out of range")
        for q in range(n):
            if len(self.delta[q]) != k or len(self.prio[q]) != k:
                raise AutomatonError(f"state {q} is not total over the alphabet")
            for a in range(k):
                if not 0 <= self.delta[q][a] < n:
                    raise AutomatonError(f"transition ({q},{a}) leaves the state set")
                if self.prio[q][a] < 0:
                    raise AutomatonError("priorities must be natural numbers")

    @classmethod
    def build(cls, alphabet_size: int, initial: int, delta, prio) -> "ParityAutomaton":
        return cls(alphabet_size, initial, tuple(map(tuple, delta)), tuple(map(tuple, prio)))

    @property
    def num_states(self) -> int:
        return len(self.delta)

    @property
    def max_priority(self) -> int:
        return max(max(row) for row in self.prio)

    def priorities(self) -> list[int]:
        return sorted({p for row in self.prio for p in row})

    def edges(self):
        for q in range(self.num_states):
            for a in range(self.alphabet_size):
                yield (q, a, self.delta[q][a])

    def key(self) -> tuple:
        return (self.alphabet_size, self.initial, self.delta, self.prio)

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, ParityAutomaton) and self.key() == other.key()

    def run(self, word: Sequence[int], state: int | None = None) -> int:
        q = self.initial if state is None else state
        for a in word:
            q = self.delta[q][a]
        return q

    def with_initial(self, q: int) -> "ParityAutomaton":
        return ParityAutomaton(self.alphabet_size, q, self.delta, self.prio)

    def describe(self) -> str:
        return f"DPA(states={self.num_states}, alphabet={self.alphabet_size}, priorities={self.priorities()})"


def _check_word(A: ParityAutomaton, w: UPWord):
    for c in w.stem + w.cycle:
        if not 0 <= c < A.alphabet_size:
            raise AutomatonError(f"letter {c} outside alphabet of size {A.alphabet_size}")


def membership(A: ParityAutomaton, w: UPWord) -> bool:
    """Exact membership of an ultimately periodic word."""
    _check_word(A, w)
    q = A.run(w.stem)
    seen: dict[int, int] = {}
    starts = []
    while q not in seen:
        seen[q] = len(starts)
        starts.append(q)
        q = A.run(w.cycle, q)
    m = INF
    for s in starts[seen[q]:]:
        for a in w.cycle:
            m = min(m, A.prio[s][a])
            s = A.delta[s][a]
    return m % 2 == 0


# ---------------------------------------------------------------------------
# normalization


def reachable_renumber(A: ParityAutomaton) -> ParityAutomaton:
    """Restrict to reachable states, numbered in BFS order from the initial state."""
    order = {A.initial: 0}
    queue = deque([A.initial])
    while queue:
        q = queue.popleft()
        for a in range(A.alphabet_size):
            r = A.delta[q][a]
            if r not in order:
                order[r] = len(order)
                queue.append(r)
    inv = sorted(order, key=order.get)
    delta = [[order[A.delta[q][a]] for a in range(A.alphabet_size)] for q in inv]
    prio = [[A.prio[q][a] for a in range(A.alphabet_size)] for q in inv]
    return ParityAutomaton.build(A.alphabet_size, 0, delta, prio)


def recolor(A: ParityAutomaton) -> ParityAutomaton:
    """Language-preserving priority compression.

    Inside every strongly connected part the minimal priority is mapped to the
    least value of the same parity above a floor, and the recursion continues
    on what remains after deleting those transitions.  Transitions on no
    cycle get the largest priority in use.
    """
    new: dict[tuple, int] = {}
    k = A.alphabet_size

    def process(E, floor):
        m = min(A.prio[q][a] for q, a, _ in E)
        v = floor if floor % 2 == m % 2 else floor + 1
        rest = []
        for e in E:
            if A.prio[e[0]][e[1]] == m:
                new[e[:2]] = v
            else:
                rest.append(e)
        inner = set()
        for comp in edge_sccs(rest):
            process(comp, v + 1)
            inner.update(e[:2] for e in comp)
        for e in rest:
            if e[:2] not in inner:
                new[e[:2]] = v

    for comp in edge_sccs(A.edges()):
        process(comp, 0)
    top = max(new.values(), default=0)
    prio = [[new.get((q, a), top) for a in range(k)] for q in range(A.num_states)]
    return ParityAutomaton.build(k, A.initial, A.delta, prio)


def moore_reduce(A: ParityAutomaton) -> ParityAutomaton:
    """Merge states that are bisimilar with identical priorities."""
    n, k = A.num_states, A.alphabet_size
    block = [0] * n
    count = 1
    while True:
        sigs: dict[tuple, int] = {}
        nb = []
        for q in range(n):
            sig = (block[q],) + tuple((block[A.delta[q][a]], A.prio[q][a]) for a in range(k))
            nb.append(sigs.setdefault(sig, len(sigs)))
        if len(sigs) == count:
            break
        block, count = nb, len(sigs)
    if count == n:
        return A
    delta = [None] * count
    prio = [None] * count
    for q in range(n):
        b = block[q]
        if delta[b] is None:
            delta[b] = [block[A.delta[q][a]] for a in range(k)]
            prio[b] = [A.prio[q][a] for a in range(k)]
    return ParityAutomaton.build(k, block[A.initial], delta, prio)


def normalize(A: ParityAutomaton) -> ParityAutomaton:
    """Canonical form: reachable part, compressed priorities, Moore-reduced, BFS-numbered."""
    cached = A._cache.get("normal")
    if cached is not None:
        return cached
    B = reachable_renumber(A)
    for _ in range(8):
        C = reachable_renumber(moore_reduce(recolor(B)))
        if C == B:
            break
        B = C
    B._cache["normal"] = B
    A._cache["normal"] = B
    return B


# ---------------------------------------------------------------------------
# elementary automata and letter maps


def constant(accept: bool, alphabet_size: int = 2) -> ParityAutomaton:
    p = 0 if accept else 1
    return ParityAutomaton.build(alphabet_size, 0, [[0] * alphabet_size], [[p] * alphabet_size])


def complement(A: ParityAutomaton) -> ParityAutomaton:
    prio = [[p + 1 for p in row] for row in A.prio]
    return normalize(ParityAutomaton.build(A.alphabet_size, A.initial, A.delta, prio))


def map_letters(A: ParityAutomaton, new_size: int, f: Callable[[int], int]) -> ParityAutomaton:
    """The automaton reading ``f(b)`` whenever it is fed the letter ``b``."""
    table = [f(b) for b in range(new_size)]
    delta = [[A.delta[q][table[b]] for b in range(new_size)] for q in range(A.num_states)]
    prio = [[A.prio[q][table[b]] for b in range(new_size)] for q in range(A.num_states)]
    return ParityAutomaton.build(new_size, A.initial, delta, prio)


# ---------------------------------------------------------------------------
# Boolean combination


@dataclass(frozen=True)
class Formula:
    """Boolean formula over operand indices: var / not / and / or / iff / xor."""

    op: str
    args: tuple = ()
    index: int = -1

    @staticmethod
    def var(i: int) -> "Formula":
        return Formula("var", (), i)

    def __invert__(self):
        return Formula("not", (self,))

    def __and__(self, other):
        return Formula("and", (self, other))

    def __or__(self, other):
        return Formula("or", (self, other))

    def iff(self, other):
        return Formula("iff", (self, other))

    def xor(self, other):
        return Formula("xor", (self, other))

    def variables(self) -> set[int]:
        if self.op == "var":
            return {self.index}
        return set().union(*(a.variables() for a in self.args)) if self.args else set()

    def evaluate(self, values: Sequence[bool]) -> bool:
        op = self.op
        if op == "var":
            return values[self.index]
        vals = [a.evaluate(values) for a in self.args]
        if op == "not":
            return not vals[0]
        if op == "and":
            return all(vals)
        if op == "or":
            return any(vals)
        if op == "iff":
            return vals[0] == vals[1]
        if op == "xor":
            return vals[0] != vals[1]
        raise AutomatonError(f"unknown connective {op!r}")


@dataclass(frozen=True)
class AcceptanceCombination:
    operands: tuple
    formula: Formula

    def __post_init__(self):
        bad = [i for i in self.formula.variables() if not 0 <= i < len(self.operands)]
        if bad:
            raise AutomatonError(f"formula references missing operands {bad}")


def lex_product(A: ParityAutomaton, B: ParityAutomaton,
                accept: Callable[[int, int], bool]) -> ParityAutomaton:
    """Synchronized product deciding ``accept(minA, minB)`` on the limit minima.

    The memory records, for every priority level ``a`` of ``A``, the least
    priority of ``B`` seen since ``A`` last showed a priority ``<= a``.  When
    ``A`` shows ``a`` the pair ``(a, min(memory[a], pB))`` is emitted; the
    lexicographically least pair emitted infinitely often is exactly the pair
    of limit minima, and a monotone map turns pairs into parity priorities.
    """
    if A.alphabet_size != B.alphabet_size:
        raise AutomatonError("alphabet mismatch")
    k = A.alphabet_size
    la = A.priorities()
    lb = B.priorities()
    idx = {p: i for i, p in enumerate(la)}
    rank: dict[tuple, int] = {}
    g = None
    prev = None
    for a in la:
        for b in lb:
            acc = accept(a, b)
            if g is None:
                g = 0 if acc else 1
            elif acc != prev:
                g += 1
            prev = acc
            rank[(a, b)] = g
    top = (INF,) * len(la)
    start = (A.initial, B.initial, top)
    ids = {start: 0}
    queue = deque([start])
    delta, prio = [], []
    while queue:
        qa, qb, mem = queue.popleft()
        drow, prow = [], []
        for x in range(k):
            pa, pb = A.prio[qa][x], B.prio[qb][x]
            i0 = idx[pa]
            b = min(mem[i0], pb)
            nm = tuple(min(m, pb) for m in mem[:i0]) + top[i0:]
            nxt = (A.delta[qa][x], B.delta[qb][x], nm)
            if nxt not in ids:
                ids[nxt] = len(ids)
                queue.append(nxt)
            drow.append(ids[nxt])
            prow.append(rank[(pa, b)])
        delta.append(drow)
        prio.append(prow)
    return normalize(ParityAutomaton.build(k, 0, delta, prio))


def _binary(A, B, op: str) -> ParityAutomaton:
    table = {
        "and": lambda x, y: x and y,
        "or": lambda x, y: x or y,
        "iff": lambda x, y: x == y,
        "xor": lambda x, y: x != y,
    }[op]
    # fewer levels on the primary side keeps the memory small
    if len(A.priorities()) > len(B.priorities()):
        A, B = B, A
    return lex_product(A, B, lambda a, b: table(a % 2 == 0, b % 2 == 0))


def _combine_formula(ops: Sequence[ParityAutomaton], f: Formula) -> ParityAutomaton:
    if f.op == "var":
        return normalize(ops[f.index])
    if f.op == "not":
        return complement(_combine_formula(ops, f.args[0]))
    parts = [_combine_formula(ops, a) for a in f.args]
    if f.op in ("and", "or"):
        return reduce(lambda x, y: _binary(x, y, f.op), parts)
    if f.op in ("iff", "xor"):
        return _binary(parts[0], parts[1], f.op)
    raise AutomatonError(f"unknown connective {f.op!r}")


def combine(inputs: Sequence[ParityAutomaton], formula) -> ParityAutomaton:
    """Deterministic parity automaton for a Boolean combination of the inputs.

    ``formula`` is a :class:`Formula` or one of ``"not"`` (single input),
    ``"and"``, ``"or"``, ``"iff"``, ``"xor"`` applied to all inputs.
    """
    inputs = list(inputs)
    if not inputs:
        raise AutomatonError("combine needs at least one input")
    if len({A.alphabet_size for A in inputs}) != 1:
        raise AutomatonError("alphabet mismatch between inputs")
    if isinstance(formula, str):
        vs = [Formula.var(i) for i in range(len(inputs))]
        if formula == "not":
            if len(inputs) != 1:
                raise AutomatonError("'not' takes exactly one input")
            formula = ~vs[0]
        elif formula in ("and", "or"):
            formula = Formula(formula, tuple(vs)) if len(vs) > 1 else vs[0]
        elif formula in ("iff", "xor"):
            if len(inputs) != 2:
                raise AutomatonError(f"{formula!r} takes exactly two inputs")
            formula = Formula(formula, tuple(vs))
        else:
            raise AutomatonError(f"unknown connective {formula!r}")
    AcceptanceCombination(tuple(inputs), formula)
    return _combine_formula(inputs, formula)


def intersect(A, B):
    return combine([A, B], "and")


def union(A, B):
    return combine([A, B], "or")


# ---------------------------------------------------------------------------
# emptiness and inclusion


def _accepting_loop(A: ParityAutomaton, edges) -> list | None:
    for comp in edge_sccs(edges):
        m = min(A.prio[q][a] for q, a, _ in comp)
        if m % 2 == 0:
            return comp
        found = _accepting_loop(A, [e for e in comp if A.prio[e[0]][e[1]] != m])
        if found is not None:
            return found
    return None


def _path(A: ParityAutomaton, src: int, dst: int, allowed=None) -> list[int]:
    """Letters of a shortest path ``src -> dst`` (empty when equal)."""
    if src == dst:
        return []
    prev = {src: None}
    queue = deque([src])
    while queue:
        q = queue.popleft()
        for a in range(A.alphabet_size):
            if allowed is not None and (q, a) not in allowed:
                continue
            r = A.delta[q][a]
            if r not in prev:
                prev[r] = (q, a)
                if r == dst:
                    out = []
                    while prev[r] is not None:
                        q0, a0 = prev[r]
                        out.append(a0)
                        r = q0
                    return out[::-1]
                queue.append(r)
    raise AutomatonError("no path")


def reachable_states(A: ParityAutomaton, start: int | None = None) -> set[int]:
    seen = {A.initial if start is None else start}
    stack = list(seen)
    while stack:
        q = stack.pop()
        for r in A.delta[q]:
            if r not in seen:
                seen.add(r)
                stack.append(r)
    return seen


def is_empty(A: ParityAutomaton) -> tuple[bool, UPWord | None]:
    """Emptiness with an accepted lasso as witness when nonempty."""
    A = normalize(A)
    loop = _accepting_loop(A, A.edges())
    if loop is None:
        return True, None
    m = min(A.prio[q][a] for q, a, _ in loop)
    q, a, r = next(e for e in loop if A.prio[e[0]][e[1]] == m)
    allowed = {(s, b) for s, b, _ in loop}
    stem = _path(A, A.initial, q)
    cycle = [a] + _path(A, r, q, allowed)
    w = UPWord(stem, cycle).canonical()
    assert membership(A, w), "emptiness witness failed membership"
    return False, w


def accepting_states(A: ParityAutomaton) -> set[int]:
    """States with a nonempty residual language."""
    good = set()
    loop_states = set()
    # states on some accepting loop, then backward closure
    def collect(edges):
        for comp in edge_sccs(edges):
            m = min(A.prio[q][a] for q, a, _ in comp)
            if m % 2 == 0:
                loop_states.update(q for q, _, _ in comp)
            else:
                collect([e for e in comp if A.prio[e[0]][e[1]] != m])
    collect(A.edges())
    preds: dict[int, list[int]] = {q: [] for q in range(A.num_states)}
    for q, _, r in A.edges():
        preds[r].append(q)
    good = set(loop_states)
    stack = list(good)
    while stack:
        r = stack.pop()
        for q in preds[r]:
            if q not in good:
                good.add(q)
                stack.append(q)
    return good


def is_subset(A: ParityAutomaton, B: ParityAutomaton) -> tuple[bool, UPWord | None]:
    if A.alphabet_size != B.alphabet_size:
        raise AutomatonError("alphabet mismatch")
    empty, w = is_empty(intersect(A, complement(B)))
    return empty, w


def is_equivalent(A: ParityAutomaton, B: ParityAutomaton) -> bool:
    if A.alphabet_size != B.alphabet_size:
        raise AutomatonError("alphabet mismatch")
    A, B = normalize(A), normalize(B)
    if A == B:
        return True
    return is_empty(combine([A, B], "xor"))[0]


def difference_witness(A, B) -> UPWord | None:
    """A word in exactly one of the two languages, or None."""
    return is_empty(combine([A, B], "xor"))[1]
