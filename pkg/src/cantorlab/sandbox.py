"""Finite-depth brute force: explicit set families and exhaustive oracles.

Nothing here calls the game solver or the expression elaborator.  Families
live on a finite ground ``{0..n-1}``; a member is a bitmask whose bit ``i``
is position ``i``.  A regular set is projected to depth ``n`` through its
shadow ``{m : m followed by pad repeated forever is in the set}``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from math import gcd

from .automata import ParityAutomaton, UPWord, sccs

MAX_TREE_DEPTH = 5
MAX_H_DEPTH = 16
MAX_GAME_POSITIONS = 8


class GuardError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteFamily:
    n: int
    members: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("ground size must be natural")
        limit = 1 << self.n
        if any(not 0 <= m < limit for m in self.members):
            raise ValueError("member mask outside the ground")

    @classmethod
    def of(cls, n: int, members) -> "FiniteFamily":
        return cls(n, frozenset(members))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __contains__(self, m: int) -> bool:
        return m in self.members

    def __len__(self):
        return len(self.members)


def mask_of(bits) -> int:
    return sum(1 << i for i, b in enumerate(bits) if b)


def bits_of(m: int, n: int) -> list:
    return [(m >> i) & 1 for i in range(n)]


# ---------------------------------------------------------------------------
# independent membership and shadows


def accepts(A: ParityAutomaton, stem, cycle) -> bool:
    """Run the lasso twice around its cycle loop and read the least priority."""
    q = A.initial
    for a in stem:
        q = A.delta[q][a]
    visits = []
    while q not in visits:
        visits.append(q)
        for a in cycle:
            q = A.delta[q][a]
    loop_start = visits.index(q)
    least = None
    for start in visits[loop_start:]:
        s = start
        for a in cycle:
            p = A.prio[s][a]
            least = p if least is None else min(least, p)
            s = A.delta[s][a]
    return least % 2 == 0


def shadow(A: ParityAutomaton, depth: int, pad=(0,)) -> FiniteFamily:
    pad = tuple(pad)
    out = []
    for m in range(1 << depth):
        if accepts(A, bits_of(m, depth), pad):
            out.append(m)
    return FiniteFamily.of(depth, out)


def up_word_mask(stem, cycle, depth: int) -> int:
    """Cycle-padding projection: extend the stem by whole cycles, cut at ``depth``."""
    word = list(stem)
    while len(word) < depth:
        word.extend(cycle)
    return mask_of(word[:depth])


# ---------------------------------------------------------------------------
# axioms on explicit families


def brute_axioms(F: FiniteFamily) -> dict:
    """Exhaustive axiom record; each entry is (verdict, witness or None)."""
    mem = F.members
    rec = {
        "∅∉𝒮": (0 not in mem, None if 0 not in mem else (0,)),
        "Ω∈𝒮": (F.full in mem, None if F.full in mem else (F.full,)),
        "finite-mods": ("n/a", None),
    }

    def first(pred):
        for x in sorted(mem):
            for y in range(1 << F.n):
                if pred(x, y):
                    return (x, y)
        return None

    up = first(lambda x, y: x & ~y == 0 and y not in mem)
    down = first(lambda x, y: y & ~x == 0 and y not in mem)
    rec["upward"] = (up is None, up)
    rec["downward"] = (down is None, down)
    meet = next(((x, y) for x in sorted(mem) for y in sorted(mem) if x & y not in mem), None)
    join = next(((x, y) for x in sorted(mem) for y in sorted(mem) if x | y not in mem), None)
    rec["meet"] = (meet is None, meet)
    rec["join"] = (join is None, join)
    return rec


def brute_finite_union(F: FiniteFamily, k: int = 2):
    """No ``k`` members whose union is the whole ground (the finite shadow of Cof)."""
    for combo in itertools.combinations_with_replacement(sorted(F.members), k):
        u = 0
        for m in combo:
            u |= m
        if u == F.full:
            return False, combo
    return True, None


def up_words(max_len: int):
    """All (stem, cycle) pairs with total length at most ``max_len``, deduplicated."""
    seen = set()
    for total in range(1, max_len + 1):
        for lc in range(1, total + 1):
            for bits in itertools.product((0, 1), repeat=total):
                w = UPWord(bits[:total - lc], bits[total - lc:]).canonical()
                if w not in seen:
                    seen.add(w)
                    yield w


def _join_is_cofinite(words) -> bool:
    start = max(len(w.stem) for w in words)
    period = 1
    for w in words:
        period = period * len(w.cycle) // gcd(period, len(w.cycle))
    return all(any(w[i] for w in words) for i in range(start, start + period))


def brute_finite_union_words(A: ParityAutomaton, max_len: int = 8, k: int = 2):
    """Search member lassos of total length <= ``max_len`` for ``k`` with a cofinite union."""
    members = [w for w in up_words(max_len) if accepts(A, w.stem, w.cycle)]
    for combo in itertools.combinations_with_replacement(members, k):
        if _join_is_cofinite(combo):
            return False, combo
    return True, None


# ---------------------------------------------------------------------------
# the difference operator, literally


def brute_D_operator(chain, depth: int | None = None) -> FiniteFamily:
    chain = list(chain)
    if not chain:
        return FiniteFamily.of(depth or 0, ())
    n = chain[0].n
    for i in range(len(chain) - 1):
        if not chain[i].members <= chain[i + 1].members:
            raise ValueError(f"chain not increasing at {i}")
    parity = 1 if len(chain) % 2 == 0 else 0
    out = set()
    for z, A in enumerate(chain):
        if z % 2 != parity:
            continue
        below = set().union(*(c.members for c in chain[:z])) if z else set()
        out |= A.members - below
    return FiniteFamily.of(n, out)


# ---------------------------------------------------------------------------
# tree coding and the K / hat / R construction


class TreeCode:
    """Binary strings of length < k in length-lexicographic order."""

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("tree depth must be positive")
        self.k = k
        self.strings = ["".join(p) for n in range(k) for p in itertools.product("01", repeat=n)]
        self.index = {s: i for i, s in enumerate(self.strings)}

    def __len__(self):
        return len(self.strings)

    def code(self, s: str) -> int:
        return self.index[s]

    def decode(self, i: int) -> str:
        return self.strings[i]


def k_construction(k: int):
    """Chains of restrictions of length-``k`` strings, coded on strings of length <= k."""
    if k > MAX_TREE_DEPTH:
        raise GuardError(f"tree depth {k} exceeds the guard {MAX_TREE_DEPTH}")
    code = TreeCode(k + 1)
    chains = []
    for p in itertools.product("01", repeat=k):
        x = "".join(p)
        chains.append(sum(1 << code.code(x[:i]) for i in range(k + 1)))
    return FiniteFamily.of(len(code), chains), code


def submasks(m: int):
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


def hat(F: FiniteFamily) -> FiniteFamily:
    return FiniteFamily.of(F.n, {s for m in F.members for s in submasks(m)})


def r_family(Y: FiniteFamily, r: int = 1) -> FiniteFamily:
    """``{y | e : y in Y, e of size at most r}``."""
    extras = [0]
    for size in range(1, r + 1):
        for pos in itertools.combinations(range(Y.n), size):
            extras.append(sum(1 << p for p in pos))
    return FiniteFamily.of(Y.n, {y | e for y in Y.members for e in extras})


def is_downward_closed(F: FiniteFamily) -> bool:
    mem = F.members
    return all((m & ~(1 << i)) in mem for m in mem for i in range(F.n) if m >> i & 1)


# ---------------------------------------------------------------------------
# prefilter normalization


@dataclass(frozen=True)
class PrefilterReport:
    core: int  # intersection of all members
    omega: int  # ground minus the core
    restricted: FiniteFamily
    branch: str  # "principal", "cofinite" or "degenerate"
    holds: bool


def prefilter_normalize(F: FiniteFamily) -> PrefilterReport:
    mem = F.members
    if not mem:
        raise ValueError("an empty family is not a prefilter")
    for x in mem:
        for y in range(1 << F.n):
            if x & ~y == 0 and y not in mem:
                raise ValueError("family is not upward closed")
    if any(x & y not in mem for x in mem for y in mem):
        raise ValueError("family is not closed under intersections")
    core = F.full
    for m in mem:
        core &= m
    omega = F.full & ~core
    restricted = FiniteFamily.of(F.n, {m & omega for m in mem})
    if omega == 0:
        return PrefilterReport(core, omega, restricted, "degenerate", True)
    if 0 in restricted.members:
        # principal: every superset of the core, i.e. the full power set of omega
        ok = restricted.members == set(submasks(omega)) and mem == {
            m for m in range(1 << F.n) if m & core == core}
        return PrefilterReport(core, omega, restricted, "principal", ok)
    ok = all((omega & ~(1 << i)) in restricted.members for i in range(F.n) if omega >> i & 1)
    return PrefilterReport(core, omega, restricted, "cofinite", ok)


# ---------------------------------------------------------------------------
# homeomorphism checks at finite depth


@dataclass
class HReport:
    kind: str
    depth: int
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _flip(m: int, flips: int) -> int:
    return m ^ flips


def h_flip_check(flips, depth: int, family: FiniteFamily | None = None) -> HReport:
    if depth > MAX_H_DEPTH:
        raise GuardError(f"depth {depth} exceeds the guard {MAX_H_DEPTH}")
    if any(f < 0 or f >= depth for f in flips):
        raise ValueError("flip positions must lie below the depth")
    fm = mask_of(1 if i in set(flips) else 0 for i in range(depth))
    image = [_flip(m, fm) for m in range(1 << depth)]
    checks = {"bijective": len(set(image)) == 1 << depth}
    # prefix j of the image depends only on prefix j of the input, both ways
    lip = True
    for j in range(depth + 1):
        low = (1 << j) - 1
        for m in range(0, 1 << depth, max(1, (1 << depth) // 256)):
            if (_flip(m, fm) & low) != (_flip(m & low, fm) & low):
                lip = False
    checks["lipschitz"] = lip
    if family is not None:
        checks["image_identity"] = {_flip(m, fm) for m in family.members} == set(family.members)
    return HReport("h_F", depth, checks)


def filter_h(word_bits, s=(1,)) -> list:
    """The map onto the cylinder [s] for the even-track filter (with |s| = 1).

    Omega is the set of positive even positions; the complementary positions
    ``{0} u odds`` are sent to ``odds`` by pi(0) = 1 and pi(2j - 1) = 2j + 1.
    """
    if len(s) != 1:
        raise ValueError("only cylinders of length 1 are supported")
    n = len(word_bits)
    out = [0] * n
    for i in range(n):
        if i == 0:
            out[i] = s[0]
        elif i % 2 == 0:
            out[i] = word_bits[i]
        else:
            j = (i - 1) // 2
            src = 0 if j == 0 else 2 * j - 1
            out[i] = word_bits[src]
    return out


def filter_h_word(stem, cycle, s=(1,)):
    """Image of an ultimately periodic word as (stem, cycle)."""
    period = len(cycle) * 2
    head = len(stem) + 3
    total = head + period
    word = list(stem)
    while len(word) < total:
        word.extend(cycle)
    img = filter_h(word[:total], s)
    return img[:head], img[head:]


def filter_h_check(F_aut: ParityAutomaton, depth: int = 12, sample_len: int = 6,
                   s=(1,)) -> HReport:
    if depth > MAX_H_DEPTH:
        raise GuardError(f"depth {depth} exceeds the guard {MAX_H_DEPTH}")
    used = sorted({0} | {i for i in range(2, depth, 2)} |
                  {0 if (i - 1) // 2 == 0 else i - 2 for i in range(1, depth, 2)})
    images = set()
    for bits in itertools.product((0, 1), repeat=len(used)):
        x = [0] * depth
        for pos, b in zip(used, bits):
            x[pos] = b
        images.add(tuple(filter_h(x, s)))
    target = {t for t in itertools.product((0, 1), repeat=depth) if t[0] == s[0]}
    checks = {"bijective": images == target and len(images) == 1 << len(used)}
    ok_img = True
    for ls in range(sample_len + 1):
        for lc in range(1, sample_len + 1):
            for stem in itertools.product((0, 1), repeat=ls):
                for cyc in itertools.product((0, 1), repeat=lc):
                    hs, hc = filter_h_word(stem, cyc, s)
                    if hs[0] != s[0] or accepts(F_aut, stem, cyc) != accepts(F_aut, hs, hc):
                        ok_img = False
    checks["image_identity"] = ok_img
    return HReport("filter_h", depth, checks)


def psi_check(e: int, depth: int = 10) -> HReport:
    if depth > MAX_H_DEPTH:
        raise GuardError(f"depth {depth} exceeds the guard {MAX_H_DEPTH}")
    if e >> depth:
        raise ValueError("e must lie inside the ground")
    domain = [x for x in range(1 << depth) if x & e == 0]
    images = {x | e for x in domain}
    checks = {
        "injective_on_D_e": len(images) == len(domain),
        "images_contain_e": all(y & e == e for y in images),
    }
    return HReport("psi_e", depth, checks)


# ---------------------------------------------------------------------------
# brute-force parity games


def random_arena(rng: random.Random, n: int, max_prio: int = 5):
    owner = [rng.randint(0, 1) for _ in range(n)]
    prio = [rng.randint(0, max_prio) for _ in range(n)]
    moves = [rng.sample(range(n), rng.randint(1, min(3, n))) for _ in range(n)]
    return owner, prio, moves


def brute_parity_game(owner, prio, moves) -> tuple:
    """Winner per position by enumerating all positional strategies of Player 0."""
    n = len(owner)
    if n > MAX_GAME_POSITIONS:
        raise GuardError(f"{n} positions exceed the guard {MAX_GAME_POSITIONS}")
    mine = [v for v in range(n) if owner[v] == 0]
    wins = [False] * n
    for choice in itertools.product(*[moves[v] for v in mine]):
        fixed = dict(zip(mine, choice))

        def succ(v):
            return [fixed[v]] if v in fixed else list(moves[v])

        bad = set()
        for p in set(prio):
            if p % 2 == 0:
                continue
            sub = [v for v in range(n) if prio[v] >= p]
            sset = set(sub)
            for comp in sccs(sub, lambda v: [w for w in succ(v) if w in sset]):
                cs = set(comp)
                cyclic = len(comp) > 1 or any(w in cs for w in succ(comp[0]))
                if cyclic:
                    bad |= {v for v in comp if prio[v] == p}
        for v in range(n):
            seen, stack = {v}, [v]
            while stack:
                x = stack.pop()
                for y in succ(x):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if not seen & bad:
                wins[v] = True
    return tuple(0 if w else 1 for w in wins)


def brute_parity_games(count: int, max_positions: int = MAX_GAME_POSITIONS, seed: int = 0):
    """Yield (arena triple, brute verdict) for random arenas."""
    if max_positions > MAX_GAME_POSITIONS:
        raise GuardError("position guard exceeded")
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_positions)
        arena = random_arena(rng, n)
        yield arena, brute_parity_game(*arena)


# ---------------------------------------------------------------------------
# report files


def write_report(path, records) -> None:
    """One ``key<TAB>value`` line per record, in the given order."""
    with open(path, "w", encoding="utf-8") as fh:
        for key, value in records:
            fh.write(f"{key}\t{value}\n")


def read_report(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return [tuple(line.rstrip("\n").split("\t", 1)) for line in fh if line.strip()]


def h_homeomorphism_check(kind: str, params: dict, depth: int) -> HReport:
    """Dispatch to the finite-depth check named by ``kind``."""
    if kind == "h_F":
        return h_flip_check(params.get("flips", ()), depth, params.get("family"))
    if kind == "filter_h":
        if "filter" not in params:
            raise ValueError("filter_h needs the filter automaton")
        return filter_h_check(params["filter"], depth, params.get("sample_len", 6),
                              tuple(params.get("s", (1,))))
    if kind == "psi_e":
        return psi_check(params.get("e", 0), depth)
    raise ValueError(f"unknown homeomorphism kind {kind!r}")


# ---------------------------------------------------------------------------
# shadow agreement with symbolic verdicts


def _tail_is_pad(word, depth: int, pad) -> bool:
    """Does the word equal its depth-prefix followed by ``pad`` forever?"""
    horizon = depth + len(word.stem) + 2 * len(word.cycle) * len(pad)
    padded = list(pad) * (horizon // len(pad) + 1)
    return all(word[i] == padded[(i - depth) % len(pad)] for i in range(depth, horizon))


def shadow_agreement(A: ParityAutomaton, verdicts: dict, depth: int, pad=(0,)) -> dict:
    """Compare symbolic verdicts with the brute shadow wherever both are comparable.

    ``verdicts`` maps "upward", "downward", "meet", "join", "∅∉𝒮", "Ω∈𝒮" to
    ``(ok, witness words)``.  A positive symbolic verdict must be positive on
    the shadow; a negative one is compared only when its witnesses are already
    padded from ``depth`` on.  The constant axioms are comparable only for the
    pad that makes the constant word a shadow point.
    Returns ``{axiom: True | False | None}`` with None meaning not comparable.
    """
    pad = tuple(pad)
    brute = brute_axioms(shadow(A, depth, pad))
    out = {}
    for name, (ok, witness) in verdicts.items():
        if name == "∅∉𝒮" and pad != (0,) or name == "Ω∈𝒮" and pad != (1,):
            out[name] = None
            continue
        shadow_ok = brute[name][0]
        if ok:
            out[name] = bool(shadow_ok)
        elif witness and all(_tail_is_pad(w, depth, pad) for w in witness):
            out[name] = not shadow_ok
        else:
            out[name] = None
    return out
