"""HOA v1 import/export for deterministic parity automata.

Letters are encoded as bit vectors over atomic propositions: letter ``l``
sets proposition ``i`` iff bit ``i`` of ``l`` is 1.  Export always uses
``parity min even`` with one acceptance set per transition; import accepts
the four parity conventions, state- or transition-based marks, and label
expressions built from ``t``, ``f``, proposition indices, ``!``, ``&``,
``|`` and parentheses.
"""
from __future__ import annotations

import re
import shlex

from .automata import AutomatonError, ParityAutomaton, normalize


class HOAError(AutomatonError):
    pass


def _num_aps(k: int) -> int:
    n = 0
    while (1 << n) < k:
        n += 1
    return n


def _acceptance_formula(count: int) -> str:
    """``Inf(0) | (Fin(1) & (Inf(2) | ...))`` for min-even parity with ``count`` sets."""
    if count == 0:
        return "f"

    def build(i):
        atom = f"Inf({i})" if i % 2 == 0 else f"Fin({i})"
        if i == count - 1:
            return atom
        rest = build(i + 1)
        op = "|" if i % 2 == 0 else "&"
        return f"{atom} {op} ({rest})"

    return build(0)


def _label(letter: int, aps: int) -> str:
    if aps == 0:
        return "t"
    return " & ".join(str(i) if (letter >> i) & 1 else f"!{i}" for i in range(aps))


def to_hoa(A: ParityAutomaton, name: str | None = None) -> str:
    k = A.alphabet_size
    aps = _num_aps(k)
    if (1 << aps) != k:
        raise HOAError("HOA export needs a power-of-two alphabet")
    count = A.max_priority + 1
    lines = ["HOA: v1"]
    if name:
        lines.append(f'name: "{name}"')
    lines += [
        f"States: {A.num_states}",
        f"Start: {A.initial}",
        f"AP: {aps}" + "".join(f' "p{i}"' for i in range(aps)),
        f"acc-name: parity min even {count}",
        f"Acceptance: {count} {_acceptance_formula(count)}",
        "properties: trans-labels explicit-labels trans-acc deterministic complete",
        "--BODY--",
    ]
    for q in range(A.num_states):
        lines.append(f"State: {q}")
        for a in range(k):
            lines.append(f"[{_label(a, aps)}] {A.delta[q][a]} {{{A.prio[q][a]}}}")
    lines.append("--END--")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# label expressions


_TOKEN = re.compile(r"\s*(?:(\d+)|([tf])|(.))")


def _parse_label(text: str, aps: int):
    """Return the set of letters satisfying the label expression."""
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            tokens.append(("ap", int(m.group(1))))
        elif m.group(2):
            tokens.append(("const", m.group(2) == "t"))
        elif m.group(3) and m.group(3).strip():
            tokens.append(("op", m.group(3)))
    pos = 0
    universe = frozenset(range(1 << aps))

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected and tok != ("op", expected)):
            raise HOAError(f"malformed label {text!r}")
        pos += 1
        return tok

    def disj():
        s = conj()
        while peek() == ("op", "|"):
            take("|")
            s = s | conj()
        return s

    def conj():
        s = unary()
        while peek() == ("op", "&"):
            take("&")
            s = s & unary()
        return s

    def unary():
        tok = take()
        if tok == ("op", "!"):
            return universe - unary()
        if tok == ("op", "("):
            s = disj()
            take(")")
            return s
        if tok[0] == "const":
            return universe if tok[1] else frozenset()
        if tok[0] == "ap":
            if tok[1] >= aps:
                raise HOAError(f"proposition {tok[1]} not declared")
            return frozenset(l for l in universe if (l >> tok[1]) & 1)
        raise HOAError(f"malformed label {text!r}")

    result = disj()
    if pos != len(tokens):
        raise HOAError(f"trailing tokens in label {text!r}")
    return result


# ---------------------------------------------------------------------------
# import


def from_hoa(text: str, canonical: bool = False) -> ParityAutomaton:
    header, _, rest = text.partition("--BODY--")
    if not _:
        raise HOAError("missing --BODY--")
    body, _, _ = rest.partition("--END--")
    states = start = aps = None
    acc = None
    for raw in header.splitlines():
        line = raw.strip()
        if not line or ":" not in line:
            continue
        key, val = line.split(":", 1)
        val = val.strip()
        if key == "States":
            states = int(val)
        elif key == "Start":
            if start is not None or "&" in val:
                raise HOAError("only a single initial state is supported")
            start = int(val)
        elif key == "AP":
            aps = int(shlex.split(val)[0])
        elif key == "acc-name":
            parts = val.split()
            if len(parts) != 4 or parts[0] != "parity" or parts[1] not in ("min", "max") \
                    or parts[2] not in ("even", "odd"):
                raise HOAError(f"unsupported acceptance {val!r}")
            acc = (parts[1], parts[2], int(parts[3]))
    if states is None or start is None or aps is None:
        raise HOAError("header must declare States, Start and AP")
    if acc is None:
        raise HOAError("missing parity acc-name")
    kind, parity, count = acc
    k = 1 << aps
    delta = [[None] * k for _ in range(states)]
    prio = [[None] * k for _ in range(states)]
    cur = None
    state_mark = None
    for raw in body.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("State:"):
            m = re.match(r"State:\s*(\d+)(?:\s*\"[^\"]*\")?\s*(?:\{([^}]*)\})?", line)
            if not m:
                raise HOAError(f"bad state line {line!r}")
            cur = int(m.group(1))
            state_mark = _marks(m.group(2))
            continue
        m = re.match(r"\[([^\]]*)\]\s*(\d+)\s*(?:\{([^}]*)\})?\s*$", line)
        if not m or cur is None:
            raise HOAError(f"bad edge line {line!r}")
        letters = _parse_label(m.group(1), aps)
        dst = int(m.group(2))
        mark = _marks(m.group(3))
        if mark is None:
            mark = state_mark
        p = _to_min_even(mark, kind, parity, count)
        for l in letters:
            if delta[cur][l] is not None:
                raise HOAError(f"state {cur} is not deterministic on letter {l}")
            delta[cur][l] = dst
            prio[cur][l] = p
    for q in range(states):
        for l in range(k):
            if delta[q][l] is None:
                raise HOAError(f"state {q} has no transition on letter {l}")
    A = ParityAutomaton.build(k, start, delta, prio)
    return normalize(A) if canonical else A


def _marks(text):
    if text is None:
        return None
    vals = [int(x) for x in text.split()]
    if len(vals) > 1:
        raise HOAError("at most one acceptance mark per transition is supported")
    return vals[0] if vals else None


def _to_min_even(p, kind, parity, count) -> int:
    if kind == "min":
        if p is None:
            p = count
        return p if parity == "even" else p + 1
    if p is None:
        p = -1
    if parity == "even":
        top = count - 1 if (count - 1) % 2 == 0 else count
    else:
        top = count - 1 if (count - 1) % 2 == 1 else count
    return top - p
