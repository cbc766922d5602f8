"""Textual syntax for set expressions.

Grammar (whitespace is ignored between tokens)::

    expr   := NAME | NAME "(" args ")"
    args   := arg ("," arg)*
    arg    := expr | STRING | "[" [INT ("," INT)*] "]" | "Pair(" expr "," expr ")"

Nullary constructors print bare (``Fin``); ``Cylinder("01")`` takes a quoted
bit string; ``FiniteFlip(X,[0,3])`` takes a position list; ``SepUnion``
takes ``Pair(piece,window)`` arguments.
"""
from __future__ import annotations

import re

from .constructions import (ALIASES, BINARY, NULLARY, UNARY, ConstructionError, SetExpr,
                            validate)

_TOKENS = re.compile(r'\s*(?:([A-Za-z_][A-Za-z0-9_]*)|("[^"]*")|(\d+)|([(),\[\]]))')


class ExprSyntaxError(ConstructionError):
    """Carries the character offset of the problem in ``offset``."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


def print_expr(e: SetExpr) -> str:
    op, args = e.op, e.args
    if op == "Automaton":
        return "Automaton"
    if op == "Cylinder":
        return f'Cylinder("{args[0]}")'
    if op == "FiniteFlip":
        return f"FiniteFlip({print_expr(args[0])},[{','.join(map(str, args[1]))}])"
    if op == "SepUnion":
        inner = ",".join(f"Pair({print_expr(x)},{print_expr(w)})" for x, w in args)
        return f"SepUnion({inner})"
    if not args and op not in ("Diff",):
        return op
    return f"{op}({','.join(print_expr(a) for a in args)})"


def _tokenize(text: str):
    pos, out, offsets = 0, [], []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(
                f"unexpected character at offset {pos}: {text[pos:pos + 10]!r}", pos)
        start = m.start(m.lastindex)
        offsets.append(start)
        pos = m.end()
        if m.group(1):
            out.append(("name", m.group(1)))
        elif m.group(2):
            out.append(("str", m.group(2)[1:-1]))
        elif m.group(3):
            out.append(("int", int(m.group(3))))
        else:
            out.append(("sym", m.group(4)))
    return out, offsets + [len(text)]


def parse_expr(text: str) -> SetExpr:
    toks, offsets = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def expect(kind, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            found = "end of input" if tok[0] is None else repr(tok[1])
            raise ExprSyntaxError(
                f"expected {want!r} at offset {offsets[pos]}, found {found}", offsets[pos])
        pos += 1
        return tok[1]

    def expr() -> SetExpr:
        name = expect("name")
        if peek() != ("sym", "("):
            return SetExpr(name)
        expect("sym", "(")
        if name == "Cylinder":
            s = expect("str") if peek()[0] == "str" else ""
            expect("sym", ")")
            return SetExpr(name, (s,))
        if name == "FiniteFlip":
            x = expr()
            expect("sym", ",")
            expect("sym", "[")
            nums = []
            while peek() != ("sym", "]"):
                nums.append(expect("int"))
                if peek() == ("sym", ","):
                    expect("sym", ",")
            expect("sym", "]")
            expect("sym", ")")
            return SetExpr(name, (x, tuple(sorted(set(nums)))))
        args = []
        if peek() != ("sym", ")"):
            while True:
                if name == "SepUnion":
                    expect("name", "Pair")
                    expect("sym", "(")
                    x = expr()
                    expect("sym", ",")
                    w = expr()
                    expect("sym", ")")
                    args.append((x, w))
                else:
                    args.append(expr())
                if peek() == ("sym", ","):
                    expect("sym", ",")
                    continue
                break
        expect("sym", ")")
        return SetExpr(name, tuple(args))

    e = expr()
    if pos != len(toks):
        raise ExprSyntaxError(
            f"trailing input after expression at offset {offsets[pos]}", offsets[pos])
    validate(e)
    return e


KNOWN = sorted(set(NULLARY) | set(UNARY) | set(BINARY) | set(ALIASES)
               | {"Cylinder", "FiniteFlip", "Diff", "SepUnion"})
