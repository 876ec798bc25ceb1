"""Minimal s-expression reader and printer.

Expressions are plain Python values: a symbol is a ``str``, a list is a
``tuple``.  Comments run from ``;`` to end of line.  The grammar is fully
parenthesized, so parsing is a single linear scan.
"""

from __future__ import annotations

from .errors import ParseError

_DELIMS = "() \t\r\n;"


def tokenize(text: str):
    """Yield (token, offset) pairs; raises ParseError on stray characters."""
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield c, i
            i += 1
        else:
            j = i
            while j < n and text[j] not in _DELIMS:
                j += 1
            yield text[i:j], i
            i = j


def read_all(text: str) -> list:
    """Parse every top-level expression in *text*."""
    out = []
    stack: list[list] = []
    for tok, pos in tokenize(text):
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if not stack:
                raise ParseError("unbalanced ')'", pos)
            done = tuple(stack.pop())
            if stack:
                stack[-1].append(done)
            else:
                out.append(done)
        else:
            if stack:
                stack[-1].append(tok)
            else:
                out.append(tok)
    if stack:
        raise ParseError("unclosed '('", len(text))
    return out


def read_one(text: str):
    """Parse exactly one expression."""
    exprs = read_all(text)
    if len(exprs) != 1:
        raise ParseError(f"expected one expression, found {len(exprs)}", 0)
    return exprs[0]


def to_text(sx) -> str:
    if isinstance(sx, str):
        return sx
    return "(" + " ".join(to_text(x) for x in sx) + ")"
