"""Text syntax for degrees.

    expr := [sign] term (('+'|'-') term)*
    term := [uint] atom
    atom := uint | 'L' uint | 's' | 'rho' | 'phi(' uint ')' | 'w(' uint ')'

Whitespace is ignored. ``L3`` is the character L^3, ``s`` the sign rep,
``rho`` the complex regular rep, ``phi(k)`` and ``w(k)`` the complex and
quaternionic projective cells.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .reps import VirtualRep, lam, phi, quat_w, regular, sign, trivial

_UINT = re.compile(r"\d+")


class _Cursor:
    def __init__(self, text: str):
        # compact text plus a map back to columns of the original string
        self.chars: list[str] = []
        self.cols: list[int] = []
        for col, ch in enumerate(text):
            if not ch.isspace():
                self.chars.append(ch)
                self.cols.append(col)
        self.s = "".join(self.chars)
        self.i = 0
        self.end_col = len(text)

    def col(self) -> int:
        return self.cols[self.i] if self.i < len(self.cols) else self.end_col

    def fail(self, msg: str):
        raise ParseError(msg, self.col())

    def peek(self, token: str) -> bool:
        return self.s.startswith(token, self.i)

    def take(self, token: str) -> bool:
        if self.peek(token):
            self.i += len(token)
            return True
        return False

    def uint(self) -> int | None:
        m = _UINT.match(self.s, self.i)
        if not m:
            return None
        self.i = m.end()
        return int(m.group())

    def need_uint(self) -> int:
        v = self.uint()
        if v is None:
            self.fail("expected unsigned integer")
        return v


def _atom(cur: _Cursor, n: int) -> VirtualRep | None:
    if cur.take("rho"):
        return regular(n)
    if cur.take("phi("):
        k = cur.need_uint()
        if not cur.take(")"):
            cur.fail("expected ')'")
        return phi(k, n)
    if cur.take("w("):
        k = cur.need_uint()
        if not cur.take(")"):
            cur.fail("expected ')'")
        return quat_w(k, n)
    if cur.take("L"):
        return lam(n, cur.need_uint())
    if cur.take("s"):
        return sign(n)  # DomainError for odd n
    return None


def _term(cur: _Cursor, n: int) -> VirtualRep:
    start = cur.i
    coeff = cur.uint()
    atom = _atom(cur, n)
    if atom is None:
        if coeff is None:
            cur.i = start
            cur.fail("expected a term")
        return trivial(n, coeff)
    return atom.scale(coeff if coeff is not None else 1)


def parse_degree(text: str, n: int) -> VirtualRep:
    """Parse ``text`` as a virtual representation of C_n."""
    cur = _Cursor(text)
    if not cur.s:
        cur.fail("empty expression")
    negate = cur.take("-")
    if not negate:
        cur.take("+")
    total = _term(cur, n)
    if negate:
        total = -total
    while cur.i < len(cur.s):
        if cur.take("+"):
            total = total + _term(cur, n)
        elif cur.take("-"):
            total = total - _term(cur, n)
        else:
            cur.fail(f"unexpected character {cur.s[cur.i]!r}")
    return total


def format_degree(alpha: VirtualRep) -> str:
    """Inverse of :func:`parse_degree` using only integer, ``L`` and ``s`` atoms."""
    parts: list[tuple[int, str]] = []
    if alpha.trivial:
        parts.append((alpha.trivial, ""))
    for e, k in alpha.lam:
        parts.append((k, f"L{e}"))
    if alpha.sigma:
        parts.append((alpha.sigma, "s"))
    if not parts:
        return "0"
    out = []
    for idx, (k, atom) in enumerate(parts):
        mag = abs(k)
        body = str(mag) if not atom else (atom if mag == 1 else f"{mag}{atom}")
        if idx == 0:
            out.append(("-" if k < 0 else "") + body)
        else:
            out.append(("- " if k < 0 else "+ ") + body)
    return " ".join(out)
