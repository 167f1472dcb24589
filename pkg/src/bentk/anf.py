"""Parser for algebraic normal form text.

Grammar::

    expr   := term ('+' term)*
    term   := factor ('*'? factor)*
    factor := var | '0' | '1' | '(' expr ')'

'+' is XOR; products are expanded with x*x = x and pairs of equal
monomials cancel. Variable names are matched longest-first against the
binding list, so ``y1y2`` reads as ``y1*y2``.
"""

from __future__ import annotations

from typing import Sequence

from .boolfun import AnfPolynomial
from .errors import AnfSyntaxError, UnknownVariable

Poly = frozenset  # of frozenset[int]

ONE: Poly = frozenset({frozenset()})
ZERO: Poly = frozenset()


def _mul(a: Poly, b: Poly) -> Poly:
    out: set = set()
    for s in a:
        for t in b:
            out ^= {s | t}
    return frozenset(out)


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.pos = 0
        self.index = {name: i + 1 for i, name in enumerate(names)}
        self.by_length = sorted(self.index, key=len, reverse=True)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> Poly:
        acc = self.term()
        while self.peek() in ("+", "⊕", "^"):
            self.pos += 1
            acc = acc ^ self.term()
        return acc

    def starts_factor(self) -> bool:
        c = self.peek()
        return bool(c) and (c in "01(" or c.isalpha() or c == "_")

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            c = self.peek()
            if c in ("*", "·"):
                self.pos += 1
                acc = _mul(acc, self.factor())
            elif self.starts_factor():
                acc = _mul(acc, self.factor())
            else:
                return acc

    def factor(self) -> Poly:
        c = self.peek()
        start = self.pos
        if not c:
            raise AnfSyntaxError("unexpected end of input", start)
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                raise AnfSyntaxError("expected ')'", self.pos)
            self.pos += 1
            return inner
        for name in self.by_length:
            if self.text.startswith(name, start):
                self.pos = start + len(name)
                return frozenset({frozenset({self.index[name]})})
        if c in "01":
            self.pos += 1
            return ONE if c == "1" else ZERO
        if c.isalpha() or c == "_":
            end = start
            while end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"):
                end += 1
            raise UnknownVariable(self.text[start:end], start)
        raise AnfSyntaxError(f"unexpected character {c!r}", start)


def parse_anf(text: str, names: Sequence[str]) -> AnfPolynomial:
    """Expand ``text`` into its monomial set over the variables ``names``."""
    p = _Parser(text, names)
    poly = p.expr()
    if p.peek():
        raise AnfSyntaxError(f"unexpected character {p.peek()!r}", p.pos)
    return AnfPolynomial(len(names), poly)


def default_names(n: int, prefix: str = "x") -> list[str]:
    return [f"{prefix}{i}" for i in range(1, n + 1)]
