"""Transversals of the Cayley tables of Z_2^m and their lifts.

A cell of the table of arity ``d`` is a tuple (a_1, ..., a_d) of vectors of
F_2^m with zero XOR: d = 3 is the latin square L_m, d = 4 the latin cube Q_m.
A transversal is 2^m cells whose every coordinate column is a permutation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence

import numpy as np

from . import gf2
from .errors import InvalidSpread, NotATransversal, SizeLimit
from .hypermatch import Count, Spread, SubspacePartition

SQUARE = 3
CUBE = 4

# largest m counted exactly without a cap
EXACT_LIMIT = {SQUARE: 3, CUBE: 3}

LIFT_SUFFIX = {CUBE: (0b00, 0b01, 0b10, 0b11), SQUARE: (0b01, 0b10, 0b11)}


@dataclass(frozen=True)
class CayleyTable:
    d: int
    m: int

    def __post_init__(self):
        if self.d not in (SQUARE, CUBE):
            raise ValueError("arity must be 3 (square) or 4 (cube)")
        if self.m < 0:
            raise ValueError("m must be nonnegative")

    @property
    def order(self) -> int:
        return 1 << self.m


def square(m: int) -> CayleyTable:
    return CayleyTable(SQUARE, m)


def cube(m: int) -> CayleyTable:
    return CayleyTable(CUBE, m)


@dataclass(frozen=True)
class Transversal:
    table: CayleyTable
    rows: tuple[tuple[int, ...], ...]

    def to_json(self) -> str:
        m = self.table.m
        return json.dumps({
            "d": self.table.d,
            "m": m,
            "rows": [[gf2.bitstr(a, m) for a in row] for row in self.rows],
        })

    @classmethod
    def from_json(cls, text: str) -> "Transversal":
        obj = json.loads(text)
        rows = [[gf2.parse_bits(a)[0] for a in row] for row in obj["rows"]]
        d = obj.get("d", len(rows[0]) if rows else CUBE)
        return transversal_from_rows(CayleyTable(d, obj["m"]), rows)


def transversal_from_rows(table: CayleyTable, rows: Sequence[Sequence[int]]) -> Transversal:
    """Validate ``rows`` and return them as a transversal sorted by first coordinate."""
    size = table.order
    rows = [tuple(int(a) for a in r) for r in rows]
    if len(rows) != size:
        raise NotATransversal(f"expected {size} rows, got {len(rows)}")
    for r in rows:
        if len(r) != table.d:
            raise NotATransversal(f"row {r} does not have {table.d} entries")
        if any(not 0 <= a < size for a in r):
            raise NotATransversal(f"row {r} has an entry outside F_2^{table.m}")
        x = 0
        for a in r:
            x ^= a
        if x:
            raise NotATransversal(f"row {r} does not XOR to zero")
    for j in range(table.d):
        col = [r[j] for r in rows]
        if len(set(col)) != size:
            dup = next(a for a in col if col.count(a) > 1)
            raise NotATransversal(f"column {j + 1} repeats the value {gf2.bitstr(dup, table.m)}")
    return Transversal(table, tuple(sorted(rows)))


# -- search ------------------------------------------------------------------

def _walk(table: CayleyTable, order: Callable[[int, int], Sequence[int]] | None = None) -> Iterator[tuple]:
    """Depth-first over rows with first coordinate 0, 1, 2, ... in turn.

    ``order(i, avail)`` may reorder the candidates for the second coordinate
    (used by the random sampler).
    """
    size = table.order
    full = (1 << size) - 1
    rows: list[tuple[int, ...]] = []

    def cands(avail: int) -> list[int]:
        return [a for a in range(size) if avail >> a & 1]

    if table.d == SQUARE:
        def rec(i: int, av2: int, av3: int):
            if i == size:
                yield tuple(rows)
                return
            c2 = cands(av2) if order is None else order(i, av2)
            for a2 in c2:
                a3 = i ^ a2
                if av3 >> a3 & 1:
                    rows.append((i, a2, a3))
                    yield from rec(i + 1, av2 & ~(1 << a2), av3 & ~(1 << a3))
                    rows.pop()

        yield from rec(0, full, full)
    else:
        def rec(i: int, av2: int, av3: int, av4: int):
            if i == size:
                yield tuple(rows)
                return
            c2 = cands(av2) if order is None else order(i, av2)
            c3 = cands(av3) if order is None else order(i, av3)
            for a2 in c2:
                for a3 in c3:
                    a4 = i ^ a2 ^ a3
                    if av4 >> a4 & 1:
                        rows.append((i, a2, a3, a4))
                        yield from rec(i + 1, av2 & ~(1 << a2), av3 & ~(1 << a3), av4 & ~(1 << a4))
                        rows.pop()

        yield from rec(0, full, full, full)


def iter_transversals(table: CayleyTable) -> Iterator[Transversal]:
    for rows in _walk(table):
        yield Transversal(table, rows)


def enumerate_transversals(table: CayleyTable, visitor: Callable[[Transversal], object]) -> int:
    """Call ``visitor`` on each transversal; ``False`` from the visitor stops. Returns calls made."""
    calls = 0
    for t in iter_transversals(table):
        calls += 1
        if visitor(t) is False:
            break
    return calls


@lru_cache(maxsize=None)
def _count_exact(d: int, m: int) -> int:
    size = 1 << m
    full = (1 << size) - 1

    # memoised on the sets of column values still unused
    if d == SQUARE:
        @lru_cache(maxsize=None)
        def rec(av2: int, av3: int) -> int:
            if not av2:
                return 1
            i = size - av2.bit_count()
            total = 0
            rest = av2
            while rest:
                low = rest & -rest
                a2 = low.bit_length() - 1
                if av3 >> (i ^ a2) & 1:
                    total += rec(av2 ^ low, av3 & ~(1 << (i ^ a2)))
                rest ^= low
            return total

        return rec(full, full)

    @lru_cache(maxsize=None)
    def rec4(av2: int, av3: int, av4: int) -> int:
        if not av2:
            return 1
        i = size - av2.bit_count()
        total = 0
        r2 = av2
        while r2:
            low2 = r2 & -r2
            a2 = low2.bit_length() - 1
            r3 = av3
            while r3:
                low3 = r3 & -r3
                a4 = i ^ a2 ^ (low3.bit_length() - 1)
                if av4 >> a4 & 1:
                    total += rec4(av2 ^ low2, av3 ^ low3, av4 & ~(1 << a4))
                r3 ^= low3
            r2 ^= low2
        return total

    return rec4(full, full, full)


def count_transversals(table: CayleyTable, cap: int | None = None) -> Count:
    """Number of transversals; beyond the exact range a ``cap`` is required."""
    if cap is not None:
        found = 0
        for _ in _walk(table):
            found += 1
            if found >= cap:
                return Count(found, truncated=True)
        return Count(found)
    if table.m > EXACT_LIMIT[table.d]:
        raise SizeLimit(f"exact transversal count for m={table.m} is out of reach; pass a cap")
    return Count(_count_exact(table.d, table.m))


def _random_invertible(m: int, rng: np.random.Generator) -> tuple[int, ...]:
    while True:
        rows = tuple(int(rng.integers(0, 1 << m)) for _ in range(m))
        if gf2.is_invertible(rows):
            return rows


def _affine_transversal(table: CayleyTable, rng: np.random.Generator) -> Transversal:
    """Columns a_j = A_j a_1 + c_j with A_2, ..., A_d all invertible."""
    m = table.m
    eye = gf2.identity(m)
    while True:
        mats = [_random_invertible(m, rng) for _ in range(table.d - 2)]
        last = tuple(a ^ b for a, b in zip(eye, mats[0]))
        for extra in mats[1:]:
            last = tuple(a ^ b for a, b in zip(last, extra))
        if gf2.is_invertible(last):
            break
    shifts = [int(rng.integers(0, table.order)) for _ in mats]
    c_last = 0
    for c in shifts:
        c_last ^= c
    rows = []
    for a1 in range(table.order):
        rest = [gf2.mat_vec(A, a1) ^ c for A, c in zip(mats, shifts)]
        rows.append((a1, *rest, gf2.mat_vec(last, a1) ^ c_last))
    return transversal_from_rows(table, rows)


def random_transversal(table: CayleyTable, rng: np.random.Generator) -> Transversal:
    """A random transversal; not uniform.

    Randomised depth-first search for m <= 4; above that the search stalls,
    so the columns are random affine images of the first one.
    """
    if table.m > 4:
        return _affine_transversal(table, rng)
    size = table.order

    def order(i: int, avail: int) -> list[int]:
        c = [a for a in range(size) if avail >> a & 1]
        rng.shuffle(c)
        return c

    for rows in _walk(table, order):
        return Transversal(table, rows)
    raise NotATransversal(f"{table} has no transversal")


# -- lifts -------------------------------------------------------------------

def lift_transversal(t: Transversal) -> SubspacePartition:
    """Partition of F_2^(m+2) into 2-flats from a transversal of Q_m.

    Coordinate j of each cell gets the two-bit suffix 00, 01, 10, 11.
    """
    if t.table.d != CUBE:
        raise NotATransversal("lifting to a partition needs a transversal of the cube")
    t = transversal_from_rows(t.table, t.rows)
    m = t.table.m + 2
    parts = []
    for row in t.rows:
        pts = [(a << 2) | s for a, s in zip(row, LIFT_SUFFIX[CUBE])]
        parts.append(gf2.subspace_from_points(pts, m))
    return SubspacePartition(m, 2, tuple(parts))


def lifted_lines(t: Transversal) -> list[gf2.AffineSubspace]:
    """Lines {0, b_1, b_2, b_3} from a transversal of L_(n-2), suffixes 01, 10, 11."""
    if t.table.d != SQUARE:
        raise NotATransversal("spread lifting needs a transversal of the square")
    t = transversal_from_rows(t.table, t.rows)
    n = t.table.m + 2
    out = []
    for row in t.rows:
        pts = [0, *((a << 2) | s for a, s in zip(row, LIFT_SUFFIX[SQUARE]))]
        out.append(gf2.subspace_from_points(pts, n))
    return out


def embed_spread(s: Spread) -> list[gf2.AffineSubspace]:
    """Lines of a spread of F_2^(n-2) placed in F_2^n as gamma -> (gamma, 0, 0)."""
    return [gf2.AffineSubspace(s.n + 2, tuple(b << 2 for b in ln.basis), 0) for ln in s.lines]


def spread_from_transversal(t: Transversal, s: Spread) -> Spread:
    """Spread of F_2^n from a transversal of L_(n-2) and a spread of F_2^(n-2)."""
    if s.n != t.table.m:
        raise InvalidSpread(f"spread of F_2^{s.n} does not match a transversal of L_{t.table.m}")
    return Spread(s.n + 2, tuple(lifted_lines(t) + embed_spread(s)))


def recursive_spread(n: int, rng: np.random.Generator | None = None) -> Spread:
    """Spread of F_2^n built from F_2^0 upward, two dimensions at a time.

    Each step uses the first transversal in canonical order, or a random one
    when ``rng`` is given.
    """
    if n < 0 or n % 2:
        raise InvalidSpread("2-spreads exist only in even dimension")
    s = Spread(0, ())
    for m in range(0, n, 2):
        table = square(m)
        t = random_transversal(table, rng) if rng is not None else next(iter_transversals(table))
        s = spread_from_transversal(t, s)
    return s
