"""Partition and spread hypergraphs and an exact perfect-matching counter.

The search keeps the uncovered vertices in an int bitset, branches on the
uncovered vertex with the fewest edges still inside the uncovered set, and
(for counting) memoises on that bitset.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from . import gf2
from .errors import InvalidMatching, InvalidPartition, InvalidSpread, SizeLimit

MAX_DIM = 6


@dataclass(frozen=True)
class Hypergraph:
    """Uniform hypergraph on vertices ``0..vertex_count-1``.

    ``labels[v]`` is the vector of F_2^m that vertex ``v`` stands for; ``None``
    means vertex ``v`` is the vector ``v``.
    """

    vertex_count: int
    edges: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        edges = tuple(tuple(sorted(e)) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        sizes = {len(e) for e in edges}
        if len(sizes) > 1:
            raise ValueError(f"hypergraph is not uniform: edge sizes {sorted(sizes)}")
        for e in edges:
            if len(set(e)) != len(e) or e[0] < 0 or e[-1] >= self.vertex_count:
                raise ValueError(f"bad edge {e}")
        if len(set(edges)) != len(edges):
            raise ValueError("duplicate edges")
        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise ValueError("labels must name every vertex")

    @property
    def d(self) -> int:
        return len(self.edges[0]) if self.edges else 0

    def label(self, v: int) -> int:
        return v if self.labels is None else self.labels[v]

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Rename vertex ``v`` to ``perm[v]``, carrying labels along."""
        labels = [0] * self.vertex_count
        for v in range(self.vertex_count):
            labels[perm[v]] = self.label(v)
        edges = tuple(tuple(perm[v] for v in e) for e in self.edges)
        return Hypergraph(self.vertex_count, edges, tuple(labels))

    def to_text(self) -> str:
        lines = [f"p hg {self.vertex_count} {len(self.edges)} {self.d}"]
        lines += [" ".join(map(str, e)) for e in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypergraph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("c")]
        if not rows or rows[0][:2] != ["p", "hg"]:
            raise ValueError("missing 'p hg <vertices> <edges> <d>' header")
        nv, ne, d = map(int, rows[0][2:5])
        edges = tuple(tuple(map(int, r)) for r in rows[1:])
        if len(edges) != ne or any(len(e) != d for e in edges):
            raise ValueError("edge list does not match header")
        return cls(nv, edges)


@dataclass(frozen=True)
class PerfectMatching:
    edge_indices: tuple[int, ...]

    def to_json(self) -> str:
        return json.dumps(list(self.edge_indices))


@dataclass(frozen=True)
class SubspacePartition:
    m: int
    k: int
    parts: tuple[gf2.AffineSubspace, ...]

    def __post_init__(self):
        parts = tuple(sorted(self.parts))
        object.__setattr__(self, "parts", parts)
        if len(parts) != 1 << (self.m - self.k):
            raise InvalidPartition(f"expected {1 << (self.m - self.k)} parts, got {len(parts)}")
        seen = 0
        for p in parts:
            if p.m != self.m or p.k != self.k:
                raise InvalidPartition(f"part {p} is not a {self.k}-flat of F_2^{self.m}")
            mask = p.mask()
            if seen & mask:
                raise InvalidPartition("parts overlap")
            seen |= mask
        if seen != (1 << (1 << self.m)) - 1:
            raise InvalidPartition("parts do not cover the space")

    def to_json(self) -> str:
        return json.dumps({"m": self.m, "k": self.k, "parts": [str(p) for p in self.parts]})


@dataclass(frozen=True)
class Spread:
    n: int
    lines: tuple[gf2.AffineSubspace, ...]

    def __post_init__(self):
        lines = tuple(sorted(self.lines))
        object.__setattr__(self, "lines", lines)
        if self.n % 2:
            raise InvalidSpread("2-spreads exist only in even dimension")
        if len(lines) != ((1 << self.n) - 1) // 3:
            raise InvalidSpread(f"expected {((1 << self.n) - 1) // 3} lines, got {len(lines)}")
        seen = 1
        for ln in lines:
            if ln.m != self.n or ln.k != 2 or not ln.is_linear:
                raise InvalidSpread(f"{ln} is not a 2-dimensional linear subspace of F_2^{self.n}")
            mask = ln.mask() & ~1
            if seen & mask:
                raise InvalidSpread("lines share a nonzero vector")
            seen |= mask
        if seen != (1 << (1 << self.n)) - 1:
            raise InvalidSpread("some nonzero vector is not covered")

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "lines": [str(ln) for ln in self.lines]})


# -- construction ------------------------------------------------------------

def build_flat_hypergraph(m: int, k: int) -> Hypergraph:
    """Vertices F_2^m, one edge per k-dimensional affine subspace."""
    if m > MAX_DIM:
        raise SizeLimit(f"m={m} exceeds {MAX_DIM}")
    return Hypergraph(1 << m, tuple(tuple(s.members()) for s in gf2.enumerate_subspaces(m, k, affine=True)))


def build_partition_hypergraph(m: int) -> Hypergraph:
    """H_m: 4-uniform, edges are the 2-dimensional affine subspaces of F_2^m."""
    if m < 2:
        raise ValueError("H_m needs m >= 2")
    return build_flat_hypergraph(m, 2)


def build_spread_hypergraph(n: int) -> Hypergraph:
    """G_n: vertices are the nonzero vectors, edges the XOR-zero triples."""
    if n < 2 or n % 2:
        raise ValueError("G_n is built for even n >= 2")
    if n > MAX_DIM:
        raise SizeLimit(f"n={n} exceeds {MAX_DIM}")
    size = 1 << n
    edges = []
    for a in range(1, size):
        for b in range(a + 1, size):
            c = a ^ b
            if c > b:
                edges.append((a - 1, b - 1, c - 1))
    return Hypergraph(size - 1, tuple(edges), tuple(range(1, size)))


# -- search ------------------------------------------------------------------

class Count(int):
    """Matching count; ``truncated`` marks a lower bound cut off at a cap."""

    truncated: bool

    def __new__(cls, value: int, truncated: bool = False):
        obj = super().__new__(cls, value)
        obj.truncated = truncated
        return obj

    def __repr__(self) -> str:
        return f"Count({int(self)}, truncated={self.truncated})"


class _Search:
    def __init__(self, h: Hypergraph):
        self.masks = [sum(1 << v for v in e) for e in h.edges]
        self.incident: list[list[int]] = [[] for _ in range(h.vertex_count)]
        for i, e in enumerate(h.edges):
            for v in e:
                self.incident[v].append(i)
        self.full = (1 << h.vertex_count) - 1
        self.memo: dict[int, int] = {0: 1}

    def branch(self, free: int) -> list[int]:
        """Edges through the most constrained free vertex, inside ``free``."""
        best = None
        masks = self.masks
        rest = free
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            opts = [i for i in self.incident[v] if masks[i] & ~free == 0]
            if best is None or len(opts) < len(best):
                best = opts
                if len(opts) <= 1:
                    break
            rest ^= low
        return best or []

    def count(self, free: int) -> int:
        got = self.memo.get(free)
        if got is not None:
            return got
        total = 0
        for i in self.branch(free):
            total += self.count(free & ~self.masks[i])
        self.memo[free] = total
        return total

    def walk(self, free: int, chosen: list[int]) -> Iterator[tuple[int, ...]]:
        if not free:
            yield tuple(sorted(chosen))
            return
        for i in self.branch(free):
            chosen.append(i)
            yield from self.walk(free & ~self.masks[i], chosen)
            chosen.pop()


def _count_subtree(h: Hypergraph, edge: int) -> int:
    s = _Search(h)
    return s.count(s.full & ~s.masks[edge])


def count_perfect_matchings(h: Hypergraph, cap: int | None = None, workers: int = 1) -> Count:
    """Exact number of perfect matchings of ``h``.

    With ``cap`` the search enumerates and stops at ``cap`` matchings; the
    result is then a lower bound flagged ``truncated``.
    """
    if h.vertex_count == 0:
        return Count(1)
    if h.d == 0 or h.vertex_count % h.d:
        return Count(0)
    if cap is not None:
        found = 0
        for _ in _Search(h).walk((1 << h.vertex_count) - 1, []):
            found += 1
            if found >= cap:
                return Count(found, truncated=True)
        return Count(found)
    s = _Search(h)
    if workers <= 1:
        return Count(s.count(s.full))
    roots = s.branch(s.full)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return Count(sum(pool.map(_count_subtree, [h] * len(roots), roots)))


def iter_perfect_matchings(h: Hypergraph) -> Iterator[PerfectMatching]:
    if h.vertex_count and (h.d == 0 or h.vertex_count % h.d):
        return
    s = _Search(h)
    for chosen in s.walk(s.full, []):
        yield PerfectMatching(chosen)


def enumerate_perfect_matchings(h: Hypergraph, visitor: Callable[[PerfectMatching], object]) -> int:
    """Call ``visitor`` once per perfect matching, in a fixed order.

    A visitor returning ``False`` stops the enumeration. Returns the number of
    callbacks made.
    """
    calls = 0
    for pm in iter_perfect_matchings(h):
        calls += 1
        if visitor(pm) is False:
            break
    return calls


# -- decoding ----------------------------------------------------------------

def _check_matching(pm: PerfectMatching, h: Hypergraph) -> None:
    covered = 0
    for i in pm.edge_indices:
        if not 0 <= i < len(h.edges):
            raise InvalidMatching(f"edge index {i} out of range")
        mask = sum(1 << v for v in h.edges[i])
        if covered & mask:
            raise InvalidMatching("edges overlap")
        covered |= mask
    if covered != (1 << h.vertex_count) - 1:
        raise InvalidMatching("matching does not cover every vertex")


def matching_to_partition(pm: PerfectMatching, h: Hypergraph, m: int, k: int = 2) -> SubspacePartition:
    _check_matching(pm, h)
    parts = []
    for i in pm.edge_indices:
        sub = gf2.subspace_from_points([h.label(v) for v in h.edges[i]], m)
        if sub is None or sub.k != k:
            raise InvalidMatching(f"edge {i} is not a {k}-dimensional affine subspace")
        parts.append(sub)
    return SubspacePartition(m, k, tuple(parts))


def matching_to_spread(pm: PerfectMatching, h: Hypergraph, n: int) -> Spread:
    _check_matching(pm, h)
    lines = []
    for i in pm.edge_indices:
        sub = gf2.subspace_from_points([0, *(h.label(v) for v in h.edges[i])], n)
        if sub is None:
            raise InvalidMatching(f"edge {i} plus zero is not a subspace")
        lines.append(sub)
    return Spread(n, tuple(lines))


def ordered_from_unordered(count: int, part_count: int) -> int:
    """Ordered partitions from unordered ones: multiply by part_count!."""
    if count < 0 or part_count < 0:
        raise ValueError("counts must be nonnegative")
    return count * math.factorial(part_count)


def partitions(m: int, k: int) -> Iterator[SubspacePartition]:
    """All unordered partitions of F_2^m into k-dimensional affine subspaces."""
    h = build_flat_hypergraph(m, k)
    for pm in iter_perfect_matchings(h):
        yield matching_to_partition(pm, h, m, k)


def spreads(n: int) -> Iterator[Spread]:
    h = build_spread_hypergraph(n)
    for pm in iter_perfect_matchings(h):
        yield matching_to_spread(pm, h, n)
