"""Bent functions from plateaued blocks on an ordered affine partition.

For an ordered partition {C_a} of F_2^n2 into (n2 - n1)-flats and plateaued
f_a with Walsh support exactly C_a,

    f(x, y) = f_x(y),   x in F_2^n1, y in F_2^n2,

is bent on n1 + n2 variables. The truth table of f is the concatenation of
the tables of f_0, f_1, ... in label order.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence

import numpy as np

from . import gf2
from .boolfun import BooleanFunction, apply_linear_change, classify, is_bent, walsh_batch
from .errors import (
    DimensionMismatch,
    NotAPermutation,
    NotBent,
    NotBentInternal,
    OddDimension,
    SizeLimit,
    SupportMismatch,
)
from .hypermatch import SubspacePartition, partitions
from .transversals import cube, lift_transversal, random_transversal

ENUMERATION_LIMIT = 10**6


@dataclass(frozen=True)
class KInstance:
    """Parameters of one function of the construction.

    ``parts[a]`` is C_a and ``generators[a]`` the bent function on
    n2 - n1 variables that is placed onto it.
    """

    n1: int
    n2: int
    parts: tuple[gf2.AffineSubspace, ...]
    generators: tuple[BooleanFunction, ...]

    def __post_init__(self):
        n1, n2 = self.n1, self.n2
        if n2 < n1 or (n1 + n2) % 2:
            raise OddDimension(f"need n2 >= n1 and n1 + n2 even, got n1={n1}, n2={n2}")
        k = n2 - n1
        if len(self.parts) != 1 << n1 or len(self.generators) != 1 << n1:
            raise DimensionMismatch(f"need {1 << n1} parts and generators")
        SubspacePartition(n2, k, self.parts)
        for g in self.generators:
            if g.n != k:
                raise DimensionMismatch(f"generator on {g.n} variables, expected {k}")

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    def to_json(self) -> str:
        return json.dumps({
            "n1": self.n1,
            "n2": self.n2,
            "partition": [str(p) for p in self.parts],
            "generators": [g.to_hex() for g in self.generators],
        })

    @classmethod
    def from_json(cls, text: str) -> "KInstance":
        obj = json.loads(text)
        k = obj["n2"] - obj["n1"]
        return cls(
            obj["n1"],
            obj["n2"],
            tuple(gf2.AffineSubspace.parse(s) for s in obj["partition"]),
            tuple(BooleanFunction.from_hex(h, k) for h in obj["generators"]),
        )


def placement_matrix(c: gf2.AffineSubspace) -> tuple[int, ...]:
    """Rows: the basis of C followed by unit vectors completing it to full rank."""
    return gf2.complete_basis(c.basis, c.m)


def build_plateaued(g: BooleanFunction, c: gf2.AffineSubspace, check: bool = True) -> BooleanFunction:
    """Plateaued function on c.m variables with Walsh support exactly ``c``.

    g(x) is first read as a function of the leading k coordinates, whose
    spectrum sits on the coordinate k-subcube; the substitution x -> Mx with
    M^T sending that subcube onto the direction of ``c`` and the linear form
    <offset, x> then move the support onto ``c``. Nonzero coefficients have
    magnitude 2^(n - k/2).
    """
    k, n = c.k, c.m
    if k % 2:
        raise OddDimension(f"support dimension {k} is odd")
    if g.n != k:
        raise DimensionMismatch(f"generator has {g.n} variables, support dimension is {k}")
    if check and not is_bent(g):
        raise NotBent("generator is not bent")
    h = np.repeat(g.table, 1 << (n - k))
    f = BooleanFunction(n, h)
    return apply_linear_change(f, placement_matrix(c), linear=c.offset)


def assemble(n1: int, blocks: Sequence[BooleanFunction]) -> BooleanFunction:
    """f(x, y) = sum_a f_a(y) x^a, with x on the leading n1 coordinates."""
    if len(blocks) != 1 << n1:
        raise DimensionMismatch(f"need {1 << n1} blocks")
    n2 = blocks[0].n
    return BooleanFunction(n1 + n2, np.concatenate([b.table for b in blocks]))


def construct_from_blocks(
    n1: int, parts: Sequence[gf2.AffineSubspace], blocks: Sequence[BooleanFunction]
) -> BooleanFunction:
    """Assemble caller-supplied plateaued blocks, checking supports and the result."""
    for a, (c, b) in enumerate(zip(parts, blocks)):
        if b.n != c.m:
            raise DimensionMismatch(f"block {a} has {b.n} variables, part lives in F_2^{c.m}")
        cls = classify(b)
        if not cls.is_plateaued or set(cls.support) != set(c.members()):
            raise SupportMismatch(f"block {a} does not have Walsh support {c}")
    f = assemble(n1, blocks)
    if not is_bent(f):
        raise NotBentInternal("assembled function is not bent")
    return f


def construct_k(inst: KInstance) -> BooleanFunction:
    blocks = [build_plateaued(g, c) for g, c in zip(inst.generators, inst.parts)]
    return construct_from_blocks(inst.n1, inst.parts, blocks)


# -- counting and enumeration -----------------------------------------------

def count_k_formula(n1: int, n2: int, b_small: int, n_unordered: int) -> int:
    """b^(2^n1) * (2^n1)! * N: size of the family for given n1, n2."""
    if min(n1, n2, b_small, n_unordered) < 0:
        raise ValueError("inputs must be nonnegative")
    labels = 1 << n1
    return b_small**labels * math.factorial(labels) * n_unordered


def mm_count(m: int) -> int:
    """Maiorana-McFarland functions on 2m variables: 2^(2^m) * (2^m)!."""
    return 2 ** (1 << m) * math.factorial(1 << m)


@lru_cache(maxsize=None)
def _census(k: int) -> tuple[bytes, ...]:
    if k % 2:
        return ()
    if k > 4:
        raise SizeLimit(f"bent census on {k} variables is out of reach")
    size = 1 << k
    idx = np.arange(1 << size, dtype=np.int64)
    tables = ((idx[:, None] >> np.arange(size - 1, -1, -1)) & 1).astype(np.uint8)
    w = walsh_batch(tables)
    keep = np.all(np.abs(w) == 1 << (k // 2), axis=1)
    return tuple(t.tobytes() for t in tables[keep])


def bent_functions(k: int) -> list[BooleanFunction]:
    """All bent functions on k <= 4 variables, ordered by truth table."""
    return [BooleanFunction(k, np.frombuffer(t, dtype=np.uint8)) for t in _census(k)]


def ordered_partitions(m: int, k: int) -> Iterator[tuple[gf2.AffineSubspace, ...]]:
    for p in partitions(m, k):
        yield from itertools.permutations(p.parts)


def iter_k(n1: int, n2: int, limit: int = ENUMERATION_LIMIT) -> Iterator[tuple[KInstance, BooleanFunction]]:
    """Every function of the construction for (n1, n2), with its instance."""
    if n2 < n1 or (n1 + n2) % 2:
        raise OddDimension(f"need n2 >= n1 and n1 + n2 even, got n1={n1}, n2={n2}")
    if n1 + n2 > 6:
        raise SizeLimit("enumeration is limited to n1 + n2 <= 6")
    k = n2 - n1
    gens = bent_functions(k)
    unordered = sum(1 for _ in partitions(n2, k))
    total = count_k_formula(n1, n2, len(gens), unordered)
    if total > limit:
        raise SizeLimit(f"({n1},{n2}) has {total} functions, above the limit {limit}")
    labels = 1 << n1
    for parts in ordered_partitions(n2, k):
        blocks = [[build_plateaued(g, c, check=False) for g in gens] for c in parts]
        for choice in itertools.product(range(len(gens)), repeat=labels):
            f = assemble(n1, [blocks[a][i] for a, i in enumerate(choice)])
            if not is_bent(f):
                raise NotBentInternal(f"construction produced a non-bent function for {parts}")
            inst = KInstance(n1, n2, parts, tuple(gens[i] for i in choice))
            yield inst, f


def enumerate_k(n1: int, n2: int, visitor: Callable[[BooleanFunction], object], limit: int = ENUMERATION_LIMIT) -> int:
    """Visit every function of the construction; ``False`` from the visitor stops."""
    calls = 0
    for _, f in iter_k(n1, n2, limit):
        calls += 1
        if visitor(f) is False:
            break
    return calls


# -- sampling ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _partition_list(m: int, k: int) -> tuple[SubspacePartition, ...]:
    return tuple(partitions(m, k))


def _random_split(flat: gf2.AffineSubspace, k: int, rng: np.random.Generator) -> list[gf2.AffineSubspace]:
    """Cut ``flat`` along a random hyperplane of it, recursing down to dimension k."""
    if flat.k == k:
        return [flat]
    d = flat.k
    while True:
        rows = [int(rng.integers(0, 1 << d)) for _ in range(d)]
        if gf2.is_invertible(rows):
            break
    vecs = []
    for r in rows:
        v = 0
        for i, b in enumerate(flat.basis):
            if r >> (d - 1 - i) & 1:
                v ^= b
        vecs.append(v)
    half = vecs[:-1]
    out = []
    for off in (flat.offset, flat.offset ^ vecs[-1]):
        out += _random_split(gf2.canonicalize(half, off, flat.m), k, rng)
    return out


def random_partition(m: int, k: int, rng: np.random.Generator) -> SubspacePartition:
    """Random partition of F_2^m into k-flats.

    Uniform for m <= 4. Beyond that: lifted random transversals for k = 2,
    recursive random hyperplane splitting otherwise; neither is uniform.
    """
    if k == 0:
        return SubspacePartition(m, 0, tuple(gf2.AffineSubspace(m, (), x) for x in range(1 << m)))
    if k == m:
        return SubspacePartition(m, m, (gf2.canonicalize(gf2.identity(m), 0, m),))
    if m <= 4:
        parts = _partition_list(m, k)
        return parts[rng.integers(len(parts))]
    if k == 2:
        return lift_transversal(random_transversal(cube(m - 2), rng))
    whole = gf2.canonicalize(gf2.identity(m), 0, m)
    return SubspacePartition(m, k, tuple(_random_split(whole, k, rng)))


def random_bent(k: int, rng: np.random.Generator) -> BooleanFunction:
    """Uniform over all bent functions for k <= 4, Maiorana-McFarland beyond."""
    if k <= 4:
        gens = bent_functions(k)
        return gens[rng.integers(len(gens))]
    m = k // 2
    perm = rng.permutation(1 << m)
    psi = BooleanFunction(m, rng.integers(0, 2, 1 << m))
    return construct_mm(perm, psi)


def random_instance(n1: int, n2: int, rng: np.random.Generator) -> KInstance:
    k = n2 - n1
    if n2 < n1 or k % 2:
        raise OddDimension(f"need n2 >= n1 and n2 - n1 even, got n1={n1}, n2={n2}")
    part = random_partition(n2, k, rng)
    order = rng.permutation(len(part.parts))
    parts = tuple(part.parts[i] for i in order)
    gens = tuple(random_bent(k, rng) for _ in parts)
    return KInstance(n1, n2, parts, gens)


# -- Maiorana-McFarland -------------------------------------------------------

def construct_mm(perm: Sequence[int], psi: BooleanFunction) -> BooleanFunction:
    """f(x, y) = psi(y) + <x, perm(y)> on 2m variables, x leading."""
    m = psi.n
    size = 1 << m
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (size,) or sorted(perm.tolist()) != list(range(size)):
        raise NotAPermutation(f"not a permutation of F_2^{m}")
    idx = np.arange(size * size, dtype=np.int64)
    x, y = idx >> m, idx & (size - 1)
    table = (np.bitwise_count(x & perm[y]) & 1).astype(np.uint8) ^ psi.table[y]
    f = BooleanFunction(2 * m, table)
    if not is_bent(f):
        raise NotBentInternal("Maiorana-McFarland output is not bent")
    return f


def support_census(c: gf2.AffineSubspace) -> int:
    """Number of plateaued functions on c.m <= 4 variables with Walsh support exactly ``c``."""
    n = c.m
    if n > 4:
        raise SizeLimit("census needs n <= 4")
    size = 1 << n
    idx = np.arange(1 << size, dtype=np.int64)
    tables = ((idx[:, None] >> np.arange(size - 1, -1, -1)) & 1).astype(np.uint8)
    w = np.abs(walsh_batch(tables))
    target = np.zeros(size, dtype=bool)
    target[c.members()] = True
    on_support = np.all((w != 0) == target, axis=1)
    level = w.max(axis=1, keepdims=True)
    flat = np.all((w == 0) | (w == level), axis=1)
    return int(np.count_nonzero(on_support & flat))
