"""Linear algebra over GF(2) on int bitsets.

A vector of F_2^m is a Python int in ``[0, 2**m)``. Coordinate 1 is the most
significant bit, so ``0b1010`` in dimension 4 is the string ``"1010"`` read
left to right. Matrices are tuples of row vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DependentBasis, DimensionMismatch, SingularMatrix


def coord_bit(i: int, m: int) -> int:
    """Mask of coordinate ``i`` (1-based) in dimension ``m``."""
    return 1 << (m - i)


def bitstr(v: int, m: int) -> str:
    return format(v, f"0{m}b") if m else ""


def parse_bits(s: str) -> tuple[int, int]:
    """Parse a bit string into ``(value, dimension)``."""
    s = s.strip()
    if any(c not in "01" for c in s):
        raise ValueError(f"not a bit string: {s!r}")
    return (int(s, 2) if s else 0), len(s)


def parity(v: int) -> int:
    return v.bit_count() & 1


def inner_product(x: int, y: int, m: int | None = None) -> int:
    """<x, y> = x_1 y_1 + ... + x_m y_m over GF(2)."""
    if m is not None and (x >> m or y >> m):
        raise DimensionMismatch(f"vector does not fit in dimension {m}")
    return parity(x & y)


def rref(vectors: Iterable[int]) -> list[int]:
    """Reduced row echelon basis of the span, sorted by pivot (leading bit first).

    Dependent inputs are dropped silently; compare lengths to detect them.
    """
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            if v & (1 << (b.bit_length() - 1)):
                v ^= b
        if not v:
            continue
        top = 1 << (v.bit_length() - 1)
        basis = [b ^ v if b & top else b for b in basis]
        basis.append(v)
    basis.sort(reverse=True)
    return basis


def rank(vectors: Iterable[int]) -> int:
    return len(rref(vectors))


def reduce(v: int, basis: Sequence[int]) -> int:
    """Clear the pivot coordinates of ``v`` using an RREF ``basis``."""
    for b in basis:
        if v & (1 << (b.bit_length() - 1)):
            v ^= b
    return v


def span(basis: Sequence[int], offset: int = 0) -> list[int]:
    pts = [offset]
    for b in basis:
        pts += [p ^ b for p in pts]
    return pts


@dataclass(frozen=True)
class AffineSubspace:
    """Coset ``offset + span(basis)`` in canonical form.

    ``basis`` is in RREF sorted by pivot and ``offset`` is zero on every
    pivot coordinate, so equal cosets compare equal.
    """

    m: int
    basis: tuple[int, ...]
    offset: int

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self.m - b.bit_length() + 1 for b in self.basis)

    @property
    def is_linear(self) -> bool:
        return self.offset == 0

    def members(self) -> list[int]:
        return sorted(span(self.basis, self.offset))

    def mask(self) -> int:
        """Bitset over F_2^m with bit ``x`` set for every member ``x``."""
        out = 0
        for p in span(self.basis, self.offset):
            out |= 1 << p
        return out

    def __contains__(self, x: int) -> bool:
        return reduce(x ^ self.offset, self.basis) == 0

    def __len__(self) -> int:
        return 1 << self.k

    def sort_key(self) -> tuple:
        return (self.pivots, self.basis, self.offset)

    def __lt__(self, other: "AffineSubspace") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        vecs = ",".join(bitstr(b, self.m) for b in self.basis)
        return f"{bitstr(self.offset, self.m)};{vecs}"

    @classmethod
    def parse(cls, text: str) -> "AffineSubspace":
        """Inverse of ``str``: ``"offset;b1,b2,..."``."""
        off_s, _, basis_s = text.partition(";")
        offset, m = parse_bits(off_s)
        basis = []
        for part in filter(None, (p.strip() for p in basis_s.split(","))):
            v, mv = parse_bits(part)
            if mv != m:
                raise DimensionMismatch(f"basis vector {part!r} not of length {m}")
            basis.append(v)
        return canonicalize(basis, offset, m)


def canonicalize(basis: Iterable[int], offset: int = 0, m: int | None = None) -> AffineSubspace:
    """Canonical form of ``offset + span(basis)``; the basis must be independent."""
    basis = list(basis)
    if m is None:
        m = max([offset.bit_length(), *(b.bit_length() for b in basis)])
    if offset >> m or any(b >> m for b in basis):
        raise DimensionMismatch(f"vector does not fit in dimension {m}")
    red = rref(basis)
    if len(red) != len(basis):
        raise DependentBasis(f"{len(basis)} vectors span only dimension {len(red)}")
    return AffineSubspace(m, tuple(red), reduce(offset, red))


def subspace_from_points(points: Iterable[int], m: int) -> AffineSubspace | None:
    """The affine subspace whose member set is exactly ``points``, else None."""
    pts = set(points)
    if not pts:
        raise ValueError("empty point set")
    if len(pts) & (len(pts) - 1):
        return None
    p0 = min(pts)
    basis = rref(p ^ p0 for p in pts)
    if (1 << len(basis)) != len(pts):
        return None
    sub = AffineSubspace(m, tuple(basis), reduce(p0, basis))
    if set(span(sub.basis, sub.offset)) != pts:
        return None
    return sub


def gaussian_binomial(m: int, k: int) -> int:
    """Number of k-dimensional linear subspaces of F_2^m."""
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got m={m}, k={k}")
    num = den = 1
    for i in range(k):
        num *= (1 << (m - i)) - 1
        den *= (1 << (k - i)) - 1
    return num // den


def _rref_bases(m: int, k: int) -> Iterator[tuple[int, ...]]:
    for pivots in itertools.combinations(range(1, m + 1), k):
        pivset = set(pivots)
        choices = []
        for p in pivots:
            free = [c for c in range(p + 1, m + 1) if c not in pivset]
            lead = coord_bit(p, m)
            opts = []
            for bits in itertools.product((0, 1), repeat=len(free)):
                v = lead
                for c, b in zip(free, bits):
                    if b:
                        v |= coord_bit(c, m)
                opts.append(v)
            choices.append(sorted(opts))
        yield from itertools.product(*choices)


def enumerate_subspaces(m: int, k: int, affine: bool = False) -> Iterator[AffineSubspace]:
    """Every k-dimensional linear (or affine) subspace of F_2^m, once each.

    Order is lexicographic on (pivot set, basis vectors, offset).
    """
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got m={m}, k={k}")
    for basis in _rref_bases(m, k):
        if not affine:
            yield AffineSubspace(m, basis, 0)
            continue
        pivmask = 0
        for b in basis:
            pivmask |= 1 << (b.bit_length() - 1)
        for off in range(1 << m):
            if not off & pivmask:
                yield AffineSubspace(m, basis, off)


# -- matrices ---------------------------------------------------------------

def identity(n: int) -> tuple[int, ...]:
    return tuple(coord_bit(i, n) for i in range(1, n + 1))


def mat_vec(rows: Sequence[int], x: int) -> int:
    """``L x`` with ``rows`` the rows of L; result has ``len(rows)`` coordinates."""
    n = len(rows)
    out = 0
    for i, r in enumerate(rows):
        if parity(r & x):
            out |= 1 << (n - 1 - i)
    return out


def transpose(rows: Sequence[int], ncols: int | None = None) -> tuple[int, ...]:
    nrows = len(rows)
    if ncols is None:
        ncols = nrows
    out = []
    for j in range(ncols):
        col_bit = 1 << (ncols - 1 - j)
        v = 0
        for i, r in enumerate(rows):
            if r & col_bit:
                v |= 1 << (nrows - 1 - i)
        out.append(v)
    return tuple(out)


def mat_mul(a: Sequence[int], b: Sequence[int], ncols_b: int | None = None) -> tuple[int, ...]:
    """Product ``A B``; rows of A index the rows of B by coordinate."""
    if ncols_b is None:
        ncols_b = len(b)
    k = len(b)
    out = []
    for r in a:
        v = 0
        for j in range(k):
            if r & (1 << (k - 1 - j)):
                v ^= b[j]
        out.append(v)
    return tuple(out)


def invert(rows: Sequence[int]) -> tuple[int, ...]:
    """Inverse of a square matrix by Gauss-Jordan elimination."""
    n = len(rows)
    if any(r >> n for r in rows):
        raise DimensionMismatch("matrix is not square")
    # augmented row = (row << n) | identity row
    aug = [(r << n) | coord_bit(i + 1, n) for i, r in enumerate(rows)]
    for col in range(n):
        bit = 1 << (2 * n - 1 - col)
        piv = next((i for i in range(col, n) if aug[i] & bit), None)
        if piv is None:
            raise SingularMatrix("matrix is singular over GF(2)")
        aug[col], aug[piv] = aug[piv], aug[col]
        for i in range(n):
            if i != col and aug[i] & bit:
                aug[i] ^= aug[col]
    low = (1 << n) - 1
    return tuple(r & low for r in aug)


def is_invertible(rows: Sequence[int]) -> bool:
    return rank(rows) == len(rows)


def complete_basis(basis: Sequence[int], m: int) -> tuple[int, ...]:
    """Extend an independent set to a basis of F_2^m with unit vectors, in coordinate order."""
    red = rref(basis)
    if len(red) != len(basis):
        raise DependentBasis("cannot complete a dependent set")
    out = list(basis)
    for i in range(1, m + 1):
        e = coord_bit(i, m)
        if reduce(e, red):
            out.append(e)
            red = rref([*red, e])
    return tuple(out)
