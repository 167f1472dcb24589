"""Truth tables, Walsh spectra, ANF and affine changes of variables.

Index convention: entry ``i`` of a table holds f(x) where x_1 is the most
significant bit of ``i``. So the string ``"u1u2u3u4"`` is read directly as a
binary index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .errors import DimensionMismatch, SingularMatrix, SizeLimit

MAX_VARS = 28

BENT = "bent"
PLATEAUED = "plateaued"
OTHER = "other"


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_VARS:
        raise SizeLimit(f"number of variables must be in [0, {MAX_VARS}], got {n}")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class BooleanFunction:
    """A Boolean function on ``n`` variables given by its truth table."""

    __slots__ = ("n", "table")

    def __init__(self, n: int, table):
        _check_n(n)
        t = np.array(table, dtype=np.uint8).reshape(-1)
        if t.size != 1 << n:
            raise DimensionMismatch(f"table has {t.size} entries, expected {1 << n}")
        if t.size and t.max() > 1:
            raise ValueError("table entries must be 0 or 1")
        self.n = n
        self.table = _frozen(t)

    @classmethod
    def constant(cls, n: int, c: int = 0) -> "BooleanFunction":
        _check_n(n)
        return cls(n, np.full(1 << n, c & 1, dtype=np.uint8))

    @classmethod
    def variable(cls, n: int, i: int) -> "BooleanFunction":
        """The coordinate function x_i (1-based)."""
        idx = np.arange(1 << n)
        return cls(n, (idx >> (n - i)) & 1)

    @classmethod
    def from_bits(cls, bits: str) -> "BooleanFunction":
        bits = bits.strip()
        n = len(bits).bit_length() - 1
        if 1 << n != len(bits) or any(c not in "01" for c in bits):
            raise ValueError(f"not a truth table bit string: {bits!r}")
        return cls(n, [int(c) for c in bits])

    @classmethod
    def from_hex(cls, text: str, n: int) -> "BooleanFunction":
        """Parse a nibble-packed table; a short table is left-aligned in the last nibble."""
        _check_n(n)
        text = text.strip().lower().removeprefix("0x")
        size = 1 << n
        if len(text) != (size + 3) // 4:
            raise ValueError(f"expected {(size + 3) // 4} hex digits for n={n}, got {len(text)}")
        bits = "".join(format(int(c, 16), "04b") for c in text)
        if "1" in bits[size:]:
            raise ValueError("padding bits must be zero")
        return cls(n, [int(c) for c in bits[:size]])

    @classmethod
    def from_callable(cls, n: int, func) -> "BooleanFunction":
        """Tabulate ``func(x)`` over integer indices x."""
        return cls(n, [func(x) & 1 for x in range(1 << n)])

    def to_bits(self) -> str:
        return "".join("1" if b else "0" for b in self.table)

    def to_hex(self) -> str:
        bits = self.to_bits()
        bits += "0" * (-len(bits) % 4)
        return "".join(format(int(bits[i:i + 4], 2), "x") for i in range(0, len(bits), 4))

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __xor__(self, other: "BooleanFunction") -> "BooleanFunction":
        if other.n != self.n:
            raise DimensionMismatch("functions on different numbers of variables")
        return BooleanFunction(self.n, self.table ^ other.table)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.n, self.table.tobytes()))

    def __repr__(self) -> str:
        body = self.to_bits() if self.n <= 6 else self.to_hex()
        return f"BooleanFunction(n={self.n}, {body})"


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n: int
    coeffs: np.ndarray

    def __getitem__(self, u: int) -> int:
        return int(self.coeffs[u])

    def support(self) -> tuple[int, ...]:
        return tuple(int(u) for u in np.flatnonzero(self.coeffs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.coeffs, other.coeffs)


@dataclass(frozen=True)
class Classification:
    kind: str
    amplitude: int | None
    support: tuple[int, ...]

    @property
    def is_bent(self) -> bool:
        return self.kind == BENT

    @property
    def is_plateaued(self) -> bool:
        """True for bent functions too, which are plateaued with full support."""
        return self.kind in (BENT, PLATEAUED)


@dataclass(frozen=True)
class AnfPolynomial:
    """Monomials as frozensets of 1-based variable indices; the empty set is 1."""

    n: int
    monomials: frozenset

    def __post_init__(self):
        mons = frozenset(frozenset(m) for m in self.monomials)
        for mon in mons:
            if any(not 1 <= i <= self.n for i in mon):
                raise DimensionMismatch(f"monomial {sorted(mon)} uses a variable outside 1..{self.n}")
        object.__setattr__(self, "monomials", mons)

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.monomials), default=0)

    def sorted_monomials(self) -> list[tuple[int, ...]]:
        return sorted((tuple(sorted(m)) for m in self.monomials), key=lambda t: (len(t), t))

    def format(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i}" for i in range(1, self.n + 1)]
        terms = ["*".join(names[i - 1] for i in mon) or "1" for mon in self.sorted_monomials()]
        return " + ".join(terms) if terms else "0"

    def __str__(self) -> str:
        return self.format()


# -- transforms -------------------------------------------------------------

def butterfly(a: np.ndarray) -> np.ndarray:
    """In-place unnormalised Hadamard butterfly along the last axis."""
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, size // (2 * h), 2, h)
        lo = v[..., 0, :]
        hi = v[..., 1, :]
        tmp = lo.copy()
        lo += hi
        np.subtract(tmp, hi, out=hi)
        h *= 2
    return a


def xor_butterfly(a: np.ndarray) -> np.ndarray:
    """In-place binary Moebius transform along the last axis (its own inverse)."""
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, size // (2 * h), 2, h)
        v[..., 1, :] ^= v[..., 0, :]
        h *= 2
    return a


def signs(table: np.ndarray) -> np.ndarray:
    """(-1)^f as int32."""
    return 1 - 2 * table.astype(np.int32)


def walsh_transform(f: BooleanFunction) -> WalshSpectrum:
    """W_f(u) = sum_x (-1)^(<u,x> + f(x)) for every u, in O(n 2^n)."""
    return WalshSpectrum(f.n, _frozen(butterfly(signs(f.table))))


def walsh_batch(tables: np.ndarray) -> np.ndarray:
    """Walsh spectra of the rows of a 2-D 0/1 array."""
    return butterfly(signs(np.asarray(tables)))


def inverse_walsh(spectrum: WalshSpectrum) -> BooleanFunction:
    """Recover f from its spectrum; raises if the input is not a spectrum."""
    acc = butterfly(spectrum.coeffs.astype(np.int64))
    size = 1 << spectrum.n
    if np.any(acc % size) or np.any(np.abs(acc) != size):
        raise ValueError("not the Walsh spectrum of a Boolean function")
    return BooleanFunction(spectrum.n, (acc < 0).astype(np.uint8))


def weight(f: BooleanFunction) -> int:
    return int(np.count_nonzero(f.table))


def classify(f: BooleanFunction) -> Classification:
    w = walsh_transform(f).coeffs
    support = tuple(int(u) for u in np.flatnonzero(w))
    mags = np.unique(np.abs(w[list(support)]))
    if mags.size != 1 or int(mags[0]) & (int(mags[0]) - 1):
        return Classification(OTHER, None, support)
    amp = int(mags[0])
    if f.n % 2 == 0 and len(support) == 1 << f.n and amp == 1 << (f.n // 2):
        return Classification(BENT, amp, support)
    return Classification(PLATEAUED, amp, support)


def is_bent(f: BooleanFunction) -> bool:
    if f.n % 2:
        return False
    return bool(np.all(np.abs(walsh_transform(f).coeffs) == 1 << (f.n // 2)))


# -- algebraic normal form --------------------------------------------------

def _monomial_index(mon: Iterable[int], n: int) -> int:
    return sum(1 << (n - i) for i in mon)


def anf_from_table(f: BooleanFunction) -> AnfPolynomial:
    coeffs = xor_butterfly(f.table.copy())
    mons = []
    for u in np.flatnonzero(coeffs):
        u = int(u)
        mons.append(frozenset(i for i in range(1, f.n + 1) if u >> (f.n - i) & 1))
    return AnfPolynomial(f.n, frozenset(mons))


def table_from_anf(p: AnfPolynomial) -> BooleanFunction:
    coeffs = np.zeros(1 << p.n, dtype=np.uint8)
    for mon in p.monomials:
        coeffs[_monomial_index(mon, p.n)] = 1
    return BooleanFunction(p.n, xor_butterfly(coeffs))


def degree(f: BooleanFunction) -> int:
    coeffs = xor_butterfly(f.table.copy())
    nz = np.flatnonzero(coeffs)
    return int(np.bitwise_count(nz).max()) if nz.size else 0


# -- affine changes of variables --------------------------------------------

def _parity_array(a: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(a) & 1).astype(np.uint8)


def substitute(f: BooleanFunction, matrix: Sequence[int], shift: int = 0) -> BooleanFunction:
    """x -> f(L x + shift) for a nondegenerate L given by its rows."""
    n = f.n
    if len(matrix) != n or any(r >> n for r in matrix):
        raise DimensionMismatch(f"expected an {n}x{n} matrix")
    if not gf2.is_invertible(matrix):
        raise SingularMatrix("substitution matrix is singular over GF(2)")
    cols = gf2.transpose(matrix, n)
    idx = np.arange(1 << n, dtype=np.int64)
    image = np.full(1 << n, shift, dtype=np.int64)
    for j, col in enumerate(cols):
        image ^= np.where((idx >> (n - 1 - j)) & 1, col, 0)
    return BooleanFunction(n, f.table[image])


def add_linear(f: BooleanFunction, a: int, c: int = 0) -> BooleanFunction:
    """x -> f(x) + <a, x> + c."""
    if a >> f.n:
        raise DimensionMismatch(f"linear form does not fit in {f.n} variables")
    idx = np.arange(1 << f.n, dtype=np.int64)
    return BooleanFunction(f.n, f.table ^ _parity_array(idx & a) ^ (c & 1))


def apply_linear_change(
    f: BooleanFunction,
    matrix: Sequence[int] | None = None,
    shift: int = 0,
    linear: int = 0,
    constant: int = 0,
) -> BooleanFunction:
    """g(x) = f(L x + shift) + <linear, x> + constant.

    With ``matrix=None`` the substitution is the identity.
    """
    g = f
    if matrix is not None or shift:
        g = substitute(g, matrix if matrix is not None else gf2.identity(f.n), shift)
    if linear or constant:
        g = add_linear(g, linear, constant)
    return g
