"""Closed-form counts and asymptotic bounds, evaluated in the log2 domain.

Asymptotic formulas are evaluated with their o(.) terms dropped; their
reports carry ``informational=True`` and are never meaningful as
inequalities at small sizes.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from .errors import BadUniformity, OddN

LOG2E = math.log2(math.e)
LOG2_3 = math.log2(3)

# partition-count window constants
C1 = -1 - 0.75 * LOG2E
C2 = 7 / 16 - 11 / 16 * LOG2_3
C2_ALT = -(1 + LOG2_3 + 3 * LOG2E) / 4

EXACT_SUM_LIMIT = 1 << 20


@dataclass(frozen=True)
class BoundReport:
    name: str
    argument: int
    value_log2: float
    exact: int | None = None
    informational: bool = False

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        if self.exact is not None:
            d["exact"] = str(self.exact)
        return d


def stirling_log2_factorial(n: int) -> float:
    """N log2 N - N log2 e."""
    if n < 1:
        raise ValueError("N must be >= 1")
    return n * math.log2(n) - n * LOG2E


def log2_factorial(n: int) -> float:
    """log2(N!) by direct summation for N <= 2^20, lgamma beyond."""
    if n < 0:
        raise ValueError("N must be >= 0")
    if n <= EXACT_SUM_LIMIT:
        return float(np.log2(np.arange(1, n + 1, dtype=np.float64)).sum()) if n > 1 else 0.0
    return math.lgamma(n + 1) / math.log(2)


def mu(d: int) -> float:
    """Constant of the perfect-matching bound for d-uniform hypergraphs."""
    if d < 3:
        raise BadUniformity(f"bound needs d >= 3, got {d}")
    if d == 3:
        return 3 / 2 ** (2 / 3)
    fact = math.factorial(d)
    return d**d * fact ** (1 / d) / fact**2


def matching_upper_bound(n_vertices: int, d: int, k: int) -> float:
    """log2 of (mu(d) k)^(n/d) for a d-uniform k-regular hypergraph."""
    if d < 3:
        raise BadUniformity(f"bound needs d >= 3, got {d}")
    if n_vertices % d:
        raise BadUniformity(f"{d} does not divide {n_vertices}")
    if k < 1:
        raise ValueError("k must be >= 1")
    return n_vertices / d * math.log2(mu(d) * k)


def partition_window(m: int) -> tuple[float, float, float]:
    """(lower, upper, alternative upper) for log2 N_m, o(2^m) dropped."""
    if m < 2:
        raise ValueError("m must be >= 2")
    base = m / 2
    scale = 2.0**m
    return (base + C1) * scale, (base + C2) * scale, (base + C2_ALT) * scale


def _check_even(n: int) -> None:
    if n < 2 or n % 2:
        raise OddN(f"n must be even and >= 2, got {n}")


def bent_bounds(n: int) -> tuple[float, float, float, float]:
    """(upper, main lower, Maiorana-McFarland lower, Tokareva) in log2, o(.) dropped."""
    _check_even(n)
    half = 2.0 ** (n // 2)
    upper = 3 * 2.0 ** (n - 3)
    lower_main = (3 * n / 4 - 2 * LOG2E) * half
    mm_lower = (n / 2 + 1 - LOG2E) * half
    tokareva = 2.0 ** (n - 2) + math.comb(n, n // 2) / 2
    return upper, lower_main, mm_lower, tokareva


def mm_crossover() -> int:
    """Smallest even n where the main lower bound exceeds the MM one.

    Their difference is (n/4 - 1 - log2 e) 2^(n/2).
    """
    n = 2
    while n / 4 - 1 - LOG2E <= 0:
        n += 2
    return n


def transversal_asymptote(kind: str, m: int) -> float:
    """log2 of the leading term of the transversal count of L_m or Q_m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    lf = log2_factorial(1 << m)
    tail = m * ((1 << m) - 1)
    if kind == "cube":
        return 3 * lf - tail
    if kind == "square":
        return 2 * lf - tail - 0.5 * LOG2E
    raise ValueError(f"kind must be 'square' or 'cube', got {kind!r}")


def k_class_rate(n: int, k: int) -> float:
    """Leading log2 size of the construction with n1 = n/2 - k: (2k+1)/2^(k+1) n 2^(n/2)."""
    if not 1 <= k <= n // 2:
        raise ValueError(f"need 1 <= k <= n/2, got k={k}, n={n}")
    return (2 * k + 1) / 2 ** (k + 1) * n * 2.0 ** (n / 2)


def best_k(n: int) -> int:
    rates = [k_class_rate(n, k) for k in range(1, n // 2 + 1)]
    return 1 + int(np.argmax(rates))


def spread_asymptote(n: int) -> float:
    """(n/3) 2^n, the leading term of log2 W_n."""
    return n / 3 * 2.0**n


def spread_upper_bound(n: int) -> float:
    """log2 of (mu(3)(2^(n-1) - 1))^((2^n - 1)/3), the bound via G_n."""
    _check_even(n)
    return matching_upper_bound((1 << n) - 1, 3, (1 << (n - 1)) - 1)


def partition_upper_bound(m: int) -> float:
    """log2 of the matching bound for H_m (non-asymptotic)."""
    size = 1 << m
    return matching_upper_bound(size, 4, (size - 1) * (size - 2) // 6)


def k_family_exact(n: int) -> int | None:
    """Exact size of the construction with n1 = n/2 - 1 when N_(n/2+1) is countable."""
    from .hypermatch import build_partition_hypergraph, count_perfect_matchings

    if n < 4 or n > 6:
        return None
    labels = 1 << (n // 2 - 1)
    parts = int(count_perfect_matchings(build_partition_hypergraph(n // 2 + 1)))
    return 8**labels * math.factorial(labels) * parts


def report(n: int | None = None, m: int | None = None) -> list[BoundReport]:
    out: list[BoundReport] = []
    if n is not None:
        upper, main, mm, tok = bent_bounds(n)
        half = 1 << (n // 2)
        mm_exact = 2**half * math.factorial(half)
        out += [
            BoundReport("bent_upper", n, upper, informational=True),
            BoundReport("bent_lower_main", n, main, informational=True),
            BoundReport("bent_lower_mm", n, mm, informational=True),
            BoundReport("tokareva_conjecture", n, tok, informational=True),
            BoundReport("mm_family_exact", n, math.log2(mm_exact), exact=mm_exact),
            BoundReport("mm_crossover", n, float(mm_crossover())),
            BoundReport("spread_asymptote", n, spread_asymptote(n), informational=True),
            BoundReport("spread_upper", n, spread_upper_bound(n)),
        ]
        if n >= 4:
            for k in range(1, n // 2 + 1):
                out.append(BoundReport(f"k_class_rate_k{k}", n, k_class_rate(n, k), informational=True))
            out.append(BoundReport("k_class_best", n, float(best_k(n))))
        exact = k_family_exact(n)
        if exact is not None:
            out.append(BoundReport("k_family_exact", n, math.log2(exact), exact=exact))
    if m is not None:
        lo, up, alt = partition_window(m)
        out += [
            BoundReport("partition_lower", m, lo, informational=True),
            BoundReport("partition_upper", m, up, informational=True),
            BoundReport("partition_upper_alt", m, alt, informational=True),
            BoundReport("partition_matching_bound", m, partition_upper_bound(m)),
        ]
        if m >= 3:
            out.append(
                BoundReport("cube_transversals", m - 2, transversal_asymptote("cube", m - 2), informational=True)
            )
    return out
