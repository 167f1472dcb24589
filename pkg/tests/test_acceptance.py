"""Acceptance criteria, one test each, at their stated tolerances and time limits.

Run alone with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

import math
import sys
import time

import numpy as np
import pytest

import oracles
from bentk import bounds, gf2
from bentk.anf import parse_anf
from bentk.boolfun import (
    BENT,
    BooleanFunction,
    anf_from_table,
    apply_linear_change,
    classify,
    degree,
    inverse_walsh,
    table_from_anf,
    walsh_transform,
)
from bentk.errors import SizeLimit
from bentk.hypermatch import (
    build_partition_hypergraph,
    build_spread_hypergraph,
    count_perfect_matchings,
    ordered_from_unordered,
)
from bentk.kconstruct import (
    KInstance,
    bent_functions,
    build_plateaued,
    construct_from_blocks,
    construct_k,
    construct_mm,
    count_k_formula,
    enumerate_k,
    random_bent,
    random_instance,
    support_census,
)
from bentk.transversals import (
    count_transversals,
    cube,
    iter_transversals,
    lift_transversal,
    recursive_spread,
    spread_from_transversal,
    square,
)

CASES = 10_000
MAX_N = 12
SEED = 20261015

YS = ["y1", "y2", "y3", "y4"]
XY = ["x1", "x2"] + YS
PARTS = ["0000 0100 1010 1110", "0010 0110 0011 0111", "1000 1100 1001 1101", "0001 0101 1011 1111"]
BLOCKS = ["y2(y1+y3)", "y2y4+y3", "y2y4+y1", "y2(y1+y3)+y4"]
RESULT = "(y1+y3+y4)(x1x2 + y2x1 + y2x2) + y3x2 + y1x1 + y2(y1+y3)"


class Timer:
    def __init__(self, limit: float):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f} s, limit {self.limit} s"


@pytest.mark.criterion(1, "worked 6-variable example reproduced, |W| = 8 everywhere")
def test_criterion_01_worked_example():
    with Timer(1.0):
        parts = [gf2.subspace_from_points([int(p, 2) for p in s.split()], 4) for s in PARTS]
        blocks = [table_from_anf(parse_anf(t, YS)) for t in BLOCKS]
        expected = table_from_anf(parse_anf(RESULT, XY))
        f = construct_from_blocks(2, parts, blocks)
        assert f == expected
        # the same function through KInstance with generator y1y2 on every part
        inst = KInstance(2, 4, tuple(parts), (table_from_anf(parse_anf("y1y2", YS[:2])),) * 4)
        assert construct_k(inst) == expected
        w = walsh_transform(f).coeffs
        assert w.size == 64 and np.all(np.abs(w) == 8)


@pytest.mark.criterion(2, "b_2 = 8 by exhaustive search")
def test_criterion_02_b2():
    with Timer(1.0):
        count = sum(classify(BooleanFunction(2, [(t >> (3 - i)) & 1 for i in range(4)])).kind == BENT
                    for t in range(16))
        assert count == 8
        assert len(bent_functions(2)) == 8


@pytest.mark.criterion(3, "enumerate_k(1,3) = 896 distinct bent = independent census")
def test_criterion_03_completeness_n4():
    with Timer(60.0):
        seen = []
        enumerate_k(1, 3, seen.append)
        tables = {tuple(int(b) for b in f.table) for f in seen}
        assert len(seen) == len(tables) == 896
        assert all(classify(f).kind == BENT for f in seen)
        census = oracles.bent_census(4)
        assert len(census) == 896
        assert tables == census
        assert count_k_formula(1, 3, 8, 7) == 8**2 * 2 * 7 == 896


@pytest.mark.criterion(4, "N_3 = 7, ordered count 14, lifts of Q_1 give 4 partitions")
def test_criterion_04_partitions_m3():
    with Timer(1.0):
        n3 = count_perfect_matchings(build_partition_hypergraph(3))
        assert n3 == 7
        assert ordered_from_unordered(n3, 2) == 14
        ts = list(iter_transversals(cube(1)))
        assert len(ts) == 4
        lifted = {lift_transversal(t).parts for t in ts}
        assert len(lifted) == 4 <= n3


@pytest.mark.criterion(5, "spreads: G_4 has 56 matchings, 8 lifted spreads from L_2")
def test_criterion_05_spreads():
    with Timer(10.0):
        w4 = count_perfect_matchings(build_spread_hypergraph(4))
        assert w4 == 56
        w2 = recursive_spread(2)
        ts = list(iter_transversals(square(2)))
        assert len(ts) == 8
        built = {spread_from_transversal(t, w2).lines for t in ts}
        assert len(built) == 8
        assert len(built) * 1 <= w4


@pytest.mark.criterion(6, "plateaued functions with support a fixed 2-flat of F_2^4: 8")
def test_criterion_06_support_census():
    with Timer(10.0):
        c = gf2.subspace_from_points([int(p, 2) for p in PARTS[1].split()], 4)
        assert support_census(c) == 8 == len(bent_functions(2))


@pytest.mark.criterion(7, "exact matching counts below the permanent-type bound")
def test_criterion_07_matching_bound():
    assert bounds.mu(3) == pytest.approx(1.8899, abs=1e-4)
    assert bounds.mu(4) == pytest.approx(0.9837, abs=1e-4)
    for h in (build_partition_hypergraph(3), build_partition_hypergraph(4), build_spread_hypergraph(4)):
        exact = int(count_perfect_matchings(h))
        (k,) = set(h.degrees())
        bound = bounds.matching_upper_bound(h.vertex_count, h.d, k)
        assert bound - math.log2(exact) > 0
        assert exact <= 2.0**bound


def _random_function(rng, n):
    return BooleanFunction(n, rng.integers(0, 2, 1 << n, dtype=np.uint8))


def _random_invertible(rng, n):
    while True:
        rows = [int(r) for r in rng.integers(0, 1 << n, n)]
        if gf2.rank(rows) == n:
            return rows


def _mat_vec_all(rows, n):
    """L x for every index x, with row i giving output bit i (most significant first)."""
    idx = np.arange(1 << n, dtype=np.int64)
    out = np.zeros_like(idx)
    for i, r in enumerate(rows):
        out |= (np.bitwise_count(idx & r) & 1).astype(np.int64) << (n - 1 - i)
    return out


def _random_flat(rng, n, k):
    while True:
        basis = [int(b) for b in rng.integers(1, 1 << n, k)]
        if gf2.rank(basis) == k:
            return gf2.canonicalize(basis, int(rng.integers(0, 1 << n)), n)


def _prop_parseval(rng):
    for i in range(CASES):
        f = _random_function(rng, 1 + i % MAX_N)
        w = walsh_transform(f).coeffs.astype(np.int64)
        assert int((w * w).sum()) == 1 << (2 * f.n)


def _prop_walsh_involution(rng):
    for i in range(CASES):
        f = _random_function(rng, 1 + i % MAX_N)
        assert inverse_walsh(walsh_transform(f)) == f


def _prop_moebius_involution(rng):
    for i in range(CASES):
        f = _random_function(rng, 1 + i % MAX_N)
        assert table_from_anf(anf_from_table(f)) == f


def _prop_covariance(rng):
    for i in range(CASES):
        n = 1 + i % MAX_N
        f = _random_function(rng, n)
        L = _random_invertible(rng, n)
        s, a = (int(v) for v in rng.integers(0, 1 << n, 2))
        c = int(rng.integers(0, 2))
        g = apply_linear_change(f, L, shift=s, linear=a, constant=c)
        wf = walsh_transform(f).coeffs.astype(np.int64)
        wg = walsh_transform(g).coeffs.astype(np.int64)
        v = np.arange(1 << n, dtype=np.int64)
        u = _mat_vec_all(gf2.transpose(L, n), n) ^ a  # u = L^T v + a
        sign = 1 - 2 * ((np.bitwise_count(v & s) + c) & 1).astype(np.int64)
        expected = np.empty_like(wg)
        expected[u] = sign * wf
        assert np.array_equal(wg, expected)


SPLITS = [(a, s - a) for s in range(2, MAX_N + 1, 2) for a in range(s // 2 + 1)]


def _prop_construct_k_bent(rng, degrees):
    for i in range(CASES):
        n1, n2 = SPLITS[i % len(SPLITS)]
        f = construct_k(random_instance(n1, n2, rng))
        assert np.all(np.abs(walsh_transform(f).coeffs) == 1 << (f.n // 2))
        if f.n >= 4:
            degrees.append((f.n, degree(f)))


def _prop_build_plateaued(rng):
    for i in range(CASES):
        k = 2 + 2 * (i % 2)
        n = k + i % (MAX_N - k + 1)
        g = random_bent(k, rng)
        c = _random_flat(rng, n, k)
        f = build_plateaued(g, c)
        w = np.abs(walsh_transform(f).coeffs)
        assert set(np.flatnonzero(w).tolist()) == set(c.members())
        assert set(w[c.members()].tolist()) == {1 << (n - k // 2)}


def _prop_mm_degree(rng, degrees):
    for i in range(CASES):
        m = 2 + i % (MAX_N // 2 - 1)
        f = construct_mm(rng.permutation(1 << m), _random_function(rng, m))
        degrees.append((f.n, degree(f)))


@pytest.mark.criterion(8, f"property suites, {CASES} random cases each, n <= {MAX_N}")
def test_criterion_08_properties():
    rng = np.random.default_rng(SEED)
    degrees: list[tuple[int, int]] = []
    timings = {}
    with Timer(300.0):
        for name, run in [
            ("parseval", _prop_parseval),
            ("walsh involution", _prop_walsh_involution),
            ("moebius involution", _prop_moebius_involution),
            ("affine covariance", _prop_covariance),
            ("construct_k bent", lambda r: _prop_construct_k_bent(r, degrees)),
            ("build_plateaued support", _prop_build_plateaued),
            ("mm degree", lambda r: _prop_mm_degree(r, degrees)),
        ]:
            t = time.perf_counter()
            run(rng)
            timings[name] = time.perf_counter() - t
        assert len(degrees) >= CASES
        assert all(d <= n // 2 for n, d in degrees)
    print("\n".join(f"  {k}: {v:.1f} s" for k, v in timings.items()), file=sys.stderr)


@pytest.mark.criterion(9, "printed constants to 0.005 and best k = 1 for even n <= 1000")
def test_criterion_09_bound_constants():
    with Timer(1.0):
        assert abs(bounds.C1 - -2.08) <= 0.005
        assert abs(bounds.C2 - -0.65) <= 0.005
        assert abs(bounds.C2_ALT - -1.73) <= 0.005
        assert all(bounds.best_k(n) == 1 for n in range(2, 1001, 2))


@pytest.mark.criterion(10, "out of reach at desk scale: reported, capped or refused")
def test_criterion_10_documented_limits():
    # asymptotic statements are informational only
    rep = {r.name: r for r in bounds.report(8, 5)}
    for name in ("bent_upper", "bent_lower_main", "spread_asymptote", "partition_lower",
                 "partition_upper", "cube_transversals"):
        assert rep[name].informational
    # b_6 by enumeration is refused
    with pytest.raises(SizeLimit):
        bent_functions(6)
    # N_5 only behind a cap, flagged as a lower bound
    c = count_perfect_matchings(build_partition_hypergraph(5), cap=1000)
    assert c == 1000 and c.truncated
    with pytest.raises(SizeLimit):
        count_transversals(cube(4))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
