import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from bentk import gf2
from bentk.errors import DependentBasis, SingularMatrix


def test_bitstr_roundtrip():
    assert gf2.bitstr(0b0110, 4) == "0110"
    assert gf2.parse_bits("0110") == (6, 4)
    assert gf2.coord_bit(1, 4) == 0b1000


def test_rref_drops_dependent():
    assert gf2.rank([0b110, 0b011, 0b101]) == 2
    assert gf2.rref([0b011, 0b110]) == sorted(gf2.rref([0b110, 0b101]), reverse=True)


def test_canonicalize_clears_pivots_in_offset():
    c = gf2.canonicalize([0b0100, 0b1010], 0b1110, 4)
    assert c.basis == (0b1010, 0b0100)
    assert c.offset == 0
    assert c.members() == sorted({0b0000, 0b0100, 0b1010, 0b1110})


def test_canonicalize_rejects_dependent():
    with pytest.raises(DependentBasis):
        gf2.canonicalize([0b11, 0b11], 0, 2)


def test_subspace_text_roundtrip():
    c = gf2.canonicalize([0b1000, 0b0001], 0b0100, 4)
    assert gf2.AffineSubspace.parse(str(c)) == c


def test_subspace_from_points():
    pts = [int(p, 2) for p in ("0010", "0110", "0011", "0111")]
    c = gf2.subspace_from_points(pts, 4)
    assert set(c.members()) == set(pts)
    assert gf2.subspace_from_points([0, 1, 2], 4) is None
    assert gf2.subspace_from_points([0, 1, 2, 4], 4) is None


@pytest.mark.parametrize("m,k", [(m, k) for m in range(1, 6) for k in range(m + 1)])
def test_gaussian_binomial_matches_enumeration(m, k):
    subs = list(gf2.enumerate_subspaces(m, k))
    assert len(subs) == gf2.gaussian_binomial(m, k) == oracles.gaussian_binomial(m, k)
    assert len({tuple(s.members()) for s in subs}) == len(subs)


def test_affine_enumeration_counts():
    for m, k in [(3, 1), (3, 2), (4, 2)]:
        flats = list(gf2.enumerate_subspaces(m, k, affine=True))
        assert len(flats) == gf2.gaussian_binomial(m, k) << (m - k)
    assert {frozenset(c.members()) for c in gf2.enumerate_subspaces(4, 2, affine=True)} == set(oracles.flats(4, 2))


def test_enumeration_is_sorted():
    subs = list(gf2.enumerate_subspaces(4, 2, affine=True))
    assert subs == sorted(subs)


def test_invert_and_singular():
    a = (0b110, 0b011, 0b001)
    inv = gf2.invert(a)
    assert gf2.mat_mul(a, inv, 3) == gf2.identity(3)
    with pytest.raises(SingularMatrix):
        gf2.invert((0b11, 0b11))


def test_mat_vec_matches_oracle():
    rows = (0b1011, 0b0110, 0b1111, 0b0001)
    for x in range(16):
        assert gf2.mat_vec(rows, x) == oracles.mat_vec(rows, x)


def test_transpose():
    rows = (0b100, 0b110)
    assert gf2.transpose(rows, 3) == (0b11, 0b01, 0b00)


def test_complete_basis_is_invertible():
    for basis in itertools.combinations(range(1, 16), 2):
        if gf2.rank(basis) < 2:
            continue
        full = gf2.complete_basis(list(basis), 4)
        assert full[:2] == basis
        assert gf2.is_invertible(full)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8).flatmap(lambda m: st.tuples(st.just(m), st.lists(st.integers(0, (1 << m) - 1), max_size=m + 2))))
def test_rank_bounds_and_span(case):
    m, vecs = case
    r = gf2.rank(vecs)
    assert r <= min(m, len(vecs))
    spanned = set(gf2.span(gf2.rref(vecs)))
    assert len(spanned) == 1 << r
    for v in vecs:
        assert v in spanned
