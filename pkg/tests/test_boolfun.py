import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from bentk import gf2
from bentk.boolfun import (
    BENT,
    OTHER,
    PLATEAUED,
    BooleanFunction,
    anf_from_table,
    apply_linear_change,
    classify,
    degree,
    inverse_walsh,
    is_bent,
    table_from_anf,
    walsh_transform,
    weight,
)
from bentk.errors import DimensionMismatch, SingularMatrix


@st.composite
def functions(draw, max_n=8, min_n=0):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))
    return BooleanFunction(n, bits)


@st.composite
def invertible(draw, n):
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n))
    if not gf2.is_invertible(rows):
        # fall back to a unit-triangular matrix built from the same draw
        rows = [(1 << (n - 1 - i)) | (r & ((1 << (n - 1 - i)) - 1)) for i, r in enumerate(rows)]
    return tuple(rows)


def test_variable_index_convention():
    x1 = BooleanFunction.variable(4, 1)
    assert x1.to_bits() == "0000000011111111"
    assert BooleanFunction.variable(4, 4).to_bits() == "0101010101010101"


def test_hex_roundtrip_and_padding():
    f = BooleanFunction.from_bits("0001")
    assert f.to_hex() == "1"
    assert BooleanFunction.from_hex("1", 2) == f
    g = BooleanFunction.from_bits("01")
    assert g.to_hex() == "4"
    assert BooleanFunction.from_hex("4", 1) == g
    with pytest.raises(ValueError):
        BooleanFunction.from_hex("5", 1)
    with pytest.raises(ValueError):
        BooleanFunction.from_hex("12", 2)


def test_table_is_read_only():
    f = BooleanFunction.from_bits("0110")
    with pytest.raises(ValueError):
        f.table[0] = 1


def test_bad_table_length():
    with pytest.raises(DimensionMismatch):
        BooleanFunction(3, [0, 1])


def test_classify_small_cases():
    assert classify(BooleanFunction.from_bits("0001")).kind == BENT
    c = classify(BooleanFunction.from_bits("0110"))
    assert c.kind == PLATEAUED and c.amplitude == 4 and c.support == (3,)
    assert c.is_plateaued and not c.is_bent
    assert classify(BooleanFunction.from_bits("00000001")).kind == OTHER
    # both constants on zero variables are bent
    assert is_bent(BooleanFunction.constant(0, 0)) and is_bent(BooleanFunction.constant(0, 1))


def test_odd_n_never_bent():
    assert not is_bent(BooleanFunction.from_bits("01101001"))


def test_degree_and_weight():
    f = table_from_anf(anf_from_table(BooleanFunction.from_bits("0001")))
    assert degree(f) == 2 and weight(f) == 1
    assert degree(BooleanFunction.constant(3, 0)) == 0


@settings(max_examples=150, deadline=None)
@given(functions(max_n=7))
def test_walsh_matches_dense_oracle(f):
    assert np.array_equal(walsh_transform(f).coeffs, oracles.walsh(f.table))


@settings(max_examples=150, deadline=None)
@given(functions(max_n=6))
def test_anf_matches_oracle(f):
    p = anf_from_table(f)
    masks = {sum(1 << (f.n - i) for i in mon) for mon in p.monomials}
    assert masks == oracles.anf(f.table)


@settings(max_examples=200, deadline=None)
@given(functions(max_n=10))
def test_parseval(f):
    w = walsh_transform(f).coeffs.astype(np.int64)
    assert int((w * w).sum()) == 1 << (2 * f.n)


@settings(max_examples=200, deadline=None)
@given(functions(max_n=10))
def test_walsh_inverse(f):
    assert inverse_walsh(walsh_transform(f)) == f


@settings(max_examples=200, deadline=None)
@given(functions(max_n=10))
def test_anf_roundtrip(f):
    assert table_from_anf(anf_from_table(f)) == f


def test_inverse_walsh_rejects_garbage():
    from bentk.boolfun import WalshSpectrum

    with pytest.raises(ValueError):
        inverse_walsh(WalshSpectrum(1, np.array([2, 1])))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_linear_change_covariance(data):
    f = data.draw(functions(min_n=1, max_n=7))
    n = f.n
    L = data.draw(invertible(n))
    s = data.draw(st.integers(0, (1 << n) - 1))
    a = data.draw(st.integers(0, (1 << n) - 1))
    c = data.draw(st.integers(0, 1))
    g = apply_linear_change(f, L, shift=s, linear=a, constant=c)
    # pointwise definition
    for x in range(1 << n):
        assert g(x) == f(oracles.mat_vec(L, x) ^ s) ^ oracles.parity(a & x) ^ c
    # W_g(u) = (-1)^(c + v.s) W_f(v) with L^T v = u + a
    wf, wg = walsh_transform(f).coeffs, walsh_transform(g).coeffs
    lt = gf2.transpose(L, n)
    for v in range(1 << n):
        u = oracles.mat_vec(lt, v) ^ a
        assert wg[u] == (-1) ** (c + oracles.parity(v & s)) * wf[v]


def test_singular_substitution_rejected():
    with pytest.raises(SingularMatrix):
        apply_linear_change(BooleanFunction.constant(2), (0b11, 0b11))


def test_xor_and_hash():
    f = BooleanFunction.from_bits("0110")
    g = BooleanFunction.from_bits("0011")
    assert (f ^ g).to_bits() == "0101"
    assert len({f, BooleanFunction.from_bits("0110"), g}) == 2
