"""GF(2^m) arithmetic against a schoolbook polynomial oracle."""

import numpy as np
import pytest

from qabelhash.errors import UsageError
from qabelhash.gf2m import (
    DEFAULT_POLYS,
    FieldGF2m,
    dot_gf2,
    field_from_payload,
    field_to_payload,
    is_irreducible,
)

from oracles import naive_gf2_mul, naive_gf2_pow

# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def test_pinned_default_polynomials():
    # x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1, x^8+x^4+x^3+x+1
    assert DEFAULT_POLYS[2] == 0b111
    assert DEFAULT_POLYS[3] == 0b1011
    assert DEFAULT_POLYS[4] == 0b10011
    assert DEFAULT_POLYS[5] == 0b100101
    assert DEFAULT_POLYS[8] == 0b100011011


def test_all_default_polynomials_are_irreducible():
    for m in range(1, 17):
        poly = DEFAULT_POLYS[m]
        assert poly.bit_length() == m + 1
        assert is_irreducible(poly)


def test_degree_out_of_range_rejected():
    with pytest.raises(UsageError):
        FieldGF2m(0)
    with pytest.raises(UsageError):
        FieldGF2m(17)


def test_reducible_polynomial_rejected():
    # x^4 + x^2 + 1 = (x^2 + x + 1)^2
    with pytest.raises(UsageError):
        FieldGF2m(4, 0b10101)


def test_wrong_degree_polynomial_rejected():
    with pytest.raises(UsageError):
        FieldGF2m(4, 0b111)


# ---------------------------------------------------------------------------
# multiplication
# ---------------------------------------------------------------------------


def test_gf4_mul_example_against_oracle():
    fld = FieldGF2m(2)
    expected = naive_gf2_mul(2, fld.poly, 0b10, 0b11)
    assert expected == 0b01
    assert fld.mul(0b10, 0b11) == expected


def test_mul_annihilator_and_identity():
    fld = FieldGF2m(5)
    for u in range(fld.size):
        assert fld.mul(u, 0) == 0
        assert fld.mul(u, 1) == u


def test_mul_matches_oracle_on_random_pairs():
    rng = np.random.default_rng(41)
    for m in (8, 12, 16):
        fld = FieldGF2m(m)
        us = rng.integers(0, fld.size, size=10_000)
        vs = rng.integers(0, fld.size, size=10_000)
        for u, v in zip(us.tolist(), vs.tolist()):
            assert fld.mul(u, v) == naive_gf2_mul(m, fld.poly, u, v)


def test_operand_out_of_range_rejected():
    fld = FieldGF2m(3)
    with pytest.raises(UsageError):
        fld.mul(8, 1)
    with pytest.raises(UsageError):
        fld.mul(1, -1)


# ---------------------------------------------------------------------------
# field axioms
# ---------------------------------------------------------------------------


def test_field_axioms_exhaustive_up_to_m4():
    for m in (1, 2, 3, 4):
        fld = FieldGF2m(m)
        everything = range(fld.size)
        for a in everything:
            for b in everything:
                assert fld.mul(a, b) == fld.mul(b, a)
                for c in everything:
                    assert fld.mul(fld.mul(a, b), c) == fld.mul(a, fld.mul(b, c))
                    assert fld.mul(a, b ^ c) == fld.mul(a, b) ^ fld.mul(a, c)


def test_pow_of_nonzero_hits_group_order():
    for m in range(1, 9):
        fld = FieldGF2m(m)
        for u in range(1, fld.size):
            assert fld.pow(u, fld.size - 1) == 1


def test_pow_examples_and_oracle():
    fld = FieldGF2m(4)
    assert fld.pow(7, 0) == 1
    assert fld.pow(0, 0) == 1
    for u in (1, 2, 9, 15):
        for e in (1, 2, 3, 7):
            assert fld.pow(u, e) == naive_gf2_pow(4, fld.poly, u, e)


# ---------------------------------------------------------------------------
# dot product and serialization
# ---------------------------------------------------------------------------


def test_dot_gf2_examples():
    assert dot_gf2(0b101, 0b111) == 0
    assert dot_gf2(0b1101, 0) == 0
    assert dot_gf2(0b1, 0b1) == 1


def test_field_payload_roundtrip():
    fld = FieldGF2m(6)
    assert field_from_payload(field_to_payload(fld)) == fld
    assert field_to_payload(fld) == {"m": 6, "poly": DEFAULT_POLYS[6]}
