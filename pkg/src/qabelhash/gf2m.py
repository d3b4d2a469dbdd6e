"""Arithmetic in GF(2^m) for 1 <= m <= 16, backing the explicit powering construction.

Field elements are integers whose bits are polynomial coefficients over GF(2).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UsageError

#: pinned default reduction polynomials: lowest-mask irreducible of each degree
DEFAULT_POLYS = {
    1: 0b10,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
    9: 0b1000000011,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000000001001,
    13: 0b10000000011011,
    14: 0b100000000100001,
    15: 0b1000000000000011,
    16: 0b10000000000101011,
}

MAX_DEGREE = 16


def _polymod(a: int, b: int) -> int:
    """Remainder of carry-less polynomial division a mod b."""
    deg_b = b.bit_length() - 1
    while a and a.bit_length() - 1 >= deg_b:
        a ^= b << (a.bit_length() - 1 - deg_b)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    m = poly.bit_length() - 1
    if m < 1:
        return False
    for deg in range(1, m // 2 + 1):
        for d in range(1 << deg, 1 << (deg + 1)):
            if _polymod(poly, d) == 0:
                return False
    return True


@dataclass(frozen=True)
class FieldGF2m:
    """GF(2^m) under a fixed irreducible reduction polynomial."""

    m: int
    poly: int = 0

    def __post_init__(self):
        if not 1 <= self.m <= MAX_DEGREE:
            raise UsageError(f"extension degree must be in [1, {MAX_DEGREE}], got {self.m}")
        if self.poly == 0:
            object.__setattr__(self, "poly", DEFAULT_POLYS[self.m])
        if self.poly.bit_length() - 1 != self.m:
            raise UsageError(
                f"reduction polynomial 0b{self.poly:b} does not have degree {self.m}"
            )
        if not is_irreducible(self.poly):
            raise UsageError(f"reduction polynomial 0b{self.poly:b} is reducible")

    @property
    def size(self) -> int:
        return 1 << self.m

    def _check(self, u: int) -> int:
        if not 0 <= u < self.size:
            raise UsageError(f"field element {u} out of range [0, 2^{self.m})")
        return u

    def mul(self, u: int, v: int) -> int:
        """Carry-less product reduced by the field polynomial."""
        self._check(u)
        self._check(v)
        product = 0
        while v:
            if v & 1:
                product ^= u
            v >>= 1
            u <<= 1
        return _polymod(product, self.poly)

    def pow(self, u: int, e: int) -> int:
        """u^e by square-and-multiply; u^0 = 1."""
        self._check(u)
        if e < 0:
            raise UsageError("exponent must be non-negative")
        result = 1
        base = u
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result


def dot_gf2(u: int, v: int) -> int:
    """Parity of the bitwise AND of two coefficient vectors."""
    return (u & v).bit_count() & 1


def field_to_payload(field: FieldGF2m) -> dict:
    return {"m": field.m, "poly": field.poly}


def field_from_payload(payload: dict) -> FieldGF2m:
    return FieldGF2m(int(payload["m"]), int(payload["poly"]))
