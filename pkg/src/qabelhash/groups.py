"""Finite abelian groups as products of cyclic factors, with character evaluation.

Elements are tuples of residues, one per cyclic factor.  Characters are indexed
by group elements themselves (self-duality), so the same tuples serve as both
messages and character indices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import CapacityError, UsageError

#: largest group order accepted at construction (exact enumeration headroom)
MAX_GROUP_ORDER = 1 << 62

#: default cap on full element/character enumeration
DEFAULT_ENUMERATION_LIMIT = 1 << 24

Element = tuple[int, ...]


def root_of_unity(num: int, den: int) -> complex:
    """e^{2*pi*i*num/den} with exact values at quarter turns.

    The quarter-turn cases keep Boolean-cube characters at exact +-1 and
    Z_4 characters at exact +-1/+-i, so integer-only downstream paths agree
    with this one bit for bit.
    """
    num %= den
    quarter, rem = divmod(4 * num, den)
    if rem == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[quarter]
    angle = 2.0 * math.pi * num / den
    return complex(math.cos(angle), math.sin(angle))


@dataclass(frozen=True)
class AbelianGroup:
    """Product of cyclic groups Z_q1 x ... x Z_qk given by its factor orders."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if isinstance(self.orders, list):
            object.__setattr__(self, "orders", tuple(self.orders))
        if len(self.orders) < 1:
            raise UsageError("group needs at least one cyclic factor")
        for q in self.orders:
            if not isinstance(q, int) or q < 2:
                raise UsageError(f"cyclic factor orders must be integers >= 2, got {q!r}")
        if math.prod(self.orders) > MAX_GROUP_ORDER:
            raise CapacityError("group order exceeds the supported maximum 2^62")

    @cached_property
    def order(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def is_boolean(self) -> bool:
        """True for Z_2^n, which takes exact integer +-1 character paths."""
        return all(q == 2 for q in self.orders)

    @cached_property
    def _angle_lcm(self) -> int:
        return math.lcm(*self.orders)

    @cached_property
    def phase_tables(self) -> tuple[np.ndarray, ...]:
        """Per-factor root-of-unity lookup tables, index r -> e^{2*pi*i*r/q}."""
        return tuple(
            np.array([root_of_unity(r, q) for r in range(q)], dtype=np.complex128)
            for q in self.orders
        )

    # -- elements ----------------------------------------------------------

    def identity(self) -> Element:
        return (0,) * len(self.orders)

    def element(self, residues: Sequence[int]) -> Element:
        """Validate a residue vector and return it as an element tuple."""
        self._check_length(residues)
        for r, q in zip(residues, self.orders):
            if not 0 <= int(r) < q:
                raise UsageError(f"residue {r} out of range [0, {q})")
        return tuple(int(r) for r in residues)

    def reduce(self, residues: Sequence[int]) -> Element:
        """Reduce an arbitrary integer vector coordinate-wise."""
        self._check_length(residues)
        return tuple(int(r) % q for r, q in zip(residues, self.orders))

    def add(self, a: Element, b: Element) -> Element:
        self._check_length(a)
        self._check_length(b)
        return tuple((x + y) % q for x, y, q in zip(a, b, self.orders))

    def sub(self, a: Element, b: Element) -> Element:
        self._check_length(a)
        self._check_length(b)
        return tuple((x - y) % q for x, y, q in zip(a, b, self.orders))

    def neg(self, a: Element) -> Element:
        self._check_length(a)
        return tuple((-x) % q for x, q in zip(a, self.orders))

    def elements(self, limit: int = DEFAULT_ENUMERATION_LIMIT) -> Iterator[Element]:
        """All elements in lexicographic residue order (last coordinate fastest)."""
        if self.order > limit:
            raise CapacityError(
                f"group order {self.order} exceeds enumeration limit {limit}"
            )
        return itertools.product(*(range(q) for q in self.orders))

    def element_at(self, index: int) -> Element:
        """Element at a lexicographic enumeration index."""
        if not 0 <= index < self.order:
            raise UsageError(f"element index {index} out of range [0, {self.order})")
        residues = []
        for q in reversed(self.orders):
            index, r = divmod(index, q)
            residues.append(r)
        return tuple(reversed(residues))

    def index_of(self, a: Element) -> int:
        """Lexicographic enumeration index; for Z_2^n this is the bit mask."""
        self._check_length(a)
        index = 0
        for r, q in zip(a, self.orders):
            index = index * q + (int(r) % q)
        return index

    def _check_length(self, residues: Sequence[int]) -> None:
        if len(residues) != len(self.orders):
            raise UsageError(
                f"element has {len(residues)} coordinates, group has {len(self.orders)}"
            )

    # -- characters --------------------------------------------------------

    def character_value(self, a: Element, x: Element) -> complex:
        """chi_a(x) = e^{2*pi*i * sum_j a_j x_j / q_j}; exact +-1 on Z_2^n."""
        self._check_length(a)
        self._check_length(x)
        if self.is_boolean:
            parity = 0
            for u, v in zip(a, x):
                parity ^= u & v & 1
            return -1 + 0j if parity else 1 + 0j
        return self.character_value_general(a, x)

    def character_value_general(self, a: Element, x: Element) -> complex:
        """Product-formula character path, exposed for specialization cross-checks."""
        self._check_length(a)
        self._check_length(x)
        lcm = self._angle_lcm
        num = 0
        for u, v, q in zip(a, x, self.orders):
            num += ((u * v) % q) * (lcm // q)
        return root_of_unity(num, lcm)

    def character_terms(self, a: Element, residue_matrix: np.ndarray) -> np.ndarray:
        """Vector of chi_a(x) over the rows of a residue matrix.

        Table-driven per factor, so results match `character_value` exactly
        (same roots of unity, exact quarter turns included).
        """
        self._check_length(a)
        tables = self.phase_tables
        terms = np.ones(residue_matrix.shape[0], dtype=np.complex128)
        for j, q in enumerate(self.orders):
            terms *= tables[j][(a[j] * residue_matrix[:, j]) % q]
        return terms

    def character_profile(self, x: Element) -> np.ndarray:
        """Vector of chi_a(x) for every a in enumeration order (length |G|)."""
        self._check_length(x)
        tables = self.phase_tables
        profile = np.ones(1, dtype=np.complex128)
        for j, q in enumerate(self.orders):
            factor = tables[j][(np.arange(q) * x[j]) % q]
            profile = np.kron(profile, factor)
        return profile


def residue_matrix(group: AbelianGroup, elements: Sequence[Element]) -> np.ndarray:
    """Elements stacked as an int64 matrix, one row per element."""
    out = np.asarray([list(e) for e in elements], dtype=np.int64)
    return out.reshape(len(elements), len(group.orders))


def element_indices(group: AbelianGroup, elements: Sequence[Element]) -> np.ndarray:
    """Enumeration indices of elements as an int64 vector (bit masks on Z_2^n)."""
    matrix = residue_matrix(group, elements)
    indices = np.zeros(matrix.shape[0], dtype=np.int64)
    for j, q in enumerate(group.orders):
        indices = indices * q + matrix[:, j]
    return indices


def sample_elements(group: AbelianGroup, rng: np.random.Generator, count: int) -> list[Element]:
    """`count` elements drawn uniformly with replacement."""
    indices = rng.integers(0, group.order, size=count, dtype=np.int64)
    return [group.element_at(int(i)) for i in indices]


def group_to_payload(group: AbelianGroup) -> dict:
    return {"orders": list(group.orders)}


def group_from_payload(payload: dict) -> AbelianGroup:
    orders = payload.get("orders")
    if not isinstance(orders, list) or not orders:
        raise UsageError("group payload must contain a nonempty 'orders' list")
    return AbelianGroup(tuple(int(q) for q in orders))
