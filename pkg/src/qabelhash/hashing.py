"""Quantum hash states over a biased set, their collision geometry, and reports.

The hash of a message a is the unit vector with entries chi_a(x_j)/sqrt(|S|)
on the first |S| coordinates (position-indexed, so duplicated set elements
occupy distinct basis states) and exact zeros on the power-of-two padding.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .biased_sets import BiasedSet
from .errors import CapacityError, ParseError, UsageError
from .groups import Element

#: default cap on message count for exhaustive pairwise scans
DEFAULT_PAIRWISE_LIMIT = 1 << 12

_GRAM_BLOCK = 256


@dataclass(frozen=True)
class QuantumHash:
    """Normalized amplitude vector of a hashed message, tagged by its set."""

    amplitudes: np.ndarray
    qubits: int
    message: Element
    set_id: str

    def __post_init__(self):
        if self.amplitudes.shape != (1 << self.qubits,):
            raise UsageError(
                f"amplitude vector of length {self.amplitudes.shape} does not fill"
                f" {self.qubits} qubits"
            )


def _qubits_for(size: int) -> int:
    return (size - 1).bit_length()


def hash_state(bset: BiasedSet, message: Element) -> QuantumHash:
    """Build |psi_S(a)>: phases chi_a(x_j) over the listed elements, normalized."""
    group = bset.group
    message = group.element(message)
    qubits = _qubits_for(bset.size)
    amplitudes = np.zeros(1 << qubits, dtype=np.complex128)
    scale = 1.0 / math.sqrt(bset.size)
    if group.is_boolean:
        # fingerprinting fast path: (-1)^{(a,x)} with integer parities
        mask = group.index_of(message)
        parities = np.bitwise_count(np.bitwise_and(bset.indices, mask)) & 1
        amplitudes[: bset.size] = (1.0 - 2.0 * parities) * scale
    else:
        amplitudes[: bset.size] = group.character_terms(message, bset.residues) * scale
    amplitudes.flags.writeable = False
    return QuantumHash(amplitudes, qubits, message, bset.set_id)


def inner_product(h1: QuantumHash, h2: QuantumHash) -> complex:
    """<h1|h2>, conjugate-linear in the first argument; same-set hashes only."""
    if h1.set_id != h2.set_id:
        raise UsageError("hashes from different sets are incomparable")
    return complex(np.vdot(h1.amplitudes, h2.amplitudes))


@dataclass(frozen=True)
class CollisionSpectrum:
    """Pairwise |<psi(a1)|psi(a2)>| statistics over all distinct message pairs."""

    max_modulus: float
    witness: tuple[Element, Element]
    histogram_counts: tuple[int, ...]
    histogram_edges: tuple[float, ...]
    num_pairs: int


def collision_spectrum(
    bset: BiasedSet,
    limit: int = DEFAULT_PAIRWISE_LIMIT,
    bins: int = 20,
) -> CollisionSpectrum:
    """Exhaustive Gram scan of all hash pairs; the max reproduces the set bias."""
    group = bset.group
    order = group.order
    if order > limit:
        raise CapacityError(
            f"group order {order} exceeds pairwise spectrum limit {limit}"
        )
    matrix = np.vstack(
        [hash_state(bset, group.element_at(i)).amplitudes for i in range(order)]
    )
    edges = np.linspace(0.0, 1.0, bins + 1)
    counts = np.zeros(bins, dtype=np.int64)
    best = -1.0
    witness = (0, 1)
    conj = matrix.conj()
    for start in range(0, order, _GRAM_BLOCK):
        stop = min(start + _GRAM_BLOCK, order)
        gram = conj[start:stop] @ matrix.T
        moduli = np.abs(gram)
        np.minimum(moduli, 1.0, out=moduli)  # Cauchy-Schwarz ceiling on float noise
        cols = np.arange(order)[None, :]
        rows = np.arange(start, stop)[:, None]
        upper = cols > rows
        values = moduli[upper]
        counts += np.histogram(values, bins=edges)[0]
        block_max = float(values.max()) if values.size else -1.0
        if block_max > best:
            best = block_max
            flat = np.argmax(np.where(upper, moduli, -1.0))
            i, j = divmod(int(flat), order)
            witness = (start + i, j)
    return CollisionSpectrum(
        max_modulus=best,
        witness=(group.element_at(witness[0]), group.element_at(witness[1])),
        histogram_counts=tuple(int(c) for c in counts),
        histogram_edges=tuple(float(e) for e in edges),
        num_pairs=order * (order - 1) // 2,
    )


@dataclass(frozen=True)
class CodeMatrix:
    """Binary code built from a Z_2^n set: rows are messages, columns positions."""

    matrix: np.ndarray
    weights: np.ndarray
    max_imbalance: float
    witness_message: Element


def code_matrix(bset: BiasedSet, max_n: int = 16) -> CodeMatrix:
    """Codeword matrix entry (a, x_j) mod 2 for nonzero a, with a balance report.

    Fractional weight w of each codeword satisfies |1 - 2w| = the normalized
    character sum at that row, so the max imbalance equals the exact bias.
    """
    group = bset.group
    if not group.is_boolean:
        raise UsageError("code matrices require a Z_2^n group")
    n = len(group.orders)
    if n > max_n:
        raise CapacityError(f"codeword enumeration needs n <= {max_n}, got {n}")
    messages = np.arange(1, group.order, dtype=np.int64)
    bits = (np.bitwise_count(messages[:, None] & bset.indices[None, :]) & 1).astype(np.uint8)
    weights = bits.sum(axis=1, dtype=np.int64)
    imbalance = np.abs(bset.size - 2 * weights) / bset.size
    top = int(np.argmax(imbalance))
    bits.flags.writeable = False
    weights.flags.writeable = False
    return CodeMatrix(
        matrix=bits,
        weights=weights,
        max_imbalance=float(imbalance[top]),
        witness_message=group.element_at(int(messages[top])),
    )


# -- size accounting ---------------------------------------------------------


def hash_size_fields(group_order: int, set_size: int) -> tuple[int, int]:
    """(input bits, hash qubits) = (ceil(log2 |G|), ceil(log2 |S|)), exact."""
    if group_order < 2 or set_size < 1:
        raise UsageError("need group order >= 2 and set size >= 1")
    return (group_order - 1).bit_length(), (set_size - 1).bit_length()


@dataclass(frozen=True)
class SizeReport:
    """Hash size against the asymptotic forms, reported for inspection only."""

    input_bits: int
    qubits: int
    paper_upper_form: float | None
    lower_bound_form: float


def size_report(bset: BiasedSet, epsilon: float) -> SizeReport:
    """Qubit count plus the O(log log|G| - log eps) and lower-bound forms.

    No relation between the two asymptotic forms is asserted (their constants
    are unknown); both are printed for inspection.
    """
    if epsilon <= 0.0:
        raise UsageError("epsilon must be positive")
    input_bits, qubits = hash_size_fields(bset.group.order, bset.size)
    upper = None
    if bset.provenance.get("method") == "random" and "c" in bset.provenance:
        c = float(bset.provenance["c"])
        upper = math.log2(c * math.log(bset.group.order) / (epsilon * epsilon))
    lower = math.log2(math.log2(bset.group.order) / epsilon)
    return SizeReport(
        input_bits=input_bits,
        qubits=qubits,
        paper_upper_form=upper,
        lower_bound_form=lower,
    )


# -- serialization ----------------------------------------------------------


def hash_to_payload(h: QuantumHash) -> dict:
    return {
        "set_id": h.set_id,
        "message": list(h.message),
        "qubits": h.qubits,
        "amplitudes": [[float(z.real), float(z.imag)] for z in h.amplitudes],
    }


def hash_from_payload(payload: dict, location: str | None = None) -> QuantumHash:
    try:
        pairs = payload["amplitudes"]
        amplitudes = np.array(
            [complex(float(re), float(im)) for re, im in pairs], dtype=np.complex128
        )
        amplitudes.flags.writeable = False
        return QuantumHash(
            amplitudes=amplitudes,
            qubits=int(payload["qubits"]),
            message=tuple(int(r) for r in payload["message"]),
            set_id=str(payload["set_id"]),
        )
    except (KeyError, TypeError, ValueError, UsageError) as exc:
        raise ParseError(f"invalid hash payload: {exc}", location) from exc


def save_hash(h: QuantumHash, destination: str | Path) -> None:
    text = json.dumps(hash_to_payload(h), sort_keys=True, indent=2) + "\n"
    Path(destination).write_text(text, encoding="utf-8")


def load_hash(source: str | Path) -> QuantumHash:
    path = Path(source)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read hash file: {exc}", str(path)) from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}", str(path)) from exc
    return hash_from_payload(payload, location=str(path))
