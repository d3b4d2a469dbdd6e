"""SWAP-test comparison, equality testing over hash states, and compression accounting.

SWAP tests are simulated at the outcome-distribution level: the accept
probability (1 + |<h1|h2>|^2)/2 is exactly known, so shots are Bernoulli draws
from seeded streams rather than wire-level circuit runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .biased_sets import BiasedSet
from .errors import UsageError
from .groups import Element
from .hashing import QuantumHash, hash_size_fields, hash_state, inner_product
from .rng import round_streams, stream

#: |<h1|h2>|^2 closer to 1 than this is float noise on a certain accept
_CERTAIN_ACCEPT_SLACK = 1e-12


def swap_test_probability(h1: QuantumHash, h2: QuantumHash) -> float:
    """Analytic accept probability (1 + |<h1|h2>|^2) / 2."""
    overlap = abs(inner_product(h1, h2)) ** 2
    if overlap > 1.0 - _CERTAIN_ACCEPT_SLACK:
        overlap = 1.0  # identical states accept with certainty
    return (1.0 + overlap) / 2.0


@dataclass(frozen=True)
class SwapTestResult:
    """Sampled SWAP-test outcome statistics."""

    analytic_accept_probability: float
    shots: int
    accepts: int
    seed: int


def swap_test_sample(
    h1: QuantumHash, h2: QuantumHash, shots: int, seed: int
) -> SwapTestResult:
    """Draw accept counts from Binomial(shots, analytic probability), seeded."""
    if shots < 1:
        raise UsageError("shots must be >= 1")
    p = swap_test_probability(h1, h2)
    accepts = int(stream(seed).binomial(shots, p))
    return SwapTestResult(
        analytic_accept_probability=p, shots=shots, accepts=accepts, seed=seed
    )


@dataclass(frozen=True)
class EqualityTranscript:
    """Replayable record of one equality-protocol run."""

    set_id: str
    a: Element
    b: Element
    rounds: int
    seed: int
    accepts: tuple[int, ...]
    decision: str
    soundness_bound: float | None


def equality_protocol(
    bset: BiasedSet,
    a: Element,
    b: Element,
    rounds: int,
    seed: int,
) -> EqualityTranscript:
    """Hash both messages and run independent single-shot SWAP tests.

    Any reject yields `unequal`.  Equal messages always pass (one-sided
    error); unequal messages pass all rounds with probability at most
    ((1 + eps^2)/2)^rounds, reported when the set carries a certified eps.
    """
    if rounds < 1:
        raise UsageError("rounds must be >= 1")
    h1 = hash_state(bset, a)
    h2 = hash_state(bset, b)
    p = swap_test_probability(h1, h2)
    # pre-split streams: transcripts do not depend on evaluation order
    accepts = tuple(
        1 if rng.random() < p else 0 for rng in round_streams(seed, rounds)
    )
    eps = bset.certified_epsilon
    bound = None if eps is None else ((1.0 + eps * eps) / 2.0) ** rounds
    return EqualityTranscript(
        set_id=bset.set_id,
        a=h1.message,
        b=h2.message,
        rounds=rounds,
        seed=seed,
        accepts=accepts,
        decision="equal" if all(accepts) else "unequal",
        soundness_bound=bound,
    )


def transcript_to_payload(t: EqualityTranscript) -> dict:
    return {
        "set_id": t.set_id,
        "a": list(t.a),
        "b": list(t.b),
        "rounds": t.rounds,
        "seed": t.seed,
        "accepts": list(t.accepts),
        "decision": t.decision,
        "soundness_bound": t.soundness_bound,
    }


@dataclass(frozen=True)
class IrreversibilityReport:
    """Holevo-style accounting: a hash can leak at most its qubit count in bits."""

    input_bits: int
    hash_qubits: int
    holevo_cap_bits: int
    compression_ratio: float | None
    in_compression_regime: bool


def compression_accounting(group_order: int, set_size: int) -> IrreversibilityReport:
    """Pure arithmetic report from |G| and |S| (exact integer bit counts)."""
    input_bits, qubits = hash_size_fields(group_order, set_size)
    return IrreversibilityReport(
        input_bits=input_bits,
        hash_qubits=qubits,
        holevo_cap_bits=qubits,
        compression_ratio=None if qubits == 0 else input_bits / qubits,
        in_compression_regime=2 * set_size < group_order,
    )


def irreversibility_report(bset: BiasedSet) -> IrreversibilityReport:
    """Accounting for a concrete set; flags sets outside the compression regime."""
    return compression_accounting(bset.group.order, bset.size)
