"""Small-bias subsets of finite abelian groups: construction and certification.

A set is stored as an ordered multiset of elements (sampling with replacement
produces duplicates, and every bias formula remains valid with |S| read as the
list length).  The bias of a set is the largest normalized character-sum
modulus over nontrivial characters; `bias_exact` computes it by full
enumeration of the character group, `bias_sampled` lower-bounds it from a
random sample of characters.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from math import fsum
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import CapacityError, CertificationError, ParseError, UsageError
from .gf2m import FieldGF2m, dot_gf2
from .groups import (
    DEFAULT_ENUMERATION_LIMIT,
    AbelianGroup,
    Element,
    element_indices,
    group_from_payload,
    group_to_payload,
    residue_matrix,
    sample_elements,
)
from .rng import derive_seed, stream

#: default cap on |G| for the greedy construction (each step scans G x G)
DEFAULT_GREEDY_LIMIT = 1 << 14

#: slack for floating-point bias comparisons (Z_2^n sums are integer-exact)
BIAS_TOLERANCE = 1e-9

#: characters drawn when a group is too large for exact certification
DEFAULT_SAMPLED_CHARACTERS = 4096

SET_FILE_VERSION = 1

CERT_EXACT = "exact"
CERT_SAMPLED = "sampled"
CERT_ANALYTIC = "analytic_bound"
_CERTIFICATIONS = (CERT_EXACT, CERT_SAMPLED, CERT_ANALYTIC)


@dataclass(frozen=True)
class BiasedSet:
    """Ordered multiset of group elements with optional bias certification."""

    group: AbelianGroup
    elements: tuple[Element, ...]
    certified_epsilon: float | None = None
    certification: str | None = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.elements:
            raise UsageError("a biased set must contain at least one element")
        object.__setattr__(
            self, "elements", tuple(self.group.element(e) for e in self.elements)
        )
        if self.certification is not None and self.certification not in _CERTIFICATIONS:
            raise UsageError(f"unknown certification kind {self.certification!r}")
        if self.certified_epsilon is not None and not 0.0 <= self.certified_epsilon <= 1.0:
            raise UsageError("certified_epsilon must lie in [0, 1]")

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def residues(self) -> np.ndarray:
        """(|S|, k) int64 matrix of element residues; treat as read-only."""
        matrix = residue_matrix(self.group, self.elements)
        matrix.flags.writeable = False
        return matrix

    @cached_property
    def indices(self) -> np.ndarray:
        """Enumeration indices of the listed elements (bit masks on Z_2^n)."""
        idx = element_indices(self.group, self.elements)
        idx.flags.writeable = False
        return idx

    @cached_property
    def set_id(self) -> str:
        """Content digest over group and element list; keys hash comparability."""
        content = {
            "elements": [list(e) for e in self.elements],
            "group": group_to_payload(self.group),
        }
        blob = json.dumps(content, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("ascii")).hexdigest()


# -- bias oracles -----------------------------------------------------------


def _walsh_hadamard(values: np.ndarray) -> np.ndarray:
    """In-order fast Walsh-Hadamard transform over int64, exact."""
    out = values.astype(np.int64, copy=True)
    n = out.size
    h = 1
    while h < n:
        out = out.reshape(-1, 2 * h)
        left = out[:, :h].copy()
        out[:, :h] += out[:, h:]
        out[:, h:] = left - out[:, h:]
        h *= 2
    return out.reshape(-1)


def _character_sum(group: AbelianGroup, a: Element, residues: np.ndarray) -> complex:
    """Sum of chi_a over the set, accumulated with compensated summation."""
    terms = group.character_terms(a, residues)
    return complex(fsum(terms.real), fsum(terms.imag))


def bias_exact(bset: BiasedSet, limit: int = DEFAULT_ENUMERATION_LIMIT) -> float:
    """Max over all nontrivial characters of the normalized character sum.

    Z_2^n groups run on an integer Walsh-Hadamard transform of the element
    counts, so the maximum is free of accumulation noise; other groups scan
    the character group with compensated complex summation.
    """
    group = bset.group
    if group.order > limit:
        raise CapacityError(
            f"group order {group.order} exceeds exact-bias limit {limit};"
            " use bias_sampled for an estimate"
        )
    if group.is_boolean:
        counts = np.bincount(bset.indices, minlength=group.order)
        sums = _walsh_hadamard(counts)
        return float(np.max(np.abs(sums[1:]))) / bset.size
    best = 0.0
    residues = bset.residues
    for index in range(1, group.order):
        a = group.element_at(index)
        best = max(best, abs(_character_sum(group, a, residues)))
    return best / bset.size


def bias_sampled(bset: BiasedSet, num_characters: int, seed: int) -> float:
    """Max normalized character sum over a seeded sample of nontrivial characters.

    A lower bound on `bias_exact` of the same set (the max runs over a subset
    of the character group); deterministic per seed.
    """
    if num_characters < 1:
        raise UsageError("num_characters must be >= 1")
    group = bset.group
    rng = stream(seed)
    residues = bset.residues
    best = 0.0
    for index in rng.integers(1, group.order, size=num_characters):
        a = group.element_at(int(index))
        best = max(best, abs(_character_sum(group, a, residues)))
    return best / bset.size


# -- constructions ----------------------------------------------------------


def alon_roichman_size(order: int, epsilon: float, c: float) -> int:
    """Sample count t = ceil(c * ln|G| / epsilon^2)."""
    if not 0.0 < epsilon < 1.0:
        raise UsageError("epsilon must lie in (0, 1)")
    if c <= 0.0:
        raise UsageError("c must be positive")
    return math.ceil(c * math.log(order) / (epsilon * epsilon))


def random_biased_set(
    group: AbelianGroup,
    epsilon: float,
    c: float = 4.0,
    seed: int = 0,
    max_attempts: int = 16,
    exact_limit: int = DEFAULT_ENUMERATION_LIMIT,
    sampled_characters: int = DEFAULT_SAMPLED_CHARACTERS,
) -> BiasedSet:
    """Las-Vegas sampling: draw t uniform elements, certify, resample on failure.

    Groups beyond `exact_limit` get a sampled certification and are flagged as
    such in the provenance.  Raises CertificationError with the best bias seen
    once `max_attempts` is exhausted.
    """
    if max_attempts < 1:
        raise UsageError("max_attempts must be >= 1")
    t = alon_roichman_size(group.order, epsilon, c)
    exact = group.order <= exact_limit
    best = None
    for attempt in range(max_attempts):
        attempt_seed = derive_seed(seed, attempt)
        elements = tuple(sample_elements(group, stream(attempt_seed), t))
        candidate = BiasedSet(group, elements)
        if exact:
            bias = bias_exact(candidate, limit=exact_limit)
        else:
            bias = bias_sampled(candidate, sampled_characters, derive_seed(attempt_seed, 1))
        best = bias if best is None else min(best, bias)
        if bias <= epsilon:
            provenance = {
                "method": "random",
                "seed": int(seed),
                "attempts": attempt + 1,
                "attempt_seed": int(attempt_seed),
                "epsilon": float(epsilon),
                "c": float(c),
                "size": t,
            }
            if not exact:
                provenance["sampled_certification"] = True
                provenance["num_characters"] = int(sampled_characters)
                provenance["certification_seed"] = int(derive_seed(attempt_seed, 1))
            return BiasedSet(
                group,
                elements,
                certified_epsilon=bias,
                certification=CERT_EXACT if exact else CERT_SAMPLED,
                provenance=provenance,
            )
    raise CertificationError(
        f"no epsilon={epsilon} set of size {t} found in {max_attempts} attempts"
        f" (best bias {best})",
        best_bias=best,
    )


def greedy_biased_set(
    group: AbelianGroup,
    size: int,
    limit: int = DEFAULT_GREEDY_LIMIT,
) -> BiasedSet:
    """Deterministic growth minimizing the summed squared character-sum potential.

    Each step appends the element minimizing sum over nontrivial a of
    |sum_x chi_a(x)|^2, ties broken by enumeration order; the result is
    certified exactly.
    """
    if size < 1:
        raise UsageError("size must be >= 1")
    if group.order > limit:
        raise CapacityError(
            f"group order {group.order} exceeds greedy limit {limit}"
        )
    candidates = [group.element_at(i) for i in range(group.order)]
    running = np.zeros(group.order, dtype=np.complex128)
    chosen: list[Element] = []
    for _ in range(size):
        scores = np.empty(group.order)
        for i, x in enumerate(candidates):
            updated = running + group.character_profile(x)
            total = np.sum(updated.real**2 + updated.imag**2)
            scores[i] = total - (updated.real[0] ** 2 + updated.imag[0] ** 2)
        pick = int(np.argmin(scores))  # first minimum: ties go to enumeration order
        chosen.append(candidates[pick])
        running += group.character_profile(candidates[pick])
    result = BiasedSet(group, tuple(chosen), provenance={"method": "greedy", "size": size})
    return replace(result, certified_epsilon=bias_exact(result), certification=CERT_EXACT)


def aghp_set(n: int, m: int, poly: int = 0) -> BiasedSet:
    """Powering construction over Z_2^n: bit i of the (x, y) element is <x^i, y>.

    Yields all 2^(2m) field pairs in (x, y) order with the analytic bias bound
    (n-1)/2^m; deterministic given the pinned reduction polynomial.
    """
    if n < 1:
        raise UsageError("n must be >= 1")
    fld = FieldGF2m(m, poly)
    group = AbelianGroup((2,) * n)
    elements = []
    for x in range(fld.size):
        powers = []
        p = 1
        for _ in range(n):
            powers.append(p)
            p = fld.mul(p, x)
        for y in range(fld.size):
            elements.append(tuple(dot_gf2(p, y) for p in powers))
    # any multiset is 1-biased, so a bound beyond 1 carries no information
    bound = min(1.0, (n - 1) / fld.size)
    return BiasedSet(
        group,
        tuple(elements),
        certified_epsilon=bound,
        certification=CERT_ANALYTIC,
        provenance={"method": "aghp", "n": n, "m": m, "poly": fld.poly},
    )


def manual_set(
    group: AbelianGroup,
    elements: Sequence[Sequence[int]],
    certify: bool = True,
    exact_limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> BiasedSet:
    """Wrap explicit elements, certifying exactly when the group allows it."""
    validated = tuple(group.element(e) for e in elements)
    if certify and group.order <= exact_limit:
        candidate = BiasedSet(group, validated)
        return BiasedSet(
            group,
            validated,
            certified_epsilon=bias_exact(candidate, limit=exact_limit),
            certification=CERT_EXACT,
            provenance={"method": "manual"},
        )
    return BiasedSet(group, validated, provenance={"method": "manual"})


# -- serialization ----------------------------------------------------------


def set_to_payload(bset: BiasedSet) -> dict:
    return {
        "version": SET_FILE_VERSION,
        "group": group_to_payload(bset.group),
        "elements": [list(e) for e in bset.elements],
        "certified_epsilon": bset.certified_epsilon,
        "certification": bset.certification,
        "provenance": bset.provenance,
    }


def set_from_payload(payload: dict, location: str | None = None) -> BiasedSet:
    if not isinstance(payload, dict):
        raise ParseError("set payload must be a JSON object", location)
    version = payload.get("version")
    if version != SET_FILE_VERSION:
        raise ParseError(f"unsupported set file version {version!r}", location)
    try:
        group = group_from_payload(payload.get("group") or {})
        elements = payload.get("elements")
        if not isinstance(elements, list) or not elements:
            raise UsageError("'elements' must be a nonempty list")
        epsilon = payload.get("certified_epsilon")
        certification = payload.get("certification")
        provenance = payload.get("provenance") or {}
        if not isinstance(provenance, dict):
            raise UsageError("'provenance' must be an object")
        return BiasedSet(
            group,
            tuple(tuple(int(r) for r in e) for e in elements),
            certified_epsilon=None if epsilon is None else float(epsilon),
            certification=certification,
            provenance=provenance,
        )
    except UsageError as exc:
        raise ParseError(str(exc), location) from exc


def save_set(bset: BiasedSet, destination: str | Path) -> None:
    """Write the version-tagged JSON set file."""
    text = json.dumps(set_to_payload(bset), sort_keys=True, indent=2) + "\n"
    Path(destination).write_text(text, encoding="utf-8")


def load_set(
    source: str | Path,
    verify: bool = False,
    exact_limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> BiasedSet:
    """Read a set file; with verify=True, re-check its certification claim."""
    path = Path(source)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read set file: {exc}", str(path)) from exc
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}", str(path)) from exc
    bset = set_from_payload(payload, location=str(path))
    if verify:
        verify_certification(bset, exact_limit=exact_limit)
    return bset


def verify_certification(
    bset: BiasedSet, exact_limit: int = DEFAULT_ENUMERATION_LIMIT
) -> None:
    """Re-check a set's certification claim; raise CertificationError on mismatch.

    Exact claims are recomputed with the oracle; analytic bounds are checked
    against the oracle when the group is enumerable; sampled claims are
    replayed from the sampling parameters recorded in the provenance.
    """
    if bset.certification is None or bset.certified_epsilon is None:
        return
    stored = bset.certified_epsilon
    if bset.certification == CERT_EXACT:
        actual = bias_exact(bset, limit=exact_limit)
        if abs(actual - stored) > BIAS_TOLERANCE:
            raise CertificationError(
                f"exact certification mismatch: stored {stored}, recomputed {actual}",
                best_bias=actual,
            )
    elif bset.certification == CERT_ANALYTIC:
        if bset.group.order <= exact_limit:
            actual = bias_exact(bset, limit=exact_limit)
            if actual > stored + BIAS_TOLERANCE:
                raise CertificationError(
                    f"analytic bound violated: stored {stored}, actual bias {actual}",
                    best_bias=actual,
                )
    elif bset.certification == CERT_SAMPLED:
        num = bset.provenance.get("num_characters")
        cert_seed = bset.provenance.get("certification_seed")
        if not isinstance(num, int) or not isinstance(cert_seed, int):
            raise CertificationError(
                "sampled certification lacks replay parameters in provenance"
            )
        actual = bias_sampled(bset, num, cert_seed)
        if abs(actual - stored) > BIAS_TOLERANCE:
            raise CertificationError(
                f"sampled certification mismatch: stored {stored}, replayed {actual}",
                best_bias=actual,
            )
