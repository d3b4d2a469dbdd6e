"""Quantum hashing of finite abelian group elements via epsilon-biased sets.

Classical core: group arithmetic and characters, GF(2^m) support, biased-set
construction and certification.  On top of that: hash state vectors, SWAP-test
equality protocols, and size/irreversibility accounting, with JSON artifacts
shared by the CLI and the HTTP service.
"""

from .biased_sets import (
    BiasedSet,
    aghp_set,
    alon_roichman_size,
    bias_exact,
    bias_sampled,
    greedy_biased_set,
    load_set,
    manual_set,
    random_biased_set,
    save_set,
    verify_certification,
)
from .errors import (
    CapacityError,
    CertificationError,
    ParseError,
    QabelhashError,
    UsageError,
)
from .gf2m import FieldGF2m, dot_gf2
from .groups import AbelianGroup, Element, sample_elements
from .hashing import (
    CodeMatrix,
    CollisionSpectrum,
    QuantumHash,
    SizeReport,
    code_matrix,
    collision_spectrum,
    hash_size_fields,
    hash_state,
    inner_product,
    load_hash,
    save_hash,
    size_report,
)
from .protocols import (
    EqualityTranscript,
    IrreversibilityReport,
    SwapTestResult,
    compression_accounting,
    equality_protocol,
    irreversibility_report,
    swap_test_probability,
    swap_test_sample,
    transcript_to_payload,
)

__all__ = [
    "AbelianGroup",
    "BiasedSet",
    "CapacityError",
    "CertificationError",
    "CodeMatrix",
    "CollisionSpectrum",
    "Element",
    "EqualityTranscript",
    "FieldGF2m",
    "IrreversibilityReport",
    "ParseError",
    "QabelhashError",
    "QuantumHash",
    "SizeReport",
    "SwapTestResult",
    "UsageError",
    "aghp_set",
    "alon_roichman_size",
    "bias_exact",
    "bias_sampled",
    "code_matrix",
    "collision_spectrum",
    "compression_accounting",
    "dot_gf2",
    "equality_protocol",
    "greedy_biased_set",
    "hash_size_fields",
    "hash_state",
    "inner_product",
    "irreversibility_report",
    "load_hash",
    "load_set",
    "manual_set",
    "random_biased_set",
    "sample_elements",
    "save_hash",
    "save_set",
    "size_report",
    "swap_test_probability",
    "swap_test_sample",
    "transcript_to_payload",
    "verify_certification",
]

__version__ = "0.1.0"
