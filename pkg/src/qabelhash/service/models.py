"""Request and response schemas for the HTTP service.

Set and hash bodies use the same field layout as the on-disk JSON files, so a
saved artifact can be posted verbatim and a response saved back unchanged.
"""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field


class GroupModel(BaseModel):
    orders: list[int]


class SetModel(BaseModel):
    version: int = 1
    group: GroupModel
    elements: list[list[int]]
    certified_epsilon: Optional[float] = None
    certification: Optional[Literal["exact", "sampled", "analytic_bound"]] = None
    provenance: dict[str, Any] = Field(default_factory=dict)


class HashModel(BaseModel):
    set_id: str
    message: list[int]
    qubits: int
    amplitudes: list[list[float]]


class GenerateRequest(BaseModel):
    group: GroupModel
    method: Literal["random", "greedy", "aghp"]
    epsilon: Optional[float] = None
    c: float = 4.0
    size: Optional[int] = None
    m: Optional[int] = None
    seed: int = 0
    max_attempts: int = 16


class CertifyRequest(BaseModel):
    set: SetModel
    sampled: Optional[int] = None
    seed: int = 0


class CertifyResponse(BaseModel):
    bias: float
    mode: Literal["exact", "sampled"]
    stored_epsilon: Optional[float]
    certified: bool


class HashRequest(BaseModel):
    set: SetModel
    message: list[int]


class CompareRequest(BaseModel):
    hash1: HashModel
    hash2: HashModel


class CompareResponse(BaseModel):
    modulus: float


class SpectrumRequest(BaseModel):
    set: SetModel
    bins: int = 20


class SpectrumResponse(BaseModel):
    max_modulus: float
    witness: list[list[int]]
    num_pairs: int
    histogram_counts: list[int]
    histogram_edges: list[float]


class SwapTestRequest(BaseModel):
    set: SetModel
    a: list[int]
    b: list[int]
    rounds: int = 1
    shots: int = 0
    seed: int = 0


class SampleModel(BaseModel):
    analytic_accept_probability: float
    shots: int
    accepts: int
    seed: int


class SwapTestResponse(BaseModel):
    set_id: str
    a: list[int]
    b: list[int]
    rounds: int
    seed: int
    accepts: list[int]
    decision: Literal["equal", "unequal"]
    soundness_bound: Optional[float]
    sample: Optional[SampleModel] = None


class ReportRequest(BaseModel):
    set: SetModel
    epsilon: Optional[float] = None


class SizeModel(BaseModel):
    input_bits: int
    qubits: int
    paper_upper_form: Optional[float]
    lower_bound_form: float


class IrreversibilityModel(BaseModel):
    input_bits: int
    hash_qubits: int
    holevo_cap_bits: int
    compression_ratio: Optional[float]
    in_compression_regime: bool


class ReportResponse(BaseModel):
    size: SizeModel
    irreversibility: IrreversibilityModel


class CodeMatrixRequest(BaseModel):
    set: SetModel


class CodeMatrixResponse(BaseModel):
    set_id: str
    n: int
    num_positions: int
    rows: list[str]
    max_imbalance: float
    witness_message: list[int]


class ErrorBody(BaseModel):
    error: str
    message: str


class HealthResponse(BaseModel):
    status: str
