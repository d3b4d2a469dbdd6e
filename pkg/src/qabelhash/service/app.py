"""HTTP service exposing set construction, hashing, and protocol runs.

Stateless: every request carries its own set or hash payloads (the same JSON
layout the CLI writes to disk), and responses can be saved back unchanged.
Domain errors map to HTTP 400 with {"error": kind, "message": ...}.
"""

from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import biased_sets, hashing, protocols
from ..biased_sets import BIAS_TOLERANCE, BiasedSet
from ..errors import QabelhashError, UsageError
from ..groups import AbelianGroup
from . import models

app = FastAPI(title="qabelhash", version="0.1.0")


@app.exception_handler(QabelhashError)
async def _domain_error(request: Request, exc: QabelhashError) -> JSONResponse:
    body = models.ErrorBody(error=exc.kind, message=str(exc))
    return JSONResponse(status_code=400, content=body.model_dump())


def _set_from_model(model: models.SetModel) -> BiasedSet:
    return biased_sets.set_from_payload(model.model_dump())


def _hash_from_model(model: models.HashModel) -> hashing.QuantumHash:
    return hashing.hash_from_payload(model.model_dump())


@app.get("/health", response_model=models.HealthResponse)
def health() -> models.HealthResponse:
    return models.HealthResponse(status="ok")


@app.post("/sets/generate", response_model=models.SetModel)
def generate(req: models.GenerateRequest) -> models.SetModel:
    group = AbelianGroup(tuple(req.group.orders))
    if req.method == "random":
        if req.epsilon is None:
            raise UsageError("random method requires epsilon")
        bset = biased_sets.random_biased_set(
            group,
            epsilon=req.epsilon,
            c=req.c,
            seed=req.seed,
            max_attempts=req.max_attempts,
        )
    elif req.method == "greedy":
        if req.size is None:
            raise UsageError("greedy method requires size")
        bset = biased_sets.greedy_biased_set(group, req.size)
    else:
        if req.m is None:
            raise UsageError("aghp method requires m")
        if not group.is_boolean:
            raise UsageError("aghp builds sets over Z_2^n")
        bset = biased_sets.aghp_set(len(group.orders), req.m)
    return models.SetModel(**biased_sets.set_to_payload(bset))


@app.post("/sets/certify", response_model=models.CertifyResponse)
def certify(req: models.CertifyRequest) -> models.CertifyResponse:
    bset = _set_from_model(req.set)
    if req.sampled is not None:
        bias = biased_sets.bias_sampled(bset, req.sampled, req.seed)
        mode = "sampled"
    else:
        bias = biased_sets.bias_exact(bset)
        mode = "exact"
    stored = bset.certified_epsilon
    certified = stored is not None and bias <= stored + BIAS_TOLERANCE
    return models.CertifyResponse(
        bias=bias, mode=mode, stored_epsilon=stored, certified=certified
    )


@app.post("/hash", response_model=models.HashModel)
def hash_message(req: models.HashRequest) -> models.HashModel:
    bset = _set_from_model(req.set)
    h = hashing.hash_state(bset, bset.group.element(req.message))
    return models.HashModel(**hashing.hash_to_payload(h))


@app.post("/compare", response_model=models.CompareResponse)
def compare(req: models.CompareRequest) -> models.CompareResponse:
    ip = hashing.inner_product(_hash_from_model(req.hash1), _hash_from_model(req.hash2))
    return models.CompareResponse(modulus=abs(ip))


@app.post("/spectrum", response_model=models.SpectrumResponse)
def spectrum(req: models.SpectrumRequest) -> models.SpectrumResponse:
    result = hashing.collision_spectrum(_set_from_model(req.set), bins=req.bins)
    return models.SpectrumResponse(
        max_modulus=result.max_modulus,
        witness=[list(result.witness[0]), list(result.witness[1])],
        num_pairs=result.num_pairs,
        histogram_counts=list(result.histogram_counts),
        histogram_edges=list(result.histogram_edges),
    )


@app.post("/swap-test", response_model=models.SwapTestResponse)
def swap_test(req: models.SwapTestRequest) -> models.SwapTestResponse:
    bset = _set_from_model(req.set)
    a = bset.group.element(req.a)
    b = bset.group.element(req.b)
    transcript = protocols.equality_protocol(bset, a, b, req.rounds, req.seed)
    payload = protocols.transcript_to_payload(transcript)
    if req.shots:
        sample = protocols.swap_test_sample(
            hashing.hash_state(bset, a), hashing.hash_state(bset, b), req.shots, req.seed
        )
        payload["sample"] = models.SampleModel(**asdict(sample))
    return models.SwapTestResponse(**payload)


@app.post("/report", response_model=models.ReportResponse)
def report(req: models.ReportRequest) -> models.ReportResponse:
    bset = _set_from_model(req.set)
    epsilon = req.epsilon if req.epsilon is not None else bset.certified_epsilon
    if epsilon is None:
        raise UsageError("set carries no certified epsilon; pass epsilon explicitly")
    return models.ReportResponse(
        size=models.SizeModel(**asdict(hashing.size_report(bset, epsilon))),
        irreversibility=models.IrreversibilityModel(
            **asdict(protocols.irreversibility_report(bset))
        ),
    )


@app.post("/code-matrix", response_model=models.CodeMatrixResponse)
def code_matrix(req: models.CodeMatrixRequest) -> models.CodeMatrixResponse:
    bset = _set_from_model(req.set)
    cm = hashing.code_matrix(bset)
    return models.CodeMatrixResponse(
        set_id=bset.set_id,
        n=len(bset.group.orders),
        num_positions=bset.size,
        rows=["".join(str(b) for b in row) for row in cm.matrix],
        max_imbalance=cm.max_imbalance,
        witness_message=list(cm.witness_message),
    )
