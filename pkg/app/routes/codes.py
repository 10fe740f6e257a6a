"""
API routes for code information, encoding and verification.

Every endpoint answers with one JSON document; codeword streams are only
available from the command line.
"""

import logging

import numpy as np
from fastapi import APIRouter, HTTPException

from app.config import settings
from app.models import (
    CodeInfoResponse,
    ConstructionParams,
    EncodeRequest,
    EncodeResponse,
    EnvelopeParams,
    IndexRequest,
    IndexResponse,
    PmeprRequest,
    PmeprResponse,
    PmeprSummaryModel,
    VerifyOptions,
    VerifyResponse,
)
from app.services import (
    ZqVector,
    class_code,
    payload_from_hex,
    payload_to_hex,
    pmepr,
    pmepr_batch,
    pmepr_summary,
    resolve_suite,
    run_suite,
    suite_names,
)

logger = logging.getLogger(__name__)

router = APIRouter()


def _bad_request(exc: ValueError) -> HTTPException:
    logger.info(f"Rejected request: {exc}")
    return HTTPException(status_code=400, detail=str(exc))


@router.post(
    "/info",
    response_model=CodeInfoResponse,
    summary="Describe a Code",
    description=(
        "Report size, bit capacity, PMEPR bound and distance guarantees of a "
        "Class I, II or III code."
    )
)
async def code_info(params: ConstructionParams) -> CodeInfoResponse:
    """Describe the code built from construction parameters."""
    try:
        info = class_code(params).describe()
    except ValueError as exc:
        raise _bad_request(exc)
    return CodeInfoResponse(**info)


@router.post(
    "/encode",
    response_model=EncodeResponse,
    summary="Encode a Payload",
    description="Map a hex payload of exactly the code's capacity to a codeword."
)
async def encode_payload(request: EncodeRequest) -> EncodeResponse:
    """Encode a payload and measure the codeword's PMEPR."""
    try:
        code = class_code(request.construction)
        bits = payload_from_hex(request.payload, code.capacity)
        word = code.encode(bits)
        index = code.index_of(word)
    except ValueError as exc:
        raise _bad_request(exc)

    envelope = EnvelopeParams()
    return EncodeResponse(
        word=word.tolist(),
        index=index,
        capacity_bits=code.capacity,
        pmepr=round(pmepr(word, envelope), 9),
        oversample=envelope.oversample,
    )


@router.post(
    "/index",
    response_model=IndexResponse,
    summary="Recover a Payload",
    description="Invert the encoder: return the payload and stable index of a codeword."
)
async def index_word(request: IndexRequest) -> IndexResponse:
    """Recover the payload of a codeword."""
    try:
        code = class_code(request.construction)
        word = ZqVector(code.q, request.word)
        bits = code.codeword_index(word)
        index = code.index_of(word)
    except ValueError as exc:
        raise _bad_request(exc)

    return IndexResponse(payload=payload_to_hex(bits), bits=bits, index=index)


@router.post(
    "/pmepr",
    response_model=PmeprResponse,
    summary="Measure PMEPR",
    description="Measure the oversampled PMEPR of polyphase words over Z_q."
)
async def measure_pmepr(request: PmeprRequest) -> PmeprResponse:
    """Measure PMEPR for a batch of words."""
    envelope = EnvelopeParams(oversample=request.oversample or settings.DEFAULT_OVERSAMPLE)
    values = pmepr_batch(np.array(request.words), request.q, envelope, workers=settings.MAX_WORKERS)
    summary = pmepr_summary(values)
    return PmeprResponse(
        values=[round(float(v), 9) for v in values],
        summary=PmeprSummaryModel(**summary.to_dict()),
        oversample=envelope.oversample,
    )


@router.post(
    "/verify/{suite}",
    response_model=VerifyResponse,
    summary="Run a Verification Suite",
    description=(
        "Run one of the named verification suites and return its report with "
        "the first failing witness, if any."
    )
)
async def verify_suite(suite: str, options: VerifyOptions) -> VerifyResponse:
    """Run a verification suite."""
    if resolve_suite(suite) is None:
        raise HTTPException(
            status_code=404,
            detail=f"Unknown suite: {suite}. Use one of {', '.join(suite_names())}"
        )
    try:
        report = run_suite(suite, options)
    except ValueError as exc:
        raise _bad_request(exc)
    return VerifyResponse(**report.to_dict())
