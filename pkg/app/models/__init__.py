"""Pydantic models for the code toolkit."""

from .params import (
    EnvelopeParams,
    ZrmParams,
    IndexSplit,
    CodeClass,
    ConstructionParams,
    VerifyOptions,
)
from .requests import (
    AnfModel,
    DistanceBound,
    CodeInfoResponse,
    EncodeRequest,
    EncodeResponse,
    IndexRequest,
    IndexResponse,
    PmeprRequest,
    PmeprSummaryModel,
    PmeprResponse,
    VerifyResponse,
)

__all__ = [
    # Parameters
    "EnvelopeParams",
    "ZrmParams",
    "IndexSplit",
    "CodeClass",
    "ConstructionParams",
    "VerifyOptions",
    # API models
    "AnfModel",
    "DistanceBound",
    "CodeInfoResponse",
    "EncodeRequest",
    "EncodeResponse",
    "IndexRequest",
    "IndexResponse",
    "PmeprRequest",
    "PmeprSummaryModel",
    "PmeprResponse",
    "VerifyResponse",
]
