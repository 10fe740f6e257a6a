"""Request and response models for API endpoints."""

from typing import Optional

from pydantic import BaseModel, Field, model_validator

from .params import ConstructionParams


# ============================================================================
# Shared Models
# ============================================================================

class AnfModel(BaseModel):
    """A generalized Boolean function as its ANF coefficient table."""
    m: int = Field(..., ge=0, le=16, description="Number of variables")
    q: int = Field(..., ge=2, description="Even modulus")
    coeffs: list[int] = Field(..., description="2^m coefficients, LSB-first monomial indexing")

    @model_validator(mode="after")
    def _check_table(self) -> "AnfModel":
        if len(self.coeffs) != 1 << self.m:
            raise ValueError(f"coeffs must have 2^{self.m} = {1 << self.m} entries")
        if self.q % 2:
            raise ValueError("q must be even")
        return self


class DistanceBound(BaseModel):
    """Guaranteed minimum distances."""
    hamming: int = Field(..., description="Minimum Hamming distance bound")
    lee: int = Field(..., description="Minimum Lee distance bound")
    zrm: str = Field(..., description="ZRM code the bounds are taken from")


# ============================================================================
# Code Info
# ============================================================================

class CodeInfoResponse(BaseModel):
    """Sizes, capacity and guarantees of a Class I/II/III code."""
    code_class: str = Field(..., description="I, II or III")
    n: int = Field(..., description="Codeword length 2^m")
    q: int = Field(..., description="Alphabet size 2^h")
    split: list[int] = Field(..., description="Restricted indices J")
    inner_code: str = Field(..., description="Linear code A whose cosets form the class")
    inner_log2_size: int = Field(..., description="log2 |A|")
    coset_count: int = Field(..., description="Number of cosets")
    size_log2: float = Field(..., description="log2 of the number of codewords")
    capacity_bits: int = Field(..., description="Encodable bits per codeword")
    pmepr_bound: int = Field(..., description="Guaranteed PMEPR bound 2^{k+1}")
    distance: DistanceBound
    containing_zrm: str = Field(..., description="ZRM code holding every codeword")


# ============================================================================
# Encode / Index
# ============================================================================

class EncodeRequest(BaseModel):
    """Request model for payload encoding."""
    construction: ConstructionParams
    payload: str = Field(
        ...,
        description="Payload as hex; the value must fit the code's capacity in bits",
        examples=["1f3a"],
    )


class EncodeResponse(BaseModel):
    """Response model for payload encoding."""
    word: list[int] = Field(..., description="Codeword over Z_q")
    index: int = Field(..., description="Stable codeword index")
    capacity_bits: int = Field(..., description="Encodable bits")
    pmepr: float = Field(..., description="Measured PMEPR of the codeword")
    oversample: int = Field(..., description="Oversampling used for the PMEPR measurement")


class IndexRequest(BaseModel):
    """Request model for recovering the payload of a codeword."""
    construction: ConstructionParams
    word: list[int] = Field(..., description="Codeword over Z_q")


class IndexResponse(BaseModel):
    """Response model for codeword indexing."""
    payload: str = Field(..., description="Payload as hex")
    bits: list[int] = Field(..., description="Payload bits, most significant first")
    index: int = Field(..., description="Stable codeword index")


# ============================================================================
# PMEPR
# ============================================================================

class PmeprRequest(BaseModel):
    """Request model for PMEPR measurement of Z_q words."""
    q: int = Field(..., ge=2, description="Alphabet size")
    words: list[list[int]] = Field(..., min_length=1, description="Words of equal length")
    oversample: Optional[int] = Field(default=None, ge=1, description="Oversampling L; server default when omitted")

    @model_validator(mode="after")
    def _check_lengths(self) -> "PmeprRequest":
        lengths = {len(word) for word in self.words}
        if len(lengths) != 1 or 0 in lengths:
            raise ValueError("words must be nonempty and of equal length")
        return self


class PmeprSummaryModel(BaseModel):
    count: int
    min: float
    mean: float
    max: float
    q50: float
    q90: float
    q99: float


class PmeprResponse(BaseModel):
    """Response model for PMEPR measurement."""
    values: list[float] = Field(..., description="PMEPR per word, in request order")
    summary: PmeprSummaryModel
    oversample: int = Field(..., description="Oversampling L used")


# ============================================================================
# Verification
# ============================================================================

class VerifyResponse(BaseModel):
    """Outcome of a verification suite."""
    name: str = Field(..., description="Suite name")
    passed: bool = Field(..., description="True when no check failed")
    checks: int = Field(..., description="Number of individual checks run")
    witness: Optional[dict] = Field(None, description="First failing check, if any")
    details: dict = Field(default_factory=dict, description="Suite-specific measurements")
