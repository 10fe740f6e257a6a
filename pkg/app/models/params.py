"""Pydantic parameter records for envelopes, Reed-Muller codes and coset constructions."""

import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.config.settings import settings


class EnvelopeParams(BaseModel):
    """
    Sampling grid for the OFDM complex envelope.

    Time is normalised so that f_s * T = 1; the envelope is sampled at
    t = j / (n * oversample) for j = 0 .. n * oversample - 1.
    """
    model_config = ConfigDict(frozen=True)

    oversample: int = Field(
        default=settings.DEFAULT_OVERSAMPLE,
        ge=1,
        description="Samples per subcarrier spacing (L)"
    )


class ZrmParams(BaseModel):
    """
    Parameters of the generalized Reed-Muller code ZRM^p_{2^h}(r, m).

    Monomials of order at most r - p take any Z_{2^h} coefficient; monomials
    of order r - p + i (1 <= i <= p) take multiples of 2^i.
    """
    model_config = ConfigDict(frozen=True)

    h: int = Field(..., ge=1, le=16, description="Alphabet exponent, q = 2^h")
    p: int = Field(default=0, ge=0, description="Divisibility order")
    r: int = Field(..., ge=0, description="Order of the code")
    m: int = Field(..., ge=0, le=settings.MAX_VARIABLES, description="Length exponent, n = 2^m")

    @model_validator(mode="after")
    def _check_ranges(self) -> "ZrmParams":
        if self.h <= self.p:
            raise ValueError(f"ZRM requires h > p (got h={self.h}, p={self.p})")
        if self.r < self.p:
            raise ValueError(f"ZRM requires r >= p (got r={self.r}, p={self.p})")
        if self.r > self.m:
            raise ValueError(f"ZRM requires r <= m (got r={self.r}, m={self.m})")
        return self

    @property
    def q(self) -> int:
        return 1 << self.h

    @property
    def n(self) -> int:
        return 1 << self.m


class IndexSplit(BaseModel):
    """
    Partition of the variable indices {0..m-1} into J (restricted) and I (free).

    J holds k strictly increasing indices; I is the complement in ascending order.
    """
    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=1, le=settings.MAX_VARIABLES)
    J: tuple[int, ...] = Field(default=(), description="Restricted indices j_0 < ... < j_{k-1}")

    @model_validator(mode="after")
    def _check_indices(self) -> "IndexSplit":
        if any(b <= a for a, b in zip(self.J, self.J[1:])):
            raise ValueError(f"J must be strictly increasing: {list(self.J)}")
        if any(j < 0 or j >= self.m for j in self.J):
            raise ValueError(f"J indices must lie in [0, {self.m}): {list(self.J)}")
        if len(self.J) >= self.m:
            raise ValueError("I must be nonempty (k < m)")
        return self

    @classmethod
    def default(cls, m: int, k: int) -> "IndexSplit":
        """J = {m-k, ..., m-1}, the top k bits."""
        return cls(m=m, J=tuple(range(m - k, m)))

    @property
    def k(self) -> int:
        return len(self.J)

    @property
    def I(self) -> tuple[int, ...]:  # noqa: E743
        restricted = set(self.J)
        return tuple(i for i in range(self.m) if i not in restricted)


class CodeClass(str, Enum):
    """Coset code classes with PMEPR at most 2^{k+1}."""
    CLASS_I = "I"
    CLASS_II = "II"
    CLASS_III = "III"


class ConstructionParams(BaseModel):
    """
    Construction parameters for a Class I/II/III code.

    Serialised as {"class", "h", "p", "k", "r", "m", "J", "rep_index"}.
    When r is omitted it defaults to k + 1; Class III ignores r and uses
    the underlying code A^{p-1}(k, k+1, m).
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    code_class: CodeClass = Field(..., alias="class", description="I, II or III")
    h: int = Field(..., ge=1, le=16, description="Alphabet exponent, q = 2^h")
    p: int = Field(default=0, ge=0, description="Divisibility order")
    k: int = Field(default=0, ge=0, description="Number of restricted variables")
    r: Optional[int] = Field(default=None, ge=0, description="Order of the underlying ZRM code")
    m: int = Field(..., ge=2, le=settings.MAX_VARIABLES, description="Length exponent, n = 2^m")
    J: Optional[tuple[int, ...]] = Field(default=None, description="Restricted indices; top k bits when omitted")
    rep_index: int = Field(default=0, ge=0, description="Coset representative for Class I")

    @model_validator(mode="after")
    def _check_contract(self) -> "ConstructionParams":
        if self.m - self.k < 2:
            raise ValueError(f"coset representatives need m - k >= 2 (got m={self.m}, k={self.k})")
        if self.J is not None and len(self.J) != self.k:
            raise ValueError(f"J has {len(self.J)} indices but k={self.k}")
        if self.h <= self.p:
            raise ValueError(f"h must exceed p (got h={self.h}, p={self.p})")
        if self.code_class == CodeClass.CLASS_III:
            if self.p == 0:
                raise ValueError("Class III codes require p > 0")
            if self.p > self.k + 2:
                raise ValueError(f"Class III requires p <= k + 2 (got p={self.p}, k={self.k})")
        else:
            if self.order < self.p:
                raise ValueError(f"r must be at least p (got r={self.order}, p={self.p})")
            if self.order > self.m:
                raise ValueError(f"r must not exceed m (got r={self.order}, m={self.m})")
        if self.code_class == CodeClass.CLASS_I:
            count = self.permutation_count ** (1 << self.k)
            if self.rep_index >= count:
                raise ValueError(f"rep_index must be below {count}")
        # validates J
        _ = self.split
        return self

    @property
    def q(self) -> int:
        return 1 << self.h

    @property
    def order(self) -> int:
        """Effective r: the given order, or k + 1."""
        return self.k + 1 if self.r is None else self.r

    @property
    def split(self) -> IndexSplit:
        if self.J is None:
            return IndexSplit.default(self.m, self.k)
        return IndexSplit(m=self.m, J=self.J)

    @property
    def permutation_count(self) -> int:
        """(m-k)!/2 canonical paths on I."""
        return math.factorial(self.m - self.k) // 2


class VerifyOptions(BaseModel):
    """
    Inputs shared by the verification suites.

    Each suite reads the fields it needs: the algebraic suites use h, m, k
    and trials, the code suites build a ConstructionParams from the whole
    record.
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    code_class: CodeClass = Field(default=CodeClass.CLASS_II, alias="class", description="I, II or III")
    h: int = Field(default=1, ge=1, le=16, description="Alphabet exponent, q = 2^h")
    p: int = Field(default=0, ge=0, description="Divisibility order")
    k: int = Field(default=0, ge=0, description="Number of restricted variables")
    r: Optional[int] = Field(default=None, ge=0, description="Order of the underlying ZRM code")
    m: int = Field(default=3, ge=1, le=settings.MAX_VARIABLES, description="Length exponent, n = 2^m")
    J: Optional[tuple[int, ...]] = Field(default=None, description="Restricted indices; top k bits when omitted")
    rep_index: int = Field(default=0, ge=0, description="Coset representative for Class I")
    trials: int = Field(default=100, ge=1, description="Randomized instances per suite")
    seed: int = Field(default=settings.DEFAULT_SEED, ge=0, lt=2**64, description="Seed for randomized suites")
    oversample: int = Field(default=settings.DEFAULT_OVERSAMPLE, ge=1, description="Envelope oversampling L")
    cap_log2: int = Field(default=settings.ENUMERATION_CAP_LOG2, ge=0, le=62, description="Enumeration cap")
    workers: int = Field(default=1, ge=1, le=settings.MAX_WORKERS, description="FFT worker threads")

    @property
    def q(self) -> int:
        return 1 << self.h

    @property
    def order(self) -> int:
        return self.k + 1 if self.r is None else self.r

    def construction(self, **overrides) -> ConstructionParams:
        """ConstructionParams from these options; raises ValueError when invalid."""
        fields = {
            "class": self.code_class,
            "h": self.h,
            "p": self.p,
            "k": self.k,
            "r": self.r,
            "m": self.m,
            "J": self.J,
            "rep_index": self.rep_index,
        }
        fields.update(overrides)
        return ConstructionParams(**fields)
