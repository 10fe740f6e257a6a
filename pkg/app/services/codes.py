"""
Linear codes over Z_{2^h} spanned by scaled monomials.

Every code here, from RM(r, m) to the intersections used by the coset
constructions, has the same shape: a list of monomials x_S, each allowed a
coefficient that is a multiple of 2^s. Such a code is a Z_q-module whose
words are indexed by mixed-radix integers, one digit of radix 2^{h-s} per
monomial, little-endian over monomials sorted by (order, index).

Because every radix is a power of two, each digit is a bit field of the
index and log2 of the code size is an integer.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from app.config.settings import settings
from app.models.params import ZrmParams
from app.services.errors import EnumerationCapExceeded, NotACodewordError
from app.services.gbf import (
    GeneralizedBooleanFunction,
    ZqVector,
    evaluate,
    interpolate,
    interpolate_rows,
    monomial_orders,
)


logger = logging.getLogger(__name__)

Word = Union[ZqVector, Sequence[int], np.ndarray]

# Above this many generator/position pairs words are produced by ANF evaluation.
_MATRIX_LIMIT = 1 << 24


class WeightMetric(str, Enum):
    HAMMING = "hamming"
    LEE = "lee"


@dataclass(frozen=True)
class Generator:
    """Monomial x_S (S = set bits of `monomial`) with coefficients in 2^shift * Z_q."""

    monomial: int
    shift: int = 0

    @property
    def order(self) -> int:
        return bin(self.monomial).count("1")

    def digit_bits(self, h: int) -> int:
        return h - self.shift


class LinearCode:
    """
    The Z_{2^h}-module spanned by scaled monomials, evaluated on Z_2^m.

    Args:
        m: Number of variables; words have length 2^m.
        h: Alphabet exponent; q = 2^h.
        generators: Scaled monomials. They are sorted by (order, monomial)
            and must be distinct.
        name: Label used in logs and reports.
    """

    def __init__(self, m: int, h: int, generators: Sequence[Generator], name: str = ""):
        ordered = sorted(generators, key=lambda g: (g.order, g.monomial))
        monomials = [g.monomial for g in ordered]
        if len(set(monomials)) != len(monomials):
            raise ValueError("generators must use distinct monomials")
        for g in ordered:
            if g.monomial < 0 or g.monomial >= 1 << m:
                raise ValueError(f"monomial {g.monomial} out of range for m={m}")
            if g.shift < 0 or g.shift >= h:
                raise ValueError(f"shift {g.shift} must lie in [0, {h})")

        self.m = m
        self.h = h
        self.q = 1 << h
        self.n = 1 << m
        self.generators: tuple[Generator, ...] = tuple(ordered)
        self.name = name or f"LinearCode(m={m}, q={self.q})"

        self._monomials = np.array(monomials, dtype=np.int64)
        self._shifts = np.array([g.shift for g in ordered], dtype=np.int64)
        self._bits = [g.digit_bits(h) for g in ordered]
        self._offsets = [0]
        for bits in self._bits[:-1]:
            self._offsets.append(self._offsets[-1] + bits)

    def __repr__(self) -> str:
        return f"<{self.name}: n={self.n}, q={self.q}, size=2^{self.size_log2}>"

    # -- size ---------------------------------------------------------------

    @property
    def size_log2(self) -> int:
        return sum(self._bits)

    @property
    def size(self) -> int:
        return 1 << self.size_log2

    def check_cap(self, cap_log2: Optional[int] = None) -> None:
        """Raise EnumerationCapExceeded when the code has more than 2^cap words."""
        cap = settings.ENUMERATION_CAP_LOG2 if cap_log2 is None else cap_log2
        if self.size_log2 > cap:
            raise EnumerationCapExceeded(self.size_log2, cap)

    # -- index <-> word -----------------------------------------------------

    def digits_of(self, index: int) -> list[int]:
        if index < 0 or index >= self.size:
            raise IndexError(f"index {index} out of range for a code of size 2^{self.size_log2}")
        return [(index >> offset) & ((1 << bits) - 1) for offset, bits in zip(self._offsets, self._bits)]

    def index_from_digits(self, digits: Sequence[int]) -> int:
        return sum(int(d) << offset for d, offset in zip(digits, self._offsets))

    def coefficients(self, index: int) -> np.ndarray:
        """ANF table of the codeword with the given index."""
        table = np.zeros(self.n, dtype=np.int64)
        table[self._monomials] = np.array(self.digits_of(index), dtype=np.int64) << self._shifts
        return table

    def function(self, index: int) -> GeneralizedBooleanFunction:
        return GeneralizedBooleanFunction(self.m, self.q, self.coefficients(index))

    def word(self, index: int) -> ZqVector:
        return evaluate(self.function(index))

    def index_of(self, word: Word) -> int:
        """
        Inverse of word().

        Raises:
            NotACodewordError: if the word is not in the code.
        """
        vector = word if isinstance(word, ZqVector) else ZqVector(self.q, word)
        if vector.q != self.q or vector.n != self.n:
            raise NotACodewordError(f"word must have length {self.n} over Z_{self.q}")
        coeffs = interpolate(vector, self.m, self.q).coeffs

        outside = np.ones(self.n, dtype=bool)
        outside[self._monomials] = False
        if np.any(coeffs[outside]):
            stray = int(np.flatnonzero(coeffs * outside)[0])
            raise NotACodewordError(f"{self.name} has no monomial with index {stray}")
        selected = coeffs[self._monomials]
        misaligned = selected % (1 << self._shifts) != 0
        if np.any(misaligned):
            g = self.generators[int(np.flatnonzero(misaligned)[0])]
            raise NotACodewordError(
                f"coefficient of monomial {g.monomial} must be a multiple of {1 << g.shift}"
            )
        return self.index_from_digits((selected >> self._shifts).tolist())

    def __contains__(self, word: Word) -> bool:
        try:
            self.index_of(word)
        except NotACodewordError:
            return False
        return True

    def contains_rows(self, words: np.ndarray) -> np.ndarray:
        """Row-wise membership of a 2-D batch of words."""
        coeffs = interpolate_rows(words, self.m, self.q)
        outside = np.ones(self.n, dtype=bool)
        outside[self._monomials] = False
        clean = ~np.any(coeffs[:, outside], axis=1)
        aligned = np.all(coeffs[:, self._monomials] % (1 << self._shifts) == 0, axis=1)
        return clean & aligned

    def issubset(self, other: "LinearCode") -> bool:
        """Every generator word (digit 1) of this code lies in `other`."""
        for g in self.generators:
            f = GeneralizedBooleanFunction.monomial(self.m, self.q, g.monomial, 1 << g.shift)
            if evaluate(f) not in other:
                return False
        return True

    # -- batches ------------------------------------------------------------

    @cached_property
    def _evaluation_matrix(self) -> Optional[np.ndarray]:
        # M[g, t] = 1 iff monomial g is 1 at point t
        if len(self.generators) * self.n > _MATRIX_LIMIT:
            return None
        points = np.arange(self.n, dtype=np.int64)
        return ((points[None, :] & self._monomials[:, None]) == self._monomials[:, None]).astype(np.int64)

    def words_from_digits(self, digits: np.ndarray) -> np.ndarray:
        """Rows of per-generator digits to a 2-D array of words."""
        digits = np.atleast_2d(np.asarray(digits, dtype=np.int64))
        if not self.generators:
            return np.zeros((digits.shape[0], self.n), dtype=np.int64)
        scaled = digits << self._shifts
        matrix = self._evaluation_matrix
        if matrix is not None:
            return (scaled @ matrix) % self.q
        rows = []
        for row in scaled:
            table = np.zeros(self.n, dtype=np.int64)
            table[self._monomials] = row
            rows.append(evaluate(GeneralizedBooleanFunction(self.m, self.q, table)).values)
        return np.array(rows, dtype=np.int64).reshape(-1, self.n)

    def words_between(self, start: int, stop: int) -> np.ndarray:
        """Words with indices start .. stop - 1 as a 2-D array."""
        if start < 0 or stop > self.size or start > stop:
            raise IndexError(f"range [{start}, {stop}) outside a code of size 2^{self.size_log2}")
        if self.size_log2 > 62:
            digits = np.array([self.digits_of(i) for i in range(start, stop)], dtype=np.int64)
            return self.words_from_digits(digits.reshape(stop - start, len(self.generators)))
        indices = np.arange(start, stop, dtype=np.int64)
        offsets = np.array(self._offsets, dtype=np.int64)
        masks = (np.int64(1) << np.array(self._bits, dtype=np.int64)) - 1
        digits = (indices[:, None] >> offsets[None, :]) & masks[None, :]
        return self.words_from_digits(digits)

    def iter_words(
        self, batch_size: Optional[int] = None, cap_log2: Optional[int] = None
    ) -> Iterator[tuple[int, np.ndarray]]:
        """
        Yield (first index, 2-D word array) batches over the whole code.

        Raises:
            EnumerationCapExceeded: if the code is larger than the cap.
        """
        self.check_cap(cap_log2)
        batch = batch_size or settings.ENUMERATION_BATCH_SIZE
        total = self.size
        for start in range(0, total, batch):
            stop = min(start + batch, total)
            logger.debug(f"{self.name}: words {start}..{stop - 1}")
            yield start, self.words_between(start, stop)

    def sample_digits(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """Uniform draw (with replacement) of `count` digit rows."""
        columns = [rng.integers(0, 1 << bits, size=count, dtype=np.int64) for bits in self._bits]
        if not columns:
            return np.zeros((count, 0), dtype=np.int64)
        return np.stack(columns, axis=1)

    def sample(self, count: int, seed: int) -> tuple[list[int], np.ndarray]:
        """Random codeword indices and the matching words."""
        digits = self.sample_digits(count, np.random.default_rng(seed))
        indices = [self.index_from_digits(row) for row in digits.tolist()]
        return indices, self.words_from_digits(digits)


# ============================================================================
# Generalized Reed-Muller codes
# ============================================================================

def zrm_coefficient_constraint(params: ZrmParams, monomial_order: int) -> Optional[int]:
    """
    Shift s such that an order-o monomial takes coefficients in 2^s * Z_q.

    Returns 0 for o <= r - p, o - (r - p) for r - p < o <= r, and None
    (coefficient must vanish) for o > r.
    """
    if monomial_order < 0 or monomial_order > params.m:
        raise ValueError(f"monomial order must lie in [0, {params.m}], got {monomial_order}")
    free = params.r - params.p
    if monomial_order <= free:
        return 0
    if monomial_order <= params.r:
        return monomial_order - free
    return None


def zrm_log2_size(params: ZrmParams) -> int:
    """
    log2 |ZRM^p_{2^h}(r, m)| = sum_{i<=r-p} h C(m, i) + sum_{i=1..p} (h - i) C(m, r - p + i).

    Examples:
        >>> zrm_log2_size(ZrmParams(h=2, p=1, r=2, m=3))
        11
    """
    h, p, r, m = params.h, params.p, params.r, params.m
    free = sum(h * math.comb(m, i) for i in range(r - p + 1))
    scaled = sum((h - i) * math.comb(m, r - p + i) for i in range(1, p + 1))
    return free + scaled


def zrm_label(params: ZrmParams) -> str:
    return f"ZRM^{params.p}_{params.q}({params.r},{params.m})"


def zrm_code(params: ZrmParams) -> LinearCode:
    """ZRM^p_{2^h}(r, m) with one generator per admissible monomial."""
    orders = monomial_orders(params.m)
    generators = []
    for monomial in range(params.n):
        shift = zrm_coefficient_constraint(params, int(orders[monomial]))
        if shift is not None:
            generators.append(Generator(monomial, shift))
    return LinearCode(params.m, params.h, generators, name=zrm_label(params))


def zrm_distances(params: ZrmParams) -> tuple[int, int]:
    """Minimum (Hamming, Lee) distances 2^{m-r} and 2^{m-r+p}."""
    return 1 << (params.m - params.r), 1 << (params.m - params.r + params.p)


def rm_code(r: int, m: int) -> LinearCode:
    """Binary Reed-Muller code RM(r, m)."""
    return zrm_code(ZrmParams(h=1, p=0, r=r, m=m))


def zrm_enumerate(params: ZrmParams, cap_log2: Optional[int] = None) -> Iterator[ZqVector]:
    """All codewords of ZRM^p_{2^h}(r, m) in index order."""
    code = zrm_code(params)
    for _, batch in code.iter_words(cap_log2=cap_log2):
        for row in batch:
            yield ZqVector(code.q, row)


def contains(params: ZrmParams, word: Word) -> bool:
    """Membership test through the ANF of the word."""
    vector = word if isinstance(word, ZqVector) else ZqVector(params.q, word)
    if vector.n != params.n:
        raise ValueError(f"word length {vector.n} does not match n = {params.n}")
    return vector in zrm_code(params)


# ============================================================================
# Weights and distances
# ============================================================================

def _values(a: Word) -> np.ndarray:
    return a.values if isinstance(a, ZqVector) else np.asarray(a, dtype=np.int64)


def wt_hamming(a: Word) -> Union[int, np.ndarray]:
    """Number of nonzero entries; row-wise on 2-D input."""
    values = _values(a)
    weights = np.count_nonzero(values, axis=-1)
    return int(weights) if values.ndim == 1 else weights


def wt_lee(a: Word, q: Optional[int] = None) -> Union[int, np.ndarray]:
    """sum_i min(a_i, q - a_i); row-wise on 2-D input."""
    if q is None:
        if not isinstance(a, ZqVector):
            raise ValueError("modulus q is required for plain arrays")
        q = a.q
    values = _values(a) % q
    weights = np.minimum(values, q - values).sum(axis=-1)
    return int(weights) if values.ndim == 1 else weights


def _weights(batch: np.ndarray, q: int, metric: WeightMetric) -> np.ndarray:
    if WeightMetric(metric) == WeightMetric.LEE:
        return wt_lee(batch, q)
    return wt_hamming(batch)


def min_distance(
    code: LinearCode,
    metric: WeightMetric = WeightMetric.HAMMING,
    cap_log2: Optional[int] = None,
) -> Optional[int]:
    """
    Minimum weight over nonzero codewords, which is the minimum distance of a
    linear code. None for the zero code.
    """
    best: Optional[int] = None
    for _, batch in code.iter_words(cap_log2=cap_log2):
        weights = np.atleast_1d(_weights(batch, code.q, metric))
        nonzero = weights[weights > 0]
        if nonzero.size:
            low = int(nonzero.min())
            best = low if best is None else min(best, low)
    logger.debug(f"{code.name}: minimum {WeightMetric(metric).value} distance {best}")
    return best


def weight_distribution(
    code: LinearCode,
    metric: WeightMetric = WeightMetric.HAMMING,
    cap_log2: Optional[int] = None,
) -> dict[int, int]:
    """Number of codewords of each weight."""
    counts: dict[int, int] = {}
    for _, batch in code.iter_words(cap_log2=cap_log2):
        weights = np.atleast_1d(_weights(batch, code.q, metric))
        values, tallies = np.unique(weights, return_counts=True)
        for w, c in zip(values.tolist(), tallies.tolist()):
            counts[w] = counts.get(w, 0) + c
    return dict(sorted(counts.items()))
