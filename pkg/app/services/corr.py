"""
Exact aperiodic correlation of polyphase vectors.

For q = 2^h the values of C(A, B)(l) live in the ring of cyclotomic integers
Z[xi], xi = exp(2 pi i / q), which is represented as Z[x]/(x^{q/2} + 1). Each
correlation sum is a multiset of powers xi^e, so it is computed as a
histogram of exponents and folded into that basis with xi^{q/2} = -1.

Moduli that are not powers of two fall back to complex arithmetic with an
absolute tolerance.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from typing import IO, Iterable, Optional, Sequence, Union

import numpy as np

from app.services.gbf import (
    GeneralizedBooleanFunction,
    RestrictedVector,
    all_bit_vectors,
    restrict,
)


logger = logging.getLogger(__name__)

FLOAT_TOLERANCE = 1e-9

# Whole profiles use one pairwise histogram while both limits hold.
_HISTOGRAM_BIN_LIMIT = 1 << 24
_HISTOGRAM_PAIR_LIMIT = 1 << 20


def is_power_of_two(q: int) -> bool:
    return q >= 2 and q & (q - 1) == 0


class CyclotomicInt:
    """
    Element sum_t coords[t] xi^t of Z[xi] with xi a primitive q-th root of unity.

    Coordinates are Python integers. The representation is canonical: an
    element is zero iff every coordinate is zero.
    """

    __slots__ = ("q", "coords")

    def __init__(self, q: int, coords: Iterable[int]):
        if not is_power_of_two(q):
            raise ValueError(f"exact arithmetic needs q a power of two, got {q}")
        values = tuple(int(c) for c in coords)
        if len(values) != q // 2:
            raise ValueError(f"expected {q // 2} coordinates for q={q}, got {len(values)}")
        self.q = q
        self.coords = values

    @property
    def h(self) -> int:
        return self.q.bit_length() - 1

    @property
    def half(self) -> int:
        return self.q // 2

    @classmethod
    def zero(cls, q: int) -> "CyclotomicInt":
        return cls(q, [0] * (q // 2))

    @classmethod
    def from_int(cls, q: int, value: int) -> "CyclotomicInt":
        coords = [0] * (q // 2)
        coords[0] = value
        return cls(q, coords)

    @classmethod
    def root(cls, q: int, exponent: int) -> "CyclotomicInt":
        """xi^exponent."""
        counts = np.zeros(q, dtype=np.int64)
        counts[exponent % q] = 1
        return cls.from_histogram(q, counts)

    @classmethod
    def from_histogram(cls, q: int, counts: Sequence[int]) -> "CyclotomicInt":
        """sum_e counts[e] xi^e, folded with xi^{q/2} = -1."""
        counts = np.asarray(counts, dtype=np.int64)
        half = q // 2
        return cls(q, (counts[:half] - counts[half:]).tolist())

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def as_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return self.coords[0]

    def conjugate(self) -> "CyclotomicInt":
        # xi^{-t} = -xi^{q/2 - t}
        conj = [0] * self.half
        conj[0] = self.coords[0]
        for t in range(1, self.half):
            conj[self.half - t] = -self.coords[t]
        return CyclotomicInt(self.q, conj)

    def to_complex(self) -> complex:
        powers = np.exp(2j * np.pi * np.arange(self.half) / self.q)
        return complex(np.dot(np.array(self.coords, dtype=float), powers))

    def _coerce(self, other: object) -> Optional["CyclotomicInt"]:
        if isinstance(other, CyclotomicInt):
            if other.q != self.q:
                raise ValueError(f"cannot combine elements of Z[xi_{self.q}] and Z[xi_{other.q}]")
            return other
        if isinstance(other, (int, np.integer)):
            return CyclotomicInt.from_int(self.q, int(other))
        return None

    def __add__(self, other: Union["CyclotomicInt", int]) -> "CyclotomicInt":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return CyclotomicInt(self.q, [a + b for a, b in zip(self.coords, rhs.coords)])

    def __radd__(self, other: int) -> "CyclotomicInt":
        return self + other

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(self.q, [-a for a in self.coords])

    def __sub__(self, other: Union["CyclotomicInt", int]) -> "CyclotomicInt":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __mul__(self, other: Union["CyclotomicInt", int]) -> "CyclotomicInt":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        half = self.half
        product = [0] * half
        for s, a in enumerate(self.coords):
            if not a:
                continue
            for t, b in enumerate(rhs.coords):
                if not b:
                    continue
                u = s + t
                if u < half:
                    product[u] += a * b
                else:
                    product[u - half] -= a * b
        return CyclotomicInt(self.q, product)

    def __rmul__(self, other: int) -> "CyclotomicInt":
        return self * other

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CyclotomicInt):
            return self.q == other.q and self.coords == other.coords
        if isinstance(other, (int, np.integer)):
            return self.is_rational() and self.coords[0] == int(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.q, self.coords))

    def __repr__(self) -> str:
        return f"CyclotomicInt(q={self.q}, {list(self.coords)})"

    def __str__(self) -> str:
        terms = []
        for t, c in enumerate(self.coords):
            if not c:
                continue
            terms.append(str(c) if t == 0 else f"{c}*xi^{t}")
        return " + ".join(terms) if terms else "0"


CorrelationValue = Union[CyclotomicInt, complex]


def _is_zero(value: CorrelationValue, scale: int = 1) -> bool:
    if isinstance(value, CyclotomicInt):
        return value.is_zero()
    return abs(value) <= FLOAT_TOLERANCE * max(1, scale)


def _zero_value(q: int) -> CorrelationValue:
    return CyclotomicInt.zero(q) if is_power_of_two(q) else 0j


def _check_pair(a: RestrictedVector, b: RestrictedVector) -> None:
    if a.n != b.n:
        raise ValueError(f"vectors differ in length: {a.n} vs {b.n}")
    if a.q != b.q:
        raise ValueError(f"vectors differ in modulus: {a.q} vs {b.q}")


def _aligned(a: RestrictedVector, b: RestrictedVector, shift: int):
    """Slices pairing A_{i+shift} with B_i over the overlap."""
    n = a.n
    if shift >= 0:
        return slice(shift, n), slice(0, n - shift)
    return slice(0, n + shift), slice(-shift, n)


def cross_correlation(a: RestrictedVector, b: RestrictedVector, shift: int) -> CorrelationValue:
    """
    C(A, B)(l) = sum_i A_{i+l} conj(B_i), zero once |l| >= n.

    Entries outside either support contribute nothing. Returns a
    CyclotomicInt when q is a power of two and a complex number otherwise.

    Examples:
        >>> A = RestrictedVector(2, [0, 0, 0, 1])
        >>> B = RestrictedVector(2, [0, 1, 0, 0])
        >>> cross_correlation(A, B, 1) == -1
        True
    """
    _check_pair(a, b)
    if abs(shift) >= a.n:
        return _zero_value(a.q)

    sa, sb = _aligned(a, b, shift)
    mask = a.support[sa] & b.support[sb]
    if is_power_of_two(a.q):
        exponents = (a.exponents[sa] - b.exponents[sb])[mask] % a.q
        return CyclotomicInt.from_histogram(a.q, np.bincount(exponents, minlength=a.q))
    terms = a.to_complex()[sa] * np.conj(b.to_complex()[sb])
    return complex(terms.sum())


def auto_correlation(a: RestrictedVector, shift: int) -> CorrelationValue:
    """A(A)(l) = C(A, A)(l)."""
    return cross_correlation(a, a, shift)


@dataclass
class CorrelationProfile:
    """All values C(A, B)(l) for -n < l < n."""

    n: int
    q: int
    values: dict[int, CorrelationValue] = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return is_power_of_two(self.q)

    def __getitem__(self, shift: int) -> CorrelationValue:
        if abs(shift) >= self.n:
            return _zero_value(self.q)
        return self.values[shift]

    def shifts(self) -> range:
        return range(-self.n + 1, self.n)

    def __add__(self, other: "CorrelationProfile") -> "CorrelationProfile":
        if (self.n, self.q) != (other.n, other.q):
            raise ValueError("profiles differ in length or modulus")
        return CorrelationProfile(
            self.n, self.q, {s: self[s] + other[s] for s in self.shifts()}
        )

    def rows(self) -> list[list]:
        """CSV-ready rows: (l, coord_0, ...) in exact mode, (l, re, im) otherwise."""
        rows = []
        for s in self.shifts():
            value = self[s]
            if isinstance(value, CyclotomicInt):
                rows.append([s, *value.coords])
            else:
                rows.append([s, value.real, value.imag])
        return rows

    def header(self) -> list[str]:
        if self.exact:
            return ["shift", *(f"coord_{t}" for t in range(self.q // 2))]
        return ["shift", "re", "im"]

    def write_csv(self, stream: IO[str]) -> None:
        writer = csv.writer(stream)
        writer.writerow(self.header())
        writer.writerows(self.rows())


def correlation_profile(
    a: RestrictedVector, b: Optional[RestrictedVector] = None
) -> CorrelationProfile:
    """
    Every C(A, B)(l) at once; B defaults to A.

    Small exact inputs are handled with one histogram over all index pairs
    keyed by (i - j, a_i - b_j); larger ones go shift by shift.
    """
    b = a if b is None else b
    _check_pair(a, b)
    n, q = a.n, a.q
    span = 2 * n - 1

    if is_power_of_two(q) and span * q <= _HISTOGRAM_BIN_LIMIT and n * n <= _HISTOGRAM_PAIR_LIMIT:
        ia = np.flatnonzero(a.support)
        ib = np.flatnonzero(b.support)
        shifts = (ia[:, None] - ib[None, :]) + (n - 1)
        exponents = (a.exponents[ia][:, None] - b.exponents[ib][None, :]) % q
        counts = np.bincount((shifts * q + exponents).ravel(), minlength=span * q)
        counts = counts.reshape(span, q)
        half = q // 2
        coords = counts[:, :half] - counts[:, half:]
        values = {
            s: CyclotomicInt(q, coords[s + n - 1].tolist()) for s in range(-n + 1, n)
        }
        return CorrelationProfile(n, q, values)

    logger.debug(f"Computing correlation profile shift by shift (n={n}, q={q})")
    return CorrelationProfile(
        n, q, {s: cross_correlation(a, b, s) for s in range(-n + 1, n)}
    )


@dataclass
class ComplementaryCheck:
    """Outcome of a complementary-set test with the first failing shift, if any."""

    is_complementary: bool
    shift: Optional[int] = None
    value: Optional[CorrelationValue] = None

    def __bool__(self) -> bool:
        return self.is_complementary


def is_complementary_set(members: Sequence[RestrictedVector]) -> ComplementaryCheck:
    """
    Whether the aperiodic autocorrelations of the members sum to zero at every
    nonzero shift.

    Only positive shifts are inspected since A(A)(-l) is the conjugate of
    A(A)(l).

    Raises:
        ValueError: on an empty set or members of different shape.
    """
    if not members:
        raise ValueError("complementary set must be nonempty")
    first = members[0]
    for member in members[1:]:
        _check_pair(first, member)

    total = correlation_profile(first)
    for member in members[1:]:
        total = total + correlation_profile(member)

    for s in range(1, first.n):
        if not _is_zero(total[s], first.n * len(members)):
            return ComplementaryCheck(False, s, total[s])
    return ComplementaryCheck(True)


def restriction_parts(
    f: GeneralizedBooleanFunction, x: Sequence[int]
) -> list[RestrictedVector]:
    """Restricted polyphase vectors F|_{x=d} for every d, ordered by d."""
    return [restrict(f, x, d)[1] for d in all_bit_vectors(len(x))]


def verify_restriction_identity(f: GeneralizedBooleanFunction, x: Sequence[int], shift: int) -> bool:
    """
    Check the restriction expansion of an autocorrelation:

        A(F)(l) = sum_d A(F|_{x=d})(l) + sum_{d1 != d2} C(F|_{x=d1}, F|_{x=d2})(l)
    """
    left = auto_correlation(f.polyphase(), shift)
    parts = restriction_parts(f, x)
    # d1 == d2 terms are the autocorrelations of the parts
    right = _zero_value(f.q)
    for part_1 in parts:
        for part_2 in parts:
            right = right + cross_correlation(part_1, part_2, shift)
    if isinstance(left, CyclotomicInt):
        return left == right
    return _is_zero(left - right, 1 << f.m)
