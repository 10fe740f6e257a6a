"""
Generalized Boolean functions f: Z_2^m -> Z_q.

A function is stored by its algebraic normal form (ANF): a table of 2^m
coefficients where entry i multiplies the monomial prod_j x_j^{i_j} and
(i_0 i_1 ... i_{m-1}) is the LSB-first binary expansion i = sum_j i_j 2^j.
The same convention indexes truth tables, so the value of f at the point
with binary expansion i sits at position i of its Z_q-valued vector.

Evaluation and interpolation are the binary zeta and Moebius transforms
over Z_q. Restriction fixes a subset of variables; reconstruction glues
the restricted pieces back together with indicator products.

All values are immutable and every operation is pure.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

import numpy as np

from app.config.settings import settings


logger = logging.getLogger(__name__)

Bits = tuple[int, ...]


# ============================================================================
# Shared tables
# ============================================================================

def _read_only(values: np.ndarray) -> np.ndarray:
    values.setflags(write=False)
    return values


@lru_cache(maxsize=None)
def monomial_orders(m: int) -> np.ndarray:
    """Hamming weight of every index 0 .. 2^m - 1 (the order of monomial i)."""
    indices = np.arange(1 << m, dtype=np.int64)
    orders = np.zeros(1 << m, dtype=np.int64)
    for j in range(m):
        orders += (indices >> j) & 1
    return _read_only(orders)


@lru_cache(maxsize=None)
def bit_table(m: int) -> np.ndarray:
    """Array of shape (m, 2^m) whose row j holds bit j of every index."""
    indices = np.arange(1 << m, dtype=np.int64)
    table = np.array([(indices >> j) & 1 for j in range(m)], dtype=np.int64).reshape(m, 1 << m)
    return _read_only(table)


def bits_of(d: int, k: int) -> Bits:
    """LSB-first binary expansion (d_0, ..., d_{k-1}) of the integer d."""
    return tuple((d >> beta) & 1 for beta in range(k))


def all_bit_vectors(k: int) -> list[Bits]:
    """All d in Z_2^k, ordered by the integer whose expansion they are."""
    return [bits_of(d, k) for d in range(1 << k)]


def _check_modulus(q: int) -> None:
    if q < 2 or q % 2:
        raise ValueError(f"modulus q must be even and at least 2, got {q}")
    if q > settings.MAX_MODULUS:
        raise ValueError(f"modulus q must not exceed {settings.MAX_MODULUS}, got {q}")


def _check_variables(m: int) -> None:
    if m < 0 or m > settings.MAX_VARIABLES:
        raise ValueError(f"variable count m must lie in [0, {settings.MAX_VARIABLES}], got {m}")


def _log2_length(length: int) -> int:
    if length < 1 or length & (length - 1):
        raise ValueError(f"vector length {length} is not a power of two")
    return length.bit_length() - 1


def _transform(table: np.ndarray, m: int, q: int, sign: int) -> np.ndarray:
    """Binary zeta (sign=+1) or Moebius (sign=-1) transform mod q along the last axis."""
    out = np.array(table, dtype=np.int64)
    for j in range(m):
        view = out.reshape(out.shape[:-1] + (-1, 2, 1 << j))
        view[..., 1, :] += sign * view[..., 0, :]
        view[..., 1, :] %= q
    return out % q


def evaluate_rows(coeffs: np.ndarray, m: int, q: int) -> np.ndarray:
    """Truth tables of a 2-D batch of ANF tables, one per row."""
    return _transform(np.atleast_2d(coeffs), m, q, +1)


def interpolate_rows(words: np.ndarray, m: int, q: int) -> np.ndarray:
    """ANF tables of a 2-D batch of truth tables, one per row."""
    return _transform(np.mod(np.atleast_2d(words), q), m, q, -1)


# ============================================================================
# Vectors
# ============================================================================

class ZqVector:
    """The Z_q-valued vector (f_0, ..., f_{n-1}) associated with a function."""

    __slots__ = ("q", "values")

    def __init__(self, q: int, values: Union[Sequence[int], np.ndarray]):
        _check_modulus(q)
        arr = np.array(values, dtype=np.int64).reshape(-1)
        if arr.size and (arr.min() < 0 or arr.max() >= q):
            raise ValueError(f"entries must lie in [0, {q})")
        self.q = q
        self.values = _read_only(arr)

    @classmethod
    def reduce(cls, q: int, values: Union[Sequence[int], np.ndarray]) -> "ZqVector":
        """Build a vector from arbitrary integers, reducing each entry mod q."""
        return cls(q, np.mod(np.asarray(values, dtype=np.int64), q))

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[int]:
        return (int(v) for v in self.values)

    def tolist(self) -> list[int]:
        return [int(v) for v in self.values]

    def _check_compatible(self, other: "ZqVector") -> None:
        if self.q != other.q or self.n != other.n:
            raise ValueError("vectors differ in modulus or length")

    def __add__(self, other: "ZqVector") -> "ZqVector":
        self._check_compatible(other)
        return ZqVector(self.q, (self.values + other.values) % self.q)

    def __sub__(self, other: "ZqVector") -> "ZqVector":
        self._check_compatible(other)
        return ZqVector(self.q, (self.values - other.values) % self.q)

    def __neg__(self) -> "ZqVector":
        return ZqVector(self.q, (-self.values) % self.q)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZqVector):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.q, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"ZqVector(q={self.q}, {self.tolist()})"


class RestrictedVector:
    """
    Polyphase vector xi^f with a support mask.

    Entries outside the support are zero and are ignored by all correlation
    arithmetic. The full polyphase vector is the case where every support
    bit is set.
    """

    __slots__ = ("q", "exponents", "support")

    def __init__(
        self,
        q: int,
        exponents: Union[Sequence[int], np.ndarray],
        support: Optional[Union[Sequence[bool], np.ndarray]] = None,
    ):
        _check_modulus(q)
        exps = np.mod(np.array(exponents, dtype=np.int64).reshape(-1), q)
        mask = (
            np.ones(exps.size, dtype=bool)
            if support is None
            else np.array(support, dtype=bool).reshape(-1)
        )
        if mask.size != exps.size:
            raise ValueError("support mask and exponent table differ in length")
        exps[~mask] = 0
        self.q = q
        self.exponents = _read_only(exps)
        self.support = _read_only(mask)

    @property
    def n(self) -> int:
        return int(self.exponents.size)

    def __len__(self) -> int:
        return self.n

    @property
    def weight(self) -> int:
        """Number of positions inside the support."""
        return int(self.support.sum())

    @property
    def is_full(self) -> bool:
        return bool(self.support.all())

    def to_complex(self) -> np.ndarray:
        """Complex entries xi^{e_i}, zero outside the support."""
        symbols = np.exp(2j * np.pi * self.exponents / self.q)
        return np.where(self.support, symbols, 0.0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RestrictedVector):
            return NotImplemented
        return (
            self.q == other.q
            and np.array_equal(self.support, other.support)
            and np.array_equal(self.exponents, other.exponents)
        )

    def __hash__(self) -> int:
        return hash((self.q, self.exponents.tobytes(), self.support.tobytes()))

    def __repr__(self) -> str:
        return f"RestrictedVector(q={self.q}, n={self.n}, weight={self.weight})"


def polyphase(vector: ZqVector) -> RestrictedVector:
    """Full-support polyphase vector F = xi^f."""
    return RestrictedVector(vector.q, vector.values)


# ============================================================================
# Functions
# ============================================================================

class GeneralizedBooleanFunction:
    """
    A generalized Boolean function Z_2^m -> Z_q in algebraic normal form.

    Coefficients are reduced mod q on construction.
    """

    __slots__ = ("m", "q", "coeffs")

    def __init__(self, m: int, q: int, coeffs: Union[Sequence[int], np.ndarray]):
        _check_variables(m)
        _check_modulus(q)
        table = np.mod(np.array(coeffs, dtype=np.int64).reshape(-1), q)
        if table.size != 1 << m:
            raise ValueError(f"ANF table must have 2^{m} = {1 << m} entries, got {table.size}")
        self.m = m
        self.q = q
        self.coeffs = _read_only(table)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, m: int, q: int) -> "GeneralizedBooleanFunction":
        return cls(m, q, np.zeros(1 << m, dtype=np.int64))

    @classmethod
    def constant(cls, m: int, q: int, c: int) -> "GeneralizedBooleanFunction":
        return cls.monomial(m, q, 0, c)

    @classmethod
    def monomial(cls, m: int, q: int, index: int, coeff: int = 1) -> "GeneralizedBooleanFunction":
        """coeff times the monomial whose variables are the set bits of index."""
        if index < 0 or index >= 1 << m:
            raise ValueError(f"monomial index {index} out of range for m={m}")
        table = np.zeros(1 << m, dtype=np.int64)
        table[index] = coeff
        return cls(m, q, table)

    @classmethod
    def variable(cls, m: int, q: int, j: int) -> "GeneralizedBooleanFunction":
        if j < 0 or j >= m:
            raise ValueError(f"variable x{j} out of range for m={m}")
        return cls.monomial(m, q, 1 << j)

    @classmethod
    def from_terms(
        cls, m: int, q: int, terms: Mapping[Iterable[int], int]
    ) -> "GeneralizedBooleanFunction":
        """
        Build from {variables: coefficient}, e.g. {(0, 1): 1, (2,): 1} is x0x1 + x2.

        Repeated monomials accumulate; the empty tuple is the constant term.
        """
        table = np.zeros(1 << m, dtype=np.int64)
        for variables, coeff in terms.items():
            index = 0
            for j in variables:
                if j < 0 or j >= m:
                    raise ValueError(f"variable x{j} out of range for m={m}")
                index |= 1 << j
            table[index] += coeff
        return cls(m, q, table)

    @classmethod
    def from_dict(cls, data: Mapping[str, object]) -> "GeneralizedBooleanFunction":
        """Inverse of to_dict: {"m": ..., "q": ..., "coeffs": [...]}."""
        return cls(int(data["m"]), int(data["q"]), list(data["coeffs"]))  # type: ignore[arg-type]

    def to_dict(self) -> dict:
        return {"m": self.m, "q": self.q, "coeffs": [int(c) for c in self.coeffs]}

    # -- queries ------------------------------------------------------------

    def evaluate(self) -> ZqVector:
        return evaluate(self)

    def order(self) -> int:
        return order(self)

    def restrict(self, x: Sequence[int], d: Sequence[int]) -> tuple["GeneralizedBooleanFunction", RestrictedVector]:
        return restrict(self, x, d)

    def polyphase(self) -> RestrictedVector:
        return polyphase(evaluate(self))

    def depends_on(self, j: int) -> bool:
        """Whether some monomial with a nonzero coefficient contains x_j."""
        return bool(np.any(self.coeffs[bit_table(self.m)[j] == 1]))

    def coefficient(self, variables: Iterable[int]) -> int:
        index = 0
        for j in variables:
            index |= 1 << j
        return int(self.coeffs[index])

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "GeneralizedBooleanFunction") -> None:
        if self.m != other.m or self.q != other.q:
            raise ValueError(
                f"functions differ in shape: (m={self.m}, q={self.q}) vs (m={other.m}, q={other.q})"
            )

    def __add__(self, other: Union["GeneralizedBooleanFunction", int]) -> "GeneralizedBooleanFunction":
        if isinstance(other, (int, np.integer)):
            return self + GeneralizedBooleanFunction.constant(self.m, self.q, int(other))
        if not isinstance(other, GeneralizedBooleanFunction):
            return NotImplemented
        self._check_compatible(other)
        return GeneralizedBooleanFunction(self.m, self.q, self.coeffs + other.coeffs)

    def __radd__(self, other: int) -> "GeneralizedBooleanFunction":
        return self + other

    def __neg__(self) -> "GeneralizedBooleanFunction":
        return GeneralizedBooleanFunction(self.m, self.q, -self.coeffs)

    def __sub__(self, other: Union["GeneralizedBooleanFunction", int]) -> "GeneralizedBooleanFunction":
        return self + (-other)

    def __rsub__(self, other: int) -> "GeneralizedBooleanFunction":
        return (-self) + other

    def __mul__(self, other: Union["GeneralizedBooleanFunction", int]) -> "GeneralizedBooleanFunction":
        if isinstance(other, (int, np.integer)):
            return GeneralizedBooleanFunction(self.m, self.q, self.coeffs * (int(other) % self.q))
        if not isinstance(other, GeneralizedBooleanFunction):
            return NotImplemented
        self._check_compatible(other)
        # pointwise on truth tables; x^2 = x for Boolean variables
        product = (evaluate(self).values * evaluate(other).values) % self.q
        return interpolate(ZqVector(self.q, product), self.m, self.q)

    def __rmul__(self, other: int) -> "GeneralizedBooleanFunction":
        return self * other

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneralizedBooleanFunction):
            return NotImplemented
        return self.m == other.m and self.q == other.q and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.m, self.q, self.coeffs.tobytes()))

    def __str__(self) -> str:
        orders = monomial_orders(self.m)
        terms = []
        for index in sorted(np.flatnonzero(self.coeffs), key=lambda i: (orders[i], i)):
            coeff = int(self.coeffs[index])
            name = "".join(f"x{j}" for j in range(self.m) if (index >> j) & 1)
            if not name:
                terms.append(str(coeff))
            elif coeff == 1:
                terms.append(name)
            else:
                terms.append(f"{coeff}{name}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"GeneralizedBooleanFunction(m={self.m}, q={self.q}, {self})"


GBF = GeneralizedBooleanFunction


# ============================================================================
# Operations
# ============================================================================

def evaluate(f: GeneralizedBooleanFunction) -> ZqVector:
    """
    Truth table of f under LSB-first indexing.

    Examples:
        >>> evaluate(GBF.from_terms(2, 2, {(0, 1): 1})).tolist()
        [0, 0, 0, 1]
    """
    return ZqVector(f.q, _transform(f.coeffs, f.m, f.q, +1))


def interpolate(
    v: Union[ZqVector, Sequence[int]],
    m: Optional[int] = None,
    q: Optional[int] = None,
) -> GeneralizedBooleanFunction:
    """
    The unique ANF whose truth table is v (binary Moebius transform over Z_q).

    Raises:
        ValueError: if the length of v is not 2^m.
    """
    if isinstance(v, ZqVector):
        values, modulus = v.values, v.q
    else:
        if q is None:
            raise ValueError("modulus q is required for a plain sequence")
        values, modulus = np.mod(np.asarray(v, dtype=np.int64), q), q
    if q is not None and q != modulus:
        raise ValueError(f"vector modulus {modulus} does not match q={q}")
    width = _log2_length(int(values.size))
    if m is not None and m != width:
        raise ValueError(f"vector length {values.size} is not 2^{m}")
    return GeneralizedBooleanFunction(width, modulus, _transform(values, width, modulus, -1))


def _check_restriction(m: int, x: Sequence[int], d: Sequence[int]) -> None:
    if len(x) != len(d):
        raise ValueError(f"restriction has {len(x)} variables but {len(d)} values")
    if len(set(x)) != len(x):
        raise ValueError(f"duplicate restriction indices: {list(x)}")
    if any(b <= a for a, b in zip(x, x[1:])):
        raise ValueError(f"restriction indices must be strictly increasing: {list(x)}")
    if any(j < 0 or j >= m for j in x):
        raise ValueError(f"restriction indices must lie in [0, {m}): {list(x)}")
    if any(bit not in (0, 1) for bit in d):
        raise ValueError(f"restriction values must be bits: {list(d)}")


def support_mask(m: int, x: Sequence[int], d: Sequence[int]) -> np.ndarray:
    """Indices i whose bits at positions x equal d."""
    mask = np.ones(1 << m, dtype=bool)
    bits = bit_table(m)
    for j, bit in zip(x, d):
        mask &= bits[j] == bit
    return mask


def restrict(
    f: GeneralizedBooleanFunction,
    x: Sequence[int],
    d: Sequence[int],
) -> tuple[GeneralizedBooleanFunction, RestrictedVector]:
    """
    Substitute x_{j_alpha} = d_alpha.

    Returns f|_{x=d}, still stored in m variables with the restricted ones
    eliminated, and the length-2^m restricted polyphase vector whose support
    is exactly the indices matching d. With k = 0 the result is f and its
    full polyphase vector.
    """
    x, d = tuple(int(j) for j in x), tuple(int(b) for b in d)
    _check_restriction(f.m, x, d)
    if not x:
        return f, f.polyphase()

    table = np.array(f.coeffs, dtype=np.int64)
    for j, bit in zip(x, d):
        view = table.reshape(-1, 2, 1 << j)
        if bit:
            view[:, 0, :] += view[:, 1, :]
        view[:, 1, :] = 0
    restricted = GeneralizedBooleanFunction(f.m, f.q, table)

    mask = support_mask(f.m, x, d)
    vector = RestrictedVector(f.q, evaluate(f).values, mask)
    return restricted, vector


def indicator(m: int, q: int, x: Sequence[int], d: Sequence[int]) -> GeneralizedBooleanFunction:
    """prod_i x_{j_i}^{d_i} (1 - x_{j_i})^{1 - d_i}."""
    _check_restriction(m, tuple(x), tuple(d))
    term = GeneralizedBooleanFunction.constant(m, q, 1)
    for j, bit in zip(x, d):
        literal = GeneralizedBooleanFunction.variable(m, q, j)
        term = term * (literal if bit else 1 - literal)
    return term


def reconstruct(
    parts: Mapping[Bits, GeneralizedBooleanFunction],
    x: Sequence[int],
) -> GeneralizedBooleanFunction:
    """
    f = sum_d f|_{x=d} * prod_i x_{j_i}^{d_i} (1 - x_{j_i})^{1 - d_i}.

    Raises:
        ValueError: if some d in Z_2^k has no part, or a part depends on a
            restricted variable.
    """
    x = tuple(int(j) for j in x)
    keys = all_bit_vectors(len(x))
    missing = [d for d in keys if d not in parts]
    if missing:
        raise ValueError(f"missing restricted parts for d = {missing[0]}")
    first = parts[keys[0]]
    total = GeneralizedBooleanFunction.zero(first.m, first.q)
    for d in keys:
        part = parts[d]
        for j in x:
            if part.depends_on(j):
                raise ValueError(f"part for d = {d} depends on restricted variable x{j}")
        total = total + part * indicator(part.m, part.q, x, d)
    return total


def order(f: GeneralizedBooleanFunction) -> int:
    """Highest order of a monomial with nonzero coefficient; 0 for constants."""
    nonzero = np.flatnonzero(f.coeffs)
    if nonzero.size == 0:
        return 0
    return int(monomial_orders(f.m)[nonzero].max())
