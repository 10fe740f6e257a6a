"""
Complementary sequence sets and the coset codes built from them.

A function whose restrictions f|_{x_J = d} are all of the quadratic path
form

    (q/2) sum_alpha x_{pi(alpha)} x_{pi(alpha+1)} + sum_i c_i x_i + c

on the free variables I spawns a complementary set of size 2^{k+1}, so the
PMEPR of its polyphase vector is at most 2^{k+1}. The code classes pair
such quadratic coset representatives b (built from one path per d) with
the linear codes A = L(k, m) intersected with ZRM^p(r, m).

Paths are stored canonically: a path and its reversal give the same
quadratic form, so only orderings whose first vertex is smaller than the
last are used. For distinct vertices that is the same as being
lexicographically smaller than the reversal.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from app.config.settings import settings
from app.models.params import CodeClass, ConstructionParams, IndexSplit, ZrmParams
from app.services.codes import (
    Generator,
    LinearCode,
    zrm_coefficient_constraint,
    zrm_distances,
    zrm_label,
)
from app.services.errors import (
    CodeParameterError,
    ConstructionError,
    EnumerationCapExceeded,
    NotACodewordError,
    PayloadLengthError,
)
from app.services.gbf import (
    Bits,
    GeneralizedBooleanFunction,
    RestrictedVector,
    ZqVector,
    all_bit_vectors,
    evaluate,
    interpolate,
    monomial_orders,
    reconstruct,
    restrict,
    support_mask,
)


logger = logging.getLogger(__name__)

Path = tuple[int, ...]


def _zrm(h: int, p: int, r: int, m: int) -> ZrmParams:
    try:
        return ZrmParams(h=h, p=p, r=r, m=m)
    except ValidationError as exc:
        raise CodeParameterError(
            f"invalid ZRM parameters h={h}, p={p}, r={r}, m={m}: {exc.errors()[0]['msg']}"
        ) from exc


# ============================================================================
# Path forms
# ============================================================================

@dataclass(frozen=True)
class PathForm:
    """Hamiltonian path on I found in a restricted quadratic part."""

    order: Path

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.order[0], self.order[-1]


def canonical_path(order: Sequence[int]) -> Path:
    path = tuple(order)
    return min(path, path[::-1])


def path_function(m: int, q: int, path: Sequence[int]) -> GeneralizedBooleanFunction:
    """(q/2) sum_alpha x_{path[alpha]} x_{path[alpha+1]}."""
    terms = {(u, v): q // 2 for u, v in zip(path, path[1:])}
    return GeneralizedBooleanFunction.from_terms(m, q, terms)


def is_path_form(
    f: GeneralizedBooleanFunction, split: IndexSplit, d: Sequence[int]
) -> Optional[PathForm]:
    """
    Decide whether f|_{x_J = d} is (q/2) * (path on I) + affine.

    Returns the path in canonical orientation, or None when some monomial of
    order three or more survives, a quadratic coefficient differs from q/2,
    or the quadratic edges do not form one Hamiltonian path on I. A single
    free variable is a path of one vertex.
    """
    restricted, _ = restrict(f, split.J, d)
    coeffs = restricted.coeffs
    orders = monomial_orders(f.m)
    nonzero = np.flatnonzero(coeffs)

    if np.any(orders[nonzero] >= 3):
        return None
    quadratic = nonzero[orders[nonzero] == 2]
    if np.any(coeffs[quadratic] != f.q // 2):
        return None

    vertices = split.I
    edges = [tuple(j for j in range(f.m) if (index >> j) & 1) for index in quadratic.tolist()]
    if len(vertices) == 1:
        return PathForm(vertices) if not edges else None
    if len(edges) != len(vertices) - 1:
        return None

    neighbours: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in edges:
        neighbours[u].append(v)
        neighbours[v].append(u)
    if any(len(adjacent) > 2 for adjacent in neighbours.values()):
        return None
    ends = [v for v in vertices if len(neighbours[v]) == 1]
    if len(ends) != 2:
        return None

    order = [ends[0]]
    previous = None
    while len(order) < len(vertices):
        step = [v for v in neighbours[order[-1]] if v != previous]
        if not step:
            return None
        previous = order[-1]
        order.append(step[0])
    if len(set(order)) != len(vertices):
        return None
    return PathForm(canonical_path(order))


# ============================================================================
# Complementary pairs and sets
# ============================================================================

def golay_pair(
    f: GeneralizedBooleanFunction,
    split: IndexSplit,
    d: Sequence[int],
    a: int,
    c_prime: int = 0,
) -> tuple[RestrictedVector, RestrictedVector]:
    """
    Restrictions at x_J = d of f and f + (q/2) x_a + c'.

    Raises:
        ConstructionError: if f|_{x_J = d} is not of path form or a is not
            an endpoint of its path.
    """
    form = is_path_form(f, split, d)
    if form is None:
        raise ConstructionError(f"restriction at d={tuple(d)} is not a quadratic path form")
    if a not in form.endpoints:
        raise ConstructionError(f"x{a} is not an endpoint of the path {form.order}")
    partner = f + GeneralizedBooleanFunction.variable(f.m, f.q, a) * (f.q // 2) + c_prime
    return restrict(f, split.J, d)[1], restrict(partner, split.J, d)[1]


def selector_e(
    a_map: Mapping[Bits, int], split: IndexSplit, q: int
) -> GeneralizedBooleanFunction:
    """
    e = sum_d x_{a_d} prod_alpha x_{j_alpha}^{d_alpha} (1 - x_{j_alpha})^{1 - d_alpha}.

    Raises:
        ConstructionError: if some a_d is missing or not a free variable.
    """
    parts = {}
    for d in all_bit_vectors(split.k):
        a = a_map.get(d)
        if a is None or a not in split.I:
            raise ConstructionError(f"a_d for d={d} must be one of the free variables {split.I}")
        parts[d] = GeneralizedBooleanFunction.variable(split.m, q, a)
    return reconstruct(parts, split.J)


def _check_a_map(
    f: GeneralizedBooleanFunction, split: IndexSplit, a_map: Mapping[Bits, int]
) -> None:
    for d in all_bit_vectors(split.k):
        form = is_path_form(f, split, d)
        if form is None:
            raise ConstructionError(f"restriction at d={d} is not a quadratic path form")
        if a_map.get(d) not in form.endpoints:
            raise ConstructionError(
                f"a_d for d={d} must be an endpoint of the path {form.order}"
            )


def complementary_set_functions(
    f: GeneralizedBooleanFunction, split: IndexSplit, a_map: Mapping[Bits, int]
) -> list[GeneralizedBooleanFunction]:
    """
    The 2^{k+1} functions f + (q/2)(sum_alpha c_alpha x_{j_alpha} + c' e).

    Ordered by c' (fast) then by c read as an LSB-first integer.
    """
    _check_a_map(f, split, a_map)
    half = f.q // 2
    e = selector_e(a_map, split, f.q)
    members = []
    for c in all_bit_vectors(split.k):
        shift = f
        for bit, j in zip(c, split.J):
            if bit:
                shift = shift + GeneralizedBooleanFunction.variable(f.m, f.q, j) * half
        members.append(shift)
        members.append(shift + e * half)
    return members


def complementary_set(
    f: GeneralizedBooleanFunction, split: IndexSplit, a_map: Mapping[Bits, int]
) -> list[RestrictedVector]:
    """Polyphase vectors of complementary_set_functions."""
    return [g.polyphase() for g in complementary_set_functions(f, split, a_map)]


def default_a_map(f: GeneralizedBooleanFunction, split: IndexSplit) -> dict[Bits, int]:
    """First endpoint of each restriction's path."""
    a_map = {}
    for d in all_bit_vectors(split.k):
        form = is_path_form(f, split, d)
        if form is None:
            raise ConstructionError(f"restriction at d={d} is not a quadratic path form")
        a_map[d] = form.endpoints[0]
    return a_map


def certify_pmepr(f: GeneralizedBooleanFunction, split: IndexSplit) -> Optional[int]:
    """2^{k+1} when every restriction is of path form, else None."""
    for d in all_bit_vectors(split.k):
        if is_path_form(f, split, d) is None:
            return None
    return 1 << (split.k + 1)


@dataclass(frozen=True)
class PmeprCertificate:
    bound: int
    J: tuple[int, ...]


def search_certificate(f: GeneralizedBooleanFunction, k_max: int) -> Optional[PmeprCertificate]:
    """Smallest bound 2^{k+1} certified by some J with |J| = k <= k_max."""
    for k in range(0, min(k_max, f.m - 1) + 1):
        for J in itertools.combinations(range(f.m), k):
            bound = certify_pmepr(f, IndexSplit(m=f.m, J=J))
            if bound is not None:
                logger.debug(f"Certified PMEPR <= {bound} with J={J}")
                return PmeprCertificate(bound, J)
    return None


def golay_family(m: int, h: int, cap_log2: Optional[int] = None) -> Iterator[ZqVector]:
    """
    The (m!/2) q^{m+1} words (q/2) * path + affine over Z_{2^h}, each the
    first member of a complementary pair.
    """
    code = class_code(ConstructionParams(code_class=CodeClass.CLASS_II, h=h, p=0, k=0, r=1, m=m))
    for _, batch in code.iter_words(cap_log2=cap_log2):
        for row in batch:
            yield ZqVector(code.q, row)


def deinterleave(word: ZqVector, split: IndexSplit) -> dict[Bits, ZqVector]:
    """The 2^k sub-words of length 2^{m-k} read off at x_J = d."""
    if word.n != 1 << split.m:
        raise ValueError(f"word length {word.n} does not match m={split.m}")
    return {
        d: ZqVector(word.q, word.values[support_mask(split.m, split.J, d)])
        for d in all_bit_vectors(split.k)
    }


# ============================================================================
# Canonical path enumeration
# ============================================================================

def path_count(size: int) -> int:
    """Number of canonical paths on `size` vertices, size!/2 for size >= 2."""
    return 1 if size == 1 else math.factorial(size) // 2


def _completions(remaining: int, above_first: int) -> int:
    # orderings of `remaining` vertices whose last one exceeds the first vertex
    return above_first * math.factorial(remaining - 1)


def unrank_path(vertices: Sequence[int], rank: int) -> Path:
    """The rank-th canonical path on `vertices` in lexicographic order."""
    pool = sorted(vertices)
    if rank < 0 or rank >= path_count(len(pool)):
        raise IndexError(f"path rank {rank} out of range for {len(pool)} vertices")
    if len(pool) == 1:
        return tuple(pool)

    order: list[int] = []
    for position in range(len(pool)):
        for candidate in pool:
            rest = [v for v in pool if v != candidate]
            first = order[0] if order else candidate
            if rest:
                count = _completions(len(rest), sum(v > first for v in rest))
            else:
                count = 1 if candidate > first else 0
            if rank < count:
                order.append(candidate)
                pool = rest
                break
            rank -= count
    return tuple(order)


def rank_path(vertices: Sequence[int], path: Sequence[int]) -> int:
    """Inverse of unrank_path; the path must be canonical."""
    pool = sorted(vertices)
    path = tuple(path)
    if sorted(path) != pool or path != canonical_path(path):
        raise ValueError(f"{path} is not a canonical path on {pool}")
    if len(pool) == 1:
        return 0

    rank = 0
    first = path[0]
    for position, chosen in enumerate(path):
        for candidate in pool:
            if candidate == chosen:
                break
            rest = [v for v in pool if v != candidate]
            head = candidate if position == 0 else first
            if rest:
                rank += _completions(len(rest), sum(v > head for v in rest))
            elif candidate > head:
                rank += 1
        pool = [v for v in pool if v != chosen]
    return rank


# ============================================================================
# The linear codes L and A
# ============================================================================

def _l_generators(split: IndexSplit) -> list[tuple[int, int]]:
    """(monomial, order of its J-part) for x_S and x_i x_S, S subset of J."""
    monomials = []
    for subset in range(1 << split.k):
        mask = sum(1 << j for beta, j in enumerate(split.J) if (subset >> beta) & 1)
        size = bin(subset).count("1")
        monomials.append((mask, size))
        for i in split.I:
            monomials.append((mask | (1 << i), size))
    return monomials


def l_code(h: int, split: IndexSplit) -> LinearCode:
    """
    L(k, m): sum_i x_i g_i(x_J) + g'(x_J) with arbitrary g_i, g' over Z_{2^h}.

    log2 of its size is h * 2^k * (m - k + 1).
    """
    generators = [Generator(monomial, 0) for monomial, _ in _l_generators(split)]
    return LinearCode(split.m, h, generators, name=f"L_{1 << h}({split.k},{split.m})")


def a_code(h: int, p: int, r: int, split: IndexSplit) -> LinearCode:
    """A^p(k, r, m) = L(k, m) intersected with ZRM^p(r, m)."""
    params = _zrm(h, p, r, split.m)
    orders = monomial_orders(split.m)
    generators = []
    for monomial, _ in _l_generators(split):
        shift = zrm_coefficient_constraint(params, int(orders[monomial]))
        if shift is not None:
            generators.append(Generator(monomial, shift))
    name = f"A^{p}_{1 << h}({split.k},{r},{split.m})"
    return LinearCode(split.m, h, generators, name=name)


def a_code_log2_size(h: int, p: int, k: int, r: int, m: int) -> int:
    """Closed-form count of encodable bits in A^p(k, r, m)."""
    free = r - p
    outer = sum(h * math.comb(k, i) for i in range(free + 1))
    outer += sum((h - i) * math.comb(k, i + free) for i in range(1, p + 1))
    inner = sum(h * math.comb(k, i) for i in range(free))
    inner += sum((h - i) * math.comb(k, i + free - 1) for i in range(1, p + 1))
    return outer + (m - k) * inner


# ============================================================================
# Coset representatives
# ============================================================================

@dataclass(frozen=True)
class PermutationTuple:
    """One canonical path pi_d on I for every d in Z_2^k, indexed by d."""

    split: IndexSplit
    perms: tuple[Path, ...]

    def __post_init__(self):
        if len(self.perms) != 1 << self.split.k:
            raise ValueError(f"expected {1 << self.split.k} paths, got {len(self.perms)}")
        for path in self.perms:
            if sorted(path) != list(self.split.I) or path != canonical_path(path):
                raise ValueError(f"{path} is not a canonical path on I={self.split.I}")

    def __getitem__(self, d: Bits) -> Path:
        return self.perms[sum(bit << beta for beta, bit in enumerate(d))]


class RepresentativeSet:
    """
    R(k, m): the words 2^{h-1} sum_d (path_d quadratic form) * indicator_d.

    With `diagonal` set every d shares one path, giving R'(k, m). Index i
    decodes big-endian over d (d = 0 is the most significant digit) in
    radix (m - k)!/2.
    """

    def __init__(self, h: int, split: IndexSplit, diagonal: bool = False):
        if split.m - split.k < 2:
            raise CodeParameterError(
                f"coset representatives need m - k >= 2 (got m={split.m}, k={split.k})"
            )
        self.h = h
        self.q = 1 << h
        self.split = split
        self.diagonal = diagonal
        self.radix = path_count(len(split.I))

    @property
    def count(self) -> int:
        return self.radix if self.diagonal else self.radix ** (1 << self.split.k)

    def __len__(self) -> int:
        return self.count

    def permutation_tuple(self, index: int) -> PermutationTuple:
        if index < 0 or index >= self.count:
            raise IndexError(f"representative index {index} out of range (count {self.count})")
        slots = 1 << self.split.k
        if self.diagonal:
            path = unrank_path(self.split.I, index)
            return PermutationTuple(self.split, (path,) * slots)
        ranks = []
        for _ in range(slots):
            index, rank = divmod(index, self.radix)
            ranks.append(rank)
        ranks.reverse()
        return PermutationTuple(self.split, tuple(unrank_path(self.split.I, rank) for rank in ranks))

    def index_of_tuple(self, perms: PermutationTuple) -> int:
        ranks = [rank_path(self.split.I, path) for path in perms.perms]
        if self.diagonal:
            if len(set(ranks)) != 1:
                raise NotACodewordError("paths differ across d but the code shares one path")
            return ranks[0]
        index = 0
        for rank in ranks:
            index = index * self.radix + rank
        return index

    def function(self, index: int) -> GeneralizedBooleanFunction:
        perms = self.permutation_tuple(index)
        m = self.split.m
        if self.diagonal:
            return path_function(m, self.q, perms.perms[0])
        parts = {d: path_function(m, self.q, perms[d]) for d in all_bit_vectors(self.split.k)}
        return reconstruct(parts, self.split.J)

    def word(self, index: int) -> ZqVector:
        return _representative_word(self, index)

    def __iter__(self) -> Iterator[ZqVector]:
        for index in range(self.count):
            yield self.word(index)


@lru_cache(maxsize=4096)
def _representative_word(reps: "RepresentativeSet", index: int) -> ZqVector:
    return evaluate(reps.function(index))


def r_code(h: int, split: IndexSplit) -> RepresentativeSet:
    return _representative_set(h, split, False)


def r_prime_code(h: int, split: IndexSplit) -> RepresentativeSet:
    return _representative_set(h, split, True)


@lru_cache(maxsize=None)
def _representative_set(h: int, split: IndexSplit, diagonal: bool) -> RepresentativeSet:
    return RepresentativeSet(h, split, diagonal)


# ============================================================================
# Code classes
# ============================================================================

@dataclass(frozen=True)
class DistanceContract:
    """Minimum distances guaranteed by the ZRM code bounding the class."""

    hamming: int
    lee: int
    bounding: ZrmParams


class ClassCode:
    """
    Class I, II or III code: a union of cosets b + A.

    Class I uses the single representative params.rep_index from R(k, m),
    Class II runs over R'(k, m) with A = A^p(k, r, m), and Class III runs
    over R(k, m) with A = A^{p-1}(k, k+1, m).

    Codeword indices are rep_position * |A| + a_index. Payloads put the
    A-part in the low bits and the representative above it.
    """

    def __init__(self, params: ConstructionParams):
        self.params = params
        self.split = params.split
        self.h = params.h
        self.q = params.q
        self.m = params.m
        self.n = 1 << params.m

        if params.code_class == CodeClass.CLASS_III:
            self.inner = a_code(params.h, params.p - 1, params.k + 1, self.split)
            self.representatives = r_code(params.h, self.split)
        elif params.code_class == CodeClass.CLASS_II:
            self.inner = a_code(params.h, params.p, params.order, self.split)
            self.representatives = r_prime_code(params.h, self.split)
        else:
            self.inner = a_code(params.h, params.p, params.order, self.split)
            self.representatives = r_code(params.h, self.split)
        self.name = f"Class {params.code_class.value} code over {self.inner.name}"

    def __repr__(self) -> str:
        return f"<{self.name}: n={self.n}, cosets={self.coset_count}, capacity={self.capacity} bits>"

    @property
    def code_class(self) -> CodeClass:
        return self.params.code_class

    # -- sizes --------------------------------------------------------------

    @property
    def coset_count(self) -> int:
        if self.code_class == CodeClass.CLASS_I:
            return 1
        return self.representatives.count

    @property
    def a_bits(self) -> int:
        return self.inner.size_log2

    @property
    def rep_bits(self) -> int:
        return self.coset_count.bit_length() - 1

    @property
    def capacity(self) -> int:
        """Encodable bits: log2 |A| + floor(log2 #cosets)."""
        return self.a_bits + self.rep_bits

    @property
    def size(self) -> int:
        return self.coset_count * self.inner.size

    @property
    def size_log2(self) -> float:
        return self.a_bits + math.log2(self.coset_count)

    @property
    def pmepr_bound(self) -> int:
        return 1 << (self.params.k + 1)

    # -- representatives ----------------------------------------------------

    def _rep_index(self, position: int) -> int:
        if position < 0 or position >= self.coset_count:
            raise IndexError(f"coset position {position} out of range (count {self.coset_count})")
        if self.code_class == CodeClass.CLASS_I:
            return self.params.rep_index
        return position

    def representative(self, position: int) -> ZqVector:
        return self.representatives.word(self._rep_index(position))

    # -- words --------------------------------------------------------------

    def word(self, index: int) -> ZqVector:
        if index < 0 or index >= self.size:
            raise IndexError(f"codeword index {index} out of range")
        position, a_index = divmod(index, self.inner.size)
        return self.representative(position) + self.inner.word(a_index)

    def _decompose(self, word: ZqVector) -> tuple[int, int]:
        """(coset position, A-index) of a codeword."""
        if word.q != self.q or word.n != self.n:
            raise NotACodewordError(f"word must have length {self.n} over Z_{self.q}")
        f = interpolate(word, self.m, self.q)
        paths = []
        for d in all_bit_vectors(self.split.k):
            form = is_path_form(f, self.split, d)
            if form is None:
                raise NotACodewordError(f"restriction at d={d} is not a quadratic path form")
            paths.append(form.order)
        perms = PermutationTuple(self.split, tuple(paths))
        rep_index = self.representatives.index_of_tuple(perms)

        if self.code_class == CodeClass.CLASS_I:
            if rep_index != self.params.rep_index:
                raise NotACodewordError(
                    f"word lies in the coset of representative {rep_index}, not {self.params.rep_index}"
                )
            position = 0
        else:
            position = rep_index
        a_index = self.inner.index_of(word - self.representatives.word(rep_index))
        return position, a_index

    def index_of(self, word: ZqVector) -> int:
        position, a_index = self._decompose(word)
        return position * self.inner.size + a_index

    def __contains__(self, word: ZqVector) -> bool:
        try:
            self._decompose(word)
        except NotACodewordError:
            return False
        return True

    def iter_words(
        self, batch_size: Optional[int] = None, cap_log2: Optional[int] = None
    ) -> Iterator[tuple[int, np.ndarray]]:
        """
        Yield (first index, 2-D word array) over all cosets in index order.

        Raises:
            EnumerationCapExceeded: if the class has more than 2^cap words.
        """
        cap = settings.ENUMERATION_CAP_LOG2 if cap_log2 is None else cap_log2
        if self.size_log2 > cap:
            raise EnumerationCapExceeded(round(self.size_log2, 3), cap)
        for position in range(self.coset_count):
            base = self.representative(position).values
            offset = position * self.inner.size
            for start, batch in self.inner.iter_words(batch_size, cap_log2=cap):
                yield offset + start, (batch + base) % self.q

    def sample(self, count: int, seed: int) -> tuple[list[int], np.ndarray]:
        """`count` codewords drawn uniformly with replacement."""
        rng = np.random.default_rng(seed)
        positions = [_random_below(rng, self.coset_count) for _ in range(count)]
        digits = self.inner.sample_digits(count, rng)
        words = self.inner.words_from_digits(digits)
        indices = []
        for row, position in enumerate(positions):
            words[row] = (words[row] + self.representative(position).values) % self.q
            indices.append(position * self.inner.size + self.inner.index_from_digits(digits[row].tolist()))
        return indices, words

    # -- encoding -----------------------------------------------------------

    def encode(self, payload: Sequence[int]) -> ZqVector:
        """
        Map a capacity-bit payload (most significant bit first) to a codeword.

        Raises:
            PayloadLengthError: if the payload length differs from the capacity.
        """
        bits = [int(b) for b in payload]
        if len(bits) != self.capacity:
            raise PayloadLengthError(self.capacity, len(bits))
        if any(b not in (0, 1) for b in bits):
            raise ValueError("payload must consist of bits")
        value = int("".join(map(str, bits)), 2) if bits else 0
        position, a_index = value >> self.a_bits, value & ((1 << self.a_bits) - 1)
        return self.representative(position) + self.inner.word(a_index)

    def codeword_index(self, word: ZqVector) -> list[int]:
        """
        Inverse of encode.

        Raises:
            NotACodewordError: if the word is not an encoder output.
        """
        position, a_index = self._decompose(word)
        if position >> self.rep_bits:
            raise NotACodewordError(f"coset {position} is outside the encoder's {self.rep_bits}-bit range")
        value = (position << self.a_bits) | a_index
        return [int(b) for b in format(value, f"0{self.capacity}b")] if self.capacity else []

    # -- distances ----------------------------------------------------------

    def bounding_zrm(self) -> ZrmParams:
        """ZRM code whose minimum distances bound those of this class."""
        p = self.params
        if self.code_class == CodeClass.CLASS_III:
            return _zrm(p.h, p.p, p.k + 2, p.m)
        if self.code_class == CodeClass.CLASS_II and p.order <= 1:
            if p.h > p.p + 1:
                return _zrm(p.h, p.p + 1, 2, p.m)
            return _zrm(p.h, p.p, 2, p.m)
        return _zrm(p.h, p.p, p.order, p.m)

    def containing_zrm(self) -> ZrmParams:
        """
        ZRM code holding every codeword.

        Class I representatives have order up to k + 2, so its words lie in
        ZRM^p(max(r, k + 2), m); the other classes sit in their bounding code.
        """
        p = self.params
        if self.code_class == CodeClass.CLASS_I:
            return _zrm(p.h, p.p, max(p.order, p.k + 2), p.m)
        return self.bounding_zrm()

    def distance_contract(self) -> DistanceContract:
        zrm = self.bounding_zrm()
        hamming, lee = zrm_distances(zrm)
        return DistanceContract(hamming=hamming, lee=lee, bounding=zrm)

    def describe(self) -> dict:
        """Sizes, capacity and guarantees as a plain dict."""
        contract = self.distance_contract()
        return {
            "code_class": self.code_class.value,
            "n": self.n,
            "q": self.q,
            "split": list(self.split.J),
            "inner_code": self.inner.name,
            "inner_log2_size": self.inner.size_log2,
            "coset_count": self.coset_count,
            "size_log2": round(self.size_log2, 9),
            "capacity_bits": self.capacity,
            "pmepr_bound": self.pmepr_bound,
            "distance": {
                "hamming": contract.hamming,
                "lee": contract.lee,
                "zrm": zrm_label(contract.bounding),
            },
            "containing_zrm": zrm_label(self.containing_zrm()),
        }


def _random_below(rng: np.random.Generator, bound: int) -> int:
    if bound <= 1 << 62:
        return int(rng.integers(0, bound))
    bits = bound.bit_length()
    while True:
        value = int.from_bytes(rng.bytes((bits + 7) // 8), "little") >> (-bits % 8)
        if value < bound:
            return value


@lru_cache(maxsize=64)
def class_code(params: ConstructionParams) -> ClassCode:
    """Cached ClassCode for a set of construction parameters."""
    code = ClassCode(params)
    logger.info(f"Built {code!r}")
    return code


def class_capacity(params: ConstructionParams) -> int:
    return class_code(params).capacity


def payload_from_hex(text: str, capacity: int) -> list[int]:
    """
    Bits (most significant first) of a hex payload of ceil(capacity / 4) digits.

    Raises:
        PayloadLengthError: if the digit count is wrong or the value needs
            more than `capacity` bits.
    """
    digits = text.strip().lower().removeprefix("0x")
    width = -(-capacity // 4)
    if len(digits) != width:
        raise PayloadLengthError(capacity, 4 * len(digits))
    try:
        value = int(digits, 16) if digits else 0
    except ValueError as exc:
        raise ValueError(f"payload '{text}' is not hexadecimal") from exc
    if value >> capacity:
        raise PayloadLengthError(capacity, value.bit_length())
    return [int(b) for b in format(value, f"0{capacity}b")] if capacity else []


def payload_to_hex(bits: Sequence[int]) -> str:
    value = int("".join(str(int(b)) for b in bits), 2) if bits else 0
    width = -(-len(bits) // 4)
    return format(value, f"0{width}x") if width else ""


def encode(params: ConstructionParams, payload: Sequence[int]) -> ZqVector:
    return class_code(params).encode(payload)


def codeword_index(params: ConstructionParams, word: ZqVector) -> list[int]:
    return class_code(params).codeword_index(word)
