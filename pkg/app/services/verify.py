"""
Verification suites for the constructions.

Every suite takes a VerifyOptions record and returns a SuiteReport that
counts the individual checks it ran and keeps the first failing witness.
Randomized suites draw from numpy.random.default_rng(options.seed), so a
report is reproducible from its options.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from app.models.params import (
    CodeClass,
    EnvelopeParams,
    IndexSplit,
    VerifyOptions,
    ZrmParams,
)
from app.services.codes import (
    WeightMetric,
    min_distance,
    wt_hamming,
    wt_lee,
    zrm_code,
    zrm_log2_size,
)
from app.services.construct import (
    ClassCode,
    a_code,
    a_code_log2_size,
    certify_pmepr,
    class_code,
    complementary_set,
    deinterleave,
    golay_family,
    golay_pair,
    is_path_form,
    l_code,
    path_count,
    path_function,
    r_code,
    r_prime_code,
    unrank_path,
)
from app.services.corr import CyclotomicInt, is_complementary_set, verify_restriction_identity
from app.services.envelope import pmepr, pmepr_batch
from app.services.gbf import (
    GeneralizedBooleanFunction,
    ZqVector,
    all_bit_vectors,
    interpolate,
    reconstruct,
)


logger = logging.getLogger(__name__)

PMEPR_SLACK = 1e-9


def _plain(value: Any) -> Any:
    """JSON-ready copy of a witness value."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, ZqVector):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (GeneralizedBooleanFunction, CyclotomicInt)):
        return str(value)
    return value


@dataclass
class SuiteReport:
    """Outcome of one verification suite."""

    name: str
    passed: bool = True
    checks: int = 0
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def check(self, condition: bool, **witness: Any) -> bool:
        """Record one check; the first failure keeps its witness."""
        self.checks += 1
        if not condition and self.passed:
            self.passed = False
            self.witness = _plain(witness)
            logger.warning(f"Suite {self.name} failed: {self.witness}")
        return bool(condition)

    def to_dict(self) -> dict:
        report = asdict(self)
        report["details"] = _plain(self.details)
        return report


SuiteFn = Callable[[VerifyOptions], SuiteReport]
SUITES: dict[str, SuiteFn] = {}
SUITE_ALIASES: dict[str, str] = {}


def suite(name: str, *aliases: str) -> Callable[[SuiteFn], SuiteFn]:
    """Register a suite under its name and any short names."""
    def register(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = fn
        for alias in aliases:
            SUITE_ALIASES[alias] = name
        return fn
    return register


def suite_names() -> list[str]:
    """Suite names followed by their short names."""
    return sorted(SUITES) + sorted(SUITE_ALIASES)


def resolve_suite(name: str) -> Optional[str]:
    """Registered name for a suite or short name, None when unknown."""
    return name if name in SUITES else SUITE_ALIASES.get(name)


def run_suite(name: str, options: VerifyOptions) -> SuiteReport:
    """
    Run a named suite.

    Raises:
        ValueError: for an unknown suite name or invalid options.
    """
    resolved = resolve_suite(name)
    if resolved is None:
        raise ValueError(f"unknown suite '{name}'; choose from {', '.join(suite_names())}")
    name, fn = resolved, SUITES[resolved]
    logger.info(f"Running suite {name} (seed={options.seed}, trials={options.trials})")
    report = fn(options)
    logger.info(f"Suite {name}: {'PASS' if report.passed else 'FAIL'} after {report.checks} checks")
    return report


# ============================================================================
# Random instances
# ============================================================================

def random_split(rng: np.random.Generator, m: int, k: int) -> IndexSplit:
    J = sorted(int(j) for j in rng.choice(m, size=k, replace=False))
    return IndexSplit(m=m, J=tuple(J))


def random_path_function(
    rng: np.random.Generator, split: IndexSplit, q: int
) -> GeneralizedBooleanFunction:
    """A function whose every restriction at x_J = d is (q/2) * path + affine."""
    parts = {}
    for d in all_bit_vectors(split.k):
        path = unrank_path(split.I, int(rng.integers(path_count(len(split.I)))))
        affine = {(i,): int(rng.integers(q)) for i in split.I}
        affine[()] = int(rng.integers(q))
        parts[d] = path_function(split.m, q, path) + GeneralizedBooleanFunction.from_terms(split.m, q, affine)
    return reconstruct(parts, split.J)


def random_a_map(
    rng: np.random.Generator, f: GeneralizedBooleanFunction, split: IndexSplit
) -> dict:
    a_map = {}
    for d in all_bit_vectors(split.k):
        form = is_path_form(f, split, d)
        a_map[d] = form.endpoints[int(rng.integers(2))]
    return a_map


def _split(options: VerifyOptions) -> IndexSplit:
    if options.J is not None:
        return IndexSplit(m=options.m, J=options.J)
    return IndexSplit.default(options.m, options.k)


def _envelope(options: VerifyOptions) -> EnvelopeParams:
    return EnvelopeParams(oversample=options.oversample)


# ============================================================================
# Correlation suites
# ============================================================================

@suite("restriction-identity", "lemma1")
def check_restriction_identity(options: VerifyOptions) -> SuiteReport:
    """Autocorrelation equals the sum of all cross-correlations of restrictions."""
    report = SuiteReport("restriction-identity")
    rng = np.random.default_rng(options.seed)
    m, q = options.m, options.q
    for trial in range(options.trials):
        f = GeneralizedBooleanFunction(m, q, rng.integers(0, q, size=1 << m))
        k = int(rng.integers(0, min(2, m) + 1))
        x = sorted(int(j) for j in rng.choice(m, size=k, replace=False))
        shift = int(rng.integers(-(1 << m) + 1, 1 << m))
        report.check(
            verify_restriction_identity(f, x, shift),
            trial=trial, f=f, x=x, shift=shift,
        )
    return report


@suite("golay-pairs", "thm2")
def check_golay_pairs(options: VerifyOptions) -> SuiteReport:
    """Every path-form word of length 2^m has a complementary partner per endpoint."""
    report = SuiteReport("golay-pairs")
    m, q = options.m, options.q
    split = IndexSplit(m=m)
    expected = path_count(m) * q ** (m + 1)
    seen = set()
    for word in golay_family(m, options.h, cap_log2=options.cap_log2):
        seen.add(word.values.tobytes())
        f = interpolate(word, m, q)
        form = is_path_form(f, split, ())
        if not report.check(form is not None, word=word, reason="not a path form"):
            continue
        for a in set(form.endpoints):
            pair = golay_pair(f, split, (), a)
            result = is_complementary_set(pair)
            report.check(result.is_complementary, word=word, a=a, shift=result.shift, value=result.value)
    report.check(len(seen) == expected, distinct=len(seen), expected=expected)
    report.details = {"sequences": len(seen), "expected": expected}
    return report


@suite("complementary-sets", "thm3")
def check_complementary_sets(options: VerifyOptions) -> SuiteReport:
    """Random valid (f, J, a_d) give exact complementary sets of size 2^{k+1}."""
    report = SuiteReport("complementary-sets")
    rng = np.random.default_rng(options.seed)
    for trial in range(options.trials):
        split = _split(options) if options.J is not None else random_split(rng, options.m, options.k)
        f = random_path_function(rng, split, options.q)
        a_map = random_a_map(rng, f, split)
        members = complementary_set(f, split, a_map)
        result = is_complementary_set(members)
        report.check(len(members) == 1 << (split.k + 1), trial=trial, size=len(members))
        report.check(
            result.is_complementary,
            trial=trial, f=f, J=split.J, shift=result.shift, value=result.value,
        )
    return report


@suite("pmepr-certificate", "cor1")
def check_pmepr_certificate(options: VerifyOptions) -> SuiteReport:
    """Certified functions and their set partners stay below 2^{k+1}."""
    report = SuiteReport("pmepr-certificate")
    rng = np.random.default_rng(options.seed)
    envelope = _envelope(options)
    worst = 0.0
    for trial in range(options.trials):
        split = _split(options) if options.J is not None else random_split(rng, options.m, options.k)
        f = random_path_function(rng, split, options.q)
        bound = certify_pmepr(f, split)
        report.check(bound == 1 << (split.k + 1), trial=trial, f=f, J=split.J, bound=bound)
        for member in complementary_set(f, split, random_a_map(rng, f, split)):
            value = pmepr(member, envelope)
            worst = max(worst, value)
            report.check(value <= (1 << (split.k + 1)) + PMEPR_SLACK, trial=trial, f=f, pmepr=value)
    report.details = {"max_pmepr": worst, "oversample": options.oversample}
    return report


# ============================================================================
# Code suites
# ============================================================================

@suite("zrm-distance", "thm4")
def check_zrm_distance(options: VerifyOptions) -> SuiteReport:
    """Brute-force minimum distances of ZRM^p(r, m) against 2^{m-r} and 2^{m-r+p}."""
    report = SuiteReport("zrm-distance")
    params = ZrmParams(h=options.h, p=options.p, r=options.order, m=options.m)
    code = zrm_code(params)
    expected_h = 1 << (params.m - params.r)
    expected_l = 1 << (params.m - params.r + params.p)

    d_h = min_distance(code, WeightMetric.HAMMING, cap_log2=options.cap_log2)
    d_l = min_distance(code, WeightMetric.LEE, cap_log2=options.cap_log2)
    report.check(d_h == expected_h, metric="hamming", measured=d_h, expected=expected_h)
    report.check(d_l == expected_l, metric="lee", measured=d_l, expected=expected_l)

    # 2^p x_0 ... x_{r-1} meets both bounds
    low = GeneralizedBooleanFunction.monomial(params.m, params.q, (1 << params.r) - 1, 1 << params.p).evaluate()
    report.check(low in code, word=low, reason="minimum-weight word outside the code")
    report.check(wt_hamming(low) == expected_h, word=low, hamming=wt_hamming(low))
    report.check(wt_lee(low) == expected_l, word=low, lee=wt_lee(low))
    report.details = {"d_hamming": d_h, "d_lee": d_l, "size_log2": code.size_log2}
    return report


def _class_words(code: ClassCode, options: VerifyOptions):
    """Whole code within the cap, otherwise `trials` sampled words."""
    if code.size_log2 <= options.cap_log2:
        yield from code.iter_words(cap_log2=options.cap_log2)
        return
    logger.warning(
        f"{code.name} has 2^{code.size_log2:.3f} words, above the cap 2^{options.cap_log2}; "
        f"sampling {options.trials} words"
    )
    indices, words = code.sample(options.trials, options.seed)
    for index, row in zip(indices, words):
        yield index, row[None, :]


def _pairwise_distances(words: np.ndarray, q: int) -> tuple[int, int]:
    best_h, best_l = None, None
    for i in range(len(words) - 1):
        diff = (words[i + 1:] - words[i]) % q
        hamming = np.count_nonzero(diff, axis=1)
        lee = np.minimum(diff, q - diff).sum(axis=1)
        best_h = int(hamming.min()) if best_h is None else min(best_h, int(hamming.min()))
        best_l = int(lee.min()) if best_l is None else min(best_l, int(lee.min()))
    return best_h, best_l


@suite("class-pmepr", "thm5")
def check_class_pmepr(options: VerifyOptions) -> SuiteReport:
    """Class codewords have PMEPR at most 2^{k+1}, sit in their ZRM code and keep its distances."""
    report = SuiteReport("class-pmepr")
    params = options.construction()
    code = class_code(params)
    envelope = _envelope(options)
    bound = code.pmepr_bound
    container = zrm_code(code.containing_zrm())

    worst, seen = 0.0, 0
    for start, batch in _class_words(code, options):
        values = pmepr_batch(batch, code.q, envelope, workers=options.workers)
        worst = max(worst, float(values.max()))
        seen += len(batch)
        over = np.flatnonzero(values > bound + PMEPR_SLACK)
        report.check(over.size == 0, index=start + int(over[0]) if over.size else None,
                     pmepr=float(values.max()), bound=bound)
        inside = container.contains_rows(batch)
        report.check(bool(inside.all()), index=start + int(np.argmin(inside)), container=container.name)

    # distinct cosets: each representative decodes to its own position
    positions = range(min(code.coset_count, 1 << 12))
    for position in positions:
        index = code.index_of(code.representative(position))
        report.check(index == position * code.inner.size, position=position, decoded=index)

    contract = code.distance_contract()
    if code.size <= 1 << 11:
        words = np.concatenate([batch for _, batch in code.iter_words(cap_log2=options.cap_log2)])
        if len(words) > 1:
            d_h, d_l = _pairwise_distances(words, code.q)
            report.check(d_h >= contract.hamming, metric="hamming", measured=d_h, bound=contract.hamming)
            report.check(d_l >= contract.lee, metric="lee", measured=d_l, bound=contract.lee)
            report.details.update({"d_hamming": d_h, "d_lee": d_l})

    report.details.update({
        "words": seen,
        "max_pmepr": worst,
        "bound": bound,
        "oversample": options.oversample,
        "distance_bound": {"hamming": contract.hamming, "lee": contract.lee},
    })
    return report


@suite("counting")
def check_counting(options: VerifyOptions) -> SuiteReport:
    """Size formulas for ZRM, L and A, and the representative counts, against enumeration."""
    report = SuiteReport("counting")
    h, p, k, r, m = options.h, options.p, options.k, options.order, options.m
    split = _split(options)
    brute_cap = min(options.cap_log2, 20)

    zrm = zrm_code(ZrmParams(h=h, p=p, r=r, m=m))
    report.check(zrm.size_log2 == zrm_log2_size(ZrmParams(h=h, p=p, r=r, m=m)),
                 code=zrm.name, enumerated=zrm.size_log2)
    if zrm.size_log2 <= min(brute_cap, 16):
        words = np.concatenate([batch for _, batch in zrm.iter_words(cap_log2=brute_cap)])
        distinct = len(np.unique(words, axis=0))
        report.check(distinct == zrm.size, code=zrm.name, distinct=distinct, size=zrm.size)

    big_l = l_code(h, split)
    report.check(big_l.size_log2 == h * (1 << k) * (m - k + 1), code=big_l.name, size_log2=big_l.size_log2)

    small_a = a_code(h, p, r, split)
    formula = a_code_log2_size(h, p, k, r, m)
    report.check(small_a.size_log2 == formula, code=small_a.name, size_log2=small_a.size_log2, formula=formula)
    if big_l.size_log2 <= brute_cap:
        members = sum(int(zrm.contains_rows(batch).sum()) for _, batch in big_l.iter_words(cap_log2=brute_cap))
        report.check(members == small_a.size, code=small_a.name, intersection=members, size=small_a.size)

    reps = r_code(h, split)
    radix = path_count(m - k)
    report.check(reps.count == radix ** (1 << k), count=reps.count, expected=radix ** (1 << k))
    if reps.count <= 1 << 12:
        seen = set()
        half = reps.q // 2
        for index in range(reps.count):
            word = reps.word(index)
            seen.add(word.values.tobytes())
            b = reps.function(index)
            report.check(set(np.unique(word.values).tolist()) <= {0, half}, index=index, word=word)
            report.check(b.order() <= k + 2, index=index, order=b.order())
            perms = reps.permutation_tuple(index)
            for d in all_bit_vectors(k):
                form = is_path_form(b, split, d)
                report.check(form is not None and form.order == perms[d], index=index, d=d)
        report.check(len(seen) == reps.count, distinct=len(seen), count=reps.count)

    prime = r_prime_code(h, split)
    report.check(prime.count == radix, count=prime.count, expected=radix)
    for index in range(min(prime.count, 1 << 12)):
        b = prime.function(index)
        report.check(not any(b.depends_on(j) for j in split.J), index=index, b=b)

    report.details = {
        "zrm_log2": zrm.size_log2,
        "l_log2": big_l.size_log2,
        "a_log2": small_a.size_log2,
        "representatives": reps.count,
        "single_path_representatives": prime.count,
    }
    return report


@suite("davis-jedwab", "remark1")
def check_davis_jedwab(options: VerifyOptions) -> SuiteReport:
    """k = 0, p = 0 Class II codes are m!/2 cosets of ZRM(1, m) with PMEPR at most 2."""
    report = SuiteReport("davis-jedwab")
    params = options.construction(**{"class": CodeClass.CLASS_II, "p": 0, "k": 0, "r": 1, "J": None})
    code = class_code(params)
    first_order = zrm_code(ZrmParams(h=params.h, p=0, r=1, m=params.m))
    report.check(code.inner.issubset(first_order) and first_order.issubset(code.inner),
                 inner=code.inner.name, expected=first_order.name)
    report.check(code.coset_count == math.factorial(params.m) // 2, cosets=code.coset_count)
    report.check(code.size == code.coset_count * params.q ** (params.m + 1), size=code.size)

    container = zrm_code(code.containing_zrm())
    envelope = _envelope(options)
    worst = 0.0
    for start, batch in _class_words(code, options):
        values = pmepr_batch(batch, code.q, envelope, workers=options.workers)
        worst = max(worst, float(values.max()))
        report.check(bool((values <= 2 + PMEPR_SLACK).all()), index=start + int(np.argmax(values)),
                     pmepr=float(values.max()))
        report.check(bool(container.contains_rows(batch).all()), start=start, container=container.name)
    report.details = {"cosets": code.coset_count, "max_pmepr": worst, "container": container.name}
    return report


@suite("interleaving", "remark2")
def check_interleaving(options: VerifyOptions) -> SuiteReport:
    """p = 1 Class III words de-interleave into 2^k words certified at k = 0."""
    report = SuiteReport("interleaving")
    params = options.construction(**{"class": CodeClass.CLASS_III, "p": 1})
    code = class_code(params)
    sub_m = params.m - params.k
    sub_split = IndexSplit(m=sub_m)
    indices, words = code.sample(options.trials, options.seed)
    for index, row in zip(indices, words):
        for d, part in deinterleave(ZqVector(code.q, row), code.split).items():
            f = interpolate(part, sub_m, code.q)
            report.check(certify_pmepr(f, sub_split) == 2, index=index, d=d, part=part)
    report.details = {"words": len(indices), "interleaved": 1 << params.k}
    return report


@suite("encoder")
def check_encoder(options: VerifyOptions) -> SuiteReport:
    """Random payloads round-trip through encode and codeword_index."""
    report = SuiteReport("encoder")
    params = options.construction()
    code = class_code(params)
    rng = np.random.default_rng(options.seed)
    envelope = _envelope(options)
    container = zrm_code(code.containing_zrm())
    for trial in range(options.trials):
        payload = rng.integers(0, 2, size=code.capacity).tolist()
        word = code.encode(payload)
        back = code.codeword_index(word)
        report.check(back == payload, trial=trial, payload=payload, decoded=back)
        report.check(code.word(code.index_of(word)) == word, trial=trial, word=word)
        report.check(word in container, trial=trial, word=word, container=container.name)
        value = pmepr(word, envelope)
        report.check(value <= code.pmepr_bound + PMEPR_SLACK, trial=trial, word=word, pmepr=value)
    report.details = {"capacity": code.capacity, "trials": options.trials}
    return report
