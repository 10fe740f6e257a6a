"""
OFDM complex envelope and PMEPR measurement.

With f_s * T = 1 the envelope of a polyphase codeword A is
s_A(t) = sum_i A_i exp(2 pi i i t / T), sampled at t = j T / (n L) for
j = 0 .. n L - 1. The samples are one zero-padded inverse DFT.
The carrier frequency does not affect |s_A| and is left out.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Optional, Sequence, Union

import numpy as np
import scipy.fft

from app.models.params import EnvelopeParams
from app.services.gbf import RestrictedVector, ZqVector


logger = logging.getLogger(__name__)

Symbols = Union[RestrictedVector, ZqVector, Sequence[complex], np.ndarray]

SUMMARY_QUANTILES = (0.5, 0.9, 0.99)


def polyphase_symbols(word: Union[Sequence[int], np.ndarray], q: int) -> np.ndarray:
    """xi^word for xi = exp(2 pi i / q); works on 1-D words and 2-D batches."""
    return np.exp(2j * np.pi * np.asarray(word, dtype=np.int64) / q)


def _as_symbols(a: Symbols) -> np.ndarray:
    if isinstance(a, RestrictedVector):
        symbols = a.to_complex()
    elif isinstance(a, ZqVector):
        symbols = polyphase_symbols(a.values, a.q)
    else:
        symbols = np.asarray(a, dtype=complex).reshape(-1)
    if symbols.size == 0:
        raise ValueError("envelope of an empty codeword is undefined")
    return symbols


def _params(params: Optional[EnvelopeParams]) -> EnvelopeParams:
    return params if params is not None else EnvelopeParams()


def envelope_power(a: Symbols, params: Optional[EnvelopeParams] = None) -> np.ndarray:
    """
    Instantaneous power P_A(t) = |s_A(t)|^2 on the n * L point grid.

    Examples:
        >>> envelope_power([1, 1, 1, 1], EnvelopeParams(oversample=1))[0]
        16.0
    """
    symbols = _as_symbols(a)
    size = symbols.size * _params(params).oversample
    samples = scipy.fft.ifft(symbols, n=size) * size
    return np.abs(samples) ** 2


def power_via_correlation(a: Symbols, params: Optional[EnvelopeParams] = None) -> np.ndarray:
    """
    P_A(t) = sum_l A(A)(l) exp(2 pi i l t / T) on the same grid as envelope_power.

    Shifts are folded modulo the grid size before the transform, which is
    exact because the exponential is periodic in l.
    """
    symbols = _as_symbols(a)
    n = symbols.size
    size = n * _params(params).oversample
    acf = np.correlate(symbols, symbols, mode="full")
    shifts = np.arange(-(n - 1), n)
    folded = np.zeros(size, dtype=complex)
    np.add.at(folded, shifts % size, acf)
    return np.real(scipy.fft.ifft(folded) * size)


def mean_power(a: Symbols, params: Optional[EnvelopeParams] = None) -> float:
    """Average envelope power over one symbol; equals sum |A_i|^2."""
    return float(np.mean(envelope_power(a, params)))


def pmepr(a: Symbols, params: Optional[EnvelopeParams] = None) -> float:
    """
    Peak-to-mean envelope power ratio max_t P_A(t) / n.

    The maximum is taken over the sample grid, so the result is a lower bound
    on the continuous supremum that tightens as the oversampling grows.

    Examples:
        >>> round(pmepr([1, -1]), 6)
        2.0
    """
    power = envelope_power(a, params)
    n = power.size // _params(params).oversample
    return float(power.max() / n)


def pmepr_batch(
    words: Union[Sequence[Sequence[int]], np.ndarray],
    q: int,
    params: Optional[EnvelopeParams] = None,
    workers: Optional[int] = None,
) -> np.ndarray:
    """
    PMEPR of every row of a 2-D array of Z_q words.

    One transform is issued for the whole batch; scipy spreads it over
    `workers` threads.
    """
    batch = np.atleast_2d(np.asarray(words, dtype=np.int64))
    n = batch.shape[1]
    if n == 0:
        raise ValueError("envelope of an empty codeword is undefined")
    size = n * _params(params).oversample
    samples = scipy.fft.ifft(polyphase_symbols(batch, q), n=size, axis=-1, workers=workers) * size
    peaks = np.max(np.abs(samples) ** 2, axis=-1)
    logger.debug(f"Measured PMEPR for {batch.shape[0]} words of length {n}")
    return peaks / n


@dataclass
class PmeprSummary:
    """Distribution of PMEPR values over a codeword stream."""

    count: int
    min: float
    mean: float
    max: float
    q50: float
    q90: float
    q99: float

    def to_dict(self) -> dict:
        return asdict(self)


def pmepr_summary(values: Union[Sequence[float], np.ndarray]) -> PmeprSummary:
    """Min, mean, max and the 0.5 / 0.9 / 0.99 quantiles of PMEPR values."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("cannot summarise an empty PMEPR list")
    q50, q90, q99 = np.quantile(arr, SUMMARY_QUANTILES)
    return PmeprSummary(
        count=int(arr.size),
        min=float(arr.min()),
        mean=float(arr.mean()),
        max=float(arr.max()),
        q50=float(q50),
        q90=float(q90),
        q99=float(q99),
    )
