"""Per-spin ensemble readout, calibration, noise and trial repetition."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .ensemble import DiagonalEnsemble
from .errors import DomainError, ParameterError

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class NoiseModel:
    """Gaussian readout noise on the normalised spin signals.

    ``snr`` is the single-trial signal-to-noise ratio; averaging over
    ``trials`` repetitions divides the noise scale by ``sqrt(trials)``.
    """

    snr: float
    seed: int = 0
    trials: int = 1

    def __post_init__(self):
        if not self.snr > 0:
            raise ParameterError(f"snr must be > 0, got {self.snr!r}")
        if not isinstance(self.trials, (int, np.integer)) or self.trials < 1:
            raise ParameterError(f"trials must be a positive integer, got {self.trials!r}")
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed <= MAX_SEED:
            raise ParameterError(f"seed must be an integer in [0, 2**64), got {self.seed!r}")

    @property
    def sigma(self) -> float:
        return (1.0 / self.snr) / math.sqrt(self.trials)


@dataclass(frozen=True)
class MeasurementResult:
    gamma_norm: tuple[float, ...]
    f_bar: float
    sum_estimate: float
    N: int
    N_e: int
    noiseless: bool
    sigma: float = 0.0

    @property
    def k(self) -> int:
        return len(self.gamma_norm)

    @property
    def f_bar_sigma(self) -> float:
        return mean_noise_sigma(self.k, self.sigma)


def combine_signals(gamma) -> float:
    """Ensemble average from normalised spin signals (binary-weighted sum)."""
    k = len(gamma)
    return math.fsum(math.ldexp(float(g), j - k) for j, g in enumerate(gamma))


def mean_noise_sigma(k: int, sigma: float) -> float:
    """Std of the ensemble average when every spin carries i.i.d. noise ``sigma``."""
    # sqrt(sum_j 4**(j-1)) / 2**k
    return sigma * math.sqrt((4.0**k - 1.0) / 3.0) / 2.0**k


def _result(gamma, N, N_e, noiseless, sigma=0.0) -> MeasurementResult:
    gamma = tuple(float(g) for g in gamma)
    f_bar = combine_signals(gamma)
    return MeasurementResult(gamma, f_bar, f_bar * N, N, N_e, noiseless, sigma)


def measure_ideal(e: DiagonalEnsemble) -> MeasurementResult:
    """Noiseless readout.

    The calibration signal of each spin is the full ensemble weight, so the
    normalised signal is the total weight of entries with that spin set.
    """
    gamma = kernels.spin_signals(e.weights, e.codes, e.spec.k)
    return _result(gamma, e.spec.N, 1, True)


def spin_stream(seed: int, spin: int) -> np.random.Generator:
    """Independent RNG stream for output spin ``spin`` (1-based)."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(spin,)))


def measure_noisy(e: DiagonalEnsemble, noise: NoiseModel) -> MeasurementResult:
    """Readout with trial-averaged Gaussian noise, clamped to [0, 1]."""
    ideal = kernels.spin_signals(e.weights, e.codes, e.spec.k)
    sigma = noise.sigma
    if sigma == 0.0:
        return _result(ideal, e.spec.N, noise.trials, False)
    eps = np.array([spin_stream(noise.seed, j).standard_normal() for j in range(1, e.spec.k + 1)])
    gamma = np.clip(ideal + sigma * eps, 0.0, 1.0)
    return _result(gamma, e.spec.N, noise.trials, False, sigma)


def required_trials(N: int, snr: float, mode: str = "paper") -> int:
    """Experimental trials needed to resolve signal steps of ``1/N``.

    ``paper`` returns ``N**2``.  ``parametric`` returns the smallest count
    for which the averaged noise ``(1/snr)/sqrt(trials)`` is at most half a
    step, ``1/(2N)``.
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if not snr > 0:
        raise ParameterError(f"snr must be > 0, got {snr!r}")
    if mode == "paper":
        return N * N
    if mode == "parametric":
        if math.isinf(snr):
            return 1
        ratio = Fraction(2 * N) / Fraction(snr)
        return max(1, math.ceil(ratio * ratio))
    raise ParameterError(f"unknown trials mode {mode!r}")


def thermal_error_bound(n: int, alpha: float) -> float:
    """Worst-case shift of the ensemble average caused by a thermal start."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not alpha >= 0:
        raise ParameterError(f"alpha must be >= 0, got {alpha!r}")
    return n * alpha / 2
