"""Query-complexity comparison and the sensitivity-limited advantage thresholds.

All big-O entries are instantiated with unit constants, i.e. they are
leading-term magnitudes, not operation counts.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import DomainError, ParameterError

LABEL = "leading-term magnitude (unit constants)"


class AlgorithmKind(enum.Enum):
    ENSEMBLE_SUMMING = "ensemble_summing"
    ENSEMBLE_SEARCH = "ensemble_search"
    GROVER_PSEUDOPURE = "grover_pseudopure"
    GROVER_PURE = "grover_pure"


@dataclass(frozen=True)
class ComplexityReport:
    kind: AlgorithmKind
    N: int
    single_run: float
    trials: float
    overall: float
    sensitivity_scaling: str
    label: str = LABEL

    def as_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        return d


def table_row(kind: AlgorithmKind, N: int) -> ComplexityReport:
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    kind = AlgorithmKind(kind)
    sq = math.sqrt(N)
    nmr_trials = float(N) ** 2
    if kind is AlgorithmKind.ENSEMBLE_SUMMING:
        single, trials, scaling = 1.0, nmr_trials, "1/N"
    elif kind is AlgorithmKind.ENSEMBLE_SEARCH:
        single, trials, scaling = math.log2(N), nmr_trials, "1/N"
    elif kind is AlgorithmKind.GROVER_PSEUDOPURE:
        single, trials, scaling = sq, nmr_trials, "1/N"
    else:
        single, trials, scaling = sq, 1.0, "1"
    return ComplexityReport(kind, N, single, trials, single * trials, scaling)


def full_table(N: int) -> list[ComplexityReport]:
    return [table_row(kind, N) for kind in AlgorithmKind]


def summing_threshold(snr: float) -> float:
    """Largest N with ``N**1.5 == snr**2``, i.e. ``snr**(4/3)``."""
    if not snr > 0:
        raise ParameterError(f"snr must be > 0, got {snr!r}")
    return snr ** (4.0 / 3.0)


def _search_lhs(N: float) -> float:
    return N**1.5 * math.log2(N)


def search_threshold(snr: float, rtol: float = 1e-9) -> float:
    """Root of ``N**1.5 * log2(N) == snr**2`` by bisection.

    A result below 2 means there is no sample count for which the ensemble
    search beats pure-state search.
    """
    if not snr > 1:
        raise ParameterError(f"snr must be > 1, got {snr!r}")
    target = float(snr) ** 2
    lo = 1.0
    hi = max(2.0, summing_threshold(snr))
    while _search_lhs(hi) < target:
        hi *= 2.0
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if _search_lhs(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class AdvantageVerdict:
    verdict: str
    N: int
    snr: float
    lhs: float
    rhs: float
    summing_threshold: float
    search_threshold: float | None

    @property
    def search_regime(self) -> str:
        if self.search_threshold is None or self.search_threshold < 2:
            return "no_advantage"
        return "ensemble_advantage" if _search_lhs(self.N) < self.rhs else "no_advantage"

    def as_dict(self) -> dict:
        d = asdict(self)
        d["search_regime"] = self.search_regime
        return d


def advantage_regime(N: int, snr: float) -> AdvantageVerdict:
    """Compare ``N * sqrt(N)`` against ``snr**2`` with a strict inequality."""
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    if not snr > 0 or math.isinf(snr):
        raise ParameterError(f"snr must be finite and > 0, got {snr!r}")
    # N*sqrt(N) < S**2  <=>  N**3 < S**4, compared exactly
    ahead = Fraction(N) ** 3 < Fraction(snr) ** 4
    return AdvantageVerdict(
        "ensemble_advantage" if ahead else "no_advantage",
        N,
        snr,
        N * math.sqrt(N),
        float(snr) ** 2,
        summing_threshold(snr),
        search_threshold(snr) if snr > 1 else None,
    )
