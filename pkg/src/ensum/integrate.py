"""Means and definite integrals through the ensemble summing pipeline."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, ValidationError
from .measurement import NoiseModel, mean_noise_sigma
from .oracle import SampledFunction, load_table
from .pipeline import PipelineRun, run_pipeline

LIPSCHITZ_TOL = 1e-9
# noise_bound is this many standard deviations of the propagated readout noise
NOISE_COVERAGE = 3.0
# the (b - a) L / N bound covers the left-endpoint error only up to this width
RIEMANN_BOUND_MAX_WIDTH = 2.0


@dataclass(frozen=True)
class IntegrandSpec:
    g: Callable[[float], float]
    a: float
    b: float
    L: float | None = None

    def __post_init__(self):
        if not self.a < self.b:
            raise DomainError(f"need a < b, got [{self.a}, {self.b}]")
        if self.L is not None and not self.L >= 0:
            raise DomainError(f"Lipschitz constant must be >= 0, got {self.L!r}")

    @property
    def width(self) -> float:
        return self.b - self.a

    def check_lipschitz(self, pairs: int = 256, seed: int = 0) -> None:
        """Spot-check ``|g(x) - g(y)| <= L |x - y|`` on random pairs."""
        if self.L is None:
            return
        rng = np.random.default_rng(seed)
        xs = rng.uniform(self.a, self.b, size=(pairs, 2))
        for x, y in xs:
            if abs(self.g(x) - self.g(y)) > self.L * abs(x - y) + LIPSCHITZ_TOL:
                raise ValidationError(
                    f"g is not {self.L}-Lipschitz between x={x!r} and y={y!r}", [(x, y)]
                )


@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    riemann_bound: float | None
    encoding_bound: float
    noise_bound: float
    thermal_bound: float
    N: int
    k: int
    N_e: int
    riemann_bound_valid: bool
    run: PipelineRun

    @property
    def total_bound(self) -> float:
        return (self.riemann_bound or 0.0) + self.encoding_bound + self.noise_bound + self.thermal_bound

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "riemann_bound": self.riemann_bound,
            "riemann_bound_validity": "(b-a) <= 2" if self.riemann_bound_valid else "outside (b-a) <= 2",
            "encoding_bound": self.encoding_bound,
            "noise_bound": self.noise_bound,
            "thermal_bound": self.thermal_bound,
            "total_bound": self.total_bound,
            "N": self.N,
            "k": self.k,
            "N_e": self.N_e,
        }


def sample_points(a: float, b: float, N: int) -> np.ndarray:
    """Left endpoints of ``N`` equal cells of ``[a, b]``."""
    if not a < b:
        raise DomainError(f"need a < b, got [{a}, {b}]")
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    return a + np.arange(N) * ((b - a) / N)


def evaluate_on_grid(g, xs: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(g(xs), dtype=np.float64)
    except Exception:
        vals = None
    if vals is None or vals.shape != xs.shape:
        vals = np.array([g(x) for x in xs], dtype=np.float64)
    bad = np.flatnonzero(~((vals >= 0.0) & (vals <= 1.0)))
    if bad.size:
        pts = [float(xs[i]) for i in bad[:10]]
        raise ValidationError(
            f"integrand leaves [0, 1] at x={pts[0]!r} (g={vals[bad[0]]!r}); "
            f"{bad.size} grid point(s) out of range",
            pts,
        )
    return vals


def estimate_integral(
    spec: IntegrandSpec,
    n: int,
    k: int,
    noise: NoiseModel | None = None,
    alpha: float = 0.0,
) -> IntegralEstimate:
    N = 1 << n
    spec.check_lipschitz()
    f = load_table(evaluate_on_grid(spec.g, sample_points(spec.a, spec.b, N)), n=n)
    run = run_pipeline(f, k, noise=noise, alpha=alpha)
    width = spec.width
    m = run.measurement
    return IntegralEstimate(
        value=width * m.sum_estimate / N,
        riemann_bound=None if spec.L is None else width * spec.L / N,
        encoding_bound=width * run.spec.delta,
        noise_bound=width * NOISE_COVERAGE * m.f_bar_sigma,
        thermal_bound=width * run.thermal_bound,
        N=N,
        k=k,
        N_e=m.N_e,
        riemann_bound_valid=width <= RIEMANN_BOUND_MAX_WIDTH,
        run=run,
    )


def estimate_mean(
    f: SampledFunction,
    n: int | None,
    k: int,
    noise: NoiseModel | None = None,
) -> float:
    """Mean of ``f`` over its unpadded samples."""
    return run_pipeline(f, k, noise=noise, n=n).mean_estimate
