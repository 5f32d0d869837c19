"""Initialise, query and measure in one call."""
from __future__ import annotations

from dataclasses import dataclass

from .ensemble import DiagonalEnsemble, init_thermal, init_uniform
from .errors import DomainError
from .measurement import (
    MeasurementResult,
    NoiseModel,
    measure_ideal,
    measure_noisy,
    thermal_error_bound,
)
from .oracle import QueryLedger, SampledFunction, apply_oracle
from .registers import RegisterSpec


@dataclass(frozen=True)
class PipelineRun:
    spec: RegisterSpec
    n_true: int
    alpha: float
    final_state: DiagonalEnsemble
    measurement: MeasurementResult
    ledger: QueryLedger

    @property
    def sum_estimate(self) -> float:
        return self.measurement.sum_estimate

    @property
    def f_bar(self) -> float:
        return self.measurement.f_bar

    @property
    def mean_estimate(self) -> float:
        """Average over the unpadded samples."""
        return self.measurement.sum_estimate / self.n_true

    @property
    def thermal_bound(self) -> float:
        return thermal_error_bound(self.spec.n, self.alpha)


def run_pipeline(
    f: SampledFunction,
    k: int,
    noise: NoiseModel | None = None,
    alpha: float = 0.0,
    n: int | None = None,
) -> PipelineRun:
    """Run the three-step summing procedure on ``f``.

    With ``noise`` set, ``noise.trials`` repetitions are simulated.  Every
    repetition prepares the same state, so the oracle is applied once and
    the remaining repetitions are charged to ``f`` without recomputation.
    """
    if n is not None and n != f.n:
        raise DomainError(f"register has n={n} but the function needs n={f.n}")
    spec = RegisterSpec(f.n, k)
    start = init_uniform(spec) if alpha == 0 else init_thermal(spec, alpha)
    before = f.query_count
    final = apply_oracle(start, f)
    trials = 1
    if noise is None:
        result = measure_ideal(final)
    else:
        trials = noise.trials
        if trials > 1:
            f.charge(trials - 1)
        result = measure_noisy(final, noise)
    single_run = (f.query_count - before) // trials
    return PipelineRun(spec, f.n_true, alpha, final, result, QueryLedger(single_run, trials))
