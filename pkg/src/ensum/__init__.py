"""Simulator for ensemble (mixed-state) summing of sampled functions."""
__version__ = "0.1.0"

from .complexity import (
    AlgorithmKind,
    ComplexityReport,
    advantage_regime,
    search_threshold,
    summing_threshold,
    table_row,
)
from .ensemble import DiagonalEnsemble, deviation_coefficients, init_thermal, init_uniform
from .errors import (
    CapacityError,
    DomainError,
    EnsumError,
    ModelValidityError,
    OracleContractError,
    ParameterError,
    ValidationError,
)
from .integrate import IntegrandSpec, IntegralEstimate, estimate_integral, estimate_mean, sample_points
from .kernels import BACKEND
from .measurement import (
    MeasurementResult,
    NoiseModel,
    measure_ideal,
    measure_noisy,
    required_trials,
    thermal_error_bound,
)
from .oracle import QueryLedger, SampledFunction, apply_oracle, load_table, load_table_file
from .pipeline import PipelineRun, run_pipeline
from .registers import (
    OutputCode,
    RegisterSpec,
    bits_to_index,
    decode_code,
    encode_value,
    index_to_bits,
)

