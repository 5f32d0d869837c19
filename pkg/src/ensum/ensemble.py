"""Diagonal mixed states of the input and output registers.

A :class:`DiagonalEnsemble` stores one ``(weight, code)`` pair per input
index; coherences are absent by construction, so the density matrix is
fully described by these two arrays.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ModelValidityError
from .registers import OutputCode, RegisterSpec

TRACE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DiagonalEnsemble:
    spec: RegisterSpec
    weights: np.ndarray
    codes: np.ndarray

    def __post_init__(self):
        w = np.ascontiguousarray(self.weights, dtype=np.float64)
        c = np.ascontiguousarray(self.codes, dtype=np.uint64)
        N = self.spec.N
        if w.shape != (N,) or c.shape != (N,):
            raise DomainError(f"expected {N} entries, got weights {w.shape} and codes {c.shape}")
        if np.any(w < 0):
            raise DomainError("mixture weights must be non-negative")
        if abs(w.sum() - 1.0) > TRACE_TOL:
            raise DomainError(f"weights sum to {w.sum()!r}, not 1")
        if self.spec.k < 64 and np.any(c >> np.uint64(self.spec.k)):
            raise DomainError(f"codes exceed {self.spec.k} spins")
        w.flags.writeable = False
        c.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "codes", c)

    def __len__(self):
        return self.spec.N

    def entry(self, i: int) -> tuple[float, OutputCode]:
        """Weight and output code of input index ``i`` (1-based)."""
        if not 1 <= i <= self.spec.N:
            raise DomainError(f"index {i} outside [1, {self.spec.N}]")
        return float(self.weights[i - 1]), OutputCode(int(self.codes[i - 1]), self.spec.k)

    def entries(self) -> dict[int, tuple[float, OutputCode]]:
        return {i: self.entry(i) for i in range(1, self.spec.N + 1)}

    def with_codes(self, codes) -> DiagonalEnsemble:
        return DiagonalEnsemble(self.spec, self.weights, codes)

    def same_state(self, other: DiagonalEnsemble) -> bool:
        return (
            self.spec == other.spec
            and np.array_equal(self.weights, other.weights)
            and np.array_equal(self.codes, other.codes)
        )


@dataclass(frozen=True)
class ThermalParams:
    alpha: float
    chi: np.ndarray

    def __post_init__(self):
        n = (len(self.chi) - 1).bit_length()
        if np.any(np.abs(self.chi) > n):
            raise ModelValidityError(f"deviation coefficients exceed |chi| <= {n}")
        if int(np.sum(self.chi, dtype=np.int64)) != 0:
            raise ModelValidityError("deviation coefficients must sum to zero")


def init_uniform(spec: RegisterSpec) -> DiagonalEnsemble:
    N = spec.N
    return DiagonalEnsemble(spec, np.full(N, 1.0 / N), np.zeros(N, dtype=np.uint64))


def deviation_coefficients(n: int) -> np.ndarray:
    """Net spin polarisation ``#up - #down`` of every input state.

    Element ``i - 1`` belongs to input index ``i``; a 0 bit is spin up.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    idx = np.arange(1 << n, dtype=np.uint64)
    popcount = np.zeros(idx.shape, dtype=np.int64)
    for p in range(n):
        popcount += ((idx >> np.uint64(p)) & np.uint64(1)).astype(np.int64)
    return n - 2 * popcount


def init_thermal(spec: RegisterSpec, alpha: float) -> DiagonalEnsemble:
    """Room-temperature thermal state: weights ``(1 + alpha * chi_i) / N``."""
    if not alpha >= 0:
        raise ModelValidityError(f"alpha must be >= 0, got {alpha!r}")
    if alpha * spec.n >= 1:
        raise ModelValidityError(
            f"alpha * n = {alpha * spec.n!r} >= 1 would give negative weights"
        )
    params = ThermalParams(alpha, deviation_coefficients(spec.n))
    weights = (1.0 + params.alpha * params.chi) / spec.N
    return DiagonalEnsemble(spec, weights, np.zeros(spec.N, dtype=np.uint64))
