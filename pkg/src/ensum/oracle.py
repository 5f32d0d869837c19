"""The sampled function and the XOR oracle that writes it into the ensemble."""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .ensemble import DiagonalEnsemble
from .errors import CapacityError, DomainError, OracleContractError, ValidationError
from .registers import N_MAX_SPINS, spins_for


def _out_of_range(values: np.ndarray) -> list[int]:
    bad = ~((values >= 0.0) & (values <= 1.0))
    return (np.flatnonzero(bad) + 1).tolist()


class SampledFunction:
    """``f: {1..N} -> [0, 1]`` backed by a table or a callable.

    ``N`` is the padded (power-of-two) domain; indices above ``n_true``
    evaluate to zero.  ``n`` may widen the domain beyond the minimum
    power of two.  ``query_count`` counts oracle applications, not
    point evaluations.
    """

    def __init__(
        self,
        table: Sequence[float] | None = None,
        func: Callable[[int], float] | None = None,
        n_true: int | None = None,
        n: int | None = None,
    ):
        if (table is None) == (func is None):
            raise ValueError("give exactly one of table or func")
        if table is not None:
            values = np.asarray(table, dtype=np.float64).ravel()
            n_true = len(values)
        elif n_true is None or n_true < 1:
            raise ValidationError("a callable source needs n_true >= 1")
        if n_true > (1 << N_MAX_SPINS):
            raise CapacityError(f"{n_true} samples exceed the limit 2**{N_MAX_SPINS}")
        needed = spins_for(n_true)
        if n is None:
            n = needed
        elif n > N_MAX_SPINS:
            raise CapacityError(f"n={n} exceeds the limit {N_MAX_SPINS}")
        elif n < needed:
            raise ValidationError(f"{n_true} samples do not fit in n={n} input spins")
        self.n = n
        self.N = 1 << self.n
        self.n_true = n_true
        self._func = func
        self._memo = None
        if table is not None:
            bad = _out_of_range(values)
            if bad:
                raise ValidationError(f"table values outside [0, 1] at indices {bad[:20]}", bad)
            padded = np.zeros(self.N)
            padded[:n_true] = values
            padded.flags.writeable = False
            self._memo = padded
        self._lock = threading.Lock()
        self.query_count = 0

    @property
    def is_table(self) -> bool:
        return self._func is None

    def values(self) -> np.ndarray:
        """All ``N`` function values, evaluating a callable source once."""
        if self._memo is None:
            raw = np.zeros(self.N)
            for i in range(1, self.n_true + 1):
                raw[i - 1] = self._func(i)
            bad = _out_of_range(raw)
            if bad:
                raise OracleContractError(
                    f"oracle returned values outside [0, 1] at indices {bad[:20]}", bad
                )
            raw.flags.writeable = False
            self._memo = raw
        return self._memo

    def reset(self):
        """Drop the memoised callable values and zero the query counter."""
        if not self.is_table:
            self._memo = None
        self.query_count = 0

    def codes(self, k: int) -> np.ndarray:
        return kernels.encode_values(self.values(), k)

    def charge(self, queries: int = 1):
        with self._lock:
            self.query_count += queries

    def __call__(self, i: int) -> float:
        if not 1 <= i <= self.N:
            raise DomainError(f"index {i} outside [1, {self.N}]")
        return float(self.values()[i - 1])


@dataclass(frozen=True)
class QueryLedger:
    single_run_queries: int
    trials: int

    @property
    def overall_queries(self) -> int:
        return self.single_run_queries * self.trials

    def as_dict(self) -> dict:
        return {
            "single_run_queries": self.single_run_queries,
            "trials": self.trials,
            "overall_queries": self.overall_queries,
        }


def load_table(values: Sequence[float], n: int | None = None) -> SampledFunction:
    """Table-backed function, zero-padded to a power-of-two domain (N >= 2)."""
    if len(values) == 0:
        raise ValidationError("empty function table")
    return SampledFunction(table=values, n=n)


def read_table_file(path) -> list[float]:
    """Read a function table from disk.

    ``.json`` files hold a single array of numbers.  Anything else is plain
    text with one decimal per line; blank lines and ``#`` comments are
    skipped.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc.msg})") from exc
        if not isinstance(data, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in data
        ):
            raise ValidationError(f"{path}: expected a single array of numbers")
        return [float(v) for v in data]
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise ValidationError(f"{path}:{lineno}: not a number: {line!r}", [lineno]) from None
    return values


def load_table_file(path, n: int | None = None) -> SampledFunction:
    return load_table(read_table_file(path), n=n)


def apply_oracle(e: DiagonalEnsemble, f: SampledFunction) -> DiagonalEnsemble:
    """One query: XOR the encoded ``f(i)`` into every entry's output code."""
    if e.spec.N != f.N:
        raise DomainError(f"ensemble has {e.spec.N} inputs but f is defined on {f.N}")
    fcodes = f.codes(e.spec.k)
    out = e.with_codes(kernels.xor_codes(e.codes, fcodes))
    f.charge()
    return out
