"""Register sizes and the fixed-point encoding of values onto output spins.

Two bit-order conventions are in play:

* output register: spin ``j`` (1-based) carries weight ``2**(j-1)``, so
  ``bits[0]`` is the least significant digit;
* input register: the bits of ``i - 1`` are listed most significant first.

Encoded values are held as the integer code index ``m``; the real value
``m * 2**-k`` is produced only on decode.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CapacityError, DomainError

N_MAX_SPINS = 24
K_MAX_SPINS = 32


@dataclass(frozen=True)
class RegisterSpec:
    n: int
    k: int

    def __post_init__(self):
        for name, value, limit in (("n", self.n, N_MAX_SPINS), ("k", self.k, K_MAX_SPINS)):
            if not isinstance(value, int) or isinstance(value, bool):
                raise DomainError(f"{name} must be an integer, got {value!r}")
            if value < 1:
                raise DomainError(f"{name} must be >= 1, got {value}")
            if value > limit:
                raise CapacityError(f"{name}={value} exceeds the limit {limit}")

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def delta(self) -> float:
        return math.ldexp(1.0, -self.k)


@dataclass(frozen=True)
class OutputCode:
    """A k-spin output register state, stored as its integer code index."""

    m: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= K_MAX_SPINS:
            raise DomainError(f"k must be in [1, {K_MAX_SPINS}], got {self.k}")
        if not 0 <= self.m < (1 << self.k):
            raise DomainError(f"code index {self.m} does not fit in {self.k} spins")

    @classmethod
    def from_bits(cls, bits) -> OutputCode:
        bits = tuple(int(b) for b in bits)
        if not bits or any(b not in (0, 1) for b in bits):
            raise DomainError(f"bits must be a non-empty sequence of 0/1, got {bits}")
        return cls(sum(b << j for j, b in enumerate(bits)), len(bits))

    @property
    def bits(self) -> tuple[int, ...]:
        """Spin values ``(b_1, ..., b_k)``, least significant first."""
        return tuple((self.m >> j) & 1 for j in range(self.k))

    @property
    def value(self) -> float:
        return decode_code(self)


def encode_value(x: float, k: int) -> OutputCode:
    """Encode ``x`` as the start of the width-``2**-k`` interval holding it.

    Intervals are half-open except the top one, so ``x == 1`` maps to the
    all-ones code.
    """
    if not 1 <= k <= K_MAX_SPINS:
        raise DomainError(f"k must be in [1, {K_MAX_SPINS}], got {k}")
    if not 0.0 <= x <= 1.0:  # also rejects NaN
        raise DomainError(f"value {x!r} lies outside [0, 1]")
    m = math.floor(math.ldexp(x, k))
    return OutputCode(min(m, (1 << k) - 1), k)


def decode_code(c: OutputCode) -> float:
    return math.ldexp(c.m, -c.k)


def index_to_bits(i: int, n: int) -> tuple[int, ...]:
    """Input-register spins for sample ``i`` (1-based), most significant first."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not 1 <= i <= (1 << n):
        raise DomainError(f"index {i} outside [1, {1 << n}]")
    v = i - 1
    return tuple((v >> (n - 1 - p)) & 1 for p in range(n))


def bits_to_index(bits) -> int:
    bits = tuple(int(b) for b in bits)
    if not bits or any(b not in (0, 1) for b in bits):
        raise DomainError(f"bits must be a non-empty sequence of 0/1, got {bits}")
    v = 0
    for b in bits:
        v = (v << 1) | b
    return v + 1


def spins_for(count: int) -> int:
    """Smallest n >= 1 with ``2**n >= count``."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    return max(1, (count - 1).bit_length())
