"""Numpy fallback for the compiled kernels in ``_core.pyx``."""
import numpy as np


def encode_values(values, k):
    top = np.uint64((1 << k) - 1)
    m = np.floor(np.ldexp(np.asarray(values, dtype=np.float64), k)).astype(np.uint64)
    return np.minimum(m, top)


def xor_codes(codes, fcodes):
    return np.bitwise_xor(codes, fcodes)


def spin_signals(weights, codes, k):
    out = np.zeros(k, dtype=np.float64)
    for j in range(k):
        mask = ((codes >> np.uint64(j)) & np.uint64(1)).astype(bool)
        out[j] = weights[mask].sum()
    return out
