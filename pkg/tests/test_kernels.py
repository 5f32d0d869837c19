import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import oracle_code
from ensum import _core_py, kernels

BACKENDS = kernels.available_backends()


def test_backend_selected():
    assert kernels.BACKEND in BACKENDS


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_encode_values_matches_oracle(name):
    mod = BACKENDS[name]
    rng = np.random.default_rng(1)
    values = np.concatenate([rng.random(500), [0.0, 1.0, 0.5, 0.25, np.nextafter(1.0, 0)]])
    for k in (1, 4, 16, 32):
        got = mod.encode_values(values, k)
        assert got.dtype == np.uint64
        assert got.tolist() == [oracle_code(float(v), k) for v in values]


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_spin_signals_hand_case(name):
    mod = BACKENDS[name]
    weights = np.array([0.5, 0.5])
    codes = np.array([0b01, 0b10], dtype=np.uint64)
    assert mod.spin_signals(weights, codes, 2).tolist() == [0.5, 0.5]


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_spin_signals_top_bit_k32(name):
    mod = BACKENDS[name]
    codes = np.array([2**32 - 1, 2**31], dtype=np.uint64)
    got = mod.spin_signals(np.array([0.25, 0.75]), codes, 32)
    assert got[31] == 1.0 and got[0] == 0.25


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, st.integers(1, 300), elements=st.floats(0, 1)), st.integers(1, 32))
def test_backends_agree(values, k):
    codes = {name: mod.encode_values(values, k) for name, mod in BACKENDS.items()}
    ref = codes["python"]
    for c in codes.values():
        assert np.array_equal(c, ref)
    weights = np.full(len(values), 1.0 / len(values))
    fcodes = ref[::-1].copy()
    for mod in BACKENDS.values():
        x = mod.xor_codes(ref, fcodes)
        assert np.array_equal(x, _core_py.xor_codes(ref, fcodes))
        np.testing.assert_allclose(
            mod.spin_signals(weights, x, k), _core_py.spin_signals(weights, x, k), rtol=0, atol=1e-12
        )
