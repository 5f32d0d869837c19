import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import oracle_code
from ensum.errors import CapacityError, DomainError
from ensum.registers import (
    OutputCode,
    RegisterSpec,
    bits_to_index,
    decode_code,
    encode_value,
    index_to_bits,
    spins_for,
)


def test_register_spec_derived_sizes():
    spec = RegisterSpec(3, 5)
    assert spec.N == 8
    assert spec.delta == 1 / 32


@pytest.mark.parametrize("n,k,exc", [(0, 4, DomainError), (25, 4, CapacityError),
                                     (4, 33, CapacityError), (4, 0, DomainError)])
def test_register_spec_limits(n, k, exc):
    with pytest.raises(exc):
        RegisterSpec(n, k)


@pytest.mark.parametrize("x,k,bits,value", [
    (0.0, 3, (0, 0, 0), 0.0),
    (1.0, 3, (1, 1, 1), 0.875),
    (0.3, 3, (0, 1, 0), 0.25),
])
def test_encode_examples(x, k, bits, value):
    c = encode_value(x, k)
    assert c.bits == bits
    assert decode_code(c) == value


@pytest.mark.parametrize("bits,value", [((0, 0, 0), 0.0), ((1, 1, 1), 0.875), ((0, 1, 0), 0.25)])
def test_decode_examples(bits, value):
    assert decode_code(OutputCode.from_bits(bits)) == value


@pytest.mark.parametrize("x", [-0.1, 1.0000001, float("nan")])
def test_encode_rejects_unnormalised(x):
    with pytest.raises(DomainError):
        encode_value(x, 4)


def test_interior_boundary_belongs_to_upper_interval():
    assert encode_value(0.25, 3).m == 2
    assert encode_value(np.nextafter(0.25, 0), 3).m == 1


def test_floor_rule_dense_grid():
    for k in range(1, 17):
        delta = 2.0**-k
        xs = np.linspace(0, 1, 2001)
        decoded = np.array([decode_code(encode_value(float(x), k)) for x in xs])
        diff = xs - decoded
        assert np.all(diff[:-1] >= 0) and np.all(diff[:-1] < delta)
        assert 1.0 - decode_code(encode_value(1.0, k)) == delta
        assert np.all(np.diff(decoded) >= 0)


def test_decode_image_is_the_delta_grid():
    k = 8
    values = {decode_code(OutputCode(m, k)) for m in range(2**k)}
    assert values == {m / 2**k for m in range(2**k)}
    assert len(values) == 2**k


@given(st.floats(0, 1), st.integers(1, 32))
def test_encode_matches_rational_oracle(x, k):
    assert encode_value(x, k).m == oracle_code(x, k)


@given(st.integers(1, 32).flatmap(lambda k: st.tuples(st.just(k), st.integers(0, 2**k - 1))))
def test_bits_roundtrip(km):
    k, m = km
    c = OutputCode(m, k)
    assert OutputCode.from_bits(c.bits) == c
    assert decode_code(c) == math.fsum(2.0**-k * 2**j * b for j, b in enumerate(c.bits))


@pytest.mark.parametrize("i,n,bits", [(1, 2, (0, 0)), (4, 2, (1, 1)), (3, 2, (1, 0))])
def test_index_bits_examples(i, n, bits):
    assert index_to_bits(i, n) == bits
    assert bits_to_index(bits) == i


def test_index_bits_roundtrip_exhaustive():
    for n in range(1, 9):
        for i in range(1, 2**n + 1):
            assert bits_to_index(index_to_bits(i, n)) == i


@pytest.mark.parametrize("i", [0, 5])
def test_index_out_of_range(i):
    with pytest.raises(DomainError):
        index_to_bits(i, 2)


@pytest.mark.parametrize("count,n", [(1, 1), (2, 1), (3, 2), (4, 2), (5, 3), (1024, 10), (1025, 11)])
def test_spins_for(count, n):
    assert spins_for(count) == n
