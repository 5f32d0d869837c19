import math

import numpy as np
import pytest

from ensum.errors import DomainError, ValidationError
from ensum.integrate import IntegrandSpec, estimate_integral, estimate_mean, sample_points
from ensum.measurement import NoiseModel
from ensum.oracle import SampledFunction, load_table


@pytest.mark.parametrize("a,b,N,pts", [(0, 1, 4, [0, 0.25, 0.5, 0.75]), (-1, 1, 2, [-1, 0]), (2, 3, 1, [2])])
def test_sample_points(a, b, N, pts):
    assert sample_points(a, b, N).tolist() == pts


@pytest.mark.parametrize("a,b,N", [(1, 1, 4), (2, 1, 4), (0, 1, 0)])
def test_sample_points_domain(a, b, N):
    with pytest.raises(DomainError):
        sample_points(a, b, N)


def test_linear_n4_hand_value():
    est = estimate_integral(IntegrandSpec(lambda x: x, 0.0, 1.0, L=1.0), n=2, k=20)
    assert est.value == 0.375
    assert abs(est.value - 0.5) == 0.125 <= est.riemann_bound == 0.25


@pytest.mark.parametrize("c", [0.0, 0.3, 0.5, 1.0])
def test_constant_integrand(c):
    est = estimate_integral(IntegrandSpec(lambda x: c, -0.5, 1.5, L=0.0), n=5, k=16)
    assert est.riemann_bound == 0.0
    assert 0 <= 2 * c - est.value <= est.encoding_bound


def test_linear_n10_k20():
    est = estimate_integral(IntegrandSpec(lambda x: x, 0.0, 1.0, L=1.0), n=10, k=20)
    assert abs(est.value - 0.5) <= 1 / 1024 + 2**-20


BATTERY = [
    ("linear", lambda a, b: (lambda x: (x - a) / (b - a)), lambda a, b: 1 / (b - a), lambda a, b: (b - a) / 2),
    ("quadratic", lambda a, b: (lambda x: ((x - a) / (b - a)) ** 2), lambda a, b: 2 / (b - a), lambda a, b: (b - a) / 3),
    ("sine", lambda a, b: (lambda x: 0.5 * (1 + np.sin(3 * x))), lambda a, b: 1.5,
     lambda a, b: (b - a) / 2 + (math.cos(3 * a) - math.cos(3 * b)) / 6),
]


@pytest.mark.parametrize("name,g,L,exact", BATTERY, ids=[b[0] for b in BATTERY])
@pytest.mark.parametrize("a,b", [(0.0, 1.0), (-0.3, 0.4), (1.0, 2.0)])
def test_battery_within_bound(name, g, L, exact, a, b):
    for n in range(3, 11):
        est = estimate_integral(IntegrandSpec(g(a, b), a, b, L=L(a, b)), n=n, k=16)
        assert abs(est.value - exact(a, b)) <= est.riemann_bound + est.encoding_bound


def test_convergence_in_k():
    g = lambda x: 0.5 * (1 + np.sin(7 * x))
    n = 8
    xs = sample_points(0, 1, 2**n)
    riemann = math.fsum(g(xs)) / 2**n
    errors = [riemann - estimate_integral(IntegrandSpec(g, 0, 1), n, k).value for k in range(4, 21)]
    assert all(e >= 0 for e in errors)
    assert all(e1 <= e0 for e0, e1 in zip(errors, errors[1:]))
    mean_ratio = (errors[0] / errors[-1]) ** (1 / (len(errors) - 1))
    assert 1.8 <= mean_ratio <= 2.2


def test_convergence_in_n_linear():
    g = lambda x: x
    errs = [0.5 - estimate_integral(IntegrandSpec(g, 0, 1), n, 28).value for n in range(2, 12)]
    for e0, e1 in zip(errs, errs[1:]):
        assert e1 <= e0 / 2 + 2**-28


def test_range_validation_names_point():
    with pytest.raises(ValidationError) as err:
        estimate_integral(IntegrandSpec(lambda x: 2 * x, 0, 1), n=2, k=8)
    assert err.value.offending == [0.75]


def test_lipschitz_spot_check():
    with pytest.raises(ValidationError):
        estimate_integral(IntegrandSpec(lambda x: x**2, 0, 1, L=0.5), n=3, k=8)


def test_wide_interval_flagged():
    est = estimate_integral(IntegrandSpec(lambda x: 0.5, 0, 3, L=0.0), n=3, k=8)
    assert not est.riemann_bound_valid
    assert est.as_dict()["riemann_bound_validity"] == "outside (b-a) <= 2"


def test_bound_components_sum():
    est = estimate_integral(IntegrandSpec(lambda x: x, 0, 1, L=1.0), n=6, k=10,
                            noise=NoiseModel(100.0, seed=2, trials=9), alpha=1e-3)
    assert est.total_bound == pytest.approx(
        est.riemann_bound + est.encoding_bound + est.noise_bound + est.thermal_bound)
    assert est.noise_bound > 0 and est.N_e == 9
    assert est.thermal_bound == pytest.approx(6 * 1e-3 / 2)


def test_noisy_estimate_within_budget():
    g = lambda x: x
    for seed in range(30):
        est = estimate_integral(IntegrandSpec(g, 0, 1, L=1.0), n=6, k=10, noise=NoiseModel(50.0, seed=seed, trials=16))
        assert abs(est.value - 0.5) <= est.total_bound


def test_estimate_mean_examples():
    assert estimate_mean(load_table([0.0] * 4), None, 8) == 0.0
    assert estimate_mean(load_table([0.25, 0.5]), 1, 2) == 0.375
    assert estimate_mean(load_table([0.25, 0.5, 0.75]), None, 8) == 0.5


def test_estimate_mean_random_table():
    rng = np.random.default_rng(10)
    values = rng.random(2**10)
    k = 12
    m = estimate_mean(load_table(values), 10, k)
    assert 0 <= values.mean() - m < 2**-k


def test_estimate_mean_callable():
    f = SampledFunction(func=lambda i: (i - 1) / 8, n_true=8)
    assert estimate_mean(f, 3, 8) == pytest.approx(3.5 / 8)
