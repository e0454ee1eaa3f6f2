import math

import numpy as np
import pytest

from riemann_degree.errors import LoopTooCloseToZero, NonIntegerIndex, OpenLoop, UnresolvedLoop
from riemann_degree.winding import (
    SampledLoop,
    WindingConfig,
    circle_loop,
    resolve,
    winding_integral,
    winding_number,
)


def ex5_loop(t):
    return np.exp(3j * t) + np.exp(-3j * t) + np.exp(1j * t)


def test_examples():
    assert winding_number(SampledLoop(lambda t: np.exp(1j * t))) == 1
    assert winding_number(SampledLoop(lambda t: 5 + 0 * t)) == 0
    assert winding_number(SampledLoop(ex5_loop)) == 1
    assert winding_number(SampledLoop(lambda t: np.exp(-2j * t))) == -2


def test_scalar_sampler_is_accepted():
    assert winding_number(SampledLoop(lambda t: complex(math.cos(3 * t), math.sin(3 * t)))) == 3


def test_integral_examples():
    assert abs(winding_integral(SampledLoop(lambda t: np.exp(1j * t))) - 1) < 1e-6
    assert abs(winding_integral(SampledLoop(ex5_loop)) - 1) < 1e-4
    assert abs(winding_integral(SampledLoop(lambda t: 2 + np.cos(t)))) < 1e-6


def test_fast_loop_needs_refinement():
    # consecutive uniform samples are 2.45 rad apart, more than a quarter turn
    res = resolve(SampledLoop(lambda t: np.exp(100j * t)))
    assert res.index == 100
    assert res.depth >= 1


def test_too_close_to_zero():
    with pytest.raises(LoopTooCloseToZero) as info:
        winding_number(SampledLoop(lambda t: np.exp(1j * t) - 1))
    assert info.value.phi == pytest.approx(0.0)
    with pytest.raises(LoopTooCloseToZero):
        winding_integral(SampledLoop(lambda t: np.exp(1j * t) - 1))


def test_unresolved_at_depth_limit():
    cfg = WindingConfig(initial_samples=8, max_depth=2)
    with pytest.raises(UnresolvedLoop):
        winding_number(SampledLoop(lambda t: np.exp(1j * t) - (1 - 1e-6), cfg))


def test_open_loop_rejected():
    with pytest.raises(OpenLoop):
        winding_number(SampledLoop(lambda t: np.exp(0.5j * t)))


def test_non_integer_index_detected():
    # closed within tolerance but with a jump that is not a whole turn
    cfg = WindingConfig(closure_tol=1.0, initial_samples=16, max_depth=0)
    with pytest.raises(NonIntegerIndex):
        winding_number(SampledLoop(lambda t: np.exp(0.02j * t), cfg))


def test_lipschitz_certificate():
    loop = circle_loop(lambda w: w ** 2 - 0.999, lipschitz=2.0)
    res = resolve(loop)
    assert res.index == 2
    assert 0 < res.certified_min_modulus <= res.min_sample_modulus


def _random_loop(rng):
    """``e^{ikt}`` times a perturbation ``c0 + c1 e^{it} + c2 e^{-2it}`` with ``|c0| > |c1| + |c2|``."""
    k = int(rng.integers(-4, 5))
    c = rng.normal(size=(3, 2)) @ np.array([1, 1j])
    c[0] *= (abs(c[1]) + abs(c[2])) / abs(c[0]) * rng.uniform(1.05, 3.0)
    pert = lambda t: c[0] + c[1] * np.exp(1j * t) + c[2] * np.exp(-2j * t)
    return k, (lambda t: np.exp(1j * k * t) * pert(t))


def test_additivity_scaling_conjugation(rng):
    for _ in range(60):
        k1, l1 = _random_loop(rng)
        k2, l2 = _random_loop(rng)
        w1 = winding_number(SampledLoop(l1))
        w2 = winding_number(SampledLoop(l2))
        assert (w1, w2) == (k1, k2)
        assert winding_number(SampledLoop(lambda t: l1(t) * l2(t))) == w1 + w2
        c = complex(*rng.normal(size=2))
        assert winding_number(SampledLoop(lambda t: c * l1(t))) == w1
        assert winding_number(SampledLoop(lambda t: np.conj(l1(t)))) == -w1


def test_integral_agrees_on_smooth_loops(rng):
    for _ in range(20):
        _, loop = _random_loop(rng)
        sl = SampledLoop(loop)
        assert abs(winding_integral(sl) - winding_number(sl)) < 1e-3


def test_discrete_rouche(rng):
    for _ in range(50):
        k = int(rng.integers(-5, 6))
        radius = rng.uniform(0.5, 3.0)
        big = lambda t, k=k, r=radius: r * np.exp(1j * k * t)
        coeffs = rng.normal(size=(3, 2)) @ np.array([1, 1j])
        coeffs *= 0.99 * radius / np.abs(coeffs).sum()
        small = lambda t, c=coeffs: c[0] + c[1] * np.exp(5j * t) + c[2] * np.exp(-7j * t)
        assert winding_number(SampledLoop(lambda t: big(t) + small(t))) == winding_number(SampledLoop(big))
