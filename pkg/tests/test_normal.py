import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubesplit.normal import std_normal_cdf, std_normal_cdf_inv

mpmath.mp.dps = 30


def _cdf_quadrature(x):
    # independent oracle: integrate the Gaussian density directly
    f = lambda y: mpmath.exp(-y * y / 2) / mpmath.sqrt(2 * mpmath.pi)
    return float(mpmath.quad(f, [-mpmath.inf, 0, x]))


def test_cdf_examples():
    assert std_normal_cdf(0.0) == 0.5
    assert std_normal_cdf(1.0) == pytest.approx(0.8413447461, abs=1e-9)
    assert std_normal_cdf(1.0) == pytest.approx(_cdf_quadrature(1), abs=1e-12)


@given(st.floats(-8, 8))
def test_cdf_symmetry(x):
    assert std_normal_cdf(-x) + std_normal_cdf(x) == pytest.approx(1.0, abs=1e-12)


def test_cdf_accuracy_against_quadrature():
    for x in np.linspace(-8, 8, 41):
        assert abs(std_normal_cdf(x) - _cdf_quadrature(mpmath.mpf(x))) <= 1e-9


def test_inverse_accuracy_against_high_precision():
    ps = np.concatenate([np.linspace(0.001, 0.999, 57), [1e-300, 1e-30, 1e-10, 1e-5, 0.02425,
                                                         0.075, 0.925, 1 - 1e-5, 1 - 1e-12]])
    for p in ps:
        with mpmath.workdps(400):
            exact = float(mpmath.sqrt(2) * mpmath.erfinv(2 * mpmath.mpf(p) - 1))
        assert abs(std_normal_cdf_inv(p) - exact) <= 1e-9 * max(1.0, abs(exact))


def test_round_trip():
    x = np.linspace(-6, 6, 2001)
    assert np.max(np.abs(std_normal_cdf_inv(std_normal_cdf(x)) - x)) < 1e-7


def test_vectorized_shapes():
    p = np.array([[0.1, 0.5], [0.7, 0.99]])
    out = std_normal_cdf_inv(p)
    assert out.shape == (2, 2)
    assert out[0, 1] == 0.0
    assert isinstance(std_normal_cdf_inv(0.3), float)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, float("nan")])
def test_inverse_rejects_closed_endpoints(p):
    with pytest.raises(ValueError):
        std_normal_cdf_inv(p)
