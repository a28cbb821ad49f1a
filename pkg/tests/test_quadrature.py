import math

import numpy as np
import pytest

from macroscal.errors import ConvergenceError
from macroscal.quadrature import bracketed_root, integrate


@pytest.mark.parametrize("f,a,b,exact", [
    (np.sin, 0.0, math.pi, 2.0),
    (np.exp, -1.0, 2.0, math.e ** 2 - math.e ** -1),
    (lambda t: t ** 7, 0.0, 1.3, 1.3 ** 8 / 8),
    (lambda t: np.sqrt(t), 0.0, 1.0, 2.0 / 3.0),
])
def test_integrate_known(f, a, b, exact):
    value, err = integrate(f, a, b, tol=1e-12)
    assert abs(value - exact) <= 1e-12 + 64 * np.finfo(float).eps * abs(exact)
    assert err <= 1e-12 + 64 * np.finfo(float).eps * abs(exact)


def test_integrate_empty_interval():
    assert integrate(np.sin, 1.0, 1.0) == (0.0, 0.0)


def test_integrate_non_convergence():
    # oscillation far beyond what 3 intervals resolve
    with pytest.raises(ConvergenceError):
        integrate(lambda t: np.sin(1e4 * t), 0.0, 1.0, tol=1e-14, max_intervals=3)


def test_bracketed_root():
    root = bracketed_root(lambda x: x ** 3 - 2.0, 0.0, 5.0, xtol=1e-14)
    assert root == pytest.approx(2.0 ** (1 / 3), abs=1e-13)


def test_bracketed_root_requires_sign_change():
    with pytest.raises(ConvergenceError):
        bracketed_root(lambda x: x * x + 1.0, -1.0, 1.0, xtol=1e-10)


def test_bracketed_root_relative_tolerance():
    root = bracketed_root(lambda x: x - 123456.789, 1.0, 1e6, xtol=0.0, rtol=1e-14)
    assert abs(root - 123456.789) <= 1e-14 * 123456.789 * 2


def test_bracketed_root_stops_at_ulp_resolution():
    # xtol far below the spacing of doubles near the root must still terminate
    root = bracketed_root(lambda x: x - 1e5, 1.0, 1e6, xtol=1e-20)
    assert abs(root - 1e5) <= 4 * math.ulp(1e6)
