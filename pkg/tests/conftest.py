import math

import mpmath
import pytest
from hypothesis import settings

from macroscal._kernels import available_backends

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    """Each importable kernel module in turn."""
    return available_backends()[request.param]


def mp_ball_volume(n, s, R, dps=30):
    """Ball volume by mpmath quadrature of the defining integral."""
    with mpmath.workdps(dps):
        s, R = mpmath.mpf(s), mpmath.mpf(R)
        sigma = s / (n * (n - 1))
        m = n - 1
        w = 2 * mpmath.pi ** (mpmath.mpf(n) / 2) / mpmath.gamma(mpmath.mpf(n) / 2)
        if sigma == 0:
            return float(mpmath.pi ** (mpmath.mpf(n) / 2) / mpmath.gamma(mpmath.mpf(n) / 2 + 1) * R ** n)
        if sigma > 0:
            q = mpmath.sqrt(sigma)
            upper = min(R, mpmath.pi / q)
            return float(w * mpmath.quad(lambda t: (mpmath.sin(q * t) / q) ** m, [0, upper]))
        q = mpmath.sqrt(-sigma)
        return float(w * mpmath.quad(lambda t: (mpmath.sinh(q * t) / q) ** m, [0, R]))


def rel_err(a, b):
    return abs(a - b) / max(abs(b), math.ulp(1.0))


# one line per acceptance criterion, filled by tests/test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
