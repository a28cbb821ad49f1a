"""Volumes of geodesic balls in simply connected space forms.

``ball_volume(n, s, R)`` is the volume of a radius-``R`` ball in the
``n``-dimensional model space of constant scalar curvature ``s`` (round
sphere, Euclidean space or hyperbolic space). At fixed ``(n, R)`` it is a
strictly decreasing bijection of ``s`` onto ``(0, inf)``, which is what
makes ``invert_scal`` (and hence macroscopic scalar curvature) well defined.
"""
import math
import numbers
from dataclasses import dataclass, field

import numpy as np

from ._kernels import kernels
from .errors import ConvergenceError, DomainError
from .quadrature import integrate

QUAD_TOL = 1e-10
INVERT_TOL = 1e-8


def _check_dim(n, least):
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise DomainError(f"dimension must be an integer, got {n!r}")
    if n < least:
        raise DomainError(f"dimension must be >= {least}, got {n}")
    return int(n)


def _check_positive(name, x):
    x = float(x)
    if not (math.isfinite(x) and x > 0.0):
        raise DomainError(f"{name} must be positive and finite, got {x!r}")
    return x


def _check_finite(name, x):
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return x


def unit_ball_volume(n):
    """Volume b_n of the unit ball in R^n."""
    n = _check_dim(n, 1)
    return kernels.unit_ball_volume(n)


def unit_sphere_volume(n):
    """Volume w_n = (n+1) b_{n+1} of the unit round n-sphere."""
    n = _check_dim(n, 0)
    return kernels.unit_sphere_volume(n)


@dataclass(frozen=True)
class SpaceForm:
    """Model geometry of dimension ``n`` and constant scalar curvature ``s``."""

    n: int
    s: float

    def __post_init__(self):
        object.__setattr__(self, "n", _check_dim(self.n, 2))
        object.__setattr__(self, "s", _check_finite("s", self.s))

    @property
    def sigma(self):
        """Sectional curvature s / (n(n-1))."""
        return self.s / (self.n * (self.n - 1))

    @property
    def rho(self):
        """Curvature radius 1/sqrt|sigma|; ``None`` for the flat model."""
        if self.sigma == 0.0:
            return None
        return 1.0 / math.sqrt(abs(self.sigma))

    @property
    def saturation_radius(self):
        """Radius pi*rho beyond which balls cover the whole sphere (s > 0 only)."""
        if self.sigma <= 0.0:
            return math.inf
        return math.pi * self.rho

    def ball_volume(self, R):
        return ball_volume(self.n, self.s, R)


def ball_volume(n, s, R):
    """Volume V^n_s(R) of a ball of radius ``R``.

    Closed forms: the integrals of sin^(n-1) and sinh^(n-1) come from
    their two-term recurrence, and for |s R^2| <= n(n-1) a power series
    in s R^2 is summed instead (the recurrence cancels badly near the
    flat case). For s > 0 and R >= pi*rho the value saturates at the
    total sphere volume w_n rho^n.
    """
    n = _check_dim(n, 2)
    s = _check_finite("s", s)
    R = _check_positive("R", R)
    return kernels.ball_volume(n, s, R)


def _integrand(n, s):
    m = n - 1
    sigma = s / (n * m)
    if sigma > 0.0:
        q = math.sqrt(sigma)
        return lambda t: (np.sin(q * t) / q) ** m
    if sigma < 0.0:
        q = math.sqrt(-sigma)
        return lambda t: (np.sinh(q * t) / q) ** m
    return lambda t: t ** m


def ball_volume_quadrature(n, s, R, tol=QUAD_TOL):
    """Independent evaluation of V^n_s(R) by adaptive Gauss-Kronrod.

    Integrates w_{n-1} * (sn_sigma(t))^(n-1) over [0, R], clamping the
    upper limit to pi*rho on the sphere. ``tol`` is an absolute error
    target; see :func:`macroscal.quadrature.integrate` for the round-off floor.
    """
    n = _check_dim(n, 2)
    s = _check_finite("s", s)
    R = _check_positive("R", R)
    tol = _check_positive("tol", tol)
    sigma = s / (n * (n - 1))
    upper = R
    if sigma > 0.0:
        upper = min(R, math.pi / math.sqrt(sigma))
    w = kernels.unit_sphere_volume(n - 1)
    value, _ = integrate(_integrand(n, s), 0.0, upper, tol=tol / w)
    return w * value


def invert_scal(n, R, v, tol=INVERT_TOL):
    """The unique s with ``ball_volume(n, s, R) == v``.

    Brackets geometrically from s = 0 towards the side indicated by
    comparing ``v`` with the flat volume, then refines with a safeguarded
    Illinois iteration until the bracket is below ``tol * max(1, |s|)``.
    """
    n = _check_dim(n, 2)
    R = _check_positive("R", R)
    v = _check_positive("v", v)
    tol = _check_positive("tol", tol)
    s, iterations = kernels.invert_scal(n, R, v, tol)
    if iterations < 0 or not math.isfinite(s):
        raise ConvergenceError(f"invert_scal failed for n={n}, R={R!r}, v={v!r}")
    return s


def kappa_argument(n, c):
    """The normalized volume threshold (n-1)^(n-1) / n^n * c."""
    return (n - 1) ** (n - 1) / n ** n * c


def kappa_n(n, c, tol=INVERT_TOL):
    """Width-gate constant for Guth constant ``c``: f_n((n-1)^(n-1)/n^n * c).

    ``f_n`` inverts s -> V^n_s(1). The true dimensional constant is not
    known numerically, so the result is only meaningful relative to ``c``.
    """
    n = _check_dim(n, 3)
    c = _check_positive("c", c)
    return invert_scal(n, 1.0, kappa_argument(n, c), tol)


@dataclass
class VolumeTable:
    """Sampled values of s -> V^n_s(R), one row per (s, R)."""

    columns = ("n", "s", "R", "V", "V_over_bn")
    rows: list = field(default_factory=list)

    def curve(self, R):
        """Rows for a single radius, in increasing s."""
        return [row for row in self.rows if row[2] == R]

    def radii(self):
        return sorted({row[2] for row in self.rows})

    def to_csv(self):
        from ._format import csv_text
        return csv_text(self.columns, self.rows)


def figure1_table(n, radii, s_min, s_max, samples):
    """Tabulate V^n_s(R) and V/b_n on a uniform s-grid for each radius."""
    n = _check_dim(n, 2)
    radii = [_check_positive("R", R) for R in radii]
    if not radii:
        raise DomainError("radii must be nonempty")
    s_min = _check_finite("s_min", s_min)
    s_max = _check_finite("s_max", s_max)
    if not s_min < s_max:
        raise DomainError(f"need s_min < s_max, got {s_min!r}, {s_max!r}")
    if isinstance(samples, bool) or not isinstance(samples, numbers.Integral) or samples < 2:
        raise DomainError(f"samples must be an integer >= 2, got {samples!r}")
    grid = np.linspace(s_min, s_max, int(samples))
    bn = kernels.unit_ball_volume(n)
    table = VolumeTable()
    for R in radii:
        for s in grid:
            V = kernels.ball_volume(n, float(s), R)
            table.rows.append((n, float(s), R, V, V / bn))
    return table
