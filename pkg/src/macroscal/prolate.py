"""Prolate hyperellipsoid products with large macroscopic curvature.

E^k(eps, a) has k short semi-axes ``eps`` and one long semi-axis ``a``.
Choosing ``a = a(eps)`` so that its area stays w_k keeps the k-systole of
E^k x S^(n-k) fixed while ball volumes in the universal cover shrink like
eps^(k-1), driving the macroscopic scalar curvature to infinity.
"""
import math
import numbers
from dataclasses import astuple, dataclass

import numpy as np

from . import spaceform
from ._format import csv_text
from .errors import ConvergenceError, DomainError
from .quadrature import bracketed_root, integrate

AREA_TOL = 1e-12
SOLVE_TOL = 1e-11


def _check_k(k):
    if isinstance(k, bool) or not isinstance(k, numbers.Integral) or k < 2:
        raise DomainError(f"k must be an integer >= 2, got {k!r}")
    return int(k)


def _check_eps(eps):
    eps = float(eps)
    if not (0.0 < eps <= 1.0):
        raise DomainError(f"eps must lie in (0, 1], got {eps!r}")
    return eps


@dataclass(frozen=True)
class ProlateSpec:
    k: int
    eps: float
    a: float

    def __post_init__(self):
        _check_k(self.k)
        if not (0.0 < self.eps <= self.a):
            raise DomainError(f"need 0 < eps <= a, got eps={self.eps!r}, a={self.a!r}")

    def area(self, tol=AREA_TOL):
        return ellipsoid_area(self.k, self.eps, self.a, tol)


def ellipsoid_area(k, eps, a, tol=AREA_TOL):
    """k-dimensional area of E^k(eps, a), as a surface of revolution.

    With the profile (eps sin t, a cos t), t in [0, pi], rotated about the
    long axis: area = w_{k-1} * int (eps sin t)^(k-1) sqrt(a^2 sin^2 t + eps^2 cos^2 t) dt.
    """
    k = _check_k(k)
    eps, a = float(eps), float(a)
    if not (0.0 < eps <= a and math.isfinite(a)):
        raise DomainError(f"need 0 < eps <= a, got eps={eps!r}, a={a!r}")
    tol = spaceform._check_positive("tol", tol)
    w = spaceform.unit_sphere_volume(k - 1)

    def f(t):
        st, ct = np.sin(t), np.cos(t)
        return (eps * st) ** (k - 1) * np.sqrt((a * st) ** 2 + (eps * ct) ** 2)

    value, _ = integrate(f, 0.0, math.pi, tol=tol / w)
    return w * value


def solve_a(k, eps, tol=SOLVE_TOL):
    """The long semi-axis a(eps) >= 1 with ellipsoid_area(k, eps, a) = w_k."""
    k = _check_k(k)
    eps = _check_eps(eps)
    tol = spaceform._check_positive("tol", tol)
    target = spaceform.unit_sphere_volume(k)
    if eps == 1.0:
        return 1.0
    area_tol = min(AREA_TOL, 0.01 * tol) * target

    def g(a):
        return ellipsoid_area(k, eps, a, area_tol) - target

    lo, hi = 1.0, max(1.0 / eps ** k, 2.0)
    for _ in range(200):
        if g(hi) > 0.0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise ConvergenceError(f"could not bracket a(eps) for k={k}, eps={eps!r}")
    return bracketed_root(g, lo, hi, xtol=0.0, rtol=tol)


def ellipsoid_ball_bound(k, eps, R):
    """Upper bound 2 w_{k-1} R eps^(k-1) on metric-ball areas in E^k(eps, a(eps))."""
    k = _check_k(k)
    eps = _check_eps(eps)
    R = spaceform._check_positive("R", R)
    return 2.0 * spaceform.unit_sphere_volume(k - 1) * R * eps ** (k - 1)


def sphere_factor_volume(n, k, R):
    """Ball volume of radius R in the universal cover of the unit S^(n-k).

    A round (n-k)-sphere for k <= n-2; the real line (length 2R) for k = n-1.
    """
    if k == n - 1:
        return 2.0 * R
    d = n - k
    return spaceform.ball_volume(d, d * (d - 1), R)


def product_cover_ball_bound(n, k, eps, R):
    """Bound on ball volumes in the universal cover of E^k(eps, a(eps)) x S^(n-k)."""
    k = _check_k(k)
    n = spaceform._check_dim(n, 3)
    if not k <= n - 1:
        raise DomainError(f"need 2 <= k <= n-1, got n={n}, k={k}")
    R = spaceform._check_positive("R", R)
    return ellipsoid_ball_bound(k, eps, R) * sphere_factor_volume(n, k, R)


@dataclass(frozen=True)
class ProlateFamilyRow:
    n: int
    k: int
    eps: float
    a: float
    R: float
    ball_bound: float
    product_bound: float
    mscal_lb: float
    systole: float

    csv_columns = ("n", "k", "eps", "a", "R", "ball_bound", "product_bound", "mscal_lb", "systole")


def prolate_family(n, k, R, eps_grid, tol=SOLVE_TOL):
    """One row per eps: a(eps), the ball bounds, the implied mscal lower bound, w_k."""
    rows = []
    systole = spaceform.unit_sphere_volume(_check_k(k))
    for eps in eps_grid:
        eps = _check_eps(eps)
        a = solve_a(k, eps, tol)
        ball = ellipsoid_ball_bound(k, eps, R)
        product = product_cover_ball_bound(n, k, eps, R)
        rows.append(ProlateFamilyRow(
            n=n, k=k, eps=eps, a=a, R=float(R), ball_bound=ball, product_bound=product,
            mscal_lb=spaceform.invert_scal(n, R, product), systole=systole))
    return rows


def family_csv(rows):
    return csv_text(ProlateFamilyRow.csv_columns, [astuple(r) for r in rows])
