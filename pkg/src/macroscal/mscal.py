"""Macroscopic scalar curvature and the width gate.

The macroscopic scalar curvature at scale R is the curvature of the
space form whose radius-R balls have the same volume as the lifted ball
in the universal cover. The width gate checks the volume inequality that,
through Guth's width theorem applied to an almost minimizing hypersurface,
bounds its (n-2)-width by (n-1)R/n.
"""
import math
from dataclasses import asdict, dataclass

from . import spaceform
from ._format import csv_text
from .errors import DomainError

MARGINAL_BAND = 1e-9


@dataclass(frozen=True)
class BallVolumeObservation:
    """Volume ``v`` of a lifted ball of radius ``R``; any positive ``v`` is allowed."""

    R: float
    v: float
    label: str = ""

    def __post_init__(self):
        for name in ("R", "v"):
            x = float(getattr(self, name))
            if not (math.isfinite(x) and x > 0.0):
                raise DomainError(f"{name} must be positive and finite, got {x!r}")
            object.__setattr__(self, name, x)


def macroscopic_scal(n, obs, tol=spaceform.INVERT_TOL):
    """mscal(x, R): the s with V^n_s(R) equal to the observed volume."""
    return spaceform.invert_scal(n, obs.R, obs.v, tol)


def mscal_at_least(n, obs, s):
    """Whether mscal >= s, decided as ``v <= V^n_s(R)`` without inversion."""
    return obs.v <= spaceform.ball_volume(n, s, obs.R)


@dataclass(frozen=True)
class WidthGateReport:
    n: int
    R: float
    s: float
    c: float
    r_opt: float
    lhs: float
    rhs: float
    holds: bool
    width_bound: float
    marginal: bool = False

    csv_columns = ("n", "R", "s", "c", "r_opt", "lhs", "rhs", "holds", "width_bound")

    def csv_row(self):
        return tuple(getattr(self, name) for name in self.csv_columns)

    def to_csv(self):
        return csv_text(self.csv_columns, [self.csv_row()])

    def to_dict(self):
        return asdict(self)


def width_gate(n, R, s, c):
    """Evaluate V^n_s(R) / (R - r) < c r^(n-1) at the optimal r = (n-1)R/n.

    ``marginal`` is set when the two sides agree to within 1e-9 relative;
    the boolean in that band is floating-point noise, not a verdict.
    """
    n = spaceform._check_dim(n, 3)
    R = spaceform._check_positive("R", R)
    s = spaceform._check_finite("s", s)
    c = spaceform._check_positive("c", c)
    r = (n - 1) / n * R
    lhs = spaceform.ball_volume(n, s, R) / (R - r)
    rhs = c * r ** (n - 1)
    marginal = abs(lhs - rhs) <= MARGINAL_BAND * max(abs(lhs), abs(rhs))
    return WidthGateReport(n=n, R=R, s=s, c=c, r_opt=r, lhs=lhs, rhs=rhs,
                           holds=lhs < rhs, width_bound=r, marginal=marginal)


def gate_formulations(n, R, s, c, tol=1e-12):
    """The gate decided three equivalent ways.

    Returns ``(direct, scaled, via_kappa)``: the inequality at radius R,
    its unit-radius rescaling V^n_{sR^2}(1) < (n-1)^(n-1)/n^n c, and
    s R^2 > kappa_n(c).
    """
    direct = width_gate(n, R, s, c).holds
    scaled = spaceform.ball_volume(n, s * R * R, 1.0) < spaceform.kappa_argument(n, c)
    via_kappa = s * R * R > spaceform.kappa_n(n, c, tol)
    return direct, scaled, via_kappa
