"""Berger metrics on RP^3: large macroscopic curvature above half the systole.

Shrinking the Hopf fibres of S^3 by ``eps`` gives total volume 2 pi^2 eps,
which equals the full volume of the round 3-sphere of radius eps^(1/3),
i.e. of curvature s_eps = 6 / eps^(2/3). Any scale R_eps past the
saturation radius pi eps^(1/3) therefore has mscal >= s_eps, even though
R_eps exceeds half the 1-systole pi*eps. Only these volume identities are
used; no metric tensor is built.
"""
import math
from dataclasses import astuple, dataclass

from . import spaceform
from ._format import csv_text
from .errors import DomainError

DEFAULT_MARGIN = 0.01
# relative slack for the volume-vs-model comparison, whose sides agree exactly in real arithmetic
VOLUME_RTOL = 1e-12


@dataclass(frozen=True)
class WidthBoundQuery:
    """Lipschitz map to the round k-sphere of radius ``rho``."""

    rho: float
    L: float
    k: int = 2

    def __post_init__(self):
        for name in ("rho", "L"):
            x = float(getattr(self, name))
            if not (math.isfinite(x) and x > 0.0):
                raise DomainError(f"{name} must be positive and finite, got {x!r}")
            object.__setattr__(self, name, x)
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise DomainError(f"k must be an integer >= 1, got {self.k!r}")


def gromov_width_lower_bound(q):
    """Strict lower bound (pi/2) * rho / L on the (k-1)-width, for a non-null-homotopic map."""
    return 0.5 * math.pi * q.rho / q.L


# the Hopf projection of (RP^3, Berger) onto S^2(1/2) is 1-Lipschitz
HOPF_QUERY = WidthBoundQuery(rho=0.5, L=1.0, k=2)


def width_floor():
    """pi/4: the eps-independent width floor for surfaces representing [RP^2]."""
    return gromov_width_lower_bound(HOPF_QUERY)


@dataclass(frozen=True)
class BergerSample:
    eps: float
    kappa: float
    kappa_prime: float
    R_eps: float
    s_eps: float
    sys1: float
    vol_s3: float
    v_model: float
    check_systole: bool
    check_kappa: bool
    check_volume: bool
    width_floor: float

    csv_columns = ("eps", "kappa", "kappa_prime", "R_eps", "s_eps", "sys1", "vol_s3",
                   "v_model", "check_systole", "check_kappa", "check_volume", "width_floor")

    @property
    def all_checks(self):
        return self.check_systole and self.check_kappa and self.check_volume


def berger_sample(eps, kappa, margin=DEFAULT_MARGIN):
    eps, kappa, margin = float(eps), float(kappa), float(margin)
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")
    if not (math.isfinite(kappa) and kappa > 0.0):
        raise DomainError(f"kappa must be positive, got {kappa!r}")
    if not (math.isfinite(margin) and margin > 0.0):
        raise DomainError(f"margin must be positive, got {margin!r}")
    kappa_prime = max(kappa / math.sqrt(6.0), math.pi) * (1.0 + margin)
    cbrt = eps ** (1.0 / 3.0)
    R_eps = kappa_prime * cbrt
    s_eps = 6.0 / cbrt ** 2
    sys1 = math.pi * eps
    vol_s3 = 2.0 * math.pi ** 2 * eps
    v_model = spaceform.ball_volume(3, s_eps, R_eps)
    return BergerSample(
        eps=eps, kappa=kappa, kappa_prime=kappa_prime, R_eps=R_eps, s_eps=s_eps,
        sys1=sys1, vol_s3=vol_s3, v_model=v_model,
        check_systole=R_eps >= 0.5 * sys1,
        check_kappa=R_eps > kappa / math.sqrt(s_eps),
        check_volume=vol_s3 <= v_model * (1.0 + VOLUME_RTOL),
        width_floor=width_floor(),
    )


def berger_family(kappa, eps_grid, margin=DEFAULT_MARGIN):
    return [berger_sample(eps, kappa, margin) for eps in eps_grid]


def family_csv(samples):
    return csv_text(BergerSample.csv_columns, [astuple(x) for x in samples])
