"""Divider replacement on abstract weighted instances.

A ball B(x, t) cut by a hypersurface splits into levels L_1..L_N; the
divider D_i separates L_i from L_{i+1} and the strip S_j = L_j cap S(x, t)
is the part of the boundary sphere in level j. Each divider may be
swapped for a homologous chain D_{i,k}: the divider D_k plus the strips
between levels i and k. Only areas enter, so an instance is the list of
divider areas, the list of strip areas and the almost-minimality slack.
"""
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import accumulate

import numpy as np

from ._kernels import kernels
from ._kernels._pykernels import cost_less, exact_cost
from .errors import DomainError

# relative slack for float comparisons in the stability conclusions
CHECK_RTOL = 1e-12


def _nonneg_list(name, values):
    out = [float(x) for x in values]
    for x in out:
        if not (math.isfinite(x) and x >= 0.0):
            raise DomainError(f"{name} entries must be finite and >= 0, got {x!r}")
    return tuple(out)


@dataclass(frozen=True)
class DividerInstance:
    """Divider areas d_1..d_{N-1}, strip areas s_1..s_N, slack delta."""

    d: tuple
    s: tuple
    delta: float = 0.0

    def __post_init__(self):
        d = _nonneg_list("d", self.d)
        s = _nonneg_list("s", self.s)
        if len(s) < 2:
            raise DomainError(f"need N >= 2 strips, got {len(s)}")
        if len(d) != len(s) - 1:
            raise DomainError(f"need N-1 = {len(s) - 1} dividers, got {len(d)}")
        delta = float(self.delta)
        if not (math.isfinite(delta) and delta >= 0.0):
            raise DomainError(f"delta must be finite and >= 0, got {delta!r}")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "delta", delta)

    @property
    def N(self):
        return len(self.s)

    @property
    def dhat(self):
        """Divider areas padded with the empty dividers D_0 and D_N."""
        return (0.0,) + self.d + (0.0,)

    @cached_property
    def prefix(self):
        """P_0..P_N with P_m = s_1 + ... + s_m."""
        return tuple(accumulate(self.s, initial=0.0))

    @property
    def sphere_area(self):
        return math.fsum(self.s)

    @classmethod
    def from_dict(cls, doc):
        try:
            return cls(d=doc["d"], s=doc["s"], delta=doc.get("delta", 0.0))
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed divider instance: {exc}") from exc

    @classmethod
    def from_json(cls, text):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise DomainError("divider instance must be a JSON object")
        return cls.from_dict(doc)

    def to_dict(self):
        return {"d": list(self.d), "s": list(self.s), "delta": self.delta}


def _check_indices(inst, i, k):
    N = inst.N
    for name, x in (("i", i), ("k", k)):
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
            raise DomainError(f"{name} must be an integer, got {x!r}")
    if not 1 <= i <= N - 1:
        raise DomainError(f"i must lie in [1, {N - 1}], got {i}")
    if not 0 <= k <= N:
        raise DomainError(f"k must lie in [0, {N}], got {k}")


def combination_cost(inst, i, k):
    """Area bound for the chain D_{i,k}: dhat_k + |P_i - P_k|, correctly rounded."""
    _check_indices(inst, i, k)
    P = inst.prefix
    return exact_cost(inst.dhat[k], P[i], P[k])


@dataclass(frozen=True)
class ReplacementPlan:
    k: tuple
    cost: tuple
    prefix: tuple
    monotone_violations: tuple = field(default=())

    @property
    def monotone(self):
        return not self.monotone_violations


def _violations(ks):
    return tuple(i + 1 for i in range(1, len(ks)) if ks[i] < ks[i - 1])


def replace_dividers(inst):
    """Least-area combination for every divider.

    Scans every k for every i and keeps the smallest minimizing k, comparing
    near-equal costs exactly. The resulting k_i are expected to be
    nondecreasing (the cost matrix is Monge); any decrease is recorded in
    ``monotone_violations``.
    """
    ks, costs = kernels.replace_dividers(inst.dhat, inst.prefix)
    ks = tuple(int(k) for k in ks)
    return ReplacementPlan(k=ks, cost=tuple(float(c) for c in costs),
                           prefix=inst.prefix, monotone_violations=_violations(ks))


def replace_dividers_monotone(inst):
    """Same plan via divide and conquer over monotone row minima, O(N log N).

    Relies on the smallest minimizer being nondecreasing in i, so row i's
    search window is bounded by the minimizers of the rows around it.
    """
    dhat = inst.dhat
    P = inst.prefix
    N = inst.N
    ks = [0] * (N - 1)
    costs = [0.0] * (N - 1)
    # explicit stack of (row_lo, row_hi, k_lo, k_hi) over rows 1..N-1
    stack = [(1, N - 1, 0, N)]
    while stack:
        rlo, rhi, klo, khi = stack.pop()
        if rlo > rhi:
            continue
        i = (rlo + rhi) // 2
        arg = klo
        for k in range(klo + 1, khi + 1):
            if cost_less(dhat[k], P[k], dhat[arg], P[arg], P[i]):
                arg = k
        ks[i - 1], costs[i - 1] = arg, exact_cost(dhat[arg], P[i], P[arg])
        stack.append((rlo, i - 1, klo, arg))
        stack.append((i + 1, rhi, arg, khi))
    return ReplacementPlan(k=tuple(ks), cost=tuple(costs), prefix=P,
                           monotone_violations=_violations(ks))


@dataclass(frozen=True)
class StabilityReport:
    """Outcome of checking the per-divider stability conclusions.

    ``conclusions`` is ``None`` when the almost-minimality premise fails:
    nothing is concluded from a false premise.
    """

    premise_holds: bool
    premise_gap: float
    sphere_bounds_hold: bool
    conclusions: list = None

    @property
    def all_hold(self):
        if self.conclusions is None:
            return False
        return all(c["below_cost"] and c["below_sphere"] for c in self.conclusions)


def verify_stability_conclusion(inst, plan):
    """Check what the stability argument derives for ``inst``.

    Always checks cost_i <= min(P_i, P_N - P_i). If sum(d) <= sum(cost) + delta
    holds, also checks d_i <= cost_i + delta and d_i <= |S(x,t)| + delta
    for every divider.
    """
    N = inst.N
    if len(plan.k) != N - 1 or len(plan.cost) != N - 1:
        raise DomainError(f"plan has {len(plan.k)} entries, instance has {N - 1} dividers")
    if any(not 0 <= k <= N for k in plan.k):
        raise DomainError("plan indices out of range for instance")
    P = inst.prefix
    total = P[-1]
    scale = total + math.fsum(inst.d) + inst.delta + 1.0
    slack = CHECK_RTOL * scale
    sphere_ok = all(plan.cost[i - 1] <= min(P[i], total - P[i]) + slack for i in range(1, N))
    gap = math.fsum(inst.d) - math.fsum(plan.cost) - inst.delta
    premise = gap <= slack
    if not premise:
        return StabilityReport(premise_holds=False, premise_gap=gap,
                               sphere_bounds_hold=sphere_ok, conclusions=None)
    conclusions = []
    for i in range(1, N):
        d, c = inst.d[i - 1], plan.cost[i - 1]
        conclusions.append({
            "i": i,
            "d": d,
            "cost": c,
            "excess": d - c,
            "below_cost": d <= c + inst.delta + slack,
            "below_sphere": d <= total + inst.delta + slack,
        })
    return StabilityReport(premise_holds=True, premise_gap=gap,
                           sphere_bounds_hold=sphere_ok, conclusions=conclusions)


def plan_report_dict(inst, plan, report):
    return {
        "N": inst.N,
        "k": list(plan.k),
        "cost": list(plan.cost),
        "monotone": plan.monotone,
        "premise_holds": report.premise_holds,
        "premise_gap": report.premise_gap,
        "sphere_bounds_hold": report.sphere_bounds_hold,
        "conclusions": report.conclusions,
        "all_hold": report.all_hold,
    }


@dataclass(frozen=True)
class SliceProfile:
    """Boundary-sphere areas A(tau) sampled at increasing radii in [r, R]."""

    r: float
    R: float
    taus: tuple
    areas: tuple

    def __post_init__(self):
        r, R = float(self.r), float(self.R)
        if not (math.isfinite(r) and math.isfinite(R) and 0.0 < r < R):
            raise DomainError(f"need 0 < r < R, got r={r!r}, R={R!r}")
        taus = tuple(float(t) for t in self.taus)
        areas = _nonneg_list("areas", self.areas)
        if len(taus) < 2:
            raise DomainError("a slice profile needs at least 2 samples")
        if len(taus) != len(areas):
            raise DomainError(f"{len(taus)} radii but {len(areas)} areas")
        if any(b <= a for a, b in zip(taus, taus[1:])):
            raise DomainError("sample radii must be strictly increasing")
        if taus[0] < r or taus[-1] > R:
            raise DomainError(f"sample radii must lie in [{r}, {R}]")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "taus", taus)
        object.__setattr__(self, "areas", areas)

    @classmethod
    def from_dict(cls, doc):
        try:
            return cls(r=doc["r"], R=doc["R"], taus=doc["taus"], areas=doc["areas"])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed slice profile: {exc}") from exc


def profile_integral(p):
    """Trapezoid estimate of int_r^R A, extending A as constant beyond the end samples."""
    t = (p.r,) + p.taus + (p.R,)
    a = (p.areas[0],) + p.areas + (p.areas[-1],)
    return math.fsum(0.5 * (a[j] + a[j + 1]) * (t[j + 1] - t[j]) for j in range(len(t) - 1))


def select_slice_radius(p):
    """Sample radius t with least boundary area, and the bound (R - r) A(t).

    The bound never exceeds :func:`profile_integral`, hence never exceeds
    the ball volume when the profile samples the true boundary areas.
    """
    j = int(np.argmin(p.areas))
    return p.taus[j], (p.R - p.r) * p.areas[j]


def stability_bound(R, r, ball_volume, delta):
    """Right-hand side |B(x,R)| / (R - r) + delta of the stability estimate."""
    R, r, ball_volume, delta = float(R), float(r), float(ball_volume), float(delta)
    if not (r >= 0.0 and r < R and math.isfinite(R)):
        raise DomainError(f"need 0 <= r < R, got r={r!r}, R={R!r}")
    if not (ball_volume >= 0.0 and delta >= 0.0):
        raise DomainError("ball_volume and delta must be >= 0")
    return ball_volume / (R - r) + delta
