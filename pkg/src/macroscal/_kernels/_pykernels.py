"""Pure-Python reference kernels.

Mirrors ``_ckernels.pyx`` operation for operation so that both backends
return the same floating-point results up to libm differences.
Arguments are assumed already validated by the public API.
"""
import math
import sys
from functools import lru_cache

BACKEND = "python"

# |sigma R^2| at or below this uses the power series in sigma R^2
SERIES_LIMIT = 1.0
# beyond this hyperbolic angle the integral is evaluated in log space
LOG_LIMIT = 300.0
MAX_SERIES_TERMS = 120


def unit_ball_volume(n):
    # b_n = (2 pi / n) b_{n-2}; exact for the low dimensions (pi, 4 pi / 3, ...)
    b = 1.0 if n % 2 == 0 else 2.0
    for j in range(2 + n % 2, n + 1, 2):
        b *= 2.0 * math.pi / j
    return b


def unit_sphere_volume(n):
    # w_n = (n+1) b_{n+1} = 2 pi b_{n-1}
    return 2.0 * math.pi * unit_ball_volume(n - 1) if n >= 1 else 2.0


@lru_cache(maxsize=None)
def series_coefficients(m):
    """Coefficients c_k of (sin(x)/x)^m as a power series in y = x^2.

    Uses the power-of-a-series recurrence (J.C.P. Miller) on
    sin(x)/x = sum_k (-y)^k / (2k+1)!, truncated once terms fall below
    1e-18 for |y| <= SERIES_LIMIT.
    """
    a = [1.0]
    fact = 1.0
    for k in range(1, MAX_SERIES_TERMS):
        fact *= (2 * k) * (2 * k + 1)
        a.append((-1.0) ** k / fact)
    c = [1.0]
    for k in range(1, MAX_SERIES_TERMS):
        acc = 0.0
        for j in range(1, k + 1):
            acc += ((m + 1) * j - k) * a[j] * c[k - j]
        c.append(acc / k)
        if k > m and abs(c[k]) < 1e-18 * (SERIES_LIMIT ** -k):
            break
    return tuple(c)


def _sin_power_integral(m, x):
    # int_0^x sin^m, two-term recurrence in m
    sx, cx = math.sin(x), math.cos(x)
    if m % 2 == 0:
        acc, j = x, 0
    else:
        acc, j = 2.0 * math.sin(0.5 * x) ** 2, 1
    while j < m:
        j += 2
        acc = -sx ** (j - 1) * cx / j + (j - 1) / j * acc
    return acc


def _sinh_power_integral(m, x):
    # int_0^x sinh^m, two-term recurrence in m
    sx, cx = math.sinh(x), math.cosh(x)
    if m % 2 == 0:
        acc, j = x, 0
    else:
        acc, j = 2.0 * math.sinh(0.5 * x) ** 2, 1
    while j < m:
        j += 2
        acc = sx ** (j - 1) * cx / j - (j - 1) / j * acc
    return acc


def ball_volume(n, s, R):
    m = n - 1
    sigma = s / (n * m)
    y = sigma * R * R
    if abs(y) <= SERIES_LIMIT:
        c = series_coefficients(m)
        acc = 0.0
        yk = 1.0
        for k in range(len(c)):
            acc += c[k] * yk / (n + 2 * k)
            yk *= y
        return unit_sphere_volume(m) * R ** n * acc
    if y > 0.0:
        x = math.sqrt(y)
        if x >= math.pi:
            return unit_sphere_volume(n) * sigma ** (-0.5 * n)
        return unit_sphere_volume(m) * sigma ** (-0.5 * n) * _sin_power_integral(m, x)
    x = math.sqrt(-y)
    if x > LOG_LIMIT:
        logv = (math.log(unit_sphere_volume(m)) - 0.5 * n * math.log(-sigma)
                + m * (x - math.log(2.0)) - math.log(m))
        try:
            return math.exp(logv)
        except OverflowError:
            return math.inf
    return unit_sphere_volume(m) * (-sigma) ** (-0.5 * n) * _sinh_power_integral(m, x)


def invert_scal(n, R, v, tol, max_iter=500):
    """Solve ball_volume(n, s, R) = v for s by bracketing in u = s R^2.

    Returns (s, iterations); iterations < 0 signals non-convergence.
    """
    target = v / R ** n
    r2 = R * R

    def f(u):
        return ball_volume(n, u, 1.0) - target

    f0 = f(0.0)
    if f0 == 0.0:
        return 0.0, 0
    it = 0
    if f0 > 0.0:
        lo, flo = 0.0, f0
        hi = 1.0
        fhi = f(hi)
        while fhi > 0.0:
            lo, flo = hi, fhi
            hi *= 2.0
            fhi = f(hi)
            it += 1
            if it > max_iter:
                return math.nan, -1
    else:
        hi, fhi = 0.0, f0
        lo = -1.0
        flo = f(lo)
        while flo < 0.0:
            hi, fhi = lo, flo
            lo *= 2.0
            flo = f(lo)
            it += 1
            if it > max_iter:
                return math.nan, -1
    # Illinois regula falsi with bisection safeguard; f is decreasing, flo > 0 > fhi
    side = 0
    width_hist = [hi - lo, hi - lo]
    force_bisect = False
    while it < max_iter:
        it += 1
        mid = 0.5 * (lo + hi)
        if hi - lo <= max(tol * max(r2, abs(mid)), 8.0 * math.ulp(abs(lo) + abs(hi))):
            return mid / r2, it
        if force_bisect or not (math.isfinite(flo) and math.isfinite(fhi)):
            x = mid
        else:
            x = hi - fhi * (hi - lo) / (fhi - flo)
            if not (lo < x < hi):
                x = mid
        fx = f(x)
        if fx == 0.0:
            return x / r2, it
        if fx > 0.0:
            lo, flo = x, fx
            if side == 1:
                fhi *= 0.5
            side = 1
        else:
            hi, fhi = x, fx
            if side == -1:
                flo *= 0.5
            side = -1
        width = hi - lo
        force_bisect = width > 0.5 * width_hist[0]
        width_hist = [width_hist[1], width]
    return math.nan, -1


# float costs closer than this (relative) are compared exactly
TIE_RTOL = 4.0 * sys.float_info.epsilon


def cost_terms(dk, pi, pk):
    """dhat_k + |P_i - P_k| as three doubles whose exact sum is the cost."""
    return (dk, pi, -pk) if pk <= pi else (dk, pk, -pi)


def exact_cost(dk, pi, pk):
    """Correctly rounded dhat_k + |P_i - P_k|."""
    return math.fsum(cost_terms(dk, pi, pk))


def cost_less(dk, pk, db, pb, pi):
    """Whether cost(k) < cost(b) in exact arithmetic, for the same row P_i."""
    c = dk + abs(pi - pk)
    best = db + abs(pi - pb)
    band = TIE_RTOL * (c + best)
    if c < best - band:
        return True
    if c > best + band:
        return False
    # fsum is correctly rounded, so its sign is the sign of the exact difference
    a = cost_terms(dk, pi, pk)
    b = cost_terms(db, pi, pb)
    return math.fsum((a[0], a[1], a[2], -b[0], -b[1], -b[2])) < 0.0


def replace_dividers(dhat, prefix):
    """Least-cost combination per divider, smallest minimizing index.

    ``dhat`` and ``prefix`` have length N + 1 with dhat[0] = dhat[N] = 0
    and prefix[m] = s_1 + ... + s_m. Near-ties are resolved exactly, so
    rounding in the costs cannot change which index is chosen.
    """
    N = len(dhat) - 1
    ks = []
    costs = []
    for i in range(1, N):
        pi = prefix[i]
        arg = 0
        for k in range(1, N + 1):
            if cost_less(dhat[k], prefix[k], dhat[arg], prefix[arg], pi):
                arg = k
        ks.append(arg)
        costs.append(exact_cost(dhat[arg], pi, prefix[arg]))
    return ks, costs
