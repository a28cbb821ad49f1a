# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same algorithms as ``_pykernels``."""
from libc.math cimport (sin, cos, sinh, cosh, sqrt, fabs, exp, log, pow,
                        isfinite, nextafter, INFINITY, NAN, M_PI)

import numpy as np

from macroscal._kernels._pykernels import exact_cost as _exact_cost
from macroscal._kernels._pykernels import series_coefficients as _py_coefficients
from libc.float cimport DBL_EPSILON

BACKEND = "cython"

cdef enum:
    MAXM = 64
    MAXTERMS = 120

cdef double SERIES_LIMIT = 1.0
cdef double LOG_LIMIT = 300.0

cdef double _coef[MAXM + 1][MAXTERMS]
cdef int _ncoef[MAXM + 1]
cdef int _i
for _i in range(MAXM + 1):
    _ncoef[_i] = 0


cdef inline double _unit_ball(int n) nogil:
    # b_n = (2 pi / n) b_{n-2}
    cdef double b = 1.0 if n % 2 == 0 else 2.0
    cdef int j = 2 + n % 2
    while j <= n:
        b *= 2.0 * M_PI / j
        j += 2
    return b


cdef inline double _unit_sphere(int n) nogil:
    # w_n = 2 pi b_{n-1}
    return 2.0 * M_PI * _unit_ball(n - 1) if n >= 1 else 2.0


def unit_ball_volume(int n):
    return _unit_ball(n)


def unit_sphere_volume(int n):
    return _unit_sphere(n)


def series_coefficients(int m):
    return _py_coefficients(m)


cdef int _load_coefficients(int m) except -1:
    cdef tuple c = _py_coefficients(m)
    cdef int k
    for k in range(len(c)):
        _coef[m][k] = c[k]
    _ncoef[m] = len(c)
    return 0


cdef double _series_sum(int n, double y) except? -1.0:
    cdef int m = n - 1
    cdef int k
    cdef double acc = 0.0, yk = 1.0
    cdef tuple c
    if m > MAXM:
        c = _py_coefficients(m)
        for k in range(len(c)):
            acc += <double>c[k] * yk / (n + 2 * k)
            yk *= y
        return acc
    if _ncoef[m] == 0:
        _load_coefficients(m)
    for k in range(_ncoef[m]):
        acc += _coef[m][k] * yk / (n + 2 * k)
        yk *= y
    return acc


cdef double _sin_power_integral(int m, double x) nogil:
    cdef double sx = sin(x), cx = cos(x), acc
    cdef int j
    if m % 2 == 0:
        acc = x
        j = 0
    else:
        acc = 2.0 * sin(0.5 * x) * sin(0.5 * x)
        j = 1
    while j < m:
        j += 2
        acc = -pow(sx, j - 1) * cx / j + (j - 1) / <double>j * acc
    return acc


cdef double _sinh_power_integral(int m, double x) nogil:
    cdef double sx = sinh(x), cx = cosh(x), acc
    cdef int j
    if m % 2 == 0:
        acc = x
        j = 0
    else:
        acc = 2.0 * sinh(0.5 * x) * sinh(0.5 * x)
        j = 1
    while j < m:
        j += 2
        acc = pow(sx, j - 1) * cx / j - (j - 1) / <double>j * acc
    return acc


cdef double _ball_volume(int n, double s, double R) except? -1.0:
    cdef int m = n - 1
    cdef double sigma = s / (n * m)
    cdef double y = sigma * R * R
    cdef double x, logv
    if fabs(y) <= SERIES_LIMIT:
        return _unit_sphere(m) * pow(R, n) * _series_sum(n, y)
    if y > 0.0:
        x = sqrt(y)
        if x >= M_PI:
            return _unit_sphere(n) * pow(sigma, -0.5 * n)
        return _unit_sphere(m) * pow(sigma, -0.5 * n) * _sin_power_integral(m, x)
    x = sqrt(-y)
    if x > LOG_LIMIT:
        logv = (log(_unit_sphere(m)) - 0.5 * n * log(-sigma)
                + m * (x - log(2.0)) - log(<double>m))
        return exp(logv)
    return _unit_sphere(m) * pow(-sigma, -0.5 * n) * _sinh_power_integral(m, x)


def ball_volume(int n, double s, double R):
    return _ball_volume(n, s, R)


cdef inline double _ulp(double x) nogil:
    return nextafter(x, INFINITY) - x


def invert_scal(int n, double R, double v, double tol, int max_iter=500):
    cdef double target = v / pow(R, n)
    cdef double r2 = R * R
    cdef double lo, hi, flo, fhi, f0, mid, x, fx, width, w0, w1
    cdef int it = 0, side = 0
    cdef bint force_bisect = False

    f0 = _ball_volume(n, 0.0, 1.0) - target
    if f0 == 0.0:
        return 0.0, 0
    if f0 > 0.0:
        lo = 0.0
        flo = f0
        hi = 1.0
        fhi = _ball_volume(n, hi, 1.0) - target
        while fhi > 0.0:
            lo = hi
            flo = fhi
            hi *= 2.0
            fhi = _ball_volume(n, hi, 1.0) - target
            it += 1
            if it > max_iter:
                return NAN, -1
    else:
        hi = 0.0
        fhi = f0
        lo = -1.0
        flo = _ball_volume(n, lo, 1.0) - target
        while flo < 0.0:
            hi = lo
            fhi = flo
            lo *= 2.0
            flo = _ball_volume(n, lo, 1.0) - target
            it += 1
            if it > max_iter:
                return NAN, -1
    w0 = hi - lo
    w1 = hi - lo
    while it < max_iter:
        it += 1
        mid = 0.5 * (lo + hi)
        if hi - lo <= max(tol * max(r2, fabs(mid)), 8.0 * _ulp(fabs(lo) + fabs(hi))):
            return mid / r2, it
        if force_bisect or not (isfinite(flo) and isfinite(fhi)):
            x = mid
        else:
            x = hi - fhi * (hi - lo) / (fhi - flo)
            if not (lo < x < hi):
                x = mid
        fx = _ball_volume(n, x, 1.0) - target
        if fx == 0.0:
            return x / r2, it
        if fx > 0.0:
            lo = x
            flo = fx
            if side == 1:
                fhi *= 0.5
            side = 1
        else:
            hi = x
            fhi = fx
            if side == -1:
                flo *= 0.5
            side = -1
        width = hi - lo
        force_bisect = width > 0.5 * w0
        w0 = w1
        w1 = width
    return NAN, -1


cdef inline int _exact_sign(double* x, int m) nogil:
    # grow a nonoverlapping expansion with two-sum; its sign is that of
    # the largest nonzero component
    cdef double h[8]
    cdef int n = 0, i, j
    cdef double q, s, bv
    for i in range(m):
        q = x[i]
        for j in range(n):
            s = q + h[j]
            bv = s - q
            h[j] = (q - (s - bv)) + (h[j] - bv)
            q = s
        h[n] = q
        n += 1
    for j in range(n - 1, -1, -1):
        if h[j] > 0.0:
            return 1
        if h[j] < 0.0:
            return -1
    return 0


cdef inline int _cost_less(double dk, double pk, double db, double pb, double pi) nogil:
    cdef double c = dk + fabs(pi - pk)
    cdef double best = db + fabs(pi - pb)
    cdef double band = 4.0 * DBL_EPSILON * (c + best)
    cdef double x[6]
    if c < best - band:
        return 1
    if c > best + band:
        return 0
    x[0] = dk
    x[3] = -db
    if pk <= pi:
        x[1] = pi
        x[2] = -pk
    else:
        x[1] = pk
        x[2] = -pi
    if pb <= pi:
        x[4] = -pi
        x[5] = pb
    else:
        x[4] = -pb
        x[5] = pi
    return _exact_sign(x, 6) < 0


def replace_dividers(dhat, prefix):
    cdef double[::1] d = _as_array(dhat)
    cdef double[::1] P = _as_array(prefix)
    cdef Py_ssize_t N = d.shape[0] - 1
    cdef Py_ssize_t i, k, arg
    cdef double pi
    ks = []
    costs = []
    for i in range(1, N):
        arg = 0
        pi = P[i]
        for k in range(1, N + 1):
            if _cost_less(d[k], P[k], d[arg], P[arg], pi):
                arg = k
        ks.append(arg)
        costs.append(_exact_cost(d[arg], pi, P[arg]))
    return ks, costs


cdef object _as_array(object seq):
    return np.ascontiguousarray(seq, dtype=np.float64)
