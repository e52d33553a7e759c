# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled market-clearing kernel; see ``_pykernels`` for the reference version."""

from libc.float cimport DBL_MAX
from libc.math cimport pow, fabs, fmin, NAN

cdef enum:
    OK = 0
    NOT_BRACKETED = -1
    MAX_ITER = -2
    EXPANSIONS = 5

cdef double BRACKET_RTOL = 1e-12


cdef inline void _components(double price, double q0, double p0, double sigma, double d0,
                             double eps_o, double s_eff, double gamma, double cost,
                             double sp0, double eps_p, double* sup, double* oth,
                             double* ai) nogil:
    cdef double x = price / p0
    sup[0] = q0 * pow(x, sigma)
    oth[0] = d0 * pow(x, eps_o)
    ai[0] = s_eff * pow((cost + gamma * price) / sp0, eps_p) * gamma


cdef int _clear(double q0, double p0, double sigma, double d0, double eps_o, double s_eff,
                double gamma, double cost, double sp0, double eps_p, double atol,
                double rtol, int max_iter, double* out) nogil:
    # out: price, supplied, other, ai, lo, hi, g_lo, g_hi, iterations
    cdef double lo = p0 * 1e-3
    cdef double hi = p0 * 1e3
    cdef double s, o, a, glo, ghi, mid, gm
    cdef int n = 0
    cdef int it = 0
    _components(lo, q0, p0, sigma, d0, eps_o, s_eff, gamma, cost, sp0, eps_p, &s, &o, &a)
    glo = s - o - a
    _components(hi, q0, p0, sigma, d0, eps_o, s_eff, gamma, cost, sp0, eps_p, &s, &o, &a)
    ghi = s - o - a
    while (glo > 0 or ghi < 0) and n < EXPANSIONS:
        if glo > 0:
            lo = lo / 10.0
            _components(lo, q0, p0, sigma, d0, eps_o, s_eff, gamma, cost, sp0, eps_p,
                        &s, &o, &a)
            glo = s - o - a
        if ghi < 0:
            hi = hi * 10.0
            _components(hi, q0, p0, sigma, d0, eps_o, s_eff, gamma, cost, sp0, eps_p,
                        &s, &o, &a)
            ghi = s - o - a
        n += 1
    out[4] = lo
    out[5] = hi
    out[6] = glo
    out[7] = ghi
    out[8] = 0
    if glo > 0 or ghi < 0:
        out[0] = NAN
        out[1] = NAN
        out[2] = NAN
        out[3] = NAN
        return NOT_BRACKETED

    while it < max_iter:
        mid = 0.5 * (lo + hi)
        it += 1
        _components(mid, q0, p0, sigma, d0, eps_o, s_eff, gamma, cost, sp0, eps_p,
                    &s, &o, &a)
        gm = s - o - a
        if fabs(gm) <= atol + rtol * fmin(s, DBL_MAX) or hi - lo <= BRACKET_RTOL * hi:
            out[0] = mid
            out[1] = s
            out[2] = o
            out[3] = a
            out[4] = lo
            out[5] = hi
            out[6] = glo
            out[7] = ghi
            out[8] = it
            return OK
        if gm > 0:
            hi = mid
            ghi = gm
        else:
            lo = mid
            glo = gm
    out[0] = NAN
    out[1] = NAN
    out[2] = NAN
    out[3] = NAN
    out[4] = lo
    out[5] = hi
    out[6] = glo
    out[7] = ghi
    out[8] = it
    return MAX_ITER


def clear_price(double q0, double p0, double sigma, double d0, double eps_o, double s_eff,
                double gamma, double cost, double sp0, double eps_p, double atol,
                double rtol, int max_iter):
    cdef double out[9]
    cdef int status = _clear(q0, p0, sigma, d0, eps_o, s_eff, gamma, cost, sp0, eps_p,
                             atol, rtol, max_iter, out)
    return (status, out[0], out[1], out[2], out[3], out[4], out[5], out[6], out[7],
            int(out[8]))


def clear_many(double[::1] q0, double[::1] p0, double[::1] sigma, double[::1] d0,
               double[::1] eps_o, double[::1] s_eff, double[::1] gamma, double[::1] cost,
               double[::1] sp0, double[::1] eps_p, double atol, double rtol, int max_iter):
    cdef Py_ssize_t i, n = q0.shape[0]
    cdef double out[9]
    prices = [0.0] * n
    statuses = [0] * n
    cdef int status
    for i in range(n):
        with nogil:
            status = _clear(q0[i], p0[i], sigma[i], d0[i], eps_o[i], s_eff[i], gamma[i],
                            cost[i], sp0[i], eps_p[i], atol, rtol, max_iter, out)
        prices[i] = out[0]
        statuses[i] = status
    return prices, statuses
