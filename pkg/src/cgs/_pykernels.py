"""Pure-Python market-clearing kernel.

Mirrors ``_ckernels.pyx`` operation for operation so both backends produce the
same floating-point results. Used when the compiled extension is unavailable or
``CGS_PURE_PYTHON=1`` is set.
"""

import math
import sys

OK = 0
NOT_BRACKETED = -1
MAX_ITER = -2

BRACKET_RTOL = 1e-12
_BIG = sys.float_info.max  # keeps the tolerance finite when supply overflows
_EXPANSIONS = 5


def _pow(x, e):
    try:
        return x**e
    except OverflowError:
        return math.inf


def _components(price, q0, p0, sigma, d0, eps_o, s_eff, gamma, cost, sp0, eps_p):
    x = price / p0
    sup = q0 * _pow(x, sigma)
    oth = d0 * _pow(x, eps_o)
    ai = s_eff * _pow((cost + gamma * price) / sp0, eps_p) * gamma
    return sup, oth, ai


def clear_price(q0, p0, sigma, d0, eps_o, s_eff, gamma, cost, sp0, eps_p, atol, rtol, max_iter):
    """Bisect for the price where supply equals other plus AI demand.

    Returns ``(status, price, supplied, other, ai, lo, hi, g_lo, g_hi, iterations)``
    where ``g`` is excess supply at the bracket ends.
    """
    args = (q0, p0, sigma, d0, eps_o, s_eff, gamma, cost, sp0, eps_p)
    lo = p0 * 1e-3
    hi = p0 * 1e3
    s, o, a = _components(lo, *args)
    glo = s - o - a
    s, o, a = _components(hi, *args)
    ghi = s - o - a
    n = 0
    while (glo > 0 or ghi < 0) and n < _EXPANSIONS:
        if glo > 0:
            lo = lo / 10.0
            s, o, a = _components(lo, *args)
            glo = s - o - a
        if ghi < 0:
            hi = hi * 10.0
            s, o, a = _components(hi, *args)
            ghi = s - o - a
        n += 1
    if glo > 0 or ghi < 0:
        return (NOT_BRACKETED, math.nan, math.nan, math.nan, math.nan, lo, hi, glo, ghi, 0)

    it = 0
    while it < max_iter:
        mid = 0.5 * (lo + hi)
        it += 1
        s, o, a = _components(mid, *args)
        gm = s - o - a
        if abs(gm) <= atol + rtol * min(s, _BIG) or hi - lo <= BRACKET_RTOL * hi:
            return (OK, mid, s, o, a, lo, hi, glo, ghi, it)
        if gm > 0:
            hi = mid
            ghi = gm
        else:
            lo = mid
            glo = gm
    return (MAX_ITER, math.nan, math.nan, math.nan, math.nan, lo, hi, glo, ghi, it)


def clear_many(q0, p0, sigma, d0, eps_o, s_eff, gamma, cost, sp0, eps_p, atol, rtol, max_iter):
    """Vector form of :func:`clear_price` over equal-length sequences.

    Returns ``(prices, statuses)`` as lists.
    """
    prices = []
    statuses = []
    for i in range(len(q0)):
        out = clear_price(
            q0[i], p0[i], sigma[i], d0[i], eps_o[i], s_eff[i], gamma[i], cost[i], sp0[i],
            eps_p[i], atol, rtol, max_iter,
        )
        statuses.append(out[0])
        prices.append(out[1])
    return prices, statuses
