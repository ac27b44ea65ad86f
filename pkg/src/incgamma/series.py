"""Series evaluators of F_m(z).

All methods take ``prec="double"`` (binary64 complex) or ``prec="extended"``
(double-double) and return a :class:`SeriesResult` whose error estimate
adds a truncation bound and a rounding bound (4 eps times the sum of term
magnitudes, which is where cancellation shows up).

Conventions: ``n_cap`` counts terms, so ``n_cap=30`` sums n = 0..29.
The principal branch is used for z^a; Im z = +0 and -0 select the two sides
of the negative real axis, which keeps conjugate symmetry exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import xprec
from .errors import DomainError
from .oracle import _halfarg_fraction_row, gamma_half
from .result import SeriesResult, abs_exp, exp_tail, make_result

__all__ = [
    "SeriesResult", "HalfArgTable", "ConvergingFactorState", "Accelerated",
    "pochhammer", "power_series", "power_partials", "aitken", "laurent",
    "laurent_cf", "converging_factor", "square_series", "square_coefficient",
    "split_exp_series", "exp_moment", "build_half_arg_table",
    "default_half_arg_table", "half_arg_series",
]


def _zero_value(m, ar):
    return ar.num(xprec.exact_real(Fraction(1) / (2 * Fraction(m) + 1), ar))


def _zero_result(m, ar) -> SeriesResult:
    v = _zero_value(m, ar)
    # one rounding of 1/(2m+1) unless m = 0
    return make_result(v, 1, 0.0, xprec.xabs(v) / 4 if m else 0.0, ar)


def _is_zero(z) -> bool:
    return z == 0


def pochhammer(b: float, n: int) -> float:
    """Rising factorial (b)_n = b (b+1) ... (b+n-1); (b)_0 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = 1.0
    for k in range(n):
        out *= b + k
    return out


def _power_tail(r: float, m: float, n: int, partial_exp: float) -> float:
    return exp_tail(r, n, partial_exp) / (2.0 * m + 2.0 * n + 1.0)


# --------------------------------------------------------------------------
# Kummer power series

def power_series(m, z, tol: float = 1e-16, n_cap: int = 600,
                 prec: str = "double") -> SeriesResult:
    """sum_n (-z)^n / (n! (2m+2n+1)), stopped at the first term below tol*|sum|.

    With ``tol=0`` exactly ``n_cap`` terms are summed.
    """
    ar = xprec.arith(prec)
    if _is_zero(z):
        return _zero_result(m, ar)
    zz = ar.num(z)
    w = -zz
    r = xprec.xabs(zz)
    t = ar.num(1.0)
    s = t / (2 * m + 1)
    abs_sum = xprec.xabs(s)
    partial_exp = 1.0
    rk = 1.0
    n = 1
    while n < n_cap:
        t = t * w / n
        c = t / (2 * m + 2 * n + 1)
        s = s + c
        ac = xprec.xabs(c)
        abs_sum += ac
        rk *= r / n
        partial_exp += rk
        n += 1
        if ac <= tol * xprec.xabs(s):
            break
    trunc = _power_tail(r, m, n, partial_exp)
    flags = ("n_cap",) if n >= n_cap and tol > 0 else ()
    return make_result(s, n, trunc, abs_sum, ar, flags)


def power_partials(m, z, n: int, prec: str = "double") -> list:
    """Partial sums S_1..S_n of the power series."""
    ar = xprec.arith(prec)
    zz = ar.num(z)
    t = ar.num(1.0)
    s = t / (2 * m + 1)
    out = [s]
    for k in range(1, n):
        t = t * (-zz) / k
        s = s + t / (2 * m + 2 * k + 1)
        out.append(s)
    return out


@dataclass(frozen=True)
class Accelerated:
    value: complex
    degenerate: bool


def aitken(s0, s1, s2) -> Accelerated:
    """Aitken delta-squared (Shanks e_2) of three consecutive partial sums.

    A vanishing second difference returns s2 flagged as degenerate.
    """
    d2 = s2 - 2 * s1 + s0
    scale = max(abs(s0), abs(s1), abs(s2))
    if d2 == 0 or abs(d2) <= 4.0 * 2.0 ** -53 * scale:
        return Accelerated(s2, True)
    d1 = s2 - s1
    return Accelerated(s2 - d1 * d1 / d2, False)


# --------------------------------------------------------------------------
# Laurent series and its converging factor

def _zpow_a(zz, m, ar):
    a = m + 0.5
    if a == int(a):
        return zz ** int(a)
    out = ar.sqrt(zz)
    for _ in range(int(m)):
        out = out * zz
    return out


def _gamma_a(m, ar):
    a2 = int(round(2 * m + 1))
    if ar is xprec.DOUBLE:
        return math.gamma(a2 / 2.0)
    return gamma_half(a2)


def _laurent_parts(m, zz, n_last, ar):
    """(Gamma term, e^{-z}/(2z) factor, sum_{n<=n_last} (1-a)_n (-z)^-n,
    abs sum, last term, first omitted term)."""
    a = m + 0.5
    g = _gamma_a(m, ar) / (2 * _zpow_a(zz, m, ar))
    e = ar.exp(-zz) / (2 * zz)
    inv = -1 / zz
    t = ar.num(1.0)
    s = t
    abs_sum = 1.0
    for n in range(1, n_last + 1):
        t = t * (n - a) * inv
        s = s + t
        abs_sum += xprec.xabs(t)
    nxt = t * (n_last + 1 - a) * inv
    return g, e, s, abs_sum, t, nxt


def _check_laurent_arg(z, m):
    if _is_zero(z):
        raise DomainError("Laurent series needs z != 0")
    # z^a would underflow; the series is useless long before that
    if (m + 1.5) * math.log10(xprec.xabs(z)) < -280.0:
        raise DomainError("|z| too small for the asymptotic series")


def laurent(m, z, prec: str = "double") -> SeriesResult:
    """Asymptotic series truncated at n = floor(|z| + a).

    F = Gamma(a)/(2 z^a) - e^{-z}/(2z) sum_n (1-a)_n (-z)^{-n}.
    """
    _check_laurent_arg(z, m)
    ar = xprec.arith(prec)
    zz = ar.num(z)
    r = xprec.xabs(zz)
    n_last = int(math.floor(r + m + 0.5))
    g, e, s, abs_sum, _, nxt = _laurent_parts(m, zz, n_last, ar)
    val = g - e * s
    emag = xprec.xabs(e)
    trunc = 2.0 * emag * xprec.xabs(nxt)
    rnd = emag * abs_sum + xprec.xabs(g)
    return make_result(val, n_last + 1, trunc, rnd, ar, exp_evals=1)


@dataclass(frozen=True)
class ConvergingFactorState:
    """Quotient-difference data behind the converging factor at index N."""

    N: int
    a: float
    c: tuple
    q: tuple
    e: tuple
    theta: complex

    @staticmethod
    def q_entry(n: int, k: int, a: float) -> float:
        return n + k - a

    @staticmethod
    def e_entry(n: int, k: int) -> float:
        return float(k)


def _theta(w, N, a, depth, ar):
    """w/(w- q1/(1- e1/(w- q2/(1- ... q_K/(1- e_K/w))))), evaluated backward."""
    d = w
    for k in range(depth, 0, -1):
        den = 1 - k / d
        if den == 0:
            return None
        d = w - (N + k - a) / den
        if d == 0:
            return None
    return w / d


def converging_factor(m, z, N: int) -> ConvergingFactorState:
    """Quotient-difference coefficients and theta_N at argument w = -z."""
    a = m + 0.5
    w = -complex(z)
    c = tuple(pochhammer(1 - a, n) for n in range(N + 1))
    q = tuple(N + k - a for k in range(1, N + 1))
    e = tuple(float(k) for k in range(1, N + 1))
    th = _theta(w, N, a, max(N, 1), xprec.DOUBLE)
    return ConvergingFactorState(N, a, c, q, e, th)


def laurent_cf(m, z, N: int | None = None, prec: str = "double") -> SeriesResult:
    """Laurent series to N-1 plus c_N/w^(N+1) theta_N(w), w = -z.

    The continued fraction runs until its lower index reaches N, so it only
    reuses the coefficients of the main sum.  A collapsing denominator falls
    back to the plain series (flagged).
    """
    _check_laurent_arg(z, m)
    ar = xprec.arith(prec)
    zz = ar.num(z)
    a = m + 0.5
    r = xprec.xabs(zz)
    n_max = int(math.floor(r + a))
    if N is None:
        N = n_max
    if N > n_max or N < 1:
        raise DomainError("N must lie in [1, floor(|z|+a)] = [1, %d]" % n_max)
    g, e, s, abs_sum, t_last, t_next = _laurent_parts(m, zz, N - 1, ar)
    w = -zz
    depth = max(N, 1)
    th = _theta(w, N, a, depth, ar)
    th_prev = _theta(w, N, a, depth - 1, ar) if depth > 1 else ar.num(1.0)
    if th is None or th_prev is None:
        res = laurent(m, z, prec)
        return SeriesResult(res.value, res.terms_used, res.error_estimate,
                            res.flags + ("cf_collapse",), res.exp_evals, res.xvalue)
    # t_next is c_N (-z)^{-N}; the bracket's tail is c_N/w^{N+1} theta = t_next/w theta
    tail = t_next * th
    sum_all = s + tail
    val = g - e * sum_all
    emag = xprec.xabs(e)
    trunc = 2.0 * emag * xprec.xabs(t_next) * xprec.xabs(th - th_prev)
    rnd = emag * (abs_sum + xprec.xabs(tail) * (1 + 4 * depth)) + xprec.xabs(g)
    return make_result(val, N + 1 + depth, trunc, rnd, ar, exp_evals=1)


# --------------------------------------------------------------------------
# power series of the square

@lru_cache(maxsize=None)
def _square_coefficients(m: int, n_terms: int):
    out = []
    for n in range(n_terms):
        inner = sum(Fraction(1, math.factorial(k) * math.factorial(n - k) * (2 * m + 2 * k + 1))
                    for k in range(n + 1))
        out.append(inner / (2 * m + n + 1))
    return tuple(out)


def square_coefficient(m: int, n: int) -> Fraction:
    """Exact coefficient of (-z)^n in the power series of F_m(z)^2."""
    return _square_coefficients(m, n + 1)[n]


def square_series(m, z, n_cap: int = 40, tol: float = 0.0,
                  prec: str = "double") -> SeriesResult:
    """F_m(z) as the square root of the power series of F_m(z)^2.

    The root is the one closer to a five-term power-series estimate; when
    that estimate cannot separate the two roots the result is flagged and its
    error estimate set to 1.
    """
    if m != int(m):
        raise DomainError("square_series needs integer m")
    m = int(m)
    ar = xprec.arith(prec)
    if _is_zero(z):
        return _zero_result(m, ar)
    zz = ar.num(z)
    r = xprec.xabs(zz)
    coef = _square_coefficients(m, n_cap + 1)
    p = ar.num(1.0)
    s = ar.num(xprec.exact_real(coef[0], ar))
    abs_sum = xprec.xabs(s)
    n = 1
    while n < n_cap:
        p = p * (-zz)
        c = p * xprec.exact_real(coef[n], ar)
        s = s + c
        ac = xprec.xabs(c)
        abs_sum += ac
        n += 1
        if ac <= tol * xprec.xabs(s):
            break
    # coefficients are below 2^n/n!/(2m+n+1): tail bound via (2r)^k/k!
    partial = sum((2 * r) ** k / math.factorial(k) for k in range(n)) if 2 * r < 700 else math.inf
    tail_sq = exp_tail(2 * r, n, partial) / (2 * m + n + 1)
    root = ar.sqrt(s)
    guess = power_series(m, z, tol=0.0, n_cap=5)
    flags = []
    g = guess.value
    rd = xprec.to_double(root)
    d_plus = abs(rd - g)
    d_minus = abs(-rd - g)
    if d_minus < d_plus:
        root = -root
    elif d_minus == d_plus:
        flags.append("branch_tie")
        if xprec.to_double(root).real < 0:
            root = -root
    smag = xprec.xabs(s)
    rmag = math.sqrt(smag) if smag > 0 else 0.0
    guess_err = _power_tail(r, m, 5, sum(r ** k / math.factorial(k) for k in range(5)))
    # the root nearer the guess is F itself once |guess - F| < |F|
    uncertain = not guess_err < 0.9 * rmag
    if uncertain:
        flags.append("branch_uncertain")
    # relative error of the root is half that of the square
    half = 0.5 * rmag / smag if smag > 0 else math.inf
    res = make_result(root, n, tail_sq * half, abs_sum * half, ar, flags)
    if uncertain or "branch_tie" in flags:
        res = SeriesResult(res.value, res.terms_used, max(res.error_estimate, 1.0),
                           res.flags, res.exp_evals, res.xvalue)
    return res


# --------------------------------------------------------------------------
# split-off exponential

def exp_moment(k: int, z, prec: str = "double"):
    """int_0^1 t^k e^{-zt} dt and an absolute rounding bound.

    Upward recurrence I_k = -e^{-z}/z + (k/z) I_{k-1} when |z| >= max(1/4, k);
    otherwise the series sum_j (-z)^j / (j! (k+j+1)), which avoids both the
    removable singularity at 0 and the loss of the upward recurrence.
    Returns (value, abs_error_bound, exp_evals).
    """
    ar = xprec.arith(prec)
    zz = ar.num(z)
    r = xprec.xabs(zz)
    if r < max(0.25, float(k)):
        t = ar.num(1.0)
        s = t / (k + 1)
        abs_sum = xprec.xabs(s)
        partial = 1.0
        rj = 1.0
        j = 1
        while True:
            t = t * (-zz) / j
            c = t / (k + j + 1)
            s = s + c
            ac = xprec.xabs(c)
            abs_sum += ac
            rj *= r / j
            partial += rj
            j += 1
            if j > 2.0 * r + 2 and ac <= 0.25 * ar.eps * xprec.xabs(s):
                break
            if j > 2000:
                break
        trunc = exp_tail(r, j, partial) / (k + j + 1)
        return s, trunc + 4.0 * ar.eps * abs_sum, 0
    ez = ar.exp(-zz)
    inv = 1 / zz
    val = (1 - ez) * inv
    err = 4.0 * ar.eps * (1.0 + abs_exp(zz)) / r
    for j in range(1, k + 1):
        val = (j * val - ez) * inv
        err = (j * err + 4.0 * ar.eps * (j * xprec.xabs(val) * r + abs_exp(zz))) / r
    return val, err, 1


def split_exp_series(m, z, n_cap: int = 40, tol: float = 0.0,
                     prec: str = "double") -> SeriesResult:
    """int_0^1 t^(2m) e^{-zt} dt minus sum_{n>=1} (-z)^n/((n-1)! (2m+n+1)(2m+2n+1))."""
    if m != int(m):
        raise DomainError("split_exp_series needs integer m")
    m = int(m)
    ar = xprec.arith(prec)
    if _is_zero(z):
        return _zero_result(m, ar)
    zz = ar.num(z)
    r = xprec.xabs(zz)
    j, j_err, n_exp = exp_moment(2 * m, z, prec)
    t = ar.num(1.0)   # (-z)^(n-1)/(n-1)!
    corr = ar.num(0.0)
    abs_sum = 0.0
    partial = 0.0     # sum_{k < n-1} r^k/k!
    rk = 1.0          # r^(n-1)/(n-1)!
    n = 1
    while n < n_cap:
        if n > 1:
            t = t * (-zz) / (n - 1)
            rk *= r / (n - 1)
        c = t * (-zz) / ((2 * m + n + 1) * (2 * m + 2 * n + 1))
        corr = corr + c
        ac = xprec.xabs(c)
        abs_sum += ac
        partial += rk
        n += 1
        if ac <= tol * xprec.xabs(corr):
            break
    # first omitted index is n: |c_k| <= r * r^(k-1)/(k-1)! / ((2m+n+1)(2m+2n+1))
    trunc = r * exp_tail(r, n - 1, partial) / ((2 * m + n + 1) * (2 * m + 2 * n + 1))
    val = j - corr
    res = make_result(val, n, trunc + j_err, abs_sum + xprec.xabs(j), ar, exp_evals=n_exp)
    return res


# --------------------------------------------------------------------------
# half-argument series

@dataclass(frozen=True)
class HalfArgTable:
    """Coefficients I[m][n] = int_{-pi}^{pi} sin^(2m)(w/2) cos^n(w) cos(w/2) dw.

    Built exactly in rational arithmetic, stored as double-double (hi, lo).
    """

    m_max: int
    n_max: int
    hi: tuple
    lo: tuple

    def entry(self, m: int, n: int) -> float:
        return self.hi[m][n]

    def entry_x(self, m: int, n: int):
        return xprec.XReal(self.hi[m][n], self.lo[m][n])


def build_half_arg_table(m_max: int = 16, n_max: int = 128) -> HalfArgTable:
    """Row 0 from I_n = (2(-1)^n + n I_{n-1})/(n+1/2), I_0 = 4; further rows by
    I[m][n] = (I[m-1][n] - I[m-1][n+1])/2, all in exact rationals."""
    if m_max > 64 or n_max > 512:
        raise DomainError("table too large")
    his, los = [], []
    for m in range(m_max + 1):
        row = _halfarg_fraction_row(m, n_max + 1)
        h, l = [], []
        for q in row:
            x = xprec.from_fraction(q)
            h.append(x.hi)
            l.append(x.lo)
        his.append(tuple(h))
        los.append(tuple(l))
    return HalfArgTable(m_max, n_max, tuple(his), tuple(los))


@lru_cache(maxsize=1)
def default_half_arg_table() -> HalfArgTable:
    return build_half_arg_table(16, 128)


def half_arg_series(m, z, n_cap: int = 60, table: HalfArgTable | None = None,
                    prec: str = "double") -> SeriesResult:
    """(e^{-z/2}/4) sum_{n<n_cap} (z/2)^n/n! I[m][n]."""
    if table is None:
        table = default_half_arg_table()
    if m != int(m) or m < 0:
        raise DomainError("half_arg_series needs integer m >= 0")
    m = int(m)
    if m > table.m_max or n_cap - 1 > table.n_max:
        raise DomainError("half-argument table covers m <= %d, n <= %d"
                          % (table.m_max, table.n_max))
    ar = xprec.arith(prec)
    if _is_zero(z):
        return _zero_result(m, ar)
    zz = ar.num(z)
    h = zz / 2
    r = xprec.xabs(h)
    ext = ar is xprec.EXTENDED
    coef = table.entry_x if ext else table.entry
    t = ar.num(1.0)
    s = t * coef(m, 0)
    abs_sum = xprec.xabs(s)
    partial = 1.0
    rk = 1.0
    for n in range(1, n_cap):
        t = t * h / n
        c = t * coef(m, n)
        s = s + c
        abs_sum += xprec.xabs(c)
        rk *= r / n
        partial += rk
    # |I[m][n]| <= I[m][0] = 4/(2m+1)
    trunc = exp_tail(r, n_cap, partial) * 4.0 / (2 * m + 1)
    pre = ar.exp(-h) / 4
    val = pre * s
    pmag = xprec.xabs(pre)
    return make_result(val, n_cap, pmag * trunc, pmag * abs_sum, ar, exp_evals=1)
