"""Quadrature-type evaluators of F_m(z).

* local Taylor expansion of exp(-z t^2) on N subintervals (Hermite polynomials)
* second-order Taylor expansion of the algebraic factor u^(m-1/2), optionally
  with the first subinterval replaced by its exact power series
* Fourier cosine expansion of u^(m-1/2) on an even 4-periodic carrier
* Gauss-Jacobi quadrature for the weight t^(2m) on [0,1], rules generated here
* closed forms of cubic-Hermite spline integration (m = 0, 1)
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import xprec
from .errors import DomainError, NumericError
from .result import SeriesResult, exp_tail, make_result, origin_result
from .xprec import XReal

# --------------------------------------------------------------------------
# subintervals and Hermite polynomials

@dataclass(frozen=True)
class SubintervalConfig:
    """N equal subintervals of [0,1]: half-width 1/(2N), centres (2l-1)/(2N)."""

    N: int

    def __post_init__(self):
        if self.N < 1:
            raise DomainError("need at least one subinterval")

    @property
    def delta(self) -> float:
        return 1.0 / (2 * self.N)

    @property
    def centers(self) -> tuple:
        return tuple((2 * l - 1) / (2.0 * self.N) for l in range(1, self.N + 1))

    def centers_exact(self) -> tuple:
        return tuple(Fraction(2 * l - 1, 2 * self.N) for l in range(1, self.N + 1))


def _as_config(cfg) -> SubintervalConfig:
    return cfg if isinstance(cfg, SubintervalConfig) else SubintervalConfig(int(cfg))


@lru_cache(maxsize=None)
def _hermite_even_coefficients(n: int) -> tuple:
    """Coefficients of H_n(x) as a polynomial in w = x^2, highest power first."""
    coef = []
    for k in range(n // 2 + 1):
        p = (n - 2 * k) // 2
        c = (-1) ** k * math.factorial(n) // (math.factorial(k) * math.factorial(n - 2 * k)) * 2 ** (n - 2 * k)
        coef.append((p, c))
    coef.sort(reverse=True)
    return tuple(c for _, c in coef)


def even_scaled_hermite(n: int, zt2):
    """H_n(sqrt(zt2)) for even n, as a Horner polynomial in zt2 (no root taken).

    Multiplying by z^(n/2) gives z^(n/2) H_n(sqrt(z) t) for zt2 = z t^2.
    """
    if n % 2 or not 0 <= n <= 64:
        raise DomainError("n must be even and in [0, 64]")
    out = 0
    for c in _hermite_even_coefficients(n):
        out = out * zt2 + c
    return out


def hermite_local_taylor(z, cfg=20, n_max: int = 6, prec: str = "double") -> SeriesResult:
    """F_0(z) from Taylor expansions of exp(-z t^2) about each subinterval centre.

    2 sum_l e^{-z t_l^2} sum_{n even <= n_max} Delta^(n+1)/(n+1)! z^(n/2) H_n(sqrt(z) t_l).
    The error estimate adds the magnitudes of the next two even orders.
    """
    cfg = _as_config(cfg)
    if n_max % 2 or not 0 <= n_max <= 32:
        raise DomainError("n_max must be even and <= 32")
    ar = xprec.arith(prec)
    zz = ar.num(z)
    ext = ar is xprec.EXTENDED
    dpow = []   # Delta^(n+1)/(n+1)! for even n up to n_max + 4
    for n in range(0, n_max + 5, 2):
        q = Fraction(1, (2 * cfg.N) ** (n + 1) * math.factorial(n + 1))
        dpow.append(xprec.exact_real(q, ar) if ext else float(q))
    total = ar.num(0.0)
    abs_sum = 0.0
    trunc = 0.0
    centers = cfg.centers_exact()
    for tl in centers:
        t2 = xprec.exact_real(tl * tl, ar)
        zt2 = zz * t2
        e = ar.exp(-zt2)
        emag = xprec.xabs(e)
        inner = ar.num(0.0)
        inner_abs = 0.0
        zp = ar.num(1.0)
        for i, n in enumerate(range(0, n_max + 5, 2)):
            term = dpow[i] * zp * even_scaled_hermite(n, zt2)
            if n <= n_max:
                inner = inner + term
                inner_abs += xprec.xabs(term) * (n + 1)
            else:
                trunc += emag * xprec.xabs(term)
            zp = zp * zz
        total = total + e * inner
        abs_sum += emag * inner_abs
    val = 2 * total
    return make_result(val, cfg.N * (n_max // 2 + 1), 2 * trunc, 2 * abs_sum, ar,
                       exp_evals=cfg.N)


# --------------------------------------------------------------------------
# Taylor expansion of the algebraic factor

def _binom_tail(p: float, r: float) -> float:
    """sum_{k>=3} |binom(p,k)| r^k/(k+1) for 0 < r < 1."""
    c = p * (p - 1) * (p - 2) / 6.0
    out = 0.0
    rk = r ** 3
    k = 3
    while k < 400:
        term = abs(c) * rk / (k + 1)
        out += term
        if term <= 1e-18 * out and k > 10:
            break
        c *= (p - k) / (k + 1)
        rk *= r
        k += 1
    return out


def _patch_series(m, zz, delta2, n_top, ar):
    """(2 Delta)^(m+1/2)/2 sum_{n<=n_top} (-2 z Delta)^n/((m+1/2+n) n!) with the
    rigorous bound on the omitted terms and the term-magnitude sum."""
    a = m + 0.5
    w = -zz * delta2
    r = xprec.xabs(w)
    pre = ar.num(delta2 ** a if ar is xprec.DOUBLE else _upow_x(delta2, a)) / 2
    t = ar.num(1.0)
    s = t / a
    abs_sum = xprec.xabs(s)
    partial = 1.0
    rk = 1.0
    for n in range(1, n_top + 1):
        t = t * w / n
        c = t / (a + n)
        s = s + c
        abs_sum += xprec.xabs(c)
        rk *= r / n
        partial += rk
    pm = xprec.xabs(pre)
    tail = pm * exp_tail(r, n_top + 1, partial) / (a + n_top + 1)
    return pre * s, tail, pm * abs_sum


class _AlgebraicTerms:
    """Per-subinterval terms of the second-order algebraic Taylor sum."""

    def __init__(self, m, z, cfg, ar):
        self.ar = ar
        self.cfg = cfg
        self.p = m - 0.5
        self.zz = zz = ar.num(z)
        self.delta = Fraction(1, 2 * cfg.N)
        x = zz * xprec.exact_real(self.delta, ar)
        ep = ar.exp(-x)
        em = ar.exp(x)
        x2 = x * x / 2
        self.b1 = ep - em
        self.b2 = ep * (1 + x) - em * (1 - x)
        self.b3 = ep * (x2 + x + 1) - em * (x2 - x + 1)
        xm = xprec.xabs(x)
        mags = xprec.xabs(ep) + xprec.xabs(em)
        self.mags = (mags, mags * (1 + xm), mags * (1 + xm + xm * xm / 2))
        self.rz = xprec.xabs(zz)
        re = zz.rh if isinstance(zz, xprec.XComplex) else zz.real
        self.shift = math.exp(abs(re) * float(self.delta))

    def term(self, l):
        """(term before the -1/(2z) factor, its magnitude sum, |e^{-zu}| u^p)."""
        ar, p = self.ar, self.p
        ul = Fraction(2 * l - 1, 2 * self.cfg.N)
        u = xprec.exact_real(ul, ar)
        uf = float(ul)
        zu = self.zz * u
        e = ar.exp(-zu)
        upow = uf ** p if ar is xprec.DOUBLE else _upow_x(u, p)
        brace = self.b1 + (p / zu) * self.b2 + (p * (p - 1) / (zu * zu)) * self.b3
        emag = xprec.xabs(e) * float(upow)
        m1, m2, m3 = self.mags
        ru = self.rz * uf
        mag = emag * (m1 + abs(p) / ru * m2 + abs(p * (p - 1)) / ru ** 2 * m3)
        return e * upow * brace, mag, emag

    def sum(self, l_start):
        """(sum over l >= l_start, truncation bound, rounding magnitude)."""
        total = self.ar.num(0.0)
        abs_sum = 0.0
        trunc = 0.0
        two_delta = 2 * float(self.delta)
        for l in range(l_start, self.cfg.N + 1):
            t, mag, emag = self.term(l)
            total = total + t
            abs_sum += mag
            if l >= 2:
                # remainder of the binomial series of (u_l + s)^p, |s| <= Delta
                r = 1.0 / (2 * l - 1)
                trunc += 0.5 * emag * self.shift * two_delta * _binom_tail(self.p, r)
        scale = -1 / (2 * self.zz)
        return total * scale, trunc, abs_sum / (2 * self.rz)

    def first(self):
        t, _, _ = self.term(1)
        return t * (-1 / (2 * self.zz))


def _upow_x(u: XReal, p: float):
    """u^p for p a half-integer, as a power of sqrt(u)."""
    k = int(round(2 * p))
    s = u.sqrt()
    out = XReal(1.0)
    for _ in range(abs(k)):
        out = out * s
    return out if k >= 0 else 1 / out


def _check_alg(m, z):
    if m < 0 or m != int(m):
        raise DomainError("m must be a non-negative integer")
    if z == 0:
        raise DomainError("algebraic Taylor form needs z != 0; F_m(0) = 1/(2m+1)")
    if abs(z) < 1e-100:
        # (z u)^-2 would overflow; the form cancels catastrophically long before
        raise DomainError("|z| too small for the algebraic Taylor form")


def algebraic_taylor(m, z, cfg=20, prec: str = "double") -> SeriesResult:
    """Riemann sum of closed-form integrals of the second-order Taylor
    polynomial of u^(m-1/2) about the centres u_l, times e^{-zu}.

    The estimate bounds the omitted Taylor orders for l >= 2 and compares the
    l = 1 contribution (where u^(m-1/2) is not analytic) with its exact series.
    """
    cfg = _as_config(cfg)
    _check_alg(m, z)
    ar = xprec.arith(prec)
    terms = _AlgebraicTerms(m, z, cfg, ar)
    val, trunc, rnd = terms.sum(1)
    d2 = xprec.exact_real(Fraction(1, cfg.N), ar)
    exact1, tail1, _ = _patch_series(m, terms.zz, d2, 80, ar)
    trunc += xprec.xabs(terms.first() - exact1) + tail1
    return make_result(val, cfg.N, trunc, rnd, ar, exp_evals=cfg.N + 2)


def algebraic_taylor_patched(m, z, cfg=40, n_patch: int = 3,
                             prec: str = "double") -> SeriesResult:
    """algebraic_taylor with the l = 1 subinterval [0, 2 Delta] replaced by
    (2 Delta)^(m+1/2)/2 sum_{n <= n_patch} (-2 z Delta)^n / ((m+1/2+n) n!)."""
    cfg = _as_config(cfg)
    if not 0 <= n_patch <= 8:
        raise DomainError("n_patch must lie in [0, 8]")
    _check_alg(m, z)
    if cfg.N == 1:
        raise DomainError("patched form needs N >= 2")
    ar = xprec.arith(prec)
    terms = _AlgebraicTerms(m, z, cfg, ar)
    val, trunc, rnd = terms.sum(2)
    d2 = xprec.exact_real(Fraction(1, cfg.N), ar)
    patch, tail, pabs = _patch_series(m, terms.zz, d2, n_patch, ar)
    return make_result(val + patch, cfg.N - 1 + n_patch + 1, trunc + tail, rnd + pabs, ar,
                       flags=("patched",), exp_evals=cfg.N + 1)


# --------------------------------------------------------------------------
# Fourier expansion of the algebraic factor

@dataclass(frozen=True)
class FourierTable:
    """Cosine coefficients c_l (odd l <= N/2) of the carrier of u^(m-1/2).

    c_0 = 1 and the even coefficients vanish by construction of the carrier.
    ``max_deviation`` is the sampled max |u^(m-1/2) - reconstruction| on [0,1].
    """

    m: int
    N: int
    ls: tuple
    c: tuple
    max_deviation: float

    def coefficient(self, l: int) -> float:
        if l == 0:
            return 1.0
        if l % 2 == 0:
            return 0.0
        return self.c[(l - 1) // 2]


def _carrier(u: np.ndarray, m) -> np.ndarray:
    p = m - 0.5
    with np.errstate(divide="ignore", invalid="ignore"):
        lo = np.where(u > 0, np.abs(u) ** p, np.inf if p < 0 else 0.0)
        hi = 2.0 - np.abs(2.0 - u) ** p
    return np.where(u <= 1.0, lo, hi)


def _reconstruct(ls, cs, u: np.ndarray) -> np.ndarray:
    out = np.ones_like(u)
    for l, c in zip(ls, cs):
        out += c * np.cos(l * np.pi / 2 * u)
    return out


def fourier_coefficients(m, N: int):
    k = np.arange(1, N // 2)
    f = _carrier(4.0 * k / N, m)
    ls = tuple(range(1, N // 2 + 1, 2))
    cs = []
    for j in ls:
        cs.append(4.0 / N * ((-1) ** j + float(np.sum(f * np.cos(2 * np.pi * j * k / N)))))
    return ls, tuple(cs)


def reconstruction_error(table: FourierTable, samples: int = 200001) -> float:
    """max over sampled u in [0,1] of |u^(m-1/2) - sum_l c_l cos(l pi u/2)|."""
    if table.m == 0:
        return math.inf
    u = np.linspace(0.0, 1.0, samples)
    dev = np.abs(_carrier(u, table.m) - _reconstruct(table.ls, table.c, u))
    return float(np.max(dev))


@lru_cache(maxsize=64)
def fourier_table(m, N: int = 512) -> FourierTable:
    """Discrete cosine coefficients on N points (N a power of two, 64..4096):
    c_j = (4/N)[(-1)^j + sum_{k=1}^{N/2-1} f(4k/N) cos(2 pi j k/N)], odd j."""
    if N < 64 or N > 4096 or N & (N - 1):
        raise DomainError("N must be a power of two in [64, 4096]")
    if m < 0:
        raise DomainError("m must be non-negative")
    ls, cs = fourier_coefficients(m, N)
    tab = FourierTable(m, N, ls, cs, math.inf)
    return FourierTable(m, N, ls, cs, reconstruction_error(tab))


def _phi(w):
    """(1 - e^{-w})/w, by its series near the origin."""
    if abs(w) < 0.5:
        t = 1.0 + 0j
        s = t
        for n in range(1, 30):
            t = t * (-w) / (n + 1)
            s += t
        return s
    return (1.0 - cmath.exp(-w)) / w


def fourier_eval(m, z, table: FourierTable | None = None) -> SeriesResult:
    """(1/2)[(1-e^{-z})/z + 2 sum_{odd l <= N/2} c_l (2z + (-1)^[l/2] l pi e^{-z})/((2z)^2 + (l pi)^2)].

    Near the removable poles z = +-i l pi/2 the term is evaluated as
    (1/2)[phi(z - i l pi/2) + phi(z + i l pi/2)], phi(w) = (1 - e^{-w})/w.
    """
    if table is None:
        table = fourier_table(m)
    if table.m != m:
        raise DomainError("table built for m = %r, not %r" % (table.m, m))
    flags = ("singular_carrier",) if m == 0 else ()
    z = complex(z)
    if z == 0:
        return origin_result(m, flags)
    ez = cmath.exp(-z)
    head = _phi(z)
    total = head
    abs_sum = abs(head)
    for l, c in zip(table.ls, table.c):
        k = l * math.pi / 2
        if abs(z - 1j * k) < 0.5 or abs(z + 1j * k) < 0.5:
            # e^{-(z -+ ik)} = e^{-z} e^{+-ik}
            term = 0.5 * (_phi_shift(z, k, ez, 1) + _phi_shift(z, k, ez, -1))
        else:
            sgn = -1.0 if (l // 2) % 2 else 1.0
            term = 2 * (2 * z + sgn * l * math.pi * ez) / ((2 * z) ** 2 + (l * math.pi) ** 2)
        total += c * term
        abs_sum += abs(c * term)
    val = 0.5 * total
    x = z.real
    weight = (-math.expm1(-x) / x) if x != 0 else 1.0
    trunc = 0.5 * table.max_deviation * weight
    return make_result(val, len(table.ls) + 1, trunc, 0.5 * abs_sum * 4, xprec.DOUBLE,
                       flags, exp_evals=1)


def _phi_shift(z, k, ez, sign):
    w = z - sign * 1j * k
    if abs(w) < 0.5:
        return _phi(w)
    return (1.0 - ez * cmath.exp(sign * 1j * k)) / w


# --------------------------------------------------------------------------
# Gauss-Jacobi rules for int_0^1 x^k f(x) dx

@dataclass(frozen=True)
class QuadRule:
    """Gauss rule for int_0^1 x^k f(x) dx; k = 0 is Gauss-Legendre.

    ``x``/``w`` are binary64, ``x_x``/``w_x`` double-double; ``defects[j]``
    is |1/(k+2j+1) - sum_i w_i x_i^(2j)| (zero for j < n up to rounding).
    """

    kind: str
    k: int
    n: int
    x: tuple
    w: tuple
    x_x: tuple
    w_x: tuple
    defects: tuple


def _jacobi_np(n, alpha, y):
    """P_n^(alpha,0)(y) and P_{n-1} for an array y (binary64)."""
    p0 = np.ones_like(y)
    if n == 0:
        return p0, np.zeros_like(y)
    p1 = ((alpha + 2) * y + alpha) / 2.0
    for j in range(1, n):
        a1 = 2 * (j + 1) * (j + alpha + 1) * (2 * j + alpha)
        a2 = (2 * j + alpha + 1) * ((2 * j + alpha + 2) * (2 * j + alpha) * y + alpha * alpha)
        a3 = 2 * (j + alpha) * j * (2 * j + alpha + 2)
        p0, p1 = p1, (a2 * p1 - a3 * p0) / a1
    return p1, p0


def _jacobi_x(n, alpha, y: XReal):
    """P_n, P_{n-1} and the full list P_0..P_{n-1} in double-double."""
    ps = [XReal(1.0)]
    if n == 0:
        return XReal(1.0), XReal(0.0), ps
    p0 = XReal(1.0)
    p1 = ((alpha + 2) * y + alpha) / 2
    for j in range(1, n):
        ps.append(p1)
        a1 = 2 * (j + 1) * (j + alpha + 1) * (2 * j + alpha)
        c2 = (2 * j + alpha + 1) * (2 * j + alpha + 2) * (2 * j + alpha)
        c0 = (2 * j + alpha + 1) * alpha * alpha
        a3 = 2 * (j + alpha) * j * (2 * j + alpha + 2)
        p0, p1 = p1, ((c2 * y + c0) * p1 - a3 * p0) / a1
    return p1, p0, ps


@lru_cache(maxsize=None)
def _jacobi_roots_double(n: int, alpha: int) -> tuple:
    """Roots of P_n^(alpha,0) in (-1,1), ascending, via interlacing bisection."""
    if n == 0:
        return ()
    if n == 1:
        return (-alpha / (alpha + 2.0),)
    prev = _jacobi_roots_double(n - 1, alpha)
    lo = np.array((-1.0,) + prev)
    hi = np.array(prev + (1.0,))
    flo, _ = _jacobi_np(n, alpha, lo)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        fm, _ = _jacobi_np(n, alpha, mid)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
        if np.all(hi - lo <= 4e-16 * np.maximum(np.abs(lo), 1e-3)):
            break
    return tuple(float(v) for v in 0.5 * (lo + hi))


def _jacobi_matrix_seeds(n: int, alpha: int) -> tuple:
    """Eigenvalues of the symmetric recurrence matrix (large n seeding)."""
    a, b = float(alpha), 0.0
    j = np.arange(1, n, dtype=float)
    diag = np.empty(n)
    diag[0] = (b - a) / (a + b + 2)
    diag[1:] = (b * b - a * a) / ((2 * j + a + b) * (2 * j + a + b + 2))
    k = np.arange(1, n, dtype=float)
    off = np.sqrt(4 * k * (k + a) * (k + b) * (k + a + b)
                  / ((2 * k + a + b) ** 2 * (2 * k + a + b + 1) * (2 * k + a + b - 1)))
    mat = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    return tuple(sorted(float(v) for v in np.linalg.eigvalsh(mat)))


def _newton_x(n, alpha, y0: float) -> XReal:
    y = XReal(y0)
    for _ in range(8):
        pn, pm1, _ = _jacobi_x(n, alpha, y)
        dp = (n * (alpha - (2 * n + alpha) * y) * pn + 2 * (n + alpha) * n * pm1) \
            / ((2 * n + alpha) * (1 - y * y))
        step = pn / dp
        y = y - step
        if abs(float(step)) <= 1e-32 * max(abs(float(y)), 1e-3):
            break
    return y


@lru_cache(maxsize=None)
def gauss_jacobi_rule(n: int, k: int = 0) -> QuadRule:
    """n-point rule for int_0^1 x^k f(x) dx, exact for polynomial f of degree
    2n-1.  Nodes are the zeros of P_n^(k,0)(1-2x), bracketed by interlacing
    with degree n-1 and polished by Newton steps in double-double; weights
    from 1/w_i = sum_{j<n} (k+2j+1) P_j(1-2x_i)^2.
    """
    if not 1 <= n <= 64:
        raise DomainError("n must lie in [1, 64]")
    if not 0 <= k <= 16 or k != int(k):
        raise DomainError("k must be an integer in [0, 16]")
    return _build_rule(n, int(k), _jacobi_roots_double(n, int(k)))


def _build_rule(n, k, seeds) -> QuadRule:
    xs, ws = [], []
    for y0 in seeds:
        y = _newton_x(n, k, y0)
        if not -1.0 < float(y) < 1.0:
            raise NumericError("Jacobi root left (-1, 1)")
        _, _, ps = _jacobi_x(n, k, y)
        acc = XReal(0.0)
        for j, pj in enumerate(ps):
            acc = acc + (k + 2 * j + 1) * (pj * pj)
        xs.append((1 - y) / 2)
        ws.append(1 / acc)
    order = sorted(range(n), key=lambda i: float(xs[i]))
    xs = [xs[i] for i in order]
    ws = [ws[i] for i in order]
    defects = _moment_defects(k, xs, ws, n + 160)
    kind = "GaussLegendre" if k == 0 else "GaussJacobi(%d)" % k
    return QuadRule(kind, k, n, tuple(float(x) for x in xs), tuple(float(w) for w in ws),
                    tuple(xs), tuple(ws), defects)


def _moment_defects(k, xs, ws, j_max):
    x2 = [x * x for x in xs]
    pw = list(ws)
    out = []
    for j in range(j_max):
        s = XReal(0.0)
        for v in pw:
            s = s + v
        exact = xprec.from_fraction(Fraction(1, k + 2 * j + 1))
        out.append(abs(float(s - exact)))
        pw = [p * q for p, q in zip(pw, x2)]
    return tuple(out)


def gauss_jacobi_rule_dd(n: int, k: int = 0):
    """(nodes, weights) in double-double for any n (large n seeded by the
    eigenvalues of the recurrence matrix)."""
    if n <= 64:
        r = gauss_jacobi_rule(n, k)
        return r.x_x, r.w_x
    r = _large_rule(n, k)
    return r.x_x, r.w_x


@lru_cache(maxsize=8)
def _large_rule(n, k):
    seeds = _jacobi_matrix_seeds(n, k)
    xs, ws = [], []
    for y0 in seeds:
        y = _newton_x(n, k, y0)
        _, _, ps = _jacobi_x(n, k, y)
        acc = XReal(0.0)
        for j, pj in enumerate(ps):
            acc = acc + (k + 2 * j + 1) * (pj * pj)
        xs.append((1 - y) / 2)
        ws.append(1 / acc)
    order = sorted(range(n), key=lambda i: float(xs[i]))
    xs = tuple(xs[i] for i in order)
    ws = tuple(ws[i] for i in order)
    return QuadRule("GaussJacobi(%d)" % k, k, n, tuple(map(float, xs)),
                    tuple(map(float, ws)), xs, ws, ())


def gauss_jacobi_eval(m, z, rule: QuadRule | None = None, n: int = 20,
                      prec: str = "double") -> SeriesResult:
    """sum_i w_i e^{-z x_i^2} for the rule with weight x^(2m).

    Error estimate: sum_{j>=n} |z|^j/j! times the rule's moment defect at x^(2j).
    """
    if m != int(m) or m < 0:
        raise DomainError("m must be a non-negative integer")
    if rule is None:
        rule = gauss_jacobi_rule(n, 2 * int(m))
    if rule.k != 2 * m:
        raise DomainError("rule has weight x^%d, F_%r needs x^%d" % (rule.k, m, 2 * m))
    ar = xprec.arith(prec)
    zz = ar.num(z)
    ext = ar is xprec.EXTENDED
    xs = rule.x_x if ext else rule.x
    ws = rule.w_x if ext else rule.w
    total = ar.num(0.0)
    abs_sum = 0.0
    for x, w in zip(xs, ws):
        t = ar.exp(-(zz * (x * x))) * w
        total = total + t
        abs_sum += xprec.xabs(t)
    r = xprec.xabs(zz)
    trunc = 0.0
    term = 1.0
    partial = 0.0
    for j, dj in enumerate(rule.defects):
        if j >= rule.n:
            trunc += term * dj
        partial += term
        term *= r / (j + 1)
    if rule.defects:
        trunc += exp_tail(r, len(rule.defects), partial) if r > 0 else 0.0
    if z == 0:
        trunc = 0.0
    return make_result(total, rule.n, trunc, abs_sum * 2, ar, exp_evals=rule.n)


# --------------------------------------------------------------------------
# cubic spline closed forms

def moment_integral(p: int, a, b, fa, fb, dfa, dfb):
    """int_a^b x^p s(x) dx for the cubic s matching f, f' at a and b (p = 0, 1, 2)."""
    if not a < b:
        raise DomainError("need a < b")
    h = b - a
    if p == 0:
        return h * (fa + fb) / 2 - h * h / 12 * (dfb - dfa)
    if p == 1:
        return h / 60 * (a * a * (2 * dfb - 3 * dfa)
                         + a * (b * dfb + 9 * fb + 21 * fa + b * dfa)
                         + 2 * b * b * dfa + 21 * b * fb + 9 * b * fa - 3 * b * b * dfb)
    if p == 2:
        return h / 60 * (a ** 3 * (dfb - 2 * dfa)
                         + a * a * (b * dfb + 4 * fb + 16 * fa)
                         + a * b * (b * dfa + 10 * fb + 10 * fa)
                         + b * b * (4 * fa - 2 * b * dfb + 16 * fb + b * dfa))
    raise DomainError("moment_integral supports p in {0, 1, 2}")


def _spline_sum(m, z, knots, exps):
    total = 0j
    abs_sum = 0.0
    for j in range(len(knots) - 1):
        a, b = knots[j], knots[j + 1]
        ea, eb = exps[j], exps[j + 1]
        h = b - a
        if m == 0:
            t = h / 6 * ((3 + z * b * h) * eb + (3 - z * a * h) * ea)
        else:
            t = h / 30 * ((2 * z * b ** 4 - z * b * b * a * a + 8 * b * b + 5 * b * a
                           - z * b * a ** 3 + 2 * a * a) * eb
                          + (2 * z * a ** 4 - z * b * b * a * a + 8 * a * a + 5 * b * a
                             - z * b ** 3 * a + 2 * b * b) * ea)
        total += t
        abs_sum += abs(t) * (1 + abs(z))
    return total, abs_sum


def spline_eval(m, z, N: int = 10) -> SeriesResult:
    """Cubic-Hermite spline quadrature on the knots j/N in closed form (m = 0, 1).

    The estimate is the distance to the same rule on every other knot (or on
    (N+1)//2 intervals for odd N).
    """
    if m not in (0, 1):
        raise DomainError("spline closed forms exist for m = 0 and m = 1 only")
    if N < 2:
        raise DomainError("need N >= 2")
    z = complex(z)
    knots = [j / N for j in range(N + 1)]
    exps = [cmath.exp(-z * t * t) for t in knots]
    val, abs_sum = _spline_sum(m, z, knots, exps)
    if N % 2 == 0:
        coarse, _ = _spline_sum(m, z, knots[::2], exps[::2])
        n_exp = N + 1
    else:
        M = (N + 1) // 2
        ck = [j / M for j in range(M + 1)]
        coarse, _ = _spline_sum(m, z, ck, [cmath.exp(-z * t * t) for t in ck])
        n_exp = N + 1 + M + 1
    return make_result(val, N, abs(val - coarse), abs_sum, xprec.DOUBLE, exp_evals=n_exp)
