"""F_m(z) through other special functions.

* F_0 from the Faddeeva function w, approximated by the rational form built on
  an n-point Gauss-Hermite rule (nodes polished by a third-order Newton step)
* the expansion of 1F1(a; a+1; 2zeta) in modified spherical Bessel functions
* Dijkstra's continued fraction K(a, b, z) = 1F1(a; b+1; z)/(b 1F1(a; b; z))
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import xprec
from .errors import DomainError, NumericError
from .result import SeriesResult, make_result
from .xprec import XReal

_EPS = 2.0 ** -53


# --------------------------------------------------------------------------
# Gauss-Hermite rules

@dataclass(frozen=True)
class HermiteRule:
    """n-point Gauss-Hermite rule for int e^{-x^2} f(x) dx, nodes ascending."""

    n: int
    t: tuple
    lam: tuple
    t_x: tuple
    lam_x: tuple

    def positive(self):
        """(t_k, lambda_k) for t_k > 0, plus the weight at t = 0 (0.0 for even n)."""
        half = self.n // 2
        pairs = tuple(zip(self.t[self.n - half:], self.lam[self.n - half:]))
        mid = self.lam[half] if self.n % 2 else 0.0
        return pairs, mid


def _hermite_quotient(n: int, x):
    """H_n(x)/H_{n-1}(x) = 2x - 2(n-1)/(2x - ... 2/(2x))."""
    d = 2 * x
    for j in range(2, n + 1):
        d = 2 * x - 2 * (j - 1) / d
    return d


def hermite_ratio(n: int, x):
    """H_n'(x)/H_n(x) by the terminating continued fraction
    2n/(2x - 2(n-1)/(2x - ... 2/(2x)))."""
    return 2 * n / _hermite_quotient(n, x)


def _hermite_scaled_np(n, x):
    """H_n(x)/sqrt(2^n n!) by the normalized three-term recurrence."""
    h0 = np.ones_like(x)
    if n == 0:
        return h0
    h1 = math.sqrt(2.0) * x
    for j in range(1, n):
        h0, h1 = h1, x * math.sqrt(2.0 / (j + 1)) * h1 - math.sqrt(j / (j + 1)) * h0
    return h1


def _hermite_scaled_x(n, x: XReal) -> XReal:
    h0 = XReal(1.0)
    if n == 0:
        return h0
    two = XReal(2.0)
    h1 = two.sqrt() * x
    for j in range(1, n):
        c1 = (two / (j + 1)).sqrt()
        c0 = (XReal(j) / (j + 1)).sqrt()
        h0, h1 = h1, x * c1 * h1 - c0 * h0
    return h1


@lru_cache(maxsize=None)
def _hermite_seeds(n: int) -> tuple:
    """Zeros of H_n to ~1e-15, bracketed by the zeros of H_{n-1}."""
    if n == 1:
        return (0.0,)
    prev = _hermite_seeds(n - 1)
    bound = math.sqrt(2.0 * n + 1.0) + 1.0
    lo = np.array((-bound,) + prev)
    hi = np.array(prev + (bound,))
    flo = _hermite_scaled_np(n, lo)
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        fm = _hermite_scaled_np(n, mid)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    out = 0.5 * (lo + hi)
    if n % 2:
        out[n // 2] = 0.0
    return tuple(float(v) for v in out)


def _polish(n, x0: float) -> XReal:
    """x <- x - r (1 + x r), r = H_n/H_n', in double-double."""
    x = XReal(x0)
    if x0 == 0.0:
        return x
    for _ in range(50):
        r = _hermite_quotient(n, x) / (2 * n)
        step = r * (1 + x * r)
        x = x - step
        if abs(float(step)) <= 1e-17 * abs(float(x)) + 1e-300:
            return x
    raise NumericError("Hermite zero polish did not converge (n=%d, seed %r)" % (n, x0))


@lru_cache(maxsize=None)
def hermite_rule(n: int) -> HermiteRule:
    """Nodes are zeros of H_n, weights sqrt(pi)/(n h_{n-1}(t)^2) with
    h_j = H_j/sqrt(2^j j!), which equals 2^{n-1} n! sqrt(pi)/(n^2 H_{n-1}(t)^2)."""
    if not 1 <= n <= 64:
        raise DomainError("n must lie in [1, 64]")
    seeds = _hermite_seeds(n)
    half = (n + 1) // 2
    # polish the non-negative half, mirror the rest
    pos = [_polish(n, s) for s in seeds[n - half:]]
    lam_pos = []
    for x in pos:
        h = _hermite_scaled_x(n - 1, x)
        lam_pos.append(xprec.SQRT_PI / (n * (h * h)))
    if n % 2:
        t_x = tuple(-v for v in reversed(pos[1:])) + tuple(pos)
        l_x = tuple(reversed(lam_pos[1:])) + tuple(lam_pos)
    else:
        t_x = tuple(-v for v in reversed(pos)) + tuple(pos)
        l_x = tuple(reversed(lam_pos)) + tuple(lam_pos)
    return HermiteRule(n, tuple(map(float, t_x)), tuple(map(float, l_x)), t_x, l_x)


# --------------------------------------------------------------------------
# Faddeeva function and F_0

def _faddeeva_parts(zeta, rule):
    pairs, mid = rule.positive()
    z2 = zeta * zeta
    s = 0j
    mag = 0.0
    for t, lam in pairs:
        term = lam / (z2 - t * t)
        s += term
        mag += abs(term)
    val = 2j / math.pi * zeta * s
    mag *= 2 / math.pi * abs(zeta)
    if mid:
        val += 1j / math.pi * mid / zeta
        mag += mid / (math.pi * abs(zeta))
    return val, mag


def faddeeva(w_arg, rule: HermiteRule | None = None) -> complex:
    """w(zeta) ~ (2i/pi) zeta sum_{t_k > 0} lambda_k/(zeta^2 - t_k^2) for Im zeta > 0
    (with the lambda/zeta term of the zero node for odd n)."""
    zeta = complex(w_arg)
    if not zeta.imag > 0:
        raise DomainError("the rational Faddeeva form needs Im > 0")
    return _faddeeva_parts(zeta, rule or hermite_rule(32))[0]


def _f0_faddeeva(z, rule, root_sign):
    s = cmath.sqrt(z) * root_sign
    zeta = 1j * s
    if zeta.imag > 0:
        w, wmag = _faddeeva_parts(zeta, rule)
    elif zeta.imag < 0:
        # w(zeta) = 2 e^{-zeta^2} - w(-zeta), zeta^2 = -z
        w0, wmag = _faddeeva_parts(-zeta, rule)
        w = 2 * cmath.exp(z) - w0
        wmag += 2 * abs(cmath.exp(z))
    else:
        raise DomainError("z on the negative real axis puts i sqrt(z) on the poles' line")
    ez = cmath.exp(-z)
    pre = 0.5 * math.sqrt(math.pi) / s
    val = pre * (1 - ez * w)
    rnd = abs(pre) * (1 + abs(ez) * wmag)
    return val, rnd


def f0_via_faddeeva(z, rule: HermiteRule | None = None, n: int = 32,
                    root_sign: int = 1) -> SeriesResult:
    """F_0(z) = (1/2) sqrt(pi/z) [1 - e^{-z} w(i sqrt z)].

    Lower half-plane z by conjugate reflection.  ``root_sign = -1`` uses -sqrt z
    with w(-zeta) = 2 e^{-zeta^2} - w(zeta); the result is the same.  The
    estimate is the distance to the rule with 16 more (or fewer) points, plus
    any excess of |F_0| over its bound max(1, e^{-Re z}).
    """
    if rule is None:
        rule = hermite_rule(n)
    if root_sign not in (1, -1):
        raise DomainError("root_sign must be +1 or -1")
    z = complex(z)
    if z == 0:
        raise DomainError("F_0(0) = 1 is handled by the caller")
    lower = z.imag < 0
    zz = z.conjugate() if lower else z
    val, rnd = _f0_faddeeva(zz, rule, root_sign)
    n2 = rule.n + 16 if rule.n + 16 <= 64 else rule.n - 16
    other, _ = _f0_faddeeva(zz, hermite_rule(n2), root_sign)
    if lower:
        val = val.conjugate()
        other = other.conjugate()
    # both rules vanish at zeta = 0, so near z = 0 they agree on a wrong value;
    # |F_0(z)| <= max(1, e^{-Re z}) exposes that
    excess = max(0.0, abs(val) - max(1.0, math.exp(-z.real)))
    return make_result(val, rule.n // 2 + 1, abs(val - other) + excess, rnd * 4, xprec.DOUBLE,
                       exp_evals=1)


# --------------------------------------------------------------------------
# modified spherical Bessel expansion

def _poly_shift(p):
    return [0] + list(p)


def _poly_deriv(p):
    return [k * c for k, c in enumerate(p)][1:] or [0]


def _poly_add(*ps):
    out = [0] * max(len(p) for p in ps)
    for p in ps:
        for k, c in enumerate(p):
            out[k] += c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_scale(p, s):
    return [s * c for c in p]


@dataclass(frozen=True)
class BesselTermTable:
    """e^zeta zeta^n (zeta^-1 d/dzeta)^n (sinh zeta/zeta) = (U_n A + V_n)/(2 zeta^(n+1)),
    A = e^{2 zeta}; U, V hold integer coefficients in ascending powers."""

    U: tuple
    V: tuple

    @property
    def n_max(self) -> int:
        return len(self.U) - 1

    def term(self, n: int, zeta, A):
        """(T_n, magnitude of the two pieces before they cancel)."""
        u = _horner(self.U[n], zeta)
        v = _horner(self.V[n], zeta)
        den = 2 * zeta ** (n + 1)
        ua = u * A
        mag = (_horner_abs(self.U[n], abs(zeta)) * abs(A) + _horner_abs(self.V[n], abs(zeta)))
        return (ua + v) / den, mag / abs(den)


def _horner(p, x):
    out = 0
    for c in reversed(p):
        out = out * x + c
    return out


def _horner_abs(p, r):
    out = 0.0
    for c in reversed(p):
        out = out * r + abs(c)
    return out


@lru_cache(maxsize=None)
def bessel_term_table(n_max: int = 7) -> BesselTermTable:
    """U_{n+1} = zeta (U_n' + U_n) - (2n+1) U_n, V_{n+1} = zeta (V_n' - V_n) - (2n+1) V_n,
    U_0 = 1, V_0 = -1."""
    U, V = [[1]], [[-1]]
    for n in range(n_max):
        u, v = U[-1], V[-1]
        U.append(_poly_add(_poly_shift(_poly_add(_poly_deriv(u), u)), _poly_scale(u, -(2 * n + 1))))
        V.append(_poly_add(_poly_shift(_poly_add(_poly_deriv(v), _poly_scale(v, -1))),
                           _poly_scale(v, -(2 * n + 1))))
    return BesselTermTable(tuple(map(tuple, U)), tuple(map(tuple, V)))


def spherical_i_sequence(zeta, n_top: int):
    """i_0 .. i_{n_top} with i_n = zeta^n (zeta^-1 d/dzeta)^n (sinh zeta/zeta),
    by downward recurrence i_{n-1} = i_{n+1} + (2n+1)/zeta i_n, normalized
    to i_0 = sinh zeta/zeta or i_1 = (zeta cosh zeta - sinh zeta)/zeta^2."""
    zeta = complex(zeta)
    start = n_top + 8 + int(math.ceil(abs(zeta)))
    vals = [0j] * (start + 2)
    vals[start] = 1e-280
    for n in range(start, 0, -1):
        vals[n - 1] = vals[n + 1] + (2 * n + 1) / zeta * vals[n]
        if abs(vals[n - 1]) > 1e250:
            vals = [v * 1e-250 for v in vals]
    sh, ch = cmath.sinh(zeta), cmath.cosh(zeta)
    i0 = sh / zeta
    i1 = (zeta * ch - sh) / (zeta * zeta)
    # the i_1 closed form cancels for small zeta, i_0 has zeros on the imaginary axis
    if abs(zeta) < 1 or abs(vals[0]) * abs(i1) >= abs(vals[1]) * abs(i0):
        scale = i0 / vals[0]
    else:
        scale = i1 / vals[1]
    return [v * scale for v in vals[:n_top + 1]]


def bessel_series(m, z, n_max: int = 7) -> SeriesResult:
    """F_m(z) = 1F1(a; a+1; 2 zeta)/(2a), zeta = -z/2, with
    1F1 = sum_{n <= n_max} (-1)^n (2n+1) (1-a)_n/(1+a)_n e^zeta i_n(zeta).

    For |2 zeta| >= 1 the terms come from the closed forms in A = e^{2 zeta};
    below that they come from the downward recurrence (flag "downward").
    The estimate is the tail of the same series, summed from the recurrence.
    """
    if not 0 <= n_max <= 7:
        raise DomainError("n_max must lie in [0, 7]")
    if m < 0:
        raise DomainError("m must be non-negative")
    z = complex(z)
    if z == 0:
        raise DomainError("the Bessel expansion needs z != 0; F_m(0) = 1/(2m+1)")
    a = m + 0.5
    zeta = -z / 2
    ez = cmath.exp(zeta)
    n_tail = n_max + 60 + 3 * int(math.ceil(abs(zeta)))
    seq = spherical_i_sequence(zeta, n_tail)
    small = abs(2 * zeta) < 1
    table = None if small else bessel_term_table(7)
    A = cmath.exp(2 * zeta)
    total = 0j
    rnd = 0.0
    tail = 0j
    coef = 1.0
    for n in range(n_tail + 1):
        c = (-1) ** n * (2 * n + 1) * coef
        if n <= n_max:
            if small:
                t = ez * seq[n]
                mag = abs(t) * (n + 2)
            else:
                t, mag = table.term(n, zeta, A)
            total += c * t
            rnd += abs(c) * mag * (n + 2)
        else:
            tail += c * ez * seq[n]
        coef *= (n + 1 - a) / (n + 1 + a)
    scale = 1 / (2 * a)
    flags = ("downward",) if small else ()
    return make_result(total * scale, n_max + 1, abs(tail) * scale, rnd * scale,
                       xprec.DOUBLE, flags, exp_evals=1)


# --------------------------------------------------------------------------
# Dijkstra's continued fraction

def dijkstra_K(a, b, z, N: int, prec: str = "double", close_with_z: bool = False):
    """1/(b+z- z(b+1-a)/(b+1+z- ... z(b+N-a)/(b+N))), accumulated backwards.

    ``close_with_z`` keeps the z in the last denominator (plain truncation).
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    ar = xprec.arith(prec)
    zz = ar.num(z)
    d = ar.num(b + N) + (zz if close_with_z else 0)
    for n in range(N - 1, -1, -1):
        if xprec.xabs(d) == 0.0:
            raise NumericError("zero denominator at depth %d" % (n + 1))
        d = (b + n) + zz - zz * (b + n + 1 - a) / d
    if xprec.xabs(d) == 0.0:
        raise NumericError("zero denominator at depth 0")
    return 1 / d


def _dijkstra_value(m, z, N, prec, close_with_z):
    ar = xprec.arith(prec)
    a = m + 0.5
    zz = ar.num(z)
    return ar.exp(-zz) * dijkstra_K(a, a, -zz, N, prec, close_with_z) / 2


def _depth_check(N):
    return N + N // 2 + 4


def f_via_dijkstra(m, z, N: int = 32, prec: str = "double",
                   close_with_z: bool = False) -> SeriesResult:
    """F_m(z) = (1/2) e^{-z} K(a, a, -z), a = m + 1/2, closing denominator a + N.

    The estimate is the distance to the depth 3N/2 + 4 convergent plus a
    rounding term of N eps.
    """
    if m < 0:
        raise DomainError("m must be non-negative")
    val = _dijkstra_value(m, z, N, prec, close_with_z)
    ref = _dijkstra_value(m, z, _depth_check(N), prec, close_with_z)
    ar = xprec.arith(prec)
    return make_result(val, N, xprec.xabs(val - ref), 4 * (N + 2) * xprec.xabs(val), ar,
                       exp_evals=1)


def _dijkstra_pos_value(m, z, N, prec):
    ar = xprec.arith(prec)
    a = m + 0.5
    zz = ar.num(z)
    K = dijkstra_K(1, a, zz, N, prec)
    den = 1 - zz * K
    if xprec.xabs(den) == 0.0:
        raise NumericError("1 - z K(1, a, z) vanished")
    # F_{m-1} = e^{-z}/((2m-1)(1 - zK)) stepped up once by the index recurrence
    return ar.exp(-zz) * K / (2 * den), den


def f_via_dijkstra_pos(m, z, N: int = 32, prec: str = "double") -> SeriesResult:
    """F_m(z) from z K(1, a, z) = 1 - e^{-z}/((2m-1) F_{m-1}(z)).

    Solving for F_{m-1} and applying 2z F_m = (2m-1) F_{m-1} - e^{-z} gives
    F_m = e^{-z} K/(2(1 - zK)) without the subtraction of the recurrence.
    """
    if m < 0:
        raise DomainError("m must be non-negative")
    val, den = _dijkstra_pos_value(m, z, N, prec)
    ref, _ = _dijkstra_pos_value(m, z, _depth_check(N), prec)
    ar = xprec.arith(prec)
    cond = (1 + 1 / xprec.xabs(den)) * (N + 2)
    return make_result(val, N, xprec.xabs(val - ref), 4 * cond * xprec.xabs(val), ar,
                       exp_evals=1)
