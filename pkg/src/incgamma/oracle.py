"""Reference values of F_m(z) in double-double arithmetic.

F_m(z) = int_0^1 t^(2m) exp(-z t^2) dt.  Four expansions are summed in
double-double and each comes with an error estimate covering truncation and
rounding (cancellation):

* the power series  sum (-z)^n / (n! (2m+2n+1)),
* the Laurent (asymptotic) series truncated at n = floor(|z| + a),
* the half-argument series  exp(-z/2)/4 * sum (z/2)^n/n! I_n, with exact
  rational coefficients I_n, which loses far fewer digits than the power
  series near the imaginary axis,
* the Kummer-transformed series  exp(-z)/(2a) sum z^n/(a+1)_n, free of
  cancellation for Re z > 0 and large m.

The first branch whose estimate reaches 22 digits wins; otherwise the best
one is returned.  Values are trusted to 20 digits for |z| <= 50, m <= 64.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import xprec
from .errors import DomainError
from .xprec import XComplex, XReal, core

RADIUS = 50.0
M_MAX = 64
TRUSTED_DIGITS = 20
_ACCEPT = 1e-22
_EPS = 2.0 ** -104
_RND = 16.0 * _EPS  # rounding safety factor times unit roundoff
POWER_CAP = 600
HALFARG_TERMS = 200
DIGITS_CAP = 31.0
ABS_FLOOR = 1e-250


class SeriesBranch(str, enum.Enum):
    POWER = "power"
    LAURENT = "laurent"
    HALFARG = "halfarg"
    KUMMER = "kummer"


@dataclass(frozen=True)
class EvalRequest:
    m: float
    z: complex

    @property
    def a(self) -> float:
        return self.m + 0.5


@dataclass(frozen=True)
class OracleValue:
    value: XComplex
    error_estimate: float
    branch: SeriesBranch


@dataclass(frozen=True)
class AccuracyResult:
    d: float
    approx: complex
    reference: XComplex
    absolute: bool = False


@dataclass(frozen=True)
class RecurrenceStep:
    value: XComplex
    cancellation: float


# --------------------------------------------------------------------------
# helpers

def _check_m(m) -> float:
    if isinstance(m, bool):
        raise DomainError("m must be a number")
    two_m = 2 * m
    if two_m != int(two_m) or m < 0:
        raise DomainError("m must be a non-negative integer or half-integer, got %r" % (m,))
    if m > M_MAX:
        raise DomainError("m = %r exceeds %d" % (m, M_MAX))
    return float(m)


def _is_integer(m: float) -> bool:
    return m == int(m)


def _is_lower(z: XComplex) -> bool:
    return z.ih < 0.0 or (z.ih == 0.0 and math.copysign(1.0, z.ih) < 0.0 and z.rh < 0.0)


@lru_cache(maxsize=None)
def gamma_half(a2: int) -> XReal:
    """Gamma(a2/2) for a positive integer a2, in double-double."""
    if a2 % 2 == 0:
        return XReal(math.factorial(a2 // 2 - 1))
    m = (a2 - 1) // 2
    num = 1
    for k in range(1, 2 * m, 2):
        num *= k
    return xprec.SQRT_PI * xprec.from_fraction(Fraction(num, 2 ** m))


@lru_cache(maxsize=None)
def halfarg_row(m: int, n_terms: int = HALFARG_TERMS):
    """Exact coefficients I_n = int_{-1}^{1} ((1+s)/2)^(m-1/2) (-s)^n ds.

    Row 0 follows from integrating by parts, I_n = (2(-1)^n + n I_{n-1})/(n + 1/2)
    with I_0 = 4; each further row is (I_n - I_{n+1})/2 of the row below.
    Returned as two tuples of floats (hi and lo parts).
    """
    rows = _halfarg_fraction_row(m, n_terms)
    his, los = [], []
    for q in rows:
        x = xprec.from_fraction(q)
        his.append(x.hi)
        los.append(x.lo)
    return tuple(his), tuple(los)


@lru_cache(maxsize=None)
def _halfarg_fraction_row(m: int, n_terms: int):
    if m == 0:
        out = [Fraction(4)]
        for n in range(1, n_terms):
            out.append((2 * (-1) ** n + n * out[-1]) / (n + Fraction(1, 2)))
        return tuple(out)
    below = _halfarg_fraction_row(m - 1, n_terms + 1)
    return tuple((below[n] - below[n + 1]) / 2 for n in range(n_terms))


def _zpow_a(z: XComplex, m: float) -> XComplex:
    """Principal z^(m+1/2)."""
    if _is_integer(m):
        return (z ** int(m)) * z.sqrt()
    return z ** int(m + 0.5)


# --------------------------------------------------------------------------
# branches (all take Im z >= 0)

def _power(m: float, z: XComplex):
    rh, rl, ih, il, terms, abs_sum, next_abs = core.power_sum(
        m, z.rh, z.rl, z.ih, z.il, 1e-34, POWER_CAP)
    val = XComplex.from_parts(rh, rl, ih, il)
    mag = val.approx_abs()
    if mag == 0.0:
        return val, math.inf
    est = (_RND * abs_sum + next_abs) / mag
    return val, est


def _laurent(m: float, z: XComplex, n_last: int | None = None):
    a = m + 0.5
    r = z.approx_abs()
    if n_last is None:
        n_last = int(math.floor(r + a))
    rh, rl, ih, il, abs_sum, next_abs = core.laurent_sum(m, z.rh, z.rl, z.ih, z.il, n_last)
    s = XComplex.from_parts(rh, rl, ih, il)
    g = gamma_half(int(2 * a)) / (2 * _zpow_a(z, m))
    e = (-z).exp() / (2 * z)
    val = g - e * s
    mag = val.approx_abs()
    if mag == 0.0:
        return val, math.inf
    emag = e.approx_abs()
    est = (emag * next_abs + _RND * (emag * abs_sum + g.approx_abs())) / mag
    return val, est


def _halfarg(m: float, z: XComplex):
    if not _is_integer(m):
        return None, math.inf
    his, los = halfarg_row(int(m))
    rh, rl, ih, il, terms, abs_sum, next_bound, exhausted = core.halfarg_sum(
        his, los, z.rh, z.rl, z.ih, z.il, 1e-34)
    s = XComplex.from_parts(rh, rl, ih, il)
    mag = s.approx_abs()
    if mag == 0.0:
        return None, math.inf
    val = (z * -0.5).exp() * s / 4
    est = _RND * abs_sum / mag
    if exhausted:
        est += next_bound / mag
    return val, est


def _kummer(m: float, z: XComplex):
    # F = e^{-z}/(2a) * sum z^n / ((a+1)_n); no cancellation for Re z > 0
    a = m + 0.5
    term = XComplex(1.0)
    acc = XComplex(1.0)
    abs_sum = 1.0
    n = 0
    while n < POWER_CAP:
        term = term * z / (a + 1.0 + n)
        acc = acc + term
        t = term.approx_abs()
        abs_sum += t
        n += 1
        if t <= 1e-34 * acc.approx_abs() and n > z.approx_abs() - a:
            break
    mag = acc.approx_abs()
    nxt = t * z.approx_abs() / max(a + 1.0 + n - z.approx_abs(), 1.0)
    val = (-z).exp() * acc / (2 * a)
    return val, (_RND * abs_sum + nxt) / mag


_BRANCHES = {
    SeriesBranch.POWER: _power,
    SeriesBranch.LAURENT: _laurent,
    SeriesBranch.HALFARG: _halfarg,
    SeriesBranch.KUMMER: _kummer,
}


def _branch_order(z: XComplex):
    r = z.approx_abs()
    # digits the power series loses: largest term ~ e^|z| against |F|
    loss = (r - max(-z.rh, 0.0)) / xprec.LN10 + math.log10(2.0 * r + 1.0)
    if loss <= 8.0:
        return (SeriesBranch.POWER, SeriesBranch.LAURENT, SeriesBranch.HALFARG,
                SeriesBranch.KUMMER)
    return (SeriesBranch.LAURENT, SeriesBranch.HALFARG, SeriesBranch.KUMMER,
            SeriesBranch.POWER)


def _evaluate(m: float, z: XComplex) -> OracleValue:
    if not z:
        return OracleValue(XComplex(xprec.from_fraction(Fraction(1) / (2 * Fraction(m) + 1))),
                           0.0, SeriesBranch.POWER)
    lower = _is_lower(z)
    w = z.conjugate() if lower else z
    best = None
    for br in _branch_order(w):
        if br is SeriesBranch.LAURENT and w.approx_abs() < 1.0:
            continue
        val, est = _BRANCHES[br](m, w)
        if val is None:
            continue
        if best is None or est < best.error_estimate:
            best = OracleValue(val, est, br)
        if est <= _ACCEPT:
            break
    if lower:
        best = OracleValue(best.value.conjugate(), best.error_estimate, best.branch)
    return best


# --------------------------------------------------------------------------
# public operations

def _request(req, z=None):
    if isinstance(req, EvalRequest):
        return _check_m(req.m), xprec.to_xcomplex(req.z)
    return _check_m(req), xprec.to_xcomplex(z)


def oracle_detail(req, z=None) -> OracleValue:
    """Reference value with its error estimate and the branch that produced it.

    Raises DomainError (with the best-effort value attached) when |z| exceeds
    the trusted radius or the estimate misses 20 digits.
    """
    m, zx = _request(req, z)
    if not (math.isfinite(zx.rh) and math.isfinite(zx.ih)):
        raise DomainError("z must be finite")
    if zx.approx_abs() > RADIUS:
        best = _evaluate(m, zx) if zx.approx_abs() < 1e4 else None
        raise DomainError("|z| = %g outside the trusted radius %g" % (zx.approx_abs(), RADIUS),
                          value=None if best is None else best.value,
                          error_estimate=None if best is None else best.error_estimate)
    res = _evaluate(m, zx)
    if not res.error_estimate <= 10.0 ** -TRUSTED_DIGITS:
        raise DomainError("reference precision not reached (estimate %.2e)" % res.error_estimate,
                          value=res.value, error_estimate=res.error_estimate)
    return res


def oracle_eval(req, z=None) -> XComplex:
    """F_m(z) with at least 20 correct significant digits (|z| <= 50, m <= 64).

    Accepts an :class:`EvalRequest` or the pair ``(m, z)``; m may be a
    half-integer.
    """
    return oracle_detail(req, z).value


@lru_cache(maxsize=200000)
def _oracle_cached(m: float, zr: float, zi: float) -> XComplex:
    return oracle_eval(m, complex(zr, zi))


def oracle_cached(m, z: complex) -> XComplex:
    """Memoised oracle_eval for binary64 arguments (surveys reuse points)."""
    z = complex(z)
    return _oracle_cached(float(m), z.real, z.imag)


def oracle_branch(m, z, branch) -> tuple:
    """(value, error_estimate) from one named branch, Im z >= 0 assumed."""
    m = _check_m(m)
    zx = xprec.to_xcomplex(z)
    val, est = _BRANCHES[SeriesBranch(branch)](m, zx)
    return val, est


def series_branch(z, a: float, target_d: float) -> SeriesBranch:
    """Power or Laurent series for ``target_d`` digits, by the Laurent floor.

    The floor is the first omitted Laurent term at n = floor(|z| + a), weighted
    by exp(-z)/(2z), relative to the Laurent value of F itself.
    """
    z = complex(z)
    r = abs(z)
    if r < 1.0:
        return SeriesBranch.POWER
    m = a - 0.5
    zx = xprec.from_double(z)
    if z.imag < 0.0:
        zx = zx.conjugate()
    try:
        _, est = _laurent(m, zx)
    except (OverflowError, ZeroDivisionError):
        return SeriesBranch.POWER
    if est < 10.0 ** (-target_d):
        return SeriesBranch.LAURENT
    return SeriesBranch.POWER


def combined_terms(m: int, z, target_d: float) -> tuple:
    """Terms the power/Laurent combination needs for ``target_d`` digits.

    Laurent costs floor(|z| + a) + 1 terms; for the power series the count is
    the fewest terms whose partial sums stay within 10^-target_d of the
    reference.  Returns (terms, branch).
    """
    z = complex(z)
    a = m + 0.5
    br = series_branch(z, a, target_d)
    if br is SeriesBranch.LAURENT:
        return int(math.floor(abs(z) + a)) + 1, br
    ref = oracle_eval(m, z)
    zx = xprec.from_double(z)
    n = core.power_terms_needed(float(m), zx.rh, zx.rl, zx.ih, zx.il,
                                ref.rh, ref.rl, ref.ih, ref.il,
                                10.0 ** (-target_d), POWER_CAP)
    return n, br


def digits_of(approx, reference) -> float:
    """Valid decimal digits: -log10|1 - approx/reference|, capped at 31."""
    return accuracy(approx, reference).d


def accuracy(approx, reference) -> AccuracyResult:
    ref = xprec.to_xcomplex(reference)
    if isinstance(approx, XComplex):
        ax = approx
    else:
        c = complex(approx)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            return AccuracyResult(0.0, c, ref)
        ax = xprec.from_double(c)
    diff = float(abs(ax - ref))
    rmag = float(abs(ref))
    absolute = rmag < ABS_FLOOR
    err = diff if absolute else (diff / rmag if rmag > 0.0 else math.inf)
    if err == 0.0:
        d = DIGITS_CAP
    elif math.isinf(err):
        d = 0.0
    else:
        d = min(DIGITS_CAP, -math.log10(err))
    return AccuracyResult(d, approx, ref, absolute)


def recurrence_forward(m: int, f_prev, z) -> RecurrenceStep:
    """F_m = [(2m-1) F_{m-1} - e^{-z}] / (2z), with the digits it may cancel.

    The estimate is -log10|2z| from F_0 and -log10|z/(m-1)| from higher
    indices (zero when there is no loss).
    """
    if m < 1:
        raise DomainError("forward recurrence needs m >= 1")
    zx = xprec.to_xcomplex(z)
    if not zx:
        raise DomainError("forward recurrence is undefined at z = 0")
    fp = xprec.to_xcomplex(f_prev)
    val = ((2 * m - 1) * fp - (-zx).exp()) / (2 * zx)
    r = zx.approx_abs()
    loss = -math.log10(2.0 * r) if m == 1 else -math.log10(r / (m - 1))
    return RecurrenceStep(val, max(0.0, loss))


def recurrence_backward(m: int, f_next, z) -> RecurrenceStep:
    """F_{m-1} = [2z F_m + e^{-z}] / (2m-1).

    Cancellation is about -log10|(m-1/2)/z| digits when Re z < 0 and |z| is
    large, none otherwise.
    """
    if m < 1:
        raise DomainError("backward recurrence needs m >= 1")
    zx = xprec.to_xcomplex(z)
    fn = xprec.to_xcomplex(f_next)
    val = (2 * zx * fn + (-zx).exp()) / (2 * m - 1)
    loss = 0.0
    if zx.rh < 0.0:
        loss = max(0.0, -math.log10((m - 0.5) / zx.approx_abs()))
    return RecurrenceStep(val, loss)


def recurrence_residual(m: int, f_m, f_prev, z) -> float:
    """|2z F_m - (2m-1) F_{m-1} + e^{-z}| / (|2z F_m| + |e^{-z}|)."""
    zx = xprec.to_xcomplex(z)
    fm = xprec.to_xcomplex(f_m)
    fp = xprec.to_xcomplex(f_prev)
    e = (-zx).exp()
    lhs = 2 * zx * fm
    res = lhs - (2 * m - 1) * fp + e
    scale = lhs.approx_abs() + e.approx_abs()
    return res.approx_abs() / scale


def quadrature_reference(m: float, z, n_points: int = 200) -> XComplex:
    """Brute-force Gauss-Legendre quadrature of int_0^1 t^(2m) e^(-z t^2) dt.

    Runs in double-double; meant as an independent check of the series.
    For half-integer m the substitution u = t^2 makes the integrand smooth.
    """
    from .quadmethods import gauss_jacobi_rule_dd

    zx = xprec.to_xcomplex(z)
    nodes, weights = gauss_jacobi_rule_dd(n_points, 0)
    acc = XComplex(0.0)
    if _is_integer(m):
        p = int(2 * m)
        for x, w in zip(nodes, weights):
            acc = acc + (-(zx * (x * x))).exp() * (w * _xpow(x, p))
        return acc
    # half-integer m: (1/2) int_0^1 u^(m-1/2) e^{-zu} du with integer power
    p = int(m - 0.5)
    for x, w in zip(nodes, weights):
        acc = acc + (-(zx * x)).exp() * (w * _xpow(x, p))
    return acc / 2


def _xpow(x: XReal, p: int) -> XReal:
    out = XReal(1.0)
    for _ in range(p):
        out = out * x
    return out
