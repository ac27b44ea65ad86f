"""F_m(z) at half-integer index in closed form, and interpolation across m.

For a = m + 1/2 a positive integer the integral is elementary:

    F = (a-1)!/(2 z^a) - e^{-z}/(2z) [1 + sum_{n=1}^{a-1} (1-a)(2-a)...(n-a)/(-z)^n].

Integer m are then reached by fitting a polynomial sum_j b_j m^j through the
samples at m_k = k + 1/2 (k = 0..N), optionally with some sample rows
replaced by rows that enforce the index recurrence between two integer m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import xprec
from .errors import DomainError, NumericError
from .result import SeriesResult, make_result

_EPS = 2.0 ** -53


def _closed_parts(a: int, z, ar):
    zz = ar.num(z)
    g = ar.num(xprec.exact_real(math.factorial(a - 1), ar)) / (2 * zz ** a)
    e = ar.exp(-zz) / (2 * zz)
    inv = -1 / zz
    t = ar.num(1.0)
    s = t
    abs_sum = 1.0
    for n in range(1, a):
        t = t * (n - a) * inv
        s = s + t
        abs_sum += xprec.xabs(t)
    return g, e, s, abs_sum


def half_integer_closed(a: int, z, prec: str = "double"):
    """F at m = a - 1/2 for a positive integer a; z must be nonzero."""
    return half_integer_closed_result(a, z, prec).best()


def half_integer_closed_result(a: int, z, prec: str = "double") -> SeriesResult:
    if a != int(a) or a < 1:
        raise DomainError("a must be a positive integer")
    if z == 0:
        raise DomainError("closed form needs z != 0; the limit is 1/(2a)")
    a = int(a)
    ar = xprec.arith(prec)
    g, e, s, abs_sum = _closed_parts(a, z, ar)
    val = g - e * s
    rnd = xprec.xabs(g) + xprec.xabs(e) * abs_sum
    return make_result(val, a, 0.0, rnd * (a + 1), ar, exp_evals=1)


@dataclass(frozen=True)
class IndexInterpSystem:
    """Linear system sum_j m_k^j b_j = F_{m_k}(z) and its solution."""

    N: int
    m_k: tuple
    matrix: np.ndarray
    rhs: np.ndarray
    b: np.ndarray

    def evaluate(self, m: float) -> complex:
        out = 0j
        for bj in self.b[::-1]:
            out = out * m + bj
        return complex(out)

    def residual(self) -> float:
        r = self.matrix @ self.b - self.rhs
        return float(np.max(np.abs(r)) / max(np.max(np.abs(self.rhs)), 1e-300))


def _samples(z, N):
    vals, errs = [], []
    for k in range(N + 1):
        r = half_integer_closed_result(k + 1, z)
        vals.append(r.value)
        errs.append(r.error_estimate * abs(r.value))
    return vals, errs


def _vandermonde(nodes, N):
    return np.array([[mk ** j for j in range(N + 1)] for mk in nodes], dtype=complex)


def _solve(mat, rhs):
    try:
        b = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise NumericError("singular interpolation system: %s" % exc) from None
    if not np.all(np.isfinite(b)):
        raise NumericError("interpolation system produced non-finite coefficients")
    return b


def build_system(z, N: int, couplings=(), removals=()) -> IndexInterpSystem:
    """Sample rows at m_k = k + 1/2, with ``removals`` (sample indexes)
    replaced in order by recurrence rows for ``couplings`` (m_v, m_u = m_v + 1):

        sum_j [2z m_u^j - (2 m_u - 1) m_v^j] b_j = -e^{-z}.
    """
    if N < 1 or N > 10:
        raise DomainError("N must lie in [1, 10]")
    if len(couplings) != len(removals):
        raise DomainError("each coupling must replace exactly one sample row")
    z = complex(z)
    if z == 0:
        raise DomainError("index interpolation needs z != 0")
    nodes = tuple(k + 0.5 for k in range(N + 1))
    vals, _ = _samples(z, N)
    mat = _vandermonde(nodes, N)
    rhs = np.array(vals, dtype=complex)
    ez = complex(xprec.to_double(xprec.x_exp(-xprec.from_double(z))))
    for (mv, mu), k in zip(couplings, removals):
        if mu != mv + 1:
            raise DomainError("couplings must pair m_v with m_u = m_v + 1")
        if not 0 <= k <= N:
            raise DomainError("removal index %r out of range" % (k,))
        mat[k, :] = [2 * z * mu ** j - (2 * mu - 1) * mv ** j for j in range(N + 1)]
        rhs[k] = -ez
    b = _solve(mat, rhs)
    return IndexInterpSystem(N, nodes, mat, rhs, b)


def _lagrange_abs(nodes, m):
    out = []
    for i, xi in enumerate(nodes):
        w = 1.0
        for j, xj in enumerate(nodes):
            if j != i:
                w *= (m - xj) / (xi - xj)
        out.append(abs(w))
    return out


def interp_eval(m: int, z, N: int) -> complex:
    """Polynomial interpolation of the half-integer samples, evaluated at m."""
    return interp_series(m, z, N).value


def interp_series(m: int, z, N: int) -> SeriesResult:
    """interp_eval with an error estimate.

    The estimate is the change when the node farthest from m is dropped, plus
    the sample errors carried through the Lagrange weights, plus rounding of
    the polynomial evaluation.
    """
    if not 1 <= m <= N:
        raise DomainError("need 1 <= m <= N")
    z = complex(z)
    sysm = build_system(z, N)
    val = sysm.evaluate(m)
    nodes = list(sysm.m_k)
    _, errs = _samples(z, N)
    far = max(range(len(nodes)), key=lambda k: (abs(nodes[k] - m), k))
    keep = [k for k in range(len(nodes)) if k != far]
    sub_nodes = [nodes[k] for k in keep]
    sub = _solve(_vandermonde(sub_nodes, N - 1), sysm.rhs[keep])
    low = 0j
    for bj in sub[::-1]:
        low = low * m + bj
    trunc = abs(val - low)
    lam = _lagrange_abs(nodes, m)
    prop = sum(l * e for l, e in zip(lam, errs))
    rnd = sum(abs(bj) * m ** j for j, bj in enumerate(sysm.b))
    rnd += sum(l * abs(v) for l, v in zip(lam, sysm.rhs))
    return make_result(val, N + 1, trunc + prop, rnd * (N + 1), xprec.DOUBLE,
                       exp_evals=1)


def interp_recurrence_constrained(m: int, z, N: int, couplings, removals) -> complex:
    return interp_constrained_series(m, z, N, couplings, removals).value


def interp_constrained_series(m: int, z, N: int, couplings, removals) -> SeriesResult:
    """Interpolation with recurrence rows; estimate = plain estimate plus the
    distance to the plain interpolant."""
    if not 1 <= m <= N:
        raise DomainError("need 1 <= m <= N")
    z = complex(z)
    plain = interp_series(m, z, N)
    sysm = build_system(z, N, couplings, removals)
    val = sysm.evaluate(m)
    mag = abs(val)
    if mag == 0.0:
        est = math.inf
    else:
        est = plain.error_estimate * abs(plain.value) / mag + abs(val - plain.value) / mag
        est += 4.0 * _EPS * (N + 1) * sum(abs(bj) * m ** j for j, bj in enumerate(sysm.b)) / mag
    flags = ("constrained",)
    return SeriesResult(val, N + 1, est, flags, 1)
