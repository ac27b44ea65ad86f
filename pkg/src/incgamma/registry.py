"""Uniform table of every evaluator, keyed by method id.

Each entry maps (m, z, params, target_d) to a SeriesResult.  The wrapper
makes two guarantees the individual evaluators leave to the caller: lower
half-plane arguments are reflected through F_m(conj z) = conj F_m(z), so the
symmetry holds bit for bit, and methods whose formula is singular at z = 0
return the limit 1/(2m+1) there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from . import gridtaylor, indexinterp, oracle, quadmethods, salzer, series, specfun
from .errors import DomainError
from .result import SeriesResult, origin_result

DEFAULT_TARGET = 14.0


class UsageError(ValueError):
    """Unknown method id or parameter, or a parameter value of the wrong type."""


@dataclass(frozen=True)
class Method:
    id: str
    func: Callable
    defaults: dict = field(default_factory=dict)
    m_support: Callable = lambda m: m >= 0
    # "exact": func returns 1/(2m+1) at z = 0 itself; "limit": the formula is
    # singular or only rounds to it there, and the wrapper returns the limit
    z0: str = "exact"
    description: str = ""

    def params(self, given=None) -> dict:
        """Defaults overlaid with ``given``; string values are converted to
        the default's type."""
        out = dict(self.defaults)
        for k, v in (given or {}).items():
            if k not in out:
                raise UsageError("method %s has no parameter %r (known: %s)"
                                 % (self.id, k, ", ".join(sorted(out)) or "none"))
            out[k] = _convert(k, v, out[k])
        return out

    def evaluate(self, m, z, params=None, target_d: float | None = None) -> SeriesResult:
        p = self.params(params)
        if not self.m_support(m):
            raise DomainError("method %s does not support m = %r" % (self.id, m))
        td = DEFAULT_TARGET if target_d is None else float(target_d)
        z = complex(z)
        if z.imag < 0 or (z.imag == 0 and math.copysign(1.0, z.imag) < 0):
            return _conjugate(self.evaluate(m, z.conjugate(), p, td))
        if z == 0 and self.z0 == "limit":
            return origin_result(m, ("limit",))
        return self.func(m, z, p, td)


def _convert(key, value, default):
    if not isinstance(value, str):
        return value
    try:
        if isinstance(default, bool):
            if value.lower() in ("1", "true", "yes"):
                return True
            if value.lower() in ("0", "false", "no"):
                return False
            raise ValueError(value)
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
    except ValueError:
        raise UsageError("parameter %s=%r is not a valid %s"
                         % (key, value, type(default).__name__)) from None
    return value


def _conjugate(r: SeriesResult) -> SeriesResult:
    xv = r.xvalue.conjugate() if r.xvalue is not None else None
    return SeriesResult(r.value.conjugate(), r.terms_used, r.error_estimate,
                        r.flags, r.exp_evals, xv)


def _is_int(m) -> bool:
    return m == int(m) and m >= 0


# evaluator adaptors: (m, z, params, target_d) -> SeriesResult

def _oracle(m, z, p, td):
    res = oracle.oracle_detail(m, z)
    val = res.value
    return SeriesResult(complex(val.rh, val.ih), 1, res.error_estimate,
                        ("reference",), 0, val)


def _power(m, z, p, td):
    if p["n"] > 0:
        return series.power_series(m, z, tol=0.0, n_cap=p["n"])
    return series.power_series(m, z, tol=p["tol"], n_cap=p["n_cap"])


def _combined(m, z, p, td):
    a = m + 0.5
    if oracle.series_branch(z, a, td) is oracle.SeriesBranch.LAURENT:
        r = series.laurent(m, z)
        return SeriesResult(r.value, r.terms_used, r.error_estimate,
                            r.flags + ("laurent",), r.exp_evals, r.xvalue)
    r = series.power_series(m, z, tol=10.0 ** (-td - 1), n_cap=600)
    return SeriesResult(r.value, r.terms_used, r.error_estimate,
                        r.flags + ("power",), r.exp_evals, r.xvalue)


def _laurent_cf(m, z, p, td):
    n = p["N"] if p["N"] > 0 else None
    if n is not None:
        n = min(n, int(math.floor(abs(z) + m + 0.5)))
        if n < 1:
            n = None
    return series.laurent_cf(m, z, n)


def _index_interp(m, z, p, td):
    return indexinterp.interp_series(m, z, p["N"])


def _index_constrained(m, z, p, td):
    # one recurrence row between m - 1 and m, replacing the top sample
    N = p["N"]
    return indexinterp.interp_constrained_series(m, z, N, ((m - 1, m),), (N,))


@lru_cache(maxsize=8)
def _grid(path: str, stride: int) -> gridtaylor.TaylorGrid:
    if path:
        return gridtaylor.load_grid(path)
    if stride not in (1, 3):
        raise UsageError("built-in grids have stride 3 or 1")
    spec = gridtaylor.DEFAULT_GRID if stride == 3 else gridtaylor.DENSE_GRID
    return gridtaylor.build_grid(spec)


def _gridtaylor(m, z, p, td):
    return gridtaylor.grid_eval(m, z, td, _grid(p["grid_file"], p["stride"]))


def _faddeeva(m, z, p, td):
    return specfun.f0_via_faddeeva(z, n=p["n"])


def _build() -> dict:
    M = Method
    any_m = lambda m: _is_int(m)  # noqa: E731
    entries = [
        M("oracle", _oracle, {}, lambda m: m >= 0 and 2 * m == int(2 * m), "exact",
          "extended-precision reference"),
        M("power_series", _power, {"n": 0, "tol": 1e-16, "n_cap": 600}, any_m, "exact",
          "Kummer power series; n > 0 sums exactly n terms"),
        M("combined", _combined, {}, any_m, "exact",
          "power series or Laurent series, whichever reaches target_d"),
        M("laurent", lambda m, z, p, td: series.laurent(m, z), {}, any_m, "limit",
          "asymptotic Laurent series truncated at its smallest term"),
        M("laurent_cf", _laurent_cf, {"N": 0}, any_m, "limit",
          "Laurent series with continued-fraction converging factor"),
        M("square_series", lambda m, z, p, td: series.square_series(m, z, p["n_cap"]),
          {"n_cap": 40}, any_m, "exact", "series with squared-binomial coefficients"),
        M("split_exp_series", lambda m, z, p, td: series.split_exp_series(m, z, p["n_cap"]),
          {"n_cap": 40}, any_m, "exact", "series with the exponential split off"),
        M("half_arg_series", lambda m, z, p, td: series.half_arg_series(m, z, p["n_cap"]),
          {"n_cap": 60}, lambda m: _is_int(m) and m <= 16, "exact",
          "series in the half argument z/2"),
        M("index_interp", _index_interp, {"N": 6}, lambda m: _is_int(m) and m >= 1, "limit",
          "interpolation across half-integer indexes"),
        M("index_interp_constrained", _index_constrained, {"N": 6},
          lambda m: _is_int(m) and m >= 1, "limit",
          "interpolation with one index-recurrence row"),
        M("hermite_local_taylor",
          lambda m, z, p, td: quadmethods.hermite_local_taylor(z, p["N"], p["n_max"]),
          {"N": 20, "n_max": 6}, lambda m: m == 0, "limit",
          "subinterval Taylor expansion with Hermite polynomials (m = 0)"),
        M("algebraic_taylor",
          lambda m, z, p, td: quadmethods.algebraic_taylor(m, z, p["N"]),
          {"N": 20}, any_m, "limit", "subinterval Taylor expansion of u^(m-1/2)"),
        M("algebraic_taylor_patched",
          lambda m, z, p, td: quadmethods.algebraic_taylor_patched(m, z, p["N"], p["n_patch"]),
          {"N": 40, "n_patch": 3}, any_m, "limit",
          "algebraic Taylor with exact series on the first subintervals"),
        M("fourier",
          lambda m, z, p, td: quadmethods.fourier_eval(m, z, quadmethods.fourier_table(m, p["N"])),
          {"N": 512}, any_m, "exact", "Fourier expansion of the carrier function"),
        M("gauss_jacobi",
          lambda m, z, p, td: quadmethods.gauss_jacobi_eval(m, z, n=p["n"]),
          {"n": 20}, lambda m: _is_int(m) and m <= 8, "limit",
          "Gauss-Jacobi quadrature with weight x^(2m)"),
        M("spline", lambda m, z, p, td: quadmethods.spline_eval(m, z, p["N"]),
          {"N": 10}, lambda m: m in (0, 1), "exact", "cubic spline closed forms (m = 0, 1)"),
        M("gridtaylor", _gridtaylor, {"grid_file": "", "stride": 3}, lambda m: _is_int(m) and m <= 29,
          "exact", "Taylor expansion about the nearest stored grid node"),
        M("salzer", lambda m, z, p, td: salzer.salzer_fm(m, z), {}, any_m, "exact",
          "Salzer inverse-Laplace rule, 16 points"),
        M("faddeeva", _faddeeva, {"n": 32}, lambda m: m == 0, "limit",
          "F_0 through the rational Faddeeva approximation (m = 0)"),
        M("bessel", lambda m, z, p, td: specfun.bessel_series(m, z, p["n_max"]),
          {"n_max": 7}, any_m, "limit", "modified spherical Bessel expansion"),
        M("dijkstra", lambda m, z, p, td: specfun.f_via_dijkstra(m, z, p["N"]),
          {"N": 32}, any_m, "exact", "continued fraction for 1F1"),
        M("dijkstra_pos", lambda m, z, p, td: specfun.f_via_dijkstra_pos(m, z, p["N"]),
          {"N": 32}, any_m, "exact", "continued fraction for 1F1 at the reflected argument"),
    ]
    return {e.id: e for e in entries}


METHODS = _build()


def get(method_id: str) -> Method:
    try:
        return METHODS[method_id]
    except KeyError:
        raise UsageError("unknown method %r (known: %s)"
                         % (method_id, ", ".join(sorted(METHODS)))) from None


def evaluate(method_id: str, m, z, params=None, target_d: float | None = None) -> SeriesResult:
    return get(method_id).evaluate(m, z, params, target_d)
