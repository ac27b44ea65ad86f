"""Result record shared by every evaluator, plus small error-bound helpers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import xprec


@dataclass(frozen=True)
class SeriesResult:
    """One evaluation of F_m(z).

    ``error_estimate`` is relative; ``exp_evals`` counts complex exponentials
    (the cost proxy used by the comparison report).  Extended-precision runs
    also keep the unrounded value in ``xvalue``.
    """

    value: complex
    terms_used: int
    error_estimate: float
    flags: tuple = ()
    exp_evals: int = 0
    xvalue: object = field(default=None, compare=False)

    def best(self):
        """The most precise form of the value (for digit counting)."""
        return self.xvalue if self.xvalue is not None else self.value


def make_result(value, terms, trunc_abs, round_abs, ar, flags=(), exp_evals=0):
    """Build a SeriesResult from absolute truncation and rounding-sum bounds.

    ``round_abs`` is the magnitude sum the rounding errors scale with; the
    estimate adds 4 eps times it, relative to |value|.
    """
    mag = xprec.xabs(value)
    if ar is xprec.DOUBLE:
        v = complex(value)
        xv = None
    else:
        xv = value
        v = xprec.to_double(value)
    if mag == 0.0 or not math.isfinite(mag):
        est = math.inf
    else:
        est = (trunc_abs + 4.0 * ar.eps * round_abs) / mag
    if not math.isfinite(est):
        est = math.inf
    return SeriesResult(v, max(int(terms), 1), est, tuple(flags), exp_evals, xv)


def origin_result(m, flags=()) -> SeriesResult:
    """F_m(0) = 1/(2m+1) in binary64; the estimate covers its one rounding."""
    return SeriesResult(complex(1.0 / (2 * m + 1)), 1, 0.0 if m == 0 else 2.0 ** -53,
                        tuple(flags), 0)


def exp_tail(r: float, n: int, partial: float) -> float:
    """Bound on sum_{k>=n} r^k/k! given partial = sum_{k<n} r^k/k!."""
    if n + 1 > 2.0 * r:
        # ratios r/(k+1) <= 1/2 from here on
        return 2.0 * math.exp(n * math.log(r) - math.lgamma(n + 1.0)) if r > 0 else 0.0
    if r > 700.0:
        return math.inf
    return max(math.exp(r) - partial, 0.0)


def abs_exp(z) -> float:
    """|e^{-z}| without forming the exponential."""
    re = z.real if not isinstance(z, xprec.XComplex) else z.rh
    if -re > 709.0:
        return math.inf
    return math.exp(-re)
