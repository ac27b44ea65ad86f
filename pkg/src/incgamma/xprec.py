"""Extended-precision (double-double) real and complex arithmetic.

The arithmetic lives in ``_ddcore``, a compiled extension, with the
pure-Python twin ``_ddcore_py`` taking over when the extension is not
available or when ``INCGAMMA_PURE=1`` is set in the environment.  Both give
bit-identical results.

Besides the value classes this module offers small helpers used throughout
the package: conversions, exact rational/decimal conversion, the constants
pi and sqrt(pi), and :class:`Arith`, a tiny namespace that lets one formula
run either in binary64 (Python ``complex``) or in double-double.
"""

from __future__ import annotations

import cmath
import math
import os
from decimal import Decimal, localcontext
from fractions import Fraction

from .errors import DomainError

if os.environ.get("INCGAMMA_PURE"):
    from . import _ddcore_py as core
else:
    try:
        from . import _ddcore as core
    except ImportError:  # extension not built
        from . import _ddcore_py as core

BACKEND = core.BACKEND
XReal = core.XReal
XComplex = core.XComplex

PI = XReal(3.141592653589793, 1.2246467991473532e-16)
SQRT_PI = XReal(1.772453850905516, -7.666586499825799e-17)
LN10 = math.log(10.0)


# --------------------------------------------------------------------------
# conversions

def from_double(c) -> XComplex:
    """Exact embedding of a binary64 real or complex (lo parts zero)."""
    if isinstance(c, XComplex):
        return c
    c = complex(c)
    return XComplex.from_parts(c.real, 0.0, c.imag, 0.0)


def to_double(x) -> complex:
    """Nearest binary64 complex, componentwise."""
    if isinstance(x, XComplex):
        return complex(x.rh + x.rl, x.ih + x.il)
    if isinstance(x, XReal):
        return complex(x.hi + x.lo, 0.0)
    return complex(x)


def to_xcomplex(x) -> XComplex:
    if isinstance(x, XComplex):
        return x
    if isinstance(x, XReal):
        return XComplex(x, 0.0)
    if isinstance(x, Fraction):
        return XComplex(from_fraction(x), 0.0)
    return from_double(x)


def from_fraction(q: Fraction) -> XReal:
    """Double-double nearest (to ~1e-32 relative) to an exact rational."""
    q = Fraction(q)
    hi = float(q)
    if hi == 0.0 or not math.isfinite(hi):
        return XReal(hi)
    lo = float(q - Fraction(hi))
    return XReal(hi, lo)


def from_decimal_string(s: str) -> XReal:
    """Parse a decimal literal into a double-double without binary64 detours."""
    d = Decimal(s.strip())
    hi = float(d)
    if hi == 0.0 or not math.isfinite(hi):
        return XReal(hi)
    with localcontext() as ctx:
        ctx.prec = 80
        lo = float(d - Decimal(hi))
    return XReal(hi, lo)


def to_decimal_string(x, digits: int) -> str:
    """Round a double-double to ``digits`` significant digits, scientific form."""
    if isinstance(x, XReal):
        hi, lo = x.hi, x.lo
    else:
        hi, lo = float(x), 0.0
    with localcontext() as ctx:
        ctx.prec = 80
        exact = Decimal(hi) + Decimal(lo)
    return "{:.{p}e}".format(exact, p=digits - 1)


def to_fraction(x) -> Fraction:
    if isinstance(x, XReal):
        return Fraction(x.hi) + Fraction(x.lo)
    return Fraction(x)


# --------------------------------------------------------------------------
# the named operations

def x_arith(kind: str, a, b) -> XComplex:
    """One of add/sub/mul/div on double-double complex operands."""
    a = to_xcomplex(a)
    b = to_xcomplex(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        if not b:
            raise DomainError("division by exact zero")
        return a / b
    raise ValueError("unknown arithmetic kind %r" % (kind,))


def x_exp(z) -> XComplex:
    """exp(z) to ~1e-30 relative for |Re z| <= 700."""
    z = to_xcomplex(z)
    if abs(z.rh) > 700.0:
        raise DomainError("exp argument out of range: Re z = %g" % z.rh)
    if abs(z.ih) > 1e5:
        raise DomainError("exp argument out of range: Im z = %g" % z.ih)
    return z.exp()


def x_sqrt(z) -> XComplex:
    """Principal square root (Re >= 0; the cut follows the sign of Im z)."""
    return to_xcomplex(z).sqrt()


def xabs(z) -> float:
    """|z| as a binary64, from a complex or a double-double value."""
    if isinstance(z, XComplex):
        return float(abs(z))
    if isinstance(z, XReal):
        return abs(float(z))
    return abs(z)


# --------------------------------------------------------------------------
# precision-generic formulas

class Arith:
    """Arithmetic context: binary64 complex or double-double complex.

    Formulas written against ``ar.num``, ``ar.exp``, ``ar.sqrt`` and the
    ordinary operators run unchanged in either precision.
    """

    def __init__(self, name, num, exp, sqrt, pi, sqrt_pi, eps):
        self.name = name
        self.num = num
        self.exp = exp
        self.sqrt = sqrt
        self.pi = pi
        self.sqrt_pi = sqrt_pi
        self.eps = eps

    def __repr__(self):
        return "Arith(%s)" % self.name


def _xnum(x):
    return to_xcomplex(x)


DOUBLE = Arith("double", complex, cmath.exp, cmath.sqrt, math.pi,
               math.sqrt(math.pi), 2.0 ** -53)
EXTENDED = Arith("extended", _xnum, x_exp, x_sqrt, PI, SQRT_PI, 2.0 ** -104)


def arith(prec: str) -> Arith:
    if prec == "double":
        return DOUBLE
    if prec == "extended":
        return EXTENDED
    raise ValueError("precision must be 'double' or 'extended', got %r" % (prec,))


def exact_real(q, ar: Arith):
    """A rational or integer constant in the precision of ``ar``."""
    if ar is DOUBLE:
        return float(q)
    if isinstance(q, int):
        return XReal(q)
    return from_fraction(Fraction(q))
