"""Double-double arithmetic, pure-Python implementation.

A number is kept as an unevaluated sum ``hi + lo`` of two binary64 values
with ``|lo| <= ulp(hi)/2``, which carries about 32 significant digits.
The compiled module ``_ddcore`` mirrors this file operation by operation,
so both produce bit-identical results; tests enforce that.

The series kernels at the bottom are the inner loops of the reference
evaluator.  They take a complex double-double argument as four floats
``(rh, rl, ih, il)`` and return plain tuples.
"""

import math

BACKEND = "python"

_SPLITTER = 134217729.0  # 2**27 + 1
_LN2_HI = 0.6931471805599453
_LN2_LO = 2.3190468138462996e-17
_PIO2_1 = 1.5707963267948966
_PIO2_2 = 6.123233995736766e-17
_PIO2_3 = -1.4973849048591698e-33


# --------------------------------------------------------------------------
# error-free transformations

def _mag(x, y):
    # not math.hypot: the compiled twin must see the same rounding
    return math.sqrt(x * x + y * y)


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    t = _SPLITTER * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLITTER * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


# --------------------------------------------------------------------------
# real double-double

def dd_add(ah, al, bh, bl):
    s1 = ah + bh
    bb = s1 - ah
    s2 = (ah - (s1 - bb)) + (bh - bb)
    t1 = al + bl
    bb = t1 - al
    t2 = (al - (t1 - bb)) + (bl - bb)
    s2 += t1
    h = s1 + s2
    s2 = s2 - (h - s1)
    s2 += t2
    s1 = h + s2
    return s1, s2 - (s1 - h)


def dd_sub(ah, al, bh, bl):
    return dd_add(ah, al, -bh, -bl)


def dd_mul(ah, al, bh, bl):
    p1, p2 = two_prod(ah, bh)
    p2 += ah * bl + al * bh
    h = p1 + p2
    return h, p2 - (h - p1)


def dd_mul_d(ah, al, b):
    p1, p2 = two_prod(ah, b)
    p2 += al * b
    h = p1 + p2
    return h, p2 - (h - p1)


def dd_div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = dd_mul_d(bh, bl, q1)
    rh, rl = dd_add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = dd_mul_d(bh, bl, q2)
    rh, rl = dd_add(rh, rl, -ph, -pl)
    q3 = rh / bh
    h = q1 + q2
    q2 = q2 - (h - q1)
    return dd_add(h, q2, q3, 0.0)


def dd_div_d(ah, al, b):
    q1 = ah / b
    p1, p2 = two_prod(q1, b)
    s, e = two_sum(ah, -p1)
    e -= p2
    e += al
    q2 = (s + e) / b
    h = q1 + q2
    return h, q2 - (h - q1)


def dd_sqrt(ah, al):
    if ah <= 0.0:
        if ah == 0.0:
            return 0.0, 0.0
        return math.nan, math.nan
    x = 1.0 / math.sqrt(ah)
    ax = ah * x
    sh, sl = two_prod(ax, ax)
    dh, dl = dd_add(ah, al, -sh, -sl)
    return two_sum(ax, dh * (x * 0.5))


def dd_exp(ah, al):
    if ah > 709.78:
        return math.inf, 0.0
    if ah < -745.0:
        return 0.0, 0.0
    m = math.floor(ah / _LN2_HI + 0.5)
    ph, pl = dd_mul_d(_LN2_HI, _LN2_LO, m)
    rh, rl = dd_add(ah, al, -ph, -pl)
    rh *= 0.001953125
    rl *= 0.001953125
    sh, sl = rh, rl
    th, tl = rh, rl
    for i in range(2, 11):
        th, tl = dd_mul(th, tl, rh, rl)
        th, tl = dd_div_d(th, tl, float(i))
        sh, sl = dd_add(sh, sl, th, tl)
    for _ in range(9):
        qh, ql = dd_mul(sh, sl, sh, sl)
        sh, sl = dd_add(2.0 * sh, 2.0 * sl, qh, ql)
    sh, sl = dd_add(sh, sl, 1.0, 0.0)
    k = int(m)
    return math.ldexp(sh, k), math.ldexp(sl, k)


def dd_sincos(ah, al):
    """Return (sin_hi, sin_lo, cos_hi, cos_lo); accurate for |a| < 1e5."""
    j = math.floor(ah / _PIO2_1 + 0.5)
    ph, pl = two_prod(j, _PIO2_1)
    rh, rl = dd_add(ah, al, -ph, -pl)
    ph, pl = two_prod(j, _PIO2_2)
    rh, rl = dd_add(rh, rl, -ph, -pl)
    rh, rl = dd_add(rh, rl, -(j * _PIO2_3), 0.0)
    r2h, r2l = dd_mul(rh, rl, rh, rl)
    sh, sl = 1.0, 0.0
    ch, cl = 1.0, 0.0
    for k in range(15, 0, -1):
        th, tl = dd_mul(sh, sl, r2h, r2l)
        th, tl = dd_div_d(th, tl, float((2 * k) * (2 * k + 1)))
        sh, sl = dd_add(1.0, 0.0, -th, -tl)
        th, tl = dd_mul(ch, cl, r2h, r2l)
        th, tl = dd_div_d(th, tl, float((2 * k - 1) * (2 * k)))
        ch, cl = dd_add(1.0, 0.0, -th, -tl)
    sh, sl = dd_mul(sh, sl, rh, rl)
    q = int(j) % 4
    if q == 0:
        return sh, sl, ch, cl
    if q == 1:
        return ch, cl, -sh, -sl
    if q == 2:
        return -sh, -sl, -ch, -cl
    return -ch, -cl, sh, sl


# --------------------------------------------------------------------------
# complex double-double, as 4-tuples (rh, rl, ih, il)

def cdd_mul(ar, arl, ai, ail, br, brl, bi, bil):
    xh, xl = dd_mul(ar, arl, br, brl)
    yh, yl = dd_mul(ai, ail, bi, bil)
    rh, rl = dd_add(xh, xl, -yh, -yl)
    xh, xl = dd_mul(ar, arl, bi, bil)
    yh, yl = dd_mul(ai, ail, br, brl)
    ih, il = dd_add(xh, xl, yh, yl)
    return rh, rl, ih, il


def cdd_div(ar, arl, ai, ail, br, brl, bi, bil):
    if abs(bi) <= abs(br):
        if br == 0.0:
            raise ZeroDivisionError("complex division by zero")
        qh, ql = dd_div(bi, bil, br, brl)
        th, tl = dd_mul(bi, bil, qh, ql)
        dh, dl = dd_add(br, brl, th, tl)
        th, tl = dd_mul(ai, ail, qh, ql)
        nh, nl = dd_add(ar, arl, th, tl)
        rh, rl = dd_div(nh, nl, dh, dl)
        th, tl = dd_mul(ar, arl, qh, ql)
        nh, nl = dd_add(ai, ail, -th, -tl)
        ih, il = dd_div(nh, nl, dh, dl)
    else:
        qh, ql = dd_div(br, brl, bi, bil)
        th, tl = dd_mul(br, brl, qh, ql)
        dh, dl = dd_add(th, tl, bi, bil)
        th, tl = dd_mul(ar, arl, qh, ql)
        nh, nl = dd_add(th, tl, ai, ail)
        rh, rl = dd_div(nh, nl, dh, dl)
        th, tl = dd_mul(ai, ail, qh, ql)
        nh, nl = dd_add(th, tl, -ar, -arl)
        ih, il = dd_div(nh, nl, dh, dl)
    return rh, rl, ih, il


def cdd_abs(ar, arl, ai, ail):
    xh, xl = dd_mul(ar, arl, ar, arl)
    yh, yl = dd_mul(ai, ail, ai, ail)
    sh, sl = dd_add(xh, xl, yh, yl)
    return dd_sqrt(sh, sl)


def cdd_sqrt(ar, arl, ai, ail):
    """Principal square root; the sign of a zero imaginary part picks the side."""
    if ar == 0.0 and ai == 0.0:
        return 0.0, 0.0, ai, 0.0
    mh, ml = cdd_abs(ar, arl, ai, ail)
    if ar >= 0.0:
        sh, sl = dd_add(mh, ml, ar, arl)
    else:
        sh, sl = dd_add(mh, ml, -ar, -arl)
    th, tl = dd_sqrt(0.5 * sh, 0.5 * sl)
    qh, ql = dd_div(ai, ail, 2.0 * th, 2.0 * tl)
    if ar >= 0.0:
        return th, tl, qh, ql
    if math.copysign(1.0, ai) < 0.0:
        return abs(qh), (ql if qh >= 0.0 else -ql), -th, -tl
    return abs(qh), (ql if qh >= 0.0 else -ql), th, tl


def cdd_exp(ar, arl, ai, ail):
    eh, el = dd_exp(ar, arl)
    if ai == 0.0 and ail == 0.0:
        return eh, el, 0.0 * ai, 0.0
    sh, sl, ch, cl = dd_sincos(ai, ail)
    rh, rl = dd_mul(eh, el, ch, cl)
    ih, il = dd_mul(eh, el, sh, sl)
    return rh, rl, ih, il


# --------------------------------------------------------------------------
# value classes

def _real_parts(x):
    """(hi, lo) for an int, float or XReal; None for anything else."""
    if isinstance(x, XReal):
        return x.hi, x.lo
    if isinstance(x, float):
        return x, 0.0
    if isinstance(x, int):
        hi = float(x)
        if -9007199254740992 <= x <= 9007199254740992:
            return hi, 0.0
        return hi, float(x - int(hi))
    return None


def _complex_parts(x):
    if isinstance(x, XComplex):
        return x.rh, x.rl, x.ih, x.il
    if isinstance(x, complex):
        return x.real, 0.0, x.imag, 0.0
    p = _real_parts(x)
    if p is None:
        return None
    return p[0], p[1], 0.0, 0.0


class XReal:
    """Real double-double number."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi=0.0, lo=0.0):
        p = _real_parts(hi)
        if p is None:
            raise TypeError("cannot build XReal from %r" % (hi,))
        h, l = p
        if lo != 0.0:
            h, l = dd_add(h, l, float(lo), 0.0)
        self.hi = h
        self.lo = l

    @staticmethod
    def _make(h, l):
        r = XReal.__new__(XReal)
        r.hi = h
        r.lo = l
        return r

    def __add__(self, other):
        p = _real_parts(other)
        if p is None:
            return NotImplemented
        return XReal._make(*dd_add(self.hi, self.lo, p[0], p[1]))

    __radd__ = __add__

    def __sub__(self, other):
        p = _real_parts(other)
        if p is None:
            return NotImplemented
        return XReal._make(*dd_add(self.hi, self.lo, -p[0], -p[1]))

    def __rsub__(self, other):
        p = _real_parts(other)
        if p is None:
            return NotImplemented
        return XReal._make(*dd_add(p[0], p[1], -self.hi, -self.lo))

    def __mul__(self, other):
        p = _real_parts(other)
        if p is None:
            return NotImplemented
        return XReal._make(*dd_mul(self.hi, self.lo, p[0], p[1]))

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = _real_parts(other)
        if p is None:
            return NotImplemented
        if p[0] == 0.0:
            raise ZeroDivisionError("XReal division by zero")
        return XReal._make(*dd_div(self.hi, self.lo, p[0], p[1]))

    def __rtruediv__(self, other):
        p = _real_parts(other)
        if p is None:
            return NotImplemented
        if self.hi == 0.0:
            raise ZeroDivisionError("XReal division by zero")
        return XReal._make(*dd_div(p[0], p[1], self.hi, self.lo))

    def __neg__(self):
        return XReal._make(-self.hi, -self.lo)

    def __pos__(self):
        return self

    def __abs__(self):
        if self.hi < 0.0:
            return XReal._make(-self.hi, -self.lo)
        return self

    def _cmp(self, other):
        p = _real_parts(other)
        if p is None:
            return None
        if self.hi != p[0]:
            return -1 if self.hi < p[0] else 1
        if self.lo != p[1]:
            return -1 if self.lo < p[1] else 1
        return 0

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __ne__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c != 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __hash__(self):
        if self.lo == 0.0:
            return hash(self.hi)
        return hash((self.hi, self.lo))

    def __float__(self):
        return self.hi + self.lo

    def __bool__(self):
        return self.hi != 0.0

    def __repr__(self):
        return "XReal(%r, %r)" % (self.hi, self.lo)

    def __reduce__(self):
        return (XReal, (self.hi, self.lo))

    def sqrt(self):
        return XReal._make(*dd_sqrt(self.hi, self.lo))

    def exp(self):
        return XReal._make(*dd_exp(self.hi, self.lo))

    def sincos(self):
        sh, sl, ch, cl = dd_sincos(self.hi, self.lo)
        return XReal._make(sh, sl), XReal._make(ch, cl)


class XComplex:
    """Complex double-double number with components (rh + rl) + i(ih + il)."""

    __slots__ = ("rh", "rl", "ih", "il")

    def __init__(self, re=0.0, im=0.0):
        if isinstance(re, complex) and im == 0.0:
            self.rh, self.rl, self.ih, self.il = re.real, 0.0, re.imag, 0.0
            return
        if isinstance(re, XComplex) and im == 0.0:
            self.rh, self.rl, self.ih, self.il = re.rh, re.rl, re.ih, re.il
            return
        p = _real_parts(re)
        q = _real_parts(im)
        if p is None or q is None:
            raise TypeError("cannot build XComplex from %r, %r" % (re, im))
        self.rh, self.rl = p
        self.ih, self.il = q

    @staticmethod
    def from_parts(rh, rl, ih, il):
        c = XComplex.__new__(XComplex)
        c.rh = rh
        c.rl = rl
        c.ih = ih
        c.il = il
        return c

    @property
    def real(self):
        return XReal._make(self.rh, self.rl)

    @property
    def imag(self):
        return XReal._make(self.ih, self.il)

    def parts(self):
        return self.rh, self.rl, self.ih, self.il

    def __add__(self, other):
        p = _complex_parts(other)
        if p is None:
            return NotImplemented
        rh, rl = dd_add(self.rh, self.rl, p[0], p[1])
        ih, il = dd_add(self.ih, self.il, p[2], p[3])
        return XComplex.from_parts(rh, rl, ih, il)

    __radd__ = __add__

    def __sub__(self, other):
        p = _complex_parts(other)
        if p is None:
            return NotImplemented
        rh, rl = dd_add(self.rh, self.rl, -p[0], -p[1])
        ih, il = dd_add(self.ih, self.il, -p[2], -p[3])
        return XComplex.from_parts(rh, rl, ih, il)

    def __rsub__(self, other):
        p = _complex_parts(other)
        if p is None:
            return NotImplemented
        rh, rl = dd_add(p[0], p[1], -self.rh, -self.rl)
        ih, il = dd_add(p[2], p[3], -self.ih, -self.il)
        return XComplex.from_parts(rh, rl, ih, il)

    def __mul__(self, other):
        p = _real_parts(other)
        if p is not None:
            rh, rl = dd_mul(self.rh, self.rl, p[0], p[1])
            ih, il = dd_mul(self.ih, self.il, p[0], p[1])
            return XComplex.from_parts(rh, rl, ih, il)
        p = _complex_parts(other)
        if p is None:
            return NotImplemented
        return XComplex.from_parts(*cdd_mul(self.rh, self.rl, self.ih, self.il,
                                            p[0], p[1], p[2], p[3]))

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = _real_parts(other)
        if p is not None:
            if p[0] == 0.0:
                raise ZeroDivisionError("complex division by zero")
            rh, rl = dd_div(self.rh, self.rl, p[0], p[1])
            ih, il = dd_div(self.ih, self.il, p[0], p[1])
            return XComplex.from_parts(rh, rl, ih, il)
        p = _complex_parts(other)
        if p is None:
            return NotImplemented
        return XComplex.from_parts(*cdd_div(self.rh, self.rl, self.ih, self.il,
                                            p[0], p[1], p[2], p[3]))

    def __rtruediv__(self, other):
        p = _complex_parts(other)
        if p is None:
            return NotImplemented
        return XComplex.from_parts(*cdd_div(p[0], p[1], p[2], p[3],
                                            self.rh, self.rl, self.ih, self.il))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1.0 / self.__pow__(-n)
        result = (1.0, 0.0, 0.0, 0.0)
        base = (self.rh, self.rl, self.ih, self.il)
        while n:
            if n & 1:
                result = cdd_mul(*result, *base)
            n >>= 1
            if n:
                base = cdd_mul(*base, *base)
        return XComplex.from_parts(*result)

    def __neg__(self):
        return XComplex.from_parts(-self.rh, -self.rl, -self.ih, -self.il)

    def __pos__(self):
        return self

    def __abs__(self):
        return XReal._make(*cdd_abs(self.rh, self.rl, self.ih, self.il))

    def conjugate(self):
        return XComplex.from_parts(self.rh, self.rl, -self.ih, -self.il)

    def __eq__(self, other):
        p = _complex_parts(other)
        if p is None:
            return NotImplemented
        return (self.rh == p[0] and self.rl == p[1]
                and self.ih == p[2] and self.il == p[3])

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self.rl == 0.0 and self.il == 0.0:
            return hash(complex(self.rh, self.ih))
        return hash((self.rh, self.rl, self.ih, self.il))

    def __complex__(self):
        return complex(self.rh + self.rl, self.ih + self.il)

    def __bool__(self):
        return self.rh != 0.0 or self.ih != 0.0

    def __repr__(self):
        return "XComplex.from_parts(%r, %r, %r, %r)" % (self.rh, self.rl, self.ih, self.il)

    def __reduce__(self):
        return (XComplex.from_parts, (self.rh, self.rl, self.ih, self.il))

    def sqrt(self):
        return XComplex.from_parts(*cdd_sqrt(self.rh, self.rl, self.ih, self.il))

    def exp(self):
        return XComplex.from_parts(*cdd_exp(self.rh, self.rl, self.ih, self.il))

    def approx_abs(self):
        """|z| in binary64 from the leading parts (cheap magnitude tests)."""
        return _mag(self.rh, self.ih)


# --------------------------------------------------------------------------
# series kernels

def power_sum(m, zr, zrl, zi, zil, tol, n_cap):
    """Sum_{n>=0} (-z)^n / (n! (2m+2n+1)) until a term drops below tol*|sum|.

    Returns (rh, rl, ih, il, terms, abs_sum, next_abs), where abs_sum adds up
    the term magnitudes (rounding bound) and next_abs is the size of the first
    term left out.
    """
    wr, wrl, wi, wil = -zr, -zrl, -zi, -zil
    tr, trl, ti, til = 1.0, 0.0, 0.0, 0.0
    sr, srl, si, sil = 0.0, 0.0, 0.0, 0.0
    abs_sum = 0.0
    n = 0
    while True:
        den = 2.0 * m + 2.0 * n + 1.0
        ar, arl = dd_div_d(tr, trl, den)
        ai, ail = dd_div_d(ti, til, den)
        sr, srl = dd_add(sr, srl, ar, arl)
        si, sil = dd_add(si, sil, ai, ail)
        a = _mag(ar, ai)
        abs_sum += a
        tr, trl, ti, til = cdd_mul(tr, trl, ti, til, wr, wrl, wi, wil)
        tr, trl = dd_div_d(tr, trl, float(n + 1))
        ti, til = dd_div_d(ti, til, float(n + 1))
        n += 1
        if n >= n_cap or (a <= tol * _mag(sr, si) and n > 1):
            break
    next_abs = _mag(tr, ti) / (2.0 * m + 2.0 * n + 1.0)
    return sr, srl, si, sil, n, abs_sum, next_abs


def laurent_sum(m, zr, zrl, zi, zil, n_last):
    """Sum_{n=0}^{n_last} (1-a)_n (-z)^(-n), a = m + 1/2.

    Returns (rh, rl, ih, il, abs_sum, next_abs).
    """
    a = m + 0.5
    wr, wrl, wi, wil = cdd_div(-1.0, 0.0, 0.0, 0.0, zr, zrl, zi, zil)
    tr, trl, ti, til = 1.0, 0.0, 0.0, 0.0
    sr, srl, si, sil = 1.0, 0.0, 0.0, 0.0
    abs_sum = 1.0
    for n in range(1, n_last + 1):
        tr, trl, ti, til = cdd_mul(tr, trl, ti, til, wr, wrl, wi, wil)
        c = n - a
        tr, trl = dd_mul_d(tr, trl, c)
        ti, til = dd_mul_d(ti, til, c)
        sr, srl = dd_add(sr, srl, tr, trl)
        si, sil = dd_add(si, sil, ti, til)
        abs_sum += _mag(tr, ti)
    tr, trl, ti, til = cdd_mul(tr, trl, ti, til, wr, wrl, wi, wil)
    next_abs = _mag(tr, ti) * abs(n_last + 1 - a)
    return sr, srl, si, sil, abs_sum, next_abs


def halfarg_sum(table_hi, table_lo, zr, zrl, zi, zil, tol):
    """Sum_n (z/2)^n / n! * I_n with I_n from the given table.

    Terms stop once |(z/2)^n/n!| * 4 <= tol*|sum| (|I_n| <= 4 always).
    Returns (rh, rl, ih, il, terms, abs_sum, next_bound, exhausted).
    """
    hr, hrl, hi_, hil = 0.5 * zr, 0.5 * zrl, 0.5 * zi, 0.5 * zil
    tr, trl, ti, til = 1.0, 0.0, 0.0, 0.0
    sr, srl, si, sil = 0.0, 0.0, 0.0, 0.0
    abs_sum = 0.0
    n_max = len(table_hi)
    n = 0
    exhausted = True
    while n < n_max:
        ch = table_hi[n]
        cl = table_lo[n]
        ar, arl = dd_mul(tr, trl, ch, cl)
        ai, ail = dd_mul(ti, til, ch, cl)
        sr, srl = dd_add(sr, srl, ar, arl)
        si, sil = dd_add(si, sil, ai, ail)
        abs_sum += _mag(ar, ai)
        bound = 4.0 * _mag(tr, ti)
        tr, trl, ti, til = cdd_mul(tr, trl, ti, til, hr, hrl, hi_, hil)
        tr, trl = dd_div_d(tr, trl, float(n + 1))
        ti, til = dd_div_d(ti, til, float(n + 1))
        n += 1
        if bound <= tol * _mag(sr, si) and n > 1:
            exhausted = False
            break
    next_bound = 4.0 * _mag(tr, ti)
    return sr, srl, si, sil, n, abs_sum, next_bound, exhausted


def power_terms_needed(m, zr, zrl, zi, zil, fr, frl, fi, fil, rel_tol, n_max):
    """Fewest leading terms of the power series whose partial sums stay within
    rel_tol of the reference (fr, frl, fi, fil) from then on.

    Returns -1 when n_max terms do not settle.
    """
    wr, wrl, wi, wil = -zr, -zrl, -zi, -zil
    tr, trl, ti, til = 1.0, 0.0, 0.0, 0.0
    sr, srl, si, sil = 0.0, 0.0, 0.0, 0.0
    limit = rel_tol * _mag(fr, fi)
    zabs = _mag(zr, zi)
    last_fail = -1
    n = 0
    while n < n_max:
        den = 2.0 * m + 2.0 * n + 1.0
        ar, arl = dd_div_d(tr, trl, den)
        ai, ail = dd_div_d(ti, til, den)
        sr, srl = dd_add(sr, srl, ar, arl)
        si, sil = dd_add(si, sil, ai, ail)
        er, erl = dd_add(sr, srl, -fr, -frl)
        ei, eil = dd_add(si, sil, -fi, -fil)
        if _mag(er, ei) > limit:
            last_fail = n
        elif n > zabs and _mag(ar, ai) < 1e-3 * limit:
            return last_fail + 2
        tr, trl, ti, til = cdd_mul(tr, trl, ti, til, wr, wrl, wi, wil)
        tr, trl = dd_div_d(tr, trl, float(n + 1))
        ti, til = dd_div_d(ti, til, float(n + 1))
        n += 1
    return -1
