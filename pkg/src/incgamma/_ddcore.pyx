# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Double-double arithmetic, compiled implementation.

Mirrors ``_ddcore_py`` operation by operation.  Built with floating-point
contraction disabled so that no FMA changes the rounding; the two modules
then agree bit for bit.
"""

from libc.math cimport sqrt, floor, ldexp, fabs, copysign, NAN, INFINITY

BACKEND = "compiled"

cdef double _SPLITTER = 134217729.0
cdef double _LN2_HI = 0.6931471805599453
cdef double _LN2_LO = 2.3190468138462996e-17
cdef double _PIO2_1 = 1.5707963267948966
cdef double _PIO2_2 = 6.123233995736766e-17
cdef double _PIO2_3 = -1.4973849048591698e-33

ctypedef (double, double) dd_t
ctypedef (double, double, double, double) cdd_t


cdef inline double _mag(double x, double y) nogil:
    return sqrt(x * x + y * y)


cdef inline dd_t _two_sum(double a, double b) nogil:
    cdef double s = a + b
    cdef double bb = s - a
    return s, (a - (s - bb)) + (b - bb)


cdef inline dd_t _two_prod(double a, double b) nogil:
    cdef double p = a * b
    cdef double t = _SPLITTER * a
    cdef double ah = t - (t - a)
    cdef double al = a - ah
    t = _SPLITTER * b
    cdef double bh = t - (t - b)
    cdef double bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


cdef inline dd_t _dd_add(double ah, double al, double bh, double bl) nogil:
    cdef double s1 = ah + bh
    cdef double bb = s1 - ah
    cdef double s2 = (ah - (s1 - bb)) + (bh - bb)
    cdef double t1 = al + bl
    bb = t1 - al
    cdef double t2 = (al - (t1 - bb)) + (bl - bb)
    s2 += t1
    cdef double h = s1 + s2
    s2 = s2 - (h - s1)
    s2 += t2
    s1 = h + s2
    return s1, s2 - (s1 - h)


cdef inline dd_t _dd_mul(double ah, double al, double bh, double bl) nogil:
    cdef double p1, p2, h
    p1, p2 = _two_prod(ah, bh)
    p2 += ah * bl + al * bh
    h = p1 + p2
    return h, p2 - (h - p1)


cdef inline dd_t _dd_mul_d(double ah, double al, double b) nogil:
    cdef double p1, p2, h
    p1, p2 = _two_prod(ah, b)
    p2 += al * b
    h = p1 + p2
    return h, p2 - (h - p1)


cdef inline dd_t _dd_div(double ah, double al, double bh, double bl) nogil:
    cdef double q1, q2, q3, ph, pl, rh, rl, h
    q1 = ah / bh
    ph, pl = _dd_mul_d(bh, bl, q1)
    rh, rl = _dd_add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = _dd_mul_d(bh, bl, q2)
    rh, rl = _dd_add(rh, rl, -ph, -pl)
    q3 = rh / bh
    h = q1 + q2
    q2 = q2 - (h - q1)
    return _dd_add(h, q2, q3, 0.0)


cdef inline dd_t _dd_div_d(double ah, double al, double b) nogil:
    cdef double q1, q2, p1, p2, s, e, h
    q1 = ah / b
    p1, p2 = _two_prod(q1, b)
    s, e = _two_sum(ah, -p1)
    e -= p2
    e += al
    q2 = (s + e) / b
    h = q1 + q2
    return h, q2 - (h - q1)


cdef inline dd_t _dd_sqrt(double ah, double al) nogil:
    cdef double x, ax, sh, sl, dh, dl
    if ah <= 0.0:
        if ah == 0.0:
            return 0.0, 0.0
        return NAN, NAN
    x = 1.0 / sqrt(ah)
    ax = ah * x
    sh, sl = _two_prod(ax, ax)
    dh, dl = _dd_add(ah, al, -sh, -sl)
    return _two_sum(ax, dh * (x * 0.5))


cdef dd_t _dd_exp(double ah, double al) nogil:
    cdef double m, ph, pl, rh, rl, sh, sl, th, tl, qh, ql
    cdef int i, k
    if ah > 709.78:
        return INFINITY, 0.0
    if ah < -745.0:
        return 0.0, 0.0
    m = floor(ah / _LN2_HI + 0.5)
    ph, pl = _dd_mul_d(_LN2_HI, _LN2_LO, m)
    rh, rl = _dd_add(ah, al, -ph, -pl)
    rh *= 0.001953125
    rl *= 0.001953125
    sh, sl = rh, rl
    th, tl = rh, rl
    for i in range(2, 11):
        th, tl = _dd_mul(th, tl, rh, rl)
        th, tl = _dd_div_d(th, tl, <double>i)
        sh, sl = _dd_add(sh, sl, th, tl)
    for i in range(9):
        qh, ql = _dd_mul(sh, sl, sh, sl)
        sh, sl = _dd_add(2.0 * sh, 2.0 * sl, qh, ql)
    sh, sl = _dd_add(sh, sl, 1.0, 0.0)
    k = <int>m
    return ldexp(sh, k), ldexp(sl, k)


cdef cdd_t _dd_sincos(double ah, double al) nogil:
    cdef double j, ph, pl, rh, rl, r2h, r2l, sh, sl, ch, cl, th, tl
    cdef int k
    cdef long q
    j = floor(ah / _PIO2_1 + 0.5)
    ph, pl = _two_prod(j, _PIO2_1)
    rh, rl = _dd_add(ah, al, -ph, -pl)
    ph, pl = _two_prod(j, _PIO2_2)
    rh, rl = _dd_add(rh, rl, -ph, -pl)
    rh, rl = _dd_add(rh, rl, -(j * _PIO2_3), 0.0)
    r2h, r2l = _dd_mul(rh, rl, rh, rl)
    sh, sl = 1.0, 0.0
    ch, cl = 1.0, 0.0
    for k in range(15, 0, -1):
        th, tl = _dd_mul(sh, sl, r2h, r2l)
        th, tl = _dd_div_d(th, tl, <double>((2 * k) * (2 * k + 1)))
        sh, sl = _dd_add(1.0, 0.0, -th, -tl)
        th, tl = _dd_mul(ch, cl, r2h, r2l)
        th, tl = _dd_div_d(th, tl, <double>((2 * k - 1) * (2 * k)))
        ch, cl = _dd_add(1.0, 0.0, -th, -tl)
    sh, sl = _dd_mul(sh, sl, rh, rl)
    q = (<long>j) % 4
    if q < 0:
        q += 4
    if q == 0:
        return sh, sl, ch, cl
    if q == 1:
        return ch, cl, -sh, -sl
    if q == 2:
        return -sh, -sl, -ch, -cl
    return -ch, -cl, sh, sl


cdef inline cdd_t _cdd_mul(double ar, double arl, double ai, double ail,
                           double br, double brl, double bi, double bil) nogil:
    cdef double xh, xl, yh, yl, rh, rl, ih, il
    xh, xl = _dd_mul(ar, arl, br, brl)
    yh, yl = _dd_mul(ai, ail, bi, bil)
    rh, rl = _dd_add(xh, xl, -yh, -yl)
    xh, xl = _dd_mul(ar, arl, bi, bil)
    yh, yl = _dd_mul(ai, ail, br, brl)
    ih, il = _dd_add(xh, xl, yh, yl)
    return rh, rl, ih, il


cdef cdd_t _cdd_div(double ar, double arl, double ai, double ail,
                    double br, double brl, double bi, double bil) except * nogil:
    cdef double qh, ql, th, tl, dh, dl, nh, nl, rh, rl, ih, il
    if fabs(bi) <= fabs(br):
        if br == 0.0:
            with gil:
                raise ZeroDivisionError("complex division by zero")
        qh, ql = _dd_div(bi, bil, br, brl)
        th, tl = _dd_mul(bi, bil, qh, ql)
        dh, dl = _dd_add(br, brl, th, tl)
        th, tl = _dd_mul(ai, ail, qh, ql)
        nh, nl = _dd_add(ar, arl, th, tl)
        rh, rl = _dd_div(nh, nl, dh, dl)
        th, tl = _dd_mul(ar, arl, qh, ql)
        nh, nl = _dd_add(ai, ail, -th, -tl)
        ih, il = _dd_div(nh, nl, dh, dl)
    else:
        qh, ql = _dd_div(br, brl, bi, bil)
        th, tl = _dd_mul(br, brl, qh, ql)
        dh, dl = _dd_add(th, tl, bi, bil)
        th, tl = _dd_mul(ar, arl, qh, ql)
        nh, nl = _dd_add(th, tl, ai, ail)
        rh, rl = _dd_div(nh, nl, dh, dl)
        th, tl = _dd_mul(ai, ail, qh, ql)
        nh, nl = _dd_add(th, tl, -ar, -arl)
        ih, il = _dd_div(nh, nl, dh, dl)
    return rh, rl, ih, il


cdef inline dd_t _cdd_abs(double ar, double arl, double ai, double ail) nogil:
    cdef double xh, xl, yh, yl, sh, sl
    xh, xl = _dd_mul(ar, arl, ar, arl)
    yh, yl = _dd_mul(ai, ail, ai, ail)
    sh, sl = _dd_add(xh, xl, yh, yl)
    return _dd_sqrt(sh, sl)


cdef cdd_t _cdd_sqrt(double ar, double arl, double ai, double ail) nogil:
    cdef double mh, ml, sh, sl, th, tl, qh, ql
    if ar == 0.0 and ai == 0.0:
        return 0.0, 0.0, ai, 0.0
    mh, ml = _cdd_abs(ar, arl, ai, ail)
    if ar >= 0.0:
        sh, sl = _dd_add(mh, ml, ar, arl)
    else:
        sh, sl = _dd_add(mh, ml, -ar, -arl)
    th, tl = _dd_sqrt(0.5 * sh, 0.5 * sl)
    qh, ql = _dd_div(ai, ail, 2.0 * th, 2.0 * tl)
    if ar >= 0.0:
        return th, tl, qh, ql
    if copysign(1.0, ai) < 0.0:
        return fabs(qh), (ql if qh >= 0.0 else -ql), -th, -tl
    return fabs(qh), (ql if qh >= 0.0 else -ql), th, tl


cdef cdd_t _cdd_exp(double ar, double arl, double ai, double ail) nogil:
    cdef double eh, el, sh, sl, ch, cl, rh, rl, ih, il
    eh, el = _dd_exp(ar, arl)
    if ai == 0.0 and ail == 0.0:
        return eh, el, 0.0 * ai, 0.0
    sh, sl, ch, cl = _dd_sincos(ai, ail)
    rh, rl = _dd_mul(eh, el, ch, cl)
    ih, il = _dd_mul(eh, el, sh, sl)
    return rh, rl, ih, il


# --------------------------------------------------------------------------
# Python-visible primitives (same signatures as the pure module)

def two_sum(double a, double b):
    return _two_sum(a, b)


def quick_two_sum(double a, double b):
    cdef double s = a + b
    return s, b - (s - a)


def split(double a):
    cdef double t = _SPLITTER * a
    cdef double hi = t - (t - a)
    return hi, a - hi


def two_prod(double a, double b):
    return _two_prod(a, b)


def dd_add(double ah, double al, double bh, double bl):
    return _dd_add(ah, al, bh, bl)


def dd_sub(double ah, double al, double bh, double bl):
    return _dd_add(ah, al, -bh, -bl)


def dd_mul(double ah, double al, double bh, double bl):
    return _dd_mul(ah, al, bh, bl)


def dd_mul_d(double ah, double al, double b):
    return _dd_mul_d(ah, al, b)


def dd_div(double ah, double al, double bh, double bl):
    return _dd_div(ah, al, bh, bl)


def dd_div_d(double ah, double al, double b):
    return _dd_div_d(ah, al, b)


def dd_sqrt(double ah, double al):
    return _dd_sqrt(ah, al)


def dd_exp(double ah, double al):
    return _dd_exp(ah, al)


def dd_sincos(double ah, double al):
    """Return (sin_hi, sin_lo, cos_hi, cos_lo); accurate for |a| < 1e5."""
    return _dd_sincos(ah, al)


def cdd_mul(double ar, double arl, double ai, double ail,
            double br, double brl, double bi, double bil):
    return _cdd_mul(ar, arl, ai, ail, br, brl, bi, bil)


def cdd_div(double ar, double arl, double ai, double ail,
            double br, double brl, double bi, double bil):
    return _cdd_div(ar, arl, ai, ail, br, brl, bi, bil)


def cdd_abs(double ar, double arl, double ai, double ail):
    return _cdd_abs(ar, arl, ai, ail)


def cdd_sqrt(double ar, double arl, double ai, double ail):
    """Principal square root; the sign of a zero imaginary part picks the side."""
    return _cdd_sqrt(ar, arl, ai, ail)


def cdd_exp(double ar, double arl, double ai, double ail):
    return _cdd_exp(ar, arl, ai, ail)


# --------------------------------------------------------------------------
# value classes

cdef bint _rparts(object x, double* h, double* l) except -1:
    if isinstance(x, XReal):
        h[0] = (<XReal>x).hi
        l[0] = (<XReal>x).lo
        return True
    if isinstance(x, float):
        h[0] = <double>x
        l[0] = 0.0
        return True
    if isinstance(x, int):
        h[0] = float(x)
        if -9007199254740992 <= x <= 9007199254740992:
            l[0] = 0.0
        else:
            l[0] = float(x - int(h[0]))
        return True
    return False


cdef bint _cparts(object x, double* p) except -1:
    if isinstance(x, XComplex):
        p[0] = (<XComplex>x).rh
        p[1] = (<XComplex>x).rl
        p[2] = (<XComplex>x).ih
        p[3] = (<XComplex>x).il
        return True
    if isinstance(x, complex):
        p[0] = x.real
        p[1] = 0.0
        p[2] = x.imag
        p[3] = 0.0
        return True
    if _rparts(x, &p[0], &p[1]):
        p[2] = 0.0
        p[3] = 0.0
        return True
    return False


cdef inline XReal _mkreal(double h, double l):
    cdef XReal r = XReal.__new__(XReal)
    r.hi = h
    r.lo = l
    return r


cdef inline XComplex _mkcplx(double rh, double rl, double ih, double il):
    cdef XComplex c = XComplex.__new__(XComplex)
    c.rh = rh
    c.rl = rl
    c.ih = ih
    c.il = il
    return c


cdef class XReal:
    """Real double-double number."""

    cdef readonly double hi
    cdef readonly double lo

    def __init__(self, hi=0.0, lo=0.0):
        cdef double h, l
        if not _rparts(hi, &h, &l):
            raise TypeError("cannot build XReal from %r" % (hi,))
        if lo != 0.0:
            h, l = _dd_add(h, l, float(lo), 0.0)
        self.hi = h
        self.lo = l

    @staticmethod
    def _make(double h, double l):
        return _mkreal(h, l)

    def __add__(self, other):
        cdef double h, l
        if not _rparts(other, &h, &l):
            return NotImplemented
        h, l = _dd_add(self.hi, self.lo, h, l)
        return _mkreal(h, l)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        cdef double h, l
        if not _rparts(other, &h, &l):
            return NotImplemented
        h, l = _dd_add(self.hi, self.lo, -h, -l)
        return _mkreal(h, l)

    def __rsub__(self, other):
        cdef double h, l
        if not _rparts(other, &h, &l):
            return NotImplemented
        h, l = _dd_add(h, l, -self.hi, -self.lo)
        return _mkreal(h, l)

    def __mul__(self, other):
        cdef double h, l
        if not _rparts(other, &h, &l):
            return NotImplemented
        h, l = _dd_mul(self.hi, self.lo, h, l)
        return _mkreal(h, l)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        cdef double h, l
        if not _rparts(other, &h, &l):
            return NotImplemented
        if h == 0.0:
            raise ZeroDivisionError("XReal division by zero")
        h, l = _dd_div(self.hi, self.lo, h, l)
        return _mkreal(h, l)

    def __rtruediv__(self, other):
        cdef double h, l
        if not _rparts(other, &h, &l):
            return NotImplemented
        if self.hi == 0.0:
            raise ZeroDivisionError("XReal division by zero")
        h, l = _dd_div(h, l, self.hi, self.lo)
        return _mkreal(h, l)

    def __neg__(self):
        return _mkreal(-self.hi, -self.lo)

    def __pos__(self):
        return self

    def __abs__(self):
        if self.hi < 0.0:
            return _mkreal(-self.hi, -self.lo)
        return self

    cdef int _cmp(self, object other, bint* ok) except -2:
        cdef double h, l
        if not _rparts(other, &h, &l):
            ok[0] = False
            return 0
        ok[0] = True
        if self.hi != h:
            return -1 if self.hi < h else 1
        if self.lo != l:
            return -1 if self.lo < l else 1
        return 0

    def __eq__(self, other):
        cdef bint ok
        cdef int c = self._cmp(other, &ok)
        return c == 0 if ok else NotImplemented

    def __ne__(self, other):
        cdef bint ok
        cdef int c = self._cmp(other, &ok)
        return c != 0 if ok else NotImplemented

    def __lt__(self, other):
        cdef bint ok
        cdef int c = self._cmp(other, &ok)
        return c < 0 if ok else NotImplemented

    def __le__(self, other):
        cdef bint ok
        cdef int c = self._cmp(other, &ok)
        return c <= 0 if ok else NotImplemented

    def __gt__(self, other):
        cdef bint ok
        cdef int c = self._cmp(other, &ok)
        return c > 0 if ok else NotImplemented

    def __ge__(self, other):
        cdef bint ok
        cdef int c = self._cmp(other, &ok)
        return c >= 0 if ok else NotImplemented

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
        cdef double h, l
        h, l = _dd_sqrt(self.hi, self.lo)
        return _mkreal(h, l)

    def exp(self):
        cdef double h, l
        h, l = _dd_exp(self.hi, self.lo)
        return _mkreal(h, l)

    def sincos(self):
        cdef double sh, sl, ch, cl
        sh, sl, ch, cl = _dd_sincos(self.hi, self.lo)
        return _mkreal(sh, sl), _mkreal(ch, cl)


cdef class XComplex:
    """Complex double-double number with components (rh + rl) + i(ih + il)."""

    cdef readonly double rh
    cdef readonly double rl
    cdef readonly double ih
    cdef readonly double il

    def __init__(self, re=0.0, im=0.0):
        cdef double h, l
        if isinstance(re, complex) and im == 0.0:
            self.rh, self.rl, self.ih, self.il = re.real, 0.0, re.imag, 0.0
            return
        if isinstance(re, XComplex) and im == 0.0:
            self.rh = (<XComplex>re).rh
            self.rl = (<XComplex>re).rl
            self.ih = (<XComplex>re).ih
            self.il = (<XComplex>re).il
            return
        if not _rparts(re, &h, &l):
            raise TypeError("cannot build XComplex from %r, %r" % (re, im))
        self.rh = h
        self.rl = l
        if not _rparts(im, &h, &l):
            raise TypeError("cannot build XComplex from %r, %r" % (re, im))
        self.ih = h
        self.il = l

    @staticmethod
    def from_parts(double rh, double rl, double ih, double il):
        return _mkcplx(rh, rl, ih, il)

    @property
    def real(self):
        return _mkreal(self.rh, self.rl)

    @property
    def imag(self):
        return _mkreal(self.ih, self.il)

    def parts(self):
        return self.rh, self.rl, self.ih, self.il

    def __add__(self, other):
        cdef double p[4]
        cdef double rh, rl, ih, il
        if not _cparts(other, p):
            return NotImplemented
        rh, rl = _dd_add(self.rh, self.rl, p[0], p[1])
        ih, il = _dd_add(self.ih, self.il, p[2], p[3])
        return _mkcplx(rh, rl, ih, il)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        cdef double p[4]
        cdef double rh, rl, ih, il
        if not _cparts(other, p):
            return NotImplemented
        rh, rl = _dd_add(self.rh, self.rl, -p[0], -p[1])
        ih, il = _dd_add(self.ih, self.il, -p[2], -p[3])
        return _mkcplx(rh, rl, ih, il)

    def __rsub__(self, other):
        cdef double p[4]
        cdef double rh, rl, ih, il
        if not _cparts(other, p):
            return NotImplemented
        rh, rl = _dd_add(p[0], p[1], -self.rh, -self.rl)
        ih, il = _dd_add(p[2], p[3], -self.ih, -self.il)
        return _mkcplx(rh, rl, ih, il)

    def __mul__(self, other):
        cdef double p[4]
        cdef double h, l, rh, rl, ih, il
        if _rparts(other, &h, &l):
            rh, rl = _dd_mul(self.rh, self.rl, h, l)
            ih, il = _dd_mul(self.ih, self.il, h, l)
            return _mkcplx(rh, rl, ih, il)
        if not _cparts(other, p):
            return NotImplemented
        rh, rl, ih, il = _cdd_mul(self.rh, self.rl, self.ih, self.il, p[0], p[1], p[2], p[3])
        return _mkcplx(rh, rl, ih, il)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        cdef double p[4]
        cdef double h, l, rh, rl, ih, il
        if _rparts(other, &h, &l):
            if h == 0.0:
                raise ZeroDivisionError("complex division by zero")
            rh, rl = _dd_div(self.rh, self.rl, h, l)
            ih, il = _dd_div(self.ih, self.il, h, l)
            return _mkcplx(rh, rl, ih, il)
        if not _cparts(other, p):
            return NotImplemented
        rh, rl, ih, il = _cdd_div(self.rh, self.rl, self.ih, self.il, p[0], p[1], p[2], p[3])
        return _mkcplx(rh, rl, ih, il)

    def __rtruediv__(self, other):
        cdef double p[4]
        cdef double rh, rl, ih, il
        if not _cparts(other, p):
            return NotImplemented
        rh, rl, ih, il = _cdd_div(p[0], p[1], p[2], p[3], self.rh, self.rl, self.ih, self.il)
        return _mkcplx(rh, rl, ih, il)

    def __pow__(self, n, modulo):
        cdef double rr, rrl, ri, ril, br, brl, bi, bil
        if not isinstance(n, int) or modulo is not None:
            return NotImplemented
        if n < 0:
            return 1.0 / self.__pow__(-n, None)
        rr, rrl, ri, ril = 1.0, 0.0, 0.0, 0.0
        br, brl, bi, bil = self.rh, self.rl, self.ih, self.il
        while n:
            if n & 1:
                rr, rrl, ri, ril = _cdd_mul(rr, rrl, ri, ril, br, brl, bi, bil)
            n >>= 1
            if n:
                br, brl, bi, bil = _cdd_mul(br, brl, bi, bil, br, brl, bi, bil)
        return _mkcplx(rr, rrl, ri, ril)

    def __neg__(self):
        return _mkcplx(-self.rh, -self.rl, -self.ih, -self.il)

    def __pos__(self):
        return self

    def __abs__(self):
        cdef double h, l
        h, l = _cdd_abs(self.rh, self.rl, self.ih, self.il)
        return _mkreal(h, l)

    def conjugate(self):
        return _mkcplx(self.rh, self.rl, -self.ih, -self.il)

    def __eq__(self, other):
        cdef double p[4]
        if not _cparts(other, p):
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
        return (_mkcplx_py, (self.rh, self.rl, self.ih, self.il))

    def sqrt(self):
        cdef double rh, rl, ih, il
        rh, rl, ih, il = _cdd_sqrt(self.rh, self.rl, self.ih, self.il)
        return _mkcplx(rh, rl, ih, il)

    def exp(self):
        cdef double rh, rl, ih, il
        rh, rl, ih, il = _cdd_exp(self.rh, self.rl, self.ih, self.il)
        return _mkcplx(rh, rl, ih, il)

    def approx_abs(self):
        """|z| in binary64 from the leading parts (cheap magnitude tests)."""
        return _mag(self.rh, self.ih)


def _mkcplx_py(double rh, double rl, double ih, double il):
    return _mkcplx(rh, rl, ih, il)


# --------------------------------------------------------------------------
# series kernels

def power_sum(double m, double zr, double zrl, double zi, double zil, double tol, int n_cap):
    """Sum_{n>=0} (-z)^n / (n! (2m+2n+1)) until a term drops below tol*|sum|.

    Returns (rh, rl, ih, il, terms, abs_sum, next_abs), where abs_sum adds up
    the term magnitudes (rounding bound) and next_abs is the size of the first
    term left out.
    """
    cdef double wr = -zr, wrl = -zrl, wi = -zi, wil = -zil
    cdef double tr = 1.0, trl = 0.0, ti = 0.0, til = 0.0
    cdef double sr = 0.0, srl = 0.0, si = 0.0, sil = 0.0
    cdef double abs_sum = 0.0, den, ar, arl, ai, ail, a, next_abs
    cdef int n = 0
    while True:
        den = 2.0 * m + 2.0 * n + 1.0
        ar, arl = _dd_div_d(tr, trl, den)
        ai, ail = _dd_div_d(ti, til, den)
        sr, srl = _dd_add(sr, srl, ar, arl)
        si, sil = _dd_add(si, sil, ai, ail)
        a = _mag(ar, ai)
        abs_sum += a
        tr, trl, ti, til = _cdd_mul(tr, trl, ti, til, wr, wrl, wi, wil)
        tr, trl = _dd_div_d(tr, trl, <double>(n + 1))
        ti, til = _dd_div_d(ti, til, <double>(n + 1))
        n += 1
        if n >= n_cap or (a <= tol * _mag(sr, si) and n > 1):
            break
    next_abs = _mag(tr, ti) / (2.0 * m + 2.0 * n + 1.0)
    return sr, srl, si, sil, n, abs_sum, next_abs


def laurent_sum(double m, double zr, double zrl, double zi, double zil, int n_last):
    """Sum_{n=0}^{n_last} (1-a)_n (-z)^(-n), a = m + 1/2.

    Returns (rh, rl, ih, il, abs_sum, next_abs).
    """
    cdef double a = m + 0.5
    cdef double wr, wrl, wi, wil, c, next_abs
    cdef double tr = 1.0, trl = 0.0, ti = 0.0, til = 0.0
    cdef double sr = 1.0, srl = 0.0, si = 0.0, sil = 0.0
    cdef double abs_sum = 1.0
    cdef int n
    wr, wrl, wi, wil = _cdd_div(-1.0, 0.0, 0.0, 0.0, zr, zrl, zi, zil)
    for n in range(1, n_last + 1):
        tr, trl, ti, til = _cdd_mul(tr, trl, ti, til, wr, wrl, wi, wil)
        c = n - a
        tr, trl = _dd_mul_d(tr, trl, c)
        ti, til = _dd_mul_d(ti, til, c)
        sr, srl = _dd_add(sr, srl, tr, trl)
        si, sil = _dd_add(si, sil, ti, til)
        abs_sum += _mag(tr, ti)
    tr, trl, ti, til = _cdd_mul(tr, trl, ti, til, wr, wrl, wi, wil)
    next_abs = _mag(tr, ti) * fabs(n_last + 1 - a)
    return sr, srl, si, sil, abs_sum, next_abs


def halfarg_sum(table_hi, table_lo, double zr, double zrl, double zi, double zil, double tol):
    """Sum_n (z/2)^n / n! * I_n with I_n from the given table.

    Terms stop once |(z/2)^n/n!| * 4 <= tol*|sum| (|I_n| <= 4 always).
    Returns (rh, rl, ih, il, terms, abs_sum, next_bound, exhausted).
    """
    cdef double hr = 0.5 * zr, hrl = 0.5 * zrl, hi_ = 0.5 * zi, hil = 0.5 * zil
    cdef double tr = 1.0, trl = 0.0, ti = 0.0, til = 0.0
    cdef double sr = 0.0, srl = 0.0, si = 0.0, sil = 0.0
    cdef double abs_sum = 0.0, ch, cl, ar, arl, ai, ail, bound, next_bound
    cdef int n_max = len(table_hi)
    cdef int n = 0
    cdef bint exhausted = True
    while n < n_max:
        ch = table_hi[n]
        cl = table_lo[n]
        ar, arl = _dd_mul(tr, trl, ch, cl)
        ai, ail = _dd_mul(ti, til, ch, cl)
        sr, srl = _dd_add(sr, srl, ar, arl)
        si, sil = _dd_add(si, sil, ai, ail)
        abs_sum += _mag(ar, ai)
        bound = 4.0 * _mag(tr, ti)
        tr, trl, ti, til = _cdd_mul(tr, trl, ti, til, hr, hrl, hi_, hil)
        tr, trl = _dd_div_d(tr, trl, <double>(n + 1))
        ti, til = _dd_div_d(ti, til, <double>(n + 1))
        n += 1
        if bound <= tol * _mag(sr, si) and n > 1:
            exhausted = False
            break
    next_bound = 4.0 * _mag(tr, ti)
    return sr, srl, si, sil, n, abs_sum, next_bound, exhausted


def power_terms_needed(double m, double zr, double zrl, double zi, double zil,
                       double fr, double frl, double fi, double fil,
                       double rel_tol, int n_max):
    """Fewest leading terms of the power series whose partial sums stay within
    rel_tol of the reference (fr, frl, fi, fil) from then on.

    Returns -1 when n_max terms do not settle.
    """
    cdef double wr = -zr, wrl = -zrl, wi = -zi, wil = -zil
    cdef double tr = 1.0, trl = 0.0, ti = 0.0, til = 0.0
    cdef double sr = 0.0, srl = 0.0, si = 0.0, sil = 0.0
    cdef double limit = rel_tol * _mag(fr, fi)
    cdef double zabs = _mag(zr, zi)
    cdef double den, ar, arl, ai, ail, er, erl, ei, eil
    cdef int last_fail = -1
    cdef int n = 0
    while n < n_max:
        den = 2.0 * m + 2.0 * n + 1.0
        ar, arl = _dd_div_d(tr, trl, den)
        ai, ail = _dd_div_d(ti, til, den)
        sr, srl = _dd_add(sr, srl, ar, arl)
        si, sil = _dd_add(si, sil, ai, ail)
        er, erl = _dd_add(sr, srl, -fr, -frl)
        ei, eil = _dd_add(si, sil, -fi, -fil)
        if _mag(er, ei) > limit:
            last_fail = n
        elif n > zabs and _mag(ar, ai) < 1e-3 * limit:
            return last_fail + 2
        tr, trl, ti, til = _cdd_mul(tr, trl, ti, til, wr, wrl, wi, wil)
        tr, trl = _dd_div_d(tr, trl, <double>(n + 1))
        ti, til = _dd_div_d(ti, til, <double>(n + 1))
        n += 1
    return -1
