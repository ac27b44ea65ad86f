"""Taylor expansion of F_m about the nearest node of a precomputed grid.

Derivatives in z are index shifts, d^n/dz^n F_m = (-1)^n F_{m+n}, so a table of
F_j(z_0), j = 0..J_max, on nodes z_0 = k s + i l s serves every m and order:

    F_m(z_0 + eps) = sum_n (-eps)^n / n! F_{m+n}(z_0).

Points beyond half a stride outside the node rectangle use the Laurent
series with converging factor.  Grids persist in a line-oriented text format
(magic FMGRID/1, 25 significant digits, CRC32 trailer).
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import oracle, series, xprec
from .errors import DomainError, FormatError, GridBuildError, TargetUnreachable
from .result import SeriesResult, exp_tail, make_result
from .xprec import XComplex

MAGIC = "FMGRID/1"
DIGITS = 25
RESIDUAL_TOL = 1e-18
MAX_NODES = 10 ** 6


@dataclass(frozen=True)
class GridSpec:
    """Node rectangle k in [k_min, k_max], l in [0, l_max], stride s, indexes 0..J_max."""

    s: float = 3.0
    k_min: int = -11
    k_max: int = 6
    l_max: int = 12
    J_max: int = 30

    def __post_init__(self):
        if not self.s > 0:
            raise DomainError("stride must be positive")
        if self.k_max < self.k_min or self.l_max < 0:
            raise DomainError("empty node rectangle")
        if not 0 <= self.J_max <= 64:
            raise DomainError("J_max must lie in [0, 64]")
        if self.node_count > MAX_NODES:
            raise DomainError("too many nodes (%d)" % self.node_count)

    @property
    def node_count(self) -> int:
        return (self.k_max - self.k_min + 1) * (self.l_max + 1)

    def dense(self, factor: int = 3) -> "GridSpec":
        """Same rectangle with the stride divided by ``factor``."""
        return GridSpec(self.s / factor, self.k_min * factor, self.k_max * factor,
                        self.l_max * factor, self.J_max)


DEFAULT_GRID = GridSpec()
DENSE_GRID = DEFAULT_GRID.dense(3)


@dataclass(frozen=True)
class TaylorGrid:
    """F_j(z_0) for every node, stored as double-double complex values that are
    exactly representable by their 25-digit decimal text."""

    spec: GridSpec
    values: tuple = field(repr=False)   # values[node][j], node = (k-k_min)*(l_max+1) + l
    digits: int = DIGITS

    @property
    def s(self) -> float:
        return self.spec.s

    def node_index(self, k: int, l: int) -> int:
        return (k - self.spec.k_min) * (self.spec.l_max + 1) + l

    def node(self, k: int, l: int) -> complex:
        return complex(k * self.spec.s, l * self.spec.s)

    def stored(self, k: int, l: int, j: int) -> XComplex:
        return self.values[self.node_index(k, l)][j]

    @cached_property
    def doubles(self) -> np.ndarray:
        return np.array([[xprec.to_double(v) for v in row] for row in self.values],
                        dtype=complex)

    def contains(self, z: complex) -> bool:
        """Inside the node rectangle widened by s/2 (upper half-plane form)."""
        sp = self.spec
        h = sp.s / 2
        return (sp.k_min * sp.s - h <= z.real <= sp.k_max * sp.s + h
                and abs(z.imag) <= sp.l_max * sp.s + h)

    def nearest(self, z: complex):
        """(k, l) of the nearest node to z (Im z >= 0); ties go to the smaller
        |Im z_0|, then the smaller Re z_0."""
        sp = self.spec
        k = math.ceil(z.real / sp.s - 0.5)
        l = math.ceil(z.imag / sp.s - 0.5)
        return min(max(k, sp.k_min), sp.k_max), min(max(l, 0), sp.l_max)


# --------------------------------------------------------------------------
# building and validation

def _quantize(v: XComplex) -> XComplex:
    re = xprec.from_decimal_string(xprec.to_decimal_string(v.real, DIGITS))
    im = xprec.from_decimal_string(xprec.to_decimal_string(v.imag, DIGITS))
    return XComplex(re, im)


def build_grid(spec: GridSpec = DEFAULT_GRID) -> TaylorGrid:
    """Fill every node with oracle values of F_0 .. F_{J_max} (20+ digits),
    rounded to 25 significant digits."""
    rows = []
    bad = []
    for k in range(spec.k_min, spec.k_max + 1):
        for l in range(spec.l_max + 1):
            z0 = complex(k * spec.s, l * spec.s)
            row = []
            for j in range(spec.J_max + 1):
                try:
                    v = oracle.oracle_eval(oracle.EvalRequest(j, z0))
                except DomainError:
                    bad.append((k, l))
                    break
                row.append(_quantize(v))
            rows.append(tuple(row))
    if bad:
        raise GridBuildError("%d node(s) outside the oracle domain" % len(bad), bad)
    grid = TaylorGrid(spec, tuple(rows))
    validate_grid(grid)
    return grid


def node_residual(z0: complex, row) -> float:
    """Largest relative defect of 2z F_{j+1} = (2j+1) F_j - e^{-z} along a node."""
    zz = xprec.from_double(z0)
    ez = xprec.x_exp(-zz)
    worst = 0.0
    for j in range(len(row) - 1):
        lhs = 2 * zz * row[j + 1]
        rhs = (2 * j + 1) * row[j] - ez
        scale = abs(lhs) + abs(rhs) + abs(ez)
        worst = max(worst, float(abs(lhs - rhs)) / float(scale))
    return worst


def validate_grid(grid: TaylorGrid) -> None:
    sp = grid.spec
    for k in range(sp.k_min, sp.k_max + 1):
        for l in range(sp.l_max + 1):
            row = grid.values[grid.node_index(k, l)]
            if len(row) != sp.J_max + 1:
                raise FormatError("node (%d, %d) has %d values" % (k, l, len(row)))
            r = node_residual(grid.node(k, l), row)
            if not r <= RESIDUAL_TOL:
                raise FormatError("node (%d, %d) fails the index recurrence (%.1e)" % (k, l, r))


# --------------------------------------------------------------------------
# persistence

def _fmt(x) -> str:
    return xprec.to_decimal_string(x, DIGITS)


def _grid_text(grid: TaylorGrid) -> str:
    sp = grid.spec
    lines = [MAGIC, "%r %d %d %d %d %d" % (sp.s, sp.k_min, sp.k_max, sp.l_max, sp.J_max,
                                           grid.digits)]
    for k in range(sp.k_min, sp.k_max + 1):
        for l in range(sp.l_max + 1):
            parts = ["%d %d" % (k, l)]
            for v in grid.values[grid.node_index(k, l)]:
                parts.append("%s %s" % (_fmt(v.real), _fmt(v.imag)))
            lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def save_grid(grid: TaylorGrid, path) -> None:
    body = _grid_text(grid).encode("ascii")
    crc = zlib.crc32(body) & 0xFFFFFFFF
    with open(path, "wb") as fh:
        fh.write(body)
        fh.write(b"CRC32 %08x\n" % crc)


def load_grid(path) -> TaylorGrid:
    with open(path, "rb") as fh:
        data = fh.read()
    return parse_grid(data)


def parse_grid(data: bytes) -> TaylorGrid:
    if not data:
        raise FormatError("empty grid file")
    cut = data.rstrip(b"\n").rfind(b"\n")
    if cut < 0:
        raise FormatError("truncated grid file")
    body, trailer = data[:cut + 1], data[cut + 1:].strip()
    first = body.split(b"\n", 1)[0]
    if first != MAGIC.encode():
        raise FormatError("unknown magic %r" % first[:20])
    if not trailer.startswith(b"CRC32 "):
        raise FormatError("missing CRC32 trailer")
    try:
        want = int(trailer[6:], 16)
    except ValueError:
        raise FormatError("malformed CRC32 trailer") from None
    if zlib.crc32(body) & 0xFFFFFFFF != want:
        raise FormatError("checksum mismatch")
    lines = body.decode("ascii").split("\n")[1:-1]
    if not lines:
        raise FormatError("missing header")
    try:
        head = lines[0].split()
        spec = GridSpec(float(head[0]), int(head[1]), int(head[2]), int(head[3]), int(head[4]))
        digits = int(head[5])
    except (IndexError, ValueError, DomainError) as exc:
        raise FormatError("bad header: %s" % exc) from None
    if len(lines) - 1 != spec.node_count:
        raise FormatError("expected %d nodes, found %d" % (spec.node_count, len(lines) - 1))
    rows = [None] * spec.node_count
    width = 2 + 2 * (spec.J_max + 1)
    for line in lines[1:]:
        tok = line.split()
        if len(tok) != width:
            raise FormatError("node line has %d fields, expected %d" % (len(tok), width))
        try:
            k, l = int(tok[0]), int(tok[1])
            vals = tuple(XComplex(xprec.from_decimal_string(tok[i]),
                                  xprec.from_decimal_string(tok[i + 1]))
                         for i in range(2, width, 2))
        except (ValueError, ArithmeticError):
            raise FormatError("unparsable node line") from None
        if not (spec.k_min <= k <= spec.k_max and 0 <= l <= spec.l_max):
            raise FormatError("node (%d, %d) outside the header rectangle" % (k, l))
        idx = (k - spec.k_min) * (spec.l_max + 1) + l
        if rows[idx] is not None:
            raise FormatError("duplicate node (%d, %d)" % (k, l))
        rows[idx] = vals
    grid = TaylorGrid(spec, tuple(rows), digits)
    validate_grid(grid)
    return grid


# --------------------------------------------------------------------------
# evaluation

def _auto_prec(target_d: float, prec):
    if prec is not None:
        return prec
    return "extended" if target_d > 13 else "double"


def _taylor(m: int, z: complex, target_d: float, grid: TaylorGrid, prec: str):
    """(value, terms, reached, trunc_abs, round_abs, ar)."""
    ar = xprec.arith(prec)
    k, l = grid.nearest(z)
    z0 = grid.node(k, l)
    idx = grid.node_index(k, l)
    ext = ar is xprec.EXTENDED
    row = grid.values[idx] if ext else grid.doubles[idx]
    eps = ar.num(z) - ar.num(z0) if ext else z - z0
    tol = 10.0 ** (-target_d - 1)
    J = grid.spec.J_max
    w = -eps
    p = ar.num(1.0)
    total = ar.num(0.0)
    abs_sum = 0.0
    n = 0
    reached = False
    while True:
        idx = m + n
        # the first term below tolerance is only a convergence check and is
        # not added; one index past the table its size is taken from F_J
        fj = row[idx] if idx <= J else row[J]
        term = p * fj
        tm = xprec.xabs(term)
        if n > 0 and tm <= tol * xprec.xabs(total):
            reached = True
            break
        if idx > J:
            break
        total = total + term
        abs_sum += tm
        n += 1
        p = p * w / n
    # tail bound: |F_j(z0)| <= max(1, e^{-Re z0})/(2j+1) and decreasing in j
    r = xprec.xabs(eps)
    fb = max(1.0, math.exp(-z0.real)) / (2 * (m + n) + 1)
    partial = sum(r ** i / math.factorial(i) for i in range(n))
    trunc = fb * exp_tail(r, n, partial)
    # stored values are trusted to the oracle's guaranteed digits
    trunc += abs_sum * 10.0 ** -oracle.TRUSTED_DIGITS
    return total, n, reached, trunc, abs_sum, ar


def grid_eval(m: int, z, target_d: float, grid: TaylorGrid, prec: str | None = None) -> SeriesResult:
    """F_m(z) from the nearest node, summing until |term| <= 10^(-target_d-1) |sum|.

    Outside the grid the Laurent series with converging factor is used (flag
    "laurent_fallback").  If the sum runs out of stored indexes before the
    target the best value is returned with flag "target_unreachable".
    """
    if m != int(m) or m < 0:
        raise DomainError("m must be a non-negative integer")
    m = int(m)
    if m > grid.spec.J_max:
        raise DomainError("m exceeds the stored indexes")
    prec = _auto_prec(target_d, prec)
    z = complex(z)
    lower = z.imag < 0
    zu = z.conjugate() if lower else z
    if not grid.contains(zu):
        res = series.laurent_cf(m, zu, prec=prec)
        res = SeriesResult(res.value, res.terms_used, res.error_estimate,
                           res.flags + ("laurent_fallback",), res.exp_evals, res.xvalue)
    else:
        val, n, reached, trunc, rnd, ar = _taylor(m, zu, target_d, grid, prec)
        flags = () if reached else ("target_unreachable",)
        res = make_result(val, n, trunc, rnd, ar, flags)
    if lower:
        xv = res.xvalue.conjugate() if res.xvalue is not None else None
        res = SeriesResult(res.value.conjugate(), res.terms_used, res.error_estimate,
                           res.flags, res.exp_evals, xv)
    return res


# ``eval`` in the public vocabulary; the builtin name is avoided in code
evaluate = grid_eval


def terms_needed(m: int, z, target_d: float, grid: TaylorGrid, prec: str | None = None) -> int:
    """Terms grid_eval would use; TargetUnreachable when J_max runs out first."""
    res = grid_eval(m, z, target_d, grid, prec)
    if "target_unreachable" in res.flags:
        raise TargetUnreachable("F_%d at %r needs indexes beyond J_max=%d for %g digits"
                                % (m, complex(z), grid.spec.J_max, target_d))
    return res.terms_used
