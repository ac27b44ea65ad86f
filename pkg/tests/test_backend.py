"""The compiled core and its pure-Python twin must agree bit for bit."""

import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

import incgamma._ddcore_py as py

cy = pytest.importorskip("incgamma._ddcore")

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
pos = st.floats(1e-6, 1e6)
small = st.floats(-40, 40)


def same(a, b) -> bool:
    # repr equality also matches nan with nan and keeps the sign of zero
    return repr(a) == repr(b)


def dd(draw_hi, draw_frac):
    return draw_hi, draw_hi * draw_frac * 2.0 ** -54


@given(finite, st.floats(-1, 1), finite, st.floats(-1, 1))
def test_real_kernels(a, fa, b, fb):
    ah, al = dd(a, fa)
    bh, bl = dd(b, fb)
    for name in ("dd_add", "dd_sub", "dd_mul"):
        assert same(getattr(cy, name)(ah, al, bh, bl), getattr(py, name)(ah, al, bh, bl))
    assert same(cy.two_sum(a, b), py.two_sum(a, b))
    assert same(cy.two_prod(a, b), py.two_prod(a, b))
    if bh != 0.0:
        assert same(cy.dd_div(ah, al, bh, bl), py.dd_div(ah, al, bh, bl))


@given(pos, st.floats(-1, 1), small, st.floats(-1, 1))
def test_elementary_kernels(a, fa, x, fx):
    ah, al = dd(a, fa)
    assert same(cy.dd_sqrt(ah, al), py.dd_sqrt(ah, al))
    xh, xl = dd(x, fx)
    assert same(cy.dd_exp(xh, xl), py.dd_exp(xh, xl))
    assert same(cy.dd_sincos(xh, xl), py.dd_sincos(xh, xl))


@given(small, small, small, small)
def test_complex_kernels(ar, ai, br, bi):
    args = (ar, 0.0, ai, 0.0, br, 0.0, bi, 0.0)
    assert same(cy.cdd_mul(*args), py.cdd_mul(*args))
    if br or bi:
        assert same(cy.cdd_div(*args), py.cdd_div(*args))
    assert same(cy.cdd_exp(ar, 0.0, ai, 0.0), py.cdd_exp(ar, 0.0, ai, 0.0))
    assert same(cy.cdd_sqrt(ar, 0.0, ai, 0.0), py.cdd_sqrt(ar, 0.0, ai, 0.0))


@given(st.integers(0, 8), small, small)
def test_series_kernels(m, zr, zi):
    args = (float(m), zr, 0.0, zi, 0.0)
    assert same(cy.power_sum(*args, 1e-30, 600), py.power_sum(*args, 1e-30, 600))
    if zr or zi:
        n = int((zr * zr + zi * zi) ** 0.5 + m + 0.5)
        assert same(cy.laurent_sum(*args, n), py.laurent_sum(*args, n))


def test_object_arithmetic():
    for mod in (cy, py):
        assert mod.XComplex(1.0, 2.0) is not None
    a_c, b_c = cy.XComplex(cy.XReal(1.25, 1e-20), cy.XReal(-3.5)), cy.XComplex(0.3, 0.7)
    a_p, b_p = py.XComplex(py.XReal(1.25, 1e-20), py.XReal(-3.5)), py.XComplex(0.3, 0.7)
    for op in (lambda a, b: a + b, lambda a, b: a * b, lambda a, b: a / b,
               lambda a, b: (a * b).exp(), lambda a, b: (a - b).sqrt()):
        assert op(a_c, b_c).parts() == op(a_p, b_p).parts()


def test_pure_backend_selected_by_environment():
    code = "from incgamma import xprec, oracle; print(xprec.BACKEND, repr(complex(oracle.oracle_eval(2, 10-7j).rh)))"
    out = {}
    for pure in ("", "1"):
        env = dict(os.environ, INCGAMMA_PURE=pure)
        if not pure:
            env.pop("INCGAMMA_PURE")
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True)
        out[pure] = res.stdout.split()
    assert out[""][0] == "compiled" and out["1"][0] == "python"
    assert out[""][1] == out["1"][1]
