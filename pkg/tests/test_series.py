import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, strategies as st

from incgamma import oracle, series, xprec
from incgamma.errors import DomainError

zs = st.builds(complex, st.floats(-15, 15), st.floats(-15, 15))
small_z = st.builds(complex, st.floats(-8, 8), st.floats(-8, 8)).filter(lambda z: abs(z) <= 8)


def digits(value, m, z):
    return oracle.digits_of(value, oracle.oracle_eval(m, z))


def honest(res, m, z):
    e = res.error_estimate
    if e > 1e-4:
        return True
    return digits(res.best(), m, z) >= -math.log10(max(e, 1e-300)) - 1


def test_pochhammer():
    assert series.pochhammer(0.5, 0) == 1
    assert series.pochhammer(0.5, 2) == 0.75
    assert series.pochhammer(-0.5, 3) == -0.375
    with pytest.raises(ValueError):
        series.pochhammer(1.0, -1)


def test_power_series_examples():
    for m in range(4):
        r = series.power_series(m, 0j, tol=1e-3)
        assert r.value == 1 / (2 * m + 1) and r.terms_used == 1
    assert digits(series.power_series(0, 1 + 0j, tol=1e-16).value, 0, 1 + 0j) >= 15
    plus = digits(series.power_series(0, 10 + 0j, tol=0.0, n_cap=30).value, 0, 10 + 0j)
    minus = digits(series.power_series(0, -10 + 0j, tol=0.0, n_cap=30).value, 0, -10 + 0j)
    assert minus > plus


def test_power_series_cap_is_flagged_in_estimate():
    r = series.power_series(0, 20 + 0j, tol=1e-16, n_cap=10)
    assert r.terms_used == 10 and r.error_estimate > 1e-3


def test_aitken_examples():
    acc = series.aitken(1.0, 1.5, 1.75)
    assert acc.value == 2.0 and not acc.degenerate
    deg = series.aitken(3 + 1j, 3 + 1j, 3 + 1j)
    assert deg.degenerate and deg.value == 3 + 1j
    ps = series.power_partials(0, 6 + 0j, 21)
    ref = oracle.oracle_eval(0, 6 + 0j)
    gain = oracle.digits_of(series.aitken(*ps[18:21]).value, ref) - oracle.digits_of(ps[20], ref)
    assert 1.0 <= gain <= 2.0


def test_laurent_examples():
    # a = 1 terminates after one term: F_{1/2}(z) = (1 - e^{-z}) / (2z)
    for z in (3 + 4j, -2 + 0.5j, 12 + 0j):
        got = series.laurent(0.5, z, "extended").xvalue
        zx = xprec.from_double(z)
        assert oracle.digits_of(got, (1 - (-zx).exp()) / (2 * zx)) >= 28
    r = series.laurent(0, 30 + 0j)
    assert digits(r.value, 0, 30 + 0j) >= 11
    assert r.terms_used == math.floor(30 + 0.5) + 1
    assert series.laurent(0, 2 + 0j).error_estimate > 1e-3
    with pytest.raises(DomainError):
        series.laurent(0, 0j)


def test_laurent_terms_shrink_until_truncation():
    for m, z in ((0, 12 + 5j), (3, -20 + 1j), (1, 7j)):
        a = m + 0.5
        n_last = math.floor(abs(z) + a)
        t, mags = 1.0, [1.0]
        for n in range(1, n_last + 1):
            t *= (n - a) / -z
            mags.append(abs(t))
        assert all(mags[i + 1] <= mags[i] * (1 + 1e-12) for i in range(len(mags) - 1))


def test_laurent_cf_examples():
    z = 10 + 0j
    plain = digits(series.laurent(0, z).value, 0, z)
    cf = digits(series.laurent_cf(0, z).value, 0, z)
    assert 1.6 * plain <= cf <= 2.6 * plain
    n = math.floor(30 + 0.5)
    a, b = series.laurent_cf(0, 30 + 0j, n).value, series.laurent(0, 30 + 0j).value
    assert abs(a - b) <= 1e-6 * abs(b)
    st_ = series.converging_factor(0, 1e6 + 0j, 5)
    assert abs(st_.theta - 1) < 1e-4


def test_converging_factor_state_invariants():
    st_ = series.converging_factor(1, 8 + 3j, 6)
    a = st_.a
    assert st_.c[0] == 1 and st_.c[3] == series.pochhammer(1 - a, 3)
    assert st_.q[0] == st_.N + 1 - a
    assert all(e == k + 1 for k, e in enumerate(st_.e))
    assert all(q == st_.N + k + 1 - a for k, q in enumerate(st_.q))
    with pytest.raises(DomainError):
        series.laurent_cf(0, 2 + 0j, 50)


def test_square_series_examples():
    assert series.square_series(0, 0j).value == 1
    assert series.square_coefficient(0, 1) == Fraction(2, 3)
    c17 = series.square_coefficient(0, 17)
    assert f"{float(c17):.10e}" == "1.2095882300e-12"
    r = series.square_series(2, 1 - 2j, n_cap=20)
    assert honest(r, 2, 1 - 2j)
    # 20 coefficients leave a tail near 2^20/20!, i.e. about six digits here
    assert 5 <= digits(r.value, 2, 1 - 2j) <= 8


def test_square_value_squares_to_partial_sum():
    z = 2.5 - 1j
    r = series.square_series(1, z, n_cap=30)
    s = sum(complex(float(series.square_coefficient(1, n))) * (-z) ** n for n in range(30))
    assert abs(r.value ** 2 - s) <= 1e-14 * abs(s)


def test_split_exp_examples():
    assert series.split_exp_series(0, 0j).value == 1
    assert abs(series.split_exp_series(0, 1e-9 + 0j).value - 1) < 1e-9
    assert digits(series.split_exp_series(0, 1 + 0j, 40).value, 0, 1 + 0j) >= 14
    d_split = digits(series.split_exp_series(0, 6 + 0j, 30).value, 0, 6 + 0j)
    d_pow = digits(series.power_series(0, 6 + 0j, tol=0.0, n_cap=30).value, 0, 6 + 0j)
    assert abs(d_split - d_pow) <= 0.3


def test_half_arg_table():
    t = series.build_half_arg_table(2, 40)
    assert t.entry(0, 0) == 4.0
    assert t.entry(0, 1) == 4 / 3
    mpmath.mp.dps = 40
    for n in range(0, 41, 5):
        f = lambda w: mpmath.sin(w / 2) ** 2 * mpmath.cos(w) ** n * mpmath.cos(w / 2)  # noqa: E731
        want = mpmath.quad(f, [-mpmath.pi, 0, mpmath.pi])
        x = t.entry_x(1, n)
        got = mpmath.mpf(x.hi) + mpmath.mpf(x.lo)
        assert abs(got - want) <= abs(want) * mpmath.mpf(10) ** -25
    for row_h in t.hi:
        assert all(math.isfinite(v) and abs(v) <= 4 for v in row_h)


def test_half_arg_examples():
    for m in range(5):
        assert series.half_arg_series(m, 0j).value == 1 / (2 * m + 1)
    with pytest.raises(DomainError):
        series.half_arg_series(0, 1 + 0j, n_cap=200)


@given(small_z, st.integers(0, 6))
def test_power_and_half_arg_agree(z, m):
    a = series.power_series(m, z, tol=1e-16).value
    b = series.half_arg_series(m, z, 60).value
    # 14 digits less what the alternating power series cancels in binary64
    mags = sum(abs(z) ** k / math.factorial(k) / (2 * m + 2 * k + 1) for k in range(80))
    loss = max(0.0, math.log10(mags / abs(b)))
    assert oracle.digits_of(a, xprec.from_double(b)) >= 14 - loss


METHODS = {
    "power_series": lambda m, z: series.power_series(m, z, tol=1e-16),
    "laurent": lambda m, z: series.laurent(m, z),
    "laurent_cf": lambda m, z: series.laurent_cf(m, z),
    "square_series": lambda m, z: series.square_series(m, z),
    "split_exp_series": lambda m, z: series.split_exp_series(m, z),
    "half_arg_series": lambda m, z: series.half_arg_series(m, z),
}


@pytest.mark.parametrize("name", sorted(METHODS))
@given(z=zs.filter(lambda z: z != 0), m=st.integers(0, 6))
def test_estimates_are_honest(name, z, m):
    try:
        res = METHODS[name](m, z)
    except DomainError:
        assume(False)
    assert honest(res, m, z)


@pytest.mark.parametrize("name", sorted(METHODS))
@given(z=zs.filter(lambda z: z.imag != 0), m=st.integers(0, 6))
def test_conjugate_symmetry_exact(name, z, m):
    try:
        a = METHODS[name](m, z)
    except DomainError:
        assume(False)
    b = METHODS[name](m, z.conjugate())
    assert b.value == a.value.conjugate()
