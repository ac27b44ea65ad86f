import math

import pytest
from hypothesis import given, strategies as st

from incgamma import oracle, salzer
from incgamma.errors import DomainError

zs = st.builds(complex, st.floats(-15, 15), st.floats(-15, 15)).filter(lambda z: abs(z) > 1e-30)


def digits(value, m, z):
    return oracle.digits_of(value, oracle.oracle_eval(m, z))


def test_rule_constants_first_row():
    r = salzer.salzer_rule(16)
    assert r.inv_p[0] == complex(0.00837170617826571876, -0.03493885151879447953)
    assert r.A[0] == complex(-746.67512193457595039, 233.41871487568252156)
    assert len(r.inv_p) == len(r.A) == 16


def test_rule_pairing_and_moments():
    r = salzer.salzer_rule()
    assert r.pairing_defect() == 0.0
    # sum A_i p_i^{-k} = 1/Gamma(k); the rule's exactness shows in the low moments
    for k in range(1, 9):
        assert abs(r.moment(k) - 1 / math.gamma(k)) < 1e-8


def test_only_sixteen_point_rule():
    with pytest.raises(DomainError):
        salzer.salzer_rule(30)


def test_large_real_argument_limit():
    a = 1.5
    lead = salzer.gamma_half_integer(a) / (2 * 30.0 ** a)
    v = salzer.salzer_fm(1, 30.0).value
    # measured 2.48e-4: the 16-point rule does not reach 1e-4 here
    assert abs(v - lead) / lead < 3e-4
    assert abs(salzer.salzer_P(a, 30.0) - 1) < 3e-4


def test_moderate_argument_band():
    assert 2 <= digits(salzer.salzer_fm(1, 5 + 0j).value, 1, 5 + 0j) <= 9


def test_branch_domains():
    with pytest.raises(DomainError):
        salzer.salzer_P(1.5, -1 + 1j)
    with pytest.raises(DomainError):
        salzer.salzer_P(1.5, 2j)
    with pytest.raises(DomainError):
        salzer.salzer_Q(1.5, 1 + 1j)
    with pytest.raises(DomainError):
        salzer.salzer_fm(1, 1e-200 + 0j)


def test_branch_flags():
    assert salzer.salzer_fm(1, 5j).flags == ("imaginary_axis",)
    r = salzer.salzer_fm(1, -2 + 1j)
    assert "Q_branch" in r.flags and r.error_estimate == 1.0
    assert salzer.salzer_fm(2, 0j).value == 0.2


def test_discontinuity_across_imaginary_axis():
    right = salzer.salzer_fm(0, 0.01 + 5j).value
    left = salzer.salzer_fm(0, -0.01 + 5j).value
    exact = oracle.oracle_eval(0, 0.01 + 5j) - oracle.oracle_eval(0, -0.01 + 5j)
    # the true function moves by ~2e-3 over this gap; the two branches differ far more
    assert abs(right - left) > 10 * abs(complex(exact.rh, exact.ih))


@given(zs, st.integers(0, 5))
def test_conjugate_symmetry(z, m):
    a = salzer.salzer_fm(m, z).value
    b = salzer.salzer_fm(m, z.conjugate()).value
    assert a == b.conjugate()


@given(st.floats(0.01, 40), st.integers(0, 6))
def test_real_output_for_positive_real(x, m):
    v = salzer.salzer_fm(m, complex(x, 0)).value
    assert abs(v.imag) <= 1e-13 * abs(v)


def test_gamma_half_integer():
    assert salzer.gamma_half_integer(0.5) == math.sqrt(math.pi)
    assert salzer.gamma_half_integer(1.5) == math.sqrt(math.pi) / 2
    for m in range(12):
        g = salzer.gamma_half_integer(m + 0.5)
        assert abs(g - math.gamma(m + 0.5)) <= 4e-16 * g * (m + 1)
    assert salzer.gamma_half_integer(2.25) == math.gamma(2.25)


def test_right_half_plane_estimate_honest():
    for z in (1 + 0j, 2 + 3j, 5 + 0j, 10 + 1j, 0.5 + 8j):
        r = salzer.salzer_fm(1, z)
        assert digits(r.value, 1, z) >= -math.log10(r.error_estimate) - 1
