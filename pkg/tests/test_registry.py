import pytest
from hypothesis import given, settings, strategies as st

from incgamma import registry
from incgamma.errors import DomainError

from invariants import check_case, origin_ok

IDS = sorted(registry.METHODS)
zs = st.builds(complex, st.floats(-15, 15), st.floats(-15, 15))


def test_every_module_is_reachable():
    assert len(IDS) >= 14
    for mid in ("oracle", "power_series", "combined", "laurent_cf", "half_arg_series",
                "index_interp", "hermite_local_taylor", "algebraic_taylor_patched", "fourier",
                "gauss_jacobi", "spline", "gridtaylor", "salzer", "faddeeva", "bessel",
                "dijkstra", "dijkstra_pos"):
        assert mid in registry.METHODS


def test_unknown_method_and_parameter():
    with pytest.raises(registry.UsageError):
        registry.get("nope")
    with pytest.raises(registry.UsageError):
        registry.evaluate("power_series", 0, 1j, {"bogus": 1})
    with pytest.raises(registry.UsageError):
        registry.evaluate("power_series", 0, 1j, {"n": "ten"})


def test_string_parameters_are_converted():
    p = registry.get("power_series").params({"n": "30", "tol": "1e-10"})
    assert p == {"n": 30, "tol": 1e-10, "n_cap": 600}
    assert registry.evaluate("power_series", 0, 1 + 1j, {"n": "5"}).terms_used == 5


def test_unsupported_index():
    with pytest.raises(DomainError):
        registry.evaluate("spline", 2, 1j)
    with pytest.raises(DomainError):
        registry.evaluate("hermite_local_taylor", 1, 1j)


@pytest.mark.parametrize("mid", IDS)
def test_value_at_origin(mid):
    meth = registry.get(mid)
    for m in range(4):
        if meth.m_support(m):
            assert origin_ok(mid, m)
    if meth.z0 == "limit":
        m = next(m for m in range(4) if meth.m_support(m))
        assert "limit" in registry.evaluate(mid, m, 0j).flags


def test_negative_zero_imaginary_part_reflects():
    a = registry.evaluate("salzer", 1, complex(-3, -0.0)).value
    b = registry.evaluate("salzer", 1, complex(-3, 0.0)).value
    assert repr(a) == repr(b.conjugate())


def test_combined_reports_branch():
    assert "power" in registry.evaluate("combined", 0, 2 + 1j).flags
    assert "laurent" in registry.evaluate("combined", 0, 40 + 0j).flags


@pytest.mark.parametrize("mid", IDS)
@settings(max_examples=25)
@given(z=zs, m=st.integers(0, 6))
def test_invariants(mid, z, m):
    assert check_case(mid, m, z) == []
