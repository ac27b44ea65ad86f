import math
import random
import zlib

import pytest
from hypothesis import given, settings, strategies as st

from incgamma import gridtaylor, oracle, series, xprec
from incgamma.errors import DomainError, FormatError, GridBuildError, TargetUnreachable


@pytest.fixture(scope="module")
def grid():
    return gridtaylor.build_grid(gridtaylor.DEFAULT_GRID)


@pytest.fixture(scope="module")
def small():
    return gridtaylor.build_grid(gridtaylor.GridSpec(2.0, -1, 1, 1, 12))


def digits(value, m, z):
    return oracle.digits_of(value, oracle.oracle_eval(m, z))


def in_domain(rng):
    return complex(rng.uniform(-34.5, 19.5), rng.uniform(-37.5, 37.5))


def test_default_and_dense_specs():
    sp = gridtaylor.DEFAULT_GRID
    assert (sp.s, sp.k_min, sp.k_max, sp.l_max, sp.J_max) == (3.0, -11, 6, 12, 30)
    d = gridtaylor.DENSE_GRID
    assert d.s == 1.0 and d.k_min * d.s == -33 and d.k_max * d.s == 18 and d.l_max * d.s == 36
    assert (d.k_max - d.k_min) * d.l_max == 9 * (sp.k_max - sp.k_min) * sp.l_max


def test_spec_limits():
    with pytest.raises(DomainError):
        gridtaylor.GridSpec(J_max=65)
    with pytest.raises(DomainError):
        gridtaylor.GridSpec(0.0)
    with pytest.raises(DomainError):
        gridtaylor.GridSpec(0.01, -2000, 2000, 300)


def test_single_node_at_origin():
    g = gridtaylor.build_grid(gridtaylor.GridSpec(1.0, 0, 0, 0, 12))
    for j in range(13):
        v = g.stored(0, 0, j)
        assert xprec.to_double(v) == complex(1 / (2 * j + 1))
        assert abs(float(v.real) * (2 * j + 1) - 1) < 1e-16


def test_build_refuses_nodes_beyond_oracle():
    with pytest.raises(GridBuildError) as info:
        gridtaylor.build_grid(gridtaylor.GridSpec(10.0, 4, 6, 0, 2))
    assert (6, 0) in info.value.nodes and (3, 0) not in info.value.nodes


def test_stored_values_satisfy_recurrence(grid):
    sp = grid.spec
    for k in (sp.k_min, 0, sp.k_max):
        for l in (0, sp.l_max):
            assert gridtaylor.node_residual(grid.node(k, l), grid.values[grid.node_index(k, l)]) \
                <= gridtaylor.RESIDUAL_TOL
    v = grid.stored(-11, 12, 7)
    ref = oracle.oracle_eval(7, complex(-33, 36))
    assert oracle.digits_of(v, ref) >= 20


def test_round_trip_byte_identical(small, tmp_path):
    p1, p2 = tmp_path / "a.grid", tmp_path / "b.grid"
    gridtaylor.save_grid(small, p1)
    loaded = gridtaylor.load_grid(p1)
    gridtaylor.save_grid(loaded, p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert loaded.spec == small.spec and loaded.digits == small.digits
    assert all(a.real.hi == b.real.hi and a.real.lo == b.real.lo and a.imag.hi == b.imag.hi
               and a.imag.lo == b.imag.lo
               for ra, rb in zip(loaded.values, small.values) for a, b in zip(ra, rb))
    first = p1.read_bytes().split(b"\n")
    assert first[0] == b"FMGRID/1" and first[-2].startswith(b"CRC32 ")


def _resign(body: bytes) -> bytes:
    return body + b"CRC32 %08x\n" % (zlib.crc32(body) & 0xFFFFFFFF)


def test_corruption_detected(small, tmp_path):
    p = tmp_path / "g.grid"
    gridtaylor.save_grid(small, p)
    data = p.read_bytes()
    body = data[:data.rstrip(b"\n").rfind(b"\n") + 1]
    # change one digit of one stored value, keeping the line well formed
    lines = body.split(b"\n")
    tok = lines[4].split(b" ")
    d = tok[10]
    i = 3
    tok[10] = d[:i] + (b"1" if d[i:i + 1] != b"1" else b"2") + d[i + 1:]
    lines[4] = b" ".join(tok)
    bad = b"\n".join(lines)
    with pytest.raises(FormatError, match="checksum"):
        gridtaylor.parse_grid(bad + data[len(body):])
    with pytest.raises(FormatError, match="recurrence"):
        gridtaylor.parse_grid(_resign(bad))


@pytest.mark.parametrize("data", [b"", b"FMGRID/1\n", b"FMGRID/2\n1 0 0 0 0 25\nCRC32 0\n",
                                  b"garbage\nCRC32 00000000\n"])
def test_malformed_files(data):
    with pytest.raises(FormatError):
        gridtaylor.parse_grid(data)


def test_truncated_file(small, tmp_path):
    p = tmp_path / "g.grid"
    gridtaylor.save_grid(small, p)
    data = p.read_bytes()
    with pytest.raises(FormatError):
        gridtaylor.parse_grid(data[:len(data) // 2])
    body = data[:data.rstrip(b"\n").rfind(b"\n") + 1]
    short = b"\n".join(body.split(b"\n")[:-2]) + b"\n"
    with pytest.raises(FormatError):
        gridtaylor.parse_grid(_resign(short))


def test_node_hit_uses_one_term(grid):
    r = gridtaylor.grid_eval(0, 6 + 9j, 14, grid)
    assert r.terms_used == 1
    assert r.best() == grid.stored(2, 3, 0)


def test_nearest_tie_break(grid):
    assert grid.nearest(1.5 + 1.5j) == (0, 0)
    assert grid.nearest(-1.5 + 4.5j) == (-1, 1)
    assert grid.nearest(100 + 100j) == (6, 12)


def test_worst_case_offset():
    for g in (gridtaylor.DEFAULT_GRID, gridtaylor.DENSE_GRID):
        tg = gridtaylor.TaylorGrid(g, ())
        rng = random.Random(5)
        s = g.s
        worst = 0.0
        for _ in range(4000):
            z = complex(rng.uniform(g.k_min * s, g.k_max * s), rng.uniform(0, g.l_max * s))
            worst = max(worst, abs(z - tg.node(*tg.nearest(z))))
        corner = complex(s / 2, s / 2)
        assert abs(corner - tg.node(*tg.nearest(corner))) == pytest.approx(s / math.sqrt(2))
        assert worst <= s / math.sqrt(2) + 1e-12


def test_accuracy_meets_target(grid):
    rng = random.Random(11)
    for i in range(600):
        z = in_domain(rng)
        m = rng.randint(0, 6)
        td = rng.choice((8, 10, 12, 14, 15, 16, 17))
        r = gridtaylor.grid_eval(m, z, td, grid)
        assert "target_unreachable" not in r.flags
        assert digits(r.best(), m, z) >= min(td, oracle.DIGITS_CAP) - 0.5, (m, z, td)


def test_derivative_ladder(grid):
    h = 1e-4
    for z in (2 + 1j, -7 + 4j, 10 + 20j, -20 + 3j):
        f = lambda w: gridtaylor.grid_eval(0, w, 17, grid).best()
        deriv = (f(z + h) - f(z - h)) / (2 * h)
        want = -gridtaylor.grid_eval(1, z, 17, grid).best()
        assert oracle.digits_of(deriv, want) >= 7


def test_fallback_outside_rectangle(grid):
    r = gridtaylor.grid_eval(0, 25 + 30j, 14, grid)
    assert "laurent_fallback" in r.flags
    assert not grid.contains(19.6 + 0j) and grid.contains(19.4 + 37.4j)


def test_fallback_continuity(grid):
    for z in (19.6 + 16j, 19.6 + 30j, -34.6 + 5j, -10 + 37.6j, 5 + 37.6j):
        # a local grid that extends past the default rectangle around z
        k, l = round(z.real / 3), round(z.imag / 3)
        wide = gridtaylor.build_grid(gridtaylor.GridSpec(3.0, k - 1, k + 1, l + 1, 30))
        assert abs(z) >= 25 and wide.contains(z) and not grid.contains(z)
        for td in (10, 14, 17):
            fb = gridtaylor.grid_eval(0, z, td, grid)
            assert "laurent_fallback" in fb.flags
            inside = gridtaylor.grid_eval(0, z, td, wide)
            assert oracle.digits_of(fb.best(), inside.best()) >= min(td, 12)


def test_terms_needed_examples(grid):
    corners = [complex(x + 1.5, y + 1.5) for x in range(-33, 18, 3) for y in range(0, 36, 3)]
    assert max(gridtaylor.terms_needed(0, z, 14, grid) for z in corners) <= 23 + 2
    assert gridtaylor.terms_needed(0, 6 + 9j, 14, grid) == 1
    with pytest.raises(TargetUnreachable):
        for z in corners:
            gridtaylor.terms_needed(5, z, 17, grid)


def test_unreachable_target_returns_best_value(grid):
    z = -31.5 + 34.5j
    r = gridtaylor.grid_eval(5, z, 17, grid)
    assert "target_unreachable" in r.flags
    assert digits(r.best(), 5, z) >= 12
    assert r.error_estimate >= 10.0 ** -17.5


def test_index_range(grid):
    with pytest.raises(DomainError):
        gridtaylor.grid_eval(31, 1 + 1j, 10, grid)
    with pytest.raises(DomainError):
        gridtaylor.grid_eval(1.5, 1 + 1j, 10, grid)


@settings(max_examples=40)
@given(st.floats(-34, 19), st.floats(-37, 37), st.integers(0, 8))
def test_conjugate_symmetry(grid, x, y, m):
    z = complex(x, y)
    a = gridtaylor.grid_eval(m, z, 12, grid)
    b = gridtaylor.grid_eval(m, z.conjugate(), 12, grid)
    assert a.value == b.value.conjugate()
