import math

import pytest
from hypothesis import given, strategies as st

from qesdot.engine import TABLE1_ROWS, solve_qes, table1_frequency
from qesdot.errors import InvalidParameterError, NoRealFieldError
from qesdot.field import (
    confinement_from_cyclotron,
    constraint_for,
    constraint_for_field,
    cyclotron_from_w,
    zero_field_constraint,
)
from qesdot.units import PhysicalParams, effective_units

GAAS = effective_units(PhysicalParams(0.067, 12.4))


def test_cyclotron_examples():
    assert cyclotron_from_w(5, 3) == 8
    assert cyclotron_from_w(1, 1) == 0
    with pytest.raises(NoRealFieldError):
        cyclotron_from_w(0.05392578, 0.1)
    with pytest.raises(InvalidParameterError):
        cyclotron_from_w(0, 0)


def test_constraint_examples():
    assert constraint_for(solve_qes(1, 0)[0], 0.6).wc == pytest.approx(1.6, rel=1e-15)
    c = constraint_for(solve_qes(1, 1)[0], 0.2)
    assert c.wc == pytest.approx(0.53333333, abs=5e-9)
    assert c.wc == pytest.approx(2 * math.sqrt(1 / 9 - 0.04), rel=1e-14)
    z = constraint_for(solve_qes(2, 0)[0], 1 / 6)
    assert z.wc == 0 and z.ell0 == pytest.approx(math.sqrt(6), rel=1e-14)
    assert c.ell0 is None and c.B is None


def test_no_real_field_propagates():
    with pytest.raises(NoRealFieldError):
        constraint_for(solve_qes(3, 0)[0], 0.1)


def test_tesla_conversion():
    c = constraint_for(solve_qes(1, 0)[0], 0.6, GAAS)
    assert c.B == pytest.approx(GAAS.field_from_cyclotron(1.6), rel=1e-15)
    assert GAAS.cyclotron_from_field(c.B) == pytest.approx(1.6, rel=1e-12)


@given(st.floats(1e-3, 10), st.floats(0, 1))
def test_consistency(w, frac):
    w0 = w * frac
    wc = cyclotron_from_w(w, w0)
    assert math.hypot(w0, wc / 2) == pytest.approx(w, rel=1e-12)


@given(st.floats(1e-3, 10), st.floats(1e-6, 1), st.floats(1e-6, 1))
def test_monotone_in_w(w0, d1, d2):
    a, b = w0 * (1 + d1), w0 * (1 + d1 + d2)
    assert cyclotron_from_w(a, w0) < cyclotron_from_w(b, w0)


@pytest.mark.parametrize("j,n", TABLE1_ROWS)
@pytest.mark.parametrize("m", range(4))
def test_table1_half_wc_column(j, n, m):
    sol = solve_qes(j, m)[n]
    w = table1_frequency(j, n, m)
    w0 = 0.5 * w
    assert constraint_for(sol, w0).wc / 2 == pytest.approx(math.sqrt(w**2 - w0**2), rel=1e-10)


def test_field_to_confinement_round_trip():
    sol = solve_qes(3, 1)[0]
    for w0 in (0.1 * sol.w, 0.3 * sol.w, 0.9 * sol.w):
        c = constraint_for(sol, w0, GAAS)
        back = constraint_for_field(sol, c.B, GAAS)
        assert back.w0 == pytest.approx(w0, abs=1e-12 * sol.w)
        assert back.wc == pytest.approx(c.wc, rel=1e-12)


def test_field_too_strong():
    sol = solve_qes(1, 0)[0]
    with pytest.raises(NoRealFieldError):
        confinement_from_cyclotron(sol.w, 3 * sol.w)


def test_zero_field_branch():
    sol = solve_qes(4, 0)[1]
    z = zero_field_constraint(sol, GAAS)
    assert z.wc == 0 and z.B == 0 and z.w0 == sol.w
    assert z.ell0 == pytest.approx(1 / math.sqrt(sol.w), rel=1e-15)
