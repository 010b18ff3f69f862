import math

import numpy as np
import pytest

from qesdot.engine import solve_qes
from qesdot import spectrum
from qesdot.errors import InvalidParameterError, NoRealFieldError, ResolutionError
from qesdot.spectrum import (
    SweepError,
    SweepPoint,
    cm_energy,
    cm_levels,
    ground_state_sweep,
    is_staircase,
    lowest_relative_energy,
    total_spectrum,
)


def test_cm_energy_examples():
    assert cm_energy(0, 0, 1, 0) == 1
    assert cm_energy(1, -2, 1, 0.4) == pytest.approx(4.6, rel=1e-15)
    assert cm_energy(0, 0, 5, 8) == 5
    with pytest.raises(InvalidParameterError):
        cm_energy(-1, 0, 1, 0)


def test_cm_levels():
    assert cm_levels(0) == [(0, 0)]
    assert sorted(cm_levels(2)) == sorted([(0, -2), (0, -1), (0, 0), (0, 1), (0, 2), (1, 0)])


def test_total_spectrum_examples():
    sol = solve_qes(1, 0)[0]
    (line,) = total_spectrum([sol], w0=sol.w)
    assert line.e_total == 3 and line.m_rel == 0
    assert total_spectrum([], 0.3) == []
    lines = total_spectrum(solve_qes(1, 1), 0.2, m_range=[-1])
    assert len(lines) == 1
    assert lines[0].e_total == pytest.approx(1.06666667, abs=5e-9)
    assert lines[0].wc == pytest.approx(2 * math.sqrt(1 / 9 - 0.04), rel=1e-14)


def test_total_spectrum_unreachable():
    with pytest.raises(NoRealFieldError):
        total_spectrum(solve_qes(3, 0), 0.1)


def test_additivity_and_order():
    sols = [s for N in range(1, 6) for m in range(3) for s in solve_qes(N, m) if s.w > 0.05]
    lines = total_spectrum(sols, 0.05, cm_range=2)
    assert lines
    for ln in lines:
        assert ln.e_total == ln.e_cm + ln.e_rm
    assert [ln.e_total for ln in lines] == sorted(ln.e_total for ln in lines)


def test_zeeman_antisymmetry():
    for sol in solve_qes(4, 2):
        lines = total_spectrum([sol], 0.5 * sol.w)
        by_m = {ln.m_rel: ln.e_rm for ln in lines}
        assert by_m[2] - by_m[-2] == pytest.approx(2 * lines[0].wc, rel=1e-13)
        wc = lines[0].wc
        assert cm_energy(0, 3, sol.w, wc) - cm_energy(0, -3, sol.w, wc) == pytest.approx(3 * wc, rel=1e-13)


def test_parity_filter():
    sols = solve_qes(2, 1) + solve_qes(2, 2)
    assert {ln.m_rel for ln in total_spectrum(sols, 0.01, parity="even")} == {-2, 2}
    assert {ln.m_rel for ln in total_spectrum(sols, 0.01, parity="odd")} == {-1, 1}
    assert len(total_spectrum(sols, 0.01)) == 4
    with pytest.raises(InvalidParameterError):
        total_spectrum(sols, 0.01, parity="bosonic")


def test_lowest_relative_energy_on_qes_point():
    assert lowest_relative_energy(0, 1.0) == pytest.approx(2.0, abs=1e-6)
    assert lowest_relative_energy(1, 1 / 3, method="ritz") == pytest.approx(1.0, abs=1e-8)
    with pytest.raises(InvalidParameterError):
        lowest_relative_energy(0, 1.0, method="guess")


def test_sweep_examples():
    (p,) = ground_state_sweep(0.3, [0.0], [0, -1, -2, 1])
    assert p.m == 0 and p.wc == 0
    (p,) = ground_state_sweep(0.2, [1.0], [0])
    assert p.m == 0 and p.e_min == pytest.approx(lowest_relative_energy(0, math.hypot(0.2, 0.5)), rel=1e-14)


def test_sweep_staircase_with_transitions():
    grid = np.linspace(0, 2, 11)
    pts = ground_state_sweep(0.2, grid, [0, -1, -2, -3, -4])
    assert is_staircase(pts)
    assert pts[0].m == 0 and abs(pts[-1].m) >= 2
    assert all(p.m <= 0 for p in pts)


def test_is_staircase():
    mk = lambda ms: [SweepPoint(float(i), m, 0.0) for i, m in enumerate(ms)]
    assert is_staircase(mk([0, -1, -1, -3]))
    assert not is_staircase(mk([0, -2, -1]))


def test_sweep_error_carries_wc(monkeypatch):
    real = spectrum.fd_eigen

    def flaky(abs_m, kappa, w, grid, k, **kw):
        if w > 0.3:
            raise ResolutionError("forced", suggested_h=grid.h / 4)
        return real(abs_m, kappa, w, grid, k, **kw)

    monkeypatch.setattr(spectrum, "fd_eigen", flaky)
    with pytest.raises(SweepError) as info:
        ground_state_sweep(0.2, [0.0, 0.7, 1.0], [0])
    assert info.value.wc == 0.7
    assert isinstance(info.value.__cause__, ResolutionError)


def test_sweep_rejects_bad_input():
    with pytest.raises(InvalidParameterError):
        ground_state_sweep(0.0, [0.1], [0])
    with pytest.raises(InvalidParameterError):
        ground_state_sweep(0.2, [0.1], [])
