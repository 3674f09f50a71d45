import math

import pytest

import cloakcyl


def test_unit_permittivity_shell_is_invisible():
    geo = cloakcyl.Geometry.in_wavelengths(0.05, 0.08, 1.0)
    sol = cloakcyl.solve_modes(geo, 3e8)
    ref = cloakcyl.bare_reference(geo.g, 3e8)
    assert cloakcyl.sigma_norm(sol, ref) == pytest.approx(1.0, rel=1e-12)


def test_unitarity_of_modes():
    sol = cloakcyl.solve_modes(cloakcyl.Geometry.in_wavelengths(0.05, 0.08, 60.0), 2.9e8)
    for a0, b0 in zip(sol.a0, sol.b0):
        assert abs(abs(1 + 2 * b0 / a0) - 1) < 1e-9


def test_cloaking_frequencies():
    f_exact = cloakcyl.optimal_frequency_ratio(model="exact")
    f_moments = cloakcyl.optimal_frequency_ratio(model="moments")
    assert abs(f_exact - 0.992) <= 0.002
    assert f_moments < f_exact


def test_pattern_is_even():
    geo = cloakcyl.Geometry.in_wavelengths(0.05, 0.08, 60.0)
    sol = cloakcyl.solve_modes(geo, 3e8)
    ref = cloakcyl.bare_reference(geo.g, 3e8)
    angles, values = cloakcyl.pattern(sol, ref, "exact", 64)
    assert len(angles) == 64
    assert values[5] == pytest.approx(values[59], rel=1e-12)


def test_sweep_table_contract():
    table = cloakcyl.sweep("freq", 0.95, 1.0, 11)
    cols = table["columns"]
    assert list(cols)[0] == "x" and list(cols)[-1] == "status"
    assert len(cols["x"]) == 11
    assert all(s == "ok" for s in cols["status"])
    assert table["config"]["var"] == "freq"


def test_degenerate_sweep_rejected():
    with pytest.raises(ValueError):
        cloakcyl.sweep("eps", 1.0, 1.0, 3)


def test_figure_and_validation():
    fig = cloakcyl.figure_dataset("fig2a", n_points=10)
    assert fig["columns"]["sigma_norm"][0] == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(ValueError):
        cloakcyl.figure_dataset("fig9")
    results = cloakcyl.validate()
    assert all(r["passed"] or r["advisory"] for r in results)


def test_invalid_geometry():
    with pytest.raises(ValueError):
        cloakcyl.Geometry(0.08, 0.05, 60.0)
    m = cloakcyl.dipole_moments(
        cloakcyl.solve_modes(cloakcyl.Geometry.in_wavelengths(0.05, 0.08, 60.0), 3e8))
    assert math.isfinite(abs(m.cp_z))
