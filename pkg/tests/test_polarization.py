"""Axial ratio of the superposed dual-polarized focus and CP sizing."""

import math

import numpy as np
import pytest

from nearfocus.fieldmap import Component, GridSpec, Normalization, evaluate_map
from nearfocus.polarization import (
    AR_LIMIT,
    axial_ratio_at_focus,
    cp_field_map,
    min_elements_for_cp,
)
from nearfocus.radiator import ArrayGeometry, Strategy, conjugate_phases

WL = 0.05


def geometry(n, spacing=0.025):
    return ArrayGeometry(n_elements=n, spacing=spacing, wavelength=WL)


def test_result_matches_direct_sums():
    z0 = 0.5
    geom = geometry(24)
    result = axial_ratio_at_focus(geom, z0)
    xs = geom.positions
    r = np.hypot(z0, xs)
    ex = float((z0 * z0 / r**3).sum())
    ez = float((np.abs(xs) * z0 / r**3).sum())
    assert result.ex_peak == pytest.approx(ex, rel=1e-14)
    assert result.ez_peak == pytest.approx(ez, rel=1e-14)
    assert result.axial_ratio == pytest.approx(ex / ez, rel=1e-14)
    assert result.n_elements == 24
    assert result.focus_z == z0


def test_single_element_has_infinite_ratio():
    result = axial_ratio_at_focus(geometry(1), 0.5)
    assert result.ez_peak == 0.0
    assert math.isinf(result.axial_ratio)
    assert not result.is_cp


def test_ratio_decreases_with_element_count():
    z0 = 0.5
    values = [axial_ratio_at_focus(geometry(n), z0).axial_ratio for n in range(2, 200)]
    assert all(a >= b for a, b in zip(values, values[1:]))


def test_is_cp_flips_at_the_limit():
    z0 = 0.5
    n_min = min_elements_for_cp(0.025, WL, z0)
    below = axial_ratio_at_focus(geometry(n_min - 1), z0)
    at = axial_ratio_at_focus(geometry(n_min), z0)
    assert not below.is_cp and below.axial_ratio > AR_LIMIT
    assert at.is_cp and at.axial_ratio <= AR_LIMIT


def test_ratio_is_invariant_under_geometric_scaling():
    # scaling spacing and focus together rescales both peaks equally
    for scale in (0.5, 3.0):
        a = axial_ratio_at_focus(geometry(40), 0.5)
        b = axial_ratio_at_focus(geometry(40, spacing=0.025 * scale), 0.5 * scale)
        assert b.axial_ratio == pytest.approx(a.axial_ratio, rel=1e-12)


def test_min_elements_validation():
    with pytest.raises(ValueError):
        min_elements_for_cp(0.0, WL, 0.5)
    with pytest.raises(ValueError):
        min_elements_for_cp(0.025, WL, -0.5)


def test_min_elements_agrees_with_scan():
    z0 = 0.25
    n_min = min_elements_for_cp(0.025, WL, z0)
    scan = next(
        n
        for n in range(1, 2000)
        if axial_ratio_at_focus(geometry(n), z0).axial_ratio <= AR_LIMIT
    )
    assert n_min == scan


def test_cp_map_slots_come_from_matching_strategies():
    geom = geometry(30)
    z0 = 0.5
    grid = GridSpec((-0.05, 0.05), (0.45, 0.55), 9, 9)
    cp = cp_field_map(geom, z0, grid)
    ref_x = evaluate_map(geom, conjugate_phases(geom, z0, Strategy.FOCUS_EX), grid)
    ref_z = evaluate_map(geom, conjugate_phases(geom, z0, Strategy.FOCUS_EZ), grid)
    assert np.array_equal(cp.ex, ref_x.ex)
    assert np.array_equal(cp.ez, ref_z.ez)
    assert cp.normalization is Normalization.NONE
    total = cp.magnitude(Component.TOTAL)
    assert cp.peak_value == pytest.approx(float(total.max()))


def test_cp_map_focal_cell_reproduces_ratio():
    geom = geometry(30)
    z0 = 0.5
    grid = GridSpec((0.0, 0.0), (z0, z0), 1, 1)
    cp = cp_field_map(geom, z0, grid)
    result = axial_ratio_at_focus(geom, z0)
    assert abs(cp.ex[0, 0]) == pytest.approx(result.ex_peak, rel=1e-12)
    assert abs(cp.ez[0, 0]) == pytest.approx(result.ez_peak, rel=1e-12)
