"""Two-ray ground reflection for the focused array.

Every element reaches a receiver cell by a direct ray and a ground
bounce. With the array at height h_t, the receiver at h_r, and the grid's
z axis serving as the horizontal range, the direct slant base is
(h_t - h_r)^2 + z^2 and the reflected one (h_t + h_r)^2 + z^2; the bounce
is weighted per element by the reflection coefficient of its grazing
angle. Horizontal polarization reuses the free-space ex kernel with the
lifted base, so switching the ground off reproduces the line-of-sight map
bit for bit; vertical polarization carries the |x_n| magnitude factor in
place of the signed lateral term.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .fieldmap import FieldMap, GridSpec, Normalization
from .radiator import (
    SPEED_OF_LIGHT,
    ArrayGeometry,
    Excitation,
    Strategy,
    _check_excitation,
    ex_sum,
)


@dataclass(frozen=True)
class Dielectric:
    """Ground with real relative permittivity of at least 1."""

    epsilon: float

    def __post_init__(self) -> None:
        if not (self.epsilon >= 1.0):
            raise ValueError("relative permittivity must be at least 1")


@dataclass(frozen=True)
class Metal:
    """Perfectly conducting ground, the infinite-permittivity limit."""


Ground = Dielectric | Metal


class Polarization(enum.Enum):
    """Receiver field component the two-ray sum is evaluated for."""

    HORIZONTAL = "Horizontal"
    VERTICAL = "Vertical"


class GrazingConvention(enum.Enum):
    """How the per-element grazing angle is formed.

    SLANT_RATIO takes arctan of reflected-over-direct slant lengths,
    sqrt((h_t+h_r)^2 + x_n^2) over sqrt(L1^2 + x_n^2); HEIGHT_OVER_RANGE
    is the specular-triangle angle arctan((h_t+h_r) / range), offered for
    sensitivity studies.
    """

    SLANT_RATIO = "SlantRatio"
    HEIGHT_OVER_RANGE = "HeightOverRange"


@dataclass(frozen=True)
class TwoRayEnvironment:
    """Heights, ground material, and nominal horizontal range."""

    h_t: float
    h_r: float
    ground: Ground
    horizontal_range: float

    def __post_init__(self) -> None:
        if not (self.h_t > 0.0 and self.h_r > 0.0):
            raise ValueError("antenna heights must be positive")
        if not (self.horizontal_range > 0.0):
            raise ValueError("horizontal_range must be positive")
        if not isinstance(self.ground, (Dielectric, Metal)):
            raise TypeError("ground must be Dielectric or Metal")


@dataclass(frozen=True)
class RayPair:
    """Direct and reflected ray data for one element offset."""

    los_length: float
    reflected_length: float
    path_diff: float
    phase_diff: float
    delay: float
    grazing_angle: float


def reflection_coefficient(
    theta: float, ground: Ground, polarization: Polarization
) -> float:
    """Plane-ground reflection coefficient (sin(theta) - X)/(sin(theta) + X).

    X is sqrt(eps - cos^2(theta)) for horizontal polarization and the
    same over eps for vertical. Metal is the exact infinite-permittivity
    limit (-1 horizontal, +1 vertical); eps = 1 reflects nothing and
    returns exactly 0 so line-of-sight results stay bit-identical.
    """
    if not (0.0 < theta <= 0.5 * math.pi):
        raise ValueError("grazing angle must lie in (0, pi/2]")
    if isinstance(ground, Metal):
        return -1.0 if polarization is Polarization.HORIZONTAL else 1.0
    eps = ground.epsilon
    if eps == 1.0:
        return 0.0
    x = math.sqrt(eps - math.cos(theta) ** 2)
    if polarization is Polarization.VERTICAL:
        x /= eps
    s = math.sin(theta)
    return (s - x) / (s + x)


def ray_geometry(
    env: TwoRayEnvironment, element_offset: float, wavelength: float
) -> RayPair:
    """Direct/reflected lengths, phase difference, delay, and grazing angle.

    Lengths are for the element at the given lateral offset: the center
    formulas sqrt((h_t -+ h_r)^2 + L_g^2) with the offset appended in
    quadrature. The grazing angle uses the slant-ratio form.
    """
    if not (wavelength > 0.0):
        raise ValueError("wavelength must be positive")
    off_sq = element_offset * element_offset
    lg_sq = env.horizontal_range * env.horizontal_range
    los = math.sqrt((env.h_t - env.h_r) ** 2 + lg_sq + off_sq)
    reflected = math.sqrt((env.h_t + env.h_r) ** 2 + lg_sq + off_sq)
    path_diff = reflected - los
    theta = math.atan(math.sqrt((env.h_t + env.h_r) ** 2 + off_sq) / los)
    return RayPair(
        los_length=los,
        reflected_length=reflected,
        path_diff=path_diff,
        phase_diff=2.0 * math.pi * path_diff / wavelength,
        delay=path_diff / SPEED_OF_LIGHT,
        grazing_angle=theta,
    )


def _gamma_vector(
    theta: np.ndarray, ground: Ground, polarization: Polarization
) -> np.ndarray:
    """reflection_coefficient over an angle array (no eps == 1 callers)."""
    if isinstance(ground, Metal):
        value = -1.0 if polarization is Polarization.HORIZONTAL else 1.0
        return np.full_like(theta, value)
    x = np.sqrt(ground.epsilon - np.cos(theta) ** 2)
    if polarization is Polarization.VERTICAL:
        x = x / ground.epsilon
    s = np.sin(theta)
    return (s - x) / (s + x)


def _v_sum(
    positions: np.ndarray,
    weights: np.ndarray,
    wavenumber: float,
    x_values: np.ndarray,
    base_sq: float,
) -> np.ndarray:
    """sum_n w_n |x_n| sqrt(base_sq) exp(-j k r_n)/r_n^3 over a row of x."""
    dx = positions[None, :] - x_values[:, None]
    r2 = base_sq + dx * dx
    r = np.sqrt(r2)
    g = weights[None, :] * np.exp(-1j * wavenumber * r) / (r2 * r)
    return math.sqrt(base_sq) * (np.abs(positions)[None, :] * g).sum(axis=1)


def two_ray_field(
    geom: ArrayGeometry,
    excitation: Excitation,
    env: TwoRayEnvironment,
    grid: GridSpec,
    polarization: Polarization,
    grazing: GrazingConvention = GrazingConvention.SLANT_RATIO,
) -> FieldMap:
    """Polarized two-ray field over the grid.

    The grid's z coordinate is the horizontal range of each column; the
    environment's nominal horizontal_range only feeds single-ray
    diagnostics. The horizontal component fills the map's ex slot, the
    vertical one the ez slot; the other slot stays zero.

    The vertical sum's |x_n| factor already supplies the antisymmetry
    compensation a FocusEz excitation encodes in its signs, so those sign
    flips are stripped here; path-only (FocusEx-style) weights pass
    through unchanged. When the ground reflects nothing (eps = 1) the
    bounce term is skipped entirely, leaving the direct sum bit-identical
    to the free-space map.
    """
    w = _check_excitation(geom, excitation)
    xs = geom.positions
    k = geom.wavenumber
    xv = grid.x_values
    if polarization is Polarization.VERTICAL:
        kernel = _v_sum
        if excitation.strategy is Strategy.FOCUS_EZ:
            w = np.where(xs < 0.0, -w, w)
    else:
        kernel = ex_sum
    diff_sq = (env.h_t - env.h_r) ** 2
    sum_sq = (env.h_t + env.h_r) ** 2
    skip_reflected = isinstance(env.ground, Dielectric) and env.ground.epsilon == 1.0
    values = np.empty((grid.nx, grid.nz), dtype=complex)
    for j, z in enumerate(grid.z_values):
        base_direct = diff_sq + z * z
        col = kernel(xs, w, k, xv, base_direct)
        if not skip_reflected:
            if grazing is GrazingConvention.SLANT_RATIO:
                theta = np.arctan(
                    np.sqrt(sum_sq + xs * xs) / np.sqrt(base_direct + xs * xs)
                )
            else:
                theta = np.full_like(xs, math.atan((env.h_t + env.h_r) / z))
            gamma = _gamma_vector(theta, env.ground, polarization)
            col = col + kernel(xs, w * gamma, k, xv, sum_sq + z * z)
        values[:, j] = col
    zeros = np.zeros_like(values)
    if polarization is Polarization.HORIZONTAL:
        ex, ez = values, zeros
    else:
        ex, ez = zeros, values
    peak = float(np.abs(values).max())
    return FieldMap(grid, ex, ez, Normalization.NONE, peak)
