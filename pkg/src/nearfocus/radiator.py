"""Element and array field model for a collinear line of x-directed dipoles.

The array lies on the x-axis, centered on the origin, radiating toward +z.
Each element is an infinitesimal x-directed dipole; summing the elements'
fields at a point gives the two in-plane components

    ex = sum_n w_n z^2        exp(-j k r_n) / r_n^3
    ez = sum_n w_n (x_n - x) z exp(-j k r_n) / r_n^3

with r_n = sqrt(z^2 + (x_n - x)^2). The constant dipole prefactor is
dropped (normalized units); physical_prefactor() restores it.

Conventions:
- wavelength from frequency uses c = 3e8 m/s, the round-number convention
  that makes 6 GHz give lambda = 5 cm exactly;
- excitation weights carry exp(+j k (r_n - z0)) so the focal-point sum is
  real and positive;
- even element counts place elements at +/-(m + 1/2) d with no element at
  the origin, odd counts at integer multiples of d.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 3.0e8
FREE_SPACE_IMPEDANCE = 376.73


class Strategy(enum.Enum):
    """Excitation synthesis strategy: which field component to focus."""

    FOCUS_EX = "FocusEx"
    FOCUS_EZ = "FocusEz"


@dataclass(frozen=True)
class ArrayGeometry:
    """Linear array of n_elements spaced by spacing meters at wavelength."""

    n_elements: int
    spacing: float
    wavelength: float

    def __post_init__(self) -> None:
        if self.n_elements < 1:
            raise ValueError("n_elements must be at least 1")
        if not (self.spacing > 0.0):
            raise ValueError("spacing must be positive")
        if not (self.wavelength > 0.0):
            raise ValueError("wavelength must be positive")

    @classmethod
    def from_frequency(
        cls, n_elements: int, spacing: float, frequency: float
    ) -> "ArrayGeometry":
        if not (frequency > 0.0):
            raise ValueError("frequency must be positive")
        return cls(n_elements, spacing, SPEED_OF_LIGHT / frequency)

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength

    @property
    def positions(self) -> np.ndarray:
        """Element x-coordinates, symmetric about 0, ascending."""
        n, d = self.n_elements, self.spacing
        if n % 2 == 0:
            half = (np.arange(n // 2) + 0.5) * d
            return np.concatenate([-half[::-1], half])
        m = np.arange(-(n // 2), n // 2 + 1)
        return m * d


@dataclass(frozen=True)
class Excitation:
    """Per-element complex weights plus the strategy that produced them."""

    weights: np.ndarray
    strategy: Strategy

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=complex)
        if w.ndim != 1 or w.size < 1:
            raise ValueError("weights must be a non-empty 1-D sequence")
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class FieldSample:
    """Complex field components at one observation point."""

    ex: complex
    ez: complex
    position: tuple[float, float]


def conjugate_phases(
    geom: ArrayGeometry, focus_z: float, strategy: Strategy
) -> Excitation:
    """Unit-amplitude weights that cophase the array at (0, focus_z).

    Each element gets phase +k (sqrt(focus_z^2 + x_n^2) - focus_z), the
    conjugate of its path delay. FOCUS_EZ adds a pi offset to the negative
    half-axis so the antisymmetric ez contributions add instead of cancel.
    """
    if not (focus_z > 0.0):
        raise ValueError("focus_z must be positive")
    xs = geom.positions
    phases = geom.wavenumber * (np.sqrt(focus_z * focus_z + xs * xs) - focus_z)
    weights = np.exp(1j * phases)
    if strategy is Strategy.FOCUS_EZ:
        weights = np.where(xs < 0.0, -weights, weights)
    return Excitation(weights=weights, strategy=strategy)


def phases_degrees(excitation: Excitation) -> np.ndarray:
    """Weight phases in degrees, wrapped to [0, 360)."""
    deg = np.degrees(np.angle(excitation.weights)) % 360.0
    # exact wrap: -1e-15 rad would otherwise report as 360.0
    deg[deg >= 360.0] = 0.0
    return deg


def _check_excitation(geom: ArrayGeometry, excitation: Excitation) -> np.ndarray:
    w = excitation.weights
    if w.size != geom.n_elements:
        raise ValueError(
            f"excitation has {w.size} weights for {geom.n_elements} elements"
        )
    return w


def ex_sum(
    positions: np.ndarray,
    weights: np.ndarray,
    wavenumber: float,
    x_values: np.ndarray,
    base_sq: float,
) -> np.ndarray:
    """sum_n w_n base_sq exp(-j k r_n)/r_n^3, r_n^2 = base_sq + (x_n - x)^2.

    Shared by the free-space map (base_sq = z^2) and the two-ray terms
    (base_sq = height_diff^2 + range^2): equal input bits give equal output
    bits, which the ground-off consistency tests rely on.
    """
    dx = positions[None, :] - x_values[:, None]
    r2 = base_sq + dx * dx
    r = np.sqrt(r2)
    return base_sq * (weights[None, :] * np.exp(-1j * wavenumber * r) / (r2 * r)).sum(
        axis=1
    )


def ez_sum(
    positions: np.ndarray,
    weights: np.ndarray,
    wavenumber: float,
    x_values: np.ndarray,
    z: float,
) -> np.ndarray:
    """sum_n w_n (x_n - x) z exp(-j k r_n)/r_n^3 over a row of x values."""
    dx = positions[None, :] - x_values[:, None]
    r2 = z * z + dx * dx
    r = np.sqrt(r2)
    g = weights[None, :] * np.exp(-1j * wavenumber * r) / (r2 * r)
    return z * (g * dx).sum(axis=1)


def field_at(
    geom: ArrayGeometry, excitation: Excitation, point: tuple[float, float]
) -> FieldSample:
    """Both field components at (x, z), z > 0."""
    x, z = point
    if not (z > 0.0):
        raise ValueError("observation point requires z > 0")
    w = _check_excitation(geom, excitation)
    xs = geom.positions
    k = geom.wavenumber
    xv = np.array([float(x)])
    ex = ex_sum(xs, w, k, xv, z * z)[0]
    ez = ez_sum(xs, w, k, xv, z)[0]
    return FieldSample(ex=complex(ex), ez=complex(ez), position=(float(x), float(z)))


def axis_profile(
    geom: ArrayGeometry, excitation: Excitation, z_values: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """(ex, ez) along the x = 0 axis for an array of z values."""
    w = _check_excitation(geom, excitation)
    xs = geom.positions
    k = geom.wavenumber
    zs = np.asarray(z_values, dtype=float)
    r = np.sqrt(zs[:, None] ** 2 + xs[None, :] ** 2)
    g = w[None, :] * np.exp(-1j * k * r) / (r * r * r)
    ex = (zs * zs) * g.sum(axis=1)
    ez = zs * (g * xs[None, :]).sum(axis=1)
    return ex, ez


def peak_field_on_axis(
    geom: ArrayGeometry,
    excitation: Excitation,
    z_range: tuple[float, float],
    step: float | None = None,
) -> tuple[float, float]:
    """(z_peak, magnitude) of the focused component along x = 0.

    Samples [z_min, z_max] at `step` (default wavelength/100; must resolve
    the focal lobe, so anything coarser than wavelength/50 is rejected) and
    returns the argmax of |ex| for FOCUS_EX excitation, |ez| for FOCUS_EZ.
    """
    z_lo, z_hi = z_range
    if not (0.0 < z_lo < z_hi):
        raise ValueError("z_range must satisfy 0 < z_min < z_max")
    if step is None:
        step = geom.wavelength / 100.0
    if step > geom.wavelength / 50.0:
        raise ValueError("step must be at most wavelength/50")
    count = int(round((z_hi - z_lo) / step)) + 1
    zs = np.linspace(z_lo, z_hi, max(count, 2))
    ex, ez = axis_profile(geom, excitation, zs)
    mag = np.abs(ex) if excitation.strategy is Strategy.FOCUS_EX else np.abs(ez)
    i = int(np.argmax(mag))
    return float(zs[i]), float(mag[i])


def physical_prefactor(
    wavenumber: float, current: float = 1.0, dipole_length: float = 1.0
) -> complex:
    """Constant j eta I0 l k / (4 pi) that converts normalized fields to V/m."""
    return 1j * FREE_SPACE_IMPEDANCE * current * dipole_length * wavenumber / (
        4.0 * math.pi
    )
