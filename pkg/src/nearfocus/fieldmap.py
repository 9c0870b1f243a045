"""Field maps on rectangular grids and focal-spot metrology.

A map holds both complex components on an (nx, nz) grid. Metrics are read
off the two grid lines through the strongest cell: the peak is refined by
a three-point parabola, half-power crossings are found by linear
interpolation walking outward from the peak, the strongest sidelobe is
the largest local maximum outside the half-power span of the width cut,
and the focal shift is target z minus actual peak z (positive when the
spot pulls toward the array).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .radiator import (
    ArrayGeometry,
    Excitation,
    Strategy,
    _check_excitation,
    ex_sum,
    ez_sum,
)


class Normalization(enum.Enum):
    """Scaling state of a field map."""

    NONE = "None"
    PEAK_NEAR_FOCUS = "PeakNearFocus"


class Component(enum.Enum):
    """Field quantity a metric or plot refers to."""

    EX = "Ex"
    EZ = "Ez"
    TOTAL = "Total"


@dataclass(frozen=True)
class GridSpec:
    """Rectangular observation grid; a 1-count axis pins that coordinate.

    Axis samples are evenly spaced over the closed range; an axis with a
    single sample sits at the lower bound, so min == max is allowed there.
    """

    x_range: tuple[float, float]
    z_range: tuple[float, float]
    nx: int
    nz: int

    def __post_init__(self) -> None:
        for name, (lo, hi), n in (
            ("x", self.x_range, self.nx),
            ("z", self.z_range, self.nz),
        ):
            if n < 1:
                raise ValueError(f"n{name} must be at least 1")
            if n >= 2 and not (lo < hi):
                raise ValueError(f"{name}_range must satisfy min < max")
            if n == 1 and not (lo <= hi):
                raise ValueError(f"{name}_range must satisfy min <= max")
        if not (self.z_range[0] > 0.0):
            raise ValueError("z_min must be positive")

    @property
    def x_values(self) -> np.ndarray:
        return np.linspace(self.x_range[0], self.x_range[1], self.nx)

    @property
    def z_values(self) -> np.ndarray:
        return np.linspace(self.z_range[0], self.z_range[1], self.nz)


@dataclass(frozen=True)
class FieldMap:
    """Complex components on a grid, each shaped (nx, nz).

    peak_value records the maximum total magnitude: the global maximum
    for raw maps, the normalizing divisor after peak normalization.
    """

    grid: GridSpec
    ex: np.ndarray
    ez: np.ndarray
    normalization: Normalization
    peak_value: float

    def __post_init__(self) -> None:
        shape = (self.grid.nx, self.grid.nz)
        if self.ex.shape != shape or self.ez.shape != shape:
            raise ValueError(f"component arrays must have shape {shape}")

    def magnitude(self, component: Component) -> np.ndarray:
        """|component| over the grid; Total is the quadrature sum."""
        if component is Component.EX:
            return np.abs(self.ex)
        if component is Component.EZ:
            return np.abs(self.ez)
        return np.sqrt(np.abs(self.ex) ** 2 + np.abs(self.ez) ** 2)


@dataclass(frozen=True)
class BeamMetrics:
    """Focal-spot measurements from the grid cuts through the peak.

    Widths are transverse (x cut), depths axial (z cut); one-sided values
    are half the full crossing span. A peak on the grid boundary cannot
    be refined or measured reliably, so peak_interior flags it and the
    span fields may come back NaN when a crossing never drops below the
    half-power level inside the grid.
    """

    peak_pos: tuple[float, float]
    peak_mag: float
    halfpower_width_one_sided: float
    halfpower_width_full: float
    halfpower_depth_one_sided: float
    halfpower_depth_full: float
    strongest_sidelobe_db: float
    focal_shift: float
    peak_interior: bool


def evaluate_map(
    geom: ArrayGeometry, excitation: Excitation, grid: GridSpec
) -> FieldMap:
    """Both components over the grid, column by column in z.

    Columns run through the same summation kernels as single-point
    evaluation, so a 1 x 1 grid reproduces field_at exactly and repeated
    runs are bit-identical.
    """
    w = _check_excitation(geom, excitation)
    xs = geom.positions
    k = geom.wavenumber
    xv = grid.x_values
    ex = np.empty((grid.nx, grid.nz), dtype=complex)
    ez = np.empty_like(ex)
    for j, z in enumerate(grid.z_values):
        ex[:, j] = ex_sum(xs, w, k, xv, z * z)
        ez[:, j] = ez_sum(xs, w, k, xv, z)
    total_sq = np.abs(ex) ** 2 + np.abs(ez) ** 2
    return FieldMap(grid, ex, ez, Normalization.NONE, float(np.sqrt(total_sq.max())))


def normalize_peak_near_focus(
    fmap: FieldMap, target_focus: tuple[float, float], wavelength: float
) -> FieldMap:
    """Rescale so the strongest total field near the target focus is 1.

    "Near" is a window of 2 wavelengths around the target on both axes,
    which keeps cells close to the array elements from setting the scale.
    Idempotent: a normalized map renormalizes to itself.
    """
    if not (wavelength > 0.0):
        raise ValueError("wavelength must be positive")
    x0, z0 = target_focus
    in_x = np.abs(fmap.grid.x_values - x0) <= 2.0 * wavelength
    in_z = np.abs(fmap.grid.z_values - z0) <= 2.0 * wavelength
    if not (in_x.any() and in_z.any()):
        raise ValueError("no grid cells within 2 wavelengths of the target focus")
    total = fmap.magnitude(Component.TOTAL)
    peak = float(total[np.ix_(in_x, in_z)].max())
    if not (peak > 0.0):
        raise ValueError("zero field in the normalization window")
    return FieldMap(
        fmap.grid,
        fmap.ex / peak,
        fmap.ez / peak,
        Normalization.PEAK_NEAR_FOCUS,
        peak,
    )


def _parabolic_refine(axis: np.ndarray, y: np.ndarray, i: int) -> tuple[float, float]:
    """Vertex of the parabola through the three samples around index i."""
    if i <= 0 or i >= len(y) - 1:
        return float(axis[i]), float(y[i])
    y0, y1, y2 = float(y[i - 1]), float(y[i]), float(y[i + 1])
    denom = y0 - 2.0 * y1 + y2
    if denom >= 0.0:
        # flat or non-concave triple: keep the raw sample
        return float(axis[i]), float(y1)
    shift = 0.5 * (y0 - y2) / denom
    step = float(axis[i + 1] - axis[i])
    return float(axis[i]) + shift * step, y1 - 0.25 * (y0 - y2) * shift


def _cross_left(axis: np.ndarray, y: np.ndarray, i_peak: int, level: float) -> float:
    i = i_peak
    while i > 0 and y[i] > level:
        i -= 1
    if y[i] > level:
        return math.nan
    return float(np.interp(level, [y[i], y[i + 1]], [axis[i], axis[i + 1]]))


def _cross_right(axis: np.ndarray, y: np.ndarray, i_peak: int, level: float) -> float:
    j = i_peak
    while j < len(y) - 1 and y[j] > level:
        j += 1
    if y[j] > level:
        return math.nan
    return float(np.interp(level, [y[j], y[j - 1]], [axis[j], axis[j - 1]]))


def _sidelobe_db(
    axis: np.ndarray, y: np.ndarray, left: float, right: float, peak: float
) -> float:
    """Strongest local maximum outside [left, right], in dB below peak."""
    if math.isnan(left) or math.isnan(right):
        return math.nan
    best = 0.0
    for m in range(1, len(y) - 1):
        if left <= axis[m] <= right:
            continue
        if y[m] > y[m - 1] and y[m] > y[m + 1] and y[m] > best:
            best = float(y[m])
    if best <= 0.0:
        return -math.inf
    return 20.0 * math.log10(best / peak)


def extract_metrics(
    fmap: FieldMap, component: Component, target_focus: tuple[float, float]
) -> BeamMetrics:
    """Spot metrics for one component around its strongest grid cell."""
    mag = fmap.magnitude(component)
    nx, nz = mag.shape
    i, j = (int(v) for v in np.unravel_index(int(np.argmax(mag)), mag.shape))
    xv = fmap.grid.x_values
    zv = fmap.grid.z_values
    width_cut = mag[:, j]
    depth_cut = mag[i, :]
    x_peak, val_x = _parabolic_refine(xv, width_cut, i)
    z_peak, val_z = _parabolic_refine(zv, depth_cut, j)
    peak_mag = max(val_x, val_z)

    level_w = val_x / math.sqrt(2.0)
    wl = _cross_left(xv, width_cut, i, level_w)
    wr = _cross_right(xv, width_cut, i, level_w)
    width_full = wr - wl

    level_d = val_z / math.sqrt(2.0)
    dl = _cross_left(zv, depth_cut, j, level_d)
    dr = _cross_right(zv, depth_cut, j, level_d)
    depth_full = dr - dl

    return BeamMetrics(
        peak_pos=(x_peak, z_peak),
        peak_mag=peak_mag,
        halfpower_width_one_sided=0.5 * width_full,
        halfpower_width_full=width_full,
        halfpower_depth_one_sided=0.5 * depth_full,
        halfpower_depth_full=depth_full,
        strongest_sidelobe_db=_sidelobe_db(xv, width_cut, wl, wr, peak_mag),
        focal_shift=target_focus[1] - z_peak,
        peak_interior=0 < i < nx - 1 and 0 < j < nz - 1,
    )


def _peak_ladders(
    focus_z: float, spacing: float, n_max: int
) -> tuple[np.ndarray, np.ndarray]:
    """Focal peak_ex[n-1], peak_ez[n-1] for every n = 1..n_max.

    Conjugate weights align every term at the focus, so the peaks are
    plain positive sums, independent of wavelength; the even and odd
    element families each grow by cumulative pair sums.
    """
    d, z0 = spacing, focus_z
    ex = np.empty(n_max)
    ez = np.empty(n_max)
    n_even = n_max // 2
    if n_even > 0:
        xe = (np.arange(n_even) + 0.5) * d
        re = np.hypot(z0, xe)
        ex[1 : 2 * n_even : 2] = np.cumsum(2.0 * z0 * z0 / re**3)
        ez[1 : 2 * n_even : 2] = np.cumsum(2.0 * xe * z0 / re**3)
    ex[0] = 1.0 / z0
    ez[0] = 0.0
    n_odd = (n_max - 1) // 2
    if n_odd > 0:
        xo = np.arange(1, n_odd + 1) * d
        ro = np.hypot(z0, xo)
        ex[2 : 2 * n_odd + 1 : 2] = 1.0 / z0 + np.cumsum(2.0 * z0 * z0 / ro**3)
        ez[2 : 2 * n_odd + 1 : 2] = np.cumsum(2.0 * xo * z0 / ro**3)
    return ex, ez


def convergence_sweep(
    focus_z: float, spacing: float, wavelength: float, n_list: list[int]
) -> list[tuple[int, float, float]]:
    """(N, peak_ex, peak_ez) at the focus for each element count.

    Normalized units: the large-N asymptote of peak_ex is 2 / spacing.
    """
    if not (focus_z > 0.0):
        raise ValueError("focus_z must be positive")
    if not (spacing > 0.0 and wavelength > 0.0):
        raise ValueError("spacing and wavelength must be positive")
    ns = [int(n) for n in n_list]
    if not ns:
        return []
    if any(n < 1 for n in ns):
        raise ValueError("element counts must be at least 1")
    if ns != sorted(ns):
        raise ValueError("n_list must be sorted ascending")
    ex, ez = _peak_ladders(focus_z, spacing, ns[-1])
    return [(n, float(ex[n - 1]), float(ez[n - 1])) for n in ns]


def first_threshold_n(
    focus_z: float,
    spacing: float,
    wavelength: float,
    strategy: Strategy,
    fraction: float = 0.9,
    n_cap: int = 1 << 22,
) -> int:
    """Smallest N whose focal peak reaches fraction of the 2 / spacing limit."""
    if not (0.0 < fraction < 1.0):
        raise ValueError("fraction must lie strictly in (0, 1)")
    if n_cap < 1:
        raise ValueError("n_cap must be at least 1")
    target = fraction * 2.0 / spacing
    n_max = min(1024, n_cap)
    while True:
        ex, ez = _peak_ladders(focus_z, spacing, n_max)
        vals = ex if strategy is Strategy.FOCUS_EX else ez
        hits = np.nonzero(vals >= target)[0]
        if hits.size:
            return int(hits[0]) + 1
        if n_max >= n_cap:
            raise ValueError(f"threshold not reached within {n_cap} elements")
        n_max = min(4 * n_max, n_cap)
