"""Continuous-aperture focal analytics and the two-dipole coupling model.

Densifying the focused line array at fixed length L turns the element sums
into aperture integrals over s in [-L/2, L/2]. Those integrals have closed
forms for the on-axis peak of each component, and near the focus (offset
delta small against z0) the profiles collapse onto special functions:

    ex width   2 |sinc(k delta)|
    ex depth   pi sqrt(J1(k delta)^2 + H_{-1}(k delta)^2)
    ez width   pi |H_{-1}(k delta)|
    ez depth   (2 (z0 + |delta|) / z0) |sinc(k delta / 2)|

The finite-aperture integrals behind these limits are exposed for cross
checks by numerical quadrature. The module also carries the classical
mutual-impedance formulas for side-by-side and collinear half-wave dipole
pairs, the reason a collinear line is the low-coupling arrangement.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .radiator import FREE_SPACE_IMPEDANCE, Strategy
from .specfun import (
    QuadratureSpec,
    bessel_j1,
    cosine_integral,
    integrate,
    sinc,
    sine_integral,
    struve_h_minus1,
)


@dataclass(frozen=True)
class ApertureSpec:
    """Aperture of length meters focused on the axis at focus_z meters."""

    length: float
    focus_z: float
    wavenumber: float

    def __post_init__(self) -> None:
        if not (self.length > 0.0):
            raise ValueError("length must be positive")
        if not (self.focus_z > 0.0):
            raise ValueError("focus_z must be positive")
        if not (self.wavenumber > 0.0):
            raise ValueError("wavenumber must be positive")


def ex_aperture_peak(spec: ApertureSpec) -> float:
    """Focal |ex| of the aperture, normalized units; 2 in the long limit.

    Depends on geometry only through L / z0.
    """
    ratio = spec.focus_z / spec.length
    return 2.0 / math.sqrt(4.0 * ratio * ratio + 1.0)


def ez_aperture_peak(spec: ApertureSpec) -> float:
    """Focal |ez| of the aperture; approaches 2 far more slowly than ex."""
    ratio = spec.length / spec.focus_z
    return 2.0 * (1.0 - 2.0 / math.sqrt(4.0 + ratio * ratio))


def required_length(
    polarization: Strategy, focus_z: float, threshold_fraction: float
) -> float:
    """Shortest aperture whose focal peak reaches threshold_fraction of 2.

    Closed-form inversion of the peak expressions. The ez component needs
    a far longer aperture than ex for the same fraction because its peak
    grows only quadratically in L / z0 at first.
    """
    if not (focus_z > 0.0):
        raise ValueError("focus_z must be positive")
    if not (0.0 < threshold_fraction < 1.0):
        raise ValueError("threshold_fraction must lie strictly in (0, 1)")
    t = threshold_fraction
    if polarization is Strategy.FOCUS_EX:
        return 2.0 * focus_z * t / math.sqrt(1.0 - t * t)
    return 2.0 * focus_z * math.sqrt(t * (2.0 - t)) / (1.0 - t)


def ex_profile_width(delta_w: float, spec: ApertureSpec) -> float:
    """Transverse |ex| profile in the focal plane, long-aperture limit."""
    return 2.0 * abs(sinc(spec.wavenumber * delta_w))


def ex_profile_width_finite(delta_w: float, spec: ApertureSpec) -> float:
    """Transverse |ex| profile keeping the finite-aperture stretch factor.

    Exact sum of the linearized-phase aperture integral; the plain width
    profile is its L / z0 -> infinity limit.
    """
    stretch = math.sqrt(1.0 + 4.0 * (spec.focus_z / spec.length) ** 2)
    return 2.0 * abs(sinc(spec.wavenumber * delta_w / stretch)) / stretch


def ex_profile_depth(delta_d: float, spec: ApertureSpec) -> float:
    """Axial |ex| profile through the focus, long-aperture limit.

    The Bessel and Struve terms are quadrature components, so the
    magnitude is pi sqrt(J1^2 + H_{-1}^2); at delta 0 it is 2 because
    H_{-1}(0) = 2 / pi.
    """
    u = spec.wavenumber * delta_d
    j1 = bessel_j1(u)
    hm1 = struve_h_minus1(u)
    return math.pi * math.sqrt(j1 * j1 + hm1 * hm1)


def ez_profile_width(delta_w: float, spec: ApertureSpec) -> float:
    """Transverse |ez| profile in the focal plane, long-aperture limit."""
    return math.pi * abs(struve_h_minus1(spec.wavenumber * delta_w))


def ez_profile_depth(delta_d: float, spec: ApertureSpec) -> float:
    """Axial |ez| profile through the focus, long-aperture limit.

    The (z0 + |delta|) / z0 amplitude keeps the profile even in delta;
    the oscillation is a half-argument sinc magnitude, 2 sin(k delta / 2)
    over k delta, written to stay finite at delta 0.
    """
    amplitude = 2.0 * (spec.focus_z + abs(delta_d)) / spec.focus_z
    return amplitude * abs(sinc(0.5 * spec.wavenumber * delta_d))


class ProfileAxis(enum.Enum):
    """Offset direction of a beam profile: transverse width or axial depth."""

    WIDTH = "width"
    DEPTH = "depth"


def profile_integral(
    component: Strategy,
    axis: ProfileAxis,
    delta: float,
    spec: ApertureSpec,
    quad: QuadratureSpec | None = None,
) -> float:
    """Finite-aperture profile magnitude by adaptive quadrature.

    Evaluates the small-offset aperture integrals that the closed-form
    profiles approximate: the offset enters only through the linearized
    phase, so the result approaches the closed form as L / z0 grows with
    a truncation residual of order z0 / L.
    """
    z0 = spec.focus_z
    k = spec.wavenumber
    half = 0.5 * spec.length

    if component is Strategy.FOCUS_EX and axis is ProfileAxis.WIDTH:

        def integrand(s: float) -> complex:
            root = math.sqrt(z0 * z0 + s * s)
            return z0 * z0 * cmath.exp(1j * k * delta * s / root) / root**3

        return abs(integrate(integrand, -half, half, quad))

    if component is Strategy.FOCUS_EX and axis is ProfileAxis.DEPTH:

        def integrand(s: float) -> complex:
            root = math.sqrt(z0 * z0 + s * s)
            return z0 * z0 * cmath.exp(1j * k * delta * z0 / root) / root**3

        return abs(integrate(integrand, -half, half, quad))

    if component is Strategy.FOCUS_EZ and axis is ProfileAxis.WIDTH:

        def integrand(s: float) -> complex:
            root = math.sqrt(z0 * z0 + s * s)
            return z0 * abs(s) * cmath.exp(1j * k * delta * s / root) / root**3

        return abs(integrate(integrand, -half, half, quad))

    def integrand(s: float) -> complex:
        root = math.sqrt(z0 * z0 + s * s)
        return abs(s) * cmath.exp(1j * k * delta * z0 / root) / root**3

    # Signed amplitude: the axial offset rescales the whole profile.
    return (z0 + delta) * abs(integrate(integrand, -half, half, quad))


class Arrangement(enum.Enum):
    """Relative placement of a thin-dipole pair."""

    SIDE_BY_SIDE = "SideBySide"
    COLLINEAR = "Collinear"


@dataclass(frozen=True)
class DipolePairSpec:
    """Two identical thin dipoles separated along or across their axes.

    separation is axis-to-axis for side-by-side pairs and center-to-center
    for collinear pairs; collinear dipoles must leave a strictly positive
    tip gap, where the formulas below are defined.
    """

    arrangement: Arrangement
    separation: float
    dipole_length: float

    def __post_init__(self) -> None:
        if not (self.separation > 0.0):
            raise ValueError("separation must be positive")
        if not (self.dipole_length > 0.0):
            raise ValueError("dipole_length must be positive")
        if self.arrangement is Arrangement.COLLINEAR and not (
            self.separation > self.dipole_length
        ):
            raise ValueError(
                "collinear dipoles overlap: separation must exceed dipole_length"
            )


def mutual_impedance(pair: DipolePairSpec, wavenumber: float) -> complex:
    """Mutual impedance in ohms between two half-wave dipoles.

    Classical induced-EMF results for sinusoidal current, valid for
    half-wave elements only. Collinear coupling falls off much faster
    than side-by-side coupling at equal separation, which is what makes
    a collinear line the benign arrangement.
    """
    if not (wavenumber > 0.0):
        raise ValueError("wavenumber must be positive")
    ell = pair.dipole_length
    if not math.isclose(wavenumber * ell, math.pi, rel_tol=1e-6):
        raise ValueError("only half-wave dipoles are supported")
    k = wavenumber
    if pair.arrangement is Arrangement.SIDE_BY_SIDE:
        d = pair.separation
        diag = math.sqrt(d * d + ell * ell)
        u0 = k * d
        u1 = k * (diag + ell)
        u2 = k * (diag - ell)
        scale = FREE_SPACE_IMPEDANCE / (4.0 * math.pi)
        real = 2.0 * cosine_integral(u0) - cosine_integral(u1) - cosine_integral(u2)
        imag = -(2.0 * sine_integral(u0) - sine_integral(u1) - sine_integral(u2))
        return scale * complex(real, imag)
    h = pair.separation
    v0 = k * h
    v1 = 2.0 * k * (h + ell)
    v2 = 2.0 * k * (h - ell)
    log_v3 = math.log((h * h - ell * ell) / (h * h))
    scale = FREE_SPACE_IMPEDANCE / (8.0 * math.pi)
    si_term = 2.0 * sine_integral(2.0 * v0) - sine_integral(v2) - sine_integral(v1)
    ci_term = 2.0 * cosine_integral(2.0 * v0) - cosine_integral(v2) - cosine_integral(v1)
    first = si_term * complex(math.sin(v0), -math.cos(v0))
    second = 1j * math.sin(v0) * (ci_term - log_v3)
    third = -math.cos(v0) * (
        cosine_integral(v2)
        - 2.0 * cosine_integral(2.0 * v0)
        + cosine_integral(v1)
        - log_v3
    )
    return scale * (first + second + third)
