"""Near-field focusing toolkit for collinear horizontal-dipole arrays.

Conjugate-phase excitation synthesis, dual-polarization field maps and
focal metrics, closed-form beam profiles with quadrature cross-checks,
circular-polarization sizing, mutual-impedance estimates, and two-ray
ground-reflection studies. All field quantities are in the normalized
units of the element summations; physical_prefactor converts to V/m.
"""

from .aperture import (
    ApertureSpec,
    Arrangement,
    DipolePairSpec,
    ProfileAxis,
    ex_aperture_peak,
    ex_profile_depth,
    ex_profile_width,
    ex_profile_width_finite,
    ez_aperture_peak,
    ez_profile_depth,
    ez_profile_width,
    mutual_impedance,
    profile_integral,
    required_length,
)
from .fieldmap import (
    BeamMetrics,
    Component,
    FieldMap,
    GridSpec,
    Normalization,
    convergence_sweep,
    evaluate_map,
    extract_metrics,
    first_threshold_n,
    normalize_peak_near_focus,
)
from .multipath import (
    Dielectric,
    GrazingConvention,
    Metal,
    Polarization,
    RayPair,
    TwoRayEnvironment,
    ray_geometry,
    reflection_coefficient,
    two_ray_field,
)
from .polarization import (
    AR_LIMIT,
    AxialRatioResult,
    axial_ratio_at_focus,
    cp_field_map,
    min_elements_for_cp,
)
from .radiator import (
    FREE_SPACE_IMPEDANCE,
    SPEED_OF_LIGHT,
    ArrayGeometry,
    Excitation,
    FieldSample,
    Strategy,
    axis_profile,
    conjugate_phases,
    ex_sum,
    ez_sum,
    field_at,
    peak_field_on_axis,
    phases_degrees,
    physical_prefactor,
)
from .specfun import (
    QuadratureSpec,
    ToleranceNotMet,
    bessel_j1,
    cosine_integral,
    integrate,
    sinc,
    sine_integral,
    struve_h1,
    struve_h_minus1,
)

__version__ = "0.1.0"
