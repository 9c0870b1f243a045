"""Command line reports for the near-field focusing toolkit.

Each subcommand reads a single JSON configuration (validated against the
schema shipped with the package), computes its full result in memory,
then writes delimited text, a JSON sidecar, and a PNG rendering. Floats
are written with 17 significant digits so repeated runs produce
byte-identical tables. Exit codes: 0 on success, 2 for configuration
problems, 3 when adaptive quadrature cannot reach tolerance.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Callable

import jsonschema
import numpy as np

from . import plots
from .aperture import (
    ApertureSpec,
    Arrangement,
    DipolePairSpec,
    ProfileAxis,
    ex_profile_depth,
    ex_profile_width,
    ez_profile_depth,
    ez_profile_width,
    mutual_impedance,
    profile_integral,
)
from .fieldmap import (
    BeamMetrics,
    Component,
    GridSpec,
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
    TwoRayEnvironment,
    two_ray_field,
)
from .polarization import axial_ratio_at_focus, min_elements_for_cp
from .radiator import (
    SPEED_OF_LIGHT,
    ArrayGeometry,
    Strategy,
    conjugate_phases,
    phases_degrees,
)
from .specfun import QuadratureSpec, ToleranceNotMet

_COMMANDS = ("phases", "fieldmap", "profile", "converge", "axial_ratio", "coupling")


class ConfigError(ValueError):
    """Configuration rejected; the message names the offending key."""


def _schema() -> dict[str, Any]:
    text = resources.files("nearfocus").joinpath("config_schema.json").read_text()
    return json.loads(text)


def _validate_config(raw: dict[str, Any]) -> None:
    validator = jsonschema.Draft7Validator(_schema())
    errors = sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errors:
        worst = errors[0]
        where = ".".join(str(p) for p in worst.absolute_path) or "<root>"
        raise ConfigError(f"config key '{where}': {worst.message}")


def load_config(path: str | None) -> dict[str, Any]:
    """Parse a config file into a plain mapping; {} when no file given."""
    if path is None:
        return {}
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config key '<root>': top level must be a JSON object")
    return raw


@dataclass(frozen=True)
class RunConfig:
    """One validated run: global physics plus per-command blocks.

    spacing defaults to half a wavelength at the configured frequency.
    Blocks are kept as mappings; each command materializes its module
    types (geometry, grid, environment) before any computation starts.
    """

    frequency: float = 6.0e9
    spacing: float = 0.025
    label: str | None = None
    blocks: dict[str, Any] = field(default_factory=dict)

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.frequency

    @classmethod
    def from_mapping(cls, raw: dict[str, Any]) -> "RunConfig":
        _validate_config(raw)
        frequency = float(raw.get("frequency", 6.0e9))
        wavelength = SPEED_OF_LIGHT / frequency
        spacing = float(raw.get("spacing", 0.5 * wavelength))
        blocks = {name: raw[name] for name in _COMMANDS if name in raw}
        return cls(
            frequency=frequency,
            spacing=spacing,
            label=raw.get("label"),
            blocks=blocks,
        )

    def block(self, name: str) -> dict[str, Any]:
        return dict(self.blocks.get(name, {}))


def _fmt(value: float) -> str:
    return "%.17g" % value


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    # Fully materialized before the file opens, so failures cannot leave
    # a partial table behind.
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    path.write_text("\n".join(lines) + "\n")


def _sanitize(value: Any) -> Any:
    """Map non-finite floats to null so sidecars stay strict JSON."""
    if isinstance(value, dict):
        return {k: _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _write_json(path: Path, payload: dict[str, Any]) -> None:
    path.write_text(json.dumps(_sanitize(payload), indent=2, sort_keys=True) + "\n")


def _sidecar(
    config: RunConfig, command: str, parameters: dict[str, Any], results: dict[str, Any]
) -> dict[str, Any]:
    return {
        "command": command,
        "frequency": config.frequency,
        "spacing": config.spacing,
        "wavelength": config.wavelength,
        "parameters": parameters,
        "results": results,
    }


def _geometry(config: RunConfig, block: dict[str, Any], default_n: int) -> ArrayGeometry:
    n = int(block.get("n_elements", default_n))
    return ArrayGeometry(
        n_elements=n, spacing=config.spacing, wavelength=config.wavelength
    )


def _grid(block: dict[str, Any] | None, fallback: GridSpec) -> GridSpec:
    if not block:
        return fallback
    return GridSpec(
        x_range=(float(block["x_min"]), float(block["x_max"])),
        z_range=(float(block["z_min"]), float(block["z_max"])),
        nx=int(block["nx"]),
        nz=int(block["nz"]),
    )


def _metrics_payload(metrics: BeamMetrics) -> dict[str, Any]:
    return {
        "peak_pos": list(metrics.peak_pos),
        "peak_mag": metrics.peak_mag,
        "halfpower_width_one_sided": metrics.halfpower_width_one_sided,
        "halfpower_width_full": metrics.halfpower_width_full,
        "halfpower_depth_one_sided": metrics.halfpower_depth_one_sided,
        "halfpower_depth_full": metrics.halfpower_depth_full,
        "strongest_sidelobe_db": metrics.strongest_sidelobe_db,
        "focal_shift": metrics.focal_shift,
        "peak_interior": metrics.peak_interior,
    }


def cmd_phases(
    config: RunConfig, out_dir: Path = Path("."), no_plot: bool = False,
    prefix: str | None = None,
) -> list[Path]:
    """Per-element conjugate phase table, printed and saved as CSV."""
    block = config.block("phases")
    geom = _geometry(config, block, default_n=20)
    focus = float(block.get("focus", 20.0 * config.wavelength))
    strategy = Strategy(block.get("strategy", "FocusEx"))
    excitation = conjugate_phases(geom, focus, strategy)
    degrees = phases_degrees(excitation)
    positions = geom.positions

    name = prefix or "phases"
    csv_path = out_dir / f"{name}.csv"
    json_path = out_dir / f"{name}.json"
    png_path = out_dir / f"{name}.png"

    rows = [
        [str(i + 1), _fmt(float(x)), _fmt(float(d))]
        for i, (x, d) in enumerate(zip(positions, degrees))
    ]
    print(f"conjugate phases, {strategy.value}, focus {focus:g} m")
    print(f"{'element':>7}  {'position (m)':>13}  {'phase (deg)':>11}")
    for i, (x, d) in enumerate(zip(positions, degrees)):
        print(f"{i + 1:>7}  {x:>13.4f}  {d:>11.2f}")

    _write_csv(csv_path, ["element", "position_m", "phase_deg"], rows)
    _write_json(
        json_path,
        _sidecar(
            config,
            "phases",
            {
                "n_elements": geom.n_elements,
                "focus": focus,
                "strategy": strategy.value,
            },
            {"max_phase_deg": float(degrees.max()), "outputs": [csv_path.name]},
        ),
    )
    written = [csv_path, json_path]
    if not no_plot:
        plots.phase_stems(positions, degrees, str(png_path))
        written.append(png_path)
    return written


def _environment_from_block(block: dict[str, Any], nominal_range: float) -> tuple[
    TwoRayEnvironment, Polarization, GrazingConvention
]:
    ground_block = block["ground"]
    if ground_block["type"] == "metal":
        ground: Dielectric | Metal = Metal()
    else:
        ground = Dielectric(epsilon=float(ground_block["epsilon"]))
    env = TwoRayEnvironment(
        h_t=float(block["transmit_height"]),
        h_r=float(block["receive_height"]),
        ground=ground,
        horizontal_range=nominal_range,
    )
    polarization = Polarization(block.get("polarization", "Horizontal"))
    grazing = GrazingConvention(block.get("grazing", "SlantRatio"))
    return env, polarization, grazing


def cmd_fieldmap(
    config: RunConfig, out_dir: Path = Path("."), no_plot: bool = False,
    prefix: str | None = None,
) -> list[Path]:
    """Dual-component field map as CSV plus sidecar, free space or two-ray."""
    block = config.block("fieldmap")
    geom = _geometry(config, block, default_n=20)
    wl = config.wavelength
    focus = float(block.get("focus", 20.0 * wl))
    strategy = Strategy(block.get("strategy", "FocusEx"))
    normalize = bool(block.get("normalize", True))
    env_block = block.get("environment")

    span = 2.0 * wl
    step = wl / 20.0
    n_span = int(round(2.0 * span / step)) + 1
    if env_block is None:
        fallback = GridSpec(
            x_range=(-span, span),
            z_range=(focus - span, focus + span),
            nx=n_span,
            nz=n_span,
        )
    else:
        z_lo, z_hi = 8.0 * wl, 44.0 * wl
        fallback = GridSpec(
            x_range=(-span, span),
            z_range=(z_lo, z_hi),
            nx=n_span,
            nz=int(round((z_hi - z_lo) / step)) + 1,
        )
    grid = _grid(block.get("grid"), fallback)

    excitation = conjugate_phases(geom, focus, strategy)
    environment_info: dict[str, Any] | None = None
    if env_block is None:
        fmap = evaluate_map(geom, excitation, grid)
    else:
        nominal = 0.5 * (grid.z_range[0] + grid.z_range[1])
        env, polarization, grazing = _environment_from_block(env_block, nominal)
        fmap = two_ray_field(geom, excitation, env, grid, polarization, grazing)
        ground_info: dict[str, Any] = (
            {"type": "metal"}
            if isinstance(env.ground, Metal)
            else {"type": "dielectric", "epsilon": env.ground.epsilon}
        )
        environment_info = {
            "transmit_height": env.h_t,
            "receive_height": env.h_r,
            "ground": ground_info,
            "polarization": polarization.value,
            "grazing": grazing.value,
        }
    raw_peak = fmap.peak_value
    if normalize:
        fmap = normalize_peak_near_focus(fmap, (0.0, focus), wl)

    name = prefix or "fieldmap"
    csv_path = out_dir / f"{name}.csv"
    json_path = out_dir / f"{name}.json"
    png_path = out_dir / f"{name}.png"

    xv = grid.x_values
    zv = grid.z_values
    total = fmap.magnitude(Component.TOTAL)
    rows = []
    for i in range(grid.nx):
        for j in range(grid.nz):
            rows.append(
                [
                    _fmt(float(xv[i])),
                    _fmt(float(zv[j])),
                    _fmt(fmap.ex[i, j].real),
                    _fmt(fmap.ex[i, j].imag),
                    _fmt(fmap.ez[i, j].real),
                    _fmt(fmap.ez[i, j].imag),
                    _fmt(float(total[i, j])),
                ]
            )
    _write_csv(
        csv_path,
        ["x_m", "z_m", "re_ex", "im_ex", "re_ez", "im_ez", "mag_total"],
        rows,
    )
    _write_json(
        json_path,
        _sidecar(
            config,
            "fieldmap",
            {
                "n_elements": geom.n_elements,
                "focus": focus,
                "strategy": strategy.value,
                "normalize": normalize,
                "grid": {
                    "x_min": grid.x_range[0],
                    "x_max": grid.x_range[1],
                    "z_min": grid.z_range[0],
                    "z_max": grid.z_range[1],
                    "nx": grid.nx,
                    "nz": grid.nz,
                },
                "environment": environment_info,
            },
            {
                "normalization": fmap.normalization.value,
                "peak_value": raw_peak,
                "outputs": [csv_path.name],
            },
        ),
    )
    written = [csv_path, json_path]
    if not no_plot:
        plots.heatmap(fmap, Component.TOTAL, str(png_path))
        written.append(png_path)
    return written


def cmd_profile(
    config: RunConfig, out_dir: Path = Path("."), no_plot: bool = False,
    prefix: str | None = None,
) -> list[Path]:
    """Focal spot metrics plus width/depth cuts with closed-form overlays."""
    block = config.block("profile")
    geom = _geometry(config, block, default_n=2000)
    wl = config.wavelength
    focus = float(block.get("focus", 10.0 * wl))
    strategy = Strategy(block.get("strategy", "FocusEx"))
    span = float(block.get("span_lambda", 2.0)) * wl
    cut_step = float(block.get("cut_step_lambda", 0.01)) * wl
    map_step = float(block.get("map_step_lambda", 0.02)) * wl

    excitation = conjugate_phases(geom, focus, strategy)
    component = Component.EX if strategy is Strategy.FOCUS_EX else Component.EZ
    spec = ApertureSpec(
        length=geom.n_elements * config.spacing,
        focus_z=focus,
        wavenumber=geom.wavenumber,
    )
    if strategy is Strategy.FOCUS_EX:
        closed_width: Callable[[float, ApertureSpec], float] = ex_profile_width
        closed_depth: Callable[[float, ApertureSpec], float] = ex_profile_depth
    else:
        closed_width = ez_profile_width
        closed_depth = ez_profile_depth

    n_map = int(round(2.0 * span / map_step)) + 1
    map_grid = GridSpec(
        x_range=(-span, span), z_range=(focus - span, focus + span), nx=n_map, nz=n_map
    )
    metrics = extract_metrics(
        evaluate_map(geom, excitation, map_grid), component, (0.0, focus)
    )

    n_cut = int(round(2.0 * span / cut_step)) + 1
    width_grid = GridSpec((-span, span), (focus, focus), n_cut, 1)
    depth_grid = GridSpec((0.0, 0.0), (focus - span, focus + span), 1, n_cut)
    width_mag = evaluate_map(geom, excitation, width_grid).magnitude(component)[:, 0]
    depth_mag = evaluate_map(geom, excitation, depth_grid).magnitude(component)[0, :]

    deltas_w = width_grid.x_values
    deltas_d = depth_grid.z_values - focus
    closed_w = np.array([closed_width(float(d), spec) for d in deltas_w])
    closed_d = np.array([closed_depth(float(d), spec) for d in deltas_d])

    def _table(deltas: np.ndarray, discrete: np.ndarray, closed: np.ndarray):
        d_norm = discrete / discrete.max()
        c_norm = closed / closed.max()
        rows = [
            [_fmt(float(a)), _fmt(float(b)), _fmt(float(c)), _fmt(float(e)), _fmt(float(f))]
            for a, b, c, e, f in zip(deltas, discrete, d_norm, closed, c_norm)
        ]
        return rows, d_norm, c_norm

    rows_w, wd_norm, wc_norm = _table(deltas_w, width_mag, closed_w)
    rows_d, dd_norm, dc_norm = _table(deltas_d, depth_mag, closed_d)

    integral_checks: list[dict[str, Any]] | None = None
    if bool(block.get("validate_integrals", False)):
        quad_block = block.get("quadrature", {})
        quad = QuadratureSpec(
            abs_tol=float(quad_block.get("abs_tol", 1e-10)),
            rel_tol=float(quad_block.get("rel_tol", 1e-8)),
            max_subdivisions=int(quad_block.get("max_subdivisions", 200)),
        )
        integral_checks = []
        for delta in (0.25 * wl, 0.5 * wl):
            for axis, closed_fn in (
                (ProfileAxis.WIDTH, closed_width),
                (ProfileAxis.DEPTH, closed_depth),
            ):
                value = profile_integral(strategy, axis, delta, spec, quad)
                reference = closed_fn(delta, spec)
                integral_checks.append(
                    {
                        "axis": axis.value,
                        "delta": delta,
                        "integral": value,
                        "closed_form": reference,
                        "difference": abs(value - reference),
                    }
                )

    name = prefix or "profile"
    width_csv = out_dir / f"{name}_width.csv"
    depth_csv = out_dir / f"{name}_depth.csv"
    json_path = out_dir / f"{name}.json"
    header = ["delta_m", "discrete", "discrete_norm", "closed_form", "closed_form_norm"]
    _write_csv(width_csv, header, rows_w)
    _write_csv(depth_csv, header, rows_d)
    _write_json(
        json_path,
        _sidecar(
            config,
            "profile",
            {
                "n_elements": geom.n_elements,
                "focus": focus,
                "strategy": strategy.value,
                "span_lambda": span / wl,
                "cut_step_lambda": cut_step / wl,
                "map_step_lambda": map_step / wl,
                "aperture_length": spec.length,
            },
            {
                "metrics": _metrics_payload(metrics),
                "integral_checks": integral_checks,
                "outputs": [width_csv.name, depth_csv.name],
            },
        ),
    )
    written = [width_csv, depth_csv, json_path]
    if not no_plot:
        width_png = out_dir / f"{name}_width.png"
        depth_png = out_dir / f"{name}_depth.png"
        plots.profile_overlay(
            deltas_w,
            {"discrete": wd_norm, "closed form": wc_norm},
            "transverse offset (m)",
            str(width_png),
        )
        plots.profile_overlay(
            deltas_d,
            {"discrete": dd_norm, "closed form": dc_norm},
            "axial offset (m)",
            str(depth_png),
        )
        written.extend([width_png, depth_png])
    return written


def cmd_converge(
    config: RunConfig, out_dir: Path = Path("."), no_plot: bool = False,
    prefix: str | None = None,
) -> list[Path]:
    """Focal peak growth with element count and threshold crossings."""
    block = config.block("converge")
    wl = config.wavelength
    focus = float(block.get("focus", 30.0 * wl))
    n_max = int(block.get("n_max", 2000))
    fraction = float(block.get("threshold_fraction", 0.9))

    sweep = convergence_sweep(focus, config.spacing, wl, list(range(1, n_max + 1)))
    n_for_ex = first_threshold_n(focus, config.spacing, wl, Strategy.FOCUS_EX, fraction)
    n_for_ez = first_threshold_n(focus, config.spacing, wl, Strategy.FOCUS_EZ, fraction)
    asymptote = 2.0 / config.spacing

    name = prefix or "converge"
    csv_path = out_dir / f"{name}.csv"
    json_path = out_dir / f"{name}.json"
    png_path = out_dir / f"{name}.png"
    rows = [[str(n), _fmt(px), _fmt(pz)] for n, px, pz in sweep]
    _write_csv(csv_path, ["n_elements", "peak_ex", "peak_ez"], rows)
    _write_json(
        json_path,
        _sidecar(
            config,
            "converge",
            {"focus": focus, "n_max": n_max, "threshold_fraction": fraction},
            {
                "asymptote": asymptote,
                "n_reaching_fraction_ex": n_for_ex,
                "n_reaching_fraction_ez": n_for_ez,
                "outputs": [csv_path.name],
            },
        ),
    )
    print(
        f"peak reaches {fraction:g} of 2/spacing at N={n_for_ex} (ex), "
        f"N={n_for_ez} (ez)"
    )
    written = [csv_path, json_path]
    if not no_plot:
        plots.convergence_curves(sweep, asymptote, str(png_path))
        written.append(png_path)
    return written


def cmd_axial_ratio(
    config: RunConfig, out_dir: Path = Path("."), no_plot: bool = False,
    prefix: str | None = None,
) -> list[Path]:
    """Axial ratio against element count for the dual-polarized stack."""
    block = config.block("axial_ratio")
    wl = config.wavelength
    focus = float(block.get("focus", 10.0 * wl))
    n_min = int(block.get("n_min", 2))
    n_max = int(block.get("n_max", 300))
    if n_min > n_max:
        raise ConfigError("config key 'axial_ratio.n_min': must not exceed n_max")

    table = []
    for n in range(n_min, n_max + 1):
        geom = ArrayGeometry(n_elements=n, spacing=config.spacing, wavelength=wl)
        result = axial_ratio_at_focus(geom, focus)
        table.append((n, result.ex_peak, result.ez_peak, result.axial_ratio))
    min_n = min_elements_for_cp(config.spacing, wl, focus)

    name = prefix or "axial_ratio"
    csv_path = out_dir / f"{name}.csv"
    json_path = out_dir / f"{name}.json"
    png_path = out_dir / f"{name}.png"
    rows = [
        [str(n), _fmt(ex), _fmt(ez), _fmt(ar)] for n, ex, ez, ar in table
    ]
    _write_csv(csv_path, ["n_elements", "ex_peak", "ez_peak", "axial_ratio"], rows)
    _write_json(
        json_path,
        _sidecar(
            config,
            "axial_ratio",
            {"focus": focus, "n_min": n_min, "n_max": n_max},
            {"min_elements_for_cp": min_n, "outputs": [csv_path.name]},
        ),
    )
    print(f"axial ratio first reaches 2 at N={min_n}")
    written = [csv_path, json_path]
    if not no_plot:
        plots.axial_ratio_curve(table, str(png_path))
        written.append(png_path)
    return written


def cmd_coupling(
    config: RunConfig, out_dir: Path = Path("."), no_plot: bool = False,
    prefix: str | None = None,
) -> list[Path]:
    """|Z| against separation for side-by-side and collinear pairs."""
    block = config.block("coupling")
    wl = config.wavelength
    sep_lo = float(block.get("separation_min_lambda", 0.5)) * wl
    sep_hi = float(block.get("separation_max_lambda", 3.0)) * wl
    steps = int(block.get("steps", 251))
    ell = float(block.get("dipole_length_lambda", 0.5)) * wl
    if not sep_lo < sep_hi:
        raise ConfigError(
            "config key 'coupling.separation_min_lambda': must be below"
            " separation_max_lambda"
        )
    k = 2.0 * math.pi / wl

    separations = np.linspace(sep_lo, sep_hi, steps)
    z_side = np.empty(steps, dtype=complex)
    z_coll = np.full(steps, complex(math.nan, math.nan))
    for idx, sep in enumerate(separations):
        z_side[idx] = mutual_impedance(
            DipolePairSpec(Arrangement.SIDE_BY_SIDE, float(sep), ell), k
        )
        # collinear pairs need a positive tip gap
        if sep > ell:
            z_coll[idx] = mutual_impedance(
                DipolePairSpec(Arrangement.COLLINEAR, float(sep), ell), k
            )

    name = prefix or "coupling"
    csv_path = out_dir / f"{name}.csv"
    json_path = out_dir / f"{name}.json"
    png_path = out_dir / f"{name}.png"
    rows = []
    for idx in range(steps):
        rows.append(
            [
                _fmt(float(separations[idx])),
                _fmt(z_side[idx].real),
                _fmt(z_side[idx].imag),
                _fmt(abs(z_side[idx])),
                _fmt(z_coll[idx].real),
                _fmt(z_coll[idx].imag),
                _fmt(abs(z_coll[idx])),
            ]
        )
    _write_csv(
        csv_path,
        [
            "separation_m",
            "re_z_side_by_side",
            "im_z_side_by_side",
            "abs_z_side_by_side",
            "re_z_collinear",
            "im_z_collinear",
            "abs_z_collinear",
        ],
        rows,
    )
    _write_json(
        json_path,
        _sidecar(
            config,
            "coupling",
            {
                "separation_min_lambda": sep_lo / wl,
                "separation_max_lambda": sep_hi / wl,
                "steps": steps,
                "dipole_length_lambda": ell / wl,
            },
            {"outputs": [csv_path.name]},
        ),
    )
    written = [csv_path, json_path]
    if not no_plot:
        plots.coupling_curves(
            separations, np.abs(z_side), np.abs(z_coll), str(png_path)
        )
        written.append(png_path)
    return written


_DISPATCH: dict[str, Callable[..., list[Path]]] = {
    "phases": cmd_phases,
    "fieldmap": cmd_fieldmap,
    "profile": cmd_profile,
    "converge": cmd_converge,
    "axial-ratio": cmd_axial_ratio,
    "coupling": cmd_coupling,
}


def _seed_configs(wavelength: float) -> dict[str, dict[str, Any]]:
    """Ready-to-run configs covering the toolkit's standard result set."""
    spacing = 0.5 * wavelength
    focus = 20.0 * wavelength

    def ground_map(n: int, pol: str, ground: dict[str, Any]) -> dict[str, Any]:
        return {
            "frequency": 6.0e9,
            "spacing": spacing,
            "fieldmap": {
                "n_elements": n,
                "focus": focus,
                "strategy": "FocusEx" if pol == "Horizontal" else "FocusEz",
                "normalize": True,
                "environment": {
                    "transmit_height": 4.0 * wavelength,
                    "receive_height": 4.0 * wavelength,
                    "ground": ground,
                    "polarization": pol,
                },
            },
        }

    eps5 = {"type": "dielectric", "epsilon": 5.0}
    metal = {"type": "metal"}
    seeds: dict[str, dict[str, Any]] = {
        "phases_table": {
            "frequency": 6.0e9,
            "spacing": spacing,
            "phases": {"n_elements": 20, "focus": focus, "strategy": "FocusEx"},
        },
        "convergence": {
            "frequency": 6.0e9,
            "spacing": spacing,
            "converge": {
                "focus": 30.0 * wavelength,
                "n_max": 2000,
                "threshold_fraction": 0.9,
            },
        },
        "ex_profile": {
            "frequency": 6.0e9,
            "spacing": spacing,
            "profile": {
                "n_elements": 2000,
                "focus": 10.0 * wavelength,
                "strategy": "FocusEx",
            },
        },
        "ez_profile": {
            "frequency": 6.0e9,
            "spacing": spacing,
            "profile": {
                "n_elements": 2000,
                "focus": 10.0 * wavelength,
                "strategy": "FocusEz",
            },
        },
        "axial_ratio": {
            "frequency": 6.0e9,
            "spacing": spacing,
            "axial_ratio": {"focus": 10.0 * wavelength, "n_min": 2, "n_max": 300},
        },
        "focus_map_n20": {
            "frequency": 6.0e9,
            "spacing": spacing,
            "fieldmap": {
                "n_elements": 20,
                "focus": focus,
                "strategy": "FocusEx",
                "normalize": True,
            },
        },
        "focus_map_n2000": {
            "frequency": 6.0e9,
            "spacing": spacing,
            "fieldmap": {
                "n_elements": 2000,
                "focus": focus,
                "strategy": "FocusEx",
                "normalize": True,
            },
        },
        "multipath_h_eps5_n20": ground_map(20, "Horizontal", eps5),
        "multipath_h_eps5_n2000": ground_map(2000, "Horizontal", eps5),
        "multipath_h_metal_n2000": ground_map(2000, "Horizontal", metal),
        "multipath_v_eps5_n20": ground_map(20, "Vertical", eps5),
        "multipath_v_eps5_n2000": ground_map(2000, "Vertical", eps5),
        "multipath_v_metal_n2000": ground_map(2000, "Vertical", metal),
        "coupling": {
            "frequency": 6.0e9,
            "spacing": spacing,
            "coupling": {
                "separation_min_lambda": 0.5,
                "separation_max_lambda": 3.0,
                "steps": 251,
                "dipole_length_lambda": 0.5,
            },
        },
    }
    for name, seed in seeds.items():
        seed["label"] = name
    return seeds


def _write_seed_figures(out_dir: Path) -> None:
    wavelength = SPEED_OF_LIGHT / 6.0e9
    for name, seed in _seed_configs(wavelength).items():
        path = out_dir / f"{name}.json"
        _write_json(path, seed)
        command = next(key for key in _COMMANDS if key in seed)
        print(f"wrote {path}  (run: nearfocus {command.replace('_', '-')} --config {path})")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nearfocus",
        description="Near-field focusing reports for collinear dipole arrays.",
    )
    parser.add_argument(
        "--seed-figures",
        action="store_true",
        help="write example configs for the standard result set and exit",
    )
    parser.add_argument("--output-dir", default=argparse.SUPPRESS)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--output-dir", default=argparse.SUPPRESS)
    common.add_argument(
        "--no-plot", action="store_true", help="skip PNG rendering"
    )
    common.add_argument("--label", help="output file prefix")

    sub = parser.add_subparsers(dest="command")
    strategies = [s.value for s in Strategy]

    p = sub.add_parser("phases", parents=[common], help="conjugate phase table")
    p.add_argument("--n-elements", type=int, dest="n_elements")
    p.add_argument("--focus", type=float)
    p.add_argument("--strategy", choices=strategies)

    p = sub.add_parser("fieldmap", parents=[common], help="dual-component field map")
    p.add_argument("--n-elements", type=int, dest="n_elements")
    p.add_argument("--focus", type=float)
    p.add_argument("--strategy", choices=strategies)

    p = sub.add_parser(
        "profile", parents=[common], help="focal spot metrics and profile cuts"
    )
    p.add_argument("--n-elements", type=int, dest="n_elements")
    p.add_argument("--focus", type=float)
    p.add_argument("--strategy", choices=strategies)

    p = sub.add_parser(
        "converge", parents=[common], help="focal peak vs element count"
    )
    p.add_argument("--focus", type=float)
    p.add_argument("--n-max", type=int, dest="n_max")

    p = sub.add_parser(
        "axial-ratio", parents=[common], help="axial ratio vs element count"
    )
    p.add_argument("--focus", type=float)
    p.add_argument("--n-max", type=int, dest="n_max")

    sub.add_parser("coupling", parents=[common], help="mutual impedance sweep")
    return parser


_OVERRIDE_KEYS = ("n_elements", "focus", "strategy", "n_max")


def _merge_overrides(raw: dict[str, Any], args: argparse.Namespace) -> dict[str, Any]:
    block_key = args.command.replace("-", "_")
    block = dict(raw.get(block_key, {}))
    for key in _OVERRIDE_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            block[key] = value
    merged = dict(raw)
    if block:
        merged[block_key] = block
    if getattr(args, "label", None):
        merged["label"] = args.label
    return merged


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    out_dir = Path(getattr(args, "output_dir", None) or ".")

    if args.seed_figures:
        if args.command:
            print("error: --seed-figures does not take a command", file=sys.stderr)
            return 2
        out_dir.mkdir(parents=True, exist_ok=True)
        _write_seed_figures(out_dir)
        return 0
    if not args.command:
        parser.print_usage(sys.stderr)
        print("error: a command is required", file=sys.stderr)
        return 2

    try:
        raw = load_config(args.config)
        raw = _merge_overrides(raw, args)
        config = RunConfig.from_mapping(raw)
        out_dir.mkdir(parents=True, exist_ok=True)
        prefix = config.label or args.command.replace("-", "_")
        written = _DISPATCH[args.command](
            config, out_dir=out_dir, no_plot=args.no_plot, prefix=prefix
        )
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TypeError, ValueError) as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except ToleranceNotMet as exc:
        print(f"error: quadrature tolerance not met: {exc}", file=sys.stderr)
        return 3
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
