"""Command-line surface: config parsing, deterministic CSV/JSON emission,
and the figure-data generators.

Interface:  qlg <command> [--config PATH] [--set key=value ...]
                          [--out PATH] [--format csv|json]

Config files are flat UTF-8 "key = value" lines with '#' comments; --set
flags override file values and the winner is echoed in the run manifest.
Unknown keys, duplicates, and unparseable values are hard errors with
line/flag provenance.  Exit codes: 0 success, 2 config error, 3 numerical
non-convergence.  Identical configs produce byte-identical output.
"""

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import _accel
from .constants import C_LIGHT, G_NEWTON, HBAR
from .coarsegrain import FILTER_KINDS, FilterSpec
from .currents import classical_suppression, coherence_density, continuity_residual
from .dynamics import StabilityError, free_evolve, lindblad_evolve, two_level_coherence_decay
from .dynamics import TwoLevelDecoherenceSpec
from .kernels import (
    NonConvergenceError,
    QuadratureSpec,
    decoherence_form_factor,
    entanglement_kernel_momentum,
    gamma0_closed_form,
    gamma0_quadrature,
    yukawa_kernel,
    yukawa_shape_report,
)
from .signals import (
    InterferometerSpec,
    TrajectorySpec,
    UNIT_CONVENTIONS,
    decoherence_rate,
    entanglement_signal,
    geometry_calibration_constant,
    geometry_factor,
    qlg_phase,
    signal_vs_concurrence_curve,
    visibility_slope,
)
from .constraints import (
    AtomInterferometer,
    EntanglementTest,
    Nanosphere,
    exclusion_grid,
    gravity_ratio,
    slope_bound_report,
)
from .states import (
    GaussianPacketSpec,
    Grid1D,
    TwoBranchSpec,
    gaussian_packet,
    mixture_density_kernel,
    pure_density_kernel,
    split_diag_offdiag,
    superposition_wavefunction,
)

COMMANDS = (
    "coherence",
    "evolve",
    "kernels",
    "phase",
    "decohere",
    "entangle",
    "constrain",
    "figures",
)

FIGURES = ("fig2", "fig3a", "fig3b", "fig4", "fig5")


class ConfigError(ValueError):
    pass


def _choice(options):
    def parse(text):
        if text not in options:
            raise ValueError(f"must be one of {options}")
        return text

    return parse


def _finite_float(text):
    value = float(text)
    if not np.isfinite(value):
        raise ValueError("must be finite")
    return value


_GRID_KEYS = {
    "x_min": (_finite_float, -2.0),
    "x_max": (_finite_float, 2.0),
    "n_points": (int, 512),
}

_FILTER_KEYS = {
    "cutoff_length": (_finite_float, 0.2),
    "filter_kind": (_choice(FILTER_KINDS), "gaussian-position"),
}

SCHEMAS = {
    "coherence": {
        **_GRID_KEYS,
        **_FILTER_KEYS,
        "packet_width": (_finite_float, 0.05),
        "separation": (_finite_float, 1.0),
    },
    "evolve": {
        **_GRID_KEYS,
        **_FILTER_KEYS,
        "packet_width": (_finite_float, 0.25),
        "mass": (_finite_float, 1.0),
        "hbar": (_finite_float, 1.0),
        "duration": (_finite_float, 0.02),
        "n_snapshots": (int, 5),
        "boost": (_finite_float, 0.0),
    },
    "kernels": {
        "cutoff_length": (_finite_float, 1.0),
        "filter_kind": (_choice(FILTER_KINDS), "lorentzian-momentum"),
        "k_max_over_cutoff": (_finite_float, 100.0),
        "n_nodes": (int, 8192),
        "regulator_epsilon": (_finite_float, 0.5),
        "r_min_over_cutoff": (_finite_float, 0.5),
        "r_max_over_cutoff": (_finite_float, 10.0),
        "n_r": (int, 20),
        "hbar": (_finite_float, 1.0),
        "c": (_finite_float, 1.0),
    },
    "phase": {
        "coupling": (_finite_float, 3e-7),
        "mass": (_finite_float, 1.4e-25),
        "interrogation_time": (_finite_float, 1.0),
        "geometry_factor": (_finite_float, 1.0),
        "convention": (_choice(UNIT_CONVENTIONS), "paper-si"),
        "n_visibility": (int, 11),
    },
    "decohere": {
        "gamma": (_finite_float, 1.0),
        "lambda_coupling": (_finite_float, 1.0),
        "mass": (_finite_float, 1.0),
        "rho_lr_0": (_finite_float, 0.5),
        "duration": (_finite_float, 0.5),
        "dt": (_finite_float, 0.002),
        "n_times": (int, 11),
    },
    "entangle": {
        "family": (_choice(("dephased", "werner", "classical")), "dephased"),
        "n_points": (int, 11),
        "coupling": (_finite_float, 3e-7),
        "mass_1": (_finite_float, 1.66e-18),
        "mass_2": (_finite_float, 1.66e-18),
        "separation": (_finite_float, 1.0),
        "cutoff_length": (_finite_float, 1.0),
    },
    "constrain": {
        "kappa_max": (_finite_float, 3e-3),
        "mass": (_finite_float, 1.4e-25),
        "interrogation_time": (_finite_float, 1.0),
        "geometry_factor": (_finite_float, 1.0),
        "convention": (_choice(UNIT_CONVENTIONS), "paper-si"),
        "max_separation": (_finite_float, 1.0),
        "nano_mass": (_finite_float, 1.66e-18),
        "nano_delta_x": (_finite_float, 1e-7),
        "nano_gamma_max": (_finite_float, 1e-2),
        "nano_gamma0": (_finite_float, 1.0),
        "ent_mass_1": (_finite_float, 1.66e-18),
        "ent_mass_2": (_finite_float, 1.66e-18),
        "ent_separation": (_finite_float, 1.0),
        "ent_sensitivity": (_finite_float, 1e-30),
        "cutoff_length": (_finite_float, 1.0),
        "gravity_g": (_finite_float, 3e-7),
        "gravity_r": (_finite_float, 0.0),
    },
    "figures": {
        "figure": (_choice(FIGURES), "fig2"),
        # fig2
        "g_low": (_finite_float, 3e-7),
        "g_high": (_finite_float, 1e-6),
        "n_visibility": (int, 11),
        "mass": (_finite_float, 1.4e-25),
        "interrogation_time": (_finite_float, 1.0),
        "geometry_factor": (_finite_float, 1.0),
        "convention": (_choice(UNIT_CONVENTIONS), "paper-si"),
        # fig3
        "coupling": (_finite_float, 1e-6),
        "gamma0": (_finite_float, 1.0),
        "cutoff_length": (_finite_float, 1.0),
        "gamma_env": (_finite_float, 1e-14),
        "n_delta": (int, 40),
        "delta_max_over_cutoff": (_finite_float, 10.0),
        "mass_min": (_finite_float, 1.0),
        "mass_max": (_finite_float, 100.0),
        "n_mass": (int, 25),
        "delta_x_over_cutoff": (_finite_float, 5.0),
        "fig3_mass": (_finite_float, 1.0),
        # fig4
        "n_points": (int, 11),
        # fig5
        "cutoff_min": (_finite_float, 0.01),
        "cutoff_max": (_finite_float, 10.0),
        "n_cutoff": (int, 25),
        "kappa_max": (_finite_float, 3e-3),
        "max_separation": (_finite_float, 1.0),
        "nano_mass": (_finite_float, 1.66e-18),
        "nano_delta_x": (_finite_float, 0.1),
        "nano_gamma_max": (_finite_float, 1e-2),
        "nano_gamma0": (_finite_float, 1.0),
        "ent_mass_1": (_finite_float, 1.66e-18),
        "ent_mass_2": (_finite_float, 1.66e-18),
        "ent_separation": (_finite_float, 1.0),
        "ent_sensitivity": (_finite_float, 1e-30),
    },
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    parameters: dict
    output_path: str
    format: str

    def manifest(self, extra=None):
        data = {
            "command": self.command,
            "format": self.format,
            "parameters": dict(sorted(self.parameters.items())),
            "constants": {"hbar": HBAR, "c": C_LIGHT, "G": G_NEWTON},
            "backend": _accel.backend_name(),
        }
        if extra:
            data.update(extra)
        return data


def _parse_file_lines(text):
    """'key = value' lines with '#' comments; returns {key: (value, line_no)}."""
    values = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {line_no}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key:
            raise ConfigError(f"config line {line_no}: empty key")
        if key in values:
            raise ConfigError(
                f"config line {line_no}: duplicate key {key!r} "
                f"(first set at line {values[key][1]})"
            )
        values[key] = (value, line_no)
    return values


def parse_config(command, file_text=None, set_flags=(), output_path="-", fmt="csv"):
    """Resolve a RunConfig from file contents plus flag overrides.

    Flags win over file values; every unknown key, duplicate, or
    unparseable value is a hard error naming its provenance.
    """
    if command not in SCHEMAS:
        raise ConfigError(f"unknown command {command!r}; choose from {COMMANDS}")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"unknown format {fmt!r}; choose csv or json")
    schema = SCHEMAS[command]

    raw = {}
    provenance = {}
    if file_text is not None:
        for key, (value, line_no) in _parse_file_lines(file_text).items():
            raw[key] = value
            provenance[key] = f"config line {line_no}"
    seen_flags = {}
    for i, flag in enumerate(set_flags, start=1):
        if "=" not in flag:
            raise ConfigError(f"--set #{i}: expected key=value, got {flag!r}")
        key, _, value = flag.partition("=")
        key, value = key.strip(), value.strip()
        if key in seen_flags:
            raise ConfigError(
                f"--set #{i}: duplicate key {key!r} (first set by --set #{seen_flags[key]})"
            )
        seen_flags[key] = i
        raw[key] = value
        provenance[key] = f"--set #{i}"

    unknown = sorted(set(raw) - set(schema))
    if unknown:
        details = ", ".join(f"{k!r} ({provenance[k]})" for k in unknown)
        raise ConfigError(f"unknown keys for command {command!r}: {details}")

    parameters = {}
    for key, (parser, default) in schema.items():
        if key in raw:
            try:
                parameters[key] = parser(raw[key])
            except ValueError as exc:
                raise ConfigError(
                    f"invalid value for {key!r} at {provenance[key]}: "
                    f"{raw[key]!r} ({exc})"
                ) from None
        else:
            parameters[key] = default
    return RunConfig(command, parameters, output_path, fmt)


def config_to_lines(config):
    """Render resolved parameters back to config-file lines (round-trip)."""
    lines = []
    for key in sorted(config.parameters):
        value = config.parameters[key]
        rendered = repr(value) if isinstance(value, float) else str(value)
        lines.append(f"{key} = {rendered}")
    return "\n".join(lines) + "\n"


def _cell(value):
    if isinstance(value, (np.floating, float)):
        return repr(float(value))
    if isinstance(value, (np.integer, int)):
        return str(int(value))
    return str(value)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in sorted(obj.items())}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def emit_table(rows, columns, fmt, path, manifest):
    """Write rows deterministically.

    csv: one header row, comma separator, LF endings, floats as shortest
    round-trip decimals; the manifest goes to a sibling
    '<path>.manifest.json' file (stdout output skips it).
    json: an object {"columns", "rows", "manifest"}.
    """
    rows = [list(r) for r in rows]
    for row in rows:
        if len(row) != len(columns):
            raise ConfigError("ragged table: every row must match the columns")
    if fmt == "csv":
        body = ",".join(columns) + "\n"
        body += "".join(",".join(_cell(v) for v in row) + "\n" for row in rows)
        _write(path, body)
        if path != "-":
            _write(
                path + ".manifest.json",
                json.dumps(_jsonable(manifest), sort_keys=True, indent=2) + "\n",
            )
    else:
        payload = {
            "columns": list(columns),
            "rows": [[_jsonable(v) for v in row] for row in rows],
            "manifest": _jsonable(manifest),
        }
        _write(path, json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# command runners: each returns (columns, rows, extra_manifest)
# ---------------------------------------------------------------------------

def _two_packet_states(p):
    grid = Grid1D(p["x_min"], p["x_max"], p["n_points"])
    half = p["separation"] / 2.0
    left = GaussianPacketSpec(-half, p["packet_width"])
    right = GaussianPacketSpec(+half, p["packet_width"])
    amp = 1.0 / np.sqrt(2.0)
    sup = pure_density_kernel(
        superposition_wavefunction(TwoBranchSpec(amp, amp, left, right), grid)
    )
    mix = mixture_density_kernel(
        [0.5, 0.5], [gaussian_packet(left, grid), gaussian_packet(right, grid)]
    )
    return grid, sup, mix


def run_coherence(p):
    grid, sup, mix = _two_packet_states(p)
    spec = FilterSpec(p["cutoff_length"], p["filter_kind"])
    diag_mix, _ = split_diag_offdiag(mix)
    n_sup = coherence_density(sup, spec)
    n_cl = coherence_density(diag_mix, spec)
    ratio = classical_suppression(diag_mix, sup, spec)
    density = sup.density()
    rows = [
        (x, nx, nc.real, nc.imag, abs(ncl))
        for x, nx, nc, ncl in zip(grid.x, density, n_sup.values, n_cl.values)
    ]
    extra = {
        "suppression_ratio": ratio,
        "coherence_peak_over_density_peak": float(
            np.max(np.abs(n_sup.values)) / np.max(density)
        ),
    }
    return ["x", "density", "ncoh_re", "ncoh_im", "ncoh_classical_abs"], rows, extra


def run_evolve(p):
    grid = Grid1D(p["x_min"], p["x_max"], p["n_points"])
    psi = gaussian_packet(GaussianPacketSpec(0.0, p["packet_width"]), grid)
    if p["boost"]:
        from .states import WavefunctionGrid

        psi = WavefunctionGrid(grid, psi.amplitudes * np.exp(1j * p["boost"] * grid.x))
    n_snap = p["n_snapshots"]
    if n_snap < 3:
        raise ConfigError("n_snapshots must be at least 3")
    dt = p["duration"] / (n_snap - 1)
    snapshots = []
    rows = []
    state = psi
    for m in range(n_snap):
        if m:
            state = free_evolve(state, p["mass"], dt, p["hbar"])
        kernel = pure_density_kernel(state)
        snapshots.append(kernel)
        prob = np.abs(state.amplitudes) ** 2 * grid.spacing
        center = float(np.sum(grid.x * prob))
        width = float(np.sqrt(np.sum((grid.x - center) ** 2 * prob)))
        rows.append((m * dt, state.norm(), center, width))
    residual = continuity_residual(
        snapshots,
        np.arange(n_snap) * dt,
        FilterSpec(p["cutoff_length"], p["filter_kind"]),
        p["mass"],
        p["hbar"],
    )
    return (
        ["time", "norm", "center", "width"],
        rows,
        {"continuity_residual": residual},
    )


def run_kernels(p):
    spec = FilterSpec(p["cutoff_length"], p["filter_kind"])
    quad = QuadratureSpec(p["k_max_over_cutoff"], p["n_nodes"], p["regulator_epsilon"])
    r_over = np.linspace(p["r_min_over_cutoff"], p["r_max_over_cutoff"], p["n_r"])
    ell = p["cutoff_length"]
    rows = []
    for x in r_over:
        r = x * ell
        mom = entanglement_kernel_momentum(r, spec, quad, p["c"])
        rows.append(
            (
                x,
                decoherence_form_factor(r, ell),
                yukawa_kernel(r, ell),
                mom.value,
            )
        )
    gamma0 = gamma0_quadrature(spec, quad, p["hbar"], p["c"])
    extra = {"gamma0": gamma0, "quadrature": {
        "k_max_over_cutoff": p["k_max_over_cutoff"],
        "n_nodes": p["n_nodes"],
        "regulator_epsilon": p["regulator_epsilon"],
    }}
    if spec.kind == "lorentzian-momentum":
        extra["gamma0_closed_form"] = gamma0_closed_form(spec, quad, p["hbar"], p["c"])
        shape = yukawa_shape_report(spec, quad, p["c"])
        extra["yukawa_shape_max_relative_deviation"] = shape["max_relative_deviation"]
    return ["r_over_cutoff", "form_factor", "yukawa", "momentum_kernel"], rows, extra


def run_phase(p):
    rows = []
    for v in np.linspace(0.0, 1.0, p["n_visibility"]):
        spec = InterferometerSpec(
            p["mass"],
            p["interrogation_time"],
            float(v),
            p["geometry_factor"],
            p["coupling"],
            p["convention"],
        )
        rows.append((float(v), qlg_phase(spec)))
    slope = visibility_slope(
        InterferometerSpec(
            p["mass"],
            p["interrogation_time"],
            1.0,
            p["geometry_factor"],
            p["coupling"],
            p["convention"],
        )
    )
    return ["visibility", "phase"], rows, {"kappa": slope, "convention": p["convention"]}


def run_decohere(p):
    spec = TwoLevelDecoherenceSpec(p["gamma"], p["lambda_coupling"], p["mass"])
    model = spec.lindblad_model()
    rho0 = np.array([[0.5, p["rho_lr_0"]], [np.conj(p["rho_lr_0"]), 0.5]], dtype=np.complex128)
    rows = []
    worst = 0.0
    for t in np.linspace(0.0, p["duration"], p["n_times"]):
        analytic = two_level_coherence_decay(p["rho_lr_0"], spec, float(t))
        evolved = lindblad_evolve(rho0, model, float(t), p["dt"])
        numeric = complex(evolved[0, 1])
        rows.append((float(t), float(np.real(analytic)), float(np.real(numeric))))
        if analytic != 0:
            worst = max(worst, abs(numeric - analytic) / abs(analytic))
    extra = {"decay_rate": spec.rate, "max_relative_mismatch": worst}
    return ["time", "coherence_analytic", "coherence_lindblad"], rows, extra


def run_entangle(p):
    curve = signal_vs_concurrence_curve(p["family"], p["n_points"])
    from .states import dephased_family, werner_family, TwoQubitState

    rows = []
    for param, conc, corr in curve:
        energy = (
            p["coupling"] ** 2
            * p["mass_1"]
            * p["mass_2"]
            * yukawa_kernel(p["separation"], p["cutoff_length"])
            * corr
        )
        rows.append((param, conc, corr, energy))
    return ["parameter", "concurrence", "signal", "energy"], rows, {"family": p["family"]}


def _constrain_platforms(p):
    atom = AtomInterferometer(
        p["mass"],
        p["interrogation_time"],
        p["kappa_max"],
        p["geometry_factor"],
        p["convention"],
        p["max_separation"],
    )
    nano = Nanosphere(p["nano_mass"], p["nano_delta_x"], p["nano_gamma_max"], p["nano_gamma0"])
    ent = EntanglementTest(
        p["ent_mass_1"], p["ent_mass_2"], p["ent_separation"], p["ent_sensitivity"]
    )
    return atom, nano, ent


def run_constrain(p):
    from .constraints import bound_g_from_decoherence, bound_g_from_entanglement

    atom, nano, ent = _constrain_platforms(p)
    report = slope_bound_report(atom)
    rows = [
        ("atom-interferometer", report["g_max"]),
        ("nanosphere", bound_g_from_decoherence(nano, p["cutoff_length"])),
        ("entanglement-test", bound_g_from_entanglement(ent, p["cutoff_length"])),
    ]
    extra = {
        "slope_bound_report": report,
        "gravity_ratio": gravity_ratio(p["gravity_g"], p["gravity_r"], p["cutoff_length"]),
        "geometry_calibration_constant": geometry_calibration_constant(),
    }
    return ["platform", "g_max"], rows, extra


def run_figures(p):
    figure = p["figure"]
    if figure == "fig2":
        rows = []
        for v in np.linspace(0.0, 1.0, p["n_visibility"]):
            row = [float(v)]
            for g in (p["g_low"], p["g_high"]):
                spec = InterferometerSpec(
                    p["mass"],
                    p["interrogation_time"],
                    float(v),
                    p["geometry_factor"],
                    g,
                    p["convention"],
                )
                row.append(qlg_phase(spec))
            rows.append(tuple(row))
        return ["visibility", "phase_g_low", "phase_g_high"], rows, {
            "g_low": p["g_low"],
            "g_high": p["g_high"],
            "convention": p["convention"],
        }
    if figure == "fig3a":
        ell = p["cutoff_length"]
        rows = []
        for x in np.linspace(0.0, p["delta_max_over_cutoff"], p["n_delta"]):
            gamma = decoherence_rate(p["coupling"], p["fig3_mass"], x * ell, p["gamma0"], ell)
            rows.append((x * ell, gamma, p["gamma_env"]))
        return ["delta_x", "gamma_qlg", "gamma_env"], rows, {}
    if figure == "fig3b":
        masses = np.geomspace(p["mass_min"], p["mass_max"], p["n_mass"])
        dx = p["delta_x_over_cutoff"] * p["cutoff_length"]
        gammas = np.array(
            [
                decoherence_rate(p["coupling"], m, dx, p["gamma0"], p["cutoff_length"])
                for m in masses
            ]
        )
        slope = float(np.polyfit(np.log(masses), np.log(gammas), 1)[0])
        rows = [(m, g, slope) for m, g in zip(masses, gammas)]
        return ["mass", "gamma_qlg", "fitted_slope"], rows, {"fitted_slope": slope}
    if figure == "fig4":
        rows = []
        for family in ("dephased", "werner", "classical"):
            for param, conc, corr in signal_vs_concurrence_curve(family, p["n_points"]):
                rows.append((family, param, conc, corr))
        return ["family", "parameter", "concurrence", "signal"], rows, {}
    # fig5
    cutoffs = np.geomspace(p["cutoff_min"], p["cutoff_max"], p["n_cutoff"])
    atom, nano, ent = _constrain_platforms(
        {
            **p,
            "geometry_factor": 1.0,
            "cutoff_length": 1.0,
        }
    )
    curves = exclusion_grid([atom, nano, ent], cutoffs)
    by_name = {c.platform: c for c in curves}
    rows = [
        (
            float(lc),
            float(by_name["atom-interferometer"].g_max[i]),
            float(by_name["nanosphere"].g_max[i]),
            float(by_name["entanglement-test"].g_max[i]),
        )
        for i, lc in enumerate(cutoffs)
    ]
    extra = {
        "sanity": {name: curve.sanity for name, curve in by_name.items()},
        "geometry_calibration_constant": geometry_calibration_constant(),
    }
    return (
        ["cutoff_length", "g_max_interferometer", "g_max_nanosphere", "g_max_entanglement"],
        rows,
        extra,
    )


RUNNERS = {
    "coherence": run_coherence,
    "evolve": run_evolve,
    "kernels": run_kernels,
    "phase": run_phase,
    "decohere": run_decohere,
    "entangle": run_entangle,
    "constrain": run_constrain,
    "figures": run_figures,
}


def run(config):
    """Execute a resolved RunConfig and write its table."""
    columns, rows, extra = RUNNERS[config.command](config.parameters)
    emit_table(rows, columns, config.format, config.output_path, config.manifest(extra))


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="qlg",
        description="coherence-selective interaction toolkit",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config value (repeatable; wins over --config)",
    )
    parser.add_argument("--out", default="-", help="output path (default stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    args = parser.parse_args(argv)

    try:
        file_text = None
        if args.config is not None:
            with open(args.config, encoding="utf-8") as fh:
                file_text = fh.read()
        config = parse_config(args.command, file_text, args.overrides, args.out, args.format)
        run(config)
    except (ConfigError, OSError) as exc:
        print(f"qlg: config error: {exc}", file=sys.stderr)
        return 2
    except (NonConvergenceError, StabilityError) as exc:
        print(f"qlg: numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
