"""Command-line interface.

Four subcommands: ``ground`` reports the sector ground state at one
parameter point, ``sweep`` writes the phase-diagram grid, ``gaps`` tabulates
the four level gaps versus dipole coupling, and ``validate`` runs the
self-check battery.  All physics flags are in units of ``g``; passing
``--g`` other than 1 rescales every input energy (and therefore every
output energy) linearly.

Options may also come from a ``key=value`` config file (``--config``);
explicit flags win over the file, which wins over built-in defaults.
Numbers are printed with 12 significant digits, so re-parsing an emitted
CSV reproduces the values at printed precision and identical configurations
produce byte-identical output.

Exit codes: 0 success, 1 runtime or I/O failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .analytics import gap_curve
from .eigen import JacobiConvergenceError
from .model import ModelParams
from .observables import GroundStateReport, ground_state_report
from .sweep import (DEFAULT_POLARITON_EPS, DEFAULT_SUPERFLUID_EPS,
                    ClassificationThresholds, PhaseGrid, SweepSpec, sweep)
from .validation import run_battery

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2

GROUND_CSV_HEADER = ("delta,j,a,g,omega_c,n,model,energy,"
                     "p1,p2,p3,p4,p5,p_outside,"
                     "p_photonic,p_atomic,p_mixed,"
                     "var_n1,var_na1,product,degenerate")
SWEEP_CSV_HEADER = "delta,j,var_n1,var_na1,product,phase"
GAPS_CSV_HEADER = "j,de1,de2,de3,de4"


class UsageError(Exception):
    pass


def fmt(value) -> str:
    """Canonical 12-significant-digit rendering used in every output."""
    return f"{float(value):.12g}"


def _round(value) -> float:
    return float(fmt(value))


# ---------------------------------------------------------------------------
# config file

def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_pair(text: str):
    parts = text.replace(",", " ").split()
    if len(parts) != 2:
        raise ValueError(f"expected two numbers, got {text!r}")
    return [float(parts[0]), float(parts[1])]


_CONFIG_SCHEMA = {
    "delta": float,
    "j": float,
    "a": float,
    "g": float,
    "omega_c": float,
    "n": int,
    "out": str,
    "format": str,
    "resolution": int,
    "delta_range": _parse_pair,
    "j_range": _parse_pair,
    "sf_eps": float,
    "pol_eps": float,
    "full_model": _parse_bool,
    "plot": _parse_bool,
    "seed": int,
    "draws": int,
}


def load_config(path) -> dict:
    """Parse a key=value config file; unknown keys are rejected."""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise UsageError(f"cannot read config file {path}: {err}") from err
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in _CONFIG_SCHEMA:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _CONFIG_SCHEMA[key](value.strip())
        except ValueError as err:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {err}") from err
    return values


def _resolve(args, config: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config:
        return config[key]
    return default


def _require_finite(**values):
    for name, value in values.items():
        if not math.isfinite(value):
            raise UsageError(f"--{name.replace('_', '-')} must be finite, got {value}")


# ---------------------------------------------------------------------------
# serialization

def ground_report_csv(report: GroundStateReport, flags: dict) -> str:
    probs = report.probabilities
    p_cols = ([fmt(p) for p in probs.as_tuple()] + [fmt(report.outside)]
              if probs is not None else ["nan"] * 6)
    row = [fmt(flags["delta"]), fmt(flags["j"]), fmt(flags["a"]), fmt(flags["g"]),
           fmt(flags["omega_c"]), str(flags["n"]),
           "full" if report.full_model else "effective",
           fmt(report.energy), *p_cols,
           *(fmt(p) for p in report.character.as_tuple()),
           fmt(report.order.var_n1), fmt(report.order.var_na1),
           fmt(report.order.product),
           "true" if report.degenerate else "false"]
    return GROUND_CSV_HEADER + "\n" + ",".join(row) + "\n"


def ground_report_json(report: GroundStateReport, flags: dict) -> str:
    probs = report.probabilities
    payload = {
        "model": "full" if report.full_model else "effective",
        "params": {
            "delta": _round(flags["delta"]),
            "j": _round(flags["j"]),
            "a": _round(flags["a"]),
            "g": _round(flags["g"]),
            "omega_c": _round(flags["omega_c"]),
            "n_excitations": flags["n"],
        },
        "energy": _round(report.energy),
        "degenerate": report.degenerate,
        "subspace_probabilities": None if probs is None else {
            "p1": _round(probs.p1),
            "p2": _round(probs.p2),
            "p3": _round(probs.p3),
            "p4": _round(probs.p4),
            "p5": _round(probs.p5),
            "outside": _round(report.outside),
        },
        "excitation_character": {
            "photonic": _round(report.character.p_photonic),
            "atomic": _round(report.character.p_atomic),
            "mixed": _round(report.character.p_mixed),
        },
        "order_parameters": {
            "var_n1": _round(report.order.var_n1),
            "var_na1": _round(report.order.var_na1),
            "product": _round(report.order.product),
        },
    }
    return json.dumps(payload, indent=2) + "\n"


def phase_grid_csv(grid: PhaseGrid) -> str:
    lines = [SWEEP_CSV_HEADER]
    for i, delta in enumerate(grid.deltas):
        for k, j in enumerate(grid.js):
            lines.append(",".join((
                fmt(delta), fmt(j), fmt(grid.var_n1[i, k]),
                fmt(grid.var_na1[i, k]), fmt(grid.product[i, k]),
                grid.labels[i, k])))
    return "\n".join(lines) + "\n"


def read_phase_grid_csv(text: str):
    """Parse an emitted sweep CSV back into (header, numeric rows, labels)."""
    lines = text.strip().split("\n")
    if lines[0] != SWEEP_CSV_HEADER:
        raise ValueError(f"unexpected header {lines[0]!r}")
    numbers, labels = [], []
    for line in lines[1:]:
        cols = line.split(",")
        numbers.append([float(c) for c in cols[:5]])
        labels.append(cols[5])
    return lines[0], numbers, labels


def gap_table_csv(table) -> str:
    lines = [GAPS_CSV_HEADER]
    for row in table:
        lines.append(",".join(fmt(value) for value in row))
    return "\n".join(lines) + "\n"


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands

def _add_common(sub):
    sub.add_argument("--config", help="key=value config file; flags override it")
    sub.add_argument("--g", type=float, dest="g", help="coupling strength, the energy unit (default 1)")
    sub.add_argument("--omega-c", type=float, dest="omega_c",
                     help="cavity frequency in units of g (default 0)")
    sub.add_argument("--n", type=int, dest="n",
                     help="conserved total excitation number (default 2)")
    sub.add_argument("--out", help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jcdimer",
        description="Ground-state structure and phase diagram of two "
                    "photon-coupled cavities with dipole-coupled atom pairs.")
    subs = parser.add_subparsers(dest="command", required=True)

    ground = subs.add_parser("ground", help="ground-state report at one parameter point")
    _add_common(ground)
    ground.add_argument("--delta", type=float, help="atom-field detuning in units of g (default 0)")
    ground.add_argument("--j", type=float, help="dipole-dipole coupling in units of g (default 0.1)")
    ground.add_argument("--a", type=float, help="photon hopping in units of g (default 0.1)")
    ground.add_argument("--full-model", action="store_const", const=True, dest="full_model",
                        help="use the four-atom model instead of the reduced one")
    ground.add_argument("--format", choices=("structured-text", "csv"),
                        help="output format (default structured-text)")
    ground.add_argument("--plot", action="store_const", const=True,
                        help="also render the report figure (requires --out)")

    swp = subs.add_parser("sweep", help="phase-diagram grid over (delta, j)")
    _add_common(swp)
    swp.add_argument("--delta-range", type=float, nargs=2, metavar=("MIN", "MAX"),
                     dest="delta_range", help="detuning range in units of g (default -10 10)")
    swp.add_argument("--j-range", type=float, nargs=2, metavar=("MIN", "MAX"),
                     dest="j_range", help="dipole range in units of g (default 0 10)")
    swp.add_argument("--resolution", type=int, help="grid points per axis (default 81)")
    swp.add_argument("--a", type=float, help="photon hopping in units of g (default 0.1)")
    swp.add_argument("--sf-eps", type=float, dest="sf_eps",
                     help=f"superfluid cutoff on var_n1 (default {DEFAULT_SUPERFLUID_EPS})")
    swp.add_argument("--pol-eps", type=float, dest="pol_eps",
                     help=f"polariton cutoff on var_na1 (default {DEFAULT_POLARITON_EPS})")
    swp.add_argument("--full-model", action="store_const", const=True, dest="full_model",
                     help="sweep the four-atom model")
    swp.add_argument("--format", choices=("structured-text", "csv"),
                     help="output format (sweep emits csv)")
    swp.add_argument("--plot", action="store_const", const=True,
                     help="also render heatmap figures (requires --out)")

    gaps = subs.add_parser("gaps", help="level gaps versus dipole coupling")
    _add_common(gaps)
    gaps.add_argument("--delta", type=float, help="fixed detuning in units of g (default 0)")
    gaps.add_argument("--j-range", type=float, nargs=2, metavar=("MIN", "MAX"),
                      dest="j_range", help="dipole range in units of g (default 0 10)")
    gaps.add_argument("--resolution", type=int, help="number of grid points (default 81)")
    gaps.add_argument("--format", choices=("structured-text", "csv"),
                      help="output format (gaps emits csv)")
    gaps.add_argument("--plot", action="store_const", const=True,
                      help="also render the gap-curve figure (requires --out)")

    val = subs.add_parser("validate", help="run the self-check battery")
    val.add_argument("--config", help="key=value config file; flags override it")
    val.add_argument("--seed", type=int, help="seed for the random parameter draws (default 0)")
    val.add_argument("--draws", type=int, help="number of random parameter draws (default 20)")

    return parser


def _plot_stem(out) -> Path:
    if not out:
        raise UsageError("--plot requires --out to anchor the figure files")
    path = Path(out)
    return path.with_suffix("") if path.suffix else path


def cmd_ground(args, config) -> int:
    flags = {
        "delta": _resolve(args, config, "delta", 0.0),
        "j": _resolve(args, config, "j", 0.1),
        "a": _resolve(args, config, "a", 0.1),
        "g": _resolve(args, config, "g", 1.0),
        "omega_c": _resolve(args, config, "omega_c", 0.0),
        "n": _resolve(args, config, "n", 2),
    }
    _require_finite(delta=flags["delta"], j=flags["j"], a=flags["a"],
                    g=flags["g"], omega_c=flags["omega_c"])
    if flags["n"] < 0:
        raise UsageError(f"--n must be >= 0, got {flags['n']}")
    if flags["g"] <= 0:
        raise UsageError(f"--g must be positive, got {flags['g']}")
    full_model = bool(_resolve(args, config, "full_model", False))
    out_format = _resolve(args, config, "format", "structured-text")

    params = ModelParams.from_detuning(
        delta=flags["delta"] * flags["g"], j=flags["j"] * flags["g"],
        a=flags["a"] * flags["g"], g=flags["g"],
        omega_c=flags["omega_c"] * flags["g"], n_excitations=flags["n"])
    report = ground_state_report(params, full_model=full_model)

    if out_format == "csv":
        text = ground_report_csv(report, flags)
    else:
        text = ground_report_json(report, flags)
    out = _resolve(args, config, "out", None)
    _emit(text, out)

    if _resolve(args, config, "plot", False):
        from . import plotting
        target = _plot_stem(out).with_suffix(".png")
        plotting.save_ground_report_figure(report, flags, target)
        print(f"wrote {target}", file=sys.stderr)
    return EXIT_OK


def cmd_sweep(args, config) -> int:
    out_format = _resolve(args, config, "format", "csv")
    if out_format != "csv":
        raise UsageError("sweep emits csv; --format structured-text is not supported")
    delta_range = _resolve(args, config, "delta_range", [-10.0, 10.0])
    j_range = _resolve(args, config, "j_range", [0.0, 10.0])
    g = _resolve(args, config, "g", 1.0)
    if g <= 0:
        raise UsageError(f"--g must be positive, got {g}")
    n = _resolve(args, config, "n", 2)
    if n < 0:
        raise UsageError(f"--n must be >= 0, got {n}")
    _require_finite(g=g, a=_resolve(args, config, "a", 0.1),
                    delta_min=delta_range[0], delta_max=delta_range[1],
                    j_min=j_range[0], j_max=j_range[1])
    try:
        spec = SweepSpec(
            delta_min=delta_range[0], delta_max=delta_range[1],
            j_min=j_range[0], j_max=j_range[1],
            resolution=_resolve(args, config, "resolution", 81),
            a=_resolve(args, config, "a", 0.1), g=g,
            omega_c=_resolve(args, config, "omega_c", 0.0),
            n_excitations=n,
            full_model=bool(_resolve(args, config, "full_model", False)),
            thresholds=ClassificationThresholds(
                superfluid_eps=_resolve(args, config, "sf_eps", DEFAULT_SUPERFLUID_EPS),
                polariton_eps=_resolve(args, config, "pol_eps", DEFAULT_POLARITON_EPS)))
    except ValueError as err:
        raise UsageError(str(err)) from err

    grid = sweep(spec)
    out = _resolve(args, config, "out", None)
    _emit(phase_grid_csv(grid), out)

    if _resolve(args, config, "plot", False):
        from . import plotting
        for target in plotting.save_phase_grid_figures(grid, _plot_stem(out)):
            print(f"wrote {target}", file=sys.stderr)
    return EXIT_OK


def cmd_gaps(args, config) -> int:
    out_format = _resolve(args, config, "format", "csv")
    if out_format != "csv":
        raise UsageError("gaps emits csv; --format structured-text is not supported")
    g = _resolve(args, config, "g", 1.0)
    if g <= 0:
        raise UsageError(f"--g must be positive, got {g}")
    delta = _resolve(args, config, "delta", 0.0)
    j_range = _resolve(args, config, "j_range", [0.0, 10.0])
    resolution = _resolve(args, config, "resolution", 81)
    _require_finite(g=g, delta=delta, j_min=j_range[0], j_max=j_range[1])

    params = ModelParams.from_detuning(
        delta=delta * g, g=g, omega_c=_resolve(args, config, "omega_c", 0.0) * g)
    try:
        table = gap_curve(j_range[0] * g, j_range[1] * g, resolution, params)
    except ValueError as err:
        raise UsageError(str(err)) from err
    # echo the dipole axis in units of g, like the flags and the sweep grid
    table[:, 0] /= g
    out = _resolve(args, config, "out", None)
    _emit(gap_table_csv(table), out)

    if _resolve(args, config, "plot", False):
        from . import plotting
        target = _plot_stem(out).with_suffix(".png")
        plotting.save_gap_curve_figure(table, target)
        print(f"wrote {target}", file=sys.stderr)
    return EXIT_OK


def cmd_validate(args, config) -> int:
    seed = _resolve(args, config, "seed", 0)
    draws = _resolve(args, config, "draws", 20)
    if draws < 0:
        raise UsageError(f"--draws must be >= 0, got {draws}")
    results = run_battery(seed=seed, draws=draws)
    for result in results:
        print(result.line())
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"FAILED: {', '.join(failed)}")
        return EXIT_RUNTIME
    print(f"all {len(results)} checks passed ({draws} random draws, seed {seed})")
    return EXIT_OK


_COMMANDS = {
    "ground": cmd_ground,
    "sweep": cmd_sweep,
    "gaps": cmd_gaps,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config) if args.config else {}
        return _COMMANDS[args.command](args, config)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError, JacobiConvergenceError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
