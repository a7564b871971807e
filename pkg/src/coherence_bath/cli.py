"""Command-line front end for coherence sweeps, surfaces and freezing reports.

Subcommands: single, two, surface, freeze, validate.  Every run can be
driven by an INI config file (one section per subcommand) with flags taking
precedence over file values; ``--dump-config`` writes the fully resolved
spec back out so a run can be reproduced from the file alone.

Exit codes: 0 success, 2 invalid input, 3 I/O failure, 4 validation
tolerance failure.
"""

import argparse
import configparser
import json
import math
import sys

import numpy as np

from .boundary import (
    Geometry,
    PolarizationWeights,
    noise_to_damping,
    rate_coefficients,
)
from .lindblad import VALIDATION_TOLERANCE, IntegratorConfig, validate_all
from .single_qubit import InitialAngles, freezing_report, sweep
from .two_qubit import (
    BellDiagonalParams,
    c_re_bd_closed_form,
    freezing_report_bd,
    sweep_bd,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3
EXIT_TOLERANCE = 4

_PRESETS = {
    "parallel": PolarizationWeights.parallel,
    "perpendicular": PolarizationWeights.perpendicular,
    "isotropic": PolarizationWeights.isotropic,
}


def _finite_float(text) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"value must be finite, got {text!r}")
    return value


def _positive_int(text) -> int:
    value = int(text)
    if value <= 0:
        raise ValueError(f"value must be a positive integer, got {text!r}")
    return value


def _choice(options):
    def convert(text):
        value = str(text).strip().lower()
        if value not in options:
            raise ValueError(f"expected one of {sorted(options)}, got {text!r}")
        return value

    return convert


def parse_polarization(text) -> PolarizationWeights:
    """Accept a preset name or an explicit 'ax,ay,az' weight triple."""
    name = str(text).strip().lower()
    if name in _PRESETS:
        return _PRESETS[name]()
    parts = name.split(",")
    if len(parts) != 3:
        raise ValueError(
            f"polarization must be one of {sorted(_PRESETS)} or 'ax,ay,az', got {text!r}"
        )
    return PolarizationWeights(*(_finite_float(p) for p in parts))


# Field tables: name -> (converter, default).  _REQUIRED defaults must be
# supplied by flag or config.
_REQUIRED = object()

_GRID_FIELDS = {
    "q_start": (_finite_float, 0.0),
    "q_stop": (_finite_float, 1.0),
    "q_count": (_positive_int, 101),
}
_ENV_FIELDS = {
    "geometry": (_choice({"unbounded", "mirror"}), "unbounded"),
    "u": (_finite_float, None),
    "polarization": (str, "parallel"),
}
_OUT_FIELDS = {
    "out": (str, "-"),
    "format": (_choice({"csv", "json"}), "csv"),
}

_FIELDS = {
    "single": {
        "theta": (_finite_float, math.pi / 2),
        "phi": (_finite_float, 0.0),
        **_ENV_FIELDS,
        **_GRID_FIELDS,
        **_OUT_FIELDS,
    },
    "two": {
        "c1": (_finite_float, _REQUIRED),
        "c2": (_finite_float, _REQUIRED),
        "c3": (_finite_float, _REQUIRED),
        **_ENV_FIELDS,
        **_GRID_FIELDS,
        **_OUT_FIELDS,
    },
    "surface": {
        "measure": (_choice({"l1", "re"}), "l1"),
        "preset": (_choice(set(_PRESETS)), "parallel"),
        **_GRID_FIELDS,
        "u_start": (_finite_float, 1e-2),
        "u_stop": (_finite_float, 10.0),
        "u_count": (_positive_int, 80),
        **_OUT_FIELDS,
    },
    "freeze": {
        "mode": (_choice({"single", "two"}), _REQUIRED),
        "theta": (_finite_float, math.pi / 2),
        "c1": (_finite_float, None),
        "c2": (_finite_float, None),
        "c3": (_finite_float, None),
        **_ENV_FIELDS,
        "out": (str, "-"),
    },
    "validate": {
        "seed": (_positive_int, 42),
        "cases": (_positive_int, 50),
        "step": (_finite_float, 1e-3),
        "out": (str, "-"),
    },
}


def _load_section(path: str, section: str) -> dict:
    parser = configparser.ConfigParser()
    with open(path, "r", encoding="utf-8") as handle:
        parser.read_file(handle)
    if not parser.has_section(section):
        return {}
    return dict(parser.items(section))


def resolve_spec(command: str, args: argparse.Namespace) -> dict:
    """Merge flag values, config-file values and defaults into one spec dict."""
    fields = _FIELDS[command]
    config = {}
    if getattr(args, "config", None):
        config = _load_section(args.config, command)
        unknown = set(config) - set(fields)
        if unknown:
            raise ValueError(f"unknown config keys in [{command}]: {sorted(unknown)}")
    spec = {}
    for name, (convert, default) in fields.items():
        flag_value = getattr(args, name, None)
        if flag_value is not None:
            spec[name] = flag_value
        elif name in config:
            spec[name] = convert(config[name])
        elif default is _REQUIRED:
            raise ValueError(f"missing required field '{name}' for '{command}'")
        else:
            spec[name] = default
    return spec


def dump_spec(command: str, spec: dict, path: str) -> None:
    """Serialize a resolved spec as an INI section, floats at full precision."""
    lines = [f"[{command}]"]
    for name in _FIELDS[command]:
        value = spec[name]
        if value is None:
            continue
        lines.append(f"{name} = {repr(value) if isinstance(value, float) else value}")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def _geometry_from_spec(spec: dict) -> Geometry:
    if spec["geometry"] == "unbounded":
        return Geometry.unbounded()
    if spec["u"] is None:
        raise ValueError("geometry 'mirror' requires a distance u")
    return Geometry.mirror(spec["u"])


def _q_grid(spec: dict) -> np.ndarray:
    start, stop, count = spec["q_start"], spec["q_stop"], spec["q_count"]
    if count < 2:
        raise ValueError(f"q_count must be at least 2, got {count}")
    if not 0.0 <= start < stop <= 1.0:
        raise ValueError(f"q grid must satisfy 0 <= start < stop <= 1, got [{start}, {stop}]")
    return np.linspace(start, stop, count)


def _render_rows(fieldnames, rows, fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(fieldnames)]
        for row in rows:
            lines.append(",".join(_cell(row[name]) for name in fieldnames))
        return "\n".join(lines) + "\n"
    return json.dumps(rows, indent=2) + "\n"


def _cell(value) -> str:
    return repr(value) if isinstance(value, float) else str(value)


def _write_text(out: str, text: str) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def cmd_single(args) -> int:
    """Sweep both coherence measures of a single qubit over q."""
    spec = resolve_spec("single", args)
    InitialAngles(spec["theta"], spec["phi"])  # range check; phases drop out below
    geometry = _geometry_from_spec(spec)
    polarization = parse_polarization(spec["polarization"])
    trace = sweep(spec["theta"], geometry, polarization, _q_grid(spec))
    rows = [{"q": q, "c_l1": l1, "c_re": re} for q, l1, re in trace.samples]
    if getattr(args, "dump_config", None):
        dump_spec("single", spec, args.dump_config)
    _write_text(spec["out"], _render_rows(["q", "c_l1", "c_re"], rows, spec["format"]))
    return EXIT_OK


def cmd_two(args) -> int:
    """Sweep a Bell-diagonal pair, including the closed-form comparison column."""
    spec = resolve_spec("two", args)
    bd = BellDiagonalParams(spec["c1"], spec["c2"], spec["c3"])
    geometry = _geometry_from_spec(spec)
    polarization = parse_polarization(spec["polarization"])
    gamma = rate_coefficients(geometry, polarization).gamma_eff
    trace = sweep_bd(bd, geometry, polarization, _q_grid(spec))
    rows = [
        {
            "q": q,
            "c_l1": l1,
            "c_re": re,
            "c_re_closed_form": c_re_bd_closed_form(bd, noise_to_damping(q, gamma)),
        }
        for q, l1, re in trace.samples
    ]
    if getattr(args, "dump_config", None):
        dump_spec("two", spec, args.dump_config)
    _write_text(
        spec["out"],
        _render_rows(["q", "c_l1", "c_re", "c_re_closed_form"], rows, spec["format"]),
    )
    return EXIT_OK


def cmd_surface(args) -> int:
    """Long-format (u, q, value) grid of one measure for a polarization preset."""
    spec = resolve_spec("surface", args)
    if spec["u_start"] <= 0.0 or spec["u_stop"] <= spec["u_start"]:
        raise ValueError(
            f"u grid must satisfy 0 < u_start < u_stop, got [{spec['u_start']}, {spec['u_stop']}]"
        )
    if spec["u_count"] < 2:
        raise ValueError(f"u_count must be at least 2, got {spec['u_count']}")
    polarization = _PRESETS[spec["preset"]]()
    q_grid = _q_grid(spec)
    u_grid = np.geomspace(spec["u_start"], spec["u_stop"], spec["u_count"])
    measure_index = 1 if spec["measure"] == "l1" else 2
    rows = []
    for u in u_grid:
        trace = sweep(math.pi / 2, Geometry.mirror(float(u)), polarization, q_grid)
        for sample in trace.samples:
            rows.append({"u": float(u), "q": sample[0], "value": sample[measure_index]})
    if getattr(args, "dump_config", None):
        dump_spec("surface", spec, args.dump_config)
    _write_text(spec["out"], _render_rows(["u", "q", "value"], rows, spec["format"]))
    return EXIT_OK


def cmd_freeze(args) -> int:
    """Freezing classification with its numeric derivative cross-check."""
    spec = resolve_spec("freeze", args)
    geometry = _geometry_from_spec(spec)
    polarization = parse_polarization(spec["polarization"])
    geometry_label = "unbounded" if not geometry.has_boundary else f"mirror u={geometry.u!r}"

    if spec["mode"] == "single":
        report = freezing_report(spec["theta"], geometry, polarization)
        payload = {
            "mode": "single",
            "theta": spec["theta"],
            "geometry": geometry_label,
            "l1_frozen": report.l1_frozen,
            "re_frozen": report.re_frozen,
            "reason": report.reason,
            "sup_dq_c_l1": report.sup_dq_c_l1,
            "sup_dq_c_re": report.sup_dq_c_re,
            "numeric_consistent": report.numeric_consistent,
        }
        lines = [
            f"mode: single (theta = {spec['theta']!r})",
            f"geometry: {geometry_label}",
            f"l1 norm:          {_frozen_word(report.l1_frozen, report.reason)}, "
            f"sup |dC/dq| = {report.sup_dq_c_l1:.3e}",
            f"relative entropy: {_frozen_word(report.re_frozen, report.reason)}, "
            f"sup |dC/dq| = {report.sup_dq_c_re:.3e}",
            f"numeric check: {'consistent' if report.numeric_consistent else 'INCONSISTENT'}",
        ]
    else:
        for name in ("c1", "c2", "c3"):
            if spec[name] is None:
                raise ValueError(f"freeze mode 'two' requires {name}")
        bd = BellDiagonalParams(spec["c1"], spec["c2"], spec["c3"])
        report = freezing_report_bd(bd, geometry, polarization)
        payload = {
            "mode": "two",
            "c": [bd.c1, bd.c2, bd.c3],
            "geometry": geometry_label,
            "frozen": report.frozen,
            "reason": report.reason,
            "sup_dq_c_l1": report.sup_dq_c_l1,
            "sup_dq_c_re": report.sup_dq_c_re,
            "numeric_consistent": report.numeric_consistent,
        }
        lines = [
            f"mode: two (c = ({bd.c1!r}, {bd.c2!r}, {bd.c3!r}))",
            f"geometry: {geometry_label}",
            f"both measures:    {_frozen_word(report.frozen, report.reason)}",
            f"sup |dC_l1/dq| = {report.sup_dq_c_l1:.3e}, "
            f"sup |dC_re/dq| = {report.sup_dq_c_re:.3e}",
            f"numeric check: {'consistent' if report.numeric_consistent else 'INCONSISTENT'}",
        ]

    print("\n".join(lines))
    twin = json.dumps(payload, indent=2) + "\n"
    if spec["out"] in (None, "-"):
        sys.stdout.write(twin)
    else:
        _write_text(spec["out"], twin)
    return EXIT_OK


def _frozen_word(frozen: bool, reason: str) -> str:
    return f"FROZEN ({reason})" if frozen else "not frozen"


def cmd_validate(args) -> int:
    """Randomized closed-form vs integrator comparison; exit 4 on tolerance failure."""
    spec = resolve_spec("validate", args)
    report = validate_all(spec["seed"], spec["cases"], IntegratorConfig(spec["step"]))
    lines = [
        f"cases: {report.n_cases} (seed {spec['seed']})",
        f"max elementwise |closed form - integrator| = {report.max_error:.3e} "
        f"(tolerance {VALIDATION_TOLERANCE:.0e})",
        f"worst case: {report.worst_case}",
        f"relative-entropy closed-form gap (c1*c2 != 0): {report.re_formula_gap:.3e}",
        f"  at: {report.re_formula_gap_case}",
        f"result: {'PASS' if report.passed else 'FAIL'}",
    ]
    print("\n".join(lines))
    if spec["out"] not in (None, "-"):
        payload = {
            "n_cases": report.n_cases,
            "seed": spec["seed"],
            "max_error": report.max_error,
            "worst_case": report.worst_case,
            "re_formula_gap": report.re_formula_gap,
            "re_formula_gap_case": report.re_formula_gap_case,
            "passed": report.passed,
        }
        _write_text(spec["out"], json.dumps(payload, indent=2) + "\n")
    return EXIT_OK if report.passed else EXIT_TOLERANCE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coherence-bath",
        description="Coherence dynamics of two-level atoms in the electromagnetic vacuum",
    )
    sub = parser.add_subparsers(dest="command")

    def add_common(p):
        p.add_argument("--config", help="INI config file; flags override file values")
        p.add_argument("--out", help="output path ('-' for stdout)")
        p.add_argument("--dump-config", help="write the fully resolved spec to this path")

    def add_env(p):
        p.add_argument("--geometry", type=_choice({"unbounded", "mirror"}))
        p.add_argument("--u", type=_finite_float, help="mirror distance u = omega0 z0 / c")
        p.add_argument(
            "--polarization",
            help="parallel | perpendicular | isotropic | 'ax,ay,az'",
        )

    def add_q_grid(p):
        p.add_argument("--q-start", dest="q_start", type=_finite_float)
        p.add_argument("--q-stop", dest="q_stop", type=_finite_float)
        p.add_argument("--q-count", dest="q_count", type=_positive_int)

    p_single = sub.add_parser("single", help="single-qubit coherence sweep over q")
    p_single.add_argument("--theta", type=_finite_float)
    p_single.add_argument("--phi", type=_finite_float)
    add_env(p_single)
    add_q_grid(p_single)
    p_single.add_argument("--format", type=_choice({"csv", "json"}))
    add_common(p_single)
    p_single.set_defaults(func=cmd_single)

    p_two = sub.add_parser("two", help="Bell-diagonal two-qubit sweep over q")
    p_two.add_argument("--c1", type=_finite_float)
    p_two.add_argument("--c2", type=_finite_float)
    p_two.add_argument("--c3", type=_finite_float)
    add_env(p_two)
    add_q_grid(p_two)
    p_two.add_argument("--format", type=_choice({"csv", "json"}))
    add_common(p_two)
    p_two.set_defaults(func=cmd_two)

    p_surface = sub.add_parser("surface", help="measure over a (u, q) grid")
    p_surface.add_argument("--measure", type=_choice({"l1", "re"}))
    p_surface.add_argument("--preset", type=_choice(set(_PRESETS)))
    add_q_grid(p_surface)
    p_surface.add_argument("--u-start", dest="u_start", type=_finite_float)
    p_surface.add_argument("--u-stop", dest="u_stop", type=_finite_float)
    p_surface.add_argument("--u-count", dest="u_count", type=_positive_int)
    p_surface.add_argument("--format", type=_choice({"csv", "json"}))
    add_common(p_surface)
    p_surface.set_defaults(func=cmd_surface)

    p_freeze = sub.add_parser("freeze", help="freezing classification report")
    p_freeze.add_argument("--mode", type=_choice({"single", "two"}))
    p_freeze.add_argument("--theta", type=_finite_float)
    p_freeze.add_argument("--c1", type=_finite_float)
    p_freeze.add_argument("--c2", type=_finite_float)
    p_freeze.add_argument("--c3", type=_finite_float)
    add_env(p_freeze)
    add_common(p_freeze)
    p_freeze.set_defaults(func=cmd_freeze)

    p_validate = sub.add_parser("validate", help="closed form vs integrator check")
    p_validate.add_argument("--seed", type=_positive_int)
    p_validate.add_argument("--cases", type=_positive_int)
    p_validate.add_argument("--step", type=_finite_float)
    add_common(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return EXIT_INVALID
    try:
        return args.func(args)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
