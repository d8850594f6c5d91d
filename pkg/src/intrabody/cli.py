"""Command-line front end: single evaluations and grid sweeps to CSV/JSON.

Output is deterministic: fixed row order, fixed float formatting, and a
leading comment line recording the parameter set and index mode so every
file carries its own provenance.  Exit codes: 0 success, 1 computation
domain error, 2 configuration or resolution error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import budget as bud
from ._format import fmt9
from .constants import FIXED_INDEX, SPEED_OF_LIGHT
from .dielectrics import (
    conductivity,
    lookup_permittivity,
    material_library,
    material_set_names,
    penetration_depth,
    permittivity_to_index,
)
from .errors import ConfigError, DomainError
from .fresnel import reflectance_sweep
from .loaders import (
    build_stack,
    detector_from,
    load_materials,
    load_populations,
    load_scenario,
    load_stack_definition,
)
from .multilayer import frequency_sweep, reverse_stack
from .pathloss import Beam, PropagationMedium, total_path_loss

__all__ = ["main"]


def data_root():
    """Directory of the data files shipped inside the package."""
    return Path(str(resources.files("intrabody") / "data"))


def _grid(start, stop, points, spacing):
    points = int(points)
    if points < 1:
        raise ConfigError("points must be >= 1")
    if points == 1:
        return np.array([float(start)])
    if not float(start) < float(stop):
        raise ConfigError("sweep needs start < stop")
    if spacing == "log":
        if float(start) <= 0.0:
            raise ConfigError("log spacing needs start > 0")
        return np.logspace(math.log10(start), math.log10(stop), points)
    return np.linspace(float(start), float(stop), points)


def _emit(fmt, provenance, columns, rows):
    if fmt == "csv":
        lines = ["# " + " ".join(f"{k}={v}" for k, v in provenance.items())]
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(fmt9(v) for v in row))
        return "\n".join(lines) + "\n"
    payload = {
        "provenance": {k: str(v) for k, v in provenance.items()},
        "columns": list(columns),
        "rows": [[float(fmt9(v)) for v in row] for row in rows],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _resolve_material(name, set_name, materials_file):
    library = dict(material_library(set_name))
    if materials_file:
        library.update(load_materials(materials_file))
    if name not in library:
        raise ConfigError(
            f"unknown material {name!r} in set {set_name!r}; "
            f"known: {', '.join(sorted(library))}"
        )
    return library[name]


def _sweep_wavelengths(args, var):
    """Grid for the sweep variable plus the matching vacuum wavelengths."""
    defaults = {
        "frequency": (0.1, 1.0, 91, "linear"),
        "wavelength": (450.0, 1000.0, 111, "linear"),
        "distance": (0.01, 10.0, 100, "log"),
    }
    d_start, d_stop, d_points, d_spacing = defaults[var]
    start = d_start if args.start is None else args.start
    stop = d_stop if args.stop is None else args.stop
    points = d_points if args.points is None else args.points
    spacing = args.spacing or d_spacing
    return _grid(start, stop, points, spacing)


def _fixed_wavelength(args):
    if args.freq_thz is not None and args.wavelength_nm is not None:
        raise ConfigError("give either --freq-thz or --wavelength-nm, not both")
    if args.freq_thz is not None:
        if args.freq_thz <= 0:
            raise ConfigError("--freq-thz must be positive")
        return SPEED_OF_LIGHT / (args.freq_thz * 1e12)
    if args.wavelength_nm is not None:
        if args.wavelength_nm <= 0:
            raise ConfigError("--wavelength-nm must be positive")
        return args.wavelength_nm * 1e-9
    return None


def run_dielectric(args):
    set_name = args.set or "table"
    if not args.material:
        raise ConfigError("dielectric needs --material")
    material = _resolve_material(args.material, set_name, args.materials_file)
    var = args.sweep or "frequency"
    if var not in ("frequency", "wavelength"):
        raise ConfigError("dielectric sweeps over frequency or wavelength")
    grid = _sweep_wavelengths(args, var)
    if var == "frequency":
        lams = SPEED_OF_LIGHT / (grid * 1e12)
        xcol = "freq_THz"
    else:
        lams = grid * 1e-9
        xcol = "lambda_nm"
    rows = []
    for x, lam in zip(grid, lams):
        eps = lookup_permittivity(material, lam)
        index = permittivity_to_index(eps)
        f = SPEED_OF_LIGHT / lam
        sigma = conductivity(-eps.imag, f)
        rows.append(
            (
                x,
                eps.real,
                -eps.imag,
                index.real,
                -index.imag,
                sigma,
                penetration_depth(sigma, f),
            )
        )
    provenance = {"set": set_name, "mode": "dispersive", "material": material.name}
    columns = (xcol, "eps_real", "eps_imag", "n", "kappa", "sigma_S_per_m", "pen_depth_m")
    return _emit(args.format or "csv", provenance, columns, rows)


def _beam_from(args):
    kind = args.beam or "isotropic"
    if kind == "isotropic":
        return Beam()
    if args.half_width_deg is None:
        raise ConfigError(f"beam kind {kind!r} needs --half-width-deg")
    return Beam(kind=kind, half_width=math.radians(args.half_width_deg))


def run_pathloss(args):
    set_name = args.set or "table"
    if not args.material:
        raise ConfigError("pathloss needs --material (the host medium)")
    host = _resolve_material(args.material, set_name, args.materials_file)
    particles = load_populations(args.populations) if args.populations else ()
    medium = PropagationMedium(host=host, particles=tuple(particles))
    beam = _beam_from(args)

    var = args.sweep or "distance"
    if var not in ("distance", "frequency", "wavelength"):
        raise ConfigError("pathloss sweeps over distance, frequency or wavelength")
    grid = _sweep_wavelengths(args, var)

    rows = []
    if var == "distance":
        lam = _fixed_wavelength(args)
        if lam is None:
            raise ConfigError("distance sweeps need --freq-thz or --wavelength-nm")
        f = SPEED_OF_LIGHT / lam
        for d_mm in grid:
            b = total_path_loss(medium, f, d_mm * 1e-3, beam)
            rows.append((d_mm, b.spread_db, b.absorption_db, b.scattering_db, b.total_db))
        fixed = {"freq_THz": fmt9(f / 1e12)}
        xunit = "distance_mm"
    else:
        if args.distance_mm is None:
            raise ConfigError(f"{var} sweeps need --distance-mm")
        d = args.distance_mm * 1e-3
        for x in grid:
            f = x * 1e12 if var == "frequency" else SPEED_OF_LIGHT / (x * 1e-9)
            b = total_path_loss(medium, f, d, beam)
            rows.append((x, b.spread_db, b.absorption_db, b.scattering_db, b.total_db))
        fixed = {"distance_mm": fmt9(args.distance_mm)}
        xunit = "freq_THz" if var == "frequency" else "lambda_nm"

    provenance = {
        "set": set_name,
        "mode": "dispersive",
        "material": host.name,
        "populations": Path(args.populations).name if args.populations else "none",
        "beam": beam.kind,
        "sweep": xunit,
        **fixed,
    }
    columns = ("x", "spread_db", "abs_db", "scat_db", "total_db")
    return _emit(args.format or "csv", provenance, columns, rows)


def _reflect_indices(args):
    mode = args.mode or "fixed"
    if args.n1 is not None or args.n2 is not None:
        if args.n1 is None or args.n2 is None:
            raise ConfigError("give both --n1 and --n2")
        try:
            return complex(args.n1), complex(args.n2), {"n1": args.n1, "n2": args.n2}
        except ValueError:
            raise ConfigError("--n1/--n2 must be numbers (complex accepted)") from None
    if not (args.material1 and args.material2):
        raise ConfigError("reflect needs --n1/--n2 or --material1/--material2")
    names = (args.material1, args.material2)
    if mode == "fixed":
        missing = [n for n in names if n not in FIXED_INDEX]
        if missing:
            raise ConfigError(
                f"no fixed index for {', '.join(missing)}; "
                f"known: {', '.join(sorted(FIXED_INDEX))}"
            )
        n1, n2 = (FIXED_INDEX[n] for n in names)
    else:
        lam = _fixed_wavelength(args)
        if lam is None:
            raise ConfigError("dispersive reflect needs --freq-thz or --wavelength-nm")
        set_name = args.set or "table"
        mats = [_resolve_material(n, set_name, args.materials_file) for n in names]
        n1, n2 = (permittivity_to_index(lookup_permittivity(m, lam)) for m in mats)
    return n1, n2, {"material1": names[0], "material2": names[1]}


def run_reflect(args):
    n1, n2, named = _reflect_indices(args)
    custom = None
    if args.start is not None or args.stop is not None or args.points is not None:
        start = 0.0 if args.start is None else args.start
        stop = 89.0 if args.stop is None else args.stop
        points = 90 if args.points is None else args.points
        custom = _grid(start, stop, points, args.spacing or "linear")
    appendix = bool(args.appendix_grid)
    theta, r_te = reflectance_sweep(n1, n2, "TE", theta_deg=custom, appendix_grid=appendix)
    _, r_tm = reflectance_sweep(n1, n2, "TM", theta_deg=custom, appendix_grid=appendix)
    rows = [
        (t, te, tm, te * te, tm * tm)
        for t, te, tm in zip(theta, r_te, r_tm)
    ]
    provenance = {
        "set": args.set or "none",
        "mode": args.mode or "fixed",
        **named,
        "grid": "appendix" if appendix else ("custom" if custom is not None else "default"),
    }
    columns = ("theta_deg", "r_te_mag", "r_tm_mag", "r_te_power", "r_tm_power")
    return _emit(args.format or "csv", provenance, columns, rows)


def run_stack(args):
    mode = args.mode or "fixed"
    stack_path = args.stack or str(data_root() / "default_tissue_stack.txt")
    defn = load_stack_definition(stack_path)
    set_name = args.set or ("table" if mode == "dispersive" else None)
    extra = load_materials(args.materials_file) if args.materials_file else None
    stack = build_stack(defn, set_name=set_name, extra_materials=extra)
    if args.reverse:
        stack = reverse_stack(stack)

    start = 0.1 if args.start is None else args.start
    stop = 1.0 if args.stop is None else args.stop
    points = 901 if args.points is None else args.points
    freqs_thz = _grid(start, stop, points, args.spacing or "linear")

    angle = math.radians(args.angle_deg or 0.0)
    pol = args.pol or "TE"
    responses = frequency_sweep(
        stack, freqs_thz * 1e12, angle=angle, polarization=pol, index_mode=mode
    )
    rows = [
        (
            f_thz,
            r.reflect_percent,
            r.transmit_percent,
            r.non_reflected_percent,
            r.resistance,
            r.reactance,
        )
        for f_thz, r in zip(freqs_thz, responses)
    ]
    provenance = {
        "set": set_name or "none",
        "mode": mode,
        "stack": Path(stack_path).name,
        "reverse": "yes" if args.reverse else "no",
        "pol": pol,
        "angle_deg": fmt9(args.angle_deg or 0.0),
    }
    columns = ("freq_THz", "reflect_pct", "transmit_pct", "non_reflected_pct", "R_ohm", "X_ohm")
    return _emit(args.format or "csv", provenance, columns, rows)


def _resolve_scenario(value):
    path = Path(value)
    if path.exists():
        return load_scenario(path)
    candidate = data_root() / "scenarios" / f"{value}.json"
    if candidate.exists():
        return load_scenario(candidate)
    shipped = sorted(p.stem for p in (data_root() / "scenarios").glob("*.json"))
    raise ConfigError(
        f"scenario {value!r} is neither a file nor a shipped name; "
        f"shipped: {', '.join(shipped)}"
    )


def run_budget(args):
    if args.format == "csv":
        raise ConfigError("budget reports are JSON only")
    scenario = _resolve_scenario(args.scenario) if args.scenario else None

    def pick(flag, from_scenario, fallback):
        if flag is not None:
            return flag
        if scenario is not None:
            return from_scenario(scenario)
        return fallback

    link = bud.RadioLink(
        tx_power_dbw=pick(args.pt_dbw, lambda s: s.link.tx_power_dbw, bud.THZ_TX_DBW),
        tx_gain_db=pick(args.gt_db, lambda s: s.link.tx_gain_db, 0.0),
        rx_gain_db=pick(args.gr_db, lambda s: s.link.rx_gain_db, 0.0),
        loss_db=pick(args.loss_db, lambda s: s.link.loss_db, 0.0),
    )
    snr = pick(args.snr_db, lambda s: s.snr_target_db, 0.0)
    if args.detector is not None:
        detector = detector_from(args.detector)
    elif scenario is not None:
        detector = scenario.detector
    else:
        detector = bud.DETECTORS["thz_reference"]

    report = bud.link_feasibility(link, detector, snr)
    payload = {
        "scenario": scenario.name if scenario else "cli",
        "tx_power_dbw": float(fmt9(link.tx_power_dbw)),
        "tx_gain_db": float(fmt9(link.tx_gain_db)),
        "rx_gain_db": float(fmt9(link.rx_gain_db)),
        "loss_db": float(fmt9(link.loss_db)),
        "snr_target_db": float(fmt9(snr)),
        "detector": {
            "name": detector.name,
            "sensitivity_dbw": float(fmt9(detector.sensitivity_dbw)),
        },
        "received_dbw": float(fmt9(report.received_dbw)),
        "received_watts": float(fmt9(report.received_watts)),
        "required_threshold_dbw": float(fmt9(report.required_threshold_dbw)),
        "margin_db": float(fmt9(report.margin_db)),
        "feasible": report.feasible,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


_DISPATCH = {
    "dielectric": run_dielectric,
    "pathloss": run_pathloss,
    "reflect": run_reflect,
    "stack": run_stack,
    "budget": run_budget,
}

_CONFIGURABLE = {
    "material", "materials_file", "populations", "sweep", "start", "stop",
    "points", "spacing", "freq_thz", "wavelength_nm", "distance_mm", "beam",
    "half_width_deg", "n1", "n2", "material1", "material2", "appendix_grid",
    "stack", "reverse", "pol", "angle_deg", "scenario", "pt_dbw", "gt_db",
    "gr_db", "loss_db", "snr_db", "detector", "set", "mode", "format",
}


def _apply_config(args):
    if not args.config:
        return
    try:
        payload = json.loads(Path(args.config).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{args.config}: invalid JSON ({exc})") from None
    if not isinstance(payload, dict):
        raise ConfigError(f"{args.config}: config must be a JSON object")
    for key, value in payload.items():
        attr = key.replace("-", "_")
        if attr not in _CONFIGURABLE:
            raise ConfigError(f"{args.config}: unknown config key {key!r}")
        if getattr(args, attr, None) is None:
            setattr(args, attr, value)


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of defaults for any flag")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--set", choices=list(material_set_names()),
                        help="built-in material parameter set")
    common.add_argument("--mode", choices=["fixed", "dispersive"],
                        help="how layer indices are resolved")
    common.add_argument("--materials-file", help="extra material definitions")

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--sweep", help="sweep variable")
    sweep.add_argument("--start", type=float)
    sweep.add_argument("--stop", type=float)
    sweep.add_argument("--points", type=int)
    sweep.add_argument("--spacing", choices=["linear", "log"])

    parser = argparse.ArgumentParser(
        prog="intrabody",
        description="Tissue-channel sweeps: dielectrics, path loss, "
                    "interface and stack reflection, link budgets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dielectric", parents=[common, sweep],
                       help="permittivity, index, conductivity series")
    p.add_argument("--material")

    p = sub.add_parser("pathloss", parents=[common, sweep],
                       help="spreading/absorption/scattering loss series")
    p.add_argument("--material", help="host medium name")
    p.add_argument("--populations", help="particle population file")
    p.add_argument("--freq-thz", "--freq", dest="freq_thz", type=float)
    p.add_argument("--wavelength-nm", type=float)
    p.add_argument("--distance-mm", type=float)
    p.add_argument("--beam", choices=["isotropic", "cone", "gaussian"])
    p.add_argument("--half-width-deg", type=float)

    p = sub.add_parser("reflect", parents=[common, sweep],
                       help="single-interface angle sweep, both polarizations")
    p.add_argument("--n1")
    p.add_argument("--n2")
    p.add_argument("--material1")
    p.add_argument("--material2")
    p.add_argument("--freq-thz", "--freq", dest="freq_thz", type=float)
    p.add_argument("--wavelength-nm", type=float)
    p.add_argument("--appendix-grid", action="store_const", const=True,
                   help="integer degrees 0..90 with the 90 limit pinned")

    p = sub.add_parser("stack", parents=[common, sweep],
                       help="layered-stack frequency sweep")
    p.add_argument("--stack", help="stack definition file")
    p.add_argument("--reverse", action="store_const", const=True,
                   help="swap half-spaces and reverse layer order")
    p.add_argument("--pol", choices=["TE", "TM"])
    p.add_argument("--angle-deg", type=float)

    p = sub.add_parser("budget", parents=[common],
                       help="link-budget JSON report")
    p.add_argument("--scenario", help="scenario file or shipped scenario name")
    p.add_argument("--pt-dbw", type=float)
    p.add_argument("--gt-db", type=float)
    p.add_argument("--gr-db", type=float)
    p.add_argument("--loss-db", type=float)
    p.add_argument("--snr-db", type=float)
    p.add_argument("--detector", help="detector name or sensitivity in dBW")

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        text = _DISPATCH[args.command](args)
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
