"""Parsers for the definition-file grammars used by the command line.

Three flat-text formats (materials, particle populations, layer stacks)
plus a JSON scenario format for link budgets.  All parsers accept ``#``
comments and blank lines and raise ConfigError with the offending line
number on bad input.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .budget import DETECTORS, DetectorSpec, RadioLink
from .constants import FIXED_INDEX
from .dielectrics import DebyeModel, Material, material_library
from .errors import ConfigError
from .multilayer import HalfSpace, Layer, LayerStack
from .pathloss import ParticlePopulation

__all__ = [
    "load_materials",
    "load_populations",
    "StackDefinition",
    "load_stack_definition",
    "build_stack",
    "Scenario",
    "load_scenario",
    "detector_from",
]

_DEBYE_KEYS = ("eps_inf", "eps_s", "eps_2", "tau1_ps", "tau2_ps")


def _clean_lines(path):
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _fail(path, lineno, msg):
    raise ConfigError(f"{path}:{lineno}: {msg}")


def load_materials(path):
    """Parse a material definition file into a dict of Material by name.

    Key-value lines ``key = value``; a ``name`` line opens a new entry.
    ``model = debye`` entries take eps_inf, eps_s, eps_2, tau1_ps and
    tau2_ps; ``model = table`` entries take ``lambda_nm, eps_real,
    eps_imag`` rows after the keys.
    """
    blocks = []
    current = None
    for lineno, line in _clean_lines(path):
        if "=" in line and "," not in line:
            key, _, value = line.partition("=")
            key = key.strip().lower()
            value = value.strip()
            if key == "name":
                current = {"name": value, "keys": {}, "rows": [], "line": lineno}
                blocks.append(current)
                continue
            if current is None:
                _fail(path, lineno, "key before any 'name =' line")
            current["keys"][key] = value
        else:
            if current is None:
                _fail(path, lineno, "table row before any 'name =' line")
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 3:
                _fail(path, lineno, "table rows need lambda_nm, eps_real, eps_imag")
            try:
                current["rows"].append(tuple(float(p) for p in parts))
            except ValueError:
                _fail(path, lineno, f"non-numeric table row {line!r}")

    materials = {}
    for block in blocks:
        name = block["name"]
        keys = block["keys"]
        model = keys.get("model")
        if model == "debye":
            missing = [k for k in _DEBYE_KEYS if k not in keys]
            if missing:
                _fail(path, block["line"], f"{name}: missing {', '.join(missing)}")
            if block["rows"]:
                _fail(path, block["line"], f"{name}: debye entry cannot carry table rows")
            try:
                vals = {k: float(keys[k]) for k in _DEBYE_KEYS}
                model_obj = DebyeModel.double(
                    eps_inf=vals["eps_inf"],
                    eps_s=vals["eps_s"],
                    eps_2=vals["eps_2"],
                    tau1=vals["tau1_ps"] * 1e-12,
                    tau2=vals["tau2_ps"] * 1e-12,
                )
                materials[name] = Material(
                    name=name, debye=model_obj, note=f"file: {path}"
                )
            except ValueError as exc:
                _fail(path, block["line"], f"{name}: {exc}")
        elif model == "table":
            if not block["rows"]:
                _fail(path, block["line"], f"{name}: table entry has no rows")
            table = tuple(
                (nm * 1e-9, complex(er, -ei)) for nm, er, ei in block["rows"]
            )
            try:
                materials[name] = Material(name=name, table=table, note=f"file: {path}")
            except ValueError as exc:
                _fail(path, block["line"], f"{name}: {exc}")
        else:
            _fail(path, block["line"], f"{name}: model must be 'debye' or 'table'")
    if not materials:
        raise ConfigError(f"{path}: no materials defined")
    return materials


def load_populations(path):
    """Parse a particle population file into a tuple of ParticlePopulation.

    Rows: name, radius_um, volume_fraction, rel_index, q_abs, size_class.
    A header row repeating those column names is skipped if present.
    """
    pops = []
    for lineno, line in _clean_lines(path):
        parts = [p.strip() for p in line.split(",")]
        if parts[0].lower() == "name":
            continue
        if len(parts) != 6:
            _fail(path, lineno, "expected 6 columns "
                  "(name, radius_um, volume_fraction, rel_index, q_abs, size_class)")
        name, radius_um, kappa, rel_index, q_abs, size_class = parts
        try:
            pop = ParticlePopulation(
                name=name,
                radius=float(radius_um) * 1e-6,
                volume_fraction=float(kappa),
                rel_index=complex(rel_index.replace(" ", "")),
                q_abs=float(q_abs),
                size_class=size_class,
            )
        except ValueError as exc:
            _fail(path, lineno, str(exc))
        pops.append(pop)
    if not pops:
        raise ConfigError(f"{path}: no populations defined")
    return tuple(pops)


@dataclass(frozen=True)
class StackDefinition:
    """Stack file contents before material resolution."""

    incident: str
    rows: tuple[tuple[str, float], ...]
    exit: str


def load_stack_definition(path):
    """Parse a stack file: ``incident = X``, then ``material, thickness_mm``
    rows, then ``exit = Y``."""
    incident = None
    exit_name = None
    rows = []
    for lineno, line in _clean_lines(path):
        if "=" in line:
            key, _, value = line.partition("=")
            key = key.strip().lower()
            value = value.strip()
            if key == "incident":
                if incident is not None:
                    _fail(path, lineno, "duplicate 'incident' header")
                if rows or exit_name is not None:
                    _fail(path, lineno, "'incident' must come first")
                incident = value
            elif key == "exit":
                if exit_name is not None:
                    _fail(path, lineno, "duplicate 'exit' header")
                exit_name = value
            else:
                _fail(path, lineno, f"unknown header {key!r}")
            continue
        if incident is None:
            _fail(path, lineno, "layer row before 'incident =' header")
        if exit_name is not None:
            _fail(path, lineno, "layer row after 'exit =' header")
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            _fail(path, lineno, "layer rows are 'material, thickness_mm'")
        try:
            rows.append((parts[0], float(parts[1])))
        except ValueError:
            _fail(path, lineno, f"bad thickness {parts[1]!r}")
    if incident is None or exit_name is None:
        raise ConfigError(f"{path}: needs both 'incident =' and 'exit =' headers")
    return StackDefinition(incident=incident, rows=tuple(rows), exit=exit_name)


def _attach(name, materials):
    index = FIXED_INDEX.get(name)
    material = materials.get(name) if materials else None
    if index is None and material is None:
        known = sorted(set(FIXED_INDEX) | set(materials or {}))
        raise ConfigError(
            f"unknown material {name!r}; known names: {', '.join(known)}"
        )
    return index, material


def build_stack(defn, set_name=None, extra_materials=None):
    """Resolve a StackDefinition into a LayerStack.

    Names resolve against the built-in fixed indices and, for dispersive
    evaluation, against the named built-in material set merged with any
    ``extra_materials``.  Either attachment may be absent; the evaluation
    mode decides which one is required.
    """
    materials = {}
    if set_name is not None:
        materials.update(material_library(set_name))
    if extra_materials:
        materials.update(extra_materials)

    def half_space(name):
        index, material = _attach(name, materials)
        return HalfSpace(name=name, index=index, material=material)

    layers = []
    for name, thickness_mm in defn.rows:
        index, material = _attach(name, materials)
        layers.append(
            Layer(name=name, thickness=thickness_mm * 1e-3, index=index, material=material)
        )
    return LayerStack(
        incident=half_space(defn.incident),
        layers=tuple(layers),
        exit=half_space(defn.exit),
    )


@dataclass(frozen=True)
class Scenario:
    """Named link-budget configuration."""

    name: str
    link: RadioLink
    detector: DetectorSpec
    snr_target_db: float


def detector_from(value):
    if isinstance(value, (int, float)):
        return DetectorSpec(name=f"custom_{value:g}_dbw", sensitivity_dbw=float(value))
    if isinstance(value, str):
        if value in DETECTORS:
            return DETECTORS[value]
        try:
            return detector_from(float(value))
        except ValueError:
            raise ConfigError(
                f"unknown detector {value!r}; known: {', '.join(sorted(DETECTORS))} "
                "or a sensitivity in dBW"
            ) from None
    raise ConfigError("detector must be a name or a sensitivity in dBW")


def load_scenario(path):
    """Parse a scenario JSON file into a Scenario."""
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(payload, dict):
        raise ConfigError(f"{path}: scenario must be a JSON object")
    try:
        link = RadioLink(
            tx_power_dbw=float(payload["tx_power_dbw"]),
            tx_gain_db=float(payload.get("tx_gain_db", 0.0)),
            rx_gain_db=float(payload.get("rx_gain_db", 0.0)),
            loss_db=float(payload["loss_db"]),
        )
    except KeyError as exc:
        raise ConfigError(f"{path}: missing field {exc.args[0]!r}") from None
    return Scenario(
        name=str(payload.get("name", Path(path).stem)),
        link=link,
        detector=detector_from(payload.get("detector", "thz_reference")),
        snr_target_db=float(payload.get("snr_target_db", 0.0)),
    )
