"""Cartesian parameter sweeps and the flat record schema shared with the CLI."""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .analysis import effective_cold_temperature, local_works
from .cycle import CyclePoint, run_cycle, work_decomposition
from .measurement import SideMeasurement, scheme_from_labels
from .medium import WorkingMedium
from .spin import SpinValue

CSV_COLUMNS = (
    "spin_a", "spin_b", "j", "b1", "b2", "kbt",
    "meas_a", "meas_b", "theta_a", "phi_a", "theta_b", "phi_b",
    "w1", "w2", "wt", "qm", "qt", "eta",
    "w_local_a", "w_local_b", "t2_effective", "cop", "status",
)
OUTPUT_FLAGS = ("local_works", "t2", "cop", "decomposition")
_CONFIG_KEYS = {"spin_a", "spin_b", "j_values", "b1_values", "b2_values", "scheme", "kbt", "outputs"}


class ConfigError(ValueError):
    """Malformed sweep configuration; ``field`` names the offending entry."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class PointSpec:
    """Everything needed to compute one record; picklable for worker processes."""

    spin_a: str
    spin_b: str
    j: float
    b1: float
    b2: float
    kbt: float
    meas_a: str
    meas_b: str
    outputs: frozenset = frozenset(OUTPUT_FLAGS)


@dataclass(frozen=True)
class SweepConfig:
    spin_a: str
    spin_b: str
    j_values: tuple
    b1_values: tuple
    b2_values: tuple
    meas_a: str
    meas_b: str
    kbt: float = 1.0
    outputs: frozenset = field(default_factory=frozenset)

    def points(self) -> list[PointSpec]:
        """Grid points in lexicographic (j, b1, b2) order."""
        return [
            PointSpec(self.spin_a, self.spin_b, j, b1, b2, self.kbt,
                      self.meas_a, self.meas_b, self.outputs)
            for j, b1, b2 in product(self.j_values, self.b1_values, self.b2_values)
        ]


def _finite(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(name, f"expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(name, "must be finite")
    return value


def _parse_values(name: str, raw) -> tuple:
    if isinstance(raw, list):
        values = tuple(_finite(name, v) for v in raw)
    elif isinstance(raw, dict):
        if set(raw) != {"start", "stop", "count"}:
            raise ConfigError(name, "a range needs exactly the keys start, stop, count")
        start, stop = _finite(name + ".start", raw["start"]), _finite(name + ".stop", raw["stop"])
        count = raw["count"]
        if isinstance(count, bool) or not isinstance(count, int):
            raise ConfigError(name + ".count", "must be an integer")
        if count < 1:
            raise ConfigError(name + ".count", "must be at least 1")
        values = tuple(float(v) for v in np.linspace(start, stop, count))
    else:
        raise ConfigError(name, "expected a list or a {start, stop, count} object")
    if not values:
        raise ConfigError(name, "must not be empty")
    return values


def _parse_side(name: str, raw) -> str:
    if isinstance(raw, dict):
        if set(raw) != {"theta", "phi"}:
            raise ConfigError(name, "angle descriptor needs exactly theta and phi")
        raw = f"theta={_finite(name + '.theta', raw['theta'])!r},phi={_finite(name + '.phi', raw['phi'])!r}"
    if not isinstance(raw, str):
        raise ConfigError(name, f"expected a descriptor string or angle object, got {raw!r}")
    try:
        return str(SideMeasurement.parse(raw))
    except ValueError as exc:
        raise ConfigError(name, str(exc)) from None


def parse_config(data) -> SweepConfig:
    """Validate a decoded JSON object into a :class:`SweepConfig`."""
    if not isinstance(data, dict):
        raise ConfigError("<root>", "expected a JSON object")
    unknown = sorted(set(data) - _CONFIG_KEYS)
    if unknown:
        raise ConfigError(unknown[0], "unknown key")
    spins = {}
    for key in ("spin_a", "spin_b"):
        if key not in data:
            raise ConfigError(key, "missing")
        try:
            spins[key] = str(SpinValue.parse(data[key]))
        except ValueError as exc:
            raise ConfigError(key, str(exc)) from None
    grids = {}
    for key in ("j_values", "b1_values", "b2_values"):
        if key not in data:
            raise ConfigError(key, "missing")
        grids[key] = _parse_values(key, data[key])
    scheme = data.get("scheme", {"a": "x", "b": "z"})
    if not isinstance(scheme, dict) or set(scheme) != {"a", "b"}:
        raise ConfigError("scheme", "expected an object with keys a and b")
    meas_a = _parse_side("scheme.a", scheme["a"])
    meas_b = _parse_side("scheme.b", scheme["b"])
    if meas_b == "sic":
        raise ConfigError("scheme.b", "'sic' is only supported on side A")
    if meas_a == "sic" and spins["spin_a"] != "1/2":
        raise ConfigError("scheme.a", "'sic' requires spin_a = 1/2")
    kbt = _finite("kbt", data.get("kbt", 1.0))
    if kbt <= 0:
        raise ConfigError("kbt", "must be positive")
    outputs = data.get("outputs", {})
    if not isinstance(outputs, dict):
        raise ConfigError("outputs", "expected an object of boolean flags")
    for key, value in outputs.items():
        if key not in OUTPUT_FLAGS:
            raise ConfigError(f"outputs.{key}", "unknown output flag")
        if not isinstance(value, bool):
            raise ConfigError(f"outputs.{key}", "must be true or false")
    enabled = frozenset(k for k, v in outputs.items() if v)
    return SweepConfig(spins["spin_a"], spins["spin_b"], grids["j_values"], grids["b1_values"],
                       grids["b2_values"], meas_a, meas_b, kbt, enabled)


def load_config(path: str) -> SweepConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError("<json>", f"line {exc.lineno}: {exc.msg}") from None
    return parse_config(data)


def _angles(desc: str) -> tuple[float | None, float | None]:
    side = SideMeasurement.parse(desc)
    return (None, None) if side.direction is None else side.direction


def compute_record(job: PointSpec, detail: bool = False) -> dict:
    """One flat record; computation failures land in ``status`` instead of raising.

    With ``detail`` the record also carries the transition matrix and the
    post-measurement occupations (JSON output only).
    """
    theta_a, phi_a = _angles(job.meas_a)
    theta_b, phi_b = _angles(job.meas_b)
    rec = dict.fromkeys(CSV_COLUMNS)
    rec.update(spin_a=job.spin_a, spin_b=job.spin_b, j=job.j, b1=job.b1, b2=job.b2,
               kbt=job.kbt, meas_a=job.meas_a, meas_b=job.meas_b,
               theta_a=theta_a, phi_a=phi_a, theta_b=theta_b, phi_b=phi_b)
    flags = []
    try:
        medium = WorkingMedium(job.spin_a, job.spin_b, job.j)
        point = CyclePoint(medium, job.b1, job.b2,
                           scheme_from_labels(medium, job.meas_a, job.meas_b), 1.0 / job.kbt)
        res = run_cycle(point)
        rec.update(w1=res.w1, w2=res.w2, wt=res.wt, qm=res.qm, qt=res.qt, eta=res.eta)
        if res.eta is None:
            flags.append("eta_undefined")
        if detail:
            rec["transition"] = res.transition.entries.tolist()
            rec["post_probs"] = res.post_probs.tolist()
        if "local_works" in job.outputs:
            lw = local_works(point, res)
            rec.update(w_local_a=lw.w_a, w_local_b=lw.w_b)
        if {"t2", "cop"} & job.outputs:
            fridge = effective_cold_temperature(point, res)
            if "t2" in job.outputs:
                rec["t2_effective"] = fridge.t2
                if fridge.t2 is None:
                    flags.append("t2_not_found")
            if "cop" in job.outputs:
                rec["cop"] = fridge.cop
                if fridge.cop is None:
                    flags.append("cop_not_applicable")
        if "decomposition" in job.outputs:
            rec["decomposition"] = work_decomposition(point).terms.tolist()
    except Exception as exc:  # a bad point must not abort the sweep
        flags.append(f"error: {type(exc).__name__}: {exc}")
    rec["status"] = ";".join(flags) if flags else "ok"
    return rec


def run_sweep(config: SweepConfig, threads: int | None = None) -> list[dict]:
    """Records in grid order; ``threads`` worker processes (1 runs inline)."""
    points = config.points()
    workers = threads if threads else (os.cpu_count() or 1)
    if workers <= 1 or len(points) < 2:
        return [compute_record(p) for p in points]
    chunk = max(1, len(points) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map yields in submission order, whatever the completion order
        return list(pool.map(compute_record, points, chunksize=chunk))


def format_value(value) -> str:
    """CSV cell text: 17 significant digits for floats, empty for missing values."""
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value + 0.0, "#.17g") if math.isfinite(value) else ""  # no "-0"
    return str(value)


def _csv_cell(text: str) -> str:
    if any(c in text for c in ',"\n\r'):
        return '"' + text.replace('"', '""') + '"'
    return text


def records_to_csv(records: list[dict]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for rec in records:
        lines.append(",".join(_csv_cell(format_value(rec.get(c))) for c in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def _json_ready(value):
    if isinstance(value, float):
        return value + 0.0 if math.isfinite(value) else None
    if isinstance(value, list):
        return [_json_ready(v) for v in value]
    if isinstance(value, dict):
        return {k: _json_ready(v) for k, v in value.items()}
    return value


def records_to_json(records: list[dict]) -> str:
    # repr-based float output round-trips exactly
    return json.dumps([_json_ready(r) for r in records], indent=2) + "\n"
