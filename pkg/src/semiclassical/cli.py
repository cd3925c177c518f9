"""Command-line front end: emits the partition-function tables as CSV or JSON.

Every command evaluates one row per point of a ``(g, theta)`` grid.  Floats
are written in shortest round-trip form, so identical configurations give
byte-identical output.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Optional, Union

from . import oracle, series
from .classical import q_plus
from .errors import SemiclassicalError
from .fluctuations import build_kernel, green_function
from .thermo import HeatSource

COMMANDS = ("partition", "energy", "heat", "limits", "table1", "green", "correction")
TABLE1_G = (0.4, 1.2, 2.0, 4.0, 8.0)
PROFILE_ENV = "SEMICLASSICAL_TOLERANCE_PROFILE"
PROFILES = {
    "default": {"z_epsrel": series.Z_EPSREL, "a1_epsrel": series.A1_EPSREL},
    "strict": {"z_epsrel": 1e-13, "a1_epsrel": 1e-11},
    "fast": {"z_epsrel": 1e-8, "a1_epsrel": 1e-7},
}

COLUMNS = {
    "partition": ("theta", "g", "z2", "z_corrected", "z_exact", "validity"),
    "energy": ("g", "e0_semiclassical", "e0_exact", "error_percent"),
    "table1": ("g", "e0_semiclassical", "e0_exact", "error_percent"),
    "heat": ("temperature", "theta", "c_semiclassical", "c_classical", "c_oracle"),
    "limits": ("theta", "g", "z2", "ratio_harmonic", "ratio_high_t", "ratio_low_t"),
    "green": ("q_t", "theta_total", "theta", "green_diagonal", "bound"),
    "correction": ("q_t", "theta", "a1", "bound"),
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Sweep:
    start: float
    stop: float
    count: int
    log: bool = False

    @classmethod
    def parse(cls, text):
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ConfigError(f"sweep must be min:max:count[:log], got {text!r}")
        if len(parts) == 4 and parts[3] not in ("log", "linear"):
            raise ConfigError(f"sweep spacing must be 'log' or 'linear', got {parts[3]!r}")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ConfigError(f"bad sweep {text!r}: {exc}") from None
        return cls(start, stop, count, len(parts) == 4 and parts[3] == "log")

    def values(self):
        if self.count == 1:
            return [self.start]
        n = self.count - 1
        if self.log:
            a, b = math.log(self.start), math.log(self.stop)
            vals = [math.exp(a + (b - a) * i / n) for i in range(self.count)]
        else:
            vals = [self.start + (self.stop - self.start) * i / n for i in range(self.count)]
        vals[0], vals[-1] = self.start, self.stop
        return vals


Axis = Union[float, Sweep, None]


def _axis_values(axis):
    if axis is None:
        return []
    if isinstance(axis, Sweep):
        return axis.values()
    return [axis]


@dataclass(frozen=True)
class RunConfig:
    command: str
    g: Axis = None
    theta: Axis = None
    q_t: Optional[float] = None
    points: int = 21
    output_format: str = "csv"
    output_path: Optional[str] = None
    tolerances: dict = field(default_factory=dict)
    parallel: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.output_format!r}")
        for name in ("g", "theta"):
            axis = getattr(self, name)
            if isinstance(axis, Sweep):
                if axis.count < 1:
                    raise ConfigError(f"{name} sweep count must be >= 1")
                if axis.log and min(axis.start, axis.stop) <= 0.0:
                    raise ConfigError(f"log {name} sweep needs positive bounds")
        # g = 0 is the harmonic oscillator, handled in closed form
        if any(not v >= 0.0 for v in _axis_values(self.g)):
            raise ConfigError("g must be >= 0")
        if any(not v > 0.0 for v in _axis_values(self.theta)):
            raise ConfigError("theta must be > 0")
        unknown = set(self.tolerances) - set(PROFILES["default"])
        if unknown:
            raise ConfigError(f"unknown tolerance keys {sorted(unknown)}")
        if self.points < 1:
            raise ConfigError("points must be >= 1")

    @classmethod
    def from_dict(cls, data):
        allowed = {f.name for f in fields(cls)}
        unknown = set(data) - allowed
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        data = dict(data)
        for name in ("g", "theta"):
            v = data.get(name)
            if isinstance(v, dict):
                data[name] = Sweep(**v)
            elif isinstance(v, str):
                data[name] = Sweep.parse(v)
        return cls(**data)

    def to_dict(self):
        out = asdict(self)
        for name in ("g", "theta"):
            v = getattr(self, name)
            if isinstance(v, Sweep):
                out[name] = asdict(v)
        return out

    def tolerance(self, key):
        profile = os.environ.get(PROFILE_ENV, "default")
        if profile not in PROFILES:
            raise ConfigError(f"{PROFILE_ENV}={profile!r} is not one of {sorted(PROFILES)}")
        return self.tolerances.get(key, PROFILES[profile][key])


def _require(value, name, command):
    if value is None or value == []:
        raise ConfigError(f"{command} needs --{name.replace('_', '-')}")
    return value


def _tasks(cfg):
    """Argument tuples, one per output row, in output order."""
    c = cfg.command
    gs, thetas = _axis_values(cfg.g), _axis_values(cfg.theta)
    if c == "table1":
        return [(g,) for g in (gs or TABLE1_G)]
    if c == "energy":
        return [(g,) for g in _require(gs, "g", c)]
    if c == "heat":
        g = _require(gs, "g", c)
        if len(g) != 1:
            raise ConfigError("heat takes a single --g")
        return [(g[0], th) for th in _require(thetas, "theta", c)]
    if c in ("partition", "limits"):
        return [(g, th) for g in _require(gs, "g", c) for th in _require(thetas, "theta", c)]
    if c == "green":
        th = _require(thetas, "theta", c)
        if len(th) != 1:
            raise ConfigError("green takes a single --theta")
        q_t = 0.0 if cfg.q_t is None else cfg.q_t
        n = cfg.points
        return [(q_t, th[0], th[0] * (i + 1) / (n + 1)) for i in range(n)]
    if c == "correction":
        q_t = 0.0 if cfg.q_t is None else cfg.q_t
        return [(q_t, th) for th in _require(thetas, "theta", c)]
    raise ConfigError(f"unknown command {c!r}")


def _row(cfg, args):
    c = cfg.command
    z_eps = cfg.tolerance("z_epsrel")
    a1_eps = cfg.tolerance("a1_epsrel")
    if c in ("table1", "energy"):
        (g,) = args
        sc = series.ground_energy(g)
        ex = oracle.spectrum(g, 1).ground
        return {"g": g, "e0_semiclassical": sc, "e0_exact": ex, "error_percent": (sc - ex) / ex * 100.0}
    if c == "heat":
        g, th = args
        return {
            "temperature": 1.0 / th,
            "theta": th,
            "c_semiclassical": series.specific_heat(th, g, HeatSource.SEMICLASSICAL).specific_heat,
            "c_classical": series.specific_heat(th, g, HeatSource.CLASSICAL).specific_heat,
            "c_oracle": oracle.exact_specific_heat(th, g).specific_heat,
        }
    if c == "partition":
        g, th = args
        r = series.z_corrected(th, g, epsrel=max(z_eps, 1e-8))
        return {
            "theta": th,
            "g": g,
            "z2": series.z2(th, g, epsrel=z_eps).z2,
            "z_corrected": r.z_corrected,
            "z_exact": oracle.exact_z(th, g),
            "validity": r.validity,
        }
    if c == "limits":
        g, th = args
        z = series.z2(th, g, epsrel=z_eps).z2
        harm = 0.5 / math.sinh(0.5 * th)
        if g == 0.0:
            return {"theta": th, "g": g, "z2": z, "ratio_harmonic": z / harm, "ratio_high_t": 1.0, "ratio_low_t": 1.0}
        return {
            "theta": th,
            "g": g,
            "z2": z,
            "ratio_harmonic": z / harm,
            "ratio_high_t": z / series.z2_high_t(th, g),
            "ratio_low_t": z / series.z2_low_t(th, g),
        }
    if c == "green":
        q_t, big, th = args
        kernel = build_kernel(q_t, big)
        return {
            "q_t": q_t,
            "theta_total": big,
            "theta": th,
            "green_diagonal": green_function(kernel, th, th),
            "bound": th * (big - th) / big,
        }
    if c == "correction":
        q_t, th = args
        if abs(q_t) >= q_plus(th):
            raise ConfigError(f"|q_t|={abs(q_t)} is not below q_plus({th})={q_plus(th)}")
        return {"q_t": q_t, "theta": th, "a1": series.first_correction_a1(q_t, th, epsrel=a1_eps), "bound": th**3 / 40.0}
    raise ConfigError(f"unknown command {c!r}")


def _safe_row(cfg, args):
    # worker entry point: returns (row, error, warnings) and never raises
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            row = _row(cfg, args)
            err = None
        except (SemiclassicalError, ConfigError, ArithmeticError, ValueError) as exc:
            row, err = None, {"error": type(exc).__name__, "message": str(exc)}
    return row, err, sorted({str(w.message) for w in caught})


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def run(cfg, stdout=None, stderr=None):
    """Execute ``cfg``, write the dataset, and return the process exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    columns = COLUMNS[cfg.command]
    tasks = _tasks(cfg)
    rows, notes, failure = [], [], None
    if cfg.parallel > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallel) as pool:
            results = list(pool.map(_safe_row, [cfg] * len(tasks), tasks))
    else:
        results = []
        for t in tasks:
            results.append(_safe_row(cfg, t))
            if results[-1][1] is not None:
                break
    for i, (row, err, caught) in enumerate(results):
        notes.extend(f"row {i}: {m}" for m in caught)
        if err is not None:
            failure = dict(err, command=cfg.command, row=i, args=list(tasks[i]))
            break
        rows.append(row)

    if cfg.output_format == "json":
        payload = {
            "config": cfg.to_dict(),
            "rows": rows,
            "diagnostics": {"row_count": len(rows), "failed": failure is not None, "warnings": notes, "failure": failure},
        }
        text = json.dumps(payload, indent=2, allow_nan=True) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("status",) + columns)
        for row in rows:
            writer.writerow(("ok",) + tuple(_fmt(row[c]) for c in columns))
        if failure is not None:
            writer.writerow(("FAILED",) + ("",) * len(columns))
        text = buf.getvalue()

    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if failure is not None:
        stderr.write(json.dumps(failure) + "\n")
        return 1
    return 0


def _axis_arg(ns, name):
    single, sweep = getattr(ns, name), getattr(ns, f"{name}_sweep")
    if single is not None and sweep is not None:
        raise ConfigError(f"give either --{name} or --{name}-sweep, not both")
    return Sweep.parse(sweep) if sweep is not None else single


def build_parser():
    p = argparse.ArgumentParser(prog="semiclassical", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--g", type=float, help="coupling")
    p.add_argument("--g-sweep", metavar="MIN:MAX:COUNT[:log]")
    p.add_argument("--theta", type=float, help="inverse temperature")
    p.add_argument("--theta-sweep", metavar="MIN:MAX:COUNT[:log]")
    p.add_argument("--q-t", type=float, help="turning point (green, correction)")
    p.add_argument("--points", type=int, default=21, help="interior theta samples for green")
    p.add_argument("--format", dest="output_format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", dest="output_path")
    p.add_argument("--z-epsrel", type=float, help="relative target for the turning-point integral")
    p.add_argument("--a1-epsrel", type=float, help="relative target for the a1 integral")
    p.add_argument("--parallel", type=int, default=0, metavar="N", help="worker processes for sweeps")
    return p


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    tol = {k: getattr(ns, k) for k in ("z_epsrel", "a1_epsrel") if getattr(ns, k) is not None}
    try:
        cfg = RunConfig(
            command=ns.command,
            g=_axis_arg(ns, "g"),
            theta=_axis_arg(ns, "theta"),
            q_t=ns.q_t,
            points=ns.points,
            output_format=ns.output_format,
            output_path=ns.output_path,
            tolerances=tol,
            parallel=ns.parallel,
        )
        _tasks(cfg)
        for key in PROFILES["default"]:
            cfg.tolerance(key)
    except ConfigError as exc:
        sys.stderr.write(json.dumps({"error": "ConfigError", "message": str(exc)}) + "\n")
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
