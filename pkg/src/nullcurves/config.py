"""Run configuration: INI files, command-line overrides and fixture lookup."""

from __future__ import annotations

import configparser
import csv
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .curves import Curve
from .errors import ConfigError
from .fixtures import curve_fixture, structure_fixture
from .frenet_null import SignConvention
from .manifold import ACBMStructure, MetricTag
from .tolerances import DEFAULT_SEED

SEED_ENV = "NULLCURVE_SEED"
TOLERANCE_KEYS = ("alg", "slant", "frenet", "classify")
FORMATS = ("json", "csv", "table")


def parse_window(text: str) -> tuple:
    try:
        lo, hi = (float(x) for x in str(text).split(":"))
    except ValueError as exc:
        raise ConfigError(f"window must look like t0:t1, got {text!r}") from exc
    if not lo < hi:
        raise ConfigError(f"window needs t0 < t1, got {text!r}")
    return lo, hi


def _sign(text, what) -> int:
    try:
        v = int(text)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{what} must be +1 or -1") from exc
    if v not in (1, -1):
        raise ConfigError(f"{what} must be +1 or -1")
    return v


def _metric(text) -> MetricTag:
    try:
        return MetricTag(str(text).lower())
    except ValueError as exc:
        raise ConfigError(f"metric must be g or gtilde, got {text!r}") from exc


@dataclass
class RunConfig:
    manifold: str = "solvable_group"
    curve: Optional[str] = None
    metric: MetricTag = MetricTag.G
    window: Optional[tuple] = None
    samples: Optional[int] = None
    signs: SignConvention = field(default_factory=SignConvention)
    tolerances: dict = field(default_factory=dict)
    fmt: str = "json"
    out: Optional[str] = None
    seed: int = DEFAULT_SEED
    a: Optional[float] = None
    b: Optional[float] = None
    inline_structure: Optional[dict] = None

    def validate(self) -> "RunConfig":
        if self.window is not None and not self.window[0] < self.window[1]:
            raise ConfigError("window needs t0 < t1")
        if self.samples is not None and self.samples < 8:
            raise ConfigError("samples must be at least 8")
        if self.fmt not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        unknown = set(self.tolerances) - set(TOLERANCE_KEYS)
        if unknown:
            raise ConfigError(f"unknown tolerance keys {sorted(unknown)}")
        return self

    def tol(self, key: str, default: float) -> float:
        return float(self.tolerances.get(key, default))

    def structure(self) -> ACBMStructure:
        if self.inline_structure is not None:
            return inline_structure(self.inline_structure)
        return structure_fixture(self.manifold)

    def load_curve(self) -> Curve:
        if self.curve is None:
            raise ConfigError("a curve is required for this command")
        c = resolve_curve(self.curve)
        if self.window is not None:
            c = c.with_domain(*self.window)
        return c


def _floats(text: str, n: int, what: str) -> np.ndarray:
    try:
        vals = [float(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ConfigError(f"{what}: expected numbers") from exc
    if len(vals) != n:
        raise ConfigError(f"{what}: expected {n} numbers, got {len(vals)}")
    return np.array(vals)


def inline_structure(section: dict) -> ACBMStructure:
    """Constant structure from an INI section with keys metric, phi (row-major
    3x3), xi, eta and bracket_ij = three numbers."""
    for key in ("metric", "phi", "xi", "eta"):
        if key not in section:
            raise ConfigError(f"manifold section lacks {key!r}")
    brackets = {}
    for key, value in section.items():
        if key.startswith("bracket_"):
            ij = key[len("bracket_"):]
            if len(ij) != 2 or not ij.isdigit() or not all(c in "123" for c in ij):
                raise ConfigError(f"bad bracket key {key!r}")
            brackets[(int(ij[0]), int(ij[1]))] = tuple(_floats(value, 3, key))
    return ACBMStructure.from_constants(
        metric=_floats(section["metric"], 9, "metric").reshape(3, 3),
        phi=_floats(section["phi"], 9, "phi").reshape(3, 3),
        xi=_floats(section["xi"], 3, "xi"),
        eta=_floats(section["eta"], 3, "eta"),
        brackets=brackets,
        name=section.get("name", "inline"),
    )


def load_curve_table(path) -> Curve:
    """CSV with header t,x1,x2,x3,v1,v2,v3 and optional a1,a2,a3."""
    try:
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        t = [float(r["t"]) for r in rows]
        pos = [[float(r[f"x{i}"]) for i in (1, 2, 3)] for r in rows]
        vel = [[float(r[f"v{i}"]) for i in (1, 2, 3)] for r in rows]
        acc = None
        if rows and "a1" in rows[0]:
            acc = [[float(r[f"a{i}"]) for i in (1, 2, 3)] for r in rows]
        return Curve.from_table(t, pos, vel, acc, name=Path(path).stem)
    except (KeyError, ValueError, OSError) as exc:
        raise ConfigError(f"cannot read curve table {path}: {exc}") from exc


def resolve_curve(spec: str) -> Curve:
    if spec.endswith(".csv"):
        return load_curve_table(spec)
    return curve_fixture(spec)


def load_config(path) -> dict:
    """Read an INI file into keyword overrides for RunConfig."""
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except (configparser.Error, OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    known = {"run", "tolerances", "manifold"}
    extra = set(parser.sections()) - known
    if extra:
        raise ConfigError(f"unknown config sections {sorted(extra)}")
    out: dict = {}
    if parser.has_section("run"):
        run = parser["run"]
        for key, value in run.items():
            out.update(_run_value(key, value))
    if parser.has_section("tolerances"):
        try:
            out["tolerances"] = {k: float(v) for k, v in parser["tolerances"].items()}
        except ValueError as exc:
            raise ConfigError(f"tolerances must be numbers: {exc}") from exc
    if parser.has_section("manifold"):
        out["inline_structure"] = dict(parser["manifold"])
    return out


def _run_value(key: str, value: str) -> dict:
    try:
        if key in ("manifold", "curve", "out"):
            return {key: value}
        if key == "format":
            return {"fmt": value}
        if key == "metric":
            return {"metric": _metric(value)}
        if key == "window":
            return {"window": parse_window(value)}
        if key in ("samples", "seed"):
            return {key: int(value)}
        if key in ("a", "b"):
            return {key: float(value)}
        if key in ("eps", "eps1"):
            return {key: _sign(value, key)}
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {value!r}") from exc
    raise ConfigError(f"unknown config key {key!r}")


def build_config(file_values: dict, cli_values: dict) -> RunConfig:
    """Merge defaults, config-file values, command-line values and the seed
    environment variable (in increasing precedence)."""
    merged = {**file_values, **{k: v for k, v in cli_values.items() if v is not None}}
    eps = merged.pop("eps", 1)
    eps1 = merged.pop("eps1", 1)
    cfg = RunConfig(**merged)
    cfg = replace(cfg, signs=SignConvention(_sign(eps, "eps"), _sign(eps1, "eps1")))
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            cfg.seed = int(env)
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV} must be an integer") from exc
    return cfg.validate()
