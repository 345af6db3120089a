"""Command-line front end: ``nullcurves {verify,frenet,classify,liegroup}``.

Exit codes: 0 when every check passes, 1 when a check or consistency test
fails, 2 for unusable input (bad flags or config, unknown fixtures, the
excluded case a = b = 0).
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional

import numpy as np

from . import frenet_nonnull as fnn
from . import frenet_null as fn
from .config import FORMATS, RunConfig, build_config, load_config, parse_window
from .curves import CausalCharacter, causal_character, slant_invariants
from .errors import ConfigError, ConsistencyError, ForbiddenDegenerate, GeodesicPoint, NullCurveError
from .fixtures import parse_call
from .lie_group import lie_frame_Fbar, slant_null_tangent, trajectory, used_limit_formula
from .manifold import MetricTag, connection_residuals, is_sasaki_like, koszul_connection, verify_structure
from .output import flatten_vectors, render
from .tolerances import TAU_ALG, TAU_FRENET, TAU_FRENET_FD

CURVE_PROBES = 64


class CommandResult:
    def __init__(self, ok: bool, payload: dict, rows: list, columns: list, meta: Optional[dict] = None):
        self.ok = ok
        self.payload = payload
        self.rows = rows
        self.columns = columns
        self.meta = meta or {}


# -- verify ----------------------------------------------------------------


def cmd_verify(cfg: RunConfig) -> CommandResult:
    s = cfg.structure()
    tol = cfg.tol("alg", TAU_ALG)
    pts = s.sample_points(cfg.samples or 32, cfg.seed)
    report = verify_structure(s, pts, tol)
    records = report.to_records()
    if report.passed:
        conn = koszul_connection(s, MetricTag.G, pts)
        records += is_sasaki_like(s, conn, pts, tol).to_records(tol)
        for tag in MetricTag:
            res = connection_residuals(s, koszul_connection(s, tag, pts), pts)
            for key, value in res.items():
                records.append({"axiom": f"{key}_{tag.value}", "max_residual": value, "pass": value <= tol})
    ok = all(r["pass"] for r in records)
    payload = {"manifold": s.name, "samples": len(pts), "seed": cfg.seed, "pass": ok, "checks": records}
    return CommandResult(ok, payload, records, ["axiom", "max_residual", "pass"],
                         {"manifold": s.name, "pass": ok})


# -- frenet ----------------------------------------------------------------


def _probes(cfg, c):
    return c.probes(cfg.samples or CURVE_PROBES)


def _require_null(c, s, probes):
    for t in probes:
        if causal_character(c, s, MetricTag.G, t) is not CausalCharacter.NULL:
            raise NullCurveError(f"{c.name} is not g-null at t = {t}")


def _null_frame_rows(c, s, inv, probes, signs):
    rows, good = [], {k: [] for k in fn.FrameKind}
    for kind in fn.FrameKind:
        for t in probes:
            try:
                fr = fn.frame_at(c, s, t, kind, signs, inv)
            except GeodesicPoint:
                rows.append({"t": t, "frame": kind.value, "geodesic_point": True})
                continue
            good[kind].append(t)
            rec = flatten_vectors(fr.to_record())
            rec["frame"] = kind.value
            rec["geodesic_point"] = False
            rows.append(rec)
    return rows, good


def cmd_frenet(cfg: RunConfig) -> CommandResult:
    s = cfg.structure()
    c = cfg.load_curve()
    probes = _probes(cfg, c)
    if cfg.metric is MetricTag.G_TILDE:
        return _frenet_tilde(cfg, s, c, probes)
    _require_null(c, s, probes)
    inv = slant_invariants(c, s, probes, cfg.tol("slant", 1e-8))
    conn = koszul_connection(s)
    rows, good = _null_frame_rows(c, s, inv, probes, cfg.signs)
    tol = cfg.tol("frenet", TAU_FRENET if inv.analytic else TAU_FRENET_FD)
    residuals = {}
    for kind, ts in good.items():
        if ts:
            frame = lambda t, k=kind: fn.frame_at(c, s, t, k, cfg.signs, inv)  # noqa: E731
            residuals[kind.value] = fn.frenet_residuals(c, frame, conn, s, np.array(ts), tol).to_dict()
    ok = all(r["pass"] for r in residuals.values())
    meta = {
        "curve": c.name,
        "metric": "g",
        "a": inv.a,
        "legendre": inv.is_legendre,
        "signs": cfg.signs.to_dict(),
        "residuals": residuals,
    }
    columns = ["t", "frame", "geodesic_point", "h", "k1", "k2",
               "N1", "N2", "N3", "W1", "W2", "W3"]
    payload = {**meta, "pass": ok, "frames": rows}
    return CommandResult(ok, payload, rows, columns, meta)


def _frenet_tilde(cfg, s, c, probes):
    unit = fnn.arc_length_reparam(c, s, MetricTag.G_TILDE, probes)
    conn_t = koszul_connection(s, MetricTag.G_TILDE)
    series = fnn.apparatus_series(unit, s, conn_t, unit.probes(len(probes)))
    residual = max(fnn.nonnull_frenet_residual(unit, s, conn_t, d) for d in series)
    tol = cfg.tol("frenet", TAU_FRENET)
    rows = [flatten_vectors({**d.to_record(), "eps": None}) | {
        "eps1": d.eps1, "eps2": d.eps2, "eps3": d.eps3} for d in series]
    orders = sorted({d.order for d in series})
    label = fnn.classify_series(series, cfg.tol("classify", 1e-8))
    meta = {
        "curve": c.name,
        "metric": "gtilde",
        "orders": orders,
        "geodesic": orders == [1],
        "class": label.value,
        "frenet_residual": residual,
    }
    ok = residual <= tol
    columns = ["s", "order", "k", "tau", "eps1", "eps2", "eps3",
               "E11", "E12", "E13", "E21", "E22", "E23", "E31", "E32", "E33"]
    payload = {**meta, "pass": ok, "frames": rows}
    return CommandResult(ok, payload, rows, columns, meta)


# -- classify --------------------------------------------------------------


def _evidence_rows(evidence: dict) -> list:
    return [{"criterion": k, "value": v if not isinstance(v, (list, dict)) else str(v)}
            for k, v in evidence.items()]


def cmd_classify(cfg: RunConfig) -> CommandResult:
    s = cfg.structure()
    c = cfg.load_curve()
    probes = _probes(cfg, c)
    tol = cfg.tol("classify", 1e-8)
    if cfg.metric is MetricTag.G_TILDE:
        unit = fnn.arc_length_reparam(c, s, MetricTag.G_TILDE, probes)
        conn_t = koszul_connection(s, MetricTag.G_TILDE)
        series = fnn.apparatus_series(unit, s, conn_t, unit.probes(len(probes)))
        label = fnn.classify_series(series, tol)
        evidence = {"k_min": min(d.k for d in series), "k_max": max(d.k for d in series),
                    "tau_min": min(d.tau for d in series), "tau_max": max(d.tau for d in series),
                    "orders": sorted({d.order for d in series})}
        payload = {"curve": c.name, "class_labels": [label.value], "evidence": evidence}
        ok = True
        try:
            induced = fnn.verify_induced_theorems(c, s, probes)
        except NullCurveError:
            induced = None
        if induced is not None:
            payload["induced"] = induced.to_dict()
            ok = induced.passed
    else:
        _require_null(c, s, probes)
        result = fn.classify_null(c, s, koszul_connection(s), probes, tol)
        payload = result.to_dict()
        evidence = result.evidence
        ok = True
    payload["pass"] = ok
    meta = {"curve": c.name, "class_labels": payload["class_labels"]}
    return CommandResult(ok, payload, _evidence_rows(evidence), ["criterion", "value"], meta)


# -- liegroup --------------------------------------------------------------


def _lie_params(cfg: RunConfig):
    a, b = cfg.a, cfg.b
    if (a is None or b is None) and cfg.curve:
        name, args, kwargs = parse_call(cfg.curve)
        if name != "liegroup_slant":
            raise ConfigError("liegroup needs --a/--b or a liegroup_slant(a, b) curve")
        vals = dict(zip(("a", "b"), args)) | kwargs
        a = vals.get("a", a) if a is None else a
        b = vals.get("b", b) if b is None else b
    if a is None or b is None:
        raise ConfigError("liegroup needs both a and b")
    return float(a), float(b)


def cmd_liegroup(cfg: RunConfig) -> CommandResult:
    a, b = _lie_params(cfg)
    spec = slant_null_tangent(a, b)
    frame = lie_frame_Fbar(a, b)
    t0, t1 = cfg.window or (0.0, 2 * math.pi)
    ts = np.linspace(t0, t1, cfg.samples or CURVE_PROBES)
    traj = trajectory(a, b, ts)
    columns = ["t"] + [f"m{i}{j}" for i in (1, 2, 3) for j in (1, 2, 3)]
    rows = [dict(zip(columns, r)) for r in traj]
    meta = {
        **spec.to_dict(),
        "k1bar": frame.k1bar,
        "k2bar": frame.k2bar,
        "limit_formula": used_limit_formula(spec.vector),
    }
    payload = {"tangent": spec.to_dict(), "k1bar": frame.k1bar, "k2bar": frame.k2bar,
               "Wbar": frame.Wbar, "Nbar": frame.Nbar, "limit_formula": meta["limit_formula"],
               "trajectory": rows}
    return CommandResult(True, payload, rows, columns, meta)


COMMANDS = {
    "verify": cmd_verify,
    "frenet": cmd_frenet,
    "classify": cmd_classify,
    "liegroup": cmd_liegroup,
}


def _window_arg(text):
    try:
        return parse_window(text)
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI file with [run], [tolerances], [manifold] sections")
    common.add_argument("--manifold", help="structure fixture name")
    common.add_argument("--curve", help="curve fixture, e.g. example_a or liegroup_slant(0.8,0.6), or a CSV table")
    common.add_argument("--metric", choices=[m.value for m in MetricTag])
    common.add_argument("--window", type=_window_arg, help="t0:t1 (use --window=-2:2 for negative t0)")
    common.add_argument("--samples", type=int)
    common.add_argument("--eps", type=int, choices=[1, -1])
    common.add_argument("--eps1", type=int, choices=[1, -1])
    common.add_argument("--out", help="output path (stdout if omitted)")
    common.add_argument("--format", dest="fmt", choices=FORMATS)
    common.add_argument("--seed", type=int)

    parser = argparse.ArgumentParser(prog="nullcurves", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="check the structure axioms and the Sasaki-like condition")
    sub.add_parser("frenet", parents=[common], help="frame series with curvature columns")
    sub.add_parser("classify", parents=[common], help="label set with evidence")
    lie = sub.add_parser("liegroup", parents=[common], help="Ad(C(t)) trajectory of a slant null subgroup")
    lie.add_argument("--a", type=float)
    lie.add_argument("--b", type=float)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cli_values = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    if cli_values.get("metric") is not None:
        cli_values["metric"] = MetricTag(cli_values["metric"])
    try:
        file_values = load_config(args.config) if args.config else {}
        cfg = build_config(file_values, cli_values)
        result = COMMANDS[args.command](cfg)
    except (ConfigError, ForbiddenDegenerate) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"consistency check failed: {exc}", file=sys.stderr)
        return 1
    except NullCurveError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    text = render(cfg.fmt, result.payload, result.rows, result.columns, result.meta)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
