"""Unit-speed Frenet apparatus of non-null curves under the associated metric,
and the induced-curve checks for Legendre (constant b) and b = 0 slant null
curves."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .curves import Curve, acceleration, covariant_derivative_along, phi_of, slant_invariants, xi_at
from .errors import NullDirection, PreconditionMismatch
from .manifold import ACBMStructure, FrameConnection, MetricTag, koszul_connection
from .tolerances import TAU_CONST_SPEED, TAU_NUM, TAU_ORDER, TAU_SLANT

QUADRATURE_PANELS = 1024


def _g(s: ACBMStructure, pt, tag=MetricTag.G_TILDE):
    return s.metric_components(tag, pt)


def _sign(x: float) -> int:
    return 1 if x > 0 else -1


def arc_length_reparam(c: Curve, s: ACBMStructure, metric_tag=MetricTag.G_TILDE, probes=None) -> Curve:
    """Reparameterize by arc length u = int_0^t sqrt|g(C', C')|.

    Constant-speed curves get the exact substitution u = lambda t; otherwise
    the arc length is tabulated with the trapezoid rule and inverted by
    linear interpolation.
    """
    probes = c.probes() if probes is None else probes

    def speed2(t):
        v = c.vel(t)
        return float(v @ _g(s, c.point(t), metric_tag) @ v)

    vals = np.array([speed2(t) for t in probes])
    norms = np.array([float(c.vel(t) @ c.vel(t)) for t in probes])
    if np.any(np.abs(vals) <= 1e-9 * np.maximum(norms, 1e-300)):
        raise NullDirection("tangent is null for this metric somewhere on the domain")
    if np.any(np.sign(vals) != np.sign(vals[0])):
        raise NullDirection("tangent changes causal character on the domain")
    t0, t1 = c.domain
    name = f"{c.name}[arc]"

    if float(np.ptp(vals)) <= TAU_CONST_SPEED:
        lam = math.sqrt(abs(float(np.mean(vals))))
        return Curve(
            position=lambda u: c.point(u / lam),
            velocity=lambda u: c.vel(u / lam) / lam,
            accel=lambda u: c.acc(u / lam) / lam**2,
            domain=(lam * t0, lam * t1),
            name=name,
        )

    ts = np.linspace(t0, t1, QUADRATURE_PANELS + 1)
    speed = np.sqrt(np.abs([speed2(t) for t in ts]))
    arc = cumulative_trapezoid(speed, ts, initial=0.0)
    if t0 <= 0.0 <= t1:
        arc = arc - np.interp(0.0, ts, arc)

    def t_of(u):
        return float(np.interp(u, arc, ts))

    def velocity(u):
        t = t_of(u)
        return c.vel(t) / math.sqrt(abs(speed2(t)))

    return Curve(
        position=lambda u: c.point(t_of(u)),
        velocity=velocity,
        accel=None,
        domain=(float(arc[0]), float(arc[-1])),
        name=name,
    )


@dataclass(frozen=True)
class NonNullFrenetData:
    s: float
    order: int
    E1: np.ndarray
    eps1: int
    E2: Optional[np.ndarray] = None
    eps2: Optional[int] = None
    k: float = 0.0
    E3: Optional[np.ndarray] = None
    eps3: Optional[int] = None
    tau: float = 0.0

    def frame(self):
        return [E for E in (self.E1, self.E2, self.E3) if E is not None]

    def orthonormality_residual(self, G) -> float:
        E = self.frame()
        eps = [self.eps1, self.eps2, self.eps3][: len(E)]
        worst = 0.0
        for i in range(len(E)):
            for j in range(len(E)):
                target = eps[i] if i == j else 0.0
                worst = max(worst, abs(E[i] @ G @ E[j] - target))
        return worst

    def to_record(self) -> dict:
        vec = lambda v: None if v is None else v.tolist()  # noqa: E731
        return {
            "s": self.s,
            "order": self.order,
            "E1": vec(self.E1),
            "E2": vec(self.E2),
            "E3": vec(self.E3),
            "k": self.k,
            "tau": self.tau,
            "eps": [self.eps1, self.eps2, self.eps3],
        }


def _second_field(c_unit, s, conn, u):
    """(eps2, k, E2) at u, or None when the curve is geodesic there."""
    V = acceleration(c_unit, conn, u)
    if float(np.max(np.abs(V))) <= TAU_ORDER:
        return None
    vv = float(V @ _g(s, c_unit.point(u)) @ V)
    if abs(vv) <= TAU_ORDER * max(1.0, float(V @ V)):
        raise NullDirection(f"principal normal is null at s = {u}")
    k = math.sqrt(abs(vv))
    eps2 = _sign(vv)
    return eps2, k, eps2 * V / k


def frenet_apparatus(c_unit: Curve, s: ACBMStructure, conn_tilde: FrameConnection, u: float) -> NonNullFrenetData:
    """Frenet data at arc-length parameter u.

    Order 1 when the acceleration vanishes, order 2 when the torsion part
    vanishes, otherwise order 3. k and tau come out positive by construction.
    """
    E1 = c_unit.vel(u)
    G = _g(s, c_unit.point(u))
    eps1 = _sign(float(E1 @ G @ E1))
    second = _second_field(c_unit, s, conn_tilde, u)
    if second is None:
        return NonNullFrenetData(u, 1, E1, eps1)
    eps2, k, E2 = second

    def E2_fn(w):
        nxt = _second_field(c_unit, s, conn_tilde, w)
        if nxt is None:
            raise NullDirection("normal field vanishes next to a non-geodesic point")
        return nxt[2]

    U = covariant_derivative_along(c_unit, E2_fn, conn_tilde, u) + eps1 * k * E1
    if float(np.max(np.abs(U))) <= TAU_ORDER:
        return NonNullFrenetData(u, 2, E1, eps1, E2, eps2, k)
    uu = float(U @ G @ U)
    if abs(uu) <= TAU_ORDER * max(1.0, float(U @ U)):
        raise NullDirection(f"binormal is null at s = {u}")
    tau = math.sqrt(abs(uu))
    eps3 = _sign(uu)
    return NonNullFrenetData(u, 3, E1, eps1, E2, eps2, k, eps3 * U / tau, eps3, tau)


def apparatus_series(c_unit, s, conn_tilde, probes=None) -> list:
    probes = c_unit.probes() if probes is None else probes
    return [frenet_apparatus(c_unit, s, conn_tilde, u) for u in probes]


def nonnull_frenet_residual(c_unit, s, conn_tilde, data: NonNullFrenetData) -> float:
    """Max residual of the Frenet system at data.s (five-point stencils on the
    frame fields)."""
    u = data.s
    res = float(np.max(np.abs(acceleration(c_unit, conn_tilde, u) - (
        data.eps2 * data.k * data.E2 if data.order >= 2 else 0.0))))
    if data.order < 2:
        return res
    fr = lambda w: frenet_apparatus(c_unit, s, conn_tilde, w)  # noqa: E731
    dE2 = covariant_derivative_along(c_unit, lambda w: fr(w).E2, conn_tilde, u)
    rhs2 = -data.eps1 * data.k * data.E1
    if data.order == 3:
        rhs2 = rhs2 + data.eps3 * data.tau * data.E3
        dE3 = covariant_derivative_along(c_unit, lambda w: fr(w).E3, conn_tilde, u)
        res = max(res, float(np.max(np.abs(dE3 + data.eps2 * data.tau * data.E2))))
    return max(res, float(np.max(np.abs(dE2 - rhs2))))


class NonNullClass(str, enum.Enum):
    GEODESIC = "Geodesic"
    PSEUDO_CIRCLE = "PseudoCircle"
    HELIX = "Helix"
    PROPER_HELIX = "ProperHelix"
    GENERALIZED_HELIX = "GeneralizedHelix"
    GENERIC = "Generic"


def classify_nonnull(
    k_fn: Callable[[float], float],
    tau_fn: Callable[[float], float],
    window,
    tol: float = 1e-8,
    n: int = 64,
) -> NonNullClass:
    """Most specific class for the curvature pair over the window.

    A helix with vanishing torsion is reported as PseudoCircle and one with
    non-vanishing torsion as ProperHelix.
    """
    t0, t1 = window
    ts = np.linspace(t0, t1, n)
    k = np.array([k_fn(t) for t in ts], dtype=float)
    tau = np.array([tau_fn(t) for t in ts], dtype=float)
    if np.max(np.abs(k)) <= tol:
        return NonNullClass.GEODESIC
    k_const = np.ptp(k) <= tol
    tau_zero = np.max(np.abs(tau)) <= tol
    if k_const and tau_zero:
        return NonNullClass.PSEUDO_CIRCLE
    if k_const and np.ptp(tau) <= tol:
        return NonNullClass.PROPER_HELIX
    if np.min(np.abs(tau)) > tol and np.ptp(k / tau) <= tol * max(1.0, float(np.max(np.abs(k / tau)))):
        return NonNullClass.GENERALIZED_HELIX
    return NonNullClass.GENERIC


def classify_series(series: list, tol: float = 1e-8) -> NonNullClass:
    """classify_nonnull over a computed apparatus series."""
    k = {d.s: d.k for d in series}
    tau = {d.s: d.tau for d in series}
    ss = [d.s for d in series]
    idx = lambda table: lambda w: table[min(ss, key=lambda x: abs(x - w))]  # noqa: E731
    return classify_nonnull(idx(k), idx(tau), (ss[0], ss[-1]), tol, n=len(ss))


@dataclass
class InducedCurveReport:
    case: str
    checks: list = field(default_factory=list)
    series: list = field(default_factory=list)

    def add(self, name: str, value: float, passed: bool):
        self.checks.append({"check": name, "value": float(value), "pass": bool(passed)})

    @property
    def passed(self) -> bool:
        return all(ch["pass"] for ch in self.checks)

    def to_dict(self) -> dict:
        return {"case": self.case, "pass": self.passed, "checks": self.checks}


def verify_induced_theorems(c_null: Curve, s: ACBMStructure, probes=None, tol: float = 1e-9) -> InducedCurveReport:
    """Check the g-tilde geometry of a g-null curve.

    Legendre with constant b: non-null of the causal character of sign(b),
    Legendre for g-tilde and a g-tilde geodesic. Slant with b = 0: spacelike,
    eta(C') = +-1, order 3 with k = tau = 1 and the explicit frame
    E2 = xi - phi C'/a, E3 = (phi C' - C')/|a|.
    """
    inv = slant_invariants(c_null, s, probes)
    probes = inv.probes
    b_dev = float(np.max(np.abs([inv.b_dot(t) for t in probes])))
    conn_t = koszul_connection(s, MetricTag.G_TILDE)

    if inv.is_legendre and b_dev <= TAU_SLANT:
        rep = InducedCurveReport("legendre_constant_b")
        b = float(np.mean(inv.b_samples))
        unit = arc_length_reparam(c_null, s, MetricTag.G_TILDE, probes)
        lam = math.sqrt(abs(b))
        sp = [float(unit.vel(lam * t) @ _g(s, unit.point(lam * t)) @ unit.vel(lam * t)) for t in probes]
        rep.add("causal_sign_matches_b", max(abs(x - _sign(b)) for x in sp), max(abs(x - _sign(b)) for x in sp) <= TAU_NUM)
        eta = max(abs(float(s.field("eta", unit.point(lam * t)) @ unit.vel(lam * t))) for t in probes)
        rep.add("eta_zero", eta, eta <= TAU_NUM)
        acc = max(float(np.max(np.abs(acceleration(unit, conn_t, lam * t)))) for t in probes)
        rep.add("geodesic", acc, acc <= max(tol, 1e-10))
        orders = [frenet_apparatus(unit, s, conn_t, lam * t).order for t in probes]
        rep.add("order_one", max(orders), max(orders) == 1)
        return rep

    if inv.is_slant and not inv.is_legendre and float(np.max(np.abs(inv.b_samples))) <= TAU_SLANT:
        rep = InducedCurveReport("slant_b_zero")
        a = inv.a
        lam = abs(a)
        unit = arc_length_reparam(c_null, s, MetricTag.G_TILDE, probes)
        series = [frenet_apparatus(unit, s, conn_t, lam * t) for t in probes]
        rep.series = series
        sp = max(abs(float(d.E1 @ _g(s, unit.point(d.s)) @ d.E1) - 1.0) for d in series)
        rep.add("spacelike_unit", sp, sp <= TAU_NUM)
        eta = max(abs(abs(float(s.field("eta", unit.point(d.s)) @ d.E1)) - 1.0) for d in series)
        rep.add("eta_plus_minus_one", eta, eta <= TAU_NUM)
        rep.add("order_three", min(d.order for d in series), all(d.order == 3 for d in series))
        if all(d.order == 3 for d in series):
            k_err = max(abs(d.k - 1.0) for d in series)
            t_err = max(abs(d.tau - 1.0) for d in series)
            rep.add("k_one", k_err, k_err <= tol)
            rep.add("tau_one", t_err, t_err <= tol)
            frame_err = 0.0
            for t, d in zip(probes, series):
                v = c_null.vel(t)
                pv = phi_of(c_null, s, t, v)
                E1 = v / lam
                E2 = xi_at(c_null, s, t) - pv / a
                E3 = (pv - v) / lam
                frame_err = max(frame_err, *(float(np.max(np.abs(x - y))) for x, y in
                                             ((d.E1, E1), (d.E2, E2), (d.E3, E3))))
            rep.add("frame_formulas", frame_err, frame_err <= tol)
        return rep

    raise PreconditionMismatch(
        "needs a Legendre null curve with constant b or a slant null curve with b = 0"
    )
