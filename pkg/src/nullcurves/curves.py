"""Parametric curves given by frame components, slant invariants, and
covariant derivatives along a curve."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import numdiff
from .errors import ConsistencyError, ForbiddenDegenerate, ZeroVelocity
from .manifold import ACBMStructure, FrameConnection, MetricTag
from .tolerances import DEFAULT_PROBES, TAU_FD, TAU_SLANT

VecFn = Callable[[float], np.ndarray]


class CausalCharacter(str, enum.Enum):
    NULL = "null"
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"


@dataclass(frozen=True)
class Curve:
    """A curve whose position tuple differentiates to the frame components
    of its velocity.

    ``b_closure`` optionally carries closed forms (b, b_dot, b_ddot) of
    b = g(C', phi C'); they take precedence over numerical derivatives.
    """

    position: VecFn
    velocity: VecFn
    accel: Optional[VecFn] = None
    domain: tuple = (-2.0, 2.0)
    name: str = "curve"
    b_closure: Optional[tuple] = None

    def point(self, t) -> np.ndarray:
        return np.asarray(self.position(t), dtype=float)

    def vel(self, t) -> np.ndarray:
        return np.asarray(self.velocity(t), dtype=float)

    def acc(self, t) -> np.ndarray:
        if self.accel is not None:
            return np.asarray(self.accel(t), dtype=float)
        return numdiff.d1(self.vel, t)

    def probes(self, n: int = DEFAULT_PROBES) -> np.ndarray:
        """n interior points of a uniform grid; the endpoints are dropped so
        stencils stay inside the domain."""
        t0, t1 = self.domain
        return np.linspace(t0, t1, n + 2)[1:-1]

    def with_domain(self, t0, t1) -> "Curve":
        return Curve(self.position, self.velocity, self.accel, (t0, t1), self.name, self.b_closure)

    @classmethod
    def from_table(cls, t, position, velocity, accel=None, name="table") -> "Curve":
        """Piecewise-linear curve through sampled rows."""
        t = np.asarray(t, dtype=float)
        if t.ndim != 1 or len(t) < 2 or np.any(np.diff(t) <= 0):
            raise ValueError("t must be strictly increasing with at least two rows")

        def interp(table):
            table = np.asarray(table, dtype=float)
            return lambda s: np.array([np.interp(s, t, table[:, k]) for k in range(3)])

        return cls(
            position=interp(position),
            velocity=interp(velocity),
            accel=None if accel is None else interp(accel),
            domain=(float(t[0]), float(t[-1])),
            name=name,
        )


def check_regular(c: Curve, probes=None, tol: float = TAU_FD) -> float:
    """Raise on zero velocity; return the max deviation of ``accel`` from a
    central difference of ``velocity`` (0 when no accel is supplied)."""
    probes = c.probes() if probes is None else probes
    worst = 0.0
    for t in probes:
        if np.linalg.norm(c.vel(t)) == 0.0:
            raise ZeroVelocity(f"velocity vanishes at t={t}")
        if c.accel is not None:
            worst = max(worst, float(np.max(np.abs(c.acc(t) - numdiff.d1(c.vel, t)))))
    if worst > tol:
        raise ConsistencyError(f"accel does not match velocity derivative ({worst:.3g})")
    return worst


def metric_at(c: Curve, s: ACBMStructure, t, tag=MetricTag.G) -> np.ndarray:
    return s.metric_components(tag, c.point(t))


def inner(c: Curve, s: ACBMStructure, t, X, Y, tag=MetricTag.G) -> float:
    return float(np.asarray(X) @ metric_at(c, s, t, tag) @ np.asarray(Y))


def phi_of(c: Curve, s: ACBMStructure, t, X) -> np.ndarray:
    return s.field("phi", c.point(t)) @ np.asarray(X, dtype=float)


def xi_at(c: Curve, s: ACBMStructure, t) -> np.ndarray:
    return s.field("xi", c.point(t))


def eta_of(c: Curve, s: ACBMStructure, t, X) -> float:
    return float(s.field("eta", c.point(t)) @ np.asarray(X, dtype=float))


def causal_character(
    c: Curve, s: ACBMStructure, metric_tag=MetricTag.G, t=0.0, tol: float = 1e-10
) -> CausalCharacter:
    v = c.vel(t)
    norm2 = float(v @ v)
    if norm2 == 0.0:
        raise ZeroVelocity(f"velocity vanishes at t={t}")
    val = inner(c, s, t, v, v, metric_tag)
    if abs(val) <= tol * norm2:
        return CausalCharacter.NULL
    return CausalCharacter.SPACELIKE if val > 0 else CausalCharacter.TIMELIKE


@dataclass(frozen=True)
class SlantInvariants:
    a: float
    b: Callable[[float], float]
    b_dot: Callable[[float], float]
    b_ddot: Callable[[float], float]
    a_deviation: float
    probes: np.ndarray
    b_samples: np.ndarray
    analytic: bool
    tol: float = TAU_SLANT

    @property
    def is_slant(self) -> bool:
        return self.a_deviation <= self.tol

    @property
    def is_legendre(self) -> bool:
        return self.is_slant and abs(self.a) <= self.tol

    def at(self, t):
        """(a, b, b_dot, b_ddot) at parameter t."""
        return self.a, self.b(t), self.b_dot(t), self.b_ddot(t)


def slant_invariants(c: Curve, s: ACBMStructure, probes=None, tol: float = TAU_SLANT) -> SlantInvariants:
    """Slant constant a = eta(C'), the function b = g(C', phi C') and its
    first two derivatives."""
    probes = c.probes() if probes is None else np.asarray(probes, dtype=float)
    etas = np.array([eta_of(c, s, t, c.vel(t)) for t in probes])
    a = float(np.mean(etas))
    a_dev = float(np.max(np.abs(etas - a)))

    def b(t):
        v = c.vel(t)
        return inner(c, s, t, v, phi_of(c, s, t, v))

    b_samples = np.array([b(t) for t in probes])
    if abs(a) <= tol and np.any(np.abs(b_samples) <= tol):
        raise ForbiddenDegenerate("a = 0 and b = 0: no such null curve exists")

    if c.b_closure is not None:
        b_fn, b_dot, b_ddot = c.b_closure
        mismatch = np.max(np.abs(np.array([b_fn(t) for t in probes]) - b_samples))
        if mismatch > 1e-8 * max(1.0, float(np.max(np.abs(b_samples)))):
            raise ConsistencyError(f"b closure disagrees with g(C', phi C') by {mismatch:.3g}")
        analytic = True
    else:
        def b_dot(t):
            return float(numdiff.d1(b, t))

        def b_ddot(t):
            return float(numdiff.d2(b, t))

        analytic = False
    return SlantInvariants(a, b, b_dot, b_ddot, a_dev, probes, b_samples, analytic, tol)


def covariant_derivative_along(
    c: Curve, V: VecFn, conn: FrameConnection, t, dV: Optional[VecFn] = None
) -> np.ndarray:
    """Components of nabla_{C'} V = V'^k e_k + C'^i V^j Gamma[i, j]."""
    dv = numdiff.d1(V, t) if dV is None else np.asarray(dV(t), dtype=float)
    return conn.nabla(c.vel(t), np.asarray(V(t), dtype=float), c.point(t), dv)


def acceleration(c: Curve, conn: FrameConnection, t) -> np.ndarray:
    """nabla_{C'} C'."""
    return covariant_derivative_along(c, c.vel, conn, t, c.acc)
