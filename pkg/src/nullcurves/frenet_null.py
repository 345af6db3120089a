"""Frenet frames and curvature functions of slant and Legendre null curves
on 3-dimensional Sasaki-like almost contact B-metric manifolds.

Frames are built from closed forms in the basis {xi, C', phi C'} using only
a = eta(C'), b = g(C', phi C') and the derivatives of b. The covariant
derivative residuals in :func:`frenet_residuals` go through the connection
instead and serve as an independent check of every emitted frame.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import numdiff
from .curves import (
    Curve,
    SlantInvariants,
    acceleration,
    covariant_derivative_along,
    phi_of,
    slant_invariants,
    xi_at,
)
from .errors import (
    ConsistencyError,
    DegenerateSlant,
    ForbiddenDegenerate,
    GeodesicPoint,
    PreconditionMismatch,
)
from .manifold import ACBMStructure, FrameConnection, MetricTag
from .tolerances import TAU_ALG, TAU_FRENET, TAU_SLANT, tau_geo


@dataclass(frozen=True)
class SignConvention:
    eps: int = 1
    eps1: int = 1

    def __post_init__(self):
        if self.eps not in (1, -1) or self.eps1 not in (1, -1):
            raise ValueError("eps and eps1 must be +1 or -1")

    @property
    def product(self) -> int:
        return self.eps * self.eps1

    @classmethod
    def orbit(cls):
        return [cls(e, e1) for e in (1, -1) for e1 in (1, -1)]

    def to_dict(self) -> dict:
        return {"eps": self.eps, "eps1": self.eps1}


# eps1 * eps = -1 makes k1bar positive for constant b
POSITIVE_K1BAR = SignConvention(1, -1)


class FrameKind(str, enum.Enum):
    GENERAL_F = "F"
    DISTINGUISHED_FBAR = "Fbar"


def _q(a, b, tol=TAU_ALG):
    Q = a**4 + b * b
    if Q <= tol:
        raise DegenerateSlant(f"a^4 + b^2 = {Q:.3g}")
    return Q


@dataclass(frozen=True)
class AccelerationDecomposition:
    """nabla_{C'} C' = alpha xi + beta C' + gamma phi C'."""

    alpha: float
    beta: float
    gamma: float
    det_Delta: float

    def vector(self, xi, tangent, phi_tangent) -> np.ndarray:
        return self.alpha * xi + self.beta * tangent + self.gamma * phi_tangent


def decompose_acceleration(a: float, b: float, b_dot: float) -> AccelerationDecomposition:
    Q = _q(a, b)
    m = -2 * Q + a * b_dot
    alpha = -b * m / (2 * Q)
    beta = b * b_dot / (2 * Q)
    gamma = a * m / (2 * Q)
    # the same coefficients from g(., xi), g(., C'), g(., phi C')
    system = np.array([[1.0, a, 0.0], [a, 0.0, b], [0.0, b, a * a]])
    rhs = np.array([b, 0.0, (b_dot - 2 * a**3) / 2])
    solved = np.linalg.solve(system, rhs)
    ref = np.array([alpha, beta, gamma])
    if np.max(np.abs(solved - ref)) > 1e-8 * max(1.0, float(np.max(np.abs(ref)))):
        raise ConsistencyError(f"closed form {ref} disagrees with linear solve {solved}")
    return AccelerationDecomposition(alpha, beta, gamma, -(a**4) - b * b)


def k1_slant(a: float, b: float, b_dot: float, eps: int = 1) -> float:
    Q = _q(a, b)
    k1 = eps * (-2 * Q + a * b_dot) / (2 * math.sqrt(Q))
    dec = decompose_acceleration(a, b, b_dot)
    sq = dec.alpha**2 + a * a * dec.gamma**2
    if abs(k1 * k1 - sq) > TAU_ALG * max(1.0, sq):
        raise ConsistencyError(f"k1^2 = {k1 * k1} but alpha^2 + a^2 gamma^2 = {sq}")
    return k1


def h_general(a: float, b: float, b_dot: float) -> float:
    return b * b_dot / (2 * _q(a, b))


def k2_general(a: float, b: float, b_dot: float, eps: int = 1) -> float:
    Q = _q(a, b)
    return eps * (-2 * a * a * Q + 3 * a**3 * b_dot) / (4 * Q**1.5)


def k2bar_slant(a: float, b: float, b_dot: float, b_ddot: float, signs: SignConvention) -> float:
    Q = _q(a, b)
    m = -2 * Q + a * b_dot
    num = (
        Q * (8 * b * b_ddot + 20 * a**3 * b_dot - 8 * a**6 - 8 * a * a * b * b)
        - a * b_dot**3
        - 2 * (3 * a**4 + 7 * b * b) * b_dot**2
    )
    return signs.product * num / (4 * math.sqrt(Q) * m * m)


def k1bar_constant_b(a: float, b: float, signs: SignConvention) -> float:
    return signs.product * (-math.sqrt(_q(a, b)))


def k2bar_constant_b(a: float, b: float, signs: SignConvention) -> float:
    return signs.product * (-a * a / (2 * math.sqrt(_q(a, b))))


def k2bar_legendre(b: float, b_dot: float, b_ddot: float, signs: SignConvention) -> float:
    """Cartan curvature of the distinguished Legendre frame (screen W = eps xi)."""
    if b == 0:
        raise ForbiddenDegenerate("Legendre null curves have b != 0")
    return -signs.product * (4 * b * b_ddot - 7 * b_dot**2) / (8 * b**3)


def beta_over_k1_dot(a, b, b_dot, b_ddot, eps=1) -> float:
    """d/dt (beta / k1) from b and its first two derivatives."""
    Q = _q(a, b)
    rq = math.sqrt(Q)
    u = b * b_dot
    du = b_dot**2 + b * b_ddot
    m = -2 * Q + a * b_dot
    dm = -4 * b * b_dot + a * b_ddot
    v = rq * m
    dv = (b * b_dot / rq) * m + rq * dm
    return eps * (du * v - u * dv) / (v * v)


@dataclass(frozen=True)
class NullFrenetData:
    t: float
    tangent: np.ndarray
    N: np.ndarray
    W: np.ndarray
    h: float
    k1: float
    k2: float
    frame_kind: FrameKind
    signs: SignConvention

    def relations_residual(self, G) -> float:
        """Max violation of g(C',N) = g(W,W) = 1, g(N,N) = g(N,W) = g(C',W) = 0."""
        T, N, W = self.tangent, self.N, self.W
        return max(
            abs(T @ G @ N - 1.0),
            abs(W @ G @ W - 1.0),
            abs(N @ G @ N),
            abs(N @ G @ W),
            abs(T @ G @ W),
            abs(T @ G @ T),
        )

    def to_record(self) -> dict:
        return {
            "t": self.t,
            "tangent": self.tangent.tolist(),
            "N": self.N.tolist(),
            "W": self.W.tolist(),
            "h": self.h,
            "k1": self.k1,
            "k2": self.k2,
            "frame_kind": self.frame_kind.value,
        }


def _invariants(c, s, inv):
    if inv is None:
        inv = slant_invariants(c, s)
    if not inv.is_slant:
        raise PreconditionMismatch(f"curve is not slant (eta(C') varies by {inv.a_deviation:.3g})")
    return inv


def _basis(c: Curve, s: ACBMStructure, t):
    v = c.vel(t)
    return xi_at(c, s, t), v, phi_of(c, s, t, v)


def general_frame_F(
    c: Curve,
    s: ACBMStructure,
    t: float,
    signs: SignConvention = SignConvention(),
    inv: Optional[SlantInvariants] = None,
) -> NullFrenetData:
    """Frame {C', N, W} with W along the (xi, phi C') part of the acceleration."""
    inv = _invariants(c, s, inv)
    a, b, b_dot, _ = inv.at(t)
    Q = _q(a, b)
    k1 = k1_slant(a, b, b_dot, signs.eps)
    if abs(k1) <= tau_geo(a, b):
        raise GeodesicPoint(f"k1 = {k1:.3g} at t = {t}")
    xi, v, pv = _basis(c, s, t)
    rq = math.sqrt(Q)
    W = signs.eps * (-b * xi + a * pv) / rq
    N = (a**3 / Q) * xi - (a * a / (2 * Q)) * v + (b / Q) * pv
    return NullFrenetData(
        t, v, N, W, h_general(a, b, b_dot), k1, k2_general(a, b, b_dot, signs.eps),
        FrameKind.GENERAL_F, signs,
    )


def distinguished_frame_Fbar(
    c: Curve,
    s: ACBMStructure,
    t: float,
    signs: SignConvention = SignConvention(),
    inv: Optional[SlantInvariants] = None,
    check: bool = True,
) -> NullFrenetData:
    """Frame {C', Nbar, Wbar} for which t is a distinguished parameter (hbar = 0)."""
    inv = _invariants(c, s, inv)
    a, b, b_dot, b_ddot = inv.at(t)
    Q = _q(a, b)
    rq = math.sqrt(Q)
    m = -2 * Q + a * b_dot
    k1 = k1_slant(a, b, b_dot, signs.eps)
    if abs(k1) <= tau_geo(a, b):
        raise GeodesicPoint(f"k1 = {k1:.3g} at t = {t}")
    xi, v, pv = _basis(c, s, t)
    e = signs.eps
    Wbar = signs.eps1 * (-e * b / rq * xi + e * b * b_dot / (rq * m) * v + e * a / rq * pv)
    Nbar = (
        (b_dot - 2 * a**3) / m * xi
        - (4 * a * a * (Q - a * b_dot) + b_dot**2) / (2 * m * m) * v
        - (2 * b / m) * pv
    )
    frame = NullFrenetData(
        t, v, Nbar, Wbar, 0.0, signs.eps1 * k1, k2bar_slant(a, b, b_dot, b_ddot, signs),
        FrameKind.DISTINGUISHED_FBAR, signs,
    )
    if check:
        general = general_frame_F(c, s, t, signs, inv)
        worst = transformation_residual(general, frame, a, b, b_dot)
        if worst > TAU_ALG * max(1.0, float(np.max(np.abs(frame.N))), abs(k1)):
            raise ConsistencyError(f"F -> Fbar transformation mismatch {worst:.3g} at t = {t}")
    return frame


def transformation_residual(F: NullFrenetData, Fbar: NullFrenetData, a, b, b_dot) -> float:
    """Residual of Wbar = eps1 (W + beta/k1 C') and
    Nbar = -beta^2/(2 k1^2) C' + N - beta/k1 W."""
    beta = h_general(a, b, b_dot)
    r = beta / F.k1
    w_res = np.max(np.abs(Fbar.W - Fbar.signs.eps1 * (F.W + r * F.tangent)))
    n_res = np.max(np.abs(Fbar.N - (-(r * r) / 2 * F.tangent + F.N - r * F.W)))
    return float(max(w_res, n_res))


def k2bar_transformation_residual(c, s, t, signs=SignConvention(), inv=None) -> float:
    """|k2bar - eps1 (k2 - d/dt(beta/k1) - beta^2 / (2 k1))| at t.

    d/dt(beta/k1) is analytic when closed forms of b are available and a
    five-point stencil otherwise.
    """
    inv = _invariants(c, s, inv)
    a, b, b_dot, b_ddot = inv.at(t)
    k1 = k1_slant(a, b, b_dot, signs.eps)
    beta = h_general(a, b, b_dot)
    if inv.analytic:
        d_ratio = beta_over_k1_dot(a, b, b_dot, b_ddot, signs.eps)
    else:
        def ratio(u):
            _, bu, bdu, _ = inv.at(u)
            return h_general(a, bu, bdu) / k1_slant(a, bu, bdu, signs.eps)

        d_ratio = float(numdiff.d1(ratio, t))
    k2 = k2_general(a, b, b_dot, signs.eps)
    expected = signs.eps1 * (k2 - d_ratio - beta * beta / (2 * k1))
    return abs(k2bar_slant(a, b, b_dot, b_ddot, signs) - expected)


@dataclass(frozen=True)
class LegendreFrames:
    F: NullFrenetData
    Fbar: NullFrenetData


def legendre_frames(
    c: Curve,
    s: ACBMStructure,
    t: float,
    signs: SignConvention = SignConvention(),
    inv: Optional[SlantInvariants] = None,
) -> LegendreFrames:
    """Both frames of a Legendre null curve, with screen W = eps xi for F."""
    inv = _invariants(c, s, inv)
    a, b, b_dot, b_ddot = inv.at(t)
    if abs(a) > inv.tol:
        raise PreconditionMismatch(f"curve is not Legendre (a = {a:.3g})")
    if abs(b) <= TAU_SLANT:
        raise ForbiddenDegenerate("Legendre null curve with b = 0")
    xi, v, pv = _basis(c, s, t)
    e, e1 = signs.eps, signs.eps1
    F = NullFrenetData(
        t, v, pv / b, e * xi, b_dot / (2 * b), e * b, 0.0, FrameKind.GENERAL_F, signs
    )
    r = b_dot / (2 * b * b)
    Fbar = NullFrenetData(
        t,
        v,
        -r * xi - (b_dot**2 / (8 * b**4)) * v + pv / b,
        e1 * e * (xi + r * v),
        0.0,
        e1 * e * b,
        k2bar_legendre(b, b_dot, b_ddot, signs),
        FrameKind.DISTINGUISHED_FBAR,
        signs,
    )
    return LegendreFrames(F, Fbar)


def frame_at(c, s, t, kind: FrameKind, signs=SignConvention(), inv=None) -> NullFrenetData:
    """Dispatch to the Legendre or general slant construction."""
    inv = _invariants(c, s, inv)
    if inv.is_legendre:
        frames = legendre_frames(c, s, t, signs, inv)
        return frames.F if kind is FrameKind.GENERAL_F else frames.Fbar
    if kind is FrameKind.GENERAL_F:
        return general_frame_F(c, s, t, signs, inv)
    return distinguished_frame_Fbar(c, s, t, signs, inv)


# -- classification --------------------------------------------------------


@dataclass
class GeodesicResult:
    is_geodesic: bool
    max_abs_k1: float
    c1: Optional[float] = None
    closed_form_residual: Optional[float] = None


def is_geodesic_slant(
    a: float,
    b_fn: Callable[[float], float],
    window,
    tol: Optional[float] = None,
    b_dot_fn: Optional[Callable[[float], float]] = None,
    n: int = 64,
) -> GeodesicResult:
    """Whether k1 vanishes over the window; if so fit b = a^2 tan(2a(t + C1))."""
    t0, t1 = window
    ts = np.linspace(t0, t1, n)
    if b_dot_fn is None:
        def b_dot_fn(t):
            return float(numdiff.d1(b_fn, t))

    worst_scaled = worst = 0.0
    for t in ts:
        b = b_fn(t)
        k1 = abs(k1_slant(a, b, b_dot_fn(t)))
        worst = max(worst, k1)
        scale = 1.0 + a**4 + b * b
        limit = tau_geo(a, b) if tol is None else tol * scale
        worst_scaled = max(worst_scaled, k1 / limit)
    if worst_scaled > 1.0 or a == 0:
        return GeodesicResult(False, worst)
    c1 = math.atan(b_fn(t0) / (a * a)) / (2 * a) - t0
    fit = max(abs(b_fn(t) - a * a * math.tan(2 * a * (t + c1))) for t in ts)
    return GeodesicResult(True, worst, c1, fit)


@dataclass
class PhiGeodesicResult:
    is_phi_geodesic: bool
    residual: float
    k2bar: Optional[float] = None
    frames: list = field(default_factory=list)


def cartan_frame_phi_geodesic(c: Curve, s: ACBMStructure, t: float) -> NullFrenetData:
    xi, v, pv = _basis(c, s, t)
    return NullFrenetData(
        t, v, -xi - 0.5 * v, pv, 0.0, 1.0, 0.5, FrameKind.DISTINGUISHED_FBAR, POSITIVE_K1BAR
    )


def is_phi_geodesic(c: Curve, s: ACBMStructure, conn: FrameConnection, probes=None,
                    tol: float = 1e-10) -> PhiGeodesicResult:
    """Check nabla_{C'} C' = phi C' along the probes (max-norm residual)."""
    probes = c.probes() if probes is None else probes
    res = 0.0
    for t in probes:
        res = max(res, float(np.max(np.abs(acceleration(c, conn, t) - phi_of(c, s, t, c.vel(t))))))
    if res > tol:
        return PhiGeodesicResult(False, res)
    frames = [cartan_frame_phi_geodesic(c, s, t) for t in probes]
    return PhiGeodesicResult(True, res, 0.5, frames)


def _fbar_series(c, s, probes, signs, inv):
    return [frame_at(c, s, t, FrameKind.DISTINGUISHED_FBAR, signs, inv) for t in probes]


@dataclass
class ConstantCurvatureReport:
    is_const: bool
    max_abs_b_dot: float
    k1bar_range: tuple
    k2bar_range: tuple
    k1bar_expected: Optional[float] = None
    k2bar_expected: Optional[float] = None
    matches: Optional[bool] = None
    varies: Optional[bool] = None

    @property
    def k1bar_spread(self) -> float:
        return self.k1bar_range[1] - self.k1bar_range[0]

    @property
    def k2bar_spread(self) -> float:
        return self.k2bar_range[1] - self.k2bar_range[0]


def constant_curvature_check(
    c: Curve,
    s: ACBMStructure,
    probes=None,
    tol: float = 1e-8,
    signs: SignConvention = POSITIVE_K1BAR,
    vary_tol: float = 1e-3,
    inv: Optional[SlantInvariants] = None,
) -> ConstantCurvatureReport:
    """Constant k1bar, k2bar if and only if b is constant.

    For constant b the measured curvatures are compared with the closed
    constants; otherwise at least one of them must vary by more than
    ``vary_tol`` over the probes. Either failure raises ConsistencyError.
    """
    inv = slant_invariants(c, s, probes) if inv is None else inv
    probes = inv.probes
    frames = _fbar_series(c, s, probes, signs, inv)
    k1s = np.array([f.k1 for f in frames])
    k2s = np.array([f.k2 for f in frames])
    bd = float(np.max(np.abs([inv.b_dot(t) for t in probes])))
    rep = ConstantCurvatureReport(
        bd <= tol, bd, (float(k1s.min()), float(k1s.max())), (float(k2s.min()), float(k2s.max()))
    )
    if rep.is_const:
        b = float(np.mean(inv.b_samples))
        if inv.is_legendre:
            rep.k1bar_expected, rep.k2bar_expected = signs.product * b, 0.0
        else:
            rep.k1bar_expected = k1bar_constant_b(inv.a, b, signs)
            rep.k2bar_expected = k2bar_constant_b(inv.a, b, signs)
        err = max(
            float(np.max(np.abs(k1s - rep.k1bar_expected))),
            float(np.max(np.abs(k2s - rep.k2bar_expected))),
        )
        rep.matches = err <= TAU_ALG * max(1.0, abs(rep.k1bar_expected))
        if not rep.matches:
            raise ConsistencyError(f"constant-b curvatures off by {err:.3g}")
    else:
        rep.varies = rep.k1bar_spread > vary_tol or rep.k2bar_spread > vary_tol
        if not rep.varies:
            raise ConsistencyError("b varies but k1bar and k2bar are constant")
    return rep


@dataclass
class HelixResult:
    is_helix: bool
    evidence: dict


def is_generalized_helix(c: Curve, s: ACBMStructure, probes=None, tol: float = 1e-8,
                         inv: Optional[SlantInvariants] = None) -> HelixResult:
    """b constant with b^2 = 1 - a^4, a in [-1, 0) u (0, 1], and measured
    k1bar = 1, k2bar = a^2 / 2 for eps1 eps = -1."""
    inv = slant_invariants(c, s, probes) if inv is None else inv
    a = inv.a
    bd = float(np.max(np.abs([inv.b_dot(t) for t in inv.probes])))
    b = float(np.mean(inv.b_samples))
    ev = {"a": a, "b": b, "max_abs_b_dot": bd, "b2_plus_a4": b * b + a**4}
    ok = inv.is_slant and not inv.is_legendre and -1 <= a <= 1
    ok = ok and bd <= tol and abs(b * b + a**4 - 1.0) <= tol
    if ok:
        frames = _fbar_series(c, s, inv.probes, POSITIVE_K1BAR, inv)
        k1 = max(abs(f.k1 - 1.0) for f in frames)
        k2 = max(abs(f.k2 - a * a / 2) for f in frames)
        ev.update(k1bar=frames[0].k1, k2bar=frames[0].k2, k1bar_error=k1, k2bar_error=k2)
        ok = k1 <= tol and k2 <= tol
    return HelixResult(bool(ok), ev)


def is_null_cubic(c: Curve, s: ACBMStructure, signs: SignConvention = SignConvention(),
                  probes=None, tol: float = 1e-8, inv: Optional[SlantInvariants] = None) -> bool:
    """Legendre null curve with constant b and eps1 eps b = 1."""
    inv = slant_invariants(c, s, probes) if inv is None else inv
    if not inv.is_legendre:
        return False
    bd = float(np.max(np.abs([inv.b_dot(t) for t in inv.probes])))
    if bd > tol:
        return False
    b = float(np.mean(inv.b_samples))
    return abs(signs.product * b - 1.0) <= tol


def null_cubic_signs(c, s, probes=None, tol=1e-8, inv=None) -> list:
    inv = slant_invariants(c, s, probes) if inv is None else inv
    return [sg for sg in SignConvention.orbit() if is_null_cubic(c, s, sg, tol=tol, inv=inv)]


# -- residual oracle -------------------------------------------------------


@dataclass
class FrenetResidualReport:
    tangent: float
    normal: float
    screen: float
    relations: float
    n_points: int
    tol: float = TAU_FRENET

    @property
    def max_residual(self) -> float:
        return max(self.tangent, self.normal, self.screen, self.relations)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol

    def to_dict(self) -> dict:
        return {
            "tangent": self.tangent,
            "normal": self.normal,
            "screen": self.screen,
            "relations": self.relations,
            "n_points": self.n_points,
            "pass": self.passed,
        }


def frenet_residuals(
    c: Curve,
    frame_fn: Callable[[float], NullFrenetData],
    conn: FrameConnection,
    s: ACBMStructure,
    probes=None,
    tol: float = TAU_FRENET,
) -> FrenetResidualReport:
    """Max-norm residuals of the general Frenet equations along the probes.

    nabla_{C'} N and nabla_{C'} W are obtained from a five-point stencil on
    the frame components plus the connection term.
    """
    probes = c.probes() if probes is None else probes
    r_t = r_n = r_w = r_rel = 0.0
    for t in probes:
        fr = frame_fn(t)
        G = s.metric_components(MetricTag.G, c.point(t))
        r_rel = max(r_rel, fr.relations_residual(G))
        dT = acceleration(c, conn, t)
        dN = covariant_derivative_along(c, lambda u: frame_fn(u).N, conn, t)
        dW = covariant_derivative_along(c, lambda u: frame_fn(u).W, conn, t)
        r_t = max(r_t, float(np.max(np.abs(dT - (fr.h * fr.tangent + fr.k1 * fr.W)))))
        r_n = max(r_n, float(np.max(np.abs(dN - (-fr.h * fr.N + fr.k2 * fr.W)))))
        r_w = max(r_w, float(np.max(np.abs(dW - (-fr.k2 * fr.tangent - fr.k1 * fr.N)))))
    return FrenetResidualReport(r_t, r_n, r_w, r_rel, len(probes), tol)


def measured_curvatures(c, s, conn, frame: NullFrenetData):
    """(h, k1, k2) read off a frame through the connection: h = g(nabla C', N),
    k1 = g(nabla C', W), k2 = g(nabla N, W)."""
    t = frame.t
    G = s.metric_components(MetricTag.G, c.point(t))
    dT = acceleration(c, conn, t)
    if frame.frame_kind is FrameKind.DISTINGUISHED_FBAR:
        fn = lambda u: frame_at(c, s, u, FrameKind.DISTINGUISHED_FBAR, frame.signs).N  # noqa: E731
    else:
        fn = lambda u: frame_at(c, s, u, FrameKind.GENERAL_F, frame.signs).N  # noqa: E731
    dN = covariant_derivative_along(c, fn, conn, t)
    return float(dT @ G @ frame.N), float(dT @ G @ frame.W), float(dN @ G @ frame.W)


# -- classification over the sign orbit ------------------------------------


@dataclass
class NullClassification:
    curve: str
    labels: list
    evidence: dict

    def to_dict(self) -> dict:
        return {"curve": self.curve, "class_labels": self.labels, "evidence": self.evidence}


def classify_null(c: Curve, s: ACBMStructure, conn: FrameConnection, probes=None,
                  tol: float = 1e-8) -> NullClassification:
    """Label set drawn from legendre, geodesic, phi_geodesic,
    generalized_helix and null_cubic."""
    inv = slant_invariants(c, s, probes)
    probes = inv.probes
    labels = []
    ev = {
        "a": inv.a,
        "a_deviation": inv.a_deviation,
        "b_min": float(np.min(inv.b_samples)),
        "b_max": float(np.max(inv.b_samples)),
        "analytic_b": inv.analytic,
    }
    if not inv.is_slant:
        raise PreconditionMismatch("curve is not slant")
    if inv.is_legendre:
        labels.append("legendre")
    geo = is_geodesic_slant(inv.a, inv.b, (probes[0], probes[-1]), b_dot_fn=inv.b_dot,
                            n=len(probes))
    ev["max_abs_k1"] = geo.max_abs_k1
    if geo.is_geodesic:
        labels.append("geodesic")
        ev["c1"] = geo.c1
    phi = is_phi_geodesic(c, s, conn, probes)
    ev["phi_geodesic_residual"] = phi.residual
    if phi.is_phi_geodesic:
        labels.append("phi_geodesic")
    if not geo.is_geodesic:
        cc = constant_curvature_check(c, s, probes, tol, inv=inv)
        ev["b_constant"] = cc.is_const
        ev["k1bar_range"] = list(cc.k1bar_range)
        ev["k2bar_range"] = list(cc.k2bar_range)
        helix = is_generalized_helix(c, s, probes, tol, inv=inv)
        if helix.is_helix:
            labels.append("generalized_helix")
            ev["k2bar"] = helix.evidence["k2bar"]
        cubic = null_cubic_signs(c, s, probes, tol, inv=inv)
        if cubic:
            labels.append("null_cubic")
            ev["null_cubic_signs"] = [sg.to_dict() for sg in cubic]
    return NullClassification(c.name, labels, ev)
