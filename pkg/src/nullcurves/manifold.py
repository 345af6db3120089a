"""Almost contact B-metric structures on a 3-manifold, described in a frame.

Every tensor is stored through its components in a frame {e1, e2, e3}:

* ``metric(pt)[i, j]``   = g(e_i, e_j)
* ``phi(pt)[:, j]``      = components of phi(e_j)
* ``xi(pt)``             = components of the Reeb field
* ``eta(pt)[i]``         = eta(e_i)
* ``brackets(pt)[i, j]`` = components of [e_i, e_j]

Connection coefficients use ``gamma[i, j, k]`` = k-th component of
nabla_{e_i} e_j.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, ClassVar, Optional

import numpy as np
from scipy.stats import qmc

from . import numdiff
from .errors import DegenerateMetric
from .tolerances import DEFAULT_SAMPLES, DEFAULT_SEED, TAU_ALG

FieldFn = Callable[[np.ndarray], np.ndarray]

FIELD_NAMES = ("metric", "phi", "xi", "eta", "brackets")


class MetricTag(str, enum.Enum):
    G = "g"
    G_TILDE = "gtilde"


def _frozen(value):
    arr = np.array(value, dtype=float)
    arr.setflags(write=False)
    return arr


def _constant(value) -> FieldFn:
    arr = _frozen(value)
    return lambda pt: arr


def bracket_table(brackets) -> np.ndarray:
    """Build an antisymmetric (3, 3, 3) bracket array.

    ``brackets`` is either such an array or a mapping ``{(i, j): vector}``
    with 1-based frame indices; missing pairs are zero.
    """
    if not isinstance(brackets, dict):
        return np.array(brackets, dtype=float)
    table = np.zeros((3, 3, 3))
    for (i, j), vec in brackets.items():
        table[i - 1, j - 1] = vec
        table[j - 1, i - 1] = -np.asarray(vec, dtype=float)
    return table


@dataclass(frozen=True)
class ACBMStructure:
    metric: FieldFn
    phi: FieldFn
    xi: FieldFn
    eta: FieldFn
    brackets: FieldFn
    # chart components of the frame vectors (columns); identity if None
    frame: Optional[FieldFn] = None
    # derivatives(name, pt) -> array whose leading axis i holds e_i(field)
    derivatives: Optional[Callable[[str, np.ndarray], Optional[np.ndarray]]] = None
    constant: bool = False
    name: str = "custom"
    box: tuple = ((-1.0, -1.0, -1.0), (1.0, 1.0, 1.0))

    frame_dim: ClassVar[int] = 3

    @classmethod
    def from_constants(cls, metric, phi, xi, eta, brackets, name="custom", box=None):
        kwargs = {} if box is None else {"box": box}
        return cls(
            metric=_constant(metric),
            phi=_constant(phi),
            xi=_constant(xi),
            eta=_constant(eta),
            brackets=_constant(bracket_table(brackets)),
            constant=True,
            name=name,
            **kwargs,
        )

    def frame_vectors(self, pt) -> np.ndarray:
        if self.frame is None:
            return np.eye(3)
        return np.asarray(self.frame(pt), dtype=float)

    def field(self, name: str, pt) -> np.ndarray:
        return np.asarray(getattr(self, name)(np.asarray(pt, dtype=float)), dtype=float)

    def d(self, name: str, pt) -> np.ndarray:
        """Derivatives e_i(field) for i = 1..3 stacked along axis 0."""
        pt = np.asarray(pt, dtype=float)
        value = self.field(name, pt)
        if self.constant:
            return np.zeros((3,) + value.shape)
        if self.derivatives is not None:
            out = self.derivatives(name, pt)
            if out is not None:
                return np.asarray(out, dtype=float)
        fn = getattr(self, name)
        frame = self.frame_vectors(pt)
        return np.stack([numdiff.central(fn, pt, frame[:, i]) for i in range(3)])

    def metric_components(self, tag: MetricTag, pt) -> np.ndarray:
        G = self.field("metric", pt)
        if MetricTag(tag) is MetricTag.G:
            return G
        eta = self.field("eta", pt)
        return G @ self.field("phi", pt) + np.outer(eta, eta)

    def metric_derivative(self, tag: MetricTag, pt) -> np.ndarray:
        dG = self.d("metric", pt)
        if MetricTag(tag) is MetricTag.G:
            return dG
        G = self.field("metric", pt)
        phi = self.field("phi", pt)
        eta = self.field("eta", pt)
        dphi = self.d("phi", pt)
        deta = self.d("eta", pt)
        return np.stack(
            [
                dG[i] @ phi + G @ dphi[i] + np.outer(deta[i], eta) + np.outer(eta, deta[i])
                for i in range(3)
            ]
        )

    def sample_points(self, n: int = DEFAULT_SAMPLES, seed: Optional[int] = None) -> np.ndarray:
        """Scrambled Sobol points in the chart box, reproducible for a seed."""
        seed = DEFAULT_SEED if seed is None else seed
        lo, hi = (np.asarray(v, dtype=float) for v in self.box)
        sampler = qmc.Sobol(d=3, scramble=True, seed=seed)
        # Sobol balance needs a power of two; draw enough and truncate
        m = max(0, int(np.ceil(np.log2(max(n, 1)))))
        unit = sampler.random_base2(m)[:n]
        return qmc.scale(unit, lo, hi)


@dataclass(frozen=True)
class FrameConnection:
    gamma_fn: FieldFn
    metric_tag: MetricTag = MetricTag.G

    def gamma(self, pt) -> np.ndarray:
        return np.asarray(self.gamma_fn(np.asarray(pt, dtype=float)), dtype=float)

    def nabla(self, X, Y, pt, dY=None) -> np.ndarray:
        """nabla_X Y at pt; ``dY`` holds X(Y^k) when Y is not frame-constant."""
        out = np.einsum("i,j,ijk->k", X, Y, self.gamma(pt))
        if dY is not None:
            out = out + dY
        return out


@dataclass
class AxiomCheck:
    axiom: str
    max_residual: float
    passed: bool

    def to_record(self) -> dict:
        return {"axiom": self.axiom, "max_residual": self.max_residual, "pass": self.passed}


@dataclass
class StructureReport:
    structure: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def check(self, axiom: str) -> AxiomCheck:
        for c in self.checks:
            if c.axiom == axiom:
                return c
        raise KeyError(axiom)

    def to_records(self) -> list:
        return [c.to_record() for c in self.checks]


def _has_lorentz_signature(G) -> bool:
    w = np.linalg.eigvalsh(0.5 * (G + G.T))
    return int(np.sum(w > 0)) == 2 and int(np.sum(w < 0)) == 1


def _require_nondegenerate(G, pt, what="metric"):
    scale = max(1.0, float(np.max(np.abs(G)))) ** 3
    if abs(np.linalg.det(G)) <= 1e-12 * scale:
        raise DegenerateMetric(f"{what} is degenerate at {np.asarray(pt).tolist()}")


def verify_structure(s: ACBMStructure, pts, tol: float = TAU_ALG) -> StructureReport:
    """Evaluate every structure axiom at the sample points.

    The signature rows report 0 for a point set where every Gram matrix has
    signs (+, +, -) and 1 otherwise.
    """
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    if len(pts) == 0:
        raise ValueError("need at least one sample point")
    worst = dict.fromkeys(
        (
            "phi_squared",
            "eta_xi",
            "eta_phi",
            "phi_xi",
            "b_metric",
            "eta_dual",
            "metric_symmetric",
            "brackets_antisymmetric",
            "signature",
            "signature_tilde",
        ),
        0.0,
    )
    I = np.eye(3)
    for pt in pts:
        G = s.field("metric", pt)
        _require_nondegenerate(G, pt)
        phi = s.field("phi", pt)
        xi = s.field("xi", pt)
        eta = s.field("eta", pt)
        C = s.field("brackets", pt)
        Gt = s.metric_components(MetricTag.G_TILDE, pt)
        residuals = {
            "phi_squared": np.max(np.abs(phi @ phi - (-I + np.outer(xi, eta)))),
            "eta_xi": abs(float(eta @ xi) - 1.0),
            "eta_phi": np.max(np.abs(eta @ phi)),
            "phi_xi": np.max(np.abs(phi @ xi)),
            "b_metric": np.max(np.abs(phi.T @ G @ phi - (-G + np.outer(eta, eta)))),
            "eta_dual": np.max(np.abs(G @ xi - eta)),
            "metric_symmetric": np.max(np.abs(G - G.T)),
            "brackets_antisymmetric": np.max(np.abs(C + C.transpose(1, 0, 2))),
            "signature": 0.0 if _has_lorentz_signature(G) else 1.0,
            "signature_tilde": 0.0 if _has_lorentz_signature(Gt) else 1.0,
        }
        for key, val in residuals.items():
            worst[key] = max(worst[key], float(val))
    report = StructureReport(structure=s.name)
    for key, val in worst.items():
        report.checks.append(AxiomCheck(key, val, val <= tol))
    return report


def associated_metric(s: ACBMStructure) -> FieldFn:
    """Components of g~(X, Y) = g(X, phi Y) + eta(X) eta(Y) as a function of pt."""
    return partial(s.metric_components, MetricTag.G_TILDE)


def _koszul_gamma(G, dG, C):
    # B[i, j, k] = g([e_i, e_j], e_k)
    B = np.einsum("ijl,lk->ijk", C, G)
    K = (
        dG
        + np.einsum("jik->ijk", dG)
        - np.einsum("kij->ijk", dG)
        + B
        - np.einsum("ikj->ijk", B)
        - np.einsum("jki->ijk", B)
    )
    rhs = 0.5 * K.reshape(9, 3).T
    return np.linalg.solve(G, rhs).T.reshape(3, 3, 3)


def koszul_connection(
    s: ACBMStructure, metric=MetricTag.G, pts=None, tag: Optional[MetricTag] = None
) -> FrameConnection:
    """Levi-Civita connection of ``metric`` from the Koszul formula in the frame.

    ``metric`` may be a MetricTag (components and derivatives come from the
    structure), a constant 3x3 array, or a callable of the point.
    """
    if isinstance(metric, (MetricTag, str)) and not callable(metric):
        tag = MetricTag(metric)
        G_fn = partial(s.metric_components, tag)
        dG_fn = partial(s.metric_derivative, tag)
    elif callable(metric):
        G_fn = metric

        def dG_fn(pt):
            frame = s.frame_vectors(pt)
            return np.stack([numdiff.central(metric, pt, frame[:, i]) for i in range(3)])

    else:
        const = _frozen(metric)
        G_fn = lambda pt: const  # noqa: E731
        dG_fn = lambda pt: np.zeros((3, 3, 3))  # noqa: E731
    tag = MetricTag.G if tag is None else MetricTag(tag)

    if pts is not None:
        for pt in np.atleast_2d(np.asarray(pts, dtype=float)):
            _require_nondegenerate(np.asarray(G_fn(pt), dtype=float), pt)

    def gamma(pt):
        G = np.asarray(G_fn(pt), dtype=float)
        _require_nondegenerate(G, pt)
        return _koszul_gamma(G, np.asarray(dG_fn(pt), dtype=float), s.field("brackets", pt))

    return FrameConnection(gamma, tag)


def nabla_phi(s: ACBMStructure, conn: FrameConnection, pt) -> np.ndarray:
    """D[i, j] = components of (nabla_{e_i} phi) e_j."""
    Gam = conn.gamma(pt)
    phi = s.field("phi", pt)
    dphi = s.d("phi", pt)
    # nabla_{e_i}(phi e_j) = e_i(phi^k_j) e_k + phi^k_j Gamma[i, k]
    first = dphi.transpose(0, 2, 1) + np.einsum("kj,ikl->ijl", phi, Gam)
    return first - np.einsum("lm,ijm->ijl", phi, Gam)


def f_tensor(s: ACBMStructure, conn: FrameConnection, X, Y, Z, pt) -> float:
    """F(X, Y, Z) = g((nabla_X phi) Y, Z) for component vectors X, Y, Z."""
    if conn.metric_tag is not MetricTag.G:
        raise ValueError("F is defined with the Levi-Civita connection of g")
    D = nabla_phi(s, conn, pt)
    v = np.einsum("i,j,ijk->k", X, Y, D)
    return float(v @ s.field("metric", pt) @ np.asarray(Z, dtype=float))


def f_tensor_table(s: ACBMStructure, conn: FrameConnection, pt) -> np.ndarray:
    """All frame components F[i, j, k] = F(e_i, e_j, e_k)."""
    return np.einsum("ijl,lk->ijk", nabla_phi(s, conn, pt), s.field("metric", pt))


@dataclass
class SasakiReport:
    passed: bool
    f_residual: float
    xi_residual: float
    f_symmetry: float

    def __bool__(self):
        return self.passed

    def to_records(self, tol) -> list:
        return [
            {"axiom": "sasaki_f_tensor", "max_residual": self.f_residual, "pass": self.f_residual <= tol},
            {"axiom": "nabla_xi", "max_residual": self.xi_residual, "pass": self.xi_residual <= tol},
            {"axiom": "f_symmetry", "max_residual": self.f_symmetry, "pass": self.f_symmetry <= tol},
        ]


def sasaki_f_expected(s: ACBMStructure, pt) -> np.ndarray:
    G = s.field("metric", pt)
    phi = s.field("phi", pt)
    eta = s.field("eta", pt)
    P = phi.T @ G @ phi
    return np.einsum("ij,k->ijk", P, eta) + np.einsum("ik,j->ijk", P, eta)


def nabla_xi(s: ACBMStructure, conn: FrameConnection, pt) -> np.ndarray:
    """Row i holds the components of nabla_{e_i} xi."""
    xi = s.field("xi", pt)
    return s.d("xi", pt) + np.einsum("j,ijk->ik", xi, conn.gamma(pt))


def is_sasaki_like(s: ACBMStructure, conn: FrameConnection, pts, tol: float = TAU_ALG) -> SasakiReport:
    f_res = xi_res = sym = 0.0
    for pt in np.atleast_2d(np.asarray(pts, dtype=float)):
        F = f_tensor_table(s, conn, pt)
        f_res = max(f_res, float(np.max(np.abs(F - sasaki_f_expected(s, pt)))))
        sym = max(sym, float(np.max(np.abs(F - F.transpose(0, 2, 1)))))
        phi = s.field("phi", pt)
        xi_res = max(xi_res, float(np.max(np.abs(nabla_xi(s, conn, pt) + phi.T))))
    return SasakiReport(f_res <= tol and xi_res <= tol, f_res, xi_res, sym)


def nabla_tilde_difference(conn_g: FrameConnection, s: ACBMStructure) -> FrameConnection:
    """Connection of g~ as nabla + Phi with Phi(X, Y) = -(g(X, phi Y) - g(phi X, phi Y)) xi.

    Valid on 3-dimensional Sasaki-like structures.
    """

    def gamma(pt):
        G = s.field("metric", pt)
        phi = s.field("phi", pt)
        coef = G @ phi - phi.T @ G @ phi
        return conn_g.gamma(pt) - np.einsum("ij,k->ijk", coef, s.field("xi", pt))

    return FrameConnection(gamma, MetricTag.G_TILDE)


def connection_residuals(s: ACBMStructure, conn: FrameConnection, pts) -> dict:
    """Max metric-compatibility and torsion residuals of a frame connection."""
    compat = torsion = 0.0
    for pt in np.atleast_2d(np.asarray(pts, dtype=float)):
        G = s.metric_components(conn.metric_tag, pt)
        dG = s.metric_derivative(conn.metric_tag, pt)
        Gam = conn.gamma(pt)
        # e_i g_jk - g(nabla_i e_j, e_k) - g(e_j, nabla_i e_k)
        low = np.einsum("ijl,lk->ijk", Gam, G)
        compat = max(compat, float(np.max(np.abs(dG - low - low.transpose(0, 2, 1)))))
        torsion = max(
            torsion,
            float(np.max(np.abs(Gam - Gam.transpose(1, 0, 2) - s.field("brackets", pt)))),
        )
    return {"metric_compatibility": compat, "torsion": torsion}


def signature_ok(s: ACBMStructure, tag: MetricTag, pts) -> bool:
    return all(_has_lorentz_signature(s.metric_components(tag, pt)) for pt in np.atleast_2d(pts))


__all__ = [
    "ACBMStructure",
    "AxiomCheck",
    "FrameConnection",
    "MetricTag",
    "SasakiReport",
    "StructureReport",
    "associated_metric",
    "bracket_table",
    "connection_residuals",
    "f_tensor",
    "f_tensor_table",
    "is_sasaki_like",
    "koszul_connection",
    "nabla_phi",
    "nabla_tilde_difference",
    "nabla_xi",
    "sasaki_f_expected",
    "signature_ok",
    "verify_structure",
]
