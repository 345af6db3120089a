"""The solvable group with Lie algebra [e1, e2] = 0, [e1, e3] = -e2, [e2, e3] = e1.

Covers ad-matrices, the closed-form exponential, slant null one-parameter
subgroups t -> exp(tX) and their distinguished Frenet data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ForbiddenDegenerate, MalformedA, ZeroA
from .fixtures import FRAME_BRACKETS
from .manifold import bracket_table
from .tolerances import TAU_ALG, TAU_X3

M1 = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 0.0, 0.0]])
M2 = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
M3 = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])

BRACKETS = bracket_table(FRAME_BRACKETS)


@dataclass(frozen=True)
class LieAlgebraVector:
    x1: float
    x2: float
    x3: float

    @classmethod
    def of(cls, x) -> "LieAlgebraVector":
        if isinstance(x, cls):
            return x
        x1, x2, x3 = (float(v) for v in x)
        return cls(x1, x2, x3)

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])


def bracket(X, Y) -> np.ndarray:
    """Lie bracket of two algebra vectors from the structure constants."""
    return np.einsum("i,j,ijk->k", np.asarray(X, float), np.asarray(Y, float), BRACKETS)


def ad_matrix(X) -> np.ndarray:
    """Matrix of ad_X in the basis {e1, e2, e3}: columns are [X, e_j]."""
    X = LieAlgebraVector.of(X)
    return X.x1 * M1 + X.x2 * M2 + X.x3 * M3


def ad_vector(A) -> LieAlgebraVector:
    """Inverse of ad_matrix; raises MalformedA for other matrices."""
    A = np.asarray(A, dtype=float)
    if A.shape != (3, 3):
        raise MalformedA(f"expected 3x3, got {A.shape}")
    x = LieAlgebraVector(-A[1, 2], A[0, 2], A[1, 0])
    if np.max(np.abs(A - ad_matrix(x))) > TAU_ALG * max(1.0, float(np.max(np.abs(A)))):
        raise MalformedA("matrix is not of the form x1 M1 + x2 M2 + x3 M3")
    return x


def _sinc_terms(x3):
    """(sin x3 / x3, (1 - cos x3) / x3) with a series below TAU_X3."""
    if abs(x3) > TAU_X3:
        # 1 - cos x = 2 sin^2(x/2) keeps full precision for small x
        return math.sin(x3) / x3, 2.0 * math.sin(x3 / 2) ** 2 / x3
    x2 = x3 * x3
    return 1.0 - x2 / 6.0, x3 / 2.0 - x3 * x2 / 24.0


def group_exp(A) -> np.ndarray:
    """Closed-form exponential of an ad-matrix.

    The upper block is the rotation by x3 and the last column the translation
    (x1(1 - cos x3) + x2 sin x3, x2(1 - cos x3) - x1 sin x3) / x3. Near
    x3 = 0 the quotients are replaced by their Taylor limits.
    """
    x = ad_vector(A)
    c, s = math.cos(x.x3), math.sin(x.x3)
    sinc, cosc = _sinc_terms(x.x3)
    return np.array(
        [
            [c, -s, x.x1 * cosc + x.x2 * sinc],
            [s, c, x.x2 * cosc - x.x1 * sinc],
            [0.0, 0.0, 1.0],
        ]
    )


def used_limit_formula(X) -> bool:
    return abs(LieAlgebraVector.of(X).x3) <= TAU_X3


@dataclass(frozen=True)
class AdExpData:
    A: np.ndarray
    eigvals: np.ndarray
    P: np.ndarray
    P_inv: np.ndarray
    expA: np.ndarray
    limit_formula: bool


def eigenbasis(X):
    """Change of basis P and its inverse diagonalizing ad_X (needs x3 != 0)."""
    X = LieAlgebraVector.of(X)
    if X.x3 == 0:
        raise ZeroA("ad_X is not diagonalizable for x3 = 0")
    x1, x2, x3 = X.x1, X.x2, X.x3
    P = np.array([[x1, 1, 1j], [x2, 1j, 1], [x3, 0, 0]], dtype=complex)
    P_inv = (1 / (2 * x3)) * np.array(
        [[0, 0, 2], [x3, -1j * x3, -x1 + 1j * x2], [-1j * x3, x3, -x2 + 1j * x1]],
        dtype=complex,
    )
    # (1, i, 0) spans the -i x3 eigenspace and (i, 1, 0) the +i x3 one
    eig = np.array([0, -1j * x3, 1j * x3])
    return eig, P, P_inv


def ad_exp_data(X) -> AdExpData:
    X = LieAlgebraVector.of(X)
    A = ad_matrix(X)
    if X.x3 != 0:
        eig, P, P_inv = eigenbasis(X)
    else:
        eig, P, P_inv = np.zeros(3, dtype=complex), np.full((3, 3), np.nan), np.full((3, 3), np.nan)
    return AdExpData(A, eig, P, P_inv, group_exp(A), used_limit_formula(X))


@dataclass(frozen=True)
class TangentSpec:
    a: float
    b: float
    p: float
    q: float
    r: float
    eps: float

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.p, self.q, self.r])

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "p": self.p, "q": self.q, "r": self.r, "eps": self.eps}


def slant_null_tangent(a: float, b: float) -> TangentSpec:
    """Frame components (p, q, a) of a g-null X with eta(X) = a and g(X, phi X) = b.

    eps = sign(b), taken as +1 for b = 0 where p vanishes anyway.
    """
    a, b = float(a), float(b)
    if a == 0 and b == 0:
        raise ForbiddenDegenerate("(a, b) = (0, 0) gives no null slant curve")
    root = math.hypot(a * a, b)
    eps = -1.0 if b < 0 else 1.0
    q = math.sqrt((root + a * a) / 2)
    # equals -eps sqrt((root - a^2) / 2) but avoids cancellation for |b| << a^2
    p = -b / (2 * q)
    return TangentSpec(a, b, p, q, a, eps)


def helix_tangent(a: float, sign: float = 1.0) -> TangentSpec:
    """Tangent with b = sign sqrt(1 - a^4), for which k1bar = 1 and k2bar = a^2/2."""
    a = float(a)
    if not (-1.0 <= a <= 1.0) or a == 0:
        raise ValueError("a must lie in [-1, 0) or (0, 1]")
    eps = -1.0 if sign < 0 else 1.0
    b = eps * math.sqrt(max(1.0 - a**4, 0.0))
    p = -eps * math.sqrt(1.0 - a * a) / math.sqrt(2.0)
    q = math.sqrt(1.0 + a * a) / math.sqrt(2.0)
    return TangentSpec(a, b, p, q, a, eps)


def adjoint_curve(a: float, b: float, t: float) -> np.ndarray:
    """Ad(C(t)) for C(t) = exp(t X), X = (p, q, a), in closed form."""
    if a == 0:
        raise ZeroA("closed form needs a != 0; use group_exp(ad_matrix(t X))")
    spec = slant_null_tangent(a, b)
    p, q = spec.p, spec.q
    c, s = math.cos(a * t), math.sin(a * t)
    return np.array(
        [
            [c, -s, p / a * (1 - c) + q / a * s],
            [s, c, q / a * (1 - c) - p / a * s],
            [0.0, 0.0, 1.0],
        ]
    )


def adjoint_curve_any(a: float, b: float, t: float) -> np.ndarray:
    """Ad(C(t)) through group_exp, valid for a = 0 as well."""
    spec = slant_null_tangent(a, b)
    return group_exp(ad_matrix(t * spec.vector))


@dataclass(frozen=True)
class LieFrame:
    tangent: np.ndarray
    Wbar: np.ndarray
    Nbar: np.ndarray
    k1bar: float
    k2bar: float
    hbar: float = 0.0


def lie_frame_Fbar(a: float, b: float) -> LieFrame:
    spec = slant_null_tangent(a, b)
    p, q = spec.p, spec.q
    Q = a**4 + b * b
    root = math.sqrt(Q)
    W = np.array([a * q / root, -a * p / root, b / root])
    N = np.array(
        [-(a * a * p + 2 * b * q) / (2 * Q), (-a * a * q + 2 * b * p) / (2 * Q), a**3 / (2 * Q)]
    )
    return LieFrame(spec.vector, W, N, root, a * a / (2 * root))


def helix_frame(a: float, sign: float = 1.0) -> LieFrame:
    """W1, N1 of the generalized helix family written out directly."""
    eps = -1.0 if sign < 0 else 1.0
    r2 = math.sqrt(2.0)
    spec = helix_tangent(a, sign)
    W = np.array(
        [a * math.sqrt(1 + a * a) / r2, eps * a * math.sqrt(1 - a * a) / r2, eps * math.sqrt(1 - a**4)]
    )
    N = np.array(
        [
            -eps * math.sqrt(1 - a * a) * (2 + a * a) / (2 * r2),
            -math.sqrt(1 + a * a) * (2 - a * a) / (2 * r2),
            a**3 / 2,
        ]
    )
    return LieFrame(spec.vector, W, N, 1.0, a * a / 2)


def trajectory(a: float, b: float, ts) -> np.ndarray:
    """Rows (t, 9 entries of Ad(C(t))) over the grid ``ts``."""
    fn = adjoint_curve if a != 0 else adjoint_curve_any
    return np.array([[t, *fn(a, b, t).ravel()] for t in ts])
