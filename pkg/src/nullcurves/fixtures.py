"""Built-in structures and curves.

Both built-in structures carry the same frame data: g = diag(1, -1, 1),
phi e1 = e2, phi e2 = -e1, xi = e3, and brackets [e1, e3] = -e2,
[e2, e3] = e1. The product manifold derives that data from chart
expressions on R^2 x R+; the solvable group stores it as constants.
"""

from __future__ import annotations

import ast
import math
import operator

import numpy as np
from scipy.integrate import quad

from .curves import Curve
from .errors import ConfigError, ForbiddenDegenerate
from .manifold import ACBMStructure

FRAME_METRIC = np.diag([1.0, -1.0, 1.0])
FRAME_PHI = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
FRAME_XI = np.array([0.0, 0.0, 1.0])
FRAME_ETA = np.array([0.0, 0.0, 1.0])
FRAME_BRACKETS = {(1, 2): (0.0, 0.0, 0.0), (1, 3): (0.0, -1.0, 0.0), (2, 3): (1.0, 0.0, 0.0)}


def solvable_group() -> ACBMStructure:
    return ACBMStructure.from_constants(
        FRAME_METRIC, FRAME_PHI, FRAME_XI, FRAME_ETA, FRAME_BRACKETS, name="solvable_group"
    )


def abelian_structure() -> ACBMStructure:
    """Same tensors as the solvable group with all brackets zero (flat, not Sasaki-like)."""
    return ACBMStructure.from_constants(
        FRAME_METRIC, FRAME_PHI, FRAME_XI, FRAME_ETA, {}, name="abelian"
    )


def wrong_signature() -> ACBMStructure:
    return ACBMStructure.from_constants(
        np.eye(3), FRAME_PHI, FRAME_XI, FRAME_ETA, FRAME_BRACKETS, name="wrong_signature"
    )


# -- product manifold R+ x N^2 in chart coordinates (x, y, z) ---------------

_J = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
_DZ = np.array([0.0, 0.0, 1.0])


def _chart_frame(z):
    c, s = math.cos(z), math.sin(z)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _chart_frame_dz(z):
    c, s = math.cos(z), math.sin(z)
    return np.array([[-s, -c, 0.0], [c, -s, 0.0], [0.0, 0.0, 0.0]])


def _chart_metric(z):
    # dz^2 + cos 2z h - sin 2z h~ with h = diag(1, -1) on (d/dx, d/dy)
    c2, s2 = math.cos(2 * z), math.sin(2 * z)
    return np.array([[c2, s2, 0.0], [s2, -c2, 0.0], [0.0, 0.0, 1.0]])


def _chart_metric_dz(z):
    c2, s2 = math.cos(2 * z), math.sin(2 * z)
    return np.array([[-2 * s2, 2 * c2, 0.0], [2 * c2, 2 * s2, 0.0], [0.0, 0.0, 0.0]])


def _pm_metric(pt):
    E = _chart_frame(pt[2])
    return E.T @ _chart_metric(pt[2]) @ E


def _pm_phi(pt):
    E = _chart_frame(pt[2])
    return E.T @ _J @ E


def _pm_xi(pt):
    return _chart_frame(pt[2]).T @ _DZ


def _pm_eta(pt):
    return _DZ @ _chart_frame(pt[2])


def _pm_brackets(pt):
    # [e_i, e_j] = e_i(E_j) - e_j(E_i); only d/dz acts since E depends on z alone
    E, dE = _chart_frame(pt[2]), _chart_frame_dz(pt[2])
    out = np.zeros((3, 3, 3))
    for i in range(3):
        for j in range(3):
            out[i, j] = E.T @ (E[2, i] * dE[:, j] - E[2, j] * dE[:, i])
    return out


def _pm_derivatives(name, pt):
    z = pt[2]
    E, dE = _chart_frame(z), _chart_frame_dz(z)
    if name == "metric":
        g, dg = _chart_metric(z), _chart_metric_dz(z)
        dz = dE.T @ g @ E + E.T @ dg @ E + E.T @ g @ dE
    elif name == "phi":
        dz = dE.T @ _J @ E + E.T @ _J @ dE
    elif name == "xi":
        dz = dE.T @ _DZ
    elif name == "eta":
        dz = _DZ @ dE
    else:
        return None
    # fields depend on z only, so e_i(f) = E[2, i] df/dz
    return np.stack([E[2, i] * dz for i in range(3)])


def product_manifold() -> ACBMStructure:
    return ACBMStructure(
        metric=_pm_metric,
        phi=_pm_phi,
        xi=_pm_xi,
        eta=_pm_eta,
        brackets=_pm_brackets,
        frame=lambda pt: _chart_frame(pt[2]),
        derivatives=_pm_derivatives,
        name="product_manifold",
        box=((-1.0, -1.0, 0.1), (1.0, 1.0, 3.0)),
    )


STRUCTURES = {
    "product_manifold": product_manifold,
    "solvable_group": solvable_group,
    "abelian": abelian_structure,
    "wrong_signature": wrong_signature,
}


def structure_fixture(name: str) -> ACBMStructure:
    try:
        return STRUCTURES[name]()
    except KeyError:
        raise ConfigError(f"unknown manifold fixture {name!r}") from None


# -- curves ------------------------------------------------------------------


def _const_b(value):
    return (lambda t: value, lambda t: 0.0, lambda t: 0.0)


def example_a() -> Curve:
    return Curve(
        position=lambda t: np.array([math.cosh(t), math.sinh(t), t]),
        velocity=lambda t: np.array([math.sinh(t), math.cosh(t), 1.0]),
        accel=lambda t: np.array([math.cosh(t), math.sinh(t), 0.0]),
        domain=(-2.0, 2.0),
        name="example_a",
        b_closure=(
            lambda t: -math.sinh(2 * t),
            lambda t: -2 * math.cosh(2 * t),
            lambda t: -4 * math.sinh(2 * t),
        ),
    )


def example_b(c_star: float = 0.0) -> Curve:
    return Curve(
        position=lambda t: np.array([c_star, t, -t]),
        velocity=lambda t: np.array([0.0, 1.0, -1.0]),
        accel=lambda t: np.zeros(3),
        domain=(-2.0, 2.0),
        name="example_b",
        b_closure=_const_b(0.0),
    )


def example_c(c_star: float = 0.0) -> Curve:
    r = math.sqrt(2.0) / 2
    return Curve(
        position=lambda t: np.array([r * t, -r * t, c_star]),
        velocity=lambda t: np.array([r, -r, 0.0]),
        accel=lambda t: np.zeros(3),
        domain=(-2.0, 2.0),
        name="example_c",
        b_closure=_const_b(1.0),
    )


def straight_curve(velocity, b_value=None, domain=(-2.0, 2.0), name="straight") -> Curve:
    """Curve with constant frame components t * velocity."""
    v = np.array(velocity, dtype=float)
    v.setflags(write=False)
    return Curve(
        position=lambda t: t * v,
        velocity=lambda t: v,
        accel=lambda t: np.zeros(3),
        domain=domain,
        name=name,
        b_closure=None if b_value is None else _const_b(float(b_value)),
    )


def liegroup_slant(a: float, b: float, domain=(-2.0, 2.0)) -> Curve:
    """One-parameter subgroup t -> exp(tX) with X = (p, q, a) from (a, b)."""
    from .lie_group import slant_null_tangent

    spec = slant_null_tangent(a, b)
    return straight_curve(spec.vector, b, domain, name=f"liegroup_slant({a!r},{b!r})")


def liegroup_helix(a: float, sign: float = 1.0, domain=(-2.0, 2.0)) -> Curve:
    """Generalized helix of the group: b = sign * sqrt(1 - a^4)."""
    from .lie_group import helix_tangent

    spec = helix_tangent(a, sign)
    return straight_curve(spec.vector, spec.b, domain, name=f"liegroup_helix({a!r},{sign!r})")


def hyperbolic_slant(a: float, omega: float = 1.0, phase: float = 0.0, branch: int = 1,
                     domain=(-1.0, 1.0)) -> Curve:
    """Slant null curve C' = (a sinh th, branch * a cosh th, a), th = omega t + phase.

    b = -branch a^2 sinh 2th is non-constant for omega != 0. Example (a) is
    hyperbolic_slant(1, 1, 0, 1) on [-2, 2].
    """
    if a == 0 or omega == 0:
        raise ValueError("need a != 0 and omega != 0")
    sg = 1.0 if branch >= 0 else -1.0

    def th(t):
        return omega * t + phase

    return Curve(
        position=lambda t: np.array(
            [a * math.cosh(th(t)) / omega, sg * a * math.sinh(th(t)) / omega, a * t]
        ),
        velocity=lambda t: np.array([a * math.sinh(th(t)), sg * a * math.cosh(th(t)), a]),
        accel=lambda t: np.array(
            [a * omega * math.cosh(th(t)), sg * a * omega * math.sinh(th(t)), 0.0]
        ),
        domain=domain,
        name=f"hyperbolic_slant({a!r},{omega!r},{phase!r},{branch!r})",
        b_closure=(
            lambda t: -sg * a * a * math.sinh(2 * th(t)),
            lambda t: -2 * sg * a * a * omega * math.cosh(2 * th(t)),
            lambda t: -4 * sg * a * a * omega * omega * math.sinh(2 * th(t)),
        ),
    )


def legendre_constant(b: float, domain=(-2.0, 2.0)) -> Curve:
    """Legendre null curve with constant b; example (c) is b = 1."""
    if b == 0:
        raise ForbiddenDegenerate("a Legendre null curve needs b != 0")
    u = math.sqrt(abs(b) / 2)
    sg = -1.0 if b > 0 else 1.0
    return straight_curve((u, sg * u, 0.0), b, domain, name=f"legendre_constant({b!r})")


def legendre_exp(scale: float = 1.0, rate: float = 1.0, sign: float = 1.0,
                 domain=(-1.0, 1.0)) -> Curve:
    """Legendre null curve with b(t) = sign * scale * exp(rate t)."""
    if scale <= 0 or rate == 0:
        raise ValueError("need scale > 0 and rate != 0")
    sg = -1.0 if sign > 0 else 1.0
    k = math.sqrt(scale / 2)

    def u(t):
        return k * math.exp(rate * t / 2)

    b_sign = 1.0 if sign > 0 else -1.0
    return Curve(
        position=lambda t: (2 / rate) * u(t) * np.array([1.0, sg, 0.0]),
        velocity=lambda t: u(t) * np.array([1.0, sg, 0.0]),
        accel=lambda t: (rate / 2) * u(t) * np.array([1.0, sg, 0.0]),
        domain=domain,
        name=f"legendre_exp({scale!r},{rate!r},{sign!r})",
        b_closure=(
            lambda t: b_sign * scale * math.exp(rate * t),
            lambda t: b_sign * scale * rate * math.exp(rate * t),
            lambda t: b_sign * scale * rate * rate * math.exp(rate * t),
        ),
    )


def geodesic_slant(a: float, c1: float = 0.0, branch: int = 1, domain=(-0.3, 0.3)) -> Curve:
    """Slant null geodesic with b = a^2 tan(2a(t + c1)).

    The domain must avoid the poles of tan; position is integrated numerically.
    """
    if a == 0:
        raise ValueError("geodesic slant curves need a != 0")
    sg = 1.0 if branch >= 0 else -1.0

    def arg(t):
        return 2 * a * (t + c1)

    def th(t):
        # b = -sg a^2 sinh 2th
        return 0.5 * math.asinh(-sg * math.tan(arg(t)))

    def th_dot(t):
        return -sg * a / abs(math.cos(arg(t)))

    def vel(t):
        return np.array([a * math.sinh(th(t)), sg * a * math.cosh(th(t)), a])

    def acc(t):
        w = th_dot(t)
        return np.array([a * w * math.cosh(th(t)), sg * a * w * math.sinh(th(t)), 0.0])

    def pos(t):
        return np.array([quad(lambda u: vel(u)[k], 0.0, t)[0] for k in range(3)])

    def b(t):
        return a * a * math.tan(arg(t))

    def b_dot(t):
        return 2 * a**3 / math.cos(arg(t)) ** 2

    def b_ddot(t):
        return 8 * a**4 * math.tan(arg(t)) / math.cos(arg(t)) ** 2

    return Curve(pos, vel, acc, domain, f"geodesic_slant({a!r},{c1!r})", (b, b_dot, b_ddot))


CURVES = {
    "example_a": example_a,
    "example_b": example_b,
    "example_c": example_c,
    "liegroup_slant": liegroup_slant,
    "liegroup_helix": liegroup_helix,
    "hyperbolic_slant": hyperbolic_slant,
    "legendre_constant": legendre_constant,
    "legendre_exp": legendre_exp,
    "geodesic_slant": geodesic_slant,
}

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_NAMES = {"pi": math.pi, "e": math.e}
_FUNCS = {"sqrt": math.sqrt, "exp": math.exp, "sin": math.sin, "cos": math.cos}


def _eval_number(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        val = _eval_number(node.operand)
        return -val if isinstance(node.op, ast.USub) else val
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_number(node.left), _eval_number(node.right))
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id in _FUNCS
        and len(node.args) == 1
    ):
        return _FUNCS[node.func.id](_eval_number(node.args[0]))
    raise ConfigError(f"unsupported expression {ast.dump(node)}")


def parse_call(text: str):
    """Split ``name(arg, key=value)`` into (name, args, kwargs) with numeric values."""
    text = text.strip()
    try:
        node = ast.parse(text, mode="eval").body
    except SyntaxError as exc:
        raise ConfigError(f"cannot parse {text!r}") from exc
    if isinstance(node, ast.Name):
        return node.id, [], {}
    if not (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)):
        raise ConfigError(f"cannot parse {text!r}")
    args = [_eval_number(a) for a in node.args]
    kwargs = {kw.arg: _eval_number(kw.value) for kw in node.keywords}
    return node.func.id, args, kwargs


def curve_fixture(spec: str) -> Curve:
    name, args, kwargs = parse_call(spec)
    if name not in CURVES:
        raise ConfigError(f"unknown curve fixture {name!r}")
    try:
        return CURVES[name](*args, **kwargs)
    except TypeError as exc:
        raise ConfigError(f"bad arguments for {name}: {exc}") from exc
