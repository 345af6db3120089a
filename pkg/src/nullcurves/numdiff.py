"""Five-point central stencils for scalar or array valued functions of t."""

import numpy as np

_EPS = np.finfo(float).eps


def step(t, order=1):
    # balances O(h^4) truncation against eps/h^order rounding
    base = _EPS ** (1.0 / (4 + order))
    return base * max(1.0, abs(t))


def d1(f, t, h=None):
    h = step(t, 1) if h is None else h
    f_m2, f_m1 = np.asarray(f(t - 2 * h)), np.asarray(f(t - h))
    f_p1, f_p2 = np.asarray(f(t + h)), np.asarray(f(t + 2 * h))
    return (f_m2 - 8 * f_m1 + 8 * f_p1 - f_p2) / (12 * h)


def d2(f, t, h=None):
    h = step(t, 2) if h is None else h
    f_m2, f_m1 = np.asarray(f(t - 2 * h)), np.asarray(f(t - h))
    f_0 = np.asarray(f(t))
    f_p1, f_p2 = np.asarray(f(t + h)), np.asarray(f(t + 2 * h))
    return (-f_m2 + 16 * f_m1 - 30 * f_0 + 16 * f_p1 - f_p2) / (12 * h * h)


def central(f, x, direction, h=None):
    """Directional central difference of f at point x along `direction`."""
    x = np.asarray(x, dtype=float)
    direction = np.asarray(direction, dtype=float)
    if h is None:
        h = np.cbrt(_EPS) * max(1.0, float(np.linalg.norm(x)))
    return (np.asarray(f(x + h * direction)) - np.asarray(f(x - h * direction))) / (2 * h)
