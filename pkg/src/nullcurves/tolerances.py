"""Default tolerances.

Closed-form algebra is checked at TAU_ALG, identities that involve analytic
derivatives at TAU_NUM and finite-difference ones at TAU_FD.
"""

TAU_ALG = 1e-10
TAU_NUM = 1e-6
TAU_FD = 1e-4

TAU_SLANT = 1e-8
TAU_FRENET = 1e-5
TAU_FRENET_FD = 1e-3

# k1 threshold is relative: TAU_GEO * (1 + a^4 + b^2)
TAU_GEO = 1e-7

# osculating order detection for non-null curves
TAU_ORDER = 1e-7

# switch to the x3 -> 0 limit of the group exponential
TAU_X3 = 1e-6

# exact linear arc-length substitution when the speed is this constant
TAU_CONST_SPEED = 1e-9

DEFAULT_SAMPLES = 32
DEFAULT_PROBES = 64
DEFAULT_SEED = 20240607


def tau_geo(a, b):
    return TAU_GEO * (1.0 + a**4 + b**2)
