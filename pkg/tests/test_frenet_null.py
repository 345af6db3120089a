import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from nullcurves.curves import acceleration, slant_invariants
from nullcurves.errors import DegenerateSlant, ForbiddenDegenerate, GeodesicPoint, PreconditionMismatch
from nullcurves.fixtures import (
    curve_fixture,
    example_a,
    example_b,
    example_c,
    geodesic_slant,
    hyperbolic_slant,
    legendre_constant,
    legendre_exp,
    liegroup_helix,
    liegroup_slant,
    solvable_group,
)
from nullcurves.frenet_null import (
    POSITIVE_K1BAR,
    FrameKind,
    NullFrenetData,
    SignConvention,
    classify_null,
    constant_curvature_check,
    decompose_acceleration,
    distinguished_frame_Fbar,
    frame_at,
    frenet_residuals,
    general_frame_F,
    is_generalized_helix,
    is_geodesic_slant,
    is_null_cubic,
    is_phi_geodesic,
    k1_slant,
    k2bar_legendre,
    k2bar_transformation_residual,
    legendre_frames,
    measured_curvatures,
    null_cubic_signs,
    transformation_residual,
)
from nullcurves.manifold import koszul_connection

S = solvable_group()
CONN = koszul_connection(S)
G = S.metric_components("g", np.zeros(3))
TS = np.linspace(-2, 2, 66)[1:-1]


# -- closed forms ------------------------------------------------------------

def test_decomposition_example_a_at_zero():
    dec = decompose_acceleration(1.0, 0.0, -2.0)
    assert (dec.alpha, dec.beta, dec.gamma) == pytest.approx((0.0, 0.0, -2.0))
    assert dec.det_Delta == -1.0
    c = example_a()
    v = c.vel(0.0)
    rebuilt = dec.vector(np.array([0, 0, 1.0]), v, S.field("phi", c.point(0.0)) @ v)
    np.testing.assert_allclose(rebuilt, acceleration(c, CONN, 0.0), atol=1e-14)
    np.testing.assert_allclose(rebuilt, [2.0, 0.0, 0.0], atol=1e-14)


def test_decomposition_special_cases():
    dec = decompose_acceleration(0.7, 0.0, 0.0)
    assert (dec.alpha, dec.beta, dec.gamma) == pytest.approx((0.0, 0.0, -0.7))
    dec = decompose_acceleration(0.0, 1.5, 0.3)
    assert (dec.alpha, dec.beta, dec.gamma) == pytest.approx((1.5, 0.3 / 3.0, 0.0))


def test_decomposition_degenerate():
    with pytest.raises(DegenerateSlant):
        decompose_acceleration(0.0, 0.0, 1.0)


@settings(max_examples=100, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-5, 5))
def test_decomposition_reconstructs_acceleration(a, b, b_dot):
    assume(a**4 + b * b > 1e-3)
    dec = decompose_acceleration(a, b, b_dot)
    # independent check against the defining linear system
    assert dec.alpha + a * dec.beta == pytest.approx(b, abs=1e-9)
    assert a * dec.alpha + b * dec.gamma == pytest.approx(0.0, abs=1e-9)
    k1 = k1_slant(a, b, b_dot)
    assert k1 * k1 == pytest.approx(dec.alpha**2 + a * a * dec.gamma**2, rel=1e-10, abs=1e-12)


def test_k1_special_values():
    # a = 0 in the slant formula gives -eps |b|; the Legendre screen W = eps xi gives eps b
    assert k1_slant(0.0, 2.5, 0.7, eps=-1) == pytest.approx(2.5)
    assert legendre_frames(legendre_constant(2.5), S, 0.0, SignConvention(-1, 1)).F.k1 == pytest.approx(-2.5)
    assert k1_slant(0.6, 0.8, 0.0, eps=1) == pytest.approx(-math.sqrt(0.6**4 + 0.64))


# -- example (a) --------------------------------------------------------------

def test_example_a_golden_values():
    c = example_a()
    for t in TS:
        ref = oracles.example_a_values(t)
        F = general_frame_F(c, S, t, SignConvention(1, 1))
        Fb = distinguished_frame_Fbar(c, S, t, SignConvention(1, -1))
        assert F.h == pytest.approx(ref["h"], abs=1e-8)
        assert F.k1 == pytest.approx(ref["k1"], abs=1e-8)
        assert F.k2 == pytest.approx(ref["k2"], abs=1e-8)
        assert Fb.k1 == pytest.approx(ref["k1bar"], abs=1e-8)
        assert Fb.k2 == pytest.approx(ref["k2bar"], abs=1e-8)


def test_example_a_screen_vectors():
    c = example_a()
    for t in (-1.3, 0.0, 0.4):
        ch, sh = math.cosh(t), math.sinh(t)
        F = general_frame_F(c, S, t)
        np.testing.assert_allclose(F.W, [-ch / math.cosh(2 * t), sh / math.cosh(2 * t), math.tanh(2 * t)], atol=1e-12)
        Fb = distinguished_frame_Fbar(c, S, t, SignConvention(1, -1))
        np.testing.assert_allclose(Fb.W, [1 / ch, 0.0, -math.tanh(t)], atol=1e-12)


def test_example_a_frenet_residuals():
    c = example_a()
    probes = np.linspace(-2, 2, 18)[1:-1]
    for kind in FrameKind:
        rep = frenet_residuals(c, lambda t: frame_at(c, S, t, kind), CONN, S, probes)
        assert rep.passed and rep.max_residual <= 1e-6, rep.to_dict()


def test_curvatures_agree_with_connection_reads():
    c = example_a()
    for kind in FrameKind:
        fr = frame_at(c, S, 0.7, kind, SignConvention(-1, 1))
        h, k1, k2 = measured_curvatures(c, S, CONN, fr)
        assert (h, k1, k2) == pytest.approx((fr.h, fr.k1, fr.k2), abs=1e-7)


def test_transformation_identities():
    c = hyperbolic_slant(0.8, 1.1, 0.3)
    inv = slant_invariants(c, S)
    for sg in SignConvention.orbit():
        for t in c.probes(8):
            F = general_frame_F(c, S, t, sg, inv)
            Fb = distinguished_frame_Fbar(c, S, t, sg, inv, check=False)
            a, b, bd, _ = inv.at(t)
            assert transformation_residual(F, Fb, a, b, bd) <= 1e-10
            assert k2bar_transformation_residual(c, S, t, sg, inv) <= 1e-6


def test_k2bar_transformation_with_stencil_derivative():
    c = hyperbolic_slant(0.8, 1.1, 0.3)
    stripped = type(c)(c.position, c.velocity, c.accel, c.domain, "stripped")
    for t in stripped.probes(6):
        assert k2bar_transformation_residual(stripped, S, t) <= 1e-5


def test_corrupted_frame_is_detected():
    c = example_a()

    def bad(t):
        fr = general_frame_F(c, S, t)
        return NullFrenetData(t, fr.tangent, fr.N, 1.1 * fr.W, fr.h, fr.k1, fr.k2, fr.frame_kind, fr.signs)

    assert frenet_residuals(c, bad, CONN, S, c.probes(8)).max_residual > 0.05


def test_frame_relations_everywhere():
    for c in (example_a(), hyperbolic_slant(1.7, -0.4, 0.1, -1), liegroup_slant(-0.6, 1.9)):
        inv = slant_invariants(c, S)
        for sg in SignConvention.orbit():
            for t in c.probes(6):
                for kind in FrameKind:
                    assert frame_at(c, S, t, kind, sg, inv).relations_residual(G) <= 1e-10


def test_sign_flips():
    c = example_a()
    t = 0.3
    base = general_frame_F(c, S, t, SignConvention(1, 1))
    flip = general_frame_F(c, S, t, SignConvention(-1, 1))
    assert flip.k1 == pytest.approx(-base.k1)
    np.testing.assert_allclose(flip.W, -base.W)
    b1 = distinguished_frame_Fbar(c, S, t, SignConvention(1, 1))
    b2 = distinguished_frame_Fbar(c, S, t, SignConvention(1, -1))
    assert (b2.k1, b2.k2) == pytest.approx((-b1.k1, -b1.k2))
    np.testing.assert_allclose(b2.W, -b1.W)


def test_g_of_acceleration_and_xi_is_b():
    for c in (example_a(), hyperbolic_slant(0.5, 2.0), legendre_exp(1.0, 1.0)):
        inv = slant_invariants(c, S)
        for t in c.probes(8):
            acc = acceleration(c, CONN, t)
            assert acc @ G @ np.array([0, 0, 1.0]) == pytest.approx(inv.b(t), abs=1e-10)


def test_constant_b_has_zero_h():
    c = liegroup_slant(0.4, -1.2)
    fr = general_frame_F(c, S, 0.0)
    assert fr.h == 0.0


# -- geodesic and phi-geodesic -----------------------------------------------

def test_geodesic_slant_detected():
    a = 1.0
    res = is_geodesic_slant(a, lambda t: a * a * math.tan(2 * a * t), (-0.3, 0.3))
    assert res.is_geodesic
    assert res.c1 == pytest.approx(0.0, abs=1e-12)
    assert res.closed_form_residual <= 1e-12


def test_geodesic_fixture_is_pregeodesic():
    c = geodesic_slant(0.9, 0.05)
    inv = slant_invariants(c, S)
    res = is_geodesic_slant(inv.a, inv.b, c.domain, b_dot_fn=inv.b_dot)
    assert res.is_geodesic and res.c1 == pytest.approx(0.05, abs=1e-10)
    for t in c.probes(8):
        a, b, bd, _ = inv.at(t)
        beta = b * bd / (2 * (a**4 + b * b))
        np.testing.assert_allclose(acceleration(c, CONN, t), beta * c.vel(t), atol=1e-9)
        with pytest.raises(GeodesicPoint):
            general_frame_F(c, S, t, inv=inv)
    assert "geodesic" in classify_null(c, S, CONN).labels


def test_example_a_not_geodesic():
    inv = slant_invariants(example_a(), S)
    assert not is_geodesic_slant(inv.a, inv.b, (-2, 2), b_dot_fn=inv.b_dot).is_geodesic


def test_legendre_never_geodesic():
    assert not is_geodesic_slant(0.0, lambda t: 1.0, (-1, 1)).is_geodesic


def test_phi_geodesic():
    res = is_phi_geodesic(example_b(), S, CONN)
    assert res.is_phi_geodesic and res.residual <= 1e-10 and res.k2bar == 0.5
    fr = res.frames[0]
    np.testing.assert_array_equal(fr.tangent, [0.0, 1.0, -1.0])
    np.testing.assert_array_equal(fr.N, [0.0, -0.5, -0.5])
    np.testing.assert_array_equal(fr.W, [-1.0, 0.0, 0.0])
    assert frenet_residuals(example_b(), lambda t: is_phi_geodesic(example_b(), S, CONN, [t]).frames[0],
                            CONN, S).max_residual <= 1e-10
    assert not is_phi_geodesic(example_a(), S, CONN).is_phi_geodesic
    assert is_phi_geodesic(liegroup_slant(-1.0, 0.0), S, CONN).is_phi_geodesic
    assert not is_phi_geodesic(liegroup_slant(1.0, 0.0), S, CONN).is_phi_geodesic


def test_phi_geodesic_frame_is_distinguished_frame():
    c = example_b()
    cartan = is_phi_geodesic(c, S, CONN).frames[0]
    fb = distinguished_frame_Fbar(c, S, cartan.t, POSITIVE_K1BAR)
    np.testing.assert_allclose(fb.N, cartan.N, atol=1e-14)
    np.testing.assert_allclose(fb.W, cartan.W, atol=1e-14)
    assert (fb.k1, fb.k2) == pytest.approx((1.0, 0.5))


# -- constant curvature, helices ---------------------------------------------

def test_constant_curvature_values():
    rep = constant_curvature_check(liegroup_slant(-1.0, 0.0), S, signs=SignConvention(1, 1))
    assert rep.is_const and rep.matches
    assert (rep.k1bar_expected, rep.k2bar_expected) == pytest.approx((-1.0, -0.5))


def test_constant_curvature_converse_on_example_a():
    rep = constant_curvature_check(example_a(), S, TS)
    assert not rep.is_const and rep.varies
    assert rep.k1bar_spread > 1.0


def test_legendre_constant_b_k2bar_zero():
    rep = constant_curvature_check(legendre_constant(0.3), S)
    assert rep.is_const and rep.k2bar_range == (0.0, 0.0)


def test_generalized_helix():
    assert is_generalized_helix(example_b(), S).is_helix
    for a in (0.3, -0.5, 1.0):
        for sign in (1, -1):
            res = is_generalized_helix(liegroup_helix(a, sign), S)
            assert res.is_helix, res.evidence
            assert res.evidence["k2bar"] == pytest.approx(a * a / 2, abs=1e-12)
    assert not is_generalized_helix(liegroup_slant(0.5, 0.5), S).is_helix
    assert not is_generalized_helix(example_a(), S, TS).is_helix


# -- Legendre ------------------------------------------------------------------

def test_example_c_legendre_frame():
    frames = legendre_frames(example_c(), S, 0.2, SignConvention(1, 1))
    r = math.sqrt(2) / 2
    np.testing.assert_allclose(frames.Fbar.tangent, [r, -r, 0.0])
    np.testing.assert_allclose(frames.Fbar.N, [r, r, 0.0], atol=1e-15)
    np.testing.assert_allclose(frames.Fbar.W, [0.0, 0.0, 1.0])
    assert frames.Fbar.k2 == 0.0 and frames.Fbar.k1 == pytest.approx(1.0)
    assert frames.F.relations_residual(G) <= 1e-12


def test_legendre_exp_values():
    c = legendre_exp(1.0, 1.0, 1.0)
    for t in (-0.5, 0.0, 0.6):
        # W = -xi here corresponds to the eps = +1 screen of the slant formulas
        fr = legendre_frames(c, S, t, SignConvention(-1, 1))
        assert fr.F.h == pytest.approx(0.5)
        assert fr.Fbar.k2 == pytest.approx(-3 / (8 * math.exp(t)), rel=1e-12)
        fr = legendre_frames(c, S, t, SignConvention(-1, -1))
        assert fr.Fbar.k2 == pytest.approx(3 / (8 * math.exp(t)), rel=1e-12)


@pytest.mark.parametrize("spec", ["legendre_exp(1,1,1)", "legendre_exp(0.3,-2,-1)", "legendre_exp(2,0.7,1)"])
def test_legendre_k2bar_sign_against_residual_oracle(spec):
    c = curve_fixture(spec)
    for sg in SignConvention.orbit():
        for which in ("F", "Fbar"):
            rep = frenet_residuals(c, lambda t: getattr(legendre_frames(c, S, t, sg), which), CONN, S, c.probes(8))
            assert rep.max_residual <= 1e-8

        # the opposite sign is rejected by the same oracle
        def flipped(t):
            f = legendre_frames(c, S, t, sg).Fbar
            return NullFrenetData(t, f.tangent, f.N, f.W, f.h, f.k1, -f.k2, f.frame_kind, f.signs)

        assert frenet_residuals(c, flipped, CONN, S, c.probes(8)).max_residual > 1e-3


def test_legendre_formula_function():
    assert k2bar_legendre(2.0, 0.0, 0.0, SignConvention()) == 0.0
    with pytest.raises(ForbiddenDegenerate):
        k2bar_legendre(0.0, 1.0, 0.0, SignConvention())


def test_legendre_frames_reject_slant():
    with pytest.raises(PreconditionMismatch):
        legendre_frames(example_a(), S, 0.0)


def test_null_cubic():
    c = example_c()
    assert is_null_cubic(c, S, SignConvention(1, 1))
    assert is_null_cubic(c, S, SignConvention(-1, -1))
    assert not is_null_cubic(c, S, SignConvention(1, -1))
    assert null_cubic_signs(legendre_constant(2.0), S) == []
    minus = null_cubic_signs(legendre_constant(-1.0), S)
    assert minus and all(sg.product == -1 for sg in minus)
    assert not is_null_cubic(example_a(), S)


def test_classification_labels():
    assert classify_null(example_b(), S, CONN).labels == ["phi_geodesic", "generalized_helix"]
    assert classify_null(example_c(), S, CONN).labels == ["legendre", "null_cubic"]
    res = classify_null(liegroup_slant(0.8, math.sqrt(1 - 0.8**4)), S, CONN)
    assert res.labels == ["generalized_helix"]
    assert res.evidence["k2bar"] == pytest.approx(0.32, abs=1e-12)
    assert classify_null(example_a(), S, CONN, TS).labels == []


def test_classification_invariant_under_default_signs():
    # classification searches the sign orbit itself, so no sign input exists
    assert classify_null(liegroup_helix(0.6, -1), S, CONN).labels == ["generalized_helix"]
