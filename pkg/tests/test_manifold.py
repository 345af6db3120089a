import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from nullcurves.errors import ConfigError, DegenerateMetric
from nullcurves.fixtures import (
    FRAME_BRACKETS,
    FRAME_METRIC,
    FRAME_PHI,
    abelian_structure,
    product_manifold,
    solvable_group,
    structure_fixture,
    wrong_signature,
)
from nullcurves.manifold import (
    ACBMStructure,
    MetricTag,
    bracket_table,
    connection_residuals,
    f_tensor,
    f_tensor_table,
    is_sasaki_like,
    koszul_connection,
    nabla_tilde_difference,
    nabla_xi,
    sasaki_f_expected,
    verify_structure,
)

STRUCTS = [solvable_group, product_manifold]


@pytest.fixture(params=STRUCTS, ids=lambda f: f.__name__)
def structure(request):
    return request.param()


def test_connection_table_g():
    s = solvable_group()
    gamma = koszul_connection(s).gamma(np.zeros(3))
    np.testing.assert_allclose(gamma, oracles.expected_gamma_g(), atol=1e-12)


def test_connection_table_gtilde():
    s = solvable_group()
    gamma = koszul_connection(s, MetricTag.G_TILDE).gamma(np.zeros(3))
    np.testing.assert_allclose(gamma, oracles.expected_gamma_gtilde(), atol=1e-12)


def test_gtilde_from_difference_formula():
    s = solvable_group()
    direct = koszul_connection(s, MetricTag.G_TILDE).gamma(np.zeros(3))
    via = nabla_tilde_difference(koszul_connection(s), s).gamma(np.zeros(3))
    np.testing.assert_allclose(via, direct, atol=1e-12)


def test_product_manifold_matches_chart_christoffels():
    s = product_manifold()
    conn = koszul_connection(s)
    for pt in s.sample_points(8, seed=5):
        np.testing.assert_allclose(conn.gamma(pt), oracles.chart_frame_gamma(pt), atol=1e-8)


def test_product_manifold_frame_tables_are_constant():
    s = product_manifold()
    conn = koszul_connection(s)
    for pt in s.sample_points(8, seed=7):
        np.testing.assert_allclose(s.field("metric", pt), FRAME_METRIC, atol=1e-12)
        np.testing.assert_allclose(s.field("phi", pt), FRAME_PHI, atol=1e-12)
        np.testing.assert_allclose(conn.gamma(pt), oracles.expected_gamma_g(), atol=1e-10)


def test_structure_axioms_pass(structure):
    report = verify_structure(structure, structure.sample_points())
    assert report.passed, report.to_records()
    assert all(set(r) == {"axiom", "max_residual", "pass"} for r in report.to_records())


def test_sasaki_like_on_both_fixtures(structure):
    pts = structure.sample_points(32)
    conn = koszul_connection(structure, MetricTag.G, pts)
    rep = is_sasaki_like(structure, conn, pts, 1e-10)
    assert rep
    assert rep.f_residual <= 1e-10 and rep.xi_residual <= 1e-10


def test_connection_is_levi_civita(structure):
    pts = structure.sample_points(8)
    for tag in MetricTag:
        res = connection_residuals(structure, koszul_connection(structure, tag, pts), pts)
        assert res["metric_compatibility"] <= 1e-10
        assert res["torsion"] <= 1e-10


def test_nabla_xi_is_minus_phi():
    s = solvable_group()
    conn = koszul_connection(s)
    pt = np.zeros(3)
    for i in range(3):
        np.testing.assert_allclose(nabla_xi(s, conn, pt)[i], -FRAME_PHI[:, i], atol=1e-14)


def test_f_tensor_shape_and_symmetry():
    s = solvable_group()
    conn = koszul_connection(s)
    F = f_tensor_table(s, conn, np.zeros(3))
    np.testing.assert_allclose(F, np.swapaxes(F, 1, 2), atol=1e-14)
    np.testing.assert_allclose(F, sasaki_f_expected(s, np.zeros(3)), atol=1e-14)
    assert f_tensor(s, conn, [1, 0, 0], [0, 1, 0], [0, 0, 1], np.zeros(3)) == pytest.approx(
        F[0, 1, 2]
    )


def test_f_tensor_rejects_gtilde():
    s = solvable_group()
    with pytest.raises(Exception):
        f_tensor(s, koszul_connection(s, MetricTag.G_TILDE), [1, 0, 0], [0, 1, 0], [0, 0, 1], np.zeros(3))


def test_abelian_structure_is_not_sasaki_like():
    s = abelian_structure()
    pts = s.sample_points(8)
    assert verify_structure(s, pts).passed
    assert not is_sasaki_like(s, koszul_connection(s), pts)


def test_wrong_signature_fails_signature_check():
    s = wrong_signature()
    rep = verify_structure(s, s.sample_points(8))
    assert not rep.passed
    assert not rep.check("signature").passed


def test_degenerate_metric_raises():
    s = ACBMStructure.from_constants(
        np.diag([1.0, 0.0, 1.0]), FRAME_PHI, [0, 0, 1], [0, 0, 1], FRAME_BRACKETS
    )
    with pytest.raises(DegenerateMetric):
        verify_structure(s, s.sample_points(8))
    with pytest.raises(DegenerateMetric):
        koszul_connection(s, pts=s.sample_points(8))


def test_sample_points_deterministic():
    s = product_manifold()
    np.testing.assert_array_equal(s.sample_points(32, 3), s.sample_points(32, 3))
    pts = s.sample_points(32, 3)
    lo, hi = (np.array(v) for v in s.box)
    assert np.all(pts >= lo) and np.all(pts <= hi)
    assert not np.array_equal(pts, s.sample_points(32, 4))


def test_unknown_fixture():
    with pytest.raises(ConfigError):
        structure_fixture("nope")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=3, max_size=3),
       st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_bracket_table_antisymmetric(u, v):
    B = bracket_table(FRAME_BRACKETS)
    x = np.einsum("i,j,ijk->k", u, v, B)
    y = np.einsum("i,j,ijk->k", v, u, B)
    np.testing.assert_allclose(x, -y, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(0.1, 3))
def test_b_metric_identity_at_random_points(x, y, z):
    s = product_manifold()
    pt = np.array([x, y, z])
    G, P = s.field("metric", pt), s.field("phi", pt)
    eta = s.field("eta", pt)
    np.testing.assert_allclose(P.T @ G @ P, -G + np.outer(eta, eta), atol=1e-12)
    np.testing.assert_allclose(P @ P, -np.eye(3) + np.outer(s.field("xi", pt), eta), atol=1e-12)
