"""Kaehler angles, symplectic integrals, discrete bundle degrees, identities."""

import numpy as np
import pytest
from fractions import Fraction

from chdisc import (
    ClassError,
    ConvergenceError,
    InvariantReport,
    MeshError,
    ProjectivePoint,
    euler_via_mesh,
    gkl_euler,
    invariant_report,
    kaehler_angle,
    kalashnikov_residual,
    lagrangian_frame_check,
    octagon_mesh,
    pullback_scale,
    snap_rational,
    symplectic_area_closed_form,
    symplectic_area_triangle,
    toledo_via_coning,
    toledo_via_mesh,
    turnover_section_mesh,
)
from chdisc.disc import F0, embed
from chdisc.invariants import (
    COMPLEX_CLASS,
    GENERIC_CLASS,
    LAGRANGIAN_CLASS,
    _complex_basis,
    normalized_negative,
    tangent_project,
)
from chdisc.meshes import real_plane_point
from chdisc.representations import TurnoverSignature, fuchsian_turnover, orbifold_euler
from chdisc.representations import elliptic_fixed_point

from conftest import random_isometry, random_negative_point


# -- Kaehler angle and Lagrangian frames --------------------------------------

def test_kaehler_angle_complex_plane(rng):
    x = random_negative_point(rng)
    b1, _ = _complex_basis(normalized_negative(x))
    val, cls = kaehler_angle(x, b1, 1j * b1)
    assert val == pytest.approx(-1.0, abs=1e-12)
    assert cls == COMPLEX_CLASS
    val2, cls2 = kaehler_angle(x, b1, -1j * b1)
    assert val2 == pytest.approx(1.0, abs=1e-12)
    assert cls2 == COMPLEX_CLASS


def test_kaehler_angle_lagrangian_and_generic():
    x = real_plane_point(0.2, -0.1)
    u1 = tangent_project(normalized_negative(x), np.array([0.0, 1.0, 0.0]))
    u2 = tangent_project(normalized_negative(x), np.array([0.0, 0.0, 1.0]))
    val, cls = kaehler_angle(x, u1, u2)
    assert val == pytest.approx(0.0, abs=1e-12)
    assert cls == LAGRANGIAN_CLASS
    # a tilted plane between the two extremes
    val3, cls3 = kaehler_angle(x, u1, u2 + 0.7j * u1)
    assert cls3 == GENERIC_CLASS
    assert 0.0 < abs(val3) < 1.0


def test_kaehler_angle_isometry_invariance(rng):
    x = real_plane_point(0.2, -0.1)
    xh = normalized_negative(x)
    u1 = tangent_project(xh, np.array([0.0, 1.0, 0.0]))
    u2 = tangent_project(xh, np.array([0.3, 0.0, 1.0 + 0.4j]))
    val, _ = kaehler_angle(x, u1, u2)
    g = random_isometry(rng)
    val_g, _ = kaehler_angle(g(x), g.matrix @ u1, g.matrix @ u2)
    # the pushed-forward pair sits at the image point after reprojection
    assert val_g == pytest.approx(val, abs=1e-9)


def test_lagrangian_frame_check():
    x = real_plane_point(0.1, 0.25)
    xh = normalized_negative(x)
    u1 = tangent_project(xh, np.array([0.0, 1.0, 0.0]))
    u2 = tangent_project(xh, np.array([0.0, 0.0, 1.0]))
    # lemma assignment v = (i u2, i u1): positively oriented either way
    # around, because swapping the tangent pair swaps the normals too
    assert lagrangian_frame_check(x, u1, u2)
    assert lagrangian_frame_check(x, u2, u1)
    # holding the normal frame fixed while swapping the tangent pair flips
    # the orientation
    from chdisc.invariants import _gram_schmidt

    e1, e2 = _gram_schmidt([u1, u2], xh)
    assert lagrangian_frame_check(x, u1, u2, normal_pair=(1j * e2, 1j * e1))
    assert not lagrangian_frame_check(x, u2, u1, normal_pair=(1j * e2, 1j * e1))
    with pytest.raises(ClassError):
        lagrangian_frame_check(x, u1, 1j * u1)  # complex, not Lagrangian


# -- symplectic integrals ------------------------------------------------------

def test_symplectic_area_closed_form_vs_quadrature(rng):
    for _ in range(8):
        x1, x2, x3 = (random_negative_point(rng) for _ in range(3))
        q = symplectic_area_triangle(x1, x2, x3, order=24)
        c = symplectic_area_closed_form(x1, x2, x3)
        assert q == pytest.approx(c, abs=1e-10)


def test_symplectic_area_antisymmetry_and_invariance(rng):
    x1, x2, x3 = (random_negative_point(rng) for _ in range(3))
    c = symplectic_area_closed_form(x1, x2, x3)
    assert symplectic_area_closed_form(x1, x3, x2) == pytest.approx(-c, abs=1e-12)
    g = random_isometry(rng)
    assert symplectic_area_closed_form(g(x1), g(x2), g(x3)) == pytest.approx(
        c, abs=1e-10
    )


def test_symplectic_area_additive_under_subdivision(rng):
    from chdisc import geodesic_interp

    x1, x2, x3 = (random_negative_point(rng) for _ in range(3))
    m = geodesic_interp(x2, x3, 0.4)
    total = symplectic_area_closed_form(x1, x2, x3)
    parts = symplectic_area_closed_form(x1, x2, m) + symplectic_area_closed_form(
        x1, m, x3
    )
    assert parts == pytest.approx(total, abs=1e-10)


def test_symplectic_area_complex_geodesic_triangle():
    # inside a complex geodesic traversed counterclockwise the integral of
    # omega is minus the area, and eps-area gives the closed form exactly
    from chdisc.disc import triangle_area_gauss_bonnet, triangle_vertices

    z1, z2, z3 = triangle_vertices(np.pi / 3, np.pi / 4, np.pi / 5)
    area = triangle_area_gauss_bonnet(z1, z2, z3)
    got = symplectic_area_closed_form(embed(z1), embed(z2), embed(z3))
    assert got == pytest.approx(-area, abs=1e-12)


def test_symplectic_area_lagrangian_triangle_vanishes():
    pts = [real_plane_point(0.0, 0.0), real_plane_point(0.5, 0.1), real_plane_point(-0.2, 0.4)]
    assert symplectic_area_closed_form(*pts) == 0.0
    assert symplectic_area_triangle(*pts, order=8) == pytest.approx(0.0, abs=1e-12)


def test_toledo_via_coning_checks_fixed_points():
    sig = TurnoverSignature(3, 3, 4)
    rep, _ = fuchsian_turnover(sig)
    fixed = {name: elliptic_fixed_point(g) for name, g in rep.generators.items()}
    tau = toledo_via_coning(rep, fixed)
    assert tau == pytest.approx(-1.0 / 12.0, abs=1e-10)
    bad = dict(fixed, g1=embed(0.3 + 0.3j))
    with pytest.raises(ConvergenceError):
        toledo_via_coning(rep, bad)


# -- meshes and discrete degrees ----------------------------------------------

def test_turnover_mesh_structure():
    mesh = turnover_section_mesh(3, 3, 4, refinement=3)
    mesh.validate()
    assert mesh.cone_orders() == [3, 3, 4]
    assert mesh.snap_denominator() == 24
    doc = mesh.to_json_dict()
    assert doc["kind"] == "section_mesh"
    assert len(doc["vertices"]) == len(mesh.embedding)
    assert len(doc["side_pairings"]) == 2


def test_mesh_validate_rejects_broken_pairing():
    mesh = turnover_section_mesh(3, 3, 4, refinement=2)
    mesh.side_pairings[0].run_b = list(reversed(mesh.side_pairings[0].run_b))
    with pytest.raises(MeshError):
        mesh.validate()


def test_mesh_validate_rejects_non_negative_vertex():
    mesh = turnover_section_mesh(3, 3, 4, refinement=2)
    mesh.embedding[0] = F0
    with pytest.raises(MeshError):
        mesh.validate()


def test_toledo_via_mesh_matches_coning():
    mesh = turnover_section_mesh(3, 3, 4, refinement=4)
    tau_mesh = toledo_via_mesh(mesh, order=12)
    # same fundamental quadrilateral as the coned polygon
    assert tau_mesh == pytest.approx(-1.0 / 12.0, abs=1e-8)
    # and the per-face closed forms sum to the same total
    closed = sum(
        symplectic_area_closed_form(*(mesh.embedding[i] for i in tri))
        for tri in mesh.triangles
    )
    assert 2.0 / np.pi * closed == pytest.approx(tau_mesh, abs=1e-10)


def test_euler_via_mesh_turnover_baseline():
    mesh = turnover_section_mesh(3, 3, 4, refinement=3)
    degrees = euler_via_mesh(mesh)
    assert degrees.chi == Fraction(-1, 12)
    assert degrees.euler == Fraction(-1, 24)
    # discrete holonomy totals are exact to rounding, not just snappable
    assert degrees.chi_raw == pytest.approx(-1.0 / 12.0, abs=1e-10)
    assert degrees.euler_raw == pytest.approx(-1.0 / 24.0, abs=1e-10)


def test_euler_via_mesh_complex_octagon():
    mesh = octagon_mesh("complex", refinement=3)
    assert mesh.snap_denominator() == 2
    degrees = euler_via_mesh(mesh)
    assert degrees.chi == Fraction(-2)
    assert degrees.euler == Fraction(-1)  # holomorphic section: e = chi/2


def test_euler_via_mesh_lagrangian_octagon():
    mesh = octagon_mesh("lagrangian", refinement=3)
    degrees = euler_via_mesh(mesh)
    assert degrees.chi == Fraction(-2)
    assert degrees.euler == Fraction(2)  # Lagrangian section: e = -chi
    assert toledo_via_mesh(mesh, order=4) == pytest.approx(0.0, abs=1e-10)


def test_octagon_mesh_rejects_unknown_kind():
    with pytest.raises(ValueError):
        octagon_mesh("totally-real-ish")


# -- snapping, reports, identities --------------------------------------------

def test_snap_rational():
    assert snap_rational(-0.08333333333, 24) == Fraction(-1, 12)
    assert snap_rational(0.5000000001, 2) == Fraction(1, 2)
    with pytest.raises(ConvergenceError):
        snap_rational(0.123456, 24)


def test_invariant_report_clean():
    report = invariant_report(Fraction(-1, 12), -1.0 / 12.0 + 1e-9, -1.0 / 24.0 - 1e-9, 24)
    assert report.reliable
    assert report.toledo == Fraction(-1, 12)
    assert report.euler == Fraction(-1, 24)
    assert report.residual(signed=True) == 0
    assert report.residual(signed=False) == 0
    doc = report.to_json_dict()
    assert doc["kind"] == "invariants"
    assert doc["chi"] == "-1/12"
    assert doc["toledo"]["snapped"] == "-1/12"
    assert doc["euler"]["snapped"] == "-1/24"
    assert doc["orientation_convention"] == "fiberwise-counterclockwise"
    assert doc["residual_signed"] == 0.0


def test_invariant_report_snap_failure_is_flagged():
    report = invariant_report(Fraction(-1, 12), -0.123, -0.456, 24)
    assert not report.reliable
    assert report.toledo is None and report.euler is None
    # raw values are still reported
    assert report.to_json_dict()["toledo"]["raw"] == -0.123


def test_invariant_report_rigidity_violation_is_flagged():
    # |tau| > |chi| violates Toledo rigidity
    report = invariant_report(Fraction(-1, 12), -0.5, -0.25, 24)
    assert not report.reliable


def test_invariant_report_without_euler_data():
    report = InvariantReport(chi=Fraction(-1, 12), toledo_raw=-0.0833, euler_raw=None,
                             reliable=False)
    assert report.residual() is None
    doc = report.to_json_dict()
    assert doc["euler"]["raw"] is None
    assert doc["residual_signed"] is None


def test_kalashnikov_residual_arithmetic():
    report = InvariantReport(
        chi=Fraction(-2), toledo_raw=-2.0, euler_raw=-1.0,
        toledo=Fraction(-2), euler=Fraction(-1),
    )
    # 3(-2) - 2(-1) - 2(-2) = 0
    assert kalashnikov_residual(report, signed=True) == 0
    # -3|t| - 2e - 2chi = -6 + 2 + 4 = 0
    assert kalashnikov_residual(report, signed=False) == 0


def test_gkl_euler_values_and_errors():
    # explicit small cases: e = 2g - 2 - 3|tau|/2
    assert gkl_euler(2, 0) == (2, 0, -2, 1)
    assert gkl_euler(2, 2) == (-1, -2, 0, 0)
    for genus in (2, 3, 10):
        for tau_abs in range(0, 2 * genus - 1, 2):
            e, chi1, chi2, t = gkl_euler(genus, tau_abs)
            assert -3 * tau_abs == 2 * e + 2 * (2 - 2 * genus)
            assert chi1 + chi2 == 2 - 2 * genus  # split along a circle
    with pytest.raises(ValueError):
        gkl_euler(1, 0)
    with pytest.raises(ValueError):
        gkl_euler(3, 3)  # odd
    with pytest.raises(ValueError):
        gkl_euler(3, 6)  # beyond rigidity


def test_pullback_scale():
    report = invariant_report(Fraction(-1, 12), -1.0 / 12.0, -1.0 / 24.0, 24)
    up = pullback_scale(report, 24)
    assert up.chi == Fraction(-2)
    assert up.toledo == Fraction(-2)
    assert up.euler == Fraction(-1)
    assert kalashnikov_residual(up) == 0
    with pytest.raises(ValueError):
        pullback_scale(report, 0)
