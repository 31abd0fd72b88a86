"""Constructors for the standard section meshes.

All meshes are geodesic fans: a centre vertex coned over a polygon of
corners, each sector subdivided into a lattice of n^2 geodesic triangles.
Boundary points are arclength-uniform along each edge, so side-pairing
isometries map boundary runs onto each other exactly.
"""

from __future__ import annotations

import numpy as np

from .core import Isometry, ProjectivePoint, herm_form, polar_span
from .disc import (
    disc_isometry_two_points,
    disc_rotation,
    embed,
    triangle_vertices,
)
from .errors import DegenerateError
from .geometry import geodesic_interp
from .invariants import SectionMesh, SidePairing, normalized_negative


def _fan_lattice(center: ProjectivePoint, corners, n: int, closed: bool):
    """Coned lattice over a polygon; returns (points, faces, outer, radial).

    ``outer[k]`` indexes the arclength-uniform run along the polygon side
    from corner k to corner k+1; ``radial[k]`` the run from the centre to
    corner k.  Faces are counterclockwise when the corners are.
    """
    m = len(corners)
    points = [center]
    radial = []
    for v in corners:
        chain = [0]
        for i in range(1, n + 1):
            chain.append(len(points))
            points.append(geodesic_interp(center, v, i / n))
        radial.append(chain)

    sectors = m if closed else m - 1
    faces = []
    outer = []
    for k in range(sectors):
        ka, kb = k, (k + 1) % m
        rows = [[0]]
        for i in range(1, n + 1):
            row = [radial[ka][i]]
            a, b = points[radial[ka][i]], points[radial[kb][i]]
            for j in range(1, i):
                row.append(len(points))
                points.append(geodesic_interp(a, b, j / i))
            row.append(radial[kb][i])
            rows.append(row)
        for i in range(1, n + 1):
            for j in range(i):
                faces.append((rows[i - 1][j], rows[i][j], rows[i][j + 1]))
                if j < i - 1:
                    faces.append((rows[i - 1][j], rows[i][j + 1], rows[i - 1][j + 1]))
        outer.append(rows[n])
    return points, faces, outer, radial


def turnover_section_mesh(n1: int, n2: int, n3: int, refinement: int = 8) -> SectionMesh:
    """Section mesh of the C-Fuchsian turnover quadrilateral for (n1, n2, n3).

    The fundamental polygon is the counterclockwise triangle (c1, c2, c3)
    with angles pi/n_i together with its rotated copy (c1, c3, c2') where
    c2' = g1^-1 c2, embedded in the standard complex geodesic.  Side
    pairings: c1-c2 to c1-c2' by g1^-1 and c3-c2 to c3-c2' by g3.
    """
    z1, z2, z3 = triangle_vertices(np.pi / n1, np.pi / n2, np.pi / n3)
    g1_inv = disc_rotation(z1, 2.0 * np.pi / n1)
    g3 = disc_rotation(z3, -2.0 * np.pi / n3)
    c2m = g1_inv(embed(z2))
    center = embed(z1)
    corners = [embed(z2), embed(z3), c2m]
    points, faces, outer, radial = _fan_lattice(center, corners, refinement, closed=False)
    pairings = [
        SidePairing(run_a=list(radial[0]), run_b=list(radial[2]), isometry=g1_inv),
        SidePairing(run_a=list(reversed(outer[0])), run_b=list(outer[1]), isometry=g3),
    ]
    cones = [(0, n1), (radial[0][-1], n2), (radial[1][-1], n3)]
    return SectionMesh(
        embedding=points, triangles=faces, side_pairings=pairings, cone_points=cones
    )


# -- genus-2 octagon meshes --------------------------------------------------

_OCTAGON_PAIRS = [(0, 2), (1, 3), (4, 6), (5, 7)]


def _octagon_circumradius() -> float:
    """Intrinsic (curvature -1) circumradius of the regular pi/4 octagon."""
    return float(np.arccosh(1.0 / np.tan(np.pi / 8.0) ** 2))


def real_plane_point(a: float, b: float) -> ProjectivePoint:
    """The point (1, a, b) of the standard real (Lagrangian) plane."""
    if a * a + b * b >= 1.0:
        raise DegenerateError("real-plane coordinates must satisfy a^2 + b^2 < 1")
    return ProjectivePoint([1.0, a, b])


def _real_frame(p: ProjectivePoint, q: ProjectivePoint) -> np.ndarray:
    """J-orthonormal real frame (point, tangent toward q, plane normal)."""
    ph = normalized_negative(p).real
    qh = normalized_negative(q).real
    if herm_form(qh, ph).real > 0:
        qh = -qh
    c = -float(herm_form(qh, ph).real)
    d = float(np.arccosh(max(c, 1.0)))
    if d < 1e-12:
        raise DegenerateError("coincident points give no direction")
    t = (qh - c * ph) / np.sinh(d)
    nrm = polar_span(ProjectivePoint(ph), ProjectivePoint(t)).v.real
    nrm = nrm / np.sqrt(float(herm_form(nrm, nrm).real))
    return np.column_stack([ph, t, nrm])


def real_plane_isometry_two_points(
    p0: ProjectivePoint, p1: ProjectivePoint, q0: ProjectivePoint, q1: ProjectivePoint
) -> Isometry:
    """The O(2,1) isometry of the real plane with p0 -> q0 and p1 -> q1.

    The pairs must be equidistant; the map carries the frame of (p0, p1)
    to the frame of (q0, q1) and extends complex-linearly to H^2_C.
    """
    f_p = _real_frame(p0, p1)
    f_q = _real_frame(q0, q1)
    return Isometry.from_matrix(f_q @ np.linalg.inv(f_p))


def octagon_mesh(kind: str = "complex", refinement: int = 8) -> SectionMesh:
    """Closed genus-2 section mesh from the regular pi/4 octagon.

    Sides k and k+2 are identified, reversed, for k in 0, 1, 4, 5 (the
    standard single-vertex-cycle pattern, total corner angle 2 pi, so
    there are no cone points).  ``kind`` selects the embedding: "complex"
    lies in the standard complex geodesic at curvature -4, "lagrangian" in
    the standard real plane at curvature -1.
    """
    r1 = _octagon_circumradius()
    angles = [2.0 * np.pi * k / 8.0 + np.pi / 8.0 for k in range(8)]
    if kind == "complex":
        # curvature -4 disc: intrinsic distances are halved
        s = np.tanh(r1 / 2.0)
        zs = [s * np.exp(1j * a) for a in angles]
        center = embed(0.0)
        corners = [embed(z) for z in zs]

        def pair_iso(k, kp):
            return disc_isometry_two_points(
                zs[k], zs[(k + 1) % 8], zs[(kp + 1) % 8], zs[kp]
            )

    elif kind == "lagrangian":
        s = np.tanh(r1)
        center = real_plane_point(0.0, 0.0)
        corners = [real_plane_point(s * np.cos(a), s * np.sin(a)) for a in angles]

        def pair_iso(k, kp):
            return real_plane_isometry_two_points(
                corners[k], corners[(k + 1) % 8], corners[(kp + 1) % 8], corners[kp]
            )

    else:
        raise ValueError("kind must be 'complex' or 'lagrangian'")

    points, faces, outer, _ = _fan_lattice(center, corners, refinement, closed=True)
    pairings = [
        SidePairing(
            run_a=list(outer[k]),
            run_b=list(reversed(outer[kp])),
            isometry=pair_iso(k, kp),
        )
        for k, kp in _OCTAGON_PAIRS
    ]
    return SectionMesh(embedding=points, triangles=faces, side_pairings=pairings)
