"""Numerical invariants: Toledo number, bundle Euler degrees, identities.

Conventions.  At a negative point x with representative scaled to
<x,x> = -1, the tangent space is the form-orthogonal complement x^perp,
on which the Hermitian metric h(u,v) = <u,v> is positive definite.  The
Riemannian metric is g = Re h and the symplectic (Kaehler) form is
omega = Im h, so omega(u, iu) = -g(u,u): on a complex geodesic traversed
counterclockwise the integral of omega is minus the area.  With the Toledo
number defined as (2/pi) * integral of omega over an equivariant section,
the counterclockwise baseline sections give tau = chi exactly (the
``fiberwise-counterclockwise`` orientation convention carried by reports).

For derivatives of curves of unnormalized representatives x(t), the
pulled-back metric

    h(u, v) = -( <u,v><x,x> - <u,x><x,v> ) / <x,x>^2

projects out the radial component automatically, so any smooth lift of a
surface patch can be differentiated directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .core import (
    NEGATIVE,
    ProjectivePoint,
    Isometry,
    classify,
    herm_form,
    tance,
)
from .errors import ClassError, ConvergenceError, DegenerateError, MeshError
from .geometry import geodesic_interp, _phase_align
from .tolerances import TOL, Tolerances

COMPLEX_CLASS = "complex"
LAGRANGIAN_CLASS = "Lagrangian"
GENERIC_CLASS = "generic"


# -- tangent-space utilities --------------------------------------------------

def normalized_negative(x: ProjectivePoint) -> np.ndarray:
    s = x.self_form()
    if s >= 0:
        raise ClassError("expected a negative point")
    return x.v / np.sqrt(-s)


def tangent_project(xhat: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Form-orthogonal projection of w into xhat^perp (<xhat,xhat> = -1)."""
    return w + herm_form(w, xhat) * xhat


def metric_h(u: np.ndarray, v: np.ndarray) -> complex:
    """Hermitian metric on x^perp vectors (x normalized to <x,x> = -1)."""
    return herm_form(u, v)


def omega(u: np.ndarray, v: np.ndarray) -> float:
    """The symplectic form Im h on tangent vectors at a common point."""
    return float(herm_form(u, v).imag)


def pullback_h(x: np.ndarray, u: np.ndarray, v: np.ndarray) -> complex:
    """Pulled-back Hermitian metric for derivatives of an unnormalized lift."""
    xx = herm_form(x, x)
    return -(herm_form(u, v) * xx - herm_form(u, x) * herm_form(x, v)) / (xx * xx)


def log_map(x: ProjectivePoint, y: ProjectivePoint) -> np.ndarray:
    """Tangent vector at x pointing to y with length d(x, y)."""
    xh = normalized_negative(x)
    yh = _phase_align(xh, normalized_negative(y))
    c = -herm_form(yh, xh).real
    d = float(np.arccosh(max(c, 1.0)))
    if d < 1e-15:
        return np.zeros(3, dtype=complex)
    return d * (yh - c * xh) / np.sinh(d)


def _gram_schmidt(vectors, xhat):
    out = []
    for w in vectors:
        w = tangent_project(xhat, np.asarray(w, dtype=complex))
        for b in out:
            w = w - herm_form(w, b).real * b  # real (g-)orthogonalization
        n = np.sqrt(herm_form(w, w).real)
        if n < 1e-12:
            raise DegenerateError("degenerate span in tangent orthonormalization")
        out.append(w / n)
    return out


def kaehler_angle(x: ProjectivePoint, u1, u2, tol: Tolerances = TOL):
    """omega(u1, u2) for the g-orthonormalized tangent pair, with its class.

    Returns ``(value, cls)`` with value in [-1, 1]; the plane is complex
    when |value| is 1 and Lagrangian when it vanishes.
    """
    xh = normalized_negative(x)
    e1, e2 = _gram_schmidt([u1, u2], xh)
    val = float(np.clip(omega(e1, e2), -1.0, 1.0))
    if abs(val) > 1.0 - tol.kaehler:
        cls = COMPLEX_CLASS
    elif abs(val) < tol.kaehler:
        cls = LAGRANGIAN_CLASS
    else:
        cls = GENERIC_CLASS
    return val, cls


def _real_coords(w: np.ndarray, basis) -> np.ndarray:
    """Coordinates of a tangent vector in the real basis (b1, ib1, b2, ib2)."""
    b1, b2 = basis
    a1 = herm_form(w, b1)
    a2 = herm_form(w, b2)
    return np.array([a1.real, a1.imag, a2.real, a2.imag])


def _complex_basis(xhat: np.ndarray):
    """A g-unitary complex basis (b1, b2) of xhat^perp, fixed deterministically."""
    seeds = [np.array([0, 1, 0], dtype=complex), np.array([0, 0, 1], dtype=complex),
             np.array([1, 0, 0], dtype=complex)]
    out = []
    for s in seeds:
        w = tangent_project(xhat, s)
        for b in out:
            w = w - herm_form(w, b) * b  # complex orthogonalization
        n = np.sqrt(abs(herm_form(w, w).real))
        if n > 1e-6:
            out.append(w / n)
        if len(out) == 2:
            return out
    raise DegenerateError("could not build a tangent basis")


def orientation_sign(x: ProjectivePoint, frame4) -> int:
    """Sign of a real tangent 4-frame against the complex orientation of x^perp."""
    xh = normalized_negative(x)
    basis = _complex_basis(xh)
    m = np.column_stack([_real_coords(np.asarray(w, dtype=complex), basis) for w in frame4])
    d = np.linalg.det(m)
    if abs(d) < 1e-14:
        raise DegenerateError("degenerate 4-frame")
    return 1 if d > 0 else -1


def lagrangian_frame_check(x: ProjectivePoint, u1, u2, normal_pair=None,
                           tol: Tolerances = TOL) -> bool:
    """Orientation test for the normal frame of a Lagrangian tangent plane.

    For a Lagrangian orthonormal pair (u1, u2) the normal plane is i times
    the tangent plane, and the lemma-style normal frame is (v1, v2) =
    (i u2, i u1).  The check compares the orientation of (u1, u2, v1, v2)
    with the complex orientation of the full tangent space and returns True
    when they agree — which they do for the lemma assignment regardless of
    the ordering of the Lagrangian pair, since swapping u1, u2 also swaps
    v1, v2 (an even permutation).  Pass ``normal_pair`` explicitly to test
    a fixed normal frame against a re-ordered tangent pair.
    """
    xh = normalized_negative(x)
    e1, e2 = _gram_schmidt([u1, u2], xh)
    if abs(omega(e1, e2)) > 1e-6:
        raise ClassError("tangent pair is not Lagrangian")
    if normal_pair is None:
        v1, v2 = 1j * e2, 1j * e1
    else:
        v1 = tangent_project(xh, np.asarray(normal_pair[0], dtype=complex))
        v2 = tangent_project(xh, np.asarray(normal_pair[1], dtype=complex))
    return orientation_sign(x, [e1, e2, v1, v2]) > 0


# -- meshes ------------------------------------------------------------------

@dataclass
class SidePairing:
    """Boundary identification: isometry maps embedded run_a onto run_b."""

    run_a: list
    run_b: list
    isometry: Isometry


@dataclass
class SectionMesh:
    """A triangulated polygon with an embedding into H^2_C and identifications.

    ``triangles`` are index triples, counterclockwise in the abstract
    polygon; ``embedding`` maps each vertex index to a negative projective
    point; ``side_pairings`` identify boundary runs pointwise; cone points
    carry their orders for orbifold bookkeeping and snapping denominators.
    """

    embedding: list
    triangles: list
    side_pairings: list = field(default_factory=list)
    cone_points: list = field(default_factory=list)

    def cone_orders(self):
        return [n for _, n in self.cone_points]

    def snap_denominator(self) -> int:
        orders = self.cone_orders()
        return 2 * lcm(*orders) if orders else 2

    def to_json_dict(self) -> dict:
        from .quadrangle import _f

        def vec(v):
            return [[_f(c.real), _f(c.imag)] for c in v]

        return {
            "format": "chdisc/1",
            "kind": "section_mesh",
            "cone_points": [[int(i), int(n)] for i, n in self.cone_points],
            "side_pairings": [
                {
                    "isometry": vec(p.isometry.matrix.reshape(9)),
                    "run_a": [int(i) for i in p.run_a],
                    "run_b": [int(i) for i in p.run_b],
                }
                for p in self.side_pairings
            ],
            "triangles": [[int(a), int(b), int(c)] for a, b, c in self.triangles],
            "vertices": [vec(p.v) for p in self.embedding],
        }

    def validate(self, tol: Tolerances = TOL) -> None:
        for i, p in enumerate(self.embedding):
            if classify(p) != NEGATIVE:
                raise MeshError(f"embedded vertex {i} is not a negative point")
        for pair in self.side_pairings:
            if len(pair.run_a) != len(pair.run_b):
                raise MeshError("side pairing runs have different lengths")
            for ia, ib in zip(pair.run_a, pair.run_b):
                image = pair.isometry(self.embedding[ia])
                gap = abs(tance(image, self.embedding[ib]) - 1.0)
                if gap > tol.mesh:
                    raise MeshError(
                        f"pairing maps vertex {ia} to tance gap {gap:g} from {ib}"
                    )


def refine_triangle_lattice(corners, n):
    """Geodesic lattice subdivision of a triangle into n^2 triangles.

    Row i (0..n) holds i+1 points interpolated along the geodesic between
    the two side points at fraction i/n, themselves interpolated from the
    corners, so boundary points are arclength-uniform along each edge.
    Returns (points, triangles) with ccw triangles if the corners are ccw.
    """
    a, b, c = corners
    rows = []
    for i in range(n + 1):
        left = geodesic_interp(a, b, i / n)
        right = geodesic_interp(a, c, i / n)
        if i == 0:
            rows.append([a])
            continue
        rows.append([geodesic_interp(left, right, j / i) for j in range(i + 1)])
    points = []
    index = {}
    for i, row in enumerate(rows):
        for j, p in enumerate(row):
            index[(i, j)] = len(points)
            points.append(p)
    tris = []
    for i in range(n):
        for j in range(i + 1):
            tris.append((index[(i, j)], index[(i + 1, j)], index[(i + 1, j + 1)]))
            if j < i:
                tris.append((index[(i, j)], index[(i + 1, j + 1)], index[(i, j + 1)]))
    return points, tris, index


# -- Toledo integrals --------------------------------------------------------

def _gl_nodes(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def symplectic_area_triangle(x1: ProjectivePoint, x2: ProjectivePoint,
                             x3: ProjectivePoint, order: int = 24) -> float:
    """integral of omega over the geodesic triangle (x1, x2, x3).

    The triangle is coned from x1 over the geodesic x2 -> x3; the smooth
    lift F(s,t) = slerp(x1, slerp(x2, x3, t), s) is differentiated
    analytically and Im of the pulled-back metric integrated with a tensor
    Gauss-Legendre rule.
    """
    x1h = normalized_negative(x1)
    x2h = normalized_negative(x2)
    x3h = _phase_align(x2h, normalized_negative(x3))
    cc = -herm_form(x3h, x2h).real
    dd = float(np.arccosh(max(cc, 1.0)))
    if dd < 1e-14:
        return 0.0
    s_nodes, s_weights = _gl_nodes(order)
    t_nodes, t_weights = _gl_nodes(order)
    total = 0.0
    for tj, wtj in zip(t_nodes, t_weights):
        c = (np.sinh((1.0 - tj) * dd) * x2h + np.sinh(tj * dd) * x3h) / np.sinh(dd)
        cdot = dd * (-np.cosh((1.0 - tj) * dd) * x2h + np.cosh(tj * dd) * x3h) / np.sinh(dd)
        p = herm_form(x1h, c)
        pdot = herm_form(x1h, cdot)
        ap = abs(p)
        if ap < 1e-14:
            continue
        apdot = (p.conjugate() * pdot).real / ap
        lam = -p / ap
        lamdot = -pdot / ap + p * apdot / (ap * ap)
        y = lam * c
        ydot = lamdot * c + lam * cdot
        d = float(np.arccosh(max(ap, 1.0)))
        if d < 1e-14:
            continue
        ddot = apdot / np.sinh(d)
        sh = np.sinh(d)
        for si, wsi in zip(s_nodes, s_weights):
            f = (np.sinh((1.0 - si) * d) * x1h + np.sinh(si * d) * y) / sh
            fs = d * (-np.cosh((1.0 - si) * d) * x1h + np.cosh(si * d) * y) / sh
            ft = (
                (1.0 - si) * ddot * np.cosh((1.0 - si) * d) * x1h
                + si * ddot * np.cosh(si * d) * y
                + np.sinh(si * d) * ydot
            ) / sh - ddot * np.cosh(d) / sh * f
            total += wsi * wtj * pullback_h(f, fs, ft).imag
    return float(total)


def symplectic_area_closed_form(x1: ProjectivePoint, x2: ProjectivePoint,
                                x3: ProjectivePoint) -> float:
    """Exact integral of omega over a geodesic triangle of negative points.

    Equals -arg(-<x1,x2><x2,x3><x3,x1>) / 2, independent of representatives
    (each point enters once linearly and once conjugate-linearly); agrees
    with the quadrature of :func:`symplectic_area_triangle` to rounding.
    """
    prod = (
        herm_form(x1.v, x2.v) * herm_form(x2.v, x3.v) * herm_form(x3.v, x1.v)
    )
    return float(-np.angle(-prod) / 2.0)


def toledo_via_mesh(m: SectionMesh, order: int = 12, tol: Tolerances = TOL) -> float:
    """(2/pi) * integral of omega over the embedded mesh, triangle by triangle."""
    m.validate(tol)
    total = 0.0
    for (i, j, k) in m.triangles:
        total += symplectic_area_triangle(
            m.embedding[i], m.embedding[j], m.embedding[k], order=order
        )
    return float(2.0 / np.pi * total)


def toledo_via_coning(rep, fixed_points, order: int = 24, tol: Tolerances = TOL) -> float:
    """Toledo number from the coned fundamental polygon of a turnover.

    ``fixed_points`` maps generator names to their (negative) fixed points.
    The polygon is the triangle (x1, x2, x3) together with its mirror
    triangle (x1, x3, g1^-1 x2); faces are coned geodesically and
    integrated adaptively (the quadrature order is doubled once and the
    results compared).
    """
    for name, g in rep.generators.items():
        x = fixed_points[name]
        if abs(tance(g(x), x) - 1.0) > tol.fixed_point:
            raise ConvergenceError(f"{name} does not fix its declared fixed point")
    x1, x2, x3 = (fixed_points[n] for n in ("g1", "g2", "g3"))
    x2m = rep.generators["g1"].inverse()(x2)
    tris = [(x1, x2, x3), (x1, x3, x2m)]

    def total_at(o):
        return sum(symplectic_area_triangle(a, b, c, order=o) for a, b, c in tris)

    coarse, fine = total_at(order), total_at(2 * order)
    if not np.isfinite(fine) or abs(fine - coarse) > 1e-6 * max(1.0, abs(fine)):
        raise ConvergenceError(
            f"coning quadrature did not settle (gap {abs(fine - coarse):g})"
        )
    return float(2.0 / np.pi * fine)


# -- discrete-connection bundle degrees --------------------------------------

@dataclass
class FrameField:
    """Per-vertex orthonormal tangent pairs (u1, u2) and normal pairs (v1, v2).

    Orthonormal for g = Re h; (u1, u2, v1, v2) is positively oriented
    against the complex orientation of the tangent space, and (u1, u2)
    follows the surface orientation induced by the ccw mesh triangles.
    """

    tangent: list
    normal: list

    def validate(self, mesh: SectionMesh, tol: Tolerances = TOL) -> None:
        for idx, (pair_t, pair_n) in enumerate(zip(self.tangent, self.normal)):
            x = mesh.embedding[idx]
            xh = normalized_negative(x)
            vs = [*pair_t, *pair_n]
            for a in range(4):
                for b in range(4):
                    want = 1.0 if a == b else 0.0
                    got = herm_form(vs[a], vs[b]).real
                    if abs(got - want) > 1e-8:
                        raise MeshError(f"frame at vertex {idx} is not g-orthonormal")
            for v in vs:
                if abs(herm_form(v, xh)) > 1e-8:
                    raise MeshError(f"frame at vertex {idx} is not tangent")
            if orientation_sign(x, vs) < 0:
                raise MeshError(f"frame at vertex {idx} has negative orientation")


def build_frame_field(mesh: SectionMesh) -> FrameField:
    """Tangent/normal frames from the embedded mesh geometry.

    The tangent plane at a vertex is the dominant real 2-plane (principal
    components) of the log-map directions of its mesh neighbours; exact
    for totally geodesic sections.  Tangent orientation follows the ccw
    triangles, normal orientation is fixed against the complex orientation.
    """
    neighbours = [set() for _ in mesh.embedding]
    oriented = [None] * len(mesh.embedding)
    for (i, j, k) in mesh.triangles:
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            neighbours[a].update((b, c))
            if oriented[a] is None:
                oriented[a] = (b, c)
    tangent, normal = [], []
    for idx, x in enumerate(mesh.embedding):
        xh = normalized_negative(x)
        basis = _complex_basis(xh)
        dirs = [log_map(x, mesh.embedding[nb]) for nb in sorted(neighbours[idx])]
        coords = np.array([_real_coords(w, basis) for w in dirs])
        if len(coords) < 2:
            raise MeshError(f"vertex {idx} has fewer than two neighbours")
        _, _, vt = np.linalg.svd(coords, full_matrices=True)
        pick = vt[:2]

        def from_coords(c):
            b1, b2 = basis
            return (c[0] + 1j * c[1]) * b1 + (c[2] + 1j * c[3]) * b2

        u1, u2 = _gram_schmidt([from_coords(pick[0]), from_coords(pick[1])], xh)
        # orient (u1, u2) with the ccw surface orientation
        b, c = oriented[idx]
        ea, eb = log_map(x, mesh.embedding[b]), log_map(x, mesh.embedding[c])
        m2 = np.array(
            [
                [herm_form(ea, u1).real, herm_form(eb, u1).real],
                [herm_form(ea, u2).real, herm_form(eb, u2).real],
            ]
        )
        if np.linalg.det(m2) < 0:
            u2 = -u2
        # normal plane: g-orthogonal complement of the tangent plane inside
        # x^perp, via the orthonormal real coordinates of the complex basis
        span = np.array([_real_coords(u1, basis), _real_coords(u2, basis)])
        _, _, vt4 = np.linalg.svd(span, full_matrices=True)
        v1, v2 = (from_coords(vt4[2]), from_coords(vt4[3]))
        v1, v2 = _gram_schmidt([v1, v2], xh)
        if orientation_sign(x, [u1, u2, v1, v2]) < 0:
            v2 = -v2
        tangent.append((u1, u2))
        normal.append((v1, v2))
    return FrameField(tangent=tangent, normal=normal)


def _rotation_part(m2: np.ndarray) -> np.ndarray:
    u, _, vt = np.linalg.svd(m2)
    r = u @ vt
    if np.linalg.det(r) < 0:
        u2 = u.copy()
        u2[:, -1] *= -1.0
        r = u2 @ vt
    return r


def _transport_matrix(mesh, frames, i, j):
    """SO(2) comparison of the frame at j with the frame at i transported i->j.

    Transport projects each frame vector into the tangent space at j and
    onto the given plane (first-order Levi-Civita transport), then takes
    the special-orthogonal part.
    """
    xj = normalized_negative(mesh.embedding[j])
    fi, fj = frames[i], frames[j]
    m2 = np.zeros((2, 2))
    for b in range(2):
        w = tangent_project(xj, fi[b])
        for a in range(2):
            m2[a, b] = herm_form(w, fj[a]).real
    return _rotation_part(m2)


def _taut_phase(mesh, i, j, k) -> float:
    """Projection-transport phase of the tautological line around a face.

    Tangent vectors at [x] live in Hom(L_x, x^perp) with L_x the spanned
    line; projection transport of plain x^perp vectors misses the L_x^*
    twist, whose face holonomy is arg(-<x_i,x_j><x_j,x_k><x_k,x_i>), so
    that phase is subtracted from each face's frame holonomy.
    """
    xi, xj, xk = (mesh.embedding[t].v for t in (i, j, k))
    prod = herm_form(xi, xj) * herm_form(xj, xk) * herm_form(xk, xi)
    return float(np.angle(-prod))


def _connection_total(mesh, frames) -> float:
    total = 0.0
    cache = {}

    def transport(i, j):
        if (i, j) not in cache:
            cache[(i, j)] = _transport_matrix(mesh, frames, i, j)
        return cache[(i, j)]

    for (i, j, k) in mesh.triangles:
        hol = transport(k, i) @ transport(j, k) @ transport(i, j)
        total += float(np.arctan2(hol[1, 0], hol[0, 0])) - _taut_phase(mesh, i, j, k)
    return total / (2.0 * np.pi)


@dataclass
class MeshDegrees:
    chi_raw: float
    euler_raw: float
    chi: Fraction
    euler: Fraction


def euler_via_mesh(mesh: SectionMesh, frames: FrameField | None = None,
                   tol: Tolerances = TOL) -> MeshDegrees:
    """Tangent and normal bundle degrees by discrete-connection holonomy.

    Sums the per-face SO(2) holonomy of projection transport for the
    tangent pair (giving the orbifold Euler characteristic) and the normal
    pair (giving the Euler number of the section's normal bundle), each
    divided by 2 pi.  Per-face holonomy angles are invariant under vertex
    frame changes, so side pairings enter only through the mesh geometry
    they enforce; raw totals are snapped to rationals with denominator
    2 * lcm(cone orders).
    """
    mesh.validate(tol)
    if frames is None:
        frames = build_frame_field(mesh)
    frames.validate(mesh, tol)
    chi_raw = _connection_total(mesh, frames.tangent)
    e_raw = _connection_total(mesh, frames.normal)
    den = mesh.snap_denominator()
    return MeshDegrees(
        chi_raw=chi_raw,
        euler_raw=e_raw,
        chi=snap_rational(chi_raw, den, tol),
        euler=snap_rational(e_raw, den, tol),
    )


# -- rational snapping and identities ----------------------------------------

def snap_rational(x: float, denominator_limit: int, tol: Tolerances = TOL) -> Fraction:
    snapped = Fraction(x).limit_denominator(denominator_limit)
    if abs(float(snapped) - x) > tol.snap:
        raise ConvergenceError(
            f"value {x} does not snap within {tol.snap} "
            f"to denominator {denominator_limit}"
        )
    return snapped


def _frac_str(x: Fraction | None) -> str | None:
    if x is None:
        return None
    return f"{x.numerator}/{x.denominator}"


def _maybe_f(x):
    from .quadrangle import _f

    return None if x is None else _f(x)


@dataclass
class InvariantReport:
    """chi, tau, e with raw and snapped values and the identity residual.

    ``reliable`` is cleared when a raw value refused to snap within the
    snapping tolerance; the raw values are still reported.
    """

    chi: Fraction
    toledo_raw: float
    euler_raw: float | None
    toledo: Fraction | None = None
    euler: Fraction | None = None
    reliable: bool = True
    orientation_convention: str = "fiberwise-counterclockwise"
    tolerances: Tolerances = TOL

    def snapped(self) -> bool:
        return self.toledo is not None and self.euler is not None

    def residual(self, signed: bool = True) -> float | None:
        if self.euler is None and self.euler_raw is None:
            return None
        return kalashnikov_residual(self, signed=signed)

    def to_json_dict(self) -> dict:
        from .quadrangle import _f

        return {
            "format": "chdisc/1",
            "kind": "invariants",
            "chi": _frac_str(self.chi),
            "euler": {
                "raw": None if self.euler_raw is None else _f(self.euler_raw),
                "snapped": _frac_str(self.euler),
            },
            "orientation_convention": self.orientation_convention,
            "reliable": self.reliable,
            "residual_signed": _maybe_f(self.residual(signed=True)),
            "residual_unsigned": _maybe_f(self.residual(signed=False)),
            "toledo": {
                "raw": _f(self.toledo_raw),
                "snapped": _frac_str(self.toledo),
            },
            "tolerances": {k: _f(v) for k, v in self.tolerances.as_dict().items()},
        }


def invariant_report(chi: Fraction, toledo_raw: float, euler_raw: float,
                     denominator: int, tol: Tolerances = TOL) -> InvariantReport:
    """Snap raw tau and e against chi and package them into a report.

    The report is marked unreliable when a value refuses to snap or the
    snapped values violate Toledo rigidity |tau| <= |chi|; chi itself is
    exact by assumption.
    """
    reliable = True
    try:
        tau = snap_rational(toledo_raw, denominator, tol)
        e = snap_rational(euler_raw, denominator, tol)
    except ConvergenceError:
        tau = e = None
        reliable = False
    if tau is not None and abs(tau) > abs(chi):
        reliable = False
    return InvariantReport(
        chi=chi, toledo_raw=toledo_raw, euler_raw=euler_raw,
        toledo=tau, euler=e, reliable=reliable, tolerances=tol,
    )


def kalashnikov_residual(report: InvariantReport, signed: bool = True) -> float:
    """|3 tau - 2 e - 2 chi| (signed) or |-3 |tau| - 2 e - 2 chi| (unsigned).

    Uses snapped rationals when available, so a clean configuration gives
    exactly zero.
    """
    chi = report.chi
    tau = report.toledo if report.toledo is not None else report.toledo_raw
    e = report.euler if report.euler is not None else report.euler_raw
    if signed:
        return abs(3 * tau - 2 * e - 2 * chi)
    return abs(-3 * abs(tau) - 2 * e - 2 * chi)


def gkl_euler(genus: int, tau_abs: int):
    """Euler number of the Goldman-Kapovich-Leeb disc bundle construction.

    Splits the genus-g surface as a union along t := g - 1 - tau_abs/2 and
    returns (e, chi1, chi2, t) with e = -g1 + 2 g2 = 2g - 2 - 3 tau_abs/2,
    which satisfies -3 tau_abs = 2 e + 2 (2 - 2g) exactly.
    """
    if genus < 2:
        raise ValueError("genus must be at least 2")
    if tau_abs < 0 or tau_abs % 2 != 0:
        raise ValueError("tau_abs must be a non-negative even integer")
    if tau_abs > 2 * genus - 2:
        raise ValueError("tau_abs must satisfy tau_abs <= 2g - 2 (Toledo rigidity)")
    t = genus - 1 - tau_abs // 2
    g1 = genus - 1 - t
    g2 = t
    chi1 = -2 * g1
    chi2 = -2 * g2
    e = -g1 + 2 * g2
    assert -3 * tau_abs == 2 * e + 2 * (2 - 2 * genus)
    return e, chi1, chi2, t


def pullback_scale(report: InvariantReport, degree: int) -> InvariantReport:
    """The invariants of a degree-d smooth cover: chi, tau, e all scale by d."""
    if degree < 1:
        raise ValueError("degree must be a positive integer")
    return InvariantReport(
        chi=report.chi * degree,
        toledo_raw=report.toledo_raw * degree,
        euler_raw=report.euler_raw * degree,
        toledo=None if report.toledo is None else report.toledo * degree,
        euler=None if report.euler is None else report.euler * degree,
        orientation_convention=report.orientation_convention,
    )
