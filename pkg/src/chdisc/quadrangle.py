"""Triangles and quadrangles of bisectors: the eps-invariant and K1/K2/K3.

A quadrangle of four pairwise ultraparallel complex geodesics bounds a
4-ball exactly when three conditions hold: K1 (ultraparallelism), K2 (both
diagonal triangles transversal and counterclockwise-oriented), and K3
(transversal adjacency of the two triangles along the shared diagonal).
K1 and K2 are closed-form inequalities; K3 is certified by sampled
numerical sub-checks.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .core import (
    POSITIVE,
    ProjectivePoint,
    classify,
    distance,
    herm_form,
    tance,
)
from .errors import ClassError, DegenerateError, NotTransversalError
from .geometry import (
    Bisector,
    BisectorSegment,
    ComplexGeodesic,
    common_perpendicular,
    spine_point,
)
from .tolerances import TOL, Tolerances


def epsilon(p1: ProjectivePoint, p2: ProjectivePoint, p3: ProjectivePoint) -> complex:
    """The unit complex invariant of an ordered triple of polars.

    eps0 + i eps1 = <p1,p2><p2,p3><p3,p1> / |same|.  Invariant under
    positive rescaling of each argument; reversing the cyclic order
    conjugates the value.
    """
    prod = (
        herm_form(p1.v, p2.v) * herm_form(p2.v, p3.v) * herm_form(p3.v, p1.v)
    )
    if abs(prod) < 1e-14:
        raise DegenerateError("triple product vanishes (some pair of polars orthogonal)")
    return prod / abs(prod)


@dataclass(frozen=True)
class TriangleInvariant:
    """t_ij = sqrt(ta(p_i, p_j)) side data plus the eps-invariant."""

    t12: float
    t23: float
    t31: float
    eps: complex

    @staticmethod
    def from_polars(
        p1: ProjectivePoint, p2: ProjectivePoint, p3: ProjectivePoint
    ) -> "TriangleInvariant":
        return TriangleInvariant(
            t12=float(np.sqrt(tance(p1, p2))),
            t23=float(np.sqrt(tance(p2, p3))),
            t31=float(np.sqrt(tance(p3, p1))),
            eps=epsilon(p1, p2, p3),
        )


def transversality_margins(tri: TriangleInvariant) -> tuple[float, float, float]:
    """Signed slack of the three transversality inequalities.

    Each line reads  eps0^2 t_a^2 + t_b^2 + t_c^2 < 1 + 2 t12 t23 t31 eps0,
    with the squared-eps0 factor cycling over t12, t31, t23 in the printed
    order; a margin is positive when its inequality holds strictly.
    """
    e0 = tri.eps.real
    t12, t23, t31 = tri.t12, tri.t23, tri.t31
    rhs = 1.0 + 2.0 * t12 * t23 * t31 * e0
    return (
        rhs - (e0 ** 2 * t12 ** 2 + t23 ** 2 + t31 ** 2),
        rhs - (e0 ** 2 * t31 ** 2 + t12 ** 2 + t23 ** 2),
        rhs - (e0 ** 2 * t23 ** 2 + t31 ** 2 + t12 ** 2),
    )


def is_transversal(tri: TriangleInvariant, tol: Tolerances = TOL) -> tuple[bool, tuple[float, float, float]]:
    """Whether the triangle of bisectors is transversal, with margins."""
    margins = transversality_margins(tri)
    return all(m > tol.strict_margin for m in margins), margins


def is_counterclockwise(tri: TriangleInvariant, tol: Tolerances = TOL) -> bool:
    """eps1 < 0 for a transversal triangle."""
    ok, margins = is_transversal(tri, tol)
    if not ok:
        raise NotTransversalError(f"triangle is not transversal (margins {margins})")
    return tri.eps.imag < 0.0


def triangle_over_complex_geodesic(
    f: ProjectivePoint,
    c1: ProjectivePoint,
    c2: ProjectivePoint,
    c3: ProjectivePoint,
    tol: Tolerances = TOL,
) -> tuple[tuple[ComplexGeodesic, ComplexGeodesic, ComplexGeodesic], TriangleInvariant]:
    """Triangle of bisectors over the complex geodesic P(f^perp).

    The vertices are the slices through c_i with polar direction f; for a
    counterclockwise triple the invariant satisfies
    eps = exp(-2 * area * i), area taken in the curvature -4 disc.
    """
    if classify(f, tol) != POSITIVE:
        raise ClassError("f must be a positive point")
    from .core import polar_span

    for c in (c1, c2, c3):
        if abs(herm_form(c.v, f.v)) > tol.orthogonality:
            raise ClassError("vertices must lie in the complex geodesic f^perp")
    geos = tuple(ComplexGeodesic(polar_span(c, f)) for c in (c1, c2, c3))
    tri = TriangleInvariant.from_polars(geos[0].polar, geos[1].polar, geos[2].polar)
    return geos, tri


@dataclass(frozen=True)
class QuadrangleConfig:
    """Four polars C1..C4 in cyclic order, plus the two diagonal triangles."""

    polars: tuple[ProjectivePoint, ProjectivePoint, ProjectivePoint, ProjectivePoint]

    def __post_init__(self):
        for p in self.polars:
            if classify(p) != POSITIVE:
                raise ClassError("quadrangle polars must be positive points")

    def triangle_124(self) -> TriangleInvariant:
        p1, p2, _, p4 = self.polars
        return TriangleInvariant.from_polars(p1, p2, p4)

    def triangle_342(self) -> TriangleInvariant:
        _, p2, p3, p4 = self.polars
        return TriangleInvariant.from_polars(p3, p4, p2)


# --- bisector side functions and the K3 sub-checks --------------------------


def _bisector_coordinates(b: Bisector):
    basis = np.column_stack([b.spine.x.v, b.spine.y.v, b.unit_polar_vector()])
    inv = np.linalg.inv(basis)

    def coords(v: np.ndarray):
        return inv @ v

    return coords


def bisector_side_value(b: Bisector, x: ProjectivePoint) -> float:
    """Scale-invariant signed defining function of the (extended) bisector.

    Writing x = alpha s1 + beta s2 + gamma f in the spine/polar basis, the
    bisector is Im(alpha conj(beta)) = 0; the sign of that quantity
    distinguishes the two sides.
    """
    alpha, beta, _ = _bisector_coordinates(b)(x.v)
    n = abs(alpha) ** 2 + abs(beta) ** 2
    return float((alpha * np.conj(beta)).imag / n) if n > 0 else 0.0


def _tangent_normal(b: Bisector, x: ProjectivePoint) -> np.ndarray:
    """g-gradient (as a lift in x^perp) of the side function at x on B."""
    coords = _bisector_coordinates(b)
    xv = x.v / np.linalg.norm(x.v)
    h = 1e-6
    basis4 = _real_tangent_basis(xv)
    grad = np.zeros(4)
    for k, w in enumerate(basis4):
        a1, b1, _ = coords(xv + h * w)
        a0, b0, _ = coords(xv - h * w)
        f1 = (a1 * np.conj(b1)).imag / (abs(a1) ** 2 + abs(b1) ** 2)
        f0 = (a0 * np.conj(b0)).imag / (abs(a0) ** 2 + abs(b0) ** 2)
        grad[k] = (f1 - f0) / (2.0 * h)
    return _from_real_coords(xv, grad)


def _unitary_tangent_basis(xv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """A <,>-unitary basis of x^perp for a negative unit-scaled x."""
    seeds = np.eye(3, dtype=complex)
    xs = xv / np.sqrt(-herm_form(xv, xv).real)
    out = []
    for s in seeds:
        w = s - (herm_form(s, xs) / herm_form(xs, xs).real) * xs
        for prev in out:
            w = w - (herm_form(w, prev) / herm_form(prev, prev).real) * prev
        n = herm_form(w, w).real
        if n > 1e-12:
            out.append(w / np.sqrt(n))
        if len(out) == 2:
            break
    return out[0], out[1]


def _real_tangent_basis(xv: np.ndarray):
    w1, w2 = _unitary_tangent_basis(xv)
    return [w1, 1j * w1, w2, 1j * w2]


def _from_real_coords(xv: np.ndarray, c: np.ndarray) -> np.ndarray:
    w1, w2 = _unitary_tangent_basis(xv)
    return c[0] * w1 + c[1] * (1j * w1) + c[2] * w2 + c[3] * (1j * w2)


def _slice_samples(polar: ProjectivePoint, center: ProjectivePoint, n: int, radius: float = 1.0):
    """Sample points of the complex geodesic P(polar^perp) around a point on it."""
    f = polar.v / np.sqrt(polar.self_form())
    x = center.v / np.sqrt(-center.self_form())
    # direction inside the slice plane: the other basis vector of polar^perp
    w1, w2 = _unitary_tangent_basis(x)
    # pick the tangent direction lying inside polar^perp
    for w in (w1, w2, w1 + w2):
        if abs(herm_form(w, f)) < 1e-8:
            d = w / np.sqrt(herm_form(w, w).real)
            break
    else:  # generic fallback: project w1 into polar^perp
        d = w1 - (herm_form(w1, f)) * f
        d = d / np.sqrt(herm_form(d, d).real)
    pts = [ProjectivePoint(x)]
    k = max(n - 1, 1)
    rng = np.linspace(0.15, radius, max(k // 8, 1))
    phis = np.linspace(0.0, 2 * np.pi, 8, endpoint=False)
    for r in rng:
        for phi in phis:
            if len(pts) >= n:
                break
            pts.append(ProjectivePoint(np.cosh(r) * x + np.sinh(r) * np.exp(1j * phi) * d))
    return pts


def _segment_samples(seg: BisectorSegment, n_spine: int, n_slice: int, radius: float = 1.5):
    from .geometry import slice_at

    pts = []
    for t in np.linspace(0.0, 1.0, n_spine):
        x = spine_point(seg, t)
        sl = slice_at(seg.bisector, x)
        pts.extend(_slice_samples(sl.polar, x, n_slice, radius))
    return pts


@dataclass
class SubCheck:
    name: str
    passed: bool
    margin: float
    detail: str = ""


@dataclass
class Certificate:
    """Pass/fail certificate for K1, K2, K3 with per-inequality margins."""

    k1: bool
    k2: bool
    k3: bool
    k1_margins: list
    k2_margins: dict
    k3_checks: list
    tolerances: dict
    input_digest: str

    @property
    def passed(self) -> bool:
        return self.k1 and self.k2 and self.k3

    def to_json_dict(self) -> dict:
        return {
            "format": "chdisc/1",
            "kind": "certificate",
            "input_digest": self.input_digest,
            "k1": {"pass": self.k1, "margins": [_f(m) for m in self.k1_margins]},
            "k2": {
                "pass": self.k2,
                "margins": {k: [_f(x) for x in v] for k, v in sorted(self.k2_margins.items())},
            },
            "k3": {
                "pass": self.k3,
                "checks": [
                    {"name": c.name, "pass": c.passed, "margin": _f(c.margin), "detail": c.detail}
                    for c in self.k3_checks
                ],
            },
            "pass": self.passed,
            "tolerances": {k: _f(v) for k, v in sorted(self.tolerances.items())},
        }


def _f(x):
    if isinstance(x, bool) or isinstance(x, int):
        return x
    return float(f"{float(x):.17g}")


def polars_digest(polars) -> str:
    """Hex digest of canonicalized polar representatives."""
    rows = []
    for p in polars:
        v = p.v.copy()
        # canonical phase: first component of largest modulus made real positive
        k = int(np.argmax(np.abs(v)))
        v = v * np.exp(-1j * np.angle(v[k]))
        # adding 0.0 folds IEEE negative zeros into +0.0 so the JSON blob
        # is stable for values rounding to zero from either side
        rows.append(
            [[round(float(c.real), 12) + 0.0, round(float(c.imag), 12) + 0.0] for c in v]
        )
    blob = json.dumps(rows, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def adjacency_check(q: QuadrangleConfig, tol: Tolerances = TOL) -> list[SubCheck]:
    """Numerical certificate of K3 (transversal adjacency) for a quadrangle.

    Three sampled sub-checks: (a) transversal intersection of the adjacent
    extended bisectors along the shared slices C2 and C4, (b) the sector
    condition on C3 relative to the bisectors through C1, and (c)
    disjointness of the two pairs of non-adjacent segments.
    """
    p1, p2, p3, p4 = q.polars
    C = [ComplexGeodesic(p) for p in q.polars]
    checks: list[SubCheck] = []

    if p1.is_parallel_to(p3) or p2.is_parallel_to(p4):
        return [SubCheck("degenerate", False, -1.0, "coincident opposite vertices")]

    n_slice = max(tol.k3_samples // 8, 4)

    # (a) tangent-hyperplane angles along the shared slices
    for shared, na, nb, label in (
        (1, 0, 2, "transversal_at_C2"),
        (3, 0, 2, "transversal_at_C4"),
    ):
        seg_a = common_perpendicular(C[na], C[shared], tol)
        seg_b = common_perpendicular(C[nb], C[shared], tol)
        ba, bb = seg_a.bisector, seg_b.bisector
        center = seg_a.feet[1]  # foot on the shared slice
        worst = np.inf
        for x in _slice_samples(C[shared].polar, center, n_slice):
            ga = _tangent_normal(ba, x)
            gb = _tangent_normal(bb, x)
            na_, nb_ = np.sqrt(herm_form(ga, ga).real), np.sqrt(herm_form(gb, gb).real)
            if na_ < 1e-12 or nb_ < 1e-12:
                worst = min(worst, 0.0)
                continue
            cosang = abs(herm_form(ga, gb).real) / (na_ * nb_)
            worst = min(worst, float(np.arccos(np.clip(cosang, 0.0, 1.0))))
        checks.append(SubCheck(label, worst >= tol.angle_floor, worst - tol.angle_floor))

    # (b) sector test: C3 on the inner side of both bisectors through C1
    diag = common_perpendicular(C[1], C[3], tol)
    ref = spine_point(diag, 0.5)  # interior reference point of the quadrangle
    for other, label in ((1, "sector_B_C1C2"), (3, "sector_B_C1C4")):
        bis = common_perpendicular(C[0], C[other], tol).bisector
        side_ref = bisector_side_value(bis, ref)
        foot3 = common_perpendicular(C[other], C[2], tol).feet[1]
        worst = np.inf
        for x in _slice_samples(p3, foot3, n_slice, radius=0.8):
            s = bisector_side_value(bis, x)
            worst = min(worst, float(np.sign(side_ref) * s))
        checks.append(SubCheck(label, worst > 0.0, worst, f"reference side {side_ref:+.3e}"))

    # (c) non-adjacent segments stay separated
    for (i, j), (k, l), label in (
        ((0, 1), (2, 3), "disjoint_B12_B34"),
        ((1, 2), (3, 0), "disjoint_B23_B41"),
    ):
        sa = _segment_samples(common_perpendicular(C[i], C[j], tol), 8, n_slice)
        sb = _segment_samples(common_perpendicular(C[k], C[l], tol), 8, n_slice)
        dmin = min(distance(a, b) for a in sa for b in sb)
        checks.append(SubCheck(label, dmin >= tol.sep_floor, dmin - tol.sep_floor))

    return checks


def validate_quadrangle(q: QuadrangleConfig, tol: Tolerances = TOL) -> Certificate:
    """Full K1/K2/K3 certification of a quadrangle of bisectors."""
    # K1: all six pairwise tances strictly above 1
    k1_margins = []
    for i in range(4):
        for j in range(i + 1, 4):
            k1_margins.append(tance(q.polars[i], q.polars[j]) - 1.0)
    k1 = all(m > tol.asymptotic for m in k1_margins)

    # K2: both diagonal triangles transversal and counterclockwise
    k2_margins = {}
    k2 = k1
    if k1:
        for name, tri in (
            ("triangle_124", q.triangle_124()),
            ("triangle_342", q.triangle_342()),
        ):
            ok, margins = is_transversal(tri, tol)
            ccw = tri.eps.imag < 0.0
            k2_margins[name] = list(margins) + [-tri.eps.imag]
            k2 = k2 and ok and ccw
    k3_checks = []
    k3 = False
    if k1 and k2:
        k3_checks = adjacency_check(q, tol)
        k3 = all(c.passed for c in k3_checks)

    return Certificate(
        k1=k1,
        k2=k2,
        k3=k3,
        k1_margins=k1_margins,
        k2_margins=k2_margins,
        k3_checks=k3_checks,
        tolerances={
            "asymptotic": tol.asymptotic,
            "strict_margin": tol.strict_margin,
            "angle_floor": tol.angle_floor,
            "sep_floor": tol.sep_floor,
            "k3_samples": tol.k3_samples,
        },
        input_digest=polars_digest(q.polars),
    )
