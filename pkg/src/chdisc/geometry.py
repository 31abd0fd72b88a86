"""Geodesics, complex geodesics, bisectors, segments, and slices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    NEGATIVE,
    POSITIVE,
    ProjectivePoint,
    classify,
    distance,
    herm_form,
    polar_span,
    tance,
)
from .errors import ClassError, DegenerateError, NotOnSpineError, NotUltraparallelError
from .tolerances import TOL, Tolerances

ULTRAPARALLEL = "ultraparallel"
ASYMPTOTIC = "asymptotic"
CONCURRENT = "concurrent"


@dataclass(frozen=True)
class ComplexGeodesic:
    """A complex geodesic P(polar^perp), encoded by its positive polar."""

    polar: ProjectivePoint

    def __post_init__(self):
        if classify(self.polar) != POSITIVE:
            raise ClassError("the polar of a complex geodesic must be positive")

    def contains(self, x: ProjectivePoint, tol: float = 1e-9) -> bool:
        return abs(self.polar.herm_with(x)) < tol


def position(c1: ComplexGeodesic, c2: ComplexGeodesic, tol: Tolerances = TOL) -> str:
    """Mutual position of two complex geodesics from the tance of their polars.

    ultraparallel / asymptotic / concurrent as the tance is > 1 / = 1 / < 1.
    """
    if c1.polar.is_parallel_to(c2.polar):
        raise DegenerateError("identical complex geodesics have no mutual position")
    ta = tance(c1.polar, c2.polar, tol)
    if abs(ta - 1.0) < tol.asymptotic:
        return ASYMPTOTIC
    return ULTRAPARALLEL if ta > 1.0 else CONCURRENT


def _phase_align(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Rescale y by a unit scalar so that <x, y> is real and <= 0."""
    p = herm_form(x, y)
    if abs(p) < 1e-15:
        return y
    return y * (-p / abs(p))


@dataclass(frozen=True)
class Geodesic:
    """A geodesic, stored as two spanning points with real pairing.

    The representative of ``y`` is phase-rotated so that <x, y> is real,
    making the real span W explicit; the restricted form must have
    signature -+.
    """

    x: ProjectivePoint
    y: ProjectivePoint

    @staticmethod
    def through(x: ProjectivePoint, y: ProjectivePoint) -> "Geodesic":
        if x.is_parallel_to(y):
            raise DegenerateError("a geodesic needs two distinct points")
        yv = _phase_align(x.v, y.v)
        g = Geodesic(x, ProjectivePoint(yv))
        if g.signature() != (-1, 1):
            raise ClassError("spanning pair does not give a -+ real plane")
        return g

    def gram(self) -> np.ndarray:
        return np.array(
            [
                [herm_form(self.x.v, self.x.v).real, herm_form(self.x.v, self.y.v).real],
                [herm_form(self.y.v, self.x.v).real, herm_form(self.y.v, self.y.v).real],
            ]
        )

    def signature(self) -> tuple[int, int]:
        ev = np.linalg.eigvalsh(self.gram())
        return tuple(int(np.sign(e)) for e in ev)


def geodesic_interp(x: ProjectivePoint, y: ProjectivePoint, t: float) -> ProjectivePoint:
    """Point at arclength fraction t on the geodesic from x to y.

    Hyperbolic slerp: with representatives normalized to <x,x> = <y,y> = -1
    and <x,y> = -cosh d, the combination (x sinh((1-t)d) + y sinh(td)) /
    sinh d traces the geodesic at unit speed.
    """
    xv = x.v / np.sqrt(-x.self_form())
    yv = y.v / np.sqrt(-y.self_form())
    yv = _phase_align(xv, yv)
    c = -herm_form(xv, yv).real
    d = float(np.arccosh(max(c, 1.0)))
    if d < 1e-15:
        return x
    v = (np.sinh((1.0 - t) * d) * xv + np.sinh(t * d) * yv) / np.sinh(d)
    return ProjectivePoint(v)


@dataclass(frozen=True)
class Bisector:
    """A bisector: real spine, unit polar f, complex spine P(f^perp)."""

    spine: Geodesic
    polar_f: ProjectivePoint
    complex_spine: ComplexGeodesic

    @staticmethod
    def from_spine(spine: Geodesic) -> "Bisector":
        f = polar_span(spine.x, spine.y)
        ff = f.self_form()
        if ff <= 0:
            raise ClassError("spine polar is not positive")
        fu = ProjectivePoint(f.v / np.sqrt(ff))
        return Bisector(spine=spine, polar_f=fu, complex_spine=ComplexGeodesic(fu))

    def unit_polar_vector(self) -> np.ndarray:
        v = self.polar_f.v
        return v / np.sqrt(herm_form(v, v).real)


@dataclass(frozen=True)
class BisectorSegment:
    """Segment of bisector B[C1, C2] between two ultraparallel complex geodesics."""

    bisector: Bisector
    feet: tuple[ProjectivePoint, ProjectivePoint]
    end_slices: tuple[ComplexGeodesic, ComplexGeodesic]

    def foot_distance(self) -> float:
        return distance(self.feet[0], self.feet[1])


def common_perpendicular(
    c1: ComplexGeodesic, c2: ComplexGeodesic, tol: Tolerances = TOL
) -> BisectorSegment:
    """The segment B[C1,C2] along the unique common perpendicular geodesic.

    The feet are the form-orthogonal projections of each polar away from the
    other: c1 = p2 - (<p2,p1>/<p1,p1>) p1 and symmetrically; the bisector
    polar is the intersection point of the two projective lines.
    """
    if position(c1, c2, tol) != ULTRAPARALLEL:
        raise NotUltraparallelError("common perpendicular needs ultraparallel geodesics")
    p1, p2 = c1.polar, c2.polar
    f1 = ProjectivePoint(p2.v - (herm_form(p2.v, p1.v) / p1.self_form()) * p1.v)
    f2 = ProjectivePoint(p1.v - (herm_form(p1.v, p2.v) / p2.self_form()) * p2.v)
    if classify(f1) != NEGATIVE or classify(f2) != NEGATIVE:
        raise ClassError("feet of the common perpendicular are not negative points")
    spine = Geodesic.through(f1, f2)
    bis = Bisector.from_spine(spine)
    return BisectorSegment(bisector=bis, feet=(f1, f2), end_slices=(c1, c2))


def spine_point(seg: BisectorSegment, t: float) -> ProjectivePoint:
    """Point at arclength fraction t in [0,1] along the spine, foot to foot."""
    if not 0.0 <= t <= 1.0:
        raise ValueError("spine parameter must lie in [0, 1]")
    return geodesic_interp(seg.feet[0], seg.feet[1], t)


def _spine_residual(b: Bisector, x: ProjectivePoint) -> float:
    """How far x is from the real spine of b (coordinate residual)."""
    basis = np.column_stack([b.spine.x.v, b.spine.y.v, b.polar_f.v])
    alpha, beta, gamma = np.linalg.solve(basis, x.v)
    n = abs(alpha) ** 2 + abs(beta) ** 2
    if n < 1e-30:
        return float(abs(gamma))
    # alpha, beta must be real up to a common phase: Im(alpha conj(beta)) = 0
    return float(abs((alpha * np.conj(beta)).imag) / n + abs(gamma) / np.sqrt(n))


def slice_at(b: Bisector, x: ProjectivePoint, tol: Tolerances = TOL) -> ComplexGeodesic:
    """The slice P(C x + C f) of the bisector through a spine point x."""
    if classify(x, tol) != NEGATIVE:
        raise ClassError("slice points must be negative")
    if _spine_residual(b, x) > tol.on_spine:
        raise NotOnSpineError("point does not lie on the real spine")
    return ComplexGeodesic(polar_span(x, b.polar_f))


def real_plane_check(
    x: ProjectivePoint, y: ProjectivePoint, z: ProjectivePoint, tol: float = 1e-9
) -> bool:
    """Whether the triple spans a real plane (an embedded Lagrangian H^2_R).

    Representatives are phase-adjusted so <x,y> and <x,z> are real; the
    triple spans a real plane iff the remaining pairing <y,z> then also
    becomes real and the real 3x3 Gram matrix has signature -++.
    """
    vecs = np.column_stack([x.v, y.v, z.v])
    if abs(np.linalg.det(vecs)) < 1e-12:
        raise DegenerateError("real_plane_check needs an independent triple")
    yv = _phase_align(x.v, y.v)
    zv = _phase_align(x.v, z.v)
    # the x-pairings may legitimately vanish; fall back to aligning y with z
    if abs(herm_form(x.v, yv)) < 1e-13 and abs(herm_form(zv, yv)) > 1e-13:
        yv = _phase_align(zv, yv)
    cross = herm_form(yv, zv)
    if abs(cross.imag) > tol * max(1.0, abs(cross)):
        return False
    gram = np.zeros((3, 3))
    cols = [x.v, yv, zv]
    for i in range(3):
        for j in range(3):
            gram[i, j] = herm_form(cols[i], cols[j]).real
    ev = np.linalg.eigvalsh(gram)
    return bool(ev[0] < 0 < ev[1])
