"""Hermitian form of signature (-,+,+), projective points, and isometries.

The whole library works in the projective model: a point of the complex
hyperbolic plane is a complex 3-vector of negative square norm up to scale,
where the square norm comes from the fixed Hermitian form

    <x, y> = -x0 conj(y0) + x1 conj(y1) + x2 conj(y2),

linear in the first slot and conjugate-linear in the second.  Holomorphic
isometries are 3x3 complex matrices preserving the form, stored as
determinant-1 lifts; projective equality of isometries is equality up to a
cube root of unity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ClassError,
    DegenerateError,
    FrameError,
    NullPointError,
    ZeroVectorError,
)
from .tolerances import TOL, Tolerances

#: The form matrix J = diag(-1, +1, +1), fixed for the whole artifact.
FORM_MATRIX = np.diag([-1.0, 1.0, 1.0])

_SIGNS = np.array([-1.0, 1.0, 1.0])
_CUBE_ROOTS = np.exp(2j * np.pi * np.arange(3) / 3)


def herm_form(x, y) -> complex:
    """Hermitian pairing <x, y> of two complex 3-vectors.

    Linear in ``x``, conjugate-linear in ``y``; ``herm_form(y, x)`` is the
    complex conjugate of ``herm_form(x, y)``.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    return complex(np.dot(_SIGNS * x, np.conj(y)))


def _self_norm(x) -> float:
    # <x,x> is real for any x.
    return herm_form(x, x).real


NEGATIVE = "negative"
NULL = "null"
POSITIVE = "positive"


class ProjectivePoint:
    """A nonzero complex 3-vector up to scale.

    The stored representative is rescaled to Euclidean norm 1 on
    construction, so chained computations never drift toward overflow.
    Everything observable (sign class, tances, distances) is independent of
    the representative.
    """

    __slots__ = ("v",)

    def __init__(self, rep, tol: Tolerances = TOL):
        v = np.asarray(rep, dtype=complex).reshape(3)
        n = float(np.linalg.norm(v))
        if n == 0.0 or not np.isfinite(n):
            raise ZeroVectorError("projective point needs a nonzero finite representative")
        self.v = v / n

    @property
    def sign_class(self) -> str:
        return classify(self)

    def herm_with(self, other: "ProjectivePoint") -> complex:
        return herm_form(self.v, other.v)

    def self_form(self) -> float:
        return _self_norm(self.v)

    def is_parallel_to(self, other: "ProjectivePoint", tol: float = 1e-9) -> bool:
        # |<v, w>_euclid| == |v||w| iff parallel; representatives are unit.
        return abs(abs(np.vdot(other.v, self.v)) - 1.0) < tol

    def __repr__(self):
        return f"ProjectivePoint({np.array2string(self.v, precision=6)})"


def classify(x: ProjectivePoint, tol: Tolerances = TOL) -> str:
    """Sign class of <x,x>: negative points are the points of H^2_C.

    The zero band is scale invariant: |<x,x>| < null_band * ||x||^2.
    """
    s = x.self_form()
    band = tol.null_band * float(np.linalg.norm(x.v)) ** 2
    if abs(s) < band:
        return NULL
    return NEGATIVE if s < 0 else POSITIVE


def tance(x: ProjectivePoint, y: ProjectivePoint, tol: Tolerances = TOL) -> float:
    """ta(x,y) = <x,y><y,x> / (<x,x><y,y>), defined for non-null points.

    Scale invariant and isometry invariant; equals cosh^2 of the distance
    for a pair of negative points.
    """
    if classify(x, tol) == NULL or classify(y, tol) == NULL:
        raise NullPointError("tance is undefined for null points")
    xy = x.herm_with(y)
    return float((xy * np.conj(xy)).real / (x.self_form() * y.self_form()))


def distance(x: ProjectivePoint, y: ProjectivePoint, tol: Tolerances = TOL) -> float:
    """Hyperbolic distance arccosh(sqrt(ta(x,y))) between negative points."""
    for p in (x, y):
        if classify(p, tol) != NEGATIVE:
            raise ClassError("distance requires two negative points")
    ta = tance(x, y, tol)
    if ta < 1.0 - 1e-9:
        raise GeometryDomainError(f"tance {ta} below 1 beyond numerical noise")
    return float(np.arccosh(np.sqrt(max(ta, 1.0))))


class GeometryDomainError(ClassError):
    """tance fell below 1 for a pair of supposedly negative points."""


def polar_span(x: ProjectivePoint, y: ProjectivePoint) -> ProjectivePoint:
    """The point orthogonal to both x and y: z = J conj(x cross y).

    The complex projective line through x and y is P(z^perp).
    """
    c = np.cross(x.v, y.v)
    if np.linalg.norm(c) < 1e-12:
        raise DegenerateError("polar_span needs projectively distinct points")
    return ProjectivePoint(_SIGNS * np.conj(c))


@dataclass(frozen=True)
class Isometry:
    """A determinant-1 lift of a holomorphic isometry of H^2_C."""

    matrix: np.ndarray
    det_normalized: bool = field(default=True)

    @staticmethod
    def from_matrix(m, tol: Tolerances = TOL, check: bool = True) -> "Isometry":
        m = np.asarray(m, dtype=complex).reshape(3, 3)
        if check:
            r = isometry_residual(m)
            if r > max(tol.isometry, 1e-9 * float(np.abs(m).max()) ** 2):
                raise FrameError(f"matrix is not an isometry of the form (residual {r:g})")
        d = np.linalg.det(m)
        # principal cube root keeps the normalization deterministic
        scale = d ** (-1.0 / 3.0)
        return Isometry(matrix=m * scale)

    @staticmethod
    def identity() -> "Isometry":
        return Isometry(matrix=np.eye(3, dtype=complex))

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry.from_matrix(self.matrix @ other.matrix, check=False)

    def inverse(self) -> "Isometry":
        # form-preserving inverse: M^-1 = J M* J
        return Isometry.from_matrix(
            FORM_MATRIX @ self.matrix.conj().T @ FORM_MATRIX, check=False
        )

    def apply(self, x: ProjectivePoint) -> ProjectivePoint:
        return ProjectivePoint(self.matrix @ x.v)

    def __call__(self, x: ProjectivePoint) -> ProjectivePoint:
        return self.apply(x)

    def residual(self) -> float:
        return isometry_residual(self.matrix)

    def projective_distance(self, other: "Isometry") -> float:
        """min over cube roots of unity w of max-norm of (self - w*other)."""
        return min(
            float(np.abs(self.matrix - w * other.matrix).max()) for w in _CUBE_ROOTS
        )

    def projectively_equal(self, other: "Isometry", tol: float = 1e-10) -> bool:
        return self.projective_distance(other) < tol

    def rotation_angles(self) -> np.ndarray:
        """Eigenvalue arguments of the lift, sorted."""
        return np.sort(np.angle(np.linalg.eigvals(self.matrix)))


def isometry_residual(m) -> float:
    """max-norm of M* J M - J; zero exactly on U(2,1)."""
    m = np.asarray(m, dtype=complex).reshape(3, 3)
    return float(np.abs(m.conj().T @ FORM_MATRIX @ m - FORM_MATRIX).max())


@dataclass(frozen=True)
class OrthogonalFrame:
    """A form-orthogonal frame (negative, positive, positive).

    Eigenbasis carrier for elliptic isometries; the vectors need not be
    unit, only pairwise orthogonal with the right sign classes.
    """

    b0: ProjectivePoint
    b1: ProjectivePoint
    b2: ProjectivePoint

    def validate(self, tol: Tolerances = TOL) -> None:
        pts = (self.b0, self.b1, self.b2)
        want = (NEGATIVE, POSITIVE, POSITIVE)
        for p, w in zip(pts, want):
            if classify(p, tol) != w:
                raise FrameError(f"frame vector has class {classify(p, tol)}, wanted {w}")
        for i in range(3):
            for j in range(i + 1, 3):
                r = abs(pts[i].herm_with(pts[j]))
                if r > tol.orthogonality:
                    raise FrameError(f"frame vectors {i},{j} not orthogonal (|<,>|={r:g})")

    def vectors(self):
        return self.b0.v, self.b1.v, self.b2.v


def _projector(b: np.ndarray) -> np.ndarray:
    # form-orthogonal projection onto C b:  P(x) = (<x,b>/<b,b>) b
    return np.outer(b, _SIGNS * np.conj(b)) / _self_norm(b)


def elliptic_from_frame(frame: OrthogonalFrame, phases, tol: Tolerances = TOL) -> Isometry:
    """Elliptic isometry with eigenvectors ``frame`` and unit eigenvalues ``phases``.

    ``M = sum_k phases[k] * P_k`` with ``P_k`` the form-orthogonal projection
    onto the k-th frame vector; the result is determinant-normalized.
    """
    frame.validate(tol)
    phases = np.asarray(phases, dtype=complex).reshape(3)
    if np.abs(np.abs(phases) - 1.0).max() > 1e-12:
        raise FrameError("eigenphases must have unit modulus")
    m = sum(mu * _projector(b) for mu, b in zip(phases, frame.vectors()))
    return Isometry.from_matrix(m, tol)


def reflection_about(p: ProjectivePoint, tol: Tolerances = TOL) -> Isometry:
    """The involution x -> -x + 2 <x,p>/<p,p> p.

    A reflection at the point p when p is negative; a reflection in the
    complex geodesic P(p^perp) when p is positive.
    """
    if classify(p, tol) == NULL:
        raise NullPointError("reflection needs a non-null point")
    m = -np.eye(3, dtype=complex) + 2.0 * _projector(p.v)
    return Isometry.from_matrix(m, tol)
