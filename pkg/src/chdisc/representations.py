"""Representation candidates: turnover baselines, bent solutions, and H5.

A turnover group G(n1,n2,n3) = <g1,g2,g3 | g_i^{n_i} = g3 g2 g1 = 1> acts on
the hyperbolic plane with quotient the sphere with three cone points.  This
module builds matrix representatives of such groups acting on H^2_C:

* ``fuchsian_turnover`` extends the planar rotation construction into the
  standard complex geodesic, choosing the free polar eigenphases of g1, g3
  to make as many relations exact as the obstruction below allows;
* ``turnover_solve`` searches a four-parameter family of genuinely
  two-dimensional-complex configurations for representations in which
  g2 := g3^-1 g1^-1 has exact projective order n2, with a bending phase on
  the polar eigenvalues of g1 and g3;
* ``h5_builder`` assembles five point reflections for the hyperelliptic
  group and reports the residual of their product relation.

Obstruction note.  An isometry stabilizing a complex geodesic is, up to a
scalar, a block pair (A, u) with A in U(1,1) and u in U(1); scaling the pair
identifies the stabilizer subgroup with U(1,1) via A/u.  A rotation by
-2pi/n about a point of the complex geodesic with polar eigenphase u has
block eigenvalues (1, e^{-2pi i/n}) up to scale, and its n-th power is
central exactly when u^n = 1.  Writing the planar triangle-rotation
relation in these terms shows that g2 = g3^-1 g1^-1 has projective order n2
for some choice of polar phases iff

    (1 + 2 k1)/n1 + (1 + 2 k2)/n2 + (1 + 2 k3)/n3  is an integer

for some integers k_i: a lifting condition on the Fuchsian representation.
It is solvable for (3,3,5) but provably unsolvable for (3,3,4), (2,3,7) and
(2,4,5) (the left side has odd numerator over an even common denominator).
For those signatures every relation except g2^{n2} still holds exactly, and
``turnover_solve`` finds honest order-n2 configurations away from the
complex-geodesic locus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import least_squares

from .core import (
    Isometry,
    OrthogonalFrame,
    ProjectivePoint,
    elliptic_from_frame,
    herm_form,
    polar_span,
    reflection_about,
    tance,
)
from .disc import F0, embed, in_plane_frame, triangle_vertices
from .errors import (
    ClassError,
    ConvergenceError,
    HyperbolicityError,
    InvalidSolutionError,
)
from .geometry import ComplexGeodesic
from .quadrangle import Certificate, QuadrangleConfig, validate_quadrangle
from .tolerances import TOL, Tolerances

_E1 = np.array([0.0, 1.0, 0.0], dtype=complex)
_E2 = np.array([0.0, 0.0, 1.0], dtype=complex)


@dataclass(frozen=True)
class TurnoverSignature:
    """Cone orders (n1, n2, n3) of a hyperbolic turnover."""

    n1: int
    n2: int
    n3: int

    def __post_init__(self):
        for n in self.orders():
            if not isinstance(n, (int, np.integer)) or n < 2:
                raise HyperbolicityError("cone orders must be integers >= 2")
        if Fraction(1, self.n1) + Fraction(1, self.n2) + Fraction(1, self.n3) >= 1:
            raise HyperbolicityError(
                f"signature {self.orders()} is not hyperbolic: 1/n1+1/n2+1/n3 >= 1"
            )

    def orders(self) -> tuple[int, int, int]:
        return (self.n1, self.n2, self.n3)

    def angles(self) -> tuple[float, float, float]:
        return tuple(np.pi / n for n in self.orders())


def orbifold_euler(data) -> Fraction:
    """Orbifold Euler characteristic as an exact rational.

    Accepts a :class:`TurnoverSignature` (sphere with three cone points), an
    integer genus (closed surface), or a pair ``(genus, cone_orders)``.
    """
    if isinstance(data, TurnoverSignature):
        return Fraction(-1) + sum(Fraction(1, n) for n in data.orders())
    if isinstance(data, (int, np.integer)):
        return Fraction(2 - 2 * int(data))
    genus, cone_orders = data
    chi = Fraction(2 - 2 * int(genus))
    for n in cone_orders:
        chi -= 1 - Fraction(1, int(n))
    return chi


@dataclass
class Representation:
    """Named generator matrices plus the relation words they should satisfy.

    Words are space-separated generator names, optionally suffixed ``^-1``,
    composed left to right as matrix products (so the word "g3 g2 g1" is
    the isometry applying g1 first).
    """

    kind: str
    generators: dict
    relations: list
    metadata: dict = field(default_factory=dict)

    def word_product(self, word) -> Isometry:
        tokens = word.split() if isinstance(word, str) else list(word)
        m = Isometry.identity()
        for t in tokens:
            inverse = t.endswith("^-1")
            name = t[:-3] if inverse else t
            if name not in self.generators:
                raise KeyError(f"unknown generator {name!r}")
            g = self.generators[name]
            m = m @ (g.inverse() if inverse else g)
        return m

    def relation_residuals(self) -> dict:
        return {w: relation_residual(self, w) for w in self.relations}


def relation_residual(rep: Representation, word) -> float:
    """min over cube roots of unity w of ||product - w I||_max, det-1 lift."""
    return rep.word_product(word).projective_distance(Isometry.identity())


@dataclass
class QuadrangleFromRep:
    """The quadrangle C1..C4 of stable complex geodesics of a representation."""

    rep: Representation
    vertices: tuple
    certificate: Certificate

    def config(self) -> QuadrangleConfig:
        return QuadrangleConfig(tuple(v.polar for v in self.vertices))


def isometry_power(g: Isometry, n: int) -> Isometry:
    return Isometry.from_matrix(np.linalg.matrix_power(g.matrix, n), check=False)


def elliptic_fixed_point(g: Isometry) -> ProjectivePoint:
    """The fixed point in H^2_C of an elliptic isometry.

    Picks the eigenvector of most negative square norm; raises when no
    eigenvector is negative (the element is not elliptic).
    """
    _, vecs = np.linalg.eig(g.matrix)
    best, best_norm = None, 0.0
    for k in range(3):
        v = vecs[:, k]
        s = herm_form(v, v).real / float(np.linalg.norm(v)) ** 2
        if s < best_norm:
            best, best_norm = v, s
    if best is None or best_norm > -1e-10:
        raise ClassError("isometry has no negative eigenvector (not elliptic)")
    return ProjectivePoint(best)


def triangle_from_angles(sig: TurnoverSignature) -> tuple:
    """Vertices of the counterclockwise (pi/n1, pi/n2, pi/n3) triangle.

    The triangle lies in the standard complex geodesic (last coordinate
    zero), c1 at the center; returned as negative projective points.
    """
    z1, z2, z3 = triangle_vertices(*sig.angles())
    return embed(z1), embed(z2), embed(z3)


def _word_power(name: str, n: int) -> str:
    return " ".join([name] * n)


def _turnover_relations(sig: TurnoverSignature) -> list:
    return [
        _word_power("g1", sig.n1),
        _word_power("g2", sig.n2),
        _word_power("g3", sig.n3),
        "g3 g2 g1",
    ]


def _twisted_rotation(center: complex, n: int, k: int, bend: float = 0.0) -> Isometry:
    """Rotation by -2pi/n about a disc point, polar eigenphase e^{2pi i k/n + i bend}."""
    frame = in_plane_frame(center)
    phases = [1.0, np.exp(-2j * np.pi / n), np.exp(2j * np.pi * k / n + 1j * bend)]
    return elliptic_from_frame(frame, phases)


def _max_turnover_residual(g1, g2, g3, sig) -> float:
    ident = Isometry.identity()
    return max(
        isometry_power(g1, sig.n1).projective_distance(ident),
        isometry_power(g2, sig.n2).projective_distance(ident),
        isometry_power(g3, sig.n3).projective_distance(ident),
        (g3 @ g2 @ g1).projective_distance(ident),
    )


def fuchsian_turnover(sig: TurnoverSignature, tol: Tolerances = TOL):
    """The rotation construction inside the standard complex geodesic.

    g1, g3 rotate by -2pi/n1, -2pi/n3 about the triangle vertices c1, c3 and
    g2 := g3^-1 g1^-1 fixes c2 and restricts to a rotation of order n2 on
    the complex geodesic.  The free polar eigenphases of g1, g3 are chosen
    (by exhaustive search over n-th roots of unity, preferring trivial
    phases on ties) to minimize the worst relation residual; see the module
    docstring for the signatures where the residual of g2^{n2} cannot
    vanish.  Returns ``(Representation, QuadrangleFromRep)``.
    """
    z1, z2, z3 = triangle_vertices(*sig.angles())
    best = None
    for k1 in range(sig.n1):
        for k3 in range(sig.n3):
            g1 = _twisted_rotation(z1, sig.n1, k1)
            g3 = _twisted_rotation(z3, sig.n3, k3)
            g2 = g3.inverse() @ g1.inverse()
            r = _max_turnover_residual(g1, g2, g3, sig)
            key = (round(r, 12), k1, k3)
            if best is None or key < best[0]:
                best = (key, (k1, k3), (g1, g2, g3), r)
    (k1, k3), (g1, g2, g3), worst = best[1], best[2], best[3]

    c1, c2, c3 = embed(z1), embed(z2), embed(z3)
    fixed_gap = abs(tance(g2(c2), c2) - 1.0)
    if fixed_gap > tol.fixed_point:
        raise ConvergenceError(f"g2 does not fix c2 (tance gap {fixed_gap:g})")

    p1, p2, p3 = (polar_span(c, F0) for c in (c1, c2, c3))
    p4 = g1.inverse()(p2)
    c4_gap = abs(tance(p4, g3(p2)) - 1.0)
    cert = validate_quadrangle(QuadrangleConfig((p1, p2, p3, p4)), tol)

    rep = Representation(
        kind="turnover",
        generators={"g1": g1, "g2": g2, "g3": g3},
        relations=_turnover_relations(sig),
        metadata={
            "signature": sig.orders(),
            "polar_twists": (k1, k3),
            "worst_relation_residual": worst,
            "fixed_point_gap": fixed_gap,
            "c4_consistency_gap": c4_gap,
            "certificate_passed": cert.passed,
        },
    )
    quad = QuadrangleFromRep(
        rep=rep,
        vertices=tuple(ComplexGeodesic(p) for p in (p1, p2, p3, p4)),
        certificate=cert,
    )
    return rep, quad


# -- bent representations ----------------------------------------------------

@dataclass(frozen=True)
class SolverSeed:
    """Reproducibility and search-budget knobs for turnover_solve."""

    seed: int = 0
    starts: int = 30
    window: float = 0.2
    residual_target: float = 1e-9


def _orthonormal_pair_at(x3v: np.ndarray):
    """Positive orthonormal pair spanning the form-orthogonal complement of x3."""

    def off(w, b):
        return w - (herm_form(w, b) / herm_form(b, b)) * b

    u = off(_E1, x3v)
    u = u / np.sqrt(herm_form(u, u).real)
    v = off(off(_E2, x3v), u)
    v = v / np.sqrt(herm_form(v, v).real)
    return u, v


def _bent_generators(sig, bend, params, k1, k3):
    """Generators for a candidate bent representation.

    g1 keeps the baseline fixed point and eigenframe; g3 is an order-n3-type
    elliptic whose fixed point (1, a, b) may leave the standard complex
    geodesic and whose rotation plane is mixed by the angle psi and phase
    phi; both carry the bending phase on their last eigenvalue.
    """
    a, b, psi, phi = params
    if a * a + b * b >= 0.98:
        raise ClassError("candidate fixed point left the ball model")
    g1 = _twisted_rotation(0.0 + 0.0j, sig.n1, k1, bend)
    x3v = np.array([1.0, a, b], dtype=complex)
    u, v = _orthonormal_pair_at(x3v)
    w1 = np.cos(psi) * u + np.sin(psi) * np.exp(1j * phi) * v
    w2 = -np.sin(psi) * np.exp(-1j * phi) * u + np.cos(psi) * v
    frame = OrthogonalFrame(
        ProjectivePoint(x3v), ProjectivePoint(w1), ProjectivePoint(w2)
    )
    phases = [
        1.0,
        np.exp(-2j * np.pi / sig.n3),
        np.exp(2j * np.pi * k3 / sig.n3 + 1j * bend),
    ]
    g3 = elliptic_from_frame(frame, phases)
    g2 = g3.inverse() @ g1.inverse()
    return g1, g2, g3, ProjectivePoint(w1), ProjectivePoint(w2)


_CUBE = np.exp(2j * np.pi * np.arange(3) / 3)


def _order_residual_vector(g2: Isometry, n2: int) -> np.ndarray:
    m = np.linalg.matrix_power(g2.matrix, n2)
    best = None
    for w in _CUBE:
        d = (m - w * np.eye(3)).ravel()
        v = np.concatenate([d.real, d.imag])
        if best is None or np.linalg.norm(v) < np.linalg.norm(best):
            best = v
    return best


def _quadrangle_candidates(sig, g1, g2, g3, w1p, w2p, tol):
    """All stable-complex-geodesic choices for (C1, C2, C3) with C4 = g1^-1 C2.

    Each generator stabilizes two complex geodesics through its fixed
    point; candidates are enumerated in a deterministic order and paired
    with their certificates.
    """
    ev, vecs = np.linalg.eig(g2.matrix)
    neg = [i for i in range(3) if herm_form(vecs[:, i], vecs[:, i]).real < 0]
    if len(neg) != 1:
        return
    pos = [i for i in range(3) if i != neg[0]]
    # prefer the eigenvector pairing with the -2pi/n2 rotation of the fixed point
    tgt = np.exp(-2j * np.pi / sig.n2)
    pos.sort(key=lambda i: abs(ev[i] / ev[neg[0]] - tgt))
    for p1 in (ProjectivePoint(_E1), ProjectivePoint(_E2)):
        for i2 in pos:
            p2 = ProjectivePoint(vecs[:, i2])
            p4 = g1.inverse()(p2)
            for p3 in (w1p, w2p):
                try:
                    q = QuadrangleConfig((p1, p2, p3, p4))
                    yield q, validate_quadrangle(q, tol)
                except Exception:
                    continue


def turnover_solve(
    sig: TurnoverSignature,
    bend: float,
    seed_params: SolverSeed = SolverSeed(),
    tol: Tolerances = TOL,
):
    """Find a bent representation whose g2 has exact projective order n2.

    For ``bend == 0`` returns the ``fuchsian_turnover`` construction (the
    continuation origin).  Otherwise runs a deterministic multistart
    least-squares search over the fixed point of g3 (two coordinates) and
    its rotation-plane mixing (angle and phase), for each choice of polar
    twists, minimizing ||g2^{n2} - w I|| over cube roots w.  Among
    converged solutions the first whose quadrangle passes K1 and K2 is
    returned (K3 is reported in the certificate).  Raises
    ``ConvergenceError`` if nothing converges and ``InvalidSolutionError``
    if solutions converge but none certifies.
    """
    if abs(bend) > seed_params.window:
        raise ConvergenceError(
            f"bend {bend} outside the solver window {seed_params.window}"
        )
    if bend == 0.0:
        rep, quad = fuchsian_turnover(sig, tol)
        rep.metadata["solver_log"] = {"bend": 0.0, "branch": "fuchsian baseline"}
        return rep, quad

    rng = np.random.default_rng(seed_params.seed)
    log = []
    best_invalid = None
    last_residual = np.inf

    def objective(x, k1, k3):
        try:
            _, g2, _, _, _ = _bent_generators(sig, bend, x, k1, k3)
        except Exception:
            return np.full(18, 1e3)
        return _order_residual_vector(g2, sig.n2)

    for k1 in range(sig.n1):
        for k3 in range(sig.n3):
            for start in range(seed_params.starts):
                x0 = np.array(
                    [
                        rng.uniform(0.1, 0.9),
                        rng.uniform(0.0, 0.7),
                        rng.uniform(-1.5, 1.5),
                        rng.uniform(-np.pi, np.pi),
                    ]
                )
                try:
                    sol = least_squares(
                        objective,
                        x0,
                        args=(k1, k3),
                        xtol=1e-15,
                        ftol=1e-15,
                        gtol=1e-15,
                        max_nfev=250,
                    )
                except Exception:
                    continue
                residual = float(np.linalg.norm(sol.fun))
                last_residual = min(last_residual, residual)
                if residual > seed_params.residual_target:
                    continue
                if np.hypot(sol.x[0], sol.x[1]) < 0.05:
                    continue  # degenerate: g3 collapsed onto the fixed point of g1
                g1, g2, g3, w1p, w2p = _bent_generators(sig, bend, sol.x, k1, k3)
                log.append(
                    {
                        "twists": (k1, k3),
                        "start": start,
                        "params": [float(v) for v in sol.x],
                        "order_residual": residual,
                    }
                )
                for q, cert in _quadrangle_candidates(sig, g1, g2, g3, w1p, w2p, tol):
                    if cert.k1 and cert.k2:
                        rep = Representation(
                            kind="turnover",
                            generators={"g1": g1, "g2": g2, "g3": g3},
                            relations=_turnover_relations(sig),
                            metadata={
                                "signature": sig.orders(),
                                "bend": bend,
                                "polar_twists": (k1, k3),
                                "params": [float(v) for v in sol.x],
                                "g2_order_residual": residual,
                                "certificate_passed": cert.passed,
                                "solver_log": log,
                            },
                        )
                        quad = QuadrangleFromRep(
                            rep=rep,
                            vertices=tuple(ComplexGeodesic(p) for p in q.polars),
                            certificate=cert,
                        )
                        return rep, quad
                    if best_invalid is None:
                        best_invalid = (sol.x, (k1, k3), residual, cert)
    if best_invalid is not None:
        raise InvalidSolutionError(
            "solver converged (g2-order residual "
            f"{best_invalid[2]:.2e}, twists {best_invalid[1]}) but no "
            "stable-geodesic choice passes K1 and K2"
        )
    raise ConvergenceError(
        f"no order-{sig.n2} solution found at bend {bend}; "
        f"best residual {last_residual:.2e}"
    )


def h5_builder(p1: ProjectivePoint, others, tol: Tolerances = TOL) -> Representation:
    """Five point reflections generating a hyperelliptic-group candidate.

    ``p1`` must be positive (a reflection in a complex geodesic), the four
    ``others`` negative (point reflections).  The product relation residual
    of r5 r4 r3 r2 r1 is reported in the metadata, not required to vanish:
    finding vanishing configurations is the caller's search problem.
    """
    from .core import classify, NEGATIVE, POSITIVE

    if classify(p1, tol) != POSITIVE:
        raise ClassError("p1 must be a positive point")
    others = list(others)
    if len(others) != 4:
        raise ClassError("h5_builder needs exactly four negative points")
    for p in others:
        if classify(p, tol) != NEGATIVE:
            raise ClassError("p2..p5 must be negative points")
    points = [p1, *others]
    gens = {f"r{i+1}": reflection_about(p, tol) for i, p in enumerate(points)}
    rep = Representation(
        kind="hyperelliptic",
        generators=gens,
        relations=[_word_power(f"r{i+1}", 2) for i in range(5)] + ["r5 r4 r3 r2 r1"],
        metadata={},
    )
    rep.metadata["product_residual"] = relation_residual(rep, "r5 r4 r3 r2 r1")
    # the product of five reflections should be compared against a single
    # reflection with positive mirror as well: record the best residual
    # against -identity conjugates, i.e. the reflection-likeness diagnostic
    prod = rep.word_product("r5 r4 r3 r2 r1")
    eigs = np.linalg.eigvals(prod.matrix)
    rep.metadata["product_eigenvalue_args"] = sorted(float(a) for a in np.angle(eigs))
    return rep
