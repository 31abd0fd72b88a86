"""Certifying quadrangles of bisectors, and how certificates fail.

A quadrangle of four pairwise ultraparallel complex geodesics is certified
in three stages: K1 (all six polar tances above 1), K2 (both diagonal
triangles of bisectors transversal and counterclockwise), and K3 (sampled
transversal-adjacency checks).  This script certifies the (3,3,4) baseline
and then breaks each stage on purpose.
"""

import numpy as np

from chdisc import QuadrangleConfig, polar_span, validate_quadrangle
from chdisc.core import ProjectivePoint
from chdisc.disc import F0, embed, triangle_vertices


def fiber(z):
    """Polar of the complex geodesic through embed(z) orthogonal to the disc."""
    return polar_span(embed(z), F0)


def show(name, cert):
    print(f"{name:<28s} K1={cert.k1!s:<5} K2={cert.k2!s:<5} "
          f"K3={cert.k3!s:<5} pass={cert.passed}")
    if cert.k1_margins:
        print(f"    min K1 margin {min(cert.k1_margins):+.3e}")
    for tri, margins in cert.k2_margins.items():
        print(f"    {tri}: min margin {min(margins):+.3e}")
    for check in cert.k3_checks:
        flag = "ok " if check.passed else "FAIL"
        print(f"    [{flag}] {check.name:<22s} margin {check.margin:+.3e}")


def main():
    z1, z2, z3 = triangle_vertices(np.pi / 3, np.pi / 3, np.pi / 4)
    z4 = z2 * np.exp(2j * np.pi / 3)  # the fourth vertex g1^-1 C2
    baseline = QuadrangleConfig((fiber(z1), fiber(z2), fiber(z3), fiber(z4)))
    show("baseline (3,3,4)", validate_quadrangle(baseline))

    # K1 failure: F0 is orthogonal to every fiber polar, so swapping it in
    # gives tance 0 <= 1 against all three others
    bad_k1 = QuadrangleConfig((F0,) + baseline.polars[1:])
    show("K1 broken (orthogonal C1)", validate_quadrangle(bad_k1))

    # K2 failure: conjugation is an anti-holomorphic isometry, so tances
    # survive but both triangles become clockwise
    conj = QuadrangleConfig(
        tuple(ProjectivePoint(np.conj(p.v)) for p in baseline.polars)
    )
    show("K2 broken (clockwise)", validate_quadrangle(conj))

    # adjacency failure: reflect C3 through the centre; K1 still holds but
    # C3 now sits on the wrong side of the bisectors through C1 and the
    # sector sub-checks of the adjacency certificate go negative
    from chdisc.quadrangle import adjacency_check

    wrong = QuadrangleConfig(baseline.polars[:2] + (fiber(-z3),) + baseline.polars[3:])
    show("wrong-side C3 (gated)", validate_quadrangle(wrong))
    print("  ungated adjacency sub-checks for the wrong-side configuration:")
    for check in adjacency_check(wrong):
        flag = "ok " if check.passed else "FAIL"
        print(f"    [{flag}] {check.name:<22s} margin {check.margin:+.3e}")


if __name__ == "__main__":
    main()
