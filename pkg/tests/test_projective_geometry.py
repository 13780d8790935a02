from fractions import Fraction

import pytest

from isog3.errors import DegeneratePointSet, LineInHyperplane, NotSmoothConic, ProjectionCenter
from isog3.field_kernel import QQ, make_extension
from isog3.projective_geometry import (INFINITY, LinearSubspace, ProjPoint, conic_from_coefficients,
                                       conic_parametrize, conic_through, hyperplane_through_six,
                                       line_meet_hyperplane, project_from, secant_line_rnc, span,
                                       tangent_line_rnc, veronese_embed)


def q(*vals):
    return [Fraction(v) for v in vals]


def test_points_up_to_scalar():
    a = ProjPoint(QQ, q(1, 2, 3))
    b = ProjPoint(QQ, q(2, 4, 6))
    assert a == b and hash(a) == hash(b)
    with pytest.raises(ValueError):
        ProjPoint(QQ, q(0, 0))


def test_rational_normal_curve_points_are_independent():
    pts = [veronese_embed(QQ, Fraction(t), 6) for t in range(6)] + [veronese_embed(QQ, INFINITY, 6)]
    assert span(pts)[1] == 7
    assert span(pts[:6])[1] == 6


def test_hyperplane_through_six_contains_them():
    pts = [veronese_embed(QQ, Fraction(t), 6) for t in (0, 1, -1, 2, 3)] + [veronese_embed(QQ, INFINITY, 6)]
    H = hyperplane_through_six(pts)
    h = H.equations[0]
    assert all(QQ.dot(h, p.coords) == 0 for p in pts)
    assert QQ.dot(h, veronese_embed(QQ, Fraction(5), 6).coords) != 0
    with pytest.raises(DegeneratePointSet):
        hyperplane_through_six(pts[:5] + [pts[0]])


def test_secant_meets_hyperplane_in_one_point():
    pts = [veronese_embed(QQ, Fraction(t), 6) for t in range(6)]
    H = hyperplane_through_six(pts)
    line = secant_line_rnc(QQ, Fraction(7), Fraction(9), 6)
    P = line_meet_hyperplane(line, H)
    assert QQ.dot(H.equations[0], P.coords) == 0
    assert line.contains(P)
    inside = secant_line_rnc(QQ, Fraction(0), Fraction(1), 6)
    with pytest.raises(LineInHyperplane):
        line_meet_hyperplane(inside, H)


def test_tangent_is_limit_of_secants():
    t = Fraction(2)
    tangent = tangent_line_rnc(QQ, t, 4)
    assert secant_line_rnc(QQ, t, t, 4).rows == tangent.rows
    # derivative of (1, t, ..., t^4) lies on the tangent
    assert tangent.contains(q(0, 1, 4, 12, 32))


def test_projection_and_centre():
    L = LinearSubspace.from_vectors(QQ, [q(1, 0, 0, 0)])
    img = project_from(L, ProjPoint(QQ, q(5, 1, 2, 3)))
    assert img == ProjPoint(QQ, q(1, 2, 3))
    with pytest.raises(ProjectionCenter):
        project_from(L, ProjPoint(QQ, q(2, 0, 0, 0)))


def test_conic_through_five_points_of_a_circle():
    pts = [ProjPoint(QQ, q(x, y, 1)) for x, y in ((1, 0), (0, 1), (-1, 0), (0, -1))]
    pts.append(ProjPoint(QQ, [Fraction(3, 5), Fraction(4, 5), Fraction(1)]))
    C = conic_through(pts)
    assert C.rank == 3
    assert all(C.contains(p) for p in pts)
    assert not C.contains(ProjPoint(QQ, q(1, 1, 1)))


@pytest.mark.parametrize("k", [1, 2])
def test_conic_parametrization_over_finite_fields(k):
    F = make_extension(3, k)
    one, zero = F.one, F.zero
    # x^2 + y^2 - z^2
    C = conic_from_coefficients(F, [one, one, F.neg(one), zero, zero, zero])
    par = conic_parametrize(C)
    seen = set()
    for t in list(F.elements()) + [INFINITY]:
        P = par.point(t)
        assert C.contains(P)
        back = par.parameter(P)
        assert (back is INFINITY) if t is INFINITY else F.eq(back, t)
        seen.add(P.normalized())
    assert len(seen) == F.order + 1


def test_singular_conic_is_rejected():
    F = make_extension(3, 1)
    C = conic_from_coefficients(F, [F.one, F.zero, F.zero, F.zero, F.zero, F.zero])
    with pytest.raises(NotSmoothConic):
        conic_parametrize(C)
