import itertools
import random
from fractions import Fraction

import pytest
import sympy

from isog3.errors import SingularCurve, UnsupportedCharacteristic
from isog3.field_kernel import QQ, Polynomial, complex_field, make_extension, resultant_discriminant
from isog3.genus2_curves import (SALMON_DEGREE, SALMON_PRINTED, Genus2Curve, branch_points,
                                 find_mobius, find_salmon_corrections, frobenius_twist,
                                 is_isomorphic, mobius_apply, quintic_model, salmon_discriminant,
                                 salmon_quintic, salmon_verification, weight)
from isog3.projective_geometry import INFINITY


def moebius_transform(f, M):
    """(cx + d)^6 f((ax + b)/(cx + d)) as a polynomial."""
    F = f.field
    (a, b), (c, d) = M
    num = Polynomial(F, [b, a])
    den = Polynomial(F, [d, c])
    out = Polynomial(F, [F.zero])
    for i, coef in enumerate(f.coefficients):
        out = out + (num ** i * den ** (6 - i)).scale(coef)
    return out


def random_curve(F, rng):
    while True:
        f = Polynomial(F, [F.random(rng) for _ in range(5)] + [F.one])
        try:
            return Genus2Curve(f)
        except SingularCurve:
            continue


def test_singular_and_char2_rejected():
    F = make_extension(3, 1)
    with pytest.raises(SingularCurve):
        Genus2Curve(Polynomial(F, [F.zero, F.zero, F.one, F.zero, F.zero, F.one]))
    with pytest.raises(SingularCurve):
        Genus2Curve(Polynomial(F, [F.one, F.one, F.one]))
    G = make_extension(2, 1)
    with pytest.raises(UnsupportedCharacteristic):
        Genus2Curve(Polynomial(G, [G.one] * 6))


@pytest.mark.parametrize("k", [1, 2])
def test_moebius_images_are_isomorphic(k):
    F = make_extension(3, k)
    rng = random.Random(10 + k)
    for _ in range(5):
        C = random_curve(F, rng)
        while True:
            M = [[F.random(rng), F.random(rng)], [F.random(rng), F.random(rng)]]
            if not F.is_zero(F.sub(F.mul(M[0][0], M[1][1]), F.mul(M[0][1], M[1][0]))):
                break
        D = Genus2Curve(moebius_transform(C.f, M))
        assert is_isomorphic(C, D) is not None
        assert is_isomorphic(D, C) is not None


def cross_ratio_multiset(F, pts):
    """Sorted cross-ratios of all ordered 4-tuples: a Moebius invariant."""
    def h(t):
        return (F.one, F.zero) if t is INFINITY else (t, F.one)

    def br(u, v):
        return F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0]))

    out = []
    for a, b, c, d in itertools.permutations([h(t) for t in pts], 4):
        out.append(F.div(F.mul(br(a, c), br(b, d)), F.mul(br(a, d), br(b, c))))
    return sorted(out)


def test_isomorphism_agrees_with_cross_ratio_invariant():
    F = make_extension(3, 1)
    rng = random.Random(24)
    curves = [random_curve(F, rng) for _ in range(9)]
    seen_non_iso = 0
    for C1, C2 in itertools.combinations(curves, 2):
        E1, B1 = branch_points(C1)
        E2, B2 = branch_points(C2)
        if E1 is not E2:
            continue
        same = cross_ratio_multiset(E1, B1.points) == cross_ratio_multiset(E2, B2.points)
        witness = is_isomorphic(C1, C2)
        if witness is not None:
            assert same
        if not same:
            assert witness is None
            seen_non_iso += 1
    assert seen_non_iso > 0


def test_witness_maps_branch_sets():
    F = make_extension(3, 2)
    rng = random.Random(20)
    C = random_curve(F, rng)
    E, B = branch_points(C)
    M = find_mobius(E, B.points, B.points)
    assert M is not None
    images = {("oo" if t is INFINITY else t) for t in (mobius_apply(E, M, p) for p in B.points)}
    assert images == {("oo" if t is INFINITY else t) for t in B.points}


def test_quintic_model_of_sextic():
    F = make_extension(3, 2)
    rng = random.Random(21)
    C = random_curve(F, rng)
    a = F.random(rng)
    D = Genus2Curve(moebius_transform(C.f, [[F.one, F.zero], [F.one, a]]))
    Q = quintic_model(D)
    assert Q.f.degree == 5 and Q.f.is_monic()
    assert is_isomorphic(Q, C) is not None


def test_frobenius_twist_applies_frobenius_to_coefficients():
    F = make_extension(3, 2)
    C = random_curve(F, random.Random(22))
    T = frobenius_twist(C)
    assert all(F.eq(t, F.pow(c, 3)) for t, c in zip(T.f.coefficients, C.f.coefficients))
    twice = frobenius_twist(T)
    assert twice.f == C.f


def test_branch_points_over_rationals_and_complex():
    roots = [Fraction(-2), Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(3)]
    f = Polynomial.from_roots(QQ, roots)
    E, B = branch_points(Genus2Curve(f))
    assert B.points[:5] == sorted(roots) and B.points[5] is INFINITY
    CC = complex_field(50)
    g = f.map(CC.convert, CC)
    _, Bc = branch_points(Genus2Curve(g, check=False))
    assert max(abs(complex(z) - float(r)) for z, r in zip(Bc.points[:5], sorted(roots))) < 1e-30


# ------------------------------------------------------------------ Salmon

def test_printed_formula_has_three_misweighted_terms():
    bad = [e for _, e in SALMON_PRINTED if weight(e) != SALMON_DEGREE]
    assert len(SALMON_PRINTED) == 19 and len(bad) == 3


def test_salmon_corrections_are_unique_and_proportional():
    report = find_salmon_corrections()
    assert report.scale == Fraction(1, 3125)
    assert all(weight(e) == SALMON_DEGREE for _, e in report.terms)
    assert len(report.corrections) == 3


def test_salmon_against_sympy_discriminant():
    a, b, c, d, x = sympy.symbols("a b c d x")
    disc = sympy.discriminant(x ** 5 + 10 * a * x ** 3 + 10 * b * x ** 2 + 5 * c * x + d, x)
    rng = random.Random(23)
    for _ in range(10):
        vals = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(4)]
        expected = disc.subs(dict(zip((a, b, c, d), [sympy.Rational(v.numerator, v.denominator)
                                                     for v in vals])))
        expected = Fraction(int(expected.p), int(expected.q))
        assert salmon_discriminant(*vals) * 3125 == expected
        assert resultant_discriminant(salmon_quintic(QQ, *vals)) == expected


def test_printed_salmon_is_not_proportional():
    vals = [Fraction(1), Fraction(2), Fraction(-1), Fraction(3)]
    other = [Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(1)]
    r1 = salmon_discriminant(*vals, corrected=False) / resultant_discriminant(salmon_quintic(QQ, *vals))
    r2 = salmon_discriminant(*other, corrected=False) / resultant_discriminant(salmon_quintic(QQ, *other))
    assert r1 != r2


def test_salmon_rejects_positive_characteristic():
    F = make_extension(3, 1)
    with pytest.raises(UnsupportedCharacteristic):
        salmon_discriminant(1, 1, 1, 1, field=F)


def test_salmon_verification_report():
    rep = salmon_verification(agreements=20, homogeneity=10, seed=4)
    assert rep["passed"] and rep["agreements"] == 20 and rep["homogeneity_passes"] == 10
    assert rep["lambda"] == "1/3125"
