import random

import pytest

from isog3.errors import NotOrdinary, UnsupportedField
from isog3.field_kernel import QQ, Polynomial, make_extension
from isog3.genus2_curves import Genus2Curve, frobenius_twist, is_isomorphic
from isog3.isogeny_pipeline import frobenius_certify, isogenous_curve_char3
from isog3.torsion3 import cartier_manin, normalize

from test_genus2_curves import moebius_transform


def curve_from_codes(F, codes):
    return Genus2Curve(Polynomial(F, [F.element_at(c) for c in codes] + [F.one]))


def random_ordinary_curve(F, rng):
    while True:
        f = Polynomial(F, [F.random(rng) for _ in range(5)] + [F.one])
        try:
            C = Genus2Curve(f)
        except Exception:
            continue
        if cartier_manin(normalize(f))[1]:
            return C


def test_x5_plus_x_over_f3_is_self_isogenous():
    F = make_extension(3, 1)
    C = curve_from_codes(F, [0, 1, 0, 0, 0])
    result, cert = isogenous_curve_char3(C)
    assert cert.passed() and result.is_curve
    assert is_isomorphic(result.curve, C) is not None
    assert frobenius_certify(C, result)


@pytest.mark.parametrize("k", [1, 2])
def test_descended_and_explicit_routes_agree(k):
    # the explicit route works in the compositum of all root fields, which
    # grows quickly with k; k <= 2 keeps it at desk scale
    F = make_extension(3, k)
    rng = random.Random(50 + k)
    for _ in range(3):
        C = random_ordinary_curve(F, rng)
        r1, c1 = isogenous_curve_char3(C, "descended")
        r2, c2 = isogenous_curve_char3(C, "explicit")
        assert c1.passed() and c2.passed()
        assert is_isomorphic(r1.curve, r2.curve) is not None
        assert is_isomorphic(frobenius_twist(r1.curve), C) is not None


@pytest.mark.parametrize("k", [3, 4])
def test_descended_route_certifies(k):
    F = make_extension(3, k)
    rng = random.Random(70 + k)
    for _ in range(4):
        C = random_ordinary_curve(F, rng)
        result, cert = isogenous_curve_char3(C)
        assert cert.ranks["weierstrass"] == 6
        assert cert.ranks["intersections"] == 3 and cert.ranks["projected"] == 3
        assert frobenius_certify(C, result)


def test_isomorphic_inputs_give_isomorphic_outputs():
    F = make_extension(3, 2)
    rng = random.Random(60)
    C = random_ordinary_curve(F, rng)
    D = Genus2Curve(moebius_transform(C.f, [[F.one, F.element_at(4)], [F.zero, F.element_at(2)]]))
    rc, _ = isogenous_curve_char3(C)
    rd, _ = isogenous_curve_char3(D)
    assert is_isomorphic(rc.curve, rd.curve) is not None


def test_certificate_serializes():
    F = make_extension(3, 2)
    C = random_ordinary_curve(F, random.Random(61))
    result, cert = isogenous_curve_char3(C)
    js = cert.to_json()
    assert js["passed"] and js["ranks"]["weierstrass"] == 6
    assert "curve" in result.to_json()


def test_rejections():
    F = make_extension(3, 1)
    with pytest.raises(NotOrdinary):
        isogenous_curve_char3(curve_from_codes(F, [1, 0, 0, 0, 0]))   # x^5 + 1
    rationals = Genus2Curve(Polynomial(QQ, [QQ.from_int(c) for c in (0, 1, 0, 0, 0, 1)]))
    with pytest.raises(UnsupportedField):
        isogenous_curve_char3(rationals)
    with pytest.raises(ValueError):
        isogenous_curve_char3(curve_from_codes(F, [0, 1, 0, 0, 0]), method="other")
