import random

import pytest

from isog3.errors import NotAQuarticRoot, NotOrdinary, SingularCurve, UnsupportedCharacteristic
from isog3.field_kernel import Polynomial, embedding, make_extension
from isog3.torsion3 import (cartier_manin, depress, normalize, secant_pair_for_root,
                            torsion_pairs, torsion_quartic_roots, verify_torsion_identity)


def random_ordinary(F, rng):
    while True:
        f = Polynomial(F, [F.random(rng) for _ in range(5)] + [F.one])
        try:
            nq = normalize(f)
        except SingularCurve:
            continue
        if cartier_manin(nq)[1]:
            return f, nq


def horner(F, cs, x):
    acc = F.zero
    for c in reversed(cs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def test_depress_removes_quartic_term():
    F = make_extension(3, 2)
    rng = random.Random(1)
    for _ in range(10):
        f = Polynomial(F, [F.random(rng) for _ in range(5)] + [F.one])
        nq = depress(f)
        # nq(x) = f(x + shift) at every point
        g = nq.polynomial()
        for t in list(F.elements())[:5]:
            assert F.eq(g.evaluate(t), f.evaluate(F.add(t, nq.shift)))


def test_normalize_rejects_repeated_roots():
    F = make_extension(3, 1)
    f = Polynomial(F, [F.zero, F.zero, F.zero, F.zero, F.one, F.one])  # x^5 + x^4
    with pytest.raises(SingularCurve):
        normalize(f)
    assert depress(f).b is not None


def test_requires_characteristic_three():
    F = make_extension(5, 1)
    with pytest.raises(UnsupportedCharacteristic):
        depress(Polynomial(F, [F.one] * 6))


def test_supersingular_rejected():
    F = make_extension(3, 1)
    nq = normalize(Polynomial(F, [F.one, F.zero, F.zero, F.zero, F.zero, F.one]))  # x^5 + 1
    assert not cartier_manin(nq)[1]
    with pytest.raises(NotOrdinary):
        torsion_quartic_roots(nq)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_identity_by_pointwise_evaluation(k):
    """d^2 - a f - c^3 has degree <= 6 and vanishes at 7+ points, so it is 0."""
    F = make_extension(3, k)
    rng = random.Random(30 + k)
    for _ in range(6):
        f, nq = random_ordinary(F, rng)
        E, pairs = torsion_pairs(nq)
        assert len(pairs) == 4 and len({p.a for p in pairs}) == 4
        assert E.n <= 4 * k
        emb = embedding(F, E)
        fcs = [emb(c) for c in nq.polynomial().coefficients]
        points = list(E.elements())[:9] if E.order < 10 ** 4 else [E.element_at(i) for i in range(9)]
        for pr in pairs:
            d2, d1, d0 = pr.d
            for t in points:
                d = horner(E, [d0, d1, d2, E.one], t)
                c = horner(E, [pr.c0, pr.c1, E.one], t)
                lhs = E.sub(E.mul(d, d), E.mul(pr.a, horner(E, fcs, t)))
                assert E.eq(lhs, E.pow(c, 3))
            assert verify_torsion_identity(pr, nq)


def test_pair_points_are_roots_of_the_quadratic():
    F = make_extension(3, 2)
    f, nq = random_ordinary(F, random.Random(40))
    _, pairs = torsion_pairs(nq)
    for pr in pairs:
        G = pr.pair_field
        emb = embedding(pr.field, G)
        quad = Polynomial(G, [emb(pr.c0), emb(pr.c1), G.one])
        assert all(G.is_zero(quad.evaluate(u)) for u in pr.pair)


def test_non_root_rejected():
    F = make_extension(3, 1)
    nq = normalize(Polynomial(F, [F.zero, F.one, F.zero, F.zero, F.zero, F.one]))  # x^5 + x
    E, roots = torsion_quartic_roots(nq)
    bad = next(a for a in E.elements() if a not in roots)
    with pytest.raises(NotAQuarticRoot):
        secant_pair_for_root(bad, nq, E)
