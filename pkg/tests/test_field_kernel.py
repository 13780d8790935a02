import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy

from isog3.errors import InvalidInput, ModulusNotIrreducible, UnsupportedCharacteristic
from isog3.field_kernel import (QQ, Polynomial, complex_field, eisenstein_field, embedding,
                                extension_of, factor_degree_pattern, frobenius_cube_root,
                                make_extension, poly_gcd_squarefree, polynomial_roots, prime_power,
                                resultant, resultant_discriminant, roots_in_field,
                                roots_in_splitting_field, splitting_degree)

x_sym = sympy.Symbol("x")


def sympy_mul_mod(F, a, b):
    """Oracle product in F_p[t]/(modulus) using sympy's GF(p) polynomials."""
    mod = sympy.Poly(list(reversed(F.modulus)), x_sym, modulus=F.p)
    pa = sympy.Poly(list(reversed(F.coeffs(a))), x_sym, modulus=F.p)
    pb = sympy.Poly(list(reversed(F.coeffs(b))), x_sym, modulus=F.p)
    r = (pa * pb).rem(mod)
    coeffs = [int(c) % F.p for c in reversed(r.all_coeffs())]
    return coeffs + [0] * (F.n - len(coeffs))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_multiplication_matches_sympy(k):
    F = make_extension(3, k)
    rng = random.Random(k)
    for _ in range(40):
        a, b = F.random(rng), F.random(rng)
        assert list(F.coeffs(F.mul(a, b))) == sympy_mul_mod(F, a, b)


@pytest.mark.parametrize("p,k", [(3, 1), (3, 2), (3, 5), (5, 2), (7, 3)])
def test_field_axioms(p, k):
    F = make_extension(p, k)
    rng = random.Random(p * 10 + k)
    for _ in range(30):
        a, b, c = F.random(rng), F.random(rng), F.random(rng)
        assert F.eq(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
        assert F.eq(F.sub(F.add(a, b), b), a)
        if not F.is_zero(a):
            assert F.eq(F.mul(a, F.inv(a)), F.one)
            assert F.eq(F.pow(a, F.order - 1), F.one)


def test_element_codes_are_base_p_digits():
    F = make_extension(3, 2)
    assert list(F.coeffs(F.element_at(5))) == [2, 1]
    assert len({F.element_at(i) for i in range(9)}) == 9


def test_modulus_validation():
    with pytest.raises(ModulusNotIrreducible):
        make_extension(3, 2, [2, 0, 1])   # x^2 - 1
    with pytest.raises(InvalidInput):
        make_extension(3, 2, [1, 1])
    with pytest.raises(InvalidInput):
        make_extension(4, 1)
    assert prime_power(27) == (3, 3)
    with pytest.raises(InvalidInput):
        prime_power(12)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_frobenius_cube_root(k):
    F = make_extension(3, k)
    for a in F.elements():
        r = frobenius_cube_root(F.elem(a)).raw
        assert F.eq(F.pow(r, 3), a)


def test_cube_root_needs_char3():
    F = make_extension(5, 1)
    with pytest.raises(UnsupportedCharacteristic):
        frobenius_cube_root(F.elem(F.one))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_sqrt(k):
    F = make_extension(3, k)
    squares = {F.mul(a, a) for a in F.elements()}
    for a in F.elements():
        r = F.sqrt(a)
        if a in squares:
            assert F.eq(F.mul(r, r), a)
        else:
            assert r is None


def test_roots_against_brute_force():
    F = make_extension(3, 2)
    rng = random.Random(3)
    for _ in range(30):
        f = Polynomial(F, [F.random(rng) for _ in range(5)] + [F.one])
        brute = sorted(a for a in F.elements() if F.is_zero(f.evaluate(a)))
        assert sorted(roots_in_field(f)) == brute


def test_factor_degree_pattern_matches_sympy():
    F = make_extension(3, 1)
    rng = random.Random(4)
    for _ in range(30):
        cs = [rng.randrange(3) for _ in range(6)] + [1]
        f = Polynomial(F, [F.from_int(c) for c in cs])
        if not poly_gcd_squarefree(f)[1]:
            continue
        fac = sympy.Poly(list(reversed(cs)), x_sym, modulus=3).factor_list()[1]
        expected = sorted(g.degree() for g, m in fac for _ in range(m))
        assert sorted(factor_degree_pattern(f)) == expected


def test_splitting_field_contains_all_roots():
    F = make_extension(3, 1)
    f = Polynomial(F, [F.from_int(c) for c in (1, 2, 0, 0, 1)])  # x^4 + 2x + 1
    E, roots = roots_in_splitting_field(f)
    emb = embedding(F, E)
    g = emb.poly(f)
    assert E.n == F.n * splitting_degree(f)
    assert len(roots) == 4
    assert all(E.is_zero(g.evaluate(r.raw)) for r, _ in roots)


def test_embeddings_are_ring_maps():
    F = make_extension(3, 2)
    E, emb = extension_of(F, 3)
    assert E.n == 6
    rng = random.Random(5)
    for _ in range(20):
        a, b = F.random(rng), F.random(rng)
        assert E.eq(emb(F.mul(a, b)), E.mul(emb(a), emb(b)))
        assert E.eq(emb(F.add(a, b)), E.add(emb(a), emb(b)))


def test_resultant_discriminant_matches_sympy():
    rng = random.Random(6)
    for _ in range(15):
        cs = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(5)] + [Fraction(1)]
        f = Polynomial(QQ, cs)
        expected = sympy.discriminant(sum(sympy.Rational(c.numerator, c.denominator) * x_sym ** i
                                          for i, c in enumerate(cs)), x_sym)
        assert resultant_discriminant(f) == Fraction(int(expected.p), int(expected.q))


def test_resultant_matches_sympy():
    f = Polynomial(QQ, [Fraction(c) for c in (1, 0, 2, 1)])
    g = Polynomial(QQ, [Fraction(c) for c in (-3, 1, 1)])
    expected = sympy.resultant(1 + 2 * x_sym ** 2 + x_sym ** 3, -3 + x_sym + x_sym ** 2)
    assert resultant(f, g) == int(expected)


def test_eisenstein_field():
    K = eisenstein_field()
    eta = K.generator()
    assert K.eq(K.add(K.add(K.one, eta), K.mul(eta, eta)), K.zero)
    assert K.eq(K.pow(eta, 3), K.one)
    rng = random.Random(7)
    for _ in range(10):
        a = K.random(rng)
        if not K.is_zero(a):
            assert K.eq(K.mul(a, K.inv(a)), K.one)


def test_polynomial_roots_against_numpy():
    F = complex_field(60)
    rng = np.random.default_rng(8)
    for _ in range(5):
        cs = [int(v) for v in rng.integers(-9, 10, size=7)]
        cs[-1] = 1
        roots = polynomial_roots(F, [F.convert(c) for c in cs])
        ref = sorted(np.roots(list(reversed(cs))), key=lambda z: (z.real, z.imag))
        got = sorted((complex(r) for r in roots), key=lambda z: (z.real, z.imag))
        assert np.allclose(got, ref, atol=1e-8)
        for r in roots:
            assert abs(mpmath.polyval(list(reversed(cs)), r)) < mpmath.mpf(10) ** -45
