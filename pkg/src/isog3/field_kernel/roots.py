"""Root finding over finite fields and the fields that contain the roots."""

import functools
import math
import random

from ..errors import FieldMismatch, UnsupportedField, ZeroPolynomial
from .finite import FiniteField, make_extension
from .poly import Polynomial, poly_gcd, squarefree_factorization

# Exhaustive search is used when the target field has at most this many elements.
EXHAUSTIVE_LIMIT = 3 ** 10


def _require_finite(field):
    if not isinstance(field, FiniteField):
        raise UnsupportedField(f"{field} is not a finite field")


def _frobenius_power_x(f, q):
    """x^q mod f."""
    return Polynomial.x(f.field).powmod(q, f)


def distinct_degree_factorization(f):
    """[(g_d, d)]: g_d is the product of the monic irreducible factors of
    degree d of the squarefree polynomial f."""
    F = f.field
    _require_finite(F)
    f = f.monic()
    x = Polynomial.x(F)
    out = []
    h = x % f if f.degree > 0 else x
    d = 1
    while f.degree >= 2 * d:
        h = h.powmod(F.order, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
        d += 1
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _split_linear(g, rng):
    """Distinct roots of a monic g that splits into distinct linear factors."""
    F = g.field
    if g.degree == 0:
        return []
    if g.degree == 1:
        return [F.neg(g.coefficients[0])]
    x = Polynomial.x(F)
    while True:
        delta = F.random(rng)
        if F.p == 2:
            t = Polynomial(F, [F.zero, delta]) % g
            acc = t
            for _ in range(F.n - 1):
                t = (t * t) % g
                acc = acc + t
            h = acc
        else:
            h = (x + Polynomial(F, [delta])).powmod((F.order - 1) // 2, g) - Polynomial(F, [F.one])
        d = poly_gcd(g, h)
        if 0 < d.degree < g.degree:
            return _split_linear(d, rng) + _split_linear(g // d, rng)


def roots_in_field(f):
    """Sorted distinct roots (raw values) of f lying in its coefficient field."""
    F = f.field
    _require_finite(F)
    if not f:
        raise ZeroPolynomial("roots of the zero polynomial")
    if f.degree < 1:
        return []
    if F.order <= EXHAUSTIVE_LIMIT and F.regime in ("prime", "table"):
        values = F.eval_everywhere(list(f.coefficients))
        found = [int(i) for i in (values == 0).nonzero()[0]]
        if F.regime == "prime":
            return found
        return sorted(found, key=F.key)
    g = poly_gcd(f, _frobenius_power_x(f, F.order) - Polynomial.x(F))
    rng = random.Random(0x15063)
    return sorted(_split_linear(g, rng), key=F.key)


class Embedding:
    """Field homomorphism src -> dst fixing the prime field."""

    def __init__(self, src, dst, image_of_generator):
        self.src, self.dst = src, dst
        self.image_of_generator = image_of_generator
        powers = [dst.one]
        for _ in range(src.n - 1):
            powers.append(dst.mul(powers[-1], image_of_generator))
        self._powers = powers
        self._small = [dst.from_int(c) for c in range(src.p)]

    def __call__(self, raw):
        dst = self.dst
        if self.src is dst:
            return raw
        acc = dst.zero
        for c, pw in zip(self.src.coeffs(raw), self._powers):
            if c:
                acc = dst.add(acc, pw if c == 1 else dst.mul(self._small[c], pw))
        return acc

    def element(self, x):
        return self.dst.elem(self(x.raw))

    def poly(self, f):
        return f.map(self, self.dst)


@functools.lru_cache(maxsize=None)
def embedding(src, dst):
    """The deterministic embedding: u maps to the smallest root of src's modulus."""
    _require_finite(src)
    _require_finite(dst)
    if src.p != dst.p:
        raise FieldMismatch("fields of different characteristic")
    if dst.n % src.n:
        raise FieldMismatch(f"{src} does not embed in {dst}")
    if src is dst:
        return Embedding(src, dst, dst.generator())
    if src.n == 1:
        return Embedding(src, dst, dst.zero)
    mod = Polynomial(dst, [dst.from_int(c) for c in src.modulus])
    return Embedding(src, dst, roots_in_field(mod)[0])


def compose_fields(E1, E2):
    """(E, emb1, emb2) with E of degree lcm over the prime field."""
    _require_finite(E1)
    _require_finite(E2)
    if E1.p != E2.p:
        raise FieldMismatch("fields of different characteristic")
    L = math.lcm(E1.n, E2.n)
    if E1.n == L:
        E = E1
    elif E2.n == L:
        E = E2
    else:
        E = make_extension(E1.p, L)
    return E, embedding(E1, E), embedding(E2, E)


def extension_of(F, d):
    """The default field of degree d over F (with the embedding of F)."""
    E = F if d == 1 else make_extension(F.p, F.n * d)
    return E, embedding(F, E)


def factor_degree_pattern(f):
    """Sorted degrees of the irreducible factors (with repetition) of f."""
    degrees = []
    for g, m in squarefree_factorization(f):
        for h, d in distinct_degree_factorization(g):
            degrees += [d] * (h.degree // d) * m
    return sorted(degrees)


def splitting_degree(f):
    pattern = factor_degree_pattern(f)
    return math.lcm(*pattern) if pattern else 1


def roots_in_splitting_field(f):
    """(E, [(root, multiplicity)]) where E is the smallest extension of the
    coefficient field containing every root; roots are FieldElements of E
    sorted in the canonical order."""
    F = f.field
    _require_finite(F)
    if not f:
        raise ZeroPolynomial("roots of the zero polynomial")
    parts = squarefree_factorization(f)
    degrees = []
    for g, _ in parts:
        degrees += [d for _, d in distinct_degree_factorization(g)]
    E, emb = extension_of(F, math.lcm(*degrees) if degrees else 1)
    out = []
    for g, m in parts:
        for r in roots_in_field(emb.poly(g)):
            out.append((r, m))
    out.sort(key=lambda t: E.key(t[0]))
    return E, [(E.elem(r), m) for r, m in out]
