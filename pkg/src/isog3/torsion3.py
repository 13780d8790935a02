"""3-torsion secant data for ordinary genus-2 curves in characteristic 3.

For y^2 = f(x) = x^5 + b3 x^3 + b2 x^2 + b1 x + b0, each root a of
X^4 - b2 X - b1 gives a cubic d(x) and a quadratic c(x) with

    d(x)^2 - a f(x) = c(x)^3,

and the two roots of c(x) are the x-coordinates of a pair of points
differing by a 3-torsion point of the reduced kernel.
"""

from dataclasses import dataclass

from .errors import NotAQuarticRoot, NotOrdinary, SingularCurve, UnsupportedCharacteristic
from .field_kernel import (FiniteField, Polynomial, embedding, extension_of, frobenius_cube_root,
                           poly_gcd_squarefree, roots_in_splitting_field)


@dataclass(frozen=True)
class NormalizedQuintic:
    """x^5 + b3 x^3 + b2 x^2 + b1 x + b0, obtained from the input by x -> x + shift."""

    field: FiniteField
    b: tuple
    shift: object

    @property
    def b0(self):
        return self.b[0]

    @property
    def b1(self):
        return self.b[1]

    @property
    def b2(self):
        return self.b[2]

    @property
    def b3(self):
        return self.b[3]

    def polynomial(self, field=None, emb=None):
        F = self.field
        cs = list(self.b) + [F.zero, F.one]
        if field is None:
            return Polynomial(F, cs)
        return Polynomial(field, [emb(c) for c in cs])

    def to_json(self):
        F = self.field
        return {"b": [F.to_json(c) for c in self.b], "shift": F.to_json(self.shift)}


def _require_char3(F):
    if not isinstance(F, FiniteField) or F.characteristic != 3:
        raise UnsupportedCharacteristic("the 3-torsion construction needs a finite field of characteristic 3")


def normalize(f):
    """Shift x so that the x^4 coefficient vanishes (squarefree input only)."""
    if f.degree == 5 and not poly_gcd_squarefree(f)[1]:
        raise SingularCurve("the quintic has a repeated root")
    return depress(f)


def depress(f):
    """The x^4-free shift of a monic quintic, without the squarefree check."""
    F = f.field
    _require_char3(F)
    if f.degree != 5 or not f.is_monic():
        raise SingularCurve("expected a monic quintic")
    shift = F.neg(F.div(f[4], F.from_int(5)))
    g = f.compose(Polynomial(F, [shift, F.one]))
    assert F.is_zero(g[4])
    return NormalizedQuintic(F, tuple(g[i] for i in range(4)), shift)


@dataclass(frozen=True)
class CartierManinMatrix:
    field: FiniteField
    rows: tuple

    @property
    def determinant(self):
        F = self.field
        (a, b), (c, d) = self.rows
        return F.sub(F.mul(a, d), F.mul(b, c))

    def to_json(self):
        return [[self.field.to_json(x) for x in r] for r in self.rows]


def cartier_manin(nq):
    """((b2, b1), (1, 0)) and whether the Jacobian is ordinary (b1 != 0)."""
    F = nq.field
    m = CartierManinMatrix(F, ((nq.b2, nq.b1), (F.one, F.zero)))
    return m, not F.is_zero(nq.b1)


def torsion_quartic(nq, field=None, emb=None):
    F = nq.field
    if field is None:
        return Polynomial(F, [F.neg(nq.b1), F.neg(nq.b2), F.zero, F.zero, F.one])
    return Polynomial(field, [emb(F.neg(nq.b1)), emb(F.neg(nq.b2)), field.zero, field.zero, field.one])


def torsion_quartic_roots(nq):
    """(E, [a1..a4]): the four distinct roots of X^4 - b2 X - b1 (raw values of E)."""
    F = nq.field
    if F.is_zero(nq.b1):
        raise NotOrdinary("b1 = 0: the Cartier-Manin matrix is singular")
    E, roots = roots_in_splitting_field(torsion_quartic(nq))
    assert len(roots) == 4 and all(m == 1 for _, m in roots)
    return E, [r.raw for r, _ in roots]


@dataclass
class TorsionSecantPair:
    """One root a of the quartic with the cubic d and quadratic c it determines.

    ``pair`` holds the two roots of x^2 + c1 x + c0 (in ``pair_field``) or a
    single root when the quadratic is a square (``tangent``)."""

    field: FiniteField
    a: object
    d: tuple
    c: tuple
    pair_field: FiniteField
    pair: tuple
    tangent: bool

    @property
    def c1(self):
        return self.c[0]

    @property
    def c0(self):
        return self.c[1]

    def quadratic(self):
        F = self.field
        return Polynomial(F, [self.c0, self.c1, F.one])

    def cubic(self):
        F = self.field
        d2, d1, d0 = self.d
        return Polynomial(F, [d0, d1, d2, F.one])

    def to_json(self):
        F, E = self.field, self.pair_field
        out = {"a": F.to_json(self.a), "c1": F.to_json(self.c1), "c0": F.to_json(self.c0),
               "d": [F.to_json(x) for x in self.d]}
        if self.tangent:
            out["pair"] = {"tangent_at": E.to_json(self.pair[0])}
        else:
            out["pair"] = [E.to_json(x) for x in self.pair]
        out["field"] = E.descriptor()
        return out


def _quadratic_roots(F, c1, c0):
    """(E, roots, tangent) for x^2 + c1 x + c0 over F."""
    disc = F.sub(F.mul(c1, c1), F.mul(F.from_int(4), c0))
    if F.is_zero(disc):
        root = F.neg(F.div(c1, F.from_int(2)))
        return F, (root,), True
    root = F.sqrt(disc)
    if root is None:
        E, emb = extension_of(F, 2)
        F, c1, disc = E, emb(c1), emb(disc)
        root = F.sqrt(disc)
    half = F.inv(F.from_int(2))
    roots = [F.mul(half, F.add(F.neg(c1), r)) for r in (root, F.neg(root))]
    return F, tuple(sorted(roots, key=F.key)), False


def secant_pair_for_root(a, nq, field=None):
    """Solve d(x)^2 - a f(x) = c(x)^3 for the root a of the quartic.

    ``field`` is the field holding a (defaults to the field of ``nq``); the
    coefficients of nq are embedded into it."""
    F0 = nq.field
    F = field or F0
    _require_char3(F)
    emb = embedding(F0, F)
    b0, b1, b2, b3 = (emb(x) for x in nq.b)
    if F.is_zero(a) or not F.is_zero(torsion_quartic(nq, F, emb).evaluate(a)):
        raise NotAQuarticRoot("a is not a nonzero root of X^4 - b2 X - b1")
    a2 = F.mul(a, a)
    a3 = F.mul(a2, a)
    d2, d1, d0 = F.neg(a), a2, F.sub(b2, a3)
    assert F.eq(b1, F.neg(F.mul(a, d0)))
    ab3 = F.mul(a, b3)
    c1_cubed = F.add(F.sub(a3, ab3), F.div(b1, a))
    assert F.eq(c1_cubed, F.sub(F.sub(a3, ab3), d0))
    c0_cubed = F.sub(F.div(F.mul(b1, b1), a2), F.mul(a, b0))
    c1 = frobenius_cube_root(F.elem(c1_cubed)).raw
    c0 = frobenius_cube_root(F.elem(c0_cubed)).raw
    E, pair, tangent = _quadratic_roots(F, c1, c0)
    return TorsionSecantPair(F, a, (d2, d1, d0), (c1, c0), E, pair, tangent)


def verify_torsion_identity(pair, nq):
    """Expand d(x)^2 - a f(x) - c(x)^3 and check that it is zero."""
    F = pair.field
    f = nq.polynomial(F, embedding(nq.field, F))
    residual = pair.cubic() ** 2 - f.scale(pair.a) - pair.quadratic() ** 3
    return not residual


def torsion_pairs(nq):
    """(E, [TorsionSecantPair] x 4) with E the splitting field of the quartic."""
    E, roots = torsion_quartic_roots(nq)
    return E, [secant_pair_for_root(a, nq, E) for a in roots]
