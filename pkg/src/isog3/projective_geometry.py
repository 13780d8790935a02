"""Projective linear algebra: points, subspaces, rational normal curves,
projections and conics, over exact fields or big-complex numbers."""

from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import (DegenerateBundle, DegeneratePointSet, LineInHyperplane, NoConic,
                     NotSmoothConic, ProjectionCenter)


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "oo"

    def __reduce__(self):
        return (_infinity, ())


INFINITY = _Infinity()


def _infinity():
    return INFINITY


def is_infinite(t):
    return t is INFINITY


class ProjPoint:
    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        coords = tuple(coords)
        if all(field.is_zero(c) for c in coords):
            raise ValueError("projective point with all coordinates zero")
        self.field = field
        self.coords = coords

    @property
    def dimension(self):
        return len(self.coords) - 1

    def normalized(self):
        F = self.field
        if F.exact:
            lead = next(c for c in self.coords if not F.is_zero(c))
        else:
            lead = max(self.coords, key=abs)
        inv = F.inv(lead)
        return tuple(F.mul(inv, c) for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint) or other.field is not self.field:
            return NotImplemented
        F = self.field
        return all(F.eq(a, b) for a, b in zip(self.normalized(), other.normalized()))

    def __hash__(self):
        return hash(self.normalized()) if self.field.exact else 0

    def __repr__(self):
        return "(" + " : ".join(self.field.format(c) for c in self.coords) + ")"

    def to_json(self):
        return [self.field.to_json(c) for c in self.coords]


@dataclass
class LinearSubspace:
    """Row-reduced basis of a linear subspace of P^n."""

    field: object
    ambient: int
    rows: list
    pivots: list
    _equations: list = dc_field(default=None, repr=False)

    @classmethod
    def from_vectors(cls, field, vectors, ambient=None):
        vectors = [list(v) for v in vectors]
        n = ambient if ambient is not None else len(vectors[0]) - 1
        rows, pivots = linalg.rref(field, vectors)
        return cls(field, n, rows, pivots)

    @property
    def rank(self):
        return len(self.rows)

    @property
    def dimension(self):
        return self.rank - 1

    @property
    def equations(self):
        """Linear forms cutting out the subspace (basis of the annihilator)."""
        if self._equations is None:
            if self.field.exact:
                self._equations = linalg.kernel(self.field, self.rows, self.ambient + 1)
            else:
                self._equations = linalg.numeric_kernel(
                    self.field, self.rows, dim=self.ambient + 1 - self.rank)
        return self._equations

    def contains(self, point):
        coords = point.coords if isinstance(point, ProjPoint) else point
        F = self.field
        if F.exact:
            return linalg.solve_in_span(F, self.rows, self.pivots, coords) is not None
        return linalg.numeric_rank(F, self.rows + [list(coords)]) == self.rank

    def to_json(self):
        return [[self.field.to_json(c) for c in r] for r in self.rows]


@dataclass
class ConicForm:
    """Symmetric 3x3 matrix up to scalar, with the plane it lives in."""

    field: object
    matrix: list
    rank: int
    plane: LinearSubspace = None

    def value(self, v):
        F = self.field
        return F.dot(v, linalg.mat_vec(F, self.matrix, v))

    def bilinear(self, u, v):
        F = self.field
        return F.dot(u, linalg.mat_vec(F, self.matrix, v))

    def plane_coordinates(self, point):
        coords = point.coords if isinstance(point, ProjPoint) else point
        if self.plane is None:
            return list(coords)
        return [coords[p] for p in self.plane.pivots]

    def contains(self, point):
        return self.field.is_zero(self.value(self.plane_coordinates(point)))

    def to_json(self):
        return [[self.field.to_json(c) for c in r] for r in self.matrix]


def veronese_embed(field, t, d):
    """(1, t, ..., t^d), or (0, ..., 0, 1) at infinity."""
    if is_infinite(t):
        return ProjPoint(field, [field.zero] * d + [field.one])
    coords = [field.one]
    for _ in range(d):
        coords.append(field.mul(coords[-1], t))
    return ProjPoint(field, coords)


def span(points):
    """(LinearSubspace, rank) of the span of a nonempty list of points."""
    F = points[0].field
    sub = LinearSubspace.from_vectors(F, [p.coords for p in points])
    if not F.exact:
        r = linalg.numeric_rank(F, [p.coords for p in points])
        if r != sub.rank:
            sub = _numeric_span(F, points, r)
    return sub, sub.rank


def _numeric_span(F, points, r):
    rows = [list(p.coords) for p in points]
    sub = LinearSubspace.from_vectors(F, rows)
    sub.rows, sub.pivots = sub.rows[:r], sub.pivots[:r]
    return sub


def hyperplane_through_six(points):
    """The unique hyperplane of P^6 through six points of rank 6."""
    F = points[0].field
    rows = [list(p.coords) for p in points]
    sub, r = span(points)
    if r != len(points[0].coords) - 1:
        raise DegeneratePointSet(f"six points of rank {r}, expected {len(points[0].coords) - 1}")
    if F.exact:
        eqs = linalg.kernel(F, rows)
    else:
        eqs = linalg.numeric_kernel(F, rows, dim=1)
    sub._equations = eqs
    return sub


def line_meet_hyperplane(line, H):
    F = line.field
    h = H.equations[0]
    l1, l2 = line.rows[0], line.rows[1]
    a, b = F.dot(h, l1), F.dot(h, l2)
    if F.is_zero(a) and F.is_zero(b):
        raise LineInHyperplane("secant line lies inside the hyperplane")
    return ProjPoint(F, [F.sub(F.mul(b, x), F.mul(a, y)) for x, y in zip(l1, l2)])


def tangent_line_rnc(field, t, d):
    """Tangent line to the degree-d rational normal curve at parameter t."""
    F = field
    if is_infinite(t):
        pt = [F.zero] * d + [F.one]
        direction = [F.zero] * (d - 1) + [F.one, F.zero]
    else:
        pt = list(veronese_embed(F, t, d).coords)
        direction = [F.zero] + [F.mul(F.from_int(k), pt[k - 1]) for k in range(1, d + 1)]
    return LinearSubspace.from_vectors(F, [pt, direction])


def secant_line_rnc(field, u, v, d):
    """Secant through two parameters (tangent line when they coincide)."""
    if u is v or (not is_infinite(u) and not is_infinite(v) and field.eq(u, v)):
        return tangent_line_rnc(field, u, d)
    return LinearSubspace.from_vectors(
        field, [veronese_embed(field, u, d).coords, veronese_embed(field, v, d).coords])


def project_from(L, q):
    """Image of q under projection from L onto the non-pivot coordinate axes."""
    F = L.field
    v = list(q.coords if isinstance(q, ProjPoint) else q)
    for row, p in zip(L.rows, L.pivots):
        c = v[p]
        if not F.is_zero(c):
            v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
    image = [v[i] for i in range(L.ambient + 1) if i not in L.pivots]
    if all(F.is_zero(x) for x in image):
        raise ProjectionCenter("point lies in the projection centre")
    return ProjPoint(F, image)


def _conic_monomials(F, v):
    x, y, z = v
    return [F.mul(x, x), F.mul(y, y), F.mul(z, z), F.mul(x, y), F.mul(x, z), F.mul(y, z)]


def conic_from_coefficients(F, c, plane=None):
    half = F.inv(F.from_int(2))
    cxy, cxz, cyz = (F.mul(half, c[3]), F.mul(half, c[4]), F.mul(half, c[5]))
    matrix = [[c[0], cxy, cxz], [cxy, c[1], cyz], [cxz, cyz, c[2]]]
    return ConicForm(F, matrix, linalg.rank(F, matrix), plane)


def conic_through(points):
    """The conic through >= 5 points spanning a plane."""
    F = points[0].field
    plane, r = span(points)
    if r != 3:
        raise DegeneratePointSet(f"points span rank {r}, expected a plane (rank 3)")
    coords = [[p.coords[i] for i in plane.pivots] for p in points]
    system = [_conic_monomials(F, v) for v in coords]
    if F.exact:
        ker = linalg.kernel(F, system)
    else:
        ker = linalg.numeric_kernel(F, system)
    if not ker:
        raise NoConic("the points lie on no conic")
    if len(ker) > 1:
        raise DegenerateBundle(f"{len(ker)}-dimensional family of conics")
    return conic_from_coefficients(F, ker[0], plane)


def _det3(F, a, b, c):
    return linalg.det(F, [list(a), list(b), list(c)])


class ConicParametrization:
    """Pencil of lines through a point q0 of a smooth conic.

    ``point(t)`` is the second intersection of the line through q0 and
    P0 + t*P1; P1 lies on the tangent at q0, so q0 has parameter infinity."""

    def __init__(self, conic, q0, p0, p1):
        self.conic, self.q0, self.p0, self.p1 = conic, q0, p0, p1
        self.field = conic.field

    def point(self, t):
        F = self.field
        if is_infinite(t):
            return ProjPoint(F, self.q0)
        r = [F.add(a, F.mul(t, b)) for a, b in zip(self.p0, self.p1)]
        qr = self.conic.value(r)
        br = F.mul(F.from_int(2), self.conic.bilinear(self.q0, r))
        return ProjPoint(F, [F.sub(F.mul(qr, a), F.mul(br, b)) for a, b in zip(self.q0, r)])

    def parameter(self, v):
        F = self.field
        coords = v.coords if isinstance(v, ProjPoint) else v
        num = _det3(F, self.q0, coords, self.p0)
        den = _det3(F, self.q0, coords, self.p1)
        if F.is_zero(den):
            return INFINITY
        return F.neg(F.div(num, den))

    def to_json(self):
        F = self.field
        return {"base_point": [F.to_json(c) for c in self.q0],
                "line_points": [[F.to_json(c) for c in self.p0], [F.to_json(c) for c in self.p1]]}


def _candidate_lines(F):
    one, zero = F.one, F.zero
    yield [zero, zero, one], [zero, one, zero]
    if F.exact:
        index = 0
        while True:
            t = F.element_at(index)
            yield [one, t, zero], [zero, zero, one]
            index += 1
            if index >= F.order:
                return
    else:
        for k in range(8):
            yield [one, F.from_int(k), zero], [zero, zero, one]


def rational_point(conic):
    """A point on a smooth conic, found by a deterministic search over lines."""
    F = conic.field
    for P, R in _candidate_lines(F):
        qp, qr = conic.value(P), conic.value(R)
        b = conic.bilinear(P, R)
        if F.is_zero(qr):
            if F.is_zero(b) and not F.is_zero(qp):
                continue
            if F.is_zero(b):
                return P
            return R
        disc = F.sub(F.mul(b, b), F.mul(qp, qr))
        root = F.sqrt(disc)
        if root is None:
            continue
        s = F.div(F.sub(root, b), qr)
        return [F.add(x, F.mul(s, y)) for x, y in zip(P, R)]
    raise NotSmoothConic("no rational point found")


def conic_parametrize(conic):
    F = conic.field
    if conic.rank < 3:
        raise NotSmoothConic(f"conic of rank {conic.rank}")
    q0 = rational_point(conic)
    tangent = linalg.mat_vec(F, conic.matrix, q0)
    # p1: a point of the tangent line other than q0; p0: completes a basis
    candidates = linalg.kernel(F, [tangent]) if F.exact else linalg.numeric_kernel(F, [tangent], dim=2)
    p1 = max(candidates, key=lambda v: _independence(F, [q0, v]))
    basis = [[F.one if i == j else F.zero for i in range(3)] for j in range(3)]
    p0 = max(basis, key=lambda v: _independence(F, [q0, p1, v]))
    return ConicParametrization(conic, q0, p0, p1)


def _independence(F, vectors):
    if F.exact:
        return linalg.rank(F, vectors)
    if len(vectors) == 3:
        return abs(linalg.det(F, vectors))
    a, b = vectors
    return max(abs(F.sub(F.mul(a[i], b[j]), F.mul(a[j], b[i]))) for i in range(3) for j in range(3))
