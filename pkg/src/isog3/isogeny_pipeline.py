"""The secant construction for p = 3: from the six Weierstrass points and
the four 3-torsion secants on the sextic rational normal curve in P^6 to the
isogenous curve C'.

Two routes are provided.  ``run_p3`` is the literal construction over one
field holding every point (a finite compositum, or big-complex numbers).
``isogenous_curve_char3`` by default runs the same construction
Galois-equivariantly over the base field: the Weierstrass points are handled
as the generic root of f in F_q[x]/(f), the secants as the generic root of the
torsion quartic T in F_q[X]/(T), so nothing has to be split.
"""

from dataclasses import dataclass, field as dc_field
from math import lcm

from . import linalg
from .errors import (CoplanarityViolated, DegenerateBundle, DegenerateConfiguration, DegenerateConic,
                     DegeneratePointSet, LineInHyperplane, NotOrdinary,
                     NotSmoothConic, ProjectionCenter, UnsupportedField)
from .field_kernel import (FiniteField, Polynomial, embedding, extension_of,
                           factor_degree_pattern, poly_gcd, poly_gcd_squarefree, roots_in_field)
from .genus2_curves import (BranchSet, EllipticPair, Genus2Curve, frobenius_twist, is_isomorphic,
                            quintic_model)
from .projective_geometry import (INFINITY, ConicParametrization, conic_from_coefficients,
                                  conic_parametrize, conic_through, hyperplane_through_six,
                                  is_infinite, line_meet_hyperplane, project_from,
                                  rational_point, secant_line_rnc, span, veronese_embed)
from .torsion3 import (NormalizedQuintic, cartier_manin, normalize, secant_pair_for_root,
                       torsion_pairs, torsion_quartic)

DEGREE = 6          # 2p for p = 3
SECANT_COUNT = 4    # (p^2 - 1) / 2


@dataclass
class IsogenyResult:
    field: object
    conic_rank: int
    curve: Genus2Curve = None
    pair: EllipticPair = None

    @property
    def is_curve(self):
        return self.curve is not None

    def to_json(self):
        out = {"conic_rank": self.conic_rank}
        if self.curve is not None:
            out["curve"] = self.curve.to_json()
        else:
            out["elliptic_pair"] = self.pair.to_json()
        return out


@dataclass
class PipelineCertificate:
    field: object
    route: str
    ranks: dict = dc_field(default_factory=dict)
    data: dict = dc_field(default_factory=dict)
    residuals: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)
    raw: dict = dc_field(default_factory=dict)   # unserialized values for callers

    def passed(self):
        r = self.ranks
        return (r.get("weierstrass") == 6 and r.get("intersections") == 3
                and r.get("projected") == 3 and self.data.get("conic_contains_all", False))

    def to_json(self):
        out = {"field": self.field.descriptor(), "route": self.route, "ranks": dict(self.ranks),
               "passed": self.passed(), "notes": list(self.notes)}
        out.update(self.data)
        if self.residuals:
            out["residuals"] = {k: str(v) for k, v in self.residuals.items()}
        return out


def _mat_json(F, rows):
    return [[F.to_json(x) for x in r] for r in rows]


# ---------------------------------------------------------------- explicit route

def embed_configuration(branch, pairs, d=DEGREE):
    """Six points and four lines of P^d.

    ``pairs`` are (u, v) parameter pairs in the branch field; u == v gives the
    tangent line."""
    F = branch.field
    points = [veronese_embed(F, t, d) for t in branch.points]
    lines = [secant_line_rnc(F, u, v, d) for u, v in pairs]
    return points, lines


def _numeric_residual(F, rows, rank):
    """sigma_{rank+1} / sigma_1 for a big-complex matrix."""
    svals = linalg.singular_values(F, rows)
    return svals[rank] / svals[0] if len(svals) > rank else F.ctx.mpf(0)


def _overlaps(F, branch, pairs):
    out = []
    for i, (u, v) in enumerate(pairs):
        for t in (u, v):
            for w in branch.points:
                same = (t is w) if (is_infinite(t) or is_infinite(w)) else F.eq(t, w)
                if same:
                    out.append(i)
    return sorted(set(out))


def run_p3(branch, pairs):
    """(IsogenyResult, PipelineCertificate) for six branch points and four
    secant pairs, all in ``branch.field``."""
    F = branch.field
    if len(branch.points) != 6 or len(pairs) != SECANT_COUNT:
        raise DegeneratePointSet("expected six branch points and four secant pairs")
    cert = PipelineCertificate(F, "explicit")
    points, lines = embed_configuration(branch, pairs)
    H = hyperplane_through_six(points)
    cert.ranks["weierstrass"] = 6
    cert.data["hyperplane"] = [F.to_json(c) for c in H.equations[0]]
    cert.data["secant_lines"] = [_mat_json(F, l.rows) for l in lines]
    overlap = _overlaps(F, branch, pairs)
    if overlap:
        cert.notes.append(f"secant pairs {overlap} meet the Weierstrass set")
    meets = []
    for line in lines:
        try:
            meets.append(line_meet_hyperplane(line, H))
        except LineInHyperplane as exc:
            raise DegenerateConfiguration(str(exc)) from exc
    cert.data["intersections"] = [p.to_json() for p in meets]
    L, rank_L = span(meets)
    cert.ranks["intersections"] = rank_L
    if not F.exact:
        cert.residuals["coplanarity"] = _numeric_residual(F, [p.coords for p in meets], 3)
    if rank_L != 3:
        raise CoplanarityViolated(f"the four intersection points have rank {rank_L}")
    cert.data["plane_L"] = _mat_json(F, L.rows)
    projected = [project_from(L, p) for p in points]
    cert.data["projected"] = [p.to_json() for p in projected]
    plane, rank_P = span(projected)
    cert.ranks["projected"] = rank_P
    if rank_P != 3:
        raise DegeneratePointSet(f"projected points have rank {rank_P}, expected 3")
    conic = conic_through(projected)
    cert.data["conic"] = conic.to_json()
    cert.ranks["conic"] = conic.rank
    values = [conic.value(conic.plane_coordinates(p)) for p in projected]
    if F.exact:
        cert.data["conic_contains_all"] = all(F.is_zero(v) for v in values)
    else:
        scale = max(abs(x) for r in conic.matrix for x in r)
        norms = [max(abs(c) for c in conic.plane_coordinates(p)) for p in projected]
        resid = max(abs(v) / (scale * n * n) for v, n in zip(values, norms))
        cert.residuals["conic"] = resid
        cert.data["conic_contains_all"] = resid < F.tolerance
    if conic.rank == 3:
        par = conic_parametrize(conic)
        params = [par.parameter(conic.plane_coordinates(p)) for p in projected]
        cert.raw["branch_values"] = params
        cert.data["conic_parametrization"] = par.to_json()
        cert.data["branch_values"] = ["oo" if is_infinite(t) else F.to_json(t) for t in params]
        curve = curve_from_branch_values(F, params)
        return IsogenyResult(F, 3, curve=curve), cert
    if conic.rank == 2:
        pair = _elliptic_pair(conic, [conic.plane_coordinates(p) for p in projected])
        return IsogenyResult(F, 2, pair=pair), cert
    raise DegenerateConic(f"conic of rank {conic.rank}")


def curve_from_branch_values(F, params):
    """y^2 = prod (x - t) over the finite branch values."""
    finite = [t for t in params if not is_infinite(t)]
    if len(finite) < 5:
        raise DegenerateConfiguration("more than one branch value at infinity")
    f = Polynomial.from_roots(F, finite)
    if F.exact and len({F.key(t) for t in finite}) < len(finite):
        raise DegenerateConfiguration("repeated branch values on the conic")
    return Genus2Curve(f, check=F.exact)


def legendre_j(F, lam):
    """2^8 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)."""
    l2 = F.mul(lam, lam)
    num = F.mul(F.from_int(256), F.pow(F.add(F.sub(l2, lam), F.one), 3))
    den = F.mul(l2, F.pow(F.sub(lam, F.one), 2))
    return F.div(num, den)


def _line_parameter(F, base0, base1, v):
    """Coordinate of v on the line through base0 (t = 0) and base1 (t = oo)."""
    # v = s * base0 + r * base1; t = r / s
    best = None
    for i in range(3):
        for j in range(i + 1, 3):
            det = F.sub(F.mul(base0[i], base1[j]), F.mul(base0[j], base1[i]))
            if not F.is_zero(det) and (best is None or (not F.exact and abs(det) > abs(best[0]))):
                best = (det, i, j)
                if F.exact:
                    break
        if best is not None and F.exact:
            break
    det, i, j = best
    s = F.div(F.sub(F.mul(v[i], base1[j]), F.mul(v[j], base1[i])), det)
    r = F.div(F.sub(F.mul(base0[i], v[j]), F.mul(base0[j], v[i])), det)
    return INFINITY if F.is_zero(s) else F.div(r, s)


def _elliptic_pair(conic, coords):
    """Split a line-pair conic and read off the two elliptic curves."""
    F = conic.field
    node = (linalg.kernel(F, conic.matrix) if F.exact
            else linalg.numeric_kernel(F, conic.matrix, dim=1))[0]
    rest = [v for v in coords if not _proportional(F, v, node)]
    if len(rest) != 6:
        raise DegenerateConic("a branch point sits at the node of the line pair")
    groups = []
    for v in rest:
        for g in groups:
            if F.is_zero(linalg.det(F, [node, g[0], v])):
                g.append(v)
                break
        else:
            groups.append([v])
    if sorted(len(g) for g in groups) != [3, 3]:
        raise DegenerateConic(f"line pair carries {[len(g) for g in groups]} branch points")
    js, data = [], []
    for g in groups:
        ts = [_line_parameter(F, node, g[0], v) for v in g[1:]]
        # node -> 0, g[0] -> oo, the two others -> t1, t2; send t1 -> 1
        lam = F.div(ts[1], ts[0])
        js.append(legendre_j(F, lam))
        data.append([F.zero, F.one, lam, INFINITY])
    return EllipticPair(F, tuple(js), tuple(data))


def _proportional(F, u, v):
    if F.exact:
        return linalg.rank(F, [u, v]) < 2
    return linalg.numeric_rank(F, [u, v]) < 2


# ---------------------------------------------------------------- descended route

class QuotientRing:
    """F[x]/(m) for a monic squarefree m; elements are reduced Polynomials."""

    def __init__(self, modulus):
        self.modulus = modulus
        self.field = modulus.field
        self.dim = modulus.degree

    def reduce(self, p):
        return p % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def components(self, a):
        return [a[i] for i in range(self.dim)]

    def power_table(self, n):
        """[x^0, ..., x^n] reduced."""
        x = Polynomial.x(self.field)
        out = [Polynomial(self.field, [self.field.one]) % self.modulus]
        for _ in range(n):
            out.append(self.mul(out[-1], x))
        return out

    def multiplication_matrix(self, a):
        """Matrix of y -> a*y in the basis 1, x, ..., x^(dim-1) (columns)."""
        F = self.field
        cols = []
        y = Polynomial(F, [F.one])
        x = Polynomial.x(F)
        for _ in range(self.dim):
            cols.append(self.components(self.mul(a, y)))
            y = self.mul(y, x)
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]


def _cube_root_in(ring, value, frob_order):
    """Cube root in F_q[X]/(T) by iterating the coefficientwise Frobenius.

    Cubing has order ``frob_order`` on the ring, so its inverse is cubing
    ``frob_order - 1`` times."""
    F = ring.field
    cubes = [ring.reduce(Polynomial.x(F) ** (3 * j)) for j in range(ring.dim)]
    y = value
    for _ in range(frob_order - 1):
        acc = Polynomial(F, [])
        for j in range(ring.dim):
            c = y[j]
            if not F.is_zero(c):
                acc = acc + cubes[j].scale(F.frobenius(c, 1))
        y = acc
    return y


def _generic_meet(A, h, c1, c0):
    """Meet of H with the secant of the generic pair x^2 + c1 x + c0 (over A)."""
    F = A.field
    one = Polynomial(F, [F.one])
    zero = Polynomial(F, [])
    alpha, beta = [one], [zero]
    for _ in range(DEGREE):
        a, b = alpha[-1], beta[-1]
        alpha.append(A.reduce(-(A.mul(b, c0))))
        beta.append(A.reduce(a - A.mul(b, c1)))
    hb = zero
    ha = zero
    for hk, a, b in zip(h, alpha, beta):
        if not F.is_zero(hk):
            ha = ha + a.scale(hk)
            hb = hb + b.scale(hk)
    meet = [A.reduce(A.mul(hb, a) - A.mul(ha, b)) for a, b in zip(alpha, beta)]
    return meet, alpha, beta


def _lin_form(F, v, w):
    return F.dot(v, w)


def _cross(F, a, b):
    return [F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])),
            F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
            F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]))]


def run_descended(f, nq):
    """The construction over the base field; ``f`` is the monic quintic and
    ``nq`` its normalization (the secant data are shifted back to f's coordinate)."""
    F = f.field
    cert = PipelineCertificate(F, "descended")
    T = torsion_quartic(nq)
    pattern = factor_degree_pattern(T)
    if len(pattern) != 4 and sum(pattern) != 4:
        raise NotOrdinary("torsion quartic is not separable")
    A = QuotientRing(T)
    frob_order = F.n * lcm(*pattern)
    X = Polynomial.x(F)
    b0, b1, b2, b3 = (Polynomial(F, [c]) for c in nq.b)
    # 1/X = (X^3 - b2) / b1 in A
    inv_X = (X ** 3 - b2).scale(F.inv(nq.b1))
    a2 = A.mul(X, X)
    a3 = A.mul(a2, X)
    d0 = A.reduce(b2 - a3)
    c1_cubed = A.reduce(a3 - A.mul(X, b3) + A.mul(b1, inv_X))
    assert c1_cubed == A.reduce(a3 - A.mul(X, b3) - d0)
    c0_cubed = A.reduce(A.mul(A.mul(b1, b1), A.mul(inv_X, inv_X)) - A.mul(X, b0))
    c1 = _cube_root_in(A, c1_cubed, frob_order)
    c0 = _cube_root_in(A, c0_cubed, frob_order)
    assert A.reduce(A.mul(A.mul(c1, c1), c1)) == c1_cubed
    # back to f's coordinate: c(x - s) with s the normalization shift
    s = Polynomial(F, [nq.shift])
    c1, c0 = (A.reduce(c1 - s.scale(F.from_int(2))),
              A.reduce(c0 - A.mul(c1, s) + A.mul(s, s)))
    cert.data["torsion_quartic"] = T.to_json()
    cert.data["generic_pair"] = {"c1": c1.to_json(), "c0": c0.to_json()}
    # overlap of a pair with the Weierstrass set: Res(c, f) vanishing at some root of T
    rem = _mod_generic_quadratic(A, f, c1, c0)
    res = A.reduce(A.mul(rem[0], rem[0]) - A.mul(A.mul(c1, rem[0]), rem[1])
                   + A.mul(c0, A.mul(rem[1], rem[1])))
    if poly_gcd(T, res).degree > 0:
        cert.notes.append("a secant pair meets the Weierstrass set")
    h = [f[k] for k in range(DEGREE + 1)]
    cert.data["hyperplane"] = [F.to_json(c) for c in h]
    meet, alpha, beta = _generic_meet(A, h, c1, c0)
    g = T
    for m in meet:
        g = poly_gcd(g, m)
    if g.degree > 0:
        raise DegenerateConfiguration("a secant line lies inside the hyperplane")
    comps = [[meet[k][j] for k in range(DEGREE + 1)] for j in range(4)]
    L_rows, L_piv = linalg.rref(F, comps)
    cert.ranks["intersections"] = len(L_rows)
    cert.data["intersection_components"] = _mat_json(F, comps)
    if len(L_rows) != 3:
        raise CoplanarityViolated(f"the four intersection points have rank {len(L_rows)}")
    cert.data["plane_L"] = _mat_json(F, L_rows)
    # Weierstrass points: generic root of f, plus infinity when deg f = 5
    B = QuotientRing(f)
    powers = B.power_table(DEGREE)
    w_comps = [[powers[k][j] for k in range(DEGREE + 1)] for j in range(B.dim)]
    inf = [F.zero] * DEGREE + [F.one]
    w_all = w_comps + ([inf] if f.degree == 5 else [])
    cert.ranks["weierstrass"] = linalg.rank(F, w_all)
    if cert.ranks["weierstrass"] != 6:
        raise DegeneratePointSet(f"Weierstrass images have rank {cert.ranks['weierstrass']}")
    keep = [i for i in range(DEGREE + 1) if i not in L_piv]

    def project(v):
        v = list(v)
        for row, p in zip(L_rows, L_piv):
            c = v[p]
            if not F.is_zero(c):
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
        return [v[i] for i in keep]

    p_comps = [project(v) for v in w_comps]
    p_inf = project(inf) if f.degree == 5 else None
    coords = [Polynomial(F, [p_comps[j][c] for j in range(B.dim)]) for c in range(4)]
    gg = f
    for c in coords:
        gg = poly_gcd(gg, c)
    if gg.degree > 0 or (p_inf is not None and all(F.is_zero(x) for x in p_inf)):
        raise ProjectionCenter("a Weierstrass image lies in the projection centre")
    p_all = p_comps + ([p_inf] if p_inf is not None else [])
    P_rows, P_piv = linalg.rref(F, p_all)
    cert.ranks["projected"] = len(P_rows)
    cert.data["projected_components"] = _mat_json(F, p_all)
    if len(P_rows) != 3:
        raise DegeneratePointSet(f"projected points have rank {len(P_rows)}, expected 3")
    u = [coords[p] for p in P_piv]
    u_inf = [p_inf[p] for p in P_piv] if p_inf is not None else None
    monos = [B.mul(u[0], u[0]), B.mul(u[1], u[1]), B.mul(u[2], u[2]),
             B.mul(u[0], u[1]), B.mul(u[0], u[2]), B.mul(u[1], u[2])]
    system = [[m[j] for m in monos] for j in range(B.dim)]
    if u_inf is not None:
        x0, x1, x2 = u_inf
        system.append([F.mul(x0, x0), F.mul(x1, x1), F.mul(x2, x2),
                       F.mul(x0, x1), F.mul(x0, x2), F.mul(x1, x2)])
    ker = linalg.kernel(F, system)
    if not ker:
        raise NotSmoothConic("the projected points lie on no conic")
    if len(ker) > 1:
        raise DegenerateBundle(f"{len(ker)}-dimensional family of conics")
    conic = conic_from_coefficients(F, ker[0])
    cert.ranks["conic"] = conic.rank
    cert.data["conic"] = conic.to_json()
    # exact containment: Q(u(x)) = 0 in B and Q(u_inf) = 0
    qb = Polynomial(F, [])
    for coef, m in zip(ker[0], monos):
        qb = qb + m.scale(coef)
    contains = not B.reduce(qb)
    if u_inf is not None:
        contains = contains and F.is_zero(conic.value(u_inf))
    cert.data["conic_contains_all"] = contains
    if conic.rank < 3:
        return None, cert
    q0 = rational_point(conic)
    par = _parametrize_at(conic, q0)
    cert.data["conic_parametrization"] = par.to_json()
    n_form = [F.neg(c) for c in _cross(F, par.p0, par.q0)]
    d_form = _cross(F, par.p1, par.q0)
    N = _apply_form(F, n_form, u)
    D = _apply_form(F, d_form, u)
    # a Weierstrass point at the base point q0 has parameter infinity
    base = poly_gcd(poly_gcd(f, N), D)
    fr = f // base if base.degree > 0 else f
    R = QuotientRing(fr)
    MN = R.multiplication_matrix(R.reduce(N))
    MD = R.multiplication_matrix(R.reduce(D))
    Xp = Polynomial.x(F)
    entries = [[Xp.scale(MD[i][j]) - Polynomial(F, [MN[i][j]]) for j in range(R.dim)]
               for i in range(R.dim)]
    poly = linalg.poly_matrix_det(entries) if R.dim else Polynomial(F, [F.one])
    if u_inf is not None:
        n_inf, d_inf = F.dot(n_form, u_inf), F.dot(d_form, u_inf)
        if not (F.is_zero(n_inf) and F.is_zero(d_inf)):
            poly = poly * Polynomial(F, [F.neg(n_inf), d_inf])
    if not poly or poly.degree < 5:
        raise DegenerateConfiguration("fewer than five finite branch values")
    curve_poly = poly.monic()
    if not poly_gcd_squarefree(curve_poly)[1]:
        raise DegenerateConfiguration("repeated branch values on the conic")
    return IsogenyResult(F, 3, curve=Genus2Curve(curve_poly, check=False)), cert


def _parametrize_at(conic, q0):
    F = conic.field
    tangent = linalg.mat_vec(F, conic.matrix, q0)
    candidates = linalg.kernel(F, [tangent])
    p1 = next(v for v in candidates if linalg.rank(F, [q0, v]) == 2)
    basis = [[F.one if i == j else F.zero for i in range(3)] for j in range(3)]
    p0 = next(v for v in basis if linalg.rank(F, [q0, p1, v]) == 3)
    return ConicParametrization(conic, q0, p0, p1)


def _apply_form(F, form, u):
    out = Polynomial(F, [])
    for c, ui in zip(form, u):
        if not F.is_zero(c):
            out = out + ui.scale(c)
    return out


def _mod_generic_quadratic(A, f, c1, c0):
    """f(x) mod x^2 + c1 x + c0 over A, as (r0, r1)."""
    F = A.field
    one = Polynomial(F, [F.one])
    zero = Polynomial(F, [])
    a, b = one, zero
    r0, r1 = zero, zero
    for k in range(f.degree + 1):
        if not F.is_zero(f[k]):
            r0 = r0 + a.scale(f[k])
            r1 = r1 + b.scale(f[k])
        a, b = A.reduce(-(A.mul(b, c0))), A.reduce(a - A.mul(b, c1))
    return A.reduce(r0), A.reduce(r1)


# ---------------------------------------------------------------- char-3 driver

def _char3_inputs(curve):
    F = curve.field
    if not isinstance(F, FiniteField) or F.characteristic != 3:
        raise UnsupportedField("isogenous_curve_char3 needs a finite field of characteristic 3")
    model = quintic_model(curve)
    f = model.f
    nq = normalize(f)
    _, ordinary = cartier_manin(nq)
    if not ordinary:
        raise NotOrdinary("the Jacobian is not ordinary (b1 = 0)")
    return model, f, nq


def explicit_configuration(curve):
    """(E, BranchSet over E, four (u, v) pairs over E, torsion pairs) for a char-3 curve.

    Every root is computed directly in E from data over the base field, so a
    single embedding of the base field is used throughout."""
    model, f, nq = _char3_inputs(curve)
    F = f.field
    _, first_pass = torsion_pairs(nq)
    degrees = factor_degree_pattern(f) + [p.pair_field.n // F.n for p in first_pass]
    E, emb = extension_of(F, lcm(*degrees))
    nq_E = NormalizedQuintic(E, tuple(emb(b) for b in nq.b), emb(nq.shift))
    tpairs = [secant_pair_for_root(a, nq_E) for a in roots_in_field(torsion_quartic(nq_E))]
    assert len(tpairs) == SECANT_COUNT and all(p.pair_field is E for p in tpairs)
    shift = nq_E.shift
    pairs = []
    for p in tpairs:
        xs = [E.add(x, shift) for x in p.pair]
        pairs.append((xs[0], xs[-1]))
    points = roots_in_field(emb.poly(f)) + ([INFINITY] if f.degree == 5 else [])
    return E, BranchSet(E, points), pairs, tpairs


def isogenous_curve_char3(curve, method="descended"):
    """(IsogenyResult, PipelineCertificate) for an ordinary curve over F_{3^k}."""
    if method not in ("descended", "explicit"):
        raise ValueError(f"unknown method {method!r}")
    if method == "descended":
        model, f, nq = _char3_inputs(curve)
        result, cert = run_descended(f, nq)
        if result is not None:
            return result, cert
        # a line pair: split it over the compositum
        explicit_result, explicit_cert = isogenous_curve_char3(curve, method="explicit")
        explicit_cert.notes.append("conic of rank 2 on the descended route")
        return explicit_result, explicit_cert
    E, branch, pairs, _ = explicit_configuration(curve)
    result, cert = run_p3(branch, pairs)
    if result.is_curve:
        result.curve = descend_curve(result.curve, curve.field)
        result.field = result.curve.field
    return result, cert


def descend_curve(curve, base):
    """The same curve over ``base`` when all its coefficients lie there."""
    E = curve.field
    if E is base or not isinstance(E, FiniteField):
        return curve
    k = base.n
    if any(E.frobenius(c, k) != c for c in curve.f.coefficients):
        return curve
    emb = embedding(base, E)
    table = {emb(x): x for x in base.elements()} if base.order <= 3 ** 8 else None
    if table is None:
        return curve
    return Genus2Curve(Polynomial(base, [table[c] for c in curve.f.coefficients]), check=False)


def frobenius_certify(curve, result, max_ext=None):
    """Whether the Frobenius twist of C' is isomorphic to C."""
    if not result.is_curve:
        return False
    return is_isomorphic(frobenius_twist(result.curve), curve, max_ext) is not None
