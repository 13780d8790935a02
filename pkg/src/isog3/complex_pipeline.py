"""From a Maschke point to the genus-2 curve C' over the complex numbers.

Outline, at P decimal digits:

* alpha = c_-(z) spans, together with the Maschke space, the 4-space P4_Theta
  of the theta divisor.  Points of P4_Theta are written (t * alpha, z).
* On P4_Theta the Coble quadrics become t^2 g + v(z).  Eliminating t leaves a
  net of quadrics in z cutting out a twisted cubic R3, parametrized through
  its Hilbert-Burch syzygy matrix.  The six branch points of C -> R3 are the
  roots of the sextic lambda(s) with v(z(s)) = lambda(s) g.
* For each nonzero e of the isotropic subgroup F0, P4_Theta meets its
  translate by e in a line; the two curve points on it and their translates
  by -e give a pair of points differing by e.
* A coordinate on R3 (projection from a chord) turns everything into
  parameters on a projective line, and ``isogeny_pipeline.run_p3`` does the
  rest.
"""

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import burkhardt_coble as bc
from . import linalg
from .errors import (BranchLocusFailure, CoordinateFailure, InvalidInput, OnArrangement,
                     RootIsolationFailure, TranslateDegenerate)
from .field_kernel import complex_field, polynomial_roots
from .genus2_curves import BranchSet
from .isogeny_pipeline import run_p3
from .mpoly import MPoly
from .projective_geometry import INFINITY, is_infinite

F0_CLASSES = ((0, 1), (1, 0), (1, 1), (1, 2))   # one b from each pair {b, -b}


def _neg(b):
    return ((-b[0]) % 3, (-b[1]) % 3)


# ---------------------------------------------------------------- small helpers

def _svd(F, rows):
    ctx = F.ctx
    nrows, ncols = len(rows), len(rows[0])
    padded = [list(r) for r in rows] + [[0] * ncols] * max(0, ncols - nrows)
    U, S, V = ctx.svd_c(ctx.matrix(padded))
    return [S[i] for i in range(min(len(padded), ncols))], V


def _kernel(F, rows, dim):
    """The ``dim``-dimensional numeric kernel and the gap ratio s_{n-dim}/s_1
    (which should be large) together with the largest discarded s/s_1."""
    svals, V = _svd(F, rows)
    ncols = len(rows[0])
    svals = svals + [F.ctx.mpf(0)] * (ncols - len(svals))
    top = svals[0]
    kept = svals[ncols - dim - 1] / top if ncols - dim - 1 >= 0 else F.ctx.mpf(1)
    dropped = max(svals[ncols - dim:]) / top if dim else F.ctx.mpf(0)
    basis = [[F.ctx.conj(V[k, j]) for j in range(ncols)] for k in range(ncols - dim, ncols)]
    return basis, kept, dropped


def _normalize(F, v):
    """Scale so the entry of largest modulus is 1."""
    k = max(range(len(v)), key=lambda i: abs(v[i]))
    return [x / v[k] for x in v]


def _canonical_key(F, v, digits=40):
    """Sort key for a projective point, stable across precisions."""
    ctx = F.ctx
    k = next(i for i in range(len(v)) if abs(v[i]) > F.tolerance * max(abs(x) for x in v))
    w = [x / v[k] for x in v]
    return tuple((ctx.nstr(x.real, digits), ctx.nstr(x.imag, digits)) for x in w)


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _peval(p, s):
    acc = 0
    for c in reversed(p):
        acc = acc * s + c
    return acc


def _pderiv(p):
    return [i * c for i, c in enumerate(p)][1:] or [0]


def _maschke_point(z):
    """Rational coordinates of a Maschke point (ints, Fractions or strings)."""
    if len(z) != 4:
        raise InvalidInput("a Maschke point has four coordinates")
    try:
        return [Fraction(v) for v in z]
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"Maschke coordinates must be rational: {z!r}") from exc


# ---------------------------------------------------------------- frame

@dataclass
class ThetaSpaceFrame:
    field: object
    z: tuple
    alpha: tuple          # exact (rational) kernel point
    alpha_c: list         # alpha in the complex field, normalized
    basis: list           # 5 vectors of length 9 in (y0..y4, z1..z4)
    singular_values: list

    @property
    def condition(self):
        return self.singular_values[0] / self.singular_values[-1]

    def point(self, coords):
        """(t, z1..z4) -> point of P^8."""
        F = self.field
        return [F.ctx.fsum(c * b[i] for c, b in zip(coords, self.basis)) for i in range(9)]


def theta_space(z, prec):
    z = _maschke_point(z)
    value, _ = bc.phi40(z)
    if value == 0:
        raise OnArrangement("Phi_40(z) = 0: the point lies on the reflection arrangement")
    alpha = bc.cminus(z)
    F = complex_field(prec)
    a = _normalize(F, [F.convert(x) for x in alpha])
    basis = [a + [F.zero] * 4]
    for k in range(4):
        basis.append([F.zero] * 5 + [F.one if j == k else F.zero for j in range(4)])
    svals = linalg.singular_values(F, basis)
    return ThetaSpaceFrame(F, tuple(z), tuple(alpha), a, basis, svals)


# ---------------------------------------------------------------- quadrics

def surface_quadrics(alpha, F):
    """The nine Coble quadrics with alpha substituted: MPolys in the nine
    coordinates (y0..y4, z1..z4) over F."""
    system = bc.corrected_system()
    out = []
    for q in system.quadrics():
        terms = {}
        for e, c in q.terms.items():
            coef = F.convert(c)
            for k in range(5):
                if e[9 + k]:
                    coef = coef * alpha[k] ** e[9 + k]
            key = e[:9]
            terms[key] = terms.get(key, F.zero) + coef
        out.append(MPoly(F, 9, terms))
    return out


def restrict(quadrics, basis):
    """Pull the quadrics back along x = sum u_k basis[k]."""
    F = quadrics[0].field
    n = len(basis)
    u = MPoly.variables(F, n)
    images = []
    for i in range(9):
        img = MPoly(F, n)
        for k in range(n):
            if not F.is_zero(basis[k][i]):
                img = img + u[k].scale(basis[k][i])
        images.append(img)
    return [q.substitute(images) for q in quadrics]


def _eval_all(quadrics, x):
    return [q.evaluate(x) for q in quadrics]


def quadric_residual(quadrics, x):
    """max |Q_i(x)| / |x|^2 (coefficients of the quadrics are O(1))."""
    n = max(abs(c) for c in x)
    return max(abs(v) for v in _eval_all(quadrics, x)) / (n * n)


def _coeff_norm(p):
    return max((abs(c) for c in p.terms.values()), default=0)


def polar_quadric(quadrics, alpha, weights):
    """sum_i alpha_i w_i Q_i: the polar quadric of the Coble cubic at the
    point (alpha, 0) of P^8."""
    F = quadrics[0].field
    out = MPoly(F, 9)
    for i in range(5):
        out = out + quadrics[i].scale(alpha[i] * F.convert(weights[i]))
    return out


# ---------------------------------------------------------------- R3

_Z2 = [(a, b) for a in range(4) for b in range(a, 4)]
_Z3 = sorted({tuple(sorted(c)) for c in itertools.product(range(4), repeat=3)})


def _zexp(pair_or_triple):
    e = [0] * 5
    for k in pair_or_triple:
        e[1 + k] += 1
    return tuple(e)


@dataclass
class R3Curve:
    """The twisted cubic s -> z(s) with z_j(s) a cubic polynomial."""

    field: object
    a: list          # N(s) = a + s b, 3 rows of linear forms on C^4
    b: list
    polys: list      # z_j(s), coefficient lists (low first)
    g: list          # t^2 coefficients of the restricted quadrics
    v: list          # z-parts of the restricted quadrics (coefficient dicts)
    syzygy_gap: object

    def point(self, s):
        if is_infinite(s):
            return [p[3] if len(p) > 3 else 0 for p in self.polys]
        return [_peval(p, s) for p in self.polys]

    def tangent(self, s):
        return [_peval(_pderiv(p), s) for p in self.polys]

    def parameter(self, z):
        r0 = [sum(x * y for x, y in zip(row, z)) for row in self.a]
        r1 = [sum(x * y for x, y in zip(row, z)) for row in self.b]
        k = max(range(3), key=lambda i: abs(r1[i]))
        if abs(r1[k]) < self.field.tolerance * max(abs(x) for x in z) * max(abs(x) for r in self.b for x in r):
            return INFINITY
        return -r0[k] / r1[k]

    def on_curve_residual(self, z):
        """How far the kernel of N(s(z)) is from z."""
        s = self.parameter(z)
        w = self.point(s)
        zn, wn = _normalize(self.field, list(z)), _normalize(self.field, w)
        return max(abs(x - y) for x, y in zip(zn, wn))

    def v_values(self, z):
        return [sum(c * z[a] * z[b] for (a, b), c in vq.items()) for vq in self.v]


def _split_restricted(F, restricted):
    """g_r (t^2 coefficient), v_r (coefficients on z_a z_b), cross-term norm."""
    g, v, cross = [], [], 0
    for q in restricted:
        g.append(q.terms.get((2, 0, 0, 0, 0), F.zero))
        vq = {}
        for a, b in _Z2:
            vq[(a, b)] = q.terms.get(_zexp((a, b)), F.zero)
        v.append(vq)
        for e, c in q.terms.items():
            if e[0] == 1:
                cross = max(cross, abs(c))
    return g, v, cross


def r3_curve(frame, restricted):
    """The twisted cubic cut out in P_Ma by eliminating t."""
    F = frame.field
    ctx = F.ctx
    g, v, _ = _split_restricted(F, restricted[:5])
    # covectors c with c . g = 0 give quadrics in z alone; they span a net
    cov, _, _ = _kernel(F, [g], 4)
    quads = [[ctx.fsum(c[r] * v[r][m] for r in range(5)) for m in _Z2] for c in cov]
    svals, V = _svd(F, quads)
    if svals[3] > F.tolerance * svals[0] or svals[2] < F.tolerance * svals[0]:
        raise BranchLocusFailure("the eliminated quadrics do not form a net")
    net = [[V[r, m] for m in range(10)] for r in range(3)]
    # linear syzygies sum_k l_k q_k = 0
    idx = {m: i for i, m in enumerate(_Z3)}
    rows = [[F.zero] * 12 for _ in _Z3]
    for k in range(3):
        for j in range(4):
            for m, (a, b) in enumerate(_Z2):
                mono = tuple(sorted((a, b, j)))
                rows[idx[mono]][4 * k + j] += net[k][m]
    syz, gap, dropped = _kernel(F, rows, 2)
    if dropped > F.tolerance or gap < F.tolerance:
        raise BranchLocusFailure("the net has no rank-2 space of linear syzygies")
    a = [syz[0][4 * k:4 * k + 4] for k in range(3)]
    b = [syz[1][4 * k:4 * k + 4] for k in range(3)]
    # z_j(s) = (-1)^j det(N(s) without column j), N(s) = a + s b
    polys = []
    for j in range(4):
        cols = [c for c in range(4) if c != j]
        total = [0]
        for perm in itertools.permutations(range(3)):
            sign = _perm_sign(perm)
            term = [sign]
            for k in range(3):
                c = cols[perm[k]]
                term = _pmul(term, [a[k][c], b[k][c]])
            total = _padd(total, term)
        polys.append(total if j % 2 == 0 else [-x for x in total])
    return R3Curve(F, a, b, polys, g, v, gap)


def _perm_sign(perm):
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


# ---------------------------------------------------------------- branch points

@dataclass
class WeierstrassData:
    parameters: list     # s-values on R3
    points: list         # z-vectors in P_Ma (normalized)
    residual: object


def weierstrass_on_Pma(frame, r3, quadrics):
    """The six points of C on P_Ma (t = 0): roots of lambda(s)."""
    F = frame.field
    ctx = F.ctx
    g = r3.g
    gn = ctx.fsum(abs(x) ** 2 for x in g)
    lam = [0]
    for r in range(5):
        w = ctx.conj(g[r]) / gn
        for (a, b), c in r3.v[r].items():
            if c != 0:
                lam = _padd(lam, [w * c * x for x in _pmul(r3.polys[a], r3.polys[b])])
    scale = max(abs(c) for c in lam)
    if len(lam) < 7 or abs(lam[6]) < F.tolerance * scale:
        raise BranchLocusFailure("a branch point sits at s = infinity")
    try:
        roots = polynomial_roots(F, lam)
    except ArithmeticError as exc:
        raise RootIsolationFailure(str(exc)) from exc
    pts = [_normalize(F, r3.point(s)) for s in roots]
    if len(pts) != 6:
        raise BranchLocusFailure(f"found {len(pts)} branch points")
    for i, j in itertools.combinations(range(6), 2):
        if max(abs(x - y) for x, y in zip(pts[i], pts[j])) < F.tolerance:
            raise BranchLocusFailure("branch points collide")
    order = sorted(range(6), key=lambda i: _canonical_key(F, pts[i]))
    roots = [roots[i] for i in order]
    pts = [pts[i] for i in order]
    resid = max(quadric_residual(quadrics, [F.zero] * 5 + p) for p in pts)
    return WeierstrassData(roots, pts, resid)


# ---------------------------------------------------------------- secants

def translate(e, x, F):
    y, z = bc.heisenberg_translate_yz(e, x[:5], x[5:], F)
    return list(y) + list(z)


def _translate_line(frame, b):
    """P4_Theta intersected with its translate by (0, b): two spanning points."""
    F = frame.field
    e = ((0, 0), b)
    images = [translate(e, f, F) for f in frame.basis]
    rows = [[frame.basis[i][r] for i in range(5)] + [-images[i][r] for i in range(5)]
            for r in range(9)]
    svals, _ = _svd(F, rows)
    top = svals[0]
    dim = 10 - sum(1 for s in svals if s > F.tolerance * top)
    if dim != 2:
        raise TranslateDegenerate(f"P4_Theta meets its translate in dimension {dim - 1}, expected a line")
    basis, _, _ = _kernel(F, rows, 2)
    return [frame.point(k[:5]) for k in basis]


@dataclass
class SecantQuad:
    """Pi_e with the curve points x, y = x - e, x', y' = x' - e."""

    e: tuple
    plane: list
    plane_rank: int
    points: list
    residuals: dict = dc_field(default_factory=dict)

    @property
    def pair(self):
        return self.points[0], self.points[1]


def _binary_roots(F, c2, c1, c0):
    """Roots (u : w) of c2 u^2 + c1 u w + c0 w^2 as projective pairs."""
    ctx = F.ctx
    disc = ctx.sqrt(c1 * c1 - 4 * c2 * c0)
    if abs(c2) >= abs(c0):
        # u/w roots; stable formula
        q = -(c1 + (disc if abs(c1 + disc) >= abs(c1 - disc) else -disc)) / 2
        r1 = q / c2
        r2 = c0 / q if q != 0 else -c1 / c2 - r1
        return [(r1, F.one), (r2, F.one)]
    q = -(c1 + (disc if abs(c1 + disc) >= abs(c1 - disc) else -disc)) / 2
    w1 = q / c0
    w2 = c2 / q if q != 0 else -c1 / c0 - w1
    return [(F.one, w1), (F.one, w2)]


def concurrent_secants(frame, b, quadrics):
    """The two secant lines attached to the pair {e, -e}, e = (0, b)."""
    F = frame.field
    P, Q = _translate_line(frame, b)
    Pm, Qm = _translate_line(frame, _neg(b))
    plane_rank = linalg.numeric_rank(F, [P, Q, Pm, Qm])
    forms = []
    for q in quadrics:
        qp, qq = q.evaluate(P), q.evaluate(Q)
        qs = q.evaluate([x + y for x, y in zip(P, Q)])
        forms.append((qp, qs - qp - qq, qq))
    best = max(forms, key=lambda f: max(abs(c) for c in f))
    bn = max(abs(c) for c in best)
    prop = 0
    for f in forms:
        # 2x2 minors against the dominant form
        for i, j in itertools.combinations(range(3), 2):
            prop = max(prop, abs(f[i] * best[j] - f[j] * best[i]) / (bn * bn))
    if prop > F.tolerance:
        raise RootIsolationFailure("the quadrics restricted to the line are not proportional")
    roots = _binary_roots(F, *best)
    xs = [[u * p + w * q for p, q in zip(P, Q)] for u, w in roots]
    xs = [_normalize(F, x) for x in xs]
    if max(abs(a - c) for a, c in zip(*xs)) < F.tolerance:
        raise RootIsolationFailure("the two curve points on the line coincide")
    back = ((0, 0), _neg(b))
    ys = [_normalize(F, translate(back, x, F)) for x in xs]
    x, x2 = xs
    y, y2 = ys
    res = {
        "on_curve": max(quadric_residual(quadrics, p) for p in (x, y, x2, y2)),
        "translate_in_frame": max(_frame_residual(frame, p) for p in (y, y2)),
        "line_proportionality": prop,
    }
    # the secants xy and x'y' meet on P_Ma
    ker, _, dropped = _kernel(F, [[x[r], y[r], -x2[r], -y2[r]] for r in range(9)], 1)
    c = ker[0]
    meet = [c[0] * x[r] + c[1] * y[r] for r in range(9)]
    mn = max(abs(v) for v in meet)
    res["meet_rank_defect"] = dropped
    res["meet_on_Pma"] = max(abs(v) for v in meet[:5]) / mn
    return SecantQuad(((0, 0), b), [P, Q, Pm, Qm], plane_rank, [x, y, x2, y2], res)


def _frame_residual(frame, p):
    """Distance of p from P4_Theta: the y-block must be proportional to alpha."""
    F = frame.field
    a = frame.alpha_c
    an = F.ctx.fsum(abs(v) ** 2 for v in a)
    t = F.ctx.fsum(F.ctx.conj(av) * pv for av, pv in zip(a, p[:5])) / an
    return max(abs(pv - t * av) for av, pv in zip(a, p[:5])) / max(abs(v) for v in p)


# ---------------------------------------------------------------- coordinate on R3

@dataclass
class R3Coordinate:
    """Projection of R3 from the chord through two centre points; the
    centres go to 0 and infinity."""

    r3: R3Curve
    centers: tuple
    l: list
    m: list
    tau0: object
    tau1: object

    def raw(self, z):
        F = self.r3.field
        lv = sum(x * y for x, y in zip(self.l, z))
        mv = sum(x * y for x, y in zip(self.m, z))
        zn = max(abs(x) for x in z)
        if abs(lv) < F.tolerance * zn and abs(mv) < F.tolerance * zn:
            raise CoordinateFailure("point lies on the projection chord")
        if abs(mv) < F.tolerance * zn:
            return INFINITY
        return lv / mv

    def __call__(self, z):
        tau = self.raw(z)
        return self._normalize(tau)

    def _normalize(self, tau):
        if is_infinite(tau):
            return self.r3.field.one
        num, den = tau - self.tau0, tau - self.tau1
        F = self.r3.field
        if abs(den) < F.tolerance * max(1, abs(tau)):
            return INFINITY
        return num / den

    def at_center(self, k):
        return self.r3.field.zero if k == 0 else INFINITY


def r3_coordinate(r3, params, centers=None):
    """A coordinate on R3 from the projection away from the chord through two
    of the given points (parameters on R3).  Returns (coordinate, values)
    with the centres at 0 and infinity.  Pairs are tried in order."""
    if len(params) < 6:
        raise InvalidInput("need at least six points on R3")
    pairs = [centers] if centers else list(itertools.combinations(range(len(params)), 2))
    for i, j in pairs:
        try:
            return _coordinate_from(r3, params, i, j)
        except (CoordinateFailure, ZeroDivisionError):
            continue
    raise CoordinateFailure("no usable projection chord")


def _coordinate_from(r3, params, i, j):
    F = r3.field
    zi, zj = r3.point(params[i]), r3.point(params[j])
    if linalg.numeric_rank(F, [zi, zj]) < 2:
        raise CoordinateFailure("chord centres coincide")
    ann, _, _ = _kernel(F, [zi, zj], 2)
    l, m = ann
    ti = r3.tangent(params[i]) if not is_infinite(params[i]) else None
    tj = r3.tangent(params[j]) if not is_infinite(params[j]) else None
    if ti is None or tj is None:
        raise CoordinateFailure("centre at s = infinity")
    proto = R3Coordinate(r3, (i, j), l, m, None, None)
    tau0, tau1 = proto.raw(ti), proto.raw(tj)
    if is_infinite(tau0) or is_infinite(tau1):
        raise CoordinateFailure("centre tangent projects to infinity")
    if abs(tau0 - tau1) < F.tolerance * max(1, abs(tau0)):
        raise CoordinateFailure("centre images coincide")
    coord = R3Coordinate(r3, (i, j), l, m, tau0, tau1)
    values = []
    for k, s in enumerate(params):
        if k == i:
            values.append(F.zero)
        elif k == j:
            values.append(INFINITY)
        else:
            values.append(coord(r3.point(s)))
    return coord, values


# ---------------------------------------------------------------- end to end

@dataclass
class ComplexRun:
    frame: ThetaSpaceFrame
    r3: R3Curve
    weierstrass: WeierstrassData
    secants: list
    coordinate: R3Coordinate
    branch_values: list
    pair_values: list
    result: object
    certificate: object
    residuals: dict

    def output_branch_values(self):
        return self.certificate.raw["branch_values"]

    def to_json(self):
        F = self.frame.field

        def val(t):
            return "oo" if is_infinite(t) else F.to_json(t)

        return {
            "z": [str(v) for v in self.frame.z],
            "precision": F.precision,
            "alpha": [str(v) for v in self.frame.alpha],
            "secants": [{"e": [list(s.e[0]), list(s.e[1])],
                         "pair": [val(t) for t in pv],
                         "plane_rank": s.plane_rank} for s, pv in zip(self.secants, self.pair_values)],
            "branch_values": [val(t) for t in self.branch_values],
            "result": self.result.to_json(),
            "certificate": self.certificate.to_json(),
            "residuals": {k: F.ctx.nstr(v, 5) for k, v in self.residuals.items()},
        }


def run_complex(z, prec):
    frame = theta_space(z, prec)
    F = frame.field
    quadrics = surface_quadrics(frame.alpha_c, F)
    restricted = restrict(quadrics, frame.basis)
    residuals = {}
    residuals["twoeq_restricted"] = max(_coeff_norm(q) for q in restricted[5:])
    _, _, cross = _split_restricted(F, restricted[:5])
    residuals["cross_terms"] = cross
    r3 = r3_curve(frame, restricted)
    wp = weierstrass_on_Pma(frame, r3, quadrics)
    residuals["weierstrass_on_quadrics"] = wp.residual
    secants = [concurrent_secants(frame, b, quadrics) for b in F0_CLASSES]
    for key in ("on_curve", "translate_in_frame", "meet_on_Pma", "line_proportionality"):
        residuals[f"secant_{key}"] = max(s.residuals[key] for s in secants)
    coord, wvals = r3_coordinate(r3, wp.parameters)
    pair_values = []
    for s in secants:
        x, y = s.pair
        pair_values.append((coord(x[5:]), coord(y[5:])))
    branch = BranchSet(F, wvals)
    result, cert = run_p3(branch, pair_values)
    for k, v in cert.residuals.items():
        residuals[k] = v
    return ComplexRun(frame, r3, wp, secants, coord, wvals, pair_values, result, cert, residuals)


# ---------------------------------------------------------------- stability

def _homogeneous(t):
    return (1, 0) if is_infinite(t) else (t, 1)


def _bracket(x, y):
    return x[0] * y[1] - x[1] * y[0]


def _align(values):
    """Cross-ratio normal form: values[0] -> 0, values[1] -> oo, values[2] -> 1;
    returned as homogeneous pairs for the remaining values."""
    v0, v1, v2 = (_homogeneous(t) for t in values[:3])
    out = []
    for t in values[3:]:
        x = _homogeneous(t)
        out.append((_bracket(x, v0) * _bracket(v2, v1), _bracket(x, v1) * _bracket(v2, v0)))
    return out


def branch_drift(run_a, run_b):
    """Largest change of the Moebius-normalized output branch values between
    two runs of the same input (chordal distance on the projective line)."""
    ctx = run_b.frame.field.ctx
    worst = ctx.mpf(0)
    for (a0, a1), (b0, b1) in zip(_align(run_a.output_branch_values()),
                                  _align(run_b.output_branch_values())):
        a0, a1, b0, b1 = (ctx.mpc(v) for v in (a0, a1, b0, b1))
        num = abs(a0 * b1 - a1 * b0)
        den = ctx.sqrt(abs(a0) ** 2 + abs(a1) ** 2) * ctx.sqrt(abs(b0) ** 2 + abs(b1) ** 2)
        worst = max(worst, num / den)
    return worst


def stability_check(z, prec, factor=2):
    low = run_complex(z, prec)
    high = run_complex(z, prec * factor)
    return low, high, branch_drift(low, high)

