"""Genus-2 curves y^2 = f(x): branch sets, isomorphism testing by Möbius
maps, the Frobenius twist, and Salmon's discriminant of the quintic
x^5 + 10a x^3 + 10b x^2 + 5c x + d."""

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldMismatch, SingularCurve, UnsupportedCharacteristic, UnsupportedField
from .field_kernel import (QQ, ComplexField, FiniteField, Polynomial, compose_fields, embedding,
                           extension_of, poly_gcd_squarefree, resultant_discriminant,
                           polynomial_roots, roots_in_field, roots_in_splitting_field,
                           splitting_degree)
from .projective_geometry import INFINITY, is_infinite


class Genus2Curve:
    """y^2 = f(x) with f squarefree of degree 5 or 6."""

    def __init__(self, f, check=True):
        F = f.field
        if F.characteristic == 2:
            raise UnsupportedCharacteristic("genus-2 models y^2 = f(x) need odd characteristic")
        if f.degree not in (5, 6):
            raise SingularCurve(f"f has degree {f.degree}, expected 5 or 6")
        if check and F.exact and not poly_gcd_squarefree(f)[1]:
            raise SingularCurve("f has a repeated root")
        self.f = f
        self.field = F

    @classmethod
    def from_coefficients(cls, field, coefficients):
        return cls(Polynomial.from_values(field, coefficients))

    def __repr__(self):
        return f"y^2 = {self.f} over {self.field}"

    def __eq__(self, other):
        return isinstance(other, Genus2Curve) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def to_json(self):
        F = self.field
        out = {"char": F.characteristic, "ext": F.degree, "f": self.f.to_json()}
        if hasattr(F, "modulus"):
            out["modulus"] = [str(c) for c in F.modulus]
        if isinstance(F, ComplexField):
            out["precision"] = F.precision
        return out


@dataclass
class BranchSet:
    """Six points of the projective line (raw values of ``field`` or INFINITY)."""

    field: object
    points: list

    def finite(self):
        return [t for t in self.points if not is_infinite(t)]

    def to_json(self):
        return ["oo" if is_infinite(t) else self.field.to_json(t) for t in self.points]

    def mapped(self, emb, field):
        return BranchSet(field, [t if is_infinite(t) else emb(t) for t in self.points])


@dataclass
class EllipticPair:
    """Two elliptic curves given by j-invariants and their 4-point branch data."""

    field: object
    j_invariants: tuple
    branch_data: tuple

    def to_json(self):
        F = self.field
        return {"j": [F.to_json(j) for j in self.j_invariants],
                "branch": [["oo" if is_infinite(t) else F.to_json(t) for t in pts]
                           for pts in self.branch_data]}


def _rational_roots(f):
    import sympy
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f.coefficients)], x)
    roots = poly.ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)


def branch_points(curve):
    """(E, BranchSet): the roots of f in its splitting field, plus infinity
    when deg f = 5.  Over the rationals only split polynomials are handled."""
    f, F = curve.f, curve.field
    if isinstance(F, FiniteField):
        E, roots = roots_in_splitting_field(f)
        pts = [r.raw for r, _ in roots]
    elif F is QQ:
        pts = _rational_roots(f)
        if len(pts) != f.degree:
            raise UnsupportedField("the branch points are not all rational")
        E = F
    elif isinstance(F, ComplexField):
        ctx = F.ctx
        roots = polynomial_roots(F, list(f.coefficients))
        pts = sorted((ctx.mpc(r) for r in roots), key=F.key)
        E = F
    else:
        raise UnsupportedField(f"branch points over {F}")
    if f.degree == 5:
        pts.append(INFINITY)
    return E, BranchSet(E, pts)


def quintic_model(curve):
    """An isomorphic model y^2 = monic quintic over the same field.

    A sextic needs a rational root, which is moved to infinity."""
    f, F = curve.f, curve.field
    if f.degree == 6:
        if not isinstance(F, FiniteField):
            raise UnsupportedField("sextic to quintic conversion needs a finite field")
        roots = roots_in_field(f)
        if not roots:
            raise UnsupportedField("no rational Weierstrass point to move to infinity")
        shifted = f.compose(Polynomial(F, [roots[0], F.one]))
        f = Polynomial(F, [shifted[6 - i] for i in range(6)])
    c = f.leading()
    if not F.eq(c, F.one):
        inv = F.inv(c)
        m = [F.mul(inv, x) for x in f.coefficients]
        f = Polynomial(F, [F.mul(m[i], F.pow(c, 5 - i)) for i in range(6)])
    return Genus2Curve(f, check=False)


# --------------------------------------------------------------- Möbius maps

def _hpoint(F, t):
    return (F.one, F.zero) if is_infinite(t) else (t, F.one)


def _dehom(F, v):
    x, z = v
    if F.is_zero(z):
        return INFINITY
    return F.div(x, z)


def _frame(F, u1, u2, u3):
    """Matrix sending (1,0), (0,1), (1,1) to the homogeneous points u1, u2, u3."""
    (a, c), (b, d), (x, z) = u1, u2, u3
    det = F.sub(F.mul(a, d), F.mul(b, c))
    l1 = F.div(F.sub(F.mul(x, d), F.mul(b, z)), det)
    l2 = F.div(F.sub(F.mul(a, z), F.mul(x, c)), det)
    return [[F.mul(l1, a), F.mul(l2, b)], [F.mul(l1, c), F.mul(l2, d)]]


def _mat_mul(F, A, B):
    return [[F.add(F.mul(A[i][0], B[0][j]), F.mul(A[i][1], B[1][j])) for j in range(2)]
            for i in range(2)]


def _mat_adj(F, A):
    return [[A[1][1], F.neg(A[0][1])], [F.neg(A[1][0]), A[0][0]]]


def mobius_through(F, src, dst):
    """The fractional-linear map sending three points src to three points dst."""
    A = _frame(F, *[_hpoint(F, t) for t in src])
    B = _frame(F, *[_hpoint(F, t) for t in dst])
    return _mat_mul(F, B, _mat_adj(F, A))


def mobius_apply(F, M, t):
    x, z = _hpoint(F, t)
    return _dehom(F, (F.add(F.mul(M[0][0], x), F.mul(M[0][1], z)),
                      F.add(F.mul(M[1][0], x), F.mul(M[1][1], z))))


def _same_point(F, s, t):
    if is_infinite(s) or is_infinite(t):
        return s is t
    return F.eq(s, t)


def _member(F, t, pts):
    return any(_same_point(F, t, s) for s in pts)


def normalize_matrix(F, M):
    """Scale a 2x2 matrix so that its first nonzero entry is 1."""
    lead = next(x for row in M for x in row if not F.is_zero(x))
    inv = F.inv(lead)
    return [[F.mul(inv, x) for x in row] for row in M]


def find_mobius(F, src_points, dst_points):
    """A Möbius map sending the set src onto the set dst, or None."""
    if len(src_points) != len(dst_points):
        return None
    base = src_points[:3]
    rest = src_points[3:]
    exact_lookup = F.exact
    if exact_lookup:
        dst_set = {("oo" if is_infinite(t) else t) for t in dst_points}
    for triple in itertools.permutations(dst_points, 3):
        M = mobius_through(F, base, triple)
        ok = True
        for t in rest:
            img = mobius_apply(F, M, t)
            if exact_lookup:
                if ("oo" if is_infinite(img) else img) not in dst_set:
                    ok = False
                    break
            elif not _member(F, img, dst_points):
                ok = False
                break
        if ok:
            return M
    return None


def _common_field(C1, C2):
    """Both defining polynomials over one field, via the standard embedding
    of the smaller coefficient field into the larger."""
    F1, F2 = C1.field, C2.field
    if F1 is F2:
        return F1, C1.f, C2.f
    if not (isinstance(F1, FiniteField) and isinstance(F2, FiniteField)):
        raise FieldMismatch("curves over different fields")
    if F2.n % F1.n == 0:
        return F2, embedding(F1, F2).poly(C1.f), C2.f
    if F1.n % F2.n == 0:
        return F1, C1.f, embedding(F2, F1).poly(C2.f)
    E, e1, e2 = compose_fields(F1, F2)
    return E, e1.poly(C1.f), e2.poly(C2.f)


def _branch_in(f, E, emb):
    pts = roots_in_field(emb.poly(f))
    return pts + ([INFINITY] if f.degree == 5 else [])


def is_isomorphic(C1, C2, max_extension_degree=None):
    """Witness matrix [[a, b], [c, d]] (FieldElements) of a fractional-linear
    map taking the branch set of C1 onto that of C2, or None."""
    if C1.field.characteristic != C2.field.characteristic:
        raise FieldMismatch("curves over fields of different characteristic")
    G, f1, f2 = _common_field(C1, C2)
    if isinstance(G, FiniteField):
        d = math.lcm(splitting_degree(f1), splitting_degree(f2))
        if max_extension_degree is not None and G.n * d > max_extension_degree:
            return None
        E, emb = extension_of(G, d)
        B1, B2 = _branch_in(f1, E, emb), _branch_in(f2, E, emb)
        if len(B1) != 6 or len(B2) != 6:
            raise SingularCurve("branch set with fewer than six points")
    else:
        E, B1 = branch_points(Genus2Curve(f1, check=False))
        _, B2 = branch_points(Genus2Curve(f2, check=False))
        B1, B2 = B1.points, B2.points
    M = find_mobius(E, B1, B2)
    if M is None:
        return None
    return [[E.elem(x) for x in row] for row in normalize_matrix(E, M)]


def frobenius_twist(curve):
    """The curve whose coefficients are raised to the p-th power."""
    F = curve.field
    if not isinstance(F, FiniteField):
        raise UnsupportedField("the Frobenius twist needs a finite field")
    return Genus2Curve(curve.f.map(lambda c: F.frobenius(c, 1), F), check=False)


# --------------------------------------------------------------- Salmon

# The discriminant exactly as printed: (coefficient, exponents of a, b, c, d).
SALMON_PRINTED = (
    (1, (0, 0, 0, 4)), (-120, (1, 1, 0, 3)), (160, (1, 0, 2, 2)), (360, (0, 2, 1, 2)),
    (-640, (0, 1, 3, 1)), (256, (0, 0, 5, 0)), (-1440, (0, 3, 1, 2)), (2640, (2, 2, 0, 2)),
    (4480, (2, 1, 2, 1)), (-2560, (2, 0, 4, 0)), (-10080, (1, 3, 1, 1)), (5760, (1, 3, 3, 0)),
    (3456, (0, 5, 0, 1)), (3456, (5, 0, 0, 2)), (-2160, (0, 4, 2, 0)), (-11520, (4, 1, 1, 1)),
    (6400, (4, 0, 3, 0)), (5120, (3, 0, 3, 1)), (-3200, (3, 2, 2, 0)),
)
SALMON_WEIGHTS = (2, 3, 4, 5)
SALMON_DEGREE = 20


def weight(exps):
    return sum(w * e for w, e in zip(SALMON_WEIGHTS, exps))


def evaluate_terms(terms, values, field=QQ):
    F = field
    acc = F.zero
    for coef, exps in terms:
        term = F.from_int(coef)
        for v, e in zip(values, exps):
            if e:
                term = F.mul(term, F.pow(v, e))
        acc = F.add(acc, term)
    return acc


def salmon_quintic(field, a, b, c, d):
    """x^5 + 10a x^3 + 10b x^2 + 5c x + d."""
    F = field
    return Polynomial(F, [d, F.mul(F.from_int(5), c), F.mul(F.from_int(10), b),
                          F.mul(F.from_int(10), a), F.zero, F.one])


def _single_token_edits(exps):
    """Monomials reachable by changing one variable letter or one exponent."""
    out = set()
    for i, e in enumerate(exps):
        if not e:
            continue
        for j in range(4):
            if j != i:
                new = list(exps)
                new[i] -= e
                new[j] += e
                out.add(tuple(new))
        for k in range(0, 7):
            if k != e:
                new = list(exps)
                new[i] = k
                out.add(tuple(new))
    return out


@dataclass
class SalmonCorrection:
    term_index: int
    coefficient: int
    printed: tuple
    corrected: tuple

    def to_json(self):
        names = "abcd"

        def mono(exps):
            return "".join(n + (f"^{e}" if e > 1 else "") for n, e in zip(names, exps) if e)

        return {"coefficient": self.coefficient, "printed": mono(self.printed),
                "corrected": mono(self.corrected)}


def _random_quintic_params(rng):
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]


def _proportional_to_discriminant(terms, samples):
    """λ with terms = λ * disc at every sample, or None."""
    lam = None
    for vals in samples:
        disc = resultant_discriminant(salmon_quintic(QQ, *vals))
        value = evaluate_terms(terms, vals)
        if disc == 0:
            if value != 0:
                return None
            continue
        ratio = value / disc
        if lam is None:
            lam = ratio
        elif ratio != lam:
            return None
    return lam


@dataclass
class SalmonReport:
    printed_terms: int
    corrections: list
    terms: tuple
    scale: Fraction

    def to_json(self):
        return {"printed_terms": self.printed_terms,
                "misweighted_terms": len(self.corrections),
                "corrections": [c.to_json() for c in self.corrections],
                "lambda": f"{self.scale.numerator}/{self.scale.denominator}"}


def find_salmon_corrections(samples=12, seed=20):
    """Repair the printed formula: every term of the wrong weight is replaced
    by a single-token edit of weight 20, choosing the unique combination
    proportional to the resultant discriminant at random sample points."""
    rng = random.Random(seed)
    points = [_random_quintic_params(rng) for _ in range(samples)]
    bad = [i for i, (_, e) in enumerate(SALMON_PRINTED) if weight(e) != SALMON_DEGREE]
    options = [sorted(m for m in _single_token_edits(SALMON_PRINTED[i][1])
                      if weight(m) == SALMON_DEGREE) for i in bad]
    found = []
    for choice in itertools.product(*options):
        terms = list(SALMON_PRINTED)
        for i, mono in zip(bad, choice):
            terms[i] = (terms[i][0], mono)
        lam = _proportional_to_discriminant(terms, points)
        if lam is not None:
            found.append((choice, lam, tuple(terms)))
    if len(found) != 1:
        raise ValueError(f"{len(found)} consistent corrections of the printed discriminant")
    choice, lam, terms = found[0]
    corrections = [SalmonCorrection(i, SALMON_PRINTED[i][0], SALMON_PRINTED[i][1], m)
                   for i, m in zip(bad, choice)]
    return SalmonReport(len(SALMON_PRINTED), corrections, terms, lam)


_SALMON_CACHE = {}


def salmon_terms(corrected=True):
    if not corrected:
        return SALMON_PRINTED
    if "report" not in _SALMON_CACHE:
        _SALMON_CACHE["report"] = find_salmon_corrections()
    return _SALMON_CACHE["report"].terms


def salmon_discriminant(a, b, c, d, field=QQ, corrected=True):
    """Salmon's expression for the discriminant of the normalised quintic.

    With ``corrected=False`` the formula is evaluated exactly as printed."""
    if field.characteristic != 0:
        raise UnsupportedCharacteristic("Salmon's formula is stated in characteristic 0")
    vals = [field.coerce(v) for v in (a, b, c, d)]
    return evaluate_terms(salmon_terms(corrected), vals, field)


def salmon_verification(agreements=100, homogeneity=50, seed=1):
    """λ from one evaluation, then exact agreement with the resultant
    discriminant and weighted homogeneity on random samples."""
    report = _SALMON_CACHE.get("report") or find_salmon_corrections()
    _SALMON_CACHE["report"] = report
    terms = report.terms
    rng = random.Random(seed)
    base = [Fraction(1), Fraction(2), Fraction(-1), Fraction(3)]
    lam = evaluate_terms(terms, base) / resultant_discriminant(salmon_quintic(QQ, *base))
    agree = 0
    disagreements = []
    for _ in range(agreements):
        vals = _random_quintic_params(rng)
        disc = resultant_discriminant(salmon_quintic(QQ, *vals))
        if evaluate_terms(terms, vals) == lam * disc:
            agree += 1
        elif len(disagreements) < 5:
            disagreements.append([str(v) for v in vals])
    homogeneous = 0
    for _ in range(homogeneity):
        vals = _random_quintic_params(rng)
        t = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        scaled = [t ** w * v for w, v in zip(SALMON_WEIGHTS, vals)]
        if evaluate_terms(terms, scaled) == t ** SALMON_DEGREE * evaluate_terms(terms, vals):
            homogeneous += 1
    printed_ok = _proportional_to_discriminant(SALMON_PRINTED, [base] + [
        _random_quintic_params(rng) for _ in range(4)]) is not None
    return {
        "overlay": report.to_json(),
        "lambda": f"{lam.numerator}/{lam.denominator}",
        "lambda_matches_search": lam == report.scale,
        "agreements": agree,
        "samples": agreements,
        "counterexamples": disagreements,
        "homogeneity_passes": homogeneous,
        "homogeneity_samples": homogeneity,
        "printed_formula_proportional": printed_ok,
        "passed": agree == agreements and homogeneous == homogeneity and lam == report.scale,
    }
