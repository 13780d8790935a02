"""The Coble matrix system, the Burkhardt quartic and the Maschke arrangement.

Everything here is exact (rationals or Q(eta), eta^2 + eta + 1 = 0) except
the Hessian sampling used to exercise ``cplus`` numerically.

Printed matrix entries are stored as token data, one list of signed monomials
per entry.  ``assemble_coble_cubic`` checks that the nine quadrics are the
partial derivatives of one cubic (up to a diagonal rescaling) and, if not,
searches single-token repairs of the suspect entries.  Every repair is
recorded in an overlay; nothing is corrected silently.
"""

import itertools
import random
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import IntegrabilityFailure, InvalidInput, KernelDegenerate
from .field_kernel import (QQ, Polynomial, complex_field, eisenstein_field, polynomial_roots,
                           sqrt_minus_three)
from .linalg import det, kernel, numeric_rank, rank
from .mpoly import MPoly

Y_NAMES = ("y0", "y1", "y2", "y3", "y4")
Z_NAMES = ("z1", "z2", "z3", "z4")
A_NAMES = ("a0", "a1", "a2", "a3", "a4")
NAMES = Y_NAMES + Z_NAMES + A_NAMES
INDEX = {n: i for i, n in enumerate(NAMES)}
NVARS = len(NAMES)
COORDS = 9  # y0..y4, z1..z4

# Row rescaling that makes M(0, z) skew and the Hessian block symmetric.
ROW_SCALE = (1, 2, 2, 2, 2)


# --------------------------------------------------------------------------
# token data

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*((?:[yz]\d(?:\^\d)?)+)")


def parse_entry(text):
    """'2y2y3 - 2z2z4' -> ((2, ('y2','y3')), (-2, ('z2','z4'))).  '0' -> ()."""
    text = text.replace(" ", "")
    if text == "0":
        return ()
    terms, pos = [], 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise InvalidInput(f"cannot parse matrix entry {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2) or 1)
        factors = []
        for name, power in re.findall(r"([yz]\d)(?:\^(\d))?", m.group(3)):
            factors.extend([name] * int(power or 1))
        terms.append((sign * coef, tuple(sorted(factors))))
        pos = m.end()
    return tuple(terms)


def format_entry(terms):
    if not terms:
        return "0"
    out = []
    for coef, factors in terms:
        mono = "".join(factors)
        for name in set(factors):
            k = factors.count(name)
            if k > 1:
                mono = mono.replace(name * k, f"{name}^{k}")
        sign = "-" if coef < 0 else "+"
        mag = "" if abs(coef) == 1 else str(abs(coef))
        out.append(f"{sign} {mag}{mono}")
    s = " ".join(out)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _rows(spec):
    return tuple(tuple(parse_entry(e) for e in row) for row in spec)


PRINTED_FEQ = _rows([
    ["y0^2", "2y1^2 - 2z1^2", "2y2^2 - 2z2^2", "2y3^2 - 2z3^2", "2y4^2 - 2z4^2"],
    ["y1^2 + z1^2", "2y0y1", "2y3y4 - 2z3z4", "2y2y4 - 2z2z4", "2y2y3 - 2z2z4"],
    ["y2^2 + z2^2", "2y3y4 - 2z3z4", "2y0y2", "2y1y4 + 2z1z4", "2y1y3 - 2z1z3"],
    ["y3^2 + z3^2", "2y2y4 + 2z2z4", "2y1y4 - 2z1z4", "2y0y1", "2y1y2 + 2z1z2"],
    ["y4^2 + z4^2", "2y2y3 + 2z2z3", "2y1y3 + 2z1z3", "2y1y2 - 2z1z2", "2y0y4"],
])

PRINTED_SECEQ = _rows([
    ["0", "-2z1^2", "-2z2^2", "-2z3^2", "-2z4^2"],
    ["z1^2", "0", "-2z3z4", "-2z2z4", "-2z2z4"],
    ["z2^2", "-2z3z4", "0", "2z1z4", "-2z1z3"],
    ["z3^2", "2z2z4", "-2z1z4", "0", "2z1z2"],
    ["z4^2", "2z2z3", "2z1z3", "-2z1z2", "0"],
])

PRINTED_HES = _rows([
    ["y0^2", "2y1^2", "2y2^2", "2y3^2", "2y4^2"],
    ["y1^2", "2y0y1", "2y3y4", "2y2y4", "2y2y3"],
    ["y2^2", "2y3y4", "2y0y2", "2y1y4", "2y1y3"],
    ["y3^2", "2y2y4", "2y1y4", "2y0y1", "2y1y2"],
    ["y4^2", "2y2y3", "2y1y3", "2y1y2", "2y0y4"],
])

# z_1 pi_01 + z_2 pi_43 + ..., as (z index, (i, j)) pairs per quadric
TWOEQ = (
    ((1, (0, 1)), (2, (4, 3)), (3, (2, 4)), (4, (3, 2))),
    ((1, (4, 3)), (2, (0, 2)), (3, (1, 4)), (4, (1, 3))),
    ((1, (2, 4)), (2, (1, 4)), (3, (0, 3)), (4, (1, 2))),
    ((1, (3, 2)), (2, (1, 3)), (3, (1, 2)), (4, (0, 4))),
)

# printed closed form of the kernel map, as polynomials in z
PRINTED_MB = (
    "6z1z2z3z4",
    "z1z2^3 + z1z3^3 - z1z4^3",
    "-z2z1^3 - z2z3^3 - z2z4^3",
    "-z3z1^3 - z3z2^3 + z3z4^3",
    "z4z1^3 + z4z2^3 - z4z3^3",
)


def entry_poly(terms, field=QQ):
    out = MPoly(field, NVARS)
    for coef, factors in terms:
        e = [0] * NVARS
        for name in factors:
            e[INDEX[name]] += 1
        out = out + MPoly(field, NVARS, {tuple(e): field.from_int(coef)})
    return out


def _var(name, field=QQ):
    return MPoly.var(field, NVARS, INDEX[name])


def twoeq_quadrics(field=QQ):
    y = [_var(n, field) for n in Y_NAMES]
    a = [_var(n, field) for n in A_NAMES]
    z = {k: _var(f"z{k}", field) for k in range(1, 5)}
    out = []
    for row in TWOEQ:
        q = MPoly(field, NVARS)
        for zk, (i, j) in row:
            q = q + z[zk] * (a[i] * y[j] - a[j] * y[i])
        out.append(q)
    return out


# --------------------------------------------------------------------------
# the Coble system and its correction search

@dataclass(frozen=True)
class Correction:
    position: tuple
    printed: str
    corrected: str
    tag: str

    def to_json(self):
        return {"position": list(self.position), "printed": self.printed,
                "corrected": self.corrected, "tag": self.tag}


@dataclass
class CobleSystem:
    """The 5x5 matrix M(y, z) (token data) acting on alpha, plus the extra
    quadrics (the alpha-bilinear relations), and the overlay of repairs."""

    entries: tuple
    extra: tuple = ()
    overlay: list = dc_field(default_factory=list)

    @classmethod
    def printed(cls):
        return cls(PRINTED_FEQ, tuple(twoeq_quadrics()))

    def entry(self, r, c):
        return entry_poly(self.entries[r][c])

    def quadrics(self):
        a = [_var(n) for n in A_NAMES]
        rows = []
        for r in range(5):
            q = MPoly(QQ, NVARS)
            for c in range(5):
                q = q + self.entry(r, c) * a[c]
            rows.append(q)
        return rows + list(self.extra)

    def with_entry(self, r, c, terms):
        entries = [list(row) for row in self.entries]
        entries[r][c] = terms
        return CobleSystem(tuple(tuple(row) for row in entries), self.extra, list(self.overlay))

    def z_part(self, r, c):
        return tuple(t for t in self.entries[r][c] if t[1][0].startswith("z"))

    def y_part(self, r, c):
        return tuple(t for t in self.entries[r][c] if t[1][0].startswith("y"))


def _column_pieces(quadrics):
    """piece[i][c] = coefficient of alpha_c in quadric i."""
    return [[q.coefficient(INDEX[A_NAMES[c]]) for c in range(5)] for q in quadrics]


def _block(pieces, i, j, c):
    """(A, B) with the integrability condition w_i A = w_j B for column c."""
    return pieces[i][c].diff(j), pieces[j][c].diff(i)


def integrating_weights(quadrics):
    """Diagonal weights w with w_i dQ_i/dx_j = w_j dQ_j/dx_i for all pairs,
    normalized so w_0 = 1; None when no such weights exist."""
    pieces = _column_pieces(quadrics)
    rows = []
    n = len(quadrics)
    for i, j in itertools.combinations(range(n), 2):
        for c in range(5):
            A, B = _block(pieces, i, j, c)
            for mono in set(A.terms) | set(B.terms):
                row = [QQ.zero] * n
                row[i] = A.terms.get(mono, QQ.zero)
                row[j] = -B.terms.get(mono, QQ.zero)
                rows.append(row)
    basis = kernel(QQ, rows, n)
    if len(basis) != 1 or any(w == 0 for w in basis[0]):
        return None
    w = basis[0]
    return tuple(x / w[0] for x in w)


def mixed_partial_residuals(quadrics, weights):
    """Nonzero w_i dQ_i/dx_j - w_j dQ_j/dx_i, keyed by (i, j)."""
    out = {}
    for i, j in itertools.combinations(range(len(quadrics)), 2):
        r = quadrics[i].diff(j).scale(QQ.convert(weights[i])) - \
            quadrics[j].diff(i).scale(QQ.convert(weights[j]))
        if r:
            out[(i, j)] = r
    return out


def _vote_weights(pieces):
    """Majority estimate of the weights from the blocks that are already
    proportional; robust to a few misprinted entries."""
    n = len(pieces)
    votes = {}
    for i, j in itertools.combinations(range(n), 2):
        for c in range(5):
            A, B = _block(pieces, i, j, c)
            if A and B:
                ok, ratio = A.is_proportional(B)
                if ok:
                    tally = votes.setdefault((i, j), {})
                    tally[ratio] = tally.get(ratio, 0) + 1
    w = {0: Fraction(1)}
    while len(w) < n:
        best = None
        for (i, j), tally in votes.items():
            if (i in w) == (j in w):
                continue
            ratio, count = max(tally.items(), key=lambda kv: (kv[1], kv[0]))
            if best is None or count > best[0]:
                best = (count, i, j, ratio)
        if best is None:
            return None
        _, i, j, ratio = best
        # w_j / w_i = ratio
        if i in w:
            w[j] = w[i] * ratio
        else:
            w[i] = w[j] / ratio
    return tuple(w[k] for k in range(n))


def _letter_alternatives(name):
    if name.startswith("y"):
        return [n for n in Y_NAMES if n != name]
    return [n for n in Z_NAMES if n != name]


def entry_edits(terms):
    """All single-token repairs of an entry: flip the sign of one term, or
    move one subscript of one factor to another index of the same letter."""
    out = []
    for k, (coef, factors) in enumerate(terms):
        flipped = list(terms)
        flipped[k] = (-coef, factors)
        out.append(tuple(flipped))
        for pos, name in enumerate(factors):
            for alt in _letter_alternatives(name):
                new = list(factors)
                new[pos] = alt
                changed = list(terms)
                changed[k] = (coef, tuple(sorted(new)))
                out.append(tuple(changed))
    seen, unique = set(), []
    original = entry_poly(terms)
    for t in out:
        key = frozenset(entry_poly(t).terms.items())
        if key in seen or entry_poly(t) == original:
            continue
        seen.add(key)
        unique.append(t)
    return unique


def _column_failures(pieces, weights, c):
    fails = []
    for i, j in itertools.combinations(range(len(pieces)), 2):
        A, B = _block(pieces, i, j, c)
        if A.scale(QQ.convert(weights[i])) != B.scale(QQ.convert(weights[j])):
            fails.append((i, j))
    return fails


def _skew_violations(system):
    count = 0
    for r, c in itertools.combinations(range(5), 2):
        lhs = entry_poly(system.z_part(r, c)).scale(Fraction(ROW_SCALE[r]))
        rhs = entry_poly(system.z_part(c, r)).scale(Fraction(ROW_SCALE[c]))
        if lhs + rhs:
            count += 1
    return count


def _hessian_mismatches(system):
    target = burkhardt_hessian()
    count = 0
    for r in range(5):
        for c in range(5):
            lhs = entry_poly(system.y_part(r, c)).scale(Fraction(12 * ROW_SCALE[r]))
            if lhs != target[r][c]:
                count += 1
    return count


@dataclass
class CobleReport:
    system: CobleSystem
    weights: tuple
    cubic: MPoly
    printed_integrable: bool
    residuals_before: dict
    skew_ok: bool
    hessian_ok: bool

    def to_json(self):
        return {
            "printed_integrable": self.printed_integrable,
            "printed_residual_pairs": [[NAMES[i], NAMES[j]] for i, j in sorted(self.residuals_before)],
            "corrections": [c.to_json() for c in self.system.overlay],
            "weights": [str(w) for w in self.weights],
            "integrable": True,
            "skew_symmetric_after_rescaling": self.skew_ok,
            "hessian_block_matches": self.hessian_ok,
            "cubic_terms": len(self.cubic.terms),
        }


def _search_column(system, weights, c, max_edits):
    """Minimal sets of entry repairs in column c that clear its blocks."""
    quadrics = system.quadrics()
    pieces = _column_pieces(quadrics)
    fails = _column_failures(pieces, weights, c)
    if not fails:
        return [], []
    suspects = sorted({k for pair in fails for k in pair if k < 5})
    extra_pieces = [p[c] for p in pieces[5:]]
    for size in range(1, max_edits + 1):
        found = []
        for rows in itertools.combinations(suspects, size):
            if any(not (set(pair) & set(rows)) for pair in fails):
                continue
            options = [entry_edits(system.entries[r][c]) for r in rows]
            for choice in itertools.product(*options):
                col = [pieces[r][c] for r in range(5)]
                for r, terms in zip(rows, choice):
                    col[r] = entry_poly(terms)
                col = col + extra_pieces
                ok = True
                for i, j in itertools.combinations(range(len(col)), 2):
                    if i not in rows and j not in rows:
                        if (i, j) in fails:
                            ok = False
                            break
                        continue
                    if col[i].diff(j).scale(QQ.convert(weights[i])) != \
                            col[j].diff(i).scale(QQ.convert(weights[j])):
                        ok = False
                        break
                if ok:
                    found.append(tuple(zip(rows, choice)))
        if found:
            return found, fails
    raise IntegrabilityFailure(f"no repair of column {c} within {max_edits} entry edits "
                               f"(failing pairs {fails})")


def assemble_coble_cubic(system=None, max_edits=2):
    """Check integrability, repair if needed, and return the cubic.

    The cubic F satisfies dF/dx_i = w_i Q_i for the nine coordinates x; it is
    assembled by Euler's formula F = (1/3) sum x_i w_i Q_i."""
    system = system or CobleSystem.printed()
    quadrics = system.quadrics()
    weights = integrating_weights(quadrics)
    printed_ok = weights is not None
    residuals_before = {}
    if not printed_ok:
        estimate = _vote_weights(_column_pieces(quadrics))
        if estimate is None:
            raise IntegrabilityFailure("cannot estimate integrating weights")
        residuals_before = mixed_partial_residuals(quadrics, estimate)
        for c in range(5):
            candidates, _ = _search_column(system, estimate, c, max_edits)
            if not candidates:
                continue
            if len(candidates) > 1:
                scored = []
                for cand in candidates:
                    trial = system
                    for r, terms in cand:
                        trial = trial.with_entry(r, c, terms)
                    scored.append(((_skew_violations(trial), _hessian_mismatches(trial)), cand))
                scored.sort(key=lambda s: s[0])
                if scored[0][0] == scored[1][0]:
                    raise IntegrabilityFailure(f"ambiguous repair of column {c}: "
                                               f"{[s[1] for s in scored[:2]]}")
                candidates = [scored[0][1]]
                tag = "integrability+skew/hessian"
            else:
                tag = "integrability"
            for r, terms in candidates[0]:
                printed = format_entry(system.entries[r][c])
                system = system.with_entry(r, c, terms)
                system.overlay.append(Correction((r, c), printed, format_entry(terms), tag))
        quadrics = system.quadrics()
        weights = integrating_weights(quadrics)
        if weights is None:
            raise IntegrabilityFailure("repairs did not produce an exact gradient system")
    x = [MPoly.var(QQ, NVARS, i) for i in range(COORDS)]
    cubic = MPoly(QQ, NVARS)
    for i in range(COORDS):
        cubic = cubic + (x[i] * quadrics[i]).scale(QQ.convert(weights[i]))
    cubic = cubic.scale(Fraction(1, 3))
    for i in range(COORDS):
        assert cubic.diff(i) == quadrics[i].scale(QQ.convert(weights[i]))
    return CobleReport(system, weights, cubic, printed_ok, residuals_before,
                       _skew_violations(system) == 0, _hessian_mismatches(system) == 0)


_CORRECTED = None


def corrected_system():
    global _CORRECTED
    if _CORRECTED is None:
        _CORRECTED = assemble_coble_cubic().system
    return _CORRECTED


# --------------------------------------------------------------------------
# the Burkhardt quartic and its Hessian

def burkhardt_polynomial(field=QQ):
    T = [_var(n, field) for n in Y_NAMES]
    return (T[0] ** 4 + T[0] * (T[1] ** 3 + T[2] ** 3 + T[3] ** 3 + T[4] ** 3) * 8
            + T[1] * T[2] * T[3] * T[4] * 48)


def burkhardt_eval(alpha, field=QQ):
    """T0^4 + 8 T0 (T1^3 + T2^3 + T3^3 + T4^3) + 48 T1 T2 T3 T4 (raw values)."""
    F = field
    t0, t1, t2, t3, t4 = (F.coerce(a) for a in alpha)
    cubes = F.sum(F.pow(t, 3) for t in (t1, t2, t3, t4))
    return F.sum([F.pow(t0, 4), F.mul(F.from_int(8), F.mul(t0, cubes)),
                  F.mul(F.from_int(48), F.mul(F.mul(t1, t2), F.mul(t3, t4)))])


def burkhardt_hessian():
    B = burkhardt_polynomial()
    return [[B.diff(i).diff(j) for j in range(5)] for i in range(5)]


def hessian_identity_check(system=None):
    """Compare 12 * diag(1,2,2,2,2) * (coefficient matrix of the y-block)
    with the second partials of the Burkhardt quartic, for both the printed
    Hessian block and the y-part of the corrected system."""
    system = system or corrected_system()
    target = burkhardt_hessian()
    names = list(NAMES)

    def compare(entries):
        scalar = None
        mismatches = []
        for r in range(5):
            for c in range(5):
                lhs = entry_poly(entries[r][c]).scale(Fraction(ROW_SCALE[r]))
                ok, ratio = target[r][c].is_proportional(lhs) if lhs else (not target[r][c], None)
                if ok and ratio is not None:
                    scalar = scalar or ratio
                    if ratio == scalar:
                        continue
                mismatches.append({"position": [r, c], "entry": format_entry(entries[r][c]),
                                   "second_partial": target[r][c].format(names)})
        return scalar, mismatches

    printed_scalar, printed_bad = compare(PRINTED_HES)
    corrected = tuple(tuple(system.y_part(r, c) for c in range(5)) for r in range(5))
    scalar, bad = compare(corrected)
    return {
        "scalar": str(scalar),
        "printed_mismatches": printed_bad,
        "corrected_mismatches": bad,
        "identity_holds": scalar == 12 and not bad,
        "corrected_matrix": [[format_entry(e) for e in row] for row in corrected],
    }


def seceq_consistency(system=None):
    """Printed M(0, z) against the z-part of the corrected system."""
    system = system or corrected_system()
    diffs = []
    for r in range(5):
        for c in range(5):
            printed = PRINTED_SECEQ[r][c]
            ours = system.z_part(r, c)
            if entry_poly(printed) != entry_poly(ours):
                diffs.append({"position": [r, c], "printed": format_entry(printed),
                              "corrected": format_entry(ours)})
    return diffs


# --------------------------------------------------------------------------
# the kernel maps

def _pf4(m, idx):
    a, b, c, d = idx
    return m[a][b] * m[c][d] - m[a][c] * m[b][d] + m[a][d] * m[b][c]


_ALPHA = None


def cminus_polynomials():
    """alpha(z) as polynomials: the Pfaffian vector of diag(1,2,2,2,2) M(0,z),
    rescaled so that alpha_0 = 6 z1 z2 z3 z4."""
    global _ALPHA
    if _ALPHA is None:
        system = corrected_system()
        S = [[entry_poly(system.z_part(r, c)).scale(Fraction(ROW_SCALE[r])) for c in range(5)]
             for r in range(5)]
        pf = []
        for i in range(5):
            rest = [k for k in range(5) if k != i]
            p = _pf4(S, rest)
            pf.append(p if i % 2 == 0 else -p)
        target = entry_poly(parse_entry(PRINTED_MB[0]))
        ok, ratio = target.is_proportional(pf[0])
        assert ok
        _ALPHA = tuple(p.scale(ratio) for p in pf)
    return _ALPHA


def _z_values(z, field):
    vals = [field.zero] * NVARS
    for k, v in enumerate(z):
        vals[5 + k] = field.coerce(v)
    return vals


def _map_poly(p, field):
    if field is QQ:
        return p
    return p.map_coefficients(lambda c: field.convert(c), field)


def seceq_matrix(z, field=QQ):
    """Corrected M(0, z) at a point."""
    system = corrected_system()
    vals = _z_values(z, field)
    return [[_map_poly(entry_poly(system.z_part(r, c)), field).evaluate(vals) for c in range(5)]
            for r in range(5)]


def printed_mb(z, field=QQ):
    vals = _z_values(z, field)
    return [_map_poly(entry_poly(parse_entry(t)), field).evaluate(vals) for t in PRINTED_MB]


@dataclass
class CminusResult:
    alpha: tuple
    kernel_dimension: int
    printed_mb: tuple
    printed_mb_agrees: bool
    printed_mb_burkhardt: object


def cminus(z, field=QQ, report=False):
    """Generator of the kernel of M(0, z), via the Pfaffian vector."""
    F = field
    M = seceq_matrix(z, F)
    dim = 5 - rank(F, M)
    if dim != 1:
        raise KernelDegenerate(f"kernel of M(0,z) has dimension {dim}")
    vals = _z_values(z, F)
    alpha = tuple(_map_poly(p, F).evaluate(vals) for p in cminus_polynomials())
    if all(F.is_zero(a) for a in alpha):
        raise KernelDegenerate("Pfaffian vector vanishes")
    assert all(F.is_zero(F.dot(row, alpha)) for row in M)
    if not report:
        return alpha
    mb = tuple(printed_mb(z, F))
    agrees = rank(F, [list(alpha), list(mb)]) == 1
    return CminusResult(alpha, dim, mb, agrees, burkhardt_eval(mb, F))


def hes_matrix(y, field=QQ):
    """Corrected coefficient matrix of the y-block at a point."""
    system = corrected_system()
    F = field
    vals = [F.coerce(v) for v in y] + [F.zero] * (NVARS - 5)
    return [[_map_poly(entry_poly(system.y_part(r, c)), F).evaluate(vals) for c in range(5)]
            for r in range(5)]


def _minor(m, r, c):
    return [[x for j, x in enumerate(row) if j != c] for i, row in enumerate(m) if i != r]


def cofactor_vectors(m, field, by="row"):
    """by='row': (C_k0..C_k4), a column of the adjugate (right kernel);
    by='column': (C_0k..C_4k), the literal column cofactors (left kernel)."""
    F = field
    out = []
    for k in range(5):
        vec = []
        for i in range(5):
            r, c = (k, i) if by == "row" else (i, k)
            d = det(F, _minor(m, r, c))
            vec.append(d if (r + c) % 2 == 0 else F.neg(d))
        out.append(vec)
    return out


def cplus(y, field=QQ, by="row", check=True):
    """The kernel point of the Hessian block at y (a point of Hess(B4))."""
    F = field
    m = hes_matrix(y, F)
    r = rank(F, m) if F.exact else numeric_rank(F, m)
    if r != 4:
        raise KernelDegenerate(f"coefficient matrix has rank {r}, expected corank 1")
    vecs = cofactor_vectors(m, F, by)
    if F.exact:
        nonzero = [v for v in vecs if any(not F.is_zero(x) for x in v)]
    else:
        top = max(abs(x) for v in vecs for x in v)
        nonzero = [v for v in vecs if max(abs(x) for x in v) > F.tolerance * top]
    if not nonzero:
        raise KernelDegenerate("all cofactor vectors vanish")
    if check:
        rk = rank(F, nonzero) if F.exact else numeric_rank(F, nonzero)
        assert rk == 1, "cofactor vectors are not proportional"
    return tuple(nonzero[0])


def hessian_determinant_line(u, v):
    """det of the corrected Hessian block along y = u + t v (exact over QQ)."""
    system = corrected_system()
    rows = []
    for r in range(5):
        row = []
        for c in range(5):
            acc = Polynomial(QQ, [])
            for coef, factors in system.y_part(r, c):
                term = Polynomial(QQ, [QQ.from_int(coef)])
                for name in factors:
                    k = Y_NAMES.index(name)
                    term = term * Polynomial(QQ, [QQ.convert(u[k]), QQ.convert(v[k])])
                acc = acc + term
            row.append(acc)
        rows.append(row)
    from .linalg import poly_matrix_det
    return poly_matrix_det(rows)


def sample_hessian_points(count, precision, rng, height=5):
    """Points of Hess(B4) over CC[precision]: roots of the Hessian determinant
    on random rational lines."""
    F = complex_field(precision)
    ctx = F.ctx
    points = []
    while len(points) < count:
        u = [Fraction(rng.randint(-height, height)) for _ in range(5)]
        v = [Fraction(rng.randint(-height, height)) for _ in range(5)]
        p = hessian_determinant_line(u, v)
        if p.degree < 1:
            continue
        coeffs = [ctx.mpf(c.numerator) / c.denominator for c in p.coefficients]
        roots = polynomial_roots(F, coeffs)
        for t in roots:
            y = [F.convert(a) + t * F.convert(b) for a, b in zip(u, v)]
            points.append(tuple(y))
            if len(points) == count:
                break
    return F, points


# --------------------------------------------------------------------------
# the discriminant Phi_40 and the reflection arrangement

def phi40_factors(z, field=QQ, corrected=True):
    """(z1, z2, z3, z4, A, B, C, D).  ``corrected`` selects the B factor in
    (z1, z2, z4); the printed B repeats the variables of C."""
    F = field
    z1, z2, z3, z4 = (F.coerce(v) for v in z)
    c27 = F.from_int(27)

    def cube(v):
        return F.pow(v, 3)

    def nonic(s, prod, minus):
        s3 = F.pow(s, 3)
        p = F.mul(c27, F.mul(F.mul(cube(prod[0]), cube(prod[1])), cube(prod[2])))
        return F.sub(s3, p) if minus else F.add(s3, p)

    A = nonic(F.add(F.add(cube(z2), cube(z3)), cube(z4)), (z2, z3, z4), True)
    if corrected:
        B = nonic(F.add(F.sub(cube(z1), cube(z2)), cube(z4)), (z1, z2, z4), False)
    else:
        B = nonic(F.add(F.sub(cube(z1), cube(z2)), cube(z3)), (z1, z2, z3), False)
    C = nonic(F.sub(F.add(cube(z1), cube(z2)), cube(z3)), (z1, z2, z3), False)
    D = nonic(F.sub(F.add(cube(z1), cube(z3)), cube(z4)), (z1, z3, z4), False)
    return (z1, z2, z3, z4, A, B, C, D)


def phi40(z, field=QQ, corrected=True):
    """(value, factor values)."""
    F = field
    factors = phi40_factors(z, F, corrected)
    value = F.one
    for v in factors:
        value = F.mul(value, v)
    return value, factors


def phi40_polynomials(field=QQ, corrected=True):
    """The eight factors of Phi_40 as polynomials in z1..z4 (4 variables)."""
    z1, z2, z3, z4 = MPoly.variables(field, 4)
    c27 = field.from_int(27)

    def nonic(x, y, w, minus_w, minus_27):
        s = x ** 3 + y ** 3 + (-(w ** 3) if minus_w else w ** 3)
        p = (x * y * w) ** 3
        return s ** 3 + (p.scale(field.neg(c27)) if minus_27 else p.scale(c27))

    A = nonic(z2, z3, z4, False, True)
    B = nonic(z1, z4, z2, True, False) if corrected else nonic(z1, z3, z2, True, False)
    C = nonic(z1, z2, z3, True, False)
    D = nonic(z1, z3, z4, True, False)
    return [z1, z2, z3, z4, A, B, C, D]


def hessian_discriminant_ratio(z):
    """det Hess(B4)(alpha(z)) / Phi_40(z) for the corrected and printed B.

    The corrected ratio is the same constant at every point; the printed one
    is not."""
    alpha = cminus(z)
    H = burkhardt_hessian()
    vals = list(alpha) + [QQ.zero] * (NVARS - 5)
    m = [[H[r][c].evaluate(vals) for c in range(5)] for r in range(5)]
    d = det(QQ, m)
    out = {}
    for label, corr in (("corrected", True), ("printed", False)):
        value, _ = phi40(z, QQ, corr)
        out[label] = d / value if value else None
    return out


@dataclass
class ReflectionArrangement:
    field: object
    vectors: list
    forms: list  # raw coefficient 4-tuples, first nonzero coefficient 1

    def __len__(self):
        return len(self.forms)

    def linear_forms(self):
        F = self.field
        zs = MPoly.variables(F, 4)
        out = []
        for coeffs in self.forms:
            p = MPoly(F, 4)
            for c, z in zip(coeffs, zs):
                p = p + z.scale(c)
            out.append(p)
        return out

    def families(self):
        """Forms grouped by their support (which coordinates occur)."""
        groups = {}
        for form, poly in zip(self.forms, self.linear_forms()):
            support = tuple(i for i, c in enumerate(form) if not self.field.is_zero(c))
            groups.setdefault(support, []).append(poly)
        return groups

    def evaluate_product(self, z):
        F = self.field
        value = F.one
        for coeffs in self.forms:
            value = F.mul(value, F.dot(list(coeffs), [F.coerce(v) for v in z]))
        return value


def _conj(F, a):
    """Complex conjugation on Q(eta): eta -> eta^2 = -1 - eta."""
    return (a[0] - a[1], -a[1])


def reflection_arrangement(permutations="cyclic"):
    """The reflection hyperplanes {z : z . r = 0} (Hermitian product) for the
    listed reflection vectors, closed under permutations of the last three
    coordinates (cyclic by default) and deduplicated up to scalars."""
    K = eisenstein_field()
    eta = K.generator()
    powers = [K.one, eta, K.mul(eta, eta)]
    s = sqrt_minus_three(K)
    base = [(s, K.zero, K.zero, K.zero), (K.zero, s, K.zero, K.zero)]
    for a, b, c in itertools.product(range(3), repeat=3):
        base.append((K.zero, powers[a], powers[b], powers[c]))
        base.append((powers[a], K.zero, powers[b], K.neg(powers[c])))
    if permutations == "cyclic":
        perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    elif permutations == "all":
        perms = list(itertools.permutations(range(3)))
    else:
        raise InvalidInput("permutations must be 'cyclic' or 'all'")
    vectors, seen, forms = [], set(), []
    for r in base:
        for p in perms:
            v = (r[0],) + tuple(r[1 + k] for k in p)
            vectors.append(v)
            coeffs = [_conj(K, x) for x in v]
            lead = next(x for x in coeffs if any(x))
            inv = K.inv(lead)
            form = tuple(K.mul(inv, x) for x in coeffs)
            if form not in seen:
                seen.add(form)
                forms.append(form)
    return ReflectionArrangement(K, vectors, forms)


def verify_arrangement(arr=None, full_expansion=False):
    """Family-by-family symbolic identities against the factors of Phi_40.

    Each support class of forms multiplies out (exactly, over Q(eta)) to one
    factor of Phi_40; since the factors multiply to Phi_40, this proves the
    product identity.  ``full_expansion`` additionally multiplies all forms
    out and compares with the expanded Phi_40."""
    arr = arr or reflection_arrangement()
    K = arr.field
    factors = phi40_polynomials(K, corrected=True)
    printed_b = phi40_polynomials(K, corrected=False)[5]
    families = arr.families()
    matched, used = {}, set()
    for support, polys in sorted(families.items()):
        prod = MPoly.const(K, 4, 1)
        for p in polys:
            prod = prod * p
        hit = None
        for k, f in enumerate(factors):
            if k in used:
                continue
            ok, ratio = f.is_proportional(prod)
            if ok:
                hit = (k, ratio)
                break
        matched[support] = {"forms": len(polys), "factor": hit[0] if hit else None,
                            "scalar": K.to_json(hit[1]) if hit else None}
        if hit:
            used.add(hit[0])
    report = {
        "count": len(arr),
        "families": {",".join(f"z{i + 1}" for i in s): v for s, v in matched.items()},
        "all_factors_matched": len(used) == 8 and all(v["factor"] is not None for v in matched.values()),
        "degree": sum(len(p) for p in families.values()),
        "printed_B_matches_a_family": any(
            printed_b.is_proportional(_family_product(K, polys))[0] for polys in families.values()),
    }
    if full_expansion:
        prod = MPoly.const(K, 4, 1)
        for p in arr.linear_forms():
            prod = prod * p
        phi = MPoly.const(K, 4, 1)
        for f in factors:
            phi = phi * f
        report["full_expansion_proportional"] = phi.is_proportional(prod)[0]
    return report


def _family_product(K, polys):
    prod = MPoly.const(K, 4, 1)
    for p in polys:
        prod = prod * p
    return prod


def nonic_identity():
    """prod_{b,c} (z2 + eta^b z3 + eta^c z4) == A, symbolically over Q(eta)."""
    K = eisenstein_field()
    eta = K.generator()
    powers = [K.one, eta, K.mul(eta, eta)]
    _, z2, z3, z4 = MPoly.variables(K, 4)
    prod = MPoly.const(K, 4, 1)
    for b, c in itertools.product(range(3), repeat=2):
        prod = prod * (z2 + z3.scale(powers[b]) + z4.scale(powers[c]))
    return prod == phi40_polynomials(K)[4]


# --------------------------------------------------------------------------
# Heisenberg action and coordinates

SIGMAS = tuple((i, j) for i in range(3) for j in range(3))
_PAIRS = (((0, 1), (0, 2)), ((1, 0), (2, 0)), ((1, 1), (2, 2)), ((1, 2), (2, 1)))


def cube_root_of_unity(field):
    if getattr(field, "kind", None) == "number-field":
        return field.generator()
    if not field.exact:
        ctx = field.ctx
        return ctx.mpc(-0.5, 0) + ctx.sqrt(ctx.mpf(3)) / 2 * ctx.mpc(0, 1)
    raise InvalidInput("the Heisenberg action needs a field with a primitive cube root of unity")


def heisenberg_translate(e, coords, field):
    """e = (a, b), a in (Z/3)^2 the translation, b in (Z/3)^2 the character
    exponents; eta_sigma -> omega^{b.(sigma+a)} eta_{sigma+a}."""
    (a1, a2), (b1, b2) = e
    F = field
    w = cube_root_of_unity(F)
    wp = [F.one, w, F.mul(w, w)]
    table = dict(zip(SIGMAS, coords))
    out = []
    for s1, s2 in SIGMAS:
        t = ((s1 + a1) % 3, (s2 + a2) % 3)
        out.append(F.mul(wp[(b1 * t[0] + b2 * t[1]) % 3], table[t]))
    return out


def eta_to_yz(coords, field):
    F = field
    table = dict(zip(SIGMAS, coords))
    half = F.inv(F.from_int(2))
    y = [table[(0, 0)]]
    z = []
    for s, t in _PAIRS:
        y.append(F.mul(half, F.add(table[s], table[t])))
        z.append(F.mul(half, F.sub(table[s], table[t])))
    return y, z


def yz_to_eta(y, z, field):
    F = field
    table = {(0, 0): y[0]}
    for k, (s, t) in enumerate(_PAIRS):
        table[s] = F.add(y[k + 1], z[k])
        table[t] = F.sub(y[k + 1], z[k])
    return [table[s] for s in SIGMAS]


def negation(y, z, field):
    """The involution y -> y, z -> -z."""
    return list(y), [field.neg(v) for v in z]


def heisenberg_translate_yz(e, y, z, field):
    return eta_to_yz(heisenberg_translate(e, yz_to_eta(y, z, field), field), field)


F0_ELEMENTS = tuple(((0, 0), b) for b in SIGMAS if b != (0, 0))


def burkhardt_verification():
    """Full exact report for the Coble system (used by ``isog3 verify``)."""
    rep = assemble_coble_cubic()
    hes = hessian_identity_check(rep.system)
    mb = cminus((1, 1, 1, 2), report=True)
    return {
        "coble": rep.to_json(),
        "seceq_differences": seceq_consistency(rep.system),
        "hessian": {k: v for k, v in hes.items() if k != "corrected_matrix"},
        "kernel_map": {
            "alpha": [p.format(NAMES) for p in cminus_polynomials()],
            "printed_mb_at_1112": [str(v) for v in mb.printed_mb],
            "printed_mb_burkhardt_value": str(mb.printed_mb_burkhardt),
            "kernel_generator_at_1112": [str(v) for v in mb.alpha],
            "printed_mb_agrees": mb.printed_mb_agrees,
        },
    }



def hessian_points_check(count=25, precision=100, seed=5, tolerance=None):
    """B4 at the kernel point c+(y) for random points y of Hess(B4).

    Returns (report, absolute residuals)."""
    rng = random.Random(seed)
    F, points = sample_hessian_points(count, precision, rng)
    ctx = F.ctx
    tol = tolerance if tolerance is not None else ctx.mpf(10) ** (-precision // 2)
    values = []
    for y in points:
        c = cplus(y, F)
        scale = max(abs(x) for x in c)
        values.append(abs(burkhardt_eval([x / scale for x in c], F)))
    worst = max(values)
    return {"points": count, "precision": precision,
            "residuals": [ctx.nstr(v, 5) for v in values],
            "worst": ctx.nstr(worst, 5), "tolerance": ctx.nstr(tol, 3),
            "passed": worst < tol}, values


def hessian_verification(count=25, precision=100, seed=5):
    exact = hessian_identity_check()
    pts, values = hessian_points_check(count, precision, seed)
    summary = {k: v for k, v in exact.items() if k != "corrected_matrix"}
    return {"identity": summary, "cplus": pts,
            "passed": bool(exact["identity_holds"]) and pts["passed"]}, values


def reflections_verification(full_expansion=True):
    cyclic = verify_arrangement(full_expansion=full_expansion)
    every = reflection_arrangement(permutations="all")
    nonic = nonic_identity()
    return {"arrangement": cyclic, "all_permutations_count": len(every),
            "nonic_identity": nonic,
            "passed": cyclic["count"] == 40 and cyclic["all_factors_matched"] and nonic
            and cyclic.get("full_expansion_proportional", True)}


def kernel_map_check(samples=100, seed=11, height=9):
    """For random rational z off the arrangement: the kernel of M(0, z) is a
    line and its generator lies on the Burkhardt quartic."""
    rng = random.Random(seed)
    done = dims_ok = on_quartic = skipped = 0
    counterexamples = []
    while done < samples:
        z = [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(4)]
        if phi40(z)[0] == 0:
            skipped += 1
            continue
        done += 1
        try:
            alpha = cminus(z)
        except KernelDegenerate:
            counterexamples.append({"z": [str(v) for v in z], "failure": "kernel dimension"})
            continue
        dims_ok += 1
        if burkhardt_eval(alpha) == 0:
            on_quartic += 1
        elif len(counterexamples) < 5:
            counterexamples.append({"z": [str(v) for v in z], "failure": "B4 != 0"})
    return {"samples": samples, "kernel_dimension_one": dims_ok, "on_burkhardt": on_quartic,
            "skipped_on_arrangement": skipped, "counterexamples": counterexamples,
            "passed": dims_ok == samples and on_quartic == samples}
