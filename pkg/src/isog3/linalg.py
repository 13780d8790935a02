"""Dense linear algebra over the fields of ``field_kernel``.

Matrices are lists of rows of raw field values.  Exact fields use plain
Gauss-Jordan elimination.  For big-complex fields the pivot is the entry of
largest modulus, and entries below ``tolerance * scale`` count as zero.
"""

from .field_kernel.poly import Polynomial


def _scale(field, rows):
    if field.exact:
        return None
    return max((abs(x) for r in rows for x in r), default=field.ctx.mpf(0)) or field.ctx.mpf(1)


def rref(field, rows):
    """(reduced rows, pivot columns); zero rows are dropped."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    exact = field.exact
    if not exact:
        thresh = field.tolerance * _scale(field, rows)
    for c in range(ncols):
        if r == len(rows):
            break
        if exact:
            piv = next((i for i in range(r, len(rows)) if not field.is_zero(rows[i][c])), None)
        else:
            piv = max(range(r, len(rows)), key=lambda i: abs(rows[i][c]))
            if abs(rows[piv][c]) <= thresh:
                piv = None
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r:
                factor = rows[i][c]
                if (not field.is_zero(factor)) if exact else factor != 0:
                    rows[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(rows[i], pr)]
        if not exact:
            for i in range(len(rows)):
                if i != r:
                    rows[i][c] = field.zero
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(field, rows):
    if not field.exact:
        return numeric_rank(field, rows)
    return len(rref(field, rows)[1])


def singular_values(field, rows):
    ctx = field.ctx
    m = ctx.matrix([list(r) for r in rows])
    if m.rows < m.cols:
        m = m.H
    return sorted((ctx.mpf(s) for s in ctx.svd_c(m, compute_uv=False)), reverse=True)


def numeric_rank(field, rows):
    """Rank from singular values: s_i / s_max above 10^(-P/2) counts."""
    if not rows or not any(abs(x) for r in rows for x in r):
        return 0
    svals = singular_values(field, rows)
    top = svals[0]
    return sum(1 for s in svals if s > field.tolerance * top)


def kernel(field, rows, ncols=None):
    """Basis of the right null space {v : rows * v = 0}."""
    if not rows:
        n = ncols or 0
        return [[field.one if i == j else field.zero for i in range(n)] for j in range(n)]
    n = len(rows[0])
    if not field.exact:
        return numeric_kernel(field, rows)
    red, pivots = rref(field, rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * n
        v[fc] = field.one
        for row, pc in zip(red, pivots):
            v[pc] = field.neg(row[fc])
        basis.append(v)
    return basis


def numeric_kernel(field, rows, dim=None):
    """Null space from the SVD: right singular vectors whose singular values
    fall below the relative threshold (or the last ``dim`` of them)."""
    ctx = field.ctx
    nrows, ncols = len(rows), len(rows[0])
    padded = [list(r) for r in rows] + [[0] * ncols] * max(0, ncols - nrows)
    U, S, V = ctx.svd_c(ctx.matrix(padded))
    svals = [S[i] for i in range(min(len(padded), ncols))]
    if dim is None:
        top = max(svals) if svals else 0
        dim = sum(1 for s in svals if s <= field.tolerance * top) + max(0, ncols - len(svals))
    basis = []
    for k in range(ncols - dim, ncols):
        basis.append([ctx.conj(V[k, j]) for j in range(ncols)])
    return basis


def solve_in_span(field, basis_rref, pivots, v):
    """Coordinates of v in a row-reduced basis (None if v is not in the span)."""
    coords = [v[p] for p in pivots]
    residual = list(v)
    for c, row in zip(coords, basis_rref):
        residual = [field.sub(x, field.mul(c, y)) for x, y in zip(residual, row)]
    if field.exact:
        if any(not field.is_zero(x) for x in residual):
            return None
    return coords


def det(field, rows):
    rows = [list(r) for r in rows]
    n = len(rows)
    result = field.one
    for c in range(n):
        if field.exact:
            piv = next((i for i in range(c, n) if not field.is_zero(rows[i][c])), None)
        else:
            piv = max(range(c, n), key=lambda i: abs(rows[i][c]))
            if rows[piv][c] == 0:
                piv = None
        if piv is None:
            return field.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = field.neg(result)
        result = field.mul(result, rows[c][c])
        # inexact: the pivot is the largest entry, so divide without a tolerance test
        inv = field.inv(rows[c][c]) if field.exact else 1 / rows[c][c]
        for i in range(c + 1, n):
            factor = field.mul(rows[i][c], inv)
            if not field.exact or not field.is_zero(factor):
                rows[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(rows[i], rows[c])]
    return result


def poly_matrix_det(polys):
    """Determinant of a square matrix of Polynomials (fraction-free Bareiss)."""
    m = [list(r) for r in polys]
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    field = m[0][0].field
    sign = 1
    prev = Polynomial(field, [field.one])
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return Polynomial(field, [])
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                quo, rem = divmod(num, prev)
                assert not rem, "Bareiss division must be exact"
                m[i][j] = quo
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return out if sign > 0 else -out


def mat_vec(field, rows, v):
    return [field.dot(r, v) for r in rows]


def transpose(rows):
    return [list(c) for c in zip(*rows)]
