"""Sparse multivariate polynomials over the fields of ``field_kernel``.

Terms are stored as {exponent tuple: raw coefficient}.  This is enough for
the identity checks of the Burkhardt/Coble apparatus (products, partial
derivatives, substitution, coefficient extraction); there is no division.
"""

from .errors import FieldMismatch


class MPoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars, terms=None):
        self.field = field
        self.nvars = nvars
        if terms:
            is_zero = field.is_zero
            self.terms = {e: c for e, c in terms.items() if not is_zero(c)}
        else:
            self.terms = {}

    # -- constructors -------------------------------------------------------
    @classmethod
    def var(cls, field, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): field.one})

    @classmethod
    def const(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: field.coerce(c)})

    @classmethod
    def variables(cls, field, nvars):
        return [cls.var(field, nvars, i) for i in range(nvars)]

    # -- protocol -----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return not (self - other)
        if isinstance(other, int):
            return not (self - MPoly.const(self.field, self.nvars, other))
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms))

    def _lift(self, other):
        if isinstance(other, MPoly):
            if other.field is not self.field or other.nvars != self.nvars:
                raise FieldMismatch("polynomials over different rings")
            return other
        return MPoly.const(self.field, self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out[e], c) if e in out else c
        return MPoly(F, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MPoly(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        F = self.field
        if not isinstance(other, MPoly):
            return self.scale(F.coerce(other))
        other = self._lift(other)
        out = {}
        add, mul = F.add, F.mul
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = mul(c1, c2)
                out[e] = add(out[e], c) if e in out else c
        return MPoly(F, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = MPoly.const(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def scale(self, c):
        F = self.field
        return MPoly(F, self.nvars, {e: F.mul(c, v) for e, v in self.terms.items()})

    # -- calculus and evaluation -------------------------------------------
    @property
    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def diff(self, i):
        F = self.field
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                new = list(e)
                new[i] -= 1
                out[tuple(new)] = F.mul(F.from_int(k), c)
        return MPoly(F, self.nvars, out)

    def evaluate(self, values):
        """Value at a point (raw field values, one per variable)."""
        F = self.field
        acc = F.zero
        cache = {}
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = F.pow(values[i], k)
                    term = F.mul(term, cache[key])
            acc = F.add(acc, term)
        return acc

    def substitute(self, images):
        """Compose with a list of MPolys (one per variable, common ring)."""
        target = images[0]
        out = MPoly(target.field, target.nvars)
        powers = {}
        for e, c in self.terms.items():
            term = MPoly.const(target.field, target.nvars, 1).scale(c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = images[i] ** k
                    term = term * powers[(i, k)]
            out = out + term
        return out

    def coefficient(self, i, k=1):
        """Coefficient of x_i^k, as a polynomial in the remaining variables
        (the variable is kept in the ring with exponent 0)."""
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                new = list(e)
                new[i] = 0
                out[tuple(new)] = c
        return MPoly(self.field, self.nvars, out)

    def map_coefficients(self, func, field):
        return MPoly(field, self.nvars, {e: func(c) for e, c in self.terms.items()})

    def is_proportional(self, other):
        """(True, c) with self = c * other, for nonzero other."""
        F = self.field
        if not other:
            return (not self), None
        e0, c0 = next(iter(other.terms.items()))
        if e0 not in self.terms:
            return False, None
        ratio = F.div(self.terms[e0], c0)
        return (not (self - other.scale(ratio))), ratio

    def format(self, names):
        F = self.field
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n + (f"^{k}" if k > 1 else "") for n, k in zip(names, e) if k)
            coef = F.format(c)
            if mono and coef == "1":
                parts.append(mono)
            elif mono and coef == "-1":
                parts.append("-" + mono)
            else:
                if mono and not coef.lstrip("-").isalnum():
                    coef = f"({coef})"
                parts.append(coef + ("*" + mono if mono else ""))
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def __repr__(self):
        return self.format([f"x{i}" for i in range(self.nvars)])
