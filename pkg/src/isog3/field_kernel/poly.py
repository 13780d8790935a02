"""Dense univariate polynomials over any field of this package."""

from ..errors import DegreeTooSmall, FieldMismatch, ZeroPolynomial
from .base import FieldElement


class Polynomial:
    """Coefficients are raw field values, low degree first, with trailing
    zeros removed.  The zero polynomial has no coefficients and degree -1."""

    __slots__ = ("field", "coefficients")

    def __init__(self, field, coefficients=()):
        cs = list(coefficients)
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.field = field
        self.coefficients = tuple(cs)

    @classmethod
    def from_values(cls, field, values):
        return cls(field, [field.coerce(v) for v in values])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field, value):
        return cls(field, [field.coerce(value)])

    @classmethod
    def from_roots(cls, field, roots):
        out = cls(field, [field.one])
        for r in roots:
            out = out * cls(field, [field.neg(r), field.one])
        return out

    # -- basic protocol ---------------------------------------------------
    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __len__(self):
        return len(self.coefficients)

    def __bool__(self):
        return bool(self.coefficients)

    def __getitem__(self, i):
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else self.field.zero

    def leading(self):
        if not self.coefficients:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coefficients[-1]

    def is_monic(self):
        return bool(self.coefficients) and self.field.eq(self.coefficients[-1], self.field.one)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.field is other.field and len(self) == len(other)
                    and all(self.field.eq(a, b) for a, b in zip(self.coefficients, other.coefficients)))
        if isinstance(other, (int, FieldElement)):
            return self == Polynomial.constant(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.coefficients))

    def __repr__(self):
        F = self.field
        terms = []
        for i, c in enumerate(self.coefficients):
            if F.is_zero(c):
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = F.format(c)
            if mono and F.eq(c, F.one):
                coef = ""
            elif mono and not coef.replace("-", "").isalnum():
                coef = f"({coef})"
            terms.append(coef + ("*" if coef and mono else "") + mono)
        return " + ".join(reversed(terms)) or "0"

    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.field is not self.field:
                raise FieldMismatch("polynomials over different fields")
            return other
        return Polynomial.constant(self.field, other)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        F = self.field
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = F.add(out[i], y)
        return Polynomial(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial(F, [F.neg(c) for c in self.coefficients])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        F = self.field
        if not isinstance(other, Polynomial):
            c = F.coerce(other)
            return Polynomial(F, [F.mul(x, c) for x in self.coefficients])
        other = self._lift(other)
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return Polynomial(F, [])
        out = [F.zero] * (len(a) + len(b) - 1)
        add, mul, is_zero = F.add, F.mul, F.is_zero
        for i, x in enumerate(a):
            if is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = add(out[i + j], mul(x, y))
        return Polynomial(F, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = Polynomial(self.field, [self.field.one])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c):
        F = self.field
        return Polynomial(F, [F.mul(x, c) for x in self.coefficients])

    def __divmod__(self, other):
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coefficients)
        db = other.degree
        inv_lead = F.inv(other.coefficients[-1])
        b = other.coefficients
        if len(rem) <= db:
            return Polynomial(F, []), Polynomial(F, rem)
        quo = [F.zero] * (len(rem) - db)
        sub, mul = F.sub, F.mul
        for k in range(len(rem) - 1, db - 1, -1):
            c = mul(rem[k], inv_lead)
            quo[k - db] = c
            if F.is_zero(c):
                continue
            for j in range(db):
                rem[k - db + j] = sub(rem[k - db + j], mul(c, b[j]))
            rem[k] = F.zero
        return Polynomial(F, quo), Polynomial(F, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if not self.coefficients:
            raise ZeroPolynomial("cannot normalise the zero polynomial")
        return self.scale(self.field.inv(self.coefficients[-1]))

    def derivative(self):
        F = self.field
        return Polynomial(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coefficients) if i])

    def evaluate(self, x):
        """Value at a raw point (Horner)."""
        F = self.field
        acc = F.zero
        for c in reversed(self.coefficients):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __call__(self, x):
        if isinstance(x, Polynomial):
            return self.compose(x)
        return FieldElement(self.field, self.evaluate(self.field.coerce(x)))

    def compose(self, g):
        out = Polynomial(self.field, [])
        for c in reversed(self.coefficients):
            out = out * g + Polynomial(self.field, [c])
        return out

    def powmod(self, e, modulus):
        result = Polynomial(self.field, [self.field.one]) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result

    def map(self, func, field):
        """Apply a raw coefficient map into another field."""
        return Polynomial(field, [func(c) for c in self.coefficients])

    def values(self):
        return [FieldElement(self.field, c) for c in self.coefficients]

    def to_json(self):
        return [self.field.to_json(c) for c in self.coefficients]


def poly_gcd(f, g):
    """Monic gcd (zero only when both inputs are zero)."""
    while g:
        f, g = g, f % g
    return f.monic() if f else f


def poly_xgcd(f, g):
    """(d, s, t) with d = s f + t g monic."""
    F = f.field
    r0, r1 = f, g
    s0, s1 = Polynomial(F, [F.one]), Polynomial(F, [])
    t0, t1 = Polynomial(F, []), Polynomial(F, [F.one])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = F.inv(r0.leading())
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_gcd_squarefree(f, g=None):
    """(monic gcd(f, g or f'), whether f is squarefree)."""
    if not f:
        raise ZeroPolynomial("squarefree test of the zero polynomial")
    d = poly_gcd(f, f.derivative())
    squarefree = d.degree == 0
    if g is not None:
        d = poly_gcd(f, g)
    return d, squarefree


def resultant(f, g, formal_degree_g=None):
    """Res(f, g) = lc(f)^n * prod g(roots of f), with n the formal degree of g."""
    F = f.field
    if not f or not g:
        return F.zero
    n = g.degree if formal_degree_g is None else formal_degree_g
    extra = F.pow(f.leading(), n - g.degree)
    res = F.one
    a, b = f, g
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            res = F.mul(res, F.pow(b.leading(), da))
            break
        r = a % b
        if not r:
            return F.zero
        if (da * db) % 2:
            res = F.neg(res)
        res = F.mul(res, F.pow(b.leading(), da - r.degree))
        a, b = b, r
    return F.mul(res, extra)


def resultant_discriminant(f):
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f), with f' of formal degree d-1."""
    d = f.degree
    if d < 1:
        raise DegreeTooSmall("discriminant of a constant polynomial")
    F = f.field
    if d == 1:
        return F.one
    res = resultant(f, f.derivative(), d - 1)
    value = F.div(res, f.leading())
    return F.neg(value) if (d * (d - 1) // 2) % 2 else value


def pth_root(f):
    """g with g^p = f, for f whose exponents are multiples of p over a finite field."""
    F = f.field
    p = F.characteristic
    cs = f.coefficients
    return Polynomial(F, [F.frobenius(cs[i], -1) for i in range(0, len(cs), p)])


def squarefree_factorization(f):
    """[(g, multiplicity)] with f = lc * prod g^m, each g monic squarefree,
    for polynomials over a finite field (the usual p-th root recursion)."""
    if not f:
        raise ZeroPolynomial("factorisation of the zero polynomial")
    F = f.field
    p = F.characteristic
    f = f.monic()
    out = []
    _sff(f, 1, p, out)
    merged = {}
    for g, m in out:
        if g.degree > 0:
            merged[m] = merged[m] * g if m in merged else g
    return sorted(((g.monic(), m) for m, g in merged.items()), key=lambda t: t[1])


def _sff(f, mult, p, out):
    if f.degree < 1:
        return
    df = f.derivative()
    if not df:
        _sff(pth_root(f), mult * p, p, out)
        return
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i * mult))
        i += 1
        w, c = y, c // y
    if c.degree > 0:
        _sff(pth_root(c), mult * p, p, out)
