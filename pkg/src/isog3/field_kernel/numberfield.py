"""Number fields Q[X]/(m(X)) with raw values as tuples of Fractions."""

import functools
from fractions import Fraction

from ..errors import InvalidInput
from .base import Field


class NumberField(Field):
    kind = "number-field"
    characteristic = 0

    def __init__(self, modulus, name="eta"):
        mod = tuple(Fraction(c) for c in modulus)
        if mod[-1] != 1 or len(mod) < 2:
            raise InvalidInput("number field modulus must be monic of degree >= 1")
        self.modulus = mod
        self.degree = self.n = len(mod) - 1
        self.name = name
        self.zero = (Fraction(0),) * self.n
        self.one = (Fraction(1),) + (Fraction(0),) * (self.n - 1)

    def __repr__(self):
        return f"QQ[{self.name}]/({self.format_poly(self.modulus)})"

    def __reduce__(self):
        return (number_field, (tuple(str(c) for c in self.modulus), self.name))

    def format_poly(self, cs):
        return "+".join(f"{c}*X^{i}" for i, c in enumerate(cs) if c)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        n, mod = self.n, self.modulus
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                for j in range(n):
                    prod[k - n + j] -= c * mod[j]
        return tuple(prod[:n])

    def scale(self, a, c):
        return tuple(c * x for x in a)

    def inv(self, a):
        # extended Euclid on (a, modulus) over Q
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        r0, r1 = list(self.modulus), _strip(list(a))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _sub(s0, _mul(q, s1))
        c = r1[0]
        out = [x / c for x in s1] + [Fraction(0)] * self.n
        return self.reduce(out)

    def reduce(self, cs):
        cs = list(cs)
        n, mod = self.n, self.modulus
        for k in range(len(cs) - 1, n - 1, -1):
            c = cs[k]
            if c:
                for j in range(n):
                    cs[k - n + j] -= c * mod[j]
        cs = cs[:n] + [Fraction(0)] * (n - len(cs))
        return tuple(cs)

    def from_int(self, k):
        return (Fraction(k),) + (Fraction(0),) * (self.n - 1)

    def convert(self, value):
        if isinstance(value, (int, Fraction)):
            return (Fraction(value),) + (Fraction(0),) * (self.n - 1)
        if isinstance(value, (list, tuple)):
            return self.reduce([Fraction(v) for v in value])
        raise TypeError(f"cannot convert {value!r} into {self}")

    def generator(self):
        return self.convert([0, 1])

    def random(self, rng, height=10):
        return tuple(Fraction(rng.randint(-height, height), rng.randint(1, 4))
                     for _ in range(self.n))

    def key(self, a):
        return a

    def to_json(self, a):
        return [f"{c.numerator}/{c.denominator}" for c in a]

    def from_json(self, obj):
        return self.reduce([Fraction(c) for c in obj])

    def descriptor(self):
        d = Field.descriptor(self)
        d["modulus"] = [str(c) for c in self.modulus]
        return d

    def format(self, a):
        terms = []
        for i, c in enumerate(a):
            if c:
                mono = "" if i == 0 else (self.name if i == 1 else f"{self.name}^{i}")
                terms.append(f"({c})" + (f"*{mono}" if mono else ""))
        return "+".join(terms) or "0"


def _strip(a):
    while len(a) > 1 and not a[-1]:
        a.pop()
    return a


def _mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _strip(out)


def _sub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _strip([x - y for x, y in zip(a, b)])


def _divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = c
        for j, y in enumerate(b):
            a[shift + j] -= c * y
        a.pop()
        _strip(a)
        if len(a) < len(b):
            break
    return _strip(q), _strip(a) if a else [Fraction(0)]


@functools.lru_cache(maxsize=None)
def number_field(modulus, name="eta"):
    return NumberField([Fraction(c) for c in modulus], name)


def eisenstein_field():
    """Q(eta) with eta^2 + eta + 1 = 0."""
    return number_field(("1", "1", "1"), "eta")


def sqrt_minus_three(field):
    """2*eta + 1, whose square is -3 in Q(eta)."""
    return field.convert([1, 2])
