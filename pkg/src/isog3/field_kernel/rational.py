from fractions import Fraction
from math import isqrt

from .base import Field


class RationalField(Field):
    kind = "rational"
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def sqrt(self, a):
        """Rational square root, or None."""
        if a < 0:
            return None
        n, d = isqrt(a.numerator), isqrt(a.denominator)
        if n * n == a.numerator and d * d == a.denominator:
            return Fraction(n, d)
        return None

    def from_int(self, n):
        return Fraction(n)

    def convert(self, value):
        return Fraction(value)

    def random(self, rng, height=20):
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    def to_json(self, a):
        return f"{a.numerator}/{a.denominator}"

    def from_json(self, obj):
        return Fraction(obj)

    def format(self, a):
        return str(a)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_rationals, ())


QQ = RationalField()


def _rationals():
    return QQ
