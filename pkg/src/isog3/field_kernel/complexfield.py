"""Arbitrary-precision complex numbers as a field.

Each instance owns a private mpmath context, so precisions never leak between
computations.  Zero tests use the threshold 10^(-P/2) for P decimal digits.
"""

import functools

import mpmath

from .base import Field


class ComplexField(Field):
    kind = "big-complex"
    characteristic = 0
    exact = False

    def __init__(self, precision):
        self.precision = int(precision)
        ctx = mpmath.MPContext()
        ctx.dps = self.precision
        self.ctx = ctx
        self.zero = ctx.mpc(0)
        self.one = ctx.mpc(1)
        self.tolerance = ctx.mpf(10) ** (-(self.precision // 2))

    def __repr__(self):
        return f"CC[{self.precision}]"

    def __reduce__(self):
        return (complex_field, (self.precision,))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of a numerically zero value")
        return 1 / a

    def pow(self, a, e):
        return a ** e

    def is_zero(self, a):
        return abs(a) < self.tolerance

    def eq(self, a, b):
        return abs(a - b) < self.tolerance * max(1, abs(a), abs(b))

    def sqrt(self, a):
        return self.ctx.sqrt(a)

    def from_int(self, n):
        return self.ctx.mpc(n)

    def convert(self, value):
        if hasattr(value, "numerator") and hasattr(value, "denominator"):
            return self.ctx.mpc(self.ctx.mpf(value.numerator) / value.denominator)
        return self.ctx.mpc(value)

    def random(self, rng):
        return self.ctx.mpc(rng.uniform(-1, 1), rng.uniform(-1, 1))

    def key(self, a):
        return (a.real, a.imag)

    def to_json(self, a):
        digits = self.precision
        return [self.ctx.nstr(a.real, digits), self.ctx.nstr(a.imag, digits)]

    def from_json(self, obj):
        return self.ctx.mpc(self.ctx.mpf(obj[0]), self.ctx.mpf(obj[1]))

    def descriptor(self):
        d = Field.descriptor(self)
        d["precision"] = self.precision
        return d

    def format(self, a):
        return self.ctx.nstr(a, 15)


@functools.lru_cache(maxsize=None)
def complex_field(precision):
    return ComplexField(precision)


def polynomial_roots(field, coefficients, max_iterations=500):
    """All complex roots of sum c_i x^i (low degree first) at the field's
    precision, by Aberth-Ehrlich iteration seeded from double-precision roots.

    Raises ArithmeticError when the iteration does not settle."""
    import numpy

    ctx = field.ctx
    cs = [ctx.mpc(c) for c in coefficients]
    while cs and cs[-1] == 0:
        cs.pop()
    n = len(cs) - 1
    if n < 1:
        return []
    lead = cs[-1]
    cs = [c / lead for c in cs]
    try:
        approx = numpy.roots([complex(c) for c in reversed(cs)])
        if not numpy.all(numpy.isfinite(approx)):
            raise ValueError
        z = [ctx.mpc(complex(r)) for r in approx]
    except (ValueError, OverflowError, numpy.linalg.LinAlgError):
        radius = 1 + max(abs(c) for c in cs[:-1])
        z = [radius * ctx.expjpi(ctx.mpf(2 * k + 0.5) / n) for k in range(n)]
    # nudge coincident seeds apart
    for i in range(n):
        for j in range(i):
            if abs(z[i] - z[j]) < 1e-12 * (1 + abs(z[i])):
                z[i] += ctx.mpc(1e-8, 1e-8) * (1 + abs(z[i])) * (i + 1)
    eps = ctx.mpf(10) ** (-(field.precision + 5))

    def evaluate(x):
        p = dp = ctx.mpc(0)
        for c in reversed(cs):
            dp = dp * x + p
            p = p * x + c
        return p, dp

    with ctx.workprec(ctx.prec + 32):
        for _ in range(max_iterations):
            biggest = ctx.mpf(0)
            for i in range(n):
                p, dp = evaluate(z[i])
                if p == 0:
                    continue
                ratio = p / dp if dp != 0 else ctx.mpc(1)
                s = ctx.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i)
                step = ratio / (1 - ratio * s)
                z[i] -= step
                biggest = max(biggest, abs(step) / max(1, abs(z[i])))
            if biggest < eps:
                break
        else:
            raise ArithmeticError("root iteration did not converge")
    return [+r for r in z]
