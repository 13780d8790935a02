"""Common field interface and the element wrapper.

Fields expose arithmetic on *raw* values (ints, Fractions, tuples or mpmath
numbers, depending on the field) so hot loops can skip object allocation.
``FieldElement`` wraps a raw value with its field and provides operators.
"""

from ..errors import FieldMismatch


class Field:
    kind = "abstract"
    characteristic = 0
    degree = 1
    order = None
    exact = True

    zero = 0
    one = 1

    # subclasses override the raw operations below
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def eq(self, a, b):
        return a == b

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def sum(self, values):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def dot(self, xs, ys):
        acc = self.zero
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, y))
        return acc

    def key(self, a):
        """Sort key giving the fixed ordering used for canonical choices."""
        return a

    def to_json(self, a):
        raise NotImplementedError

    def from_json(self, obj):
        raise NotImplementedError

    def descriptor(self):
        return {"kind": self.kind, "characteristic": self.characteristic,
                "extension_degree": self.degree}

    def coerce(self, value):
        """Raw value for an int, an element of this field or a native value."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldMismatch(f"element of {value.field} used in {self}")
            return value.raw
        if isinstance(value, int):
            return self.from_int(value)
        return self.convert(value)

    def convert(self, value):
        raise TypeError(f"cannot convert {value!r} into {self}")

    def __call__(self, value):
        return FieldElement(self, self.coerce(value))

    def elem(self, raw):
        return FieldElement(self, raw)

    def elements_from(self, values):
        return [self.coerce(v) for v in values]


class FieldElement:
    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldMismatch("operands live in different fields")
            return other.raw
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.raw, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.raw, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.raw))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.raw))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.raw, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.raw, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.raw))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.raw, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.raw))

    def is_zero(self):
        return self.field.is_zero(self.raw)

    def __bool__(self):
        return not self.field.is_zero(self.raw)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return other.field is self.field and self.field.eq(self.raw, other.raw)
        try:
            return self.field.eq(self.raw, self.field.coerce(other))
        except (TypeError, FieldMismatch):
            return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.raw))

    def to_json(self):
        return self.field.to_json(self.raw)

    def __repr__(self):
        return f"{self.field.format(self.raw)}"
