"""Finite fields F_p[u]/(m(u)).

Three internal regimes share one interface:

* prime fields: raw values are ints in ``range(p)``;
* small extensions (q <= TABLE_LIMIT): raw values are base-p integer codes
  of the coefficient vector, with log/exp/Zech tables for arithmetic;
* larger extensions: coefficients are packed one per byte-slot into a Python
  int, so multiplication is a single big-int product followed by digit-wise
  reduction mod p (``bytes.translate``) and a sparse reduction by the modulus.

Conversion helpers (``coeffs``/``from_coeffs``/``key``) give every regime the
same canonical ordering: the base-p code of the coefficient vector.
"""

import functools
import math

import numpy as np

from ..errors import ModulusNotIrreducible, UnsupportedCharacteristic, InvalidInput
from .base import Field

TABLE_LIMIT = 1 << 16


# --- tiny dense polynomial helpers over F_p (int lists, low degree first) ---

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mulmod(a, b, m, p):
    n = len(m) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for j in range(n + 1):
                prod[k - n + j] = (prod[k - n + j] - c * m[j]) % p
    return _trim(prod[:n])


def _fp_powmod(a, e, m, p):
    result = [1]
    while e:
        if e & 1:
            result = _fp_mulmod(result, a, m, p)
        e >>= 1
        if e:
            a = _fp_mulmod(a, a, m, p)
    return result


def _fp_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, y in enumerate(b):
                a[shift + j] = (a[shift + j] - c * y) % p
            _trim(a)
            if not a:
                break
        a, b = b, a
    return a


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime(n):
    return n >= 2 and _prime_factors(n) == [n]


def is_irreducible_mod_p(m, p):
    """Rabin's test for a monic polynomial given as coefficients low first."""
    m = [c % p for c in m]
    n = len(m) - 1
    if n < 1 or m[-1] != 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _fp_powmod(x, p ** n, m, p) != x:
        return False
    for r in _prime_factors(n):
        h = _fp_powmod(x, p ** (n // r), m, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_fp_gcd(m, _trim(h), p)) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def smallest_irreducible(p, n):
    """Monic irreducible of degree n whose low coefficients, read as a base-p
    number, are smallest."""
    if n == 1:
        return (0, 1)
    for code in range(p, p ** n):
        low = [(code // p ** i) % p for i in range(n)]
        if low[0] and is_irreducible_mod_p(low + [1], p):
            return tuple(low + [1])
    raise AssertionError("no irreducible polynomial found")


class FiniteField(Field):
    exact = True

    def __init__(self, p, modulus):
        self.characteristic = self.p = p
        self.modulus = tuple(modulus)
        self.degree = self.n = len(modulus) - 1
        self.order = p ** self.n
        self.kind = "prime-finite" if self.n == 1 else "extension-finite"
        self._frob_cache = {}
        if self.n == 1:
            self._setup_prime()
        elif self.order <= TABLE_LIMIT:
            self._setup_tables()
        else:
            self._setup_packed()

    def __repr__(self):
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (make_extension, (self.p, self.n, self.modulus))

    # ---------------------------------------------------------------- prime
    def _setup_prime(self):
        p = self.p
        self.regime = "prime"
        self.zero, self.one = 0, 1
        self.add = lambda a, b: (a + b) % p
        self.sub = lambda a, b: (a - b) % p
        self.neg = lambda a: (-a) % p
        self.mul = lambda a, b: a * b % p
        self.coeffs = lambda a: [a]
        self.from_coeffs = lambda cs: (cs[0] % p) if cs else 0
        self.key = lambda a: a

    # ---------------------------------------------------------------- tables
    def _setup_tables(self):
        p, n, q = self.p, self.n, self.order
        m = q - 1
        self.regime = "table"
        self.zero, self.one = 0, 1
        weights = np.array([p ** i for i in range(n)], dtype=np.int64)
        gen = self._find_generator_code()
        mat = self._mul_matrix(self._digits(gen))
        block = min(m, 1024)
        powers = np.zeros((m, n), dtype=np.int64)
        row = np.zeros(n, dtype=np.int64)
        row[0] = 1
        for i in range(block):
            powers[i] = row
            row = (row @ mat) % p
        step = self._mul_matrix(_fp_powmod(_trim(self._digits(gen)), block, self.modulus, p))
        for start in range(block, m, block):
            stop = min(start + block, m)
            powers[start:stop] = (powers[start - block:stop - block] @ step) % p
        exp = powers @ weights
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(m)
        plus_one = powers.copy()
        plus_one[:, 0] = (plus_one[:, 0] + 1) % p
        zech = log[plus_one @ weights]
        self._exp_np, self._log_np, self._zech_np = exp, log, zech
        self._exp, self._log, self._zech = exp.tolist(), log.tolist(), zech.tolist()
        half = m // 2 if p != 2 else 0
        neg = np.zeros(q, dtype=np.int64)
        nz = exp
        neg[nz] = exp[(np.arange(m) + half) % m]
        self._neg = neg.tolist()
        self._neg_np = neg
        self._m = m
        EXP, LOG, ZECH, NEG = self._exp, self._log, self._zech, self._neg

        def add(a, b):
            if not a:
                return b
            if not b:
                return a
            la = LOG[a]
            d = LOG[b] - la
            if d < 0:
                d += m
            z = ZECH[d]
            if z < 0:
                return 0
            s = la + z
            return EXP[s - m if s >= m else s]

        def mul(a, b):
            if not a or not b:
                return 0
            s = LOG[a] + LOG[b]
            return EXP[s - m if s >= m else s]

        self.add = add
        self.mul = mul
        self.neg = NEG.__getitem__
        self.sub = lambda a, b: add(a, NEG[b])
        self.coeffs = self._digits
        self.from_coeffs = lambda cs: sum((c % p) * p ** i for i, c in enumerate(cs))
        self.key = lambda a: a

    def _digits(self, code):
        p = self.p
        return [(code // p ** i) % p for i in range(self.n)]

    def _mul_matrix(self, digits):
        """Matrix of multiplication by an element acting on row vectors."""
        n, p = self.n, self.p
        rows = []
        for i in range(n):
            basis = [0] * i + [1]
            rows.append(_fp_mulmod(basis, _trim(list(digits)), self.modulus, p))
        out = np.zeros((n, n), dtype=np.int64)
        for i, r in enumerate(rows):
            out[i, :len(r)] = r
        return out

    def _find_generator_code(self):
        p, q = self.p, self.order
        factors = _prime_factors(q - 1)
        for code in range(p, q):
            digits = _trim(self._digits(code))
            if all(_fp_powmod(digits, (q - 1) // r, self.modulus, p) != [1] for r in factors):
                return code
        raise AssertionError("no generator found")

    # ---------------------------------------------------------------- packed
    def _setup_packed(self):
        p, n = self.p, self.n
        self.regime = "packed"
        self.zero, self.one = 0, 1
        tail = [(-c) % p for c in self.modulus[:n]]
        bound = (p - 1) ** 2 * n + 2 * p
        width = next((w for w in (1, 2, 4) if 256 ** w > bound), None)
        if width is None:
            raise UnsupportedCharacteristic(f"field GF({p}^{n}) is too large")
        self._width = width
        dtype = self._dtype = np.dtype({1: "u1", 2: "<u2", 4: "<u4"}[width])
        nbytes, wide = n * width, (2 * n - 1) * width
        slot = 256 ** width
        tail_code = sum(c * slot ** i for i, c in enumerate(tail))

        if width == 1:
            mod_table = bytes(i % p for i in range(256))
            neg_table = bytes((-i) % p if i < p else 0 for i in range(256))

            def reduce_digits(bs):
                return bs.translate(mod_table)

            def negate_digits(bs):
                return bs.translate(neg_table)
        else:
            def reduce_digits(bs):
                return (np.frombuffer(bs, dtype=dtype) % p).astype(dtype).tobytes()

            def negate_digits(bs):
                return ((p - np.frombuffer(bs, dtype=dtype)) % p).astype(dtype).tobytes()

        def normalize(x):
            return int.from_bytes(reduce_digits(x.to_bytes(nbytes, "little")), "little")

        def mul(a, b):
            c = a * b
            if not c:
                return 0
            bs = reduce_digits(c.to_bytes(wide, "little"))
            high = int.from_bytes(bs[nbytes:], "little")
            if not high:
                return int.from_bytes(bs, "little")
            low = int.from_bytes(bs[:nbytes], "little")
            while high:
                bs = reduce_digits((low + high * tail_code).to_bytes(wide, "little"))
                low = int.from_bytes(bs[:nbytes], "little")
                high = int.from_bytes(bs[nbytes:], "little")
            return low

        def neg(a):
            return int.from_bytes(negate_digits(a.to_bytes(nbytes, "little")), "little")

        def coeffs(a):
            return np.frombuffer(a.to_bytes(nbytes, "little"), dtype=dtype).tolist()

        def from_coeffs(cs):
            digits = np.zeros(n, dtype=dtype)
            cs = [c % p for c in cs[:n]]
            digits[:len(cs)] = cs
            return int.from_bytes(digits.tobytes(), "little")

        self.add = lambda a, b: normalize(a + b)
        self.sub = lambda a, b: normalize(a + neg(b))
        self.neg = neg
        self.mul = mul
        self.coeffs = coeffs
        self.from_coeffs = from_coeffs
        self.key = lambda a: sum(c * p ** i for i, c in enumerate(coeffs(a)))

    def _frobenius_matrix(self, j):
        j %= self.n
        mat = self._frob_cache.get(j)
        if mat is None:
            # image of u^i is u^(i p^j); rows are images of the basis
            x_pow = _fp_powmod([0, 1], self.p ** j, self.modulus, self.p)
            rows = np.zeros((self.n, self.n), dtype=np.int64)
            cur = [1]
            for i in range(self.n):
                rows[i, :len(cur)] = cur
                cur = _fp_mulmod(cur, x_pow, self.modulus, self.p)
            mat = self._frob_cache[j] = rows
        return mat

    def _apply_linear(self, a, mat):
        vec = np.frombuffer(a.to_bytes(self.n * self._width, "little"),
                            dtype=self._dtype).astype(np.int64)
        out = (vec @ mat) % self.p
        return int.from_bytes(out.astype(self._dtype).tobytes(), "little")

    # ---------------------------------------------------------------- shared
    def from_int(self, k):
        return self.from_coeffs([k % self.p])

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.regime == "prime":
            return pow(a, -1, self.p)
        if self.regime == "table":
            la = self._log[a]
            return self._exp[(self._m - la) % self._m]
        return self._itoh_tsujii(a)

    def _itoh_tsujii(self, a):
        # a^(r-1) with r = (q-1)/(p-1); then a^r lies in F_p
        k = self.n - 1
        bits = bin(k)[3:]
        t, length = a, 1
        for bit in bits:
            t = self.mul(t, self.frobenius(t, length))
            length *= 2
            if bit == "1":
                t = self.mul(a, self.frobenius(t, 1))
                length += 1
        a_r1 = self.frobenius(t, 1)
        norm = self.mul(a, a_r1)
        return self.mul(a_r1, self.from_int(pow(norm, -1, self.p)))

    def frobenius(self, a, j=1):
        """a^(p^j); negative j gives the inverse Frobenius."""
        j %= self.n
        if j == 0 or not a:
            return a
        if self.regime == "table":
            return self._exp[self._log[a] * pow(self.p, j, self._m) % self._m]
        return self._apply_linear(a, self._frobenius_matrix(j))

    def pow(self, a, e):
        if self.regime == "table":
            if not a:
                if e < 0:
                    raise ZeroDivisionError("inverse of zero")
                return 1 if e == 0 else 0
            return self._exp[self._log[a] * e % self._m]
        if self.regime == "prime":
            if e < 0:
                a, e = self.inv(a), -e
            return pow(a, e, self.p)
        return Field.pow(self, a, e)

    def is_zero(self, a):
        return not a

    def elements(self):
        """All raw elements in the canonical order (small fields only)."""
        if self.regime == "packed":
            return (self.from_coeffs(self._digits(c)) for c in range(self.order))
        return iter(range(self.order))

    def random(self, rng):
        return self.from_coeffs([rng.randrange(self.p) for _ in range(self.n)])

    def element_at(self, index):
        """The element whose base-p coefficient code is ``index``."""
        p = self.p
        return self.from_coeffs([(index // p ** i) % p for i in range(self.n)])

    def sqrt(self, a):
        """The smaller square root of a (canonical order), or None for non-squares."""
        if not a:
            return self.zero
        q = self.order
        if self.p == 2:
            r = self.pow(a, q // 2)
            return r
        if self.pow(a, (q - 1) // 2) != self.one:
            return None
        # Tonelli-Shanks
        s, t = 0, q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = self._nonresidue()
        m, c = s, self.pow(z, t)
        x, b = self.pow(a, (t + 1) // 2), self.pow(a, t)
        while b != self.one:
            i, b2 = 0, b
            while b2 != self.one:
                b2, i = self.mul(b2, b2), i + 1
            g = c
            for _ in range(m - i - 1):
                g = self.mul(g, g)
            x, c = self.mul(x, g), self.mul(g, g)
            b, m = self.mul(b, c), i
        return min(x, self.neg(x), key=self.key)

    def _nonresidue(self):
        if getattr(self, "_nr", None) is None:
            index = 1
            while True:
                z = self.element_at(index)
                if self.pow(z, (self.order - 1) // 2) != self.one:
                    self._nr = z
                    break
                index += 1
        return self._nr

    def generator(self):
        """u, the class of the variable."""
        return self.from_coeffs([0, 1]) if self.n > 1 else self.from_int(0)

    def convert(self, value):
        if isinstance(value, (list, tuple)):
            return self.from_coeffs([int(c) for c in value])
        raise TypeError(f"cannot convert {value!r} into {self}")

    def to_json(self, a):
        return [str(c) for c in self.coeffs(a)]

    def from_json(self, obj):
        if isinstance(obj, (int, str)):
            return self.from_int(int(obj))
        return self.from_coeffs([int(c) for c in obj])

    def descriptor(self):
        d = Field.descriptor(self)
        d["modulus"] = [str(c) for c in self.modulus]
        return d

    def format(self, a):
        cs = self.coeffs(a)
        terms = []
        for i, c in enumerate(cs):
            if c:
                mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
                coef = "" if (c == 1 and i) else str(c)
                terms.append(coef + ("*" if coef and mono else "") + mono)
        return "+".join(reversed(terms)) or "0"

    # vectorised search, used for small root finding
    def eval_everywhere(self, coeffs):
        """Raw values of the polynomial (raw coefficients, low first) at every
        element, for prime and table regimes; returns a numpy array indexed by
        the element code."""
        q = self.order
        if self.regime == "prime":
            xs = np.arange(q, dtype=np.int64)
            acc = np.zeros(q, dtype=np.int64)
            for c in reversed(coeffs):
                acc = (acc * xs + c) % q
            return acc
        if self.regime != "table":
            raise ValueError("exhaustive evaluation needs a small field")
        m, log, exp, zech = self._m, self._log_np, self._exp_np, self._zech_np
        xs = np.arange(q, dtype=np.int64)
        lx = log[xs]
        acc = np.zeros(q, dtype=np.int64)
        for c in reversed(coeffs):
            la = log[acc]
            nz = (acc != 0) & (xs != 0)
            prod = np.where(nz, exp[(la + lx) % m], 0)
            if c:
                lc = self._log[c]
                lp = log[prod]
                z = zech[(lc - lp) % m]
                summed = np.where(z < 0, 0, exp[(lp + np.maximum(z, 0)) % m])
                acc = np.where(prod == 0, c, summed)
            else:
                acc = prod
        return acc


@functools.lru_cache(maxsize=None)
def _irreducible_cached(mod, p):
    return is_irreducible_mod_p(list(mod), p)


@functools.lru_cache(maxsize=None)
def _make_cached(p, modulus):
    return FiniteField(p, modulus)


def make_extension(p, k=1, modulus=None):
    """The field F_{p^k}, with a deterministic modulus unless one is given.

    ``modulus`` may be a sequence of integers (low degree first, monic) or a
    ``Polynomial`` over F_p.  Identical requests return the same object.
    """
    if not _is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if k < 1:
        raise InvalidInput("extension degree must be positive")
    if modulus is None:
        mod = smallest_irreducible(p, k)
    else:
        if hasattr(modulus, "coefficients"):
            modulus = [int(modulus.field.coeffs(c)[0]) for c in modulus.coefficients]
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) - 1 != k:
            raise InvalidInput(f"modulus has degree {len(mod) - 1}, expected {k}")
        if mod[-1] != 1:
            raise InvalidInput("modulus must be monic")
        if not _irreducible_cached(mod, p):
            raise ModulusNotIrreducible(f"{list(mod)} is reducible over F_{p}")
    return _make_cached(p, mod)


def prime_field(p):
    return make_extension(p, 1)


def frobenius_cube_root(x):
    """The unique cube root of a characteristic-3 element (inverse Frobenius)."""
    field = x.field
    if not isinstance(field, FiniteField) or field.p != 3:
        raise UnsupportedCharacteristic("cube roots via Frobenius need characteristic 3")
    return field.elem(field.frobenius(x.raw, -1))


def prime_power(q):
    """(p, k) with q = p^k, or an InvalidInput error."""
    for p in range(2, q + 1):
        if q % p == 0:
            k = round(math.log(q, p))
            if p ** k == q and _is_prime(p):
                return p, k
            break
    raise InvalidInput(f"{q} is not a prime power")
