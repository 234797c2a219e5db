"""Exact ground fields: Q, F_p and cyclotomic fields Q(zeta_n).

Elements are raw Python values (Fraction, int, tuple of Fractions) and all
arithmetic goes through the field object.  This keeps the hot loops in the
linear algebra free of wrapper allocations.
"""
from __future__ import annotations

import random
import re
from fractions import Fraction
from functools import lru_cache


class FieldError(ValueError):
    pass


class Field:
    descriptor = "?"
    characteristic = 0
    finite = False
    zero = None
    one = None

    def __repr__(self):
        return f"Field({self.descriptor})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.descriptor == self.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __reduce__(self):
        return (field_from_descriptor, (self.descriptor,))

    # subclasses implement: add sub mul neg inv is_zero from_int from_fraction
    # parse format random

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_one(self, a):
        return a == self.one

    def elements(self):
        raise FieldError(f"{self.descriptor} is not finite")


class RationalField(Field):
    descriptor = "Q"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def parse(self, s):
        try:
            return Fraction(str(s).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational {s!r}") from exc

    def format(self, a):
        return str(a)

    def random(self, rng: random.Random, bound=9):
        num = rng.randint(-bound, bound)
        den = rng.randint(1, 3)
        return Fraction(num, den)


class PrimeField(Field):
    finite = True

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.descriptor = f"Fp:{p}"
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise FieldError(f"{q} has denominator divisible by {self.p}")
        return (q.numerator * pow(q.denominator, self.p - 2, self.p)) % self.p

    def parse(self, s):
        try:
            return self.from_fraction(Fraction(str(s).strip()))
        except ValueError as exc:
            raise FieldError(f"bad F_{self.p} element {s!r}") from exc

    def format(self, a):
        return str(a)

    def random(self, rng: random.Random, bound=None):
        return rng.randrange(self.p)

    def elements(self):
        return list(range(self.p))


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a, b):
    a = _poly_trim(a)
    b = _poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        a = _poly_trim(a)
    return _poly_trim(q), a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise FieldError("cyclotomic order must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(Fraction(c) for c in num)


_TERM = re.compile(r"^([+-]?)([0-9/]*)\*?(z(\^([0-9]+))?)?$")


class CyclotomicField(Field):
    """Q[z]/Phi_n(z); elements are tuples of phi(n) Fractions."""

    def __init__(self, n: int):
        self.n = n
        self.descriptor = f"Cyclotomic:{n}"
        self.modulus = cyclotomic_polynomial(n)
        self.degree = len(self.modulus) - 1
        k = self.degree
        self.zero = tuple([Fraction(0)] * k)
        self.one = tuple([Fraction(1)] + [Fraction(0)] * (k - 1))
        # reduction table: z^(k+j) expressed in the power basis
        red = []
        cur = [-c for c in self.modulus[:k]]  # z^k
        for _ in range(max(k - 1, 0)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                cur = [c - top * m for c, m in zip(cur, self.modulus[:k])]
        self._red = red

    def zeta(self, power=1):
        """The class of z^power, a primitive n-th root of unity."""
        power %= self.n
        vec = [Fraction(0)] * (power + 1)
        vec[power] = Fraction(1)
        return self._reduce(vec)

    def _reduce(self, coeffs):
        k = self.degree
        coeffs = list(coeffs)
        if len(coeffs) > k:
            _, coeffs = _poly_divmod(coeffs, list(self.modulus))
        coeffs = list(coeffs) + [Fraction(0)] * (k - len(coeffs))
        return tuple(coeffs)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        k = self.degree
        prod = [Fraction(0)] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:k]
        for j, c in enumerate(prod[k:]):
            if c:
                for i, r in enumerate(self._red[j]):
                    if r:
                        out[i] += c * r
        return tuple(out)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid on (a, Phi_n)
        r0, r1 = list(self.modulus), _poly_trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            qs = _poly_mul(q, s1) if q else [Fraction(0)]
            width = max(len(s0), len(qs))
            s_new = [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
                     for i in range(width)]
            s0, s1 = s1, _poly_trim(s_new) or [Fraction(0)]
        # r0 is a nonzero constant gcd
        c = r0[0]
        return self._reduce([x / c for x in s0])

    def is_zero(self, a):
        return not any(a)

    def from_int(self, n):
        return tuple([Fraction(n)] + [Fraction(0)] * (self.degree - 1))

    def from_fraction(self, q):
        return tuple([Fraction(q)] + [Fraction(0)] * (self.degree - 1))

    def parse(self, s):
        text = str(s).replace(" ", "")
        if not text:
            raise FieldError("empty cyclotomic element")
        terms = re.findall(r"[+-]?[^+-]+", text)
        if "".join(terms) != text:
            raise FieldError(f"bad cyclotomic element {s!r}")
        acc = [Fraction(0)]
        for term in terms:
            m = _TERM.match(term)
            if not m or (not m.group(2) and not m.group(3)):
                raise FieldError(f"bad cyclotomic term {term!r} in {s!r}")
            sign, coef, zpart, _, power = m.groups()
            try:
                c = Fraction(coef) if coef else Fraction(1)
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"bad coefficient in {s!r}") from exc
            if sign == "-":
                c = -c
            e = (int(power) if power else 1) if zpart else 0
            if len(acc) <= e:
                acc += [Fraction(0)] * (e + 1 - len(acc))
            acc[e] += c
        return self._reduce(acc)

    def format(self, a):
        parts = []
        for e in range(self.degree - 1, -1, -1):
            c = a[e]
            if not c:
                continue
            if e == 0:
                body = str(abs(c))
            else:
                zp = "z" if e == 1 else f"z^{e}"
                body = zp if abs(c) == 1 else f"{abs(c)}*{zp}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def random(self, rng: random.Random, bound=5):
        return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(self.degree))


QQ = RationalField()


@lru_cache(maxsize=None)
def field_from_descriptor(desc: str) -> Field:
    desc = desc.strip()
    if desc == "Q":
        return QQ
    kind, _, arg = desc.partition(":")
    try:
        value = int(arg)
    except ValueError as exc:
        raise FieldError(f"unknown field descriptor {desc!r}") from exc
    if kind == "Fp":
        return PrimeField(value)
    if kind == "Cyclotomic":
        return CyclotomicField(value)
    raise FieldError(f"unknown field descriptor {desc!r}")


def GF(p: int) -> PrimeField:
    return field_from_descriptor(f"Fp:{p}")


def cyclotomic(n: int) -> CyclotomicField:
    return field_from_descriptor(f"Cyclotomic:{n}")
