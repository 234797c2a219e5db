"""Laurent polynomials in t, rational functions over Q, and matrices of them."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping


class LaurentPoly:
    """Finitely supported map exponent -> coefficient; t acts as the shift [1]."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                clean[int(e)] = c
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def monomial(cls, exp=0, coeff=1):
        return cls({exp: coeff})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, n):
        """Multiply by t^n."""
        return LaurentPoly({e + n: c for e, c in self.terms.items()})

    def bar(self):
        """The involution t -> t^-1."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def at_one(self):
        return sum(self.terms.values())

    def coefficient(self, e):
        return self.terms.get(e, 0)

    def min_exp(self):
        return min(self.terms) if self.terms else None

    def max_exp(self):
        return max(self.terms) if self.terms else None

    def is_nonnegative(self):
        return all(c > 0 for c in self.terms.values())

    def to_json(self):
        return {str(e): _json_num(c) for e, c in self.terms.items()}

    @classmethod
    def from_json(cls, data):
        return cls({int(k): _parse_num(v) for k, v in data.items()})

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "t"
            else:
                mono = f"t^{e}"
            if mono and c == 1:
                body = mono
            elif mono and c == -1:
                body = "-" + mono
            elif mono:
                body = f"{c}{mono}"
            else:
                body = str(c)
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out


def _json_num(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else str(c)
    return c


def _parse_num(v):
    if isinstance(v, int):
        return v
    q = Fraction(str(v))
    return q.numerator if q.denominator == 1 else q


# ----- univariate polynomials over Q, coefficient lists lowest degree first


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_add(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_neg(a):
    return tuple(-x for x in a)


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def poly_divmod(a, b):
    a = list(_trim(a))
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), _trim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and a:
        c = Fraction(a[-1]) / lead
        s = len(a) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            a[i + s] -= c * y
        a = list(_trim(a))
    return _trim(q), _trim(a)


def poly_monic(a):
    a = _trim(a)
    if not a:
        return a
    lead = Fraction(a[-1])
    return tuple(Fraction(x) / lead for x in a)


def poly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return poly_monic(a)


class RationalFunction:
    """num/den over Q with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num = _trim(tuple(Fraction(x) for x in num))
        den = _trim(tuple(Fraction(x) for x in den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = (), (Fraction(1),)
            return
        g = poly_gcd(num, den)
        if len(g) > 1:
            num, _ = poly_divmod(num, g)
            den, _ = poly_divmod(den, g)
        lead = den[-1]
        self.num = tuple(x / lead for x in num)
        self.den = tuple(x / lead for x in den)

    @classmethod
    def from_laurent(cls, p: LaurentPoly):
        if not p:
            return cls(())
        lo = min(0, p.min_exp())
        num = [Fraction(0)] * (p.max_exp() - lo + 1)
        for e, c in p.terms.items():
            num[e - lo] = Fraction(c)
        den = [Fraction(0)] * (-lo) + [Fraction(1)]
        return cls(num, den)

    def to_laurent(self):
        """The Laurent polynomial equal to self, or None if the denominator is not t^k."""
        if any(self.den[:-1]):
            return None
        k = len(self.den) - 1
        terms = {}
        for i, c in enumerate(self.num):
            if c:
                terms[i - k] = c.numerator if c.denominator == 1 else c
        return LaurentPoly(terms)

    def is_zero(self):
        return not self.num

    def __eq__(self, other):
        return isinstance(other, RationalFunction) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        return RationalFunction(poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den)),
                                poly_mul(self.den, other.den))

    def __neg__(self):
        return RationalFunction(poly_neg(self.num), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RationalFunction(poly_mul(self.num, other.num), poly_mul(self.den, other.den))

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inverse()

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        def fmt(p):
            terms = []
            for i in range(len(p) - 1, -1, -1):
                c = p[i]
                if not c:
                    continue
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                if mono and c == 1:
                    terms.append(mono)
                elif mono and c == -1:
                    terms.append("-" + mono)
                else:
                    terms.append(f"{c}{mono}")
            return " + ".join(terms) if terms else "0"
        if self.den == (1,):
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"


class _Singular:
    def __repr__(self):
        return "Singular"

    def __bool__(self):
        return False


Singular = _Singular()


def laurent_matmul(a, b):
    n, m = len(a), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = LaurentPoly()
            for k in range(len(b)):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def rational_matmul(a, b):
    n, m = len(a), len(b[0]) if b else 0
    zero = RationalFunction(())
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = zero
            for k in range(len(b)):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def to_rational_matrix(m):
    return tuple(tuple(RationalFunction.from_laurent(x) for x in row) for row in m)


def laurentMatrixInverse(m):
    """Inverse over Q(t) of a square matrix of LaurentPoly, or Singular."""
    n = len(m)
    zero = RationalFunction(())
    one = RationalFunction((1,))
    rows = [list(r) + [one if i == j else zero for j in range(n)]
            for i, r in enumerate(to_rational_matrix(m))]
    for c in range(n):
        piv = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
        if piv is None:
            return Singular
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = rows[c][c].inverse()
        rows[c] = [x * inv for x in rows[c]]
        for i in range(n):
            if i != c and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return tuple(tuple(r[n:]) for r in rows)
