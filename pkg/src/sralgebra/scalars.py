"""Exact arithmetic in the real cyclotomic field Q(2cos(pi/(2n))).

Scalars are stored as an integer numerator vector over a common positive
denominator, in the power basis 1, c, c^2, ... of the generator
``c = 2cos(pi/(2n))``.  Every entry of the reflection and projector matrices
of the dihedral group I2(n) lives in this field.  For the A-series a degree
one field (plain Q) is used.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import FieldMismatch, InvalidParameter, UnsupportedOperation

RATIONAL = "rational"


# -- integer polynomial helpers (coefficients low -> high) -----------------

def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_divexact(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(q) - 1, -1, -1):
        c, r = divmod(a[k + len(b) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[k] = c
        for t, y in enumerate(b):
            a[k + t] -= c * y
    if any(a[: len(b) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple:
    """Integer coefficients of the m-th cyclotomic polynomial."""
    p = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            p = _poly_divexact(p, cyclotomic_polynomial(d))
    return tuple(p)


def dickson_polynomials(count: int) -> list:
    """C_k with C_k(z + 1/z) = z^k + z^-k, for k < count."""
    polys = [[2], [0, 1]]
    while len(polys) < count:
        prev, cur = polys[-2], polys[-1]
        nxt = [0] + cur
        for i, y in enumerate(prev):
            nxt[i] -= y
        polys.append(_trim(nxt))
    return polys[:count]


def real_cyclotomic_minpoly(m: int) -> tuple:
    """Minimal polynomial of 2cos(2pi/m), obtained from the palindromic
    cyclotomic polynomial by the substitution x = z + 1/z."""
    phi = cyclotomic_polynomial(m)
    h = (len(phi) - 1) // 2
    cheb = dickson_polynomials(h + 1)
    out = [0] * (h + 1)
    out[0] = phi[h]
    for k in range(1, h + 1):
        c = phi[h + k]
        if c:
            for i, y in enumerate(cheb[k]):
                out[i] += c * y
    return tuple(_trim(out))


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


def _verify_irreducible(coeffs) -> bool:
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, domain="ZZ")
    return poly.is_irreducible


# -- field descriptor ------------------------------------------------------

class NumberField:
    """Descriptor of K_n = Q(c), c = 2cos(pi/(2n)); ``n='rational'`` gives Q."""

    _instances: dict = {}

    def __new__(cls, n=RATIONAL):
        key = n if n == RATIONAL else int(n)
        inst = cls._instances.get(key)
        if inst is None:
            inst = super().__new__(cls)
            inst._setup(key)
            cls._instances[key] = inst
        return inst

    def _setup(self, n):
        if n == RATIONAL:
            self.n = RATIONAL
            self.minpoly = (-1, 1)
            self.degree = 1
        else:
            if isinstance(n, bool) or n < 3:
                raise InvalidParameter(f"dihedral parameter must be >= 3, got {n}")
            self.n = n
            self.minpoly = real_cyclotomic_minpoly(4 * n)
            self.degree = len(self.minpoly) - 1
            if self.degree != euler_phi(4 * n) // 2:
                raise ArithmeticError("minimal polynomial has the wrong degree")
            if not _verify_irreducible(self.minpoly):
                raise ArithmeticError("minimal polynomial is reducible")
            value = 2 * math.cos(math.pi / (2 * n))
            if abs(sum(c * value**k for k, c in enumerate(self.minpoly))) > 1e-9 * 10**self.degree:
                raise ArithmeticError("minimal polynomial does not vanish at the generator")
        self._tail = self.minpoly[:-1]
        self.zero = FieldScalar._raw(self, (0,) * self.degree, 1)
        self.one = FieldScalar._raw(self, (1,) + (0,) * (self.degree - 1), 1)
        self._cheb = {}

    def __reduce__(self):
        return (NumberField, (self.n,))

    def __repr__(self):
        if self.is_rational:
            return "NumberField('rational')"
        return f"NumberField({self.n})"

    @property
    def is_rational(self) -> bool:
        return self.n == RATIONAL

    @property
    def gen(self) -> "FieldScalar":
        if self.is_rational:
            raise UnsupportedOperation("the rational field has no generator")
        return FieldScalar._raw(self, (0, 1) + (0,) * (self.degree - 2), 1)

    @property
    def gen_value(self) -> float:
        if self.is_rational:
            return 1.0
        return 2 * math.cos(math.pi / (2 * self.n))

    def __call__(self, value) -> "FieldScalar":
        return self.scalar(value)

    def scalar(self, value) -> "FieldScalar":
        if isinstance(value, FieldScalar):
            if value.field is not self:
                raise FieldMismatch(f"{value.field!r} vs {self!r}")
            return value
        if isinstance(value, str):
            return parse_scalar(value, self)
        if isinstance(value, (int, Fraction)):
            q = Fraction(value)
            return FieldScalar._make(self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator)
        raise TypeError(f"cannot convert {type(value).__name__} to a field scalar")

    def from_coeffs(self, coeffs) -> "FieldScalar":
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > self.degree:
            raise InvalidParameter("too many coordinates for this field")
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return FieldScalar._make(self, tuple(int(c * den) for c in coeffs), den)

    def cheb_cos(self, k: int) -> "FieldScalar":
        """Exact 2cos(k*pi/(2n))."""
        if self.is_rational:
            raise UnsupportedOperation("cheb_cos needs a dihedral field")
        k = abs(k) % (4 * self.n)
        if not self._cheb:
            self._cheb[0] = self.scalar(2)
            self._cheb[1] = self.gen
        top = max(self._cheb)
        c = self.gen
        while top < k:
            self._cheb[top + 1] = c * self._cheb[top] - self._cheb[top - 1]
            top += 1
        return self._cheb[k]

    def cos(self, k: int) -> "FieldScalar":
        """cos(k*pi/(2n))."""
        return self.cheb_cos(k) * _HALF

    def sin(self, k: int) -> "FieldScalar":
        """sin(k*pi/(2n)) = cos((n - k)*pi/(2n))."""
        return self.cheb_cos(self.n - k) * _HALF


_HALF = Fraction(1, 2)


def field_init(n=RATIONAL) -> NumberField:
    return NumberField(n)


# -- scalars ---------------------------------------------------------------

class FieldScalar:
    """Immutable exact element of a :class:`NumberField`."""

    __slots__ = ("field", "_num", "_den", "_hash")

    @classmethod
    def _raw(cls, field, num, den):
        self = object.__new__(cls)
        self.field = field
        self._num = num
        self._den = den
        self._hash = None
        return self

    @classmethod
    def _make(cls, field, num, den):
        if den < 0:
            num = tuple(-x for x in num)
            den = -den
        g = math.gcd(den, *num)
        if g != 1:
            num = tuple(x // g for x in num)
            den //= g
        return cls._raw(field, num, den)

    # coordinates
    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(x, self._den) for x in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self):
        return any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def __float__(self):
        x = self.field.gen_value
        return sum(c * x**k for k, c in enumerate(self._num)) / self._den

    to_float = __float__

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, FieldScalar):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            return FieldScalar._make(self.field, tuple(a + b for a, b in zip(self._num, other._num)), d1)
        return FieldScalar._make(
            self.field, tuple(a * d2 + b * d1 for a, b in zip(self._num, other._num)), d1 * d2
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar._raw(self.field, tuple(-a for a in self._num), self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, FieldScalar):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            field = self.field
            a, b = self._num, other._num
            deg = field.degree
            if deg == 1:
                return FieldScalar._make(field, (a[0] * b[0],), self._den * other._den)
            prod = [0] * (2 * deg - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            prod[i + j] += x * y
            tail = field._tail
            for k in range(2 * deg - 2, deg - 1, -1):
                c = prod[k]
                if c:
                    base = k - deg
                    for t, m in enumerate(tail):
                        if m:
                            prod[base + t] -= c * m
            return FieldScalar._make(field, tuple(prod[:deg]), self._den * other._den)
        if isinstance(other, int):
            return FieldScalar._make(self.field, tuple(a * other for a in self._num), self._den)
        if isinstance(other, Fraction):
            return FieldScalar._make(
                self.field, tuple(a * other.numerator for a in self._num), self._den * other.denominator
            )
        return NotImplemented

    __rmul__ = __mul__

    def inv(self) -> "FieldScalar":
        if not any(self._num):
            raise ZeroDivisionError("inverse of zero field element")
        field = self.field
        deg = field.degree
        if deg == 1:
            return FieldScalar._make(field, (self._den,), self._num[0])
        # Solve (self * x) = 1 using the multiplication matrix.
        cols = []
        basis = self
        gen = field.gen
        for _ in range(deg):
            cols.append(basis.coeffs)
            basis = basis * gen
        rows = [[cols[j][i] for j in range(deg)] + [Fraction(int(i == 0))] for i in range(deg)]
        for col in range(deg):
            piv = next(r for r in range(col, deg) if rows[r][col] != 0)
            rows[col], rows[piv] = rows[piv], rows[col]
            p = rows[col][col]
            rows[col] = [v / p for v in rows[col]]
            for r in range(deg):
                if r != col and rows[r][col] != 0:
                    f = rows[r][col]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[col])]
        return field.from_coeffs([rows[i][deg] for i in range(deg)])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out, base = self.field.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.field is other.field and self._den == other._den and self._num == other._num
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return (
                self._den == q.denominator
                and self._num[0] == q.numerator
                and not any(self._num[1:])
            )
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self._num[1:]):
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self._num, self._den))
        return self._hash

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"FieldScalar({format_scalar(self)!r})"


def format_scalar(x: FieldScalar) -> str:
    """Render in the textual scalar syntax, e.g. ``3/2 + 1/2*c - c^2``."""
    parts = []
    for k, q in enumerate(x.coeffs):
        if q == 0:
            continue
        neg = q < 0
        q = abs(q)
        if k == 0:
            body = str(q)
        else:
            power = "c" if k == 1 else f"c^{k}"
            body = power if q == 1 else f"{q}*{power}"
        parts.append((neg, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def parse_scalar(text: str, field: NumberField) -> FieldScalar:
    from .parsing import parse_scalar_expression

    return parse_scalar_expression(text, field)
