"""Exact scalar domains: rationals and simple algebraic extensions.

Rational scalars are plain ``fractions.Fraction``.  An algebraic scalar is an
element of Q[theta]/(p(theta)) with p monic, squarefree and irreducible over
Q; it is stored as the tuple of rational coefficients of its residue
polynomial (degree < deg p) together with its defining field.

Only one extension layer is supported: the coefficients of a number-field
element are always plain rationals.  All arithmetic is exact; nothing here
ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union


class ScalarDomainError(ValueError):
    """Mixing elements of different scalar domains."""


class NegInfinity:
    """Degree of the zero polynomial; compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return self is not other

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return self is other

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return hash("NegInfinity")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "-oo"


NEG_INF = NegInfinity()


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational scalar: {x!r}")


class NumberField:
    """Q[theta]/(p(theta)) for monic irreducible squarefree p over Q.

    ``modulus`` is the dense coefficient tuple of p, low degree first,
    normalized monic.  Irreducibility is checked at construction (which also
    forces squarefreeness).
    """

    def __init__(self, modulus: Sequence[Fraction], name: str = "theta",
                 _trusted: bool = False):
        coeffs = [as_fraction(c) for c in modulus]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 3:
            raise ValueError("extension degree must be at least 2")
        lead = coeffs[-1]
        self.modulus = tuple(c / lead for c in coeffs)
        self.degree = len(self.modulus) - 1
        self.name = name
        if not _trusted:
            from .unifactor import is_irreducible_q

            if not is_irreducible_q(self.modulus):
                raise ValueError("defining polynomial is reducible over Q")

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def modulus_text(self) -> str:
        from .unipoly import UniPoly

        return str(UniPoly(self.modulus, self.name))

    def __repr__(self):
        return f"NumberField({self.name}; deg {self.degree})"

    def element(self, coeffs) -> "NFElt":
        return NFElt(self, coeffs)

    def generator(self) -> "NFElt":
        return NFElt(self, (0, 1))

    def zero(self) -> "NFElt":
        return NFElt(self, ())

    def one(self) -> "NFElt":
        return NFElt(self, (1,))

    def from_rational(self, x) -> "NFElt":
        return NFElt(self, (as_fraction(x),))

    def _reduce(self, coeffs: list) -> tuple:
        # reduce a coefficient list modulo the monic modulus
        n = self.degree
        m = self.modulus
        work = list(coeffs)
        for i in range(len(work) - 1, n - 1, -1):
            c = work[i]
            if c:
                for j in range(n + 1):
                    work[i - n + j] -= c * m[j]
        del work[n:]
        while work and work[-1] == 0:
            work.pop()
        return tuple(work)


class NFElt:
    """Element of a NumberField; immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        object.__setattr__(self, "field", field)
        cs = [as_fraction(c) for c in coeffs]
        object.__setattr__(self, "coeffs", field._reduce(cs))

    def __setattr__(self, *a):
        raise AttributeError("NFElt is immutable")

    def _coerce(self, other) -> "NFElt":
        if isinstance(other, NFElt):
            if other.field != self.field:
                raise ScalarDomainError("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NFElt(self.field, (as_fraction(other),))
        return NotImplemented

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NFElt(self.field, (as_fraction(other),))
        if not isinstance(other, NFElt):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        n = max(len(a), len(b))
        out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
               for i in range(n)]
        return NFElt(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return NFElt(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return NFElt(self.field, ())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return NFElt(self.field, out)

    __rmul__ = __mul__

    def inverse(self) -> "NFElt":
        """Multiplicative inverse via extended Euclid in Q[theta]."""
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero in number field")
        # invariant: s * self == r (mod modulus)
        r0, r1 = list(self.field.modulus), list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            r1 = _trim(r1)
            if len(r1) == 1:
                inv = 1 / r1[0]
                return NFElt(self.field, [c * inv for c in s1])
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_rational(self) -> bool:
        return len(self.coeffs) <= 1

    def rational_value(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        if len(self.coeffs) == 1:
            return self.coeffs[0]
        raise ValueError("not a rational element")

    def __repr__(self):
        if not self.coeffs:
            return "0"
        name = self.field.name
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*{name}" if c != 1 else name)
            else:
                parts.append(f"{c}*{name}^{i}" if c != 1 else f"{name}^{i}")
        return " + ".join(parts)


Scalar = Union[Fraction, NFElt]


def _trim(c: list) -> list:
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _trim(out)


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else Fraction(0)) -
                  (b[i] if i < len(b) else Fraction(0)) for i in range(n)])


def _poly_divmod(a: list, b: list):
    a = [as_fraction(c) for c in a]
    b = _trim([as_fraction(c) for c in b])
    if b == [Fraction(0)]:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(_trim(r)) - 1 >= db and _trim(r) != [Fraction(0)]:
        r = _trim(r)
        shift = len(r) - 1 - db
        coef = r[-1] / lb
        q[shift] += coef
        for i in range(len(b)):
            r[shift + i] -= coef * b[i]
        r = r[:-1] if not r[-1] else r
    return _trim(q), _trim(r)


def scalar_zero_like(x: Scalar):
    return x.field.zero() if isinstance(x, NFElt) else Fraction(0)


def is_zero(x: Scalar) -> bool:
    if isinstance(x, NFElt):
        return not x.coeffs
    return x == 0


def same_domain(a: Scalar, b: Scalar) -> bool:
    if isinstance(a, NFElt) and isinstance(b, NFElt):
        return a.field == b.field
    return not isinstance(a, NFElt) and not isinstance(b, NFElt)
