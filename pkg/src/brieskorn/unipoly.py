"""Dense univariate polynomials over an exact scalar domain.

Coefficients are stored low degree first with a nonzero leading coefficient
(the zero polynomial has an empty list).  Coefficients are ``Fraction`` or
number-field elements; the variable name is display-only.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List

from .scalars import NEG_INF, NFElt, Scalar, as_fraction, is_zero


class UniPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var: str = "t"):
        cs: List[Scalar] = []
        for c in coeffs:
            cs.append(Fraction(c) if isinstance(c, int) else c)
        while cs and is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, *a):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def zero(cls, var="t"):
        return cls((), var)

    @classmethod
    def constant(cls, c, var="t"):
        return cls((c,), var)

    @classmethod
    def x(cls, var="t"):
        return cls((0, 1), var)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def lead(self) -> Scalar:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, NFElt)):
            other = UniPoly((other,), self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, NFElt)):
            other = UniPoly((other,), self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, NFElt)):
            other = UniPoly((other,), self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NFElt)):
            if is_zero(Fraction(other) if isinstance(other, int) else other):
                return UniPoly.zero(self.var)
            return UniPoly([c * other for c in self.coeffs], self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not is_zero(a):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly((1,), self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UniPoly"):
        """Exact Euclidean division; scalar domain must be a field."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q = UniPoly.zero(self.var)
        r = self
        d = other.degree()
        inv_lead = 1 / other.lead() if isinstance(other.lead(), Fraction) \
            else other.lead().inverse()
        while not r.is_zero() and r.degree() >= d:
            shift = r.degree() - d
            coef = r.lead() * inv_lead
            mono = UniPoly([Fraction(0)] * shift + [coef], self.var)
            q = q + mono
            r = r - mono * other
        return q, r

    def __mod__(self, other):
        return self.divmod(other)[1]

    def scale(self, c):
        return self * c

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.lead()
        inv = 1 / lead if isinstance(lead, Fraction) else lead.inverse()
        return self * inv

    def derivative(self) -> "UniPoly":
        return UniPoly([self.coeffs[i] * i for i in range(1, len(self.coeffs))],
                       self.var)

    def eval(self, x: Scalar) -> Scalar:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_shift(self, c: Scalar) -> "UniPoly":
        """p(var + c), exact Taylor shift."""
        result = UniPoly.zero(self.var)
        shifted = UniPoly((c, 1), self.var)
        for coef in reversed(self.coeffs):
            result = result * shifted + UniPoly((coef,), self.var)
        return result

    def reverse(self) -> "UniPoly":
        """Coefficient reversal t^deg * p(1/t)."""
        return UniPoly(tuple(reversed(self.coeffs)), self.var)

    # -- rational-coefficient helpers ------------------------------------

    def content_free(self):
        """(primitive integer polynomial, content) for rational coefficients.

        Primitive part has integer coefficients, positive leading one.
        """
        if self.is_zero():
            return self, Fraction(0)
        if any(isinstance(c, NFElt) for c in self.coeffs):
            raise TypeError("content_free needs rational coefficients")
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        if ints[-1] < 0:
            g = -g
        prim = UniPoly([Fraction(v // g) for v in ints], self.var)
        return prim, Fraction(g, den)

    def gcd_monic(self, other: "UniPoly") -> "UniPoly":
        """Monic gcd via the Euclidean algorithm over the coefficient field."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def squarefree_part(self) -> "UniPoly":
        if self.degree() in (NEG_INF, 0):
            return self.monic()
        g = self.gcd_monic(self.derivative())
        return self.divmod(g)[0].monic()

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if is_zero(c):
                continue
            if i == 0:
                mono = ""
            elif i == 1:
                mono = self.var
            else:
                mono = f"{self.var}^{i}"
            if mono:
                if isinstance(c, Fraction) and c == 1:
                    parts.append(mono)
                elif isinstance(c, Fraction) and c == -1:
                    parts.append(f"-{mono}")
                else:
                    cs = f"({c})" if isinstance(c, NFElt) or c < 0 else str(c)
                    parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({c})" if isinstance(c, NFElt) else str(c))
        return " + ".join(parts).replace("+ (-", "- (").replace("+ -", "- ")


def lagrange_interpolate(points, var="t") -> UniPoly:
    """Exact interpolation through (x_i, y_i) with distinct rational x_i."""
    result = UniPoly.zero(var)
    xs = [p[0] for p in points]
    for i, (xi, yi) in enumerate(points):
        if is_zero(yi) if not isinstance(yi, int) else yi == 0:
            continue
        num = UniPoly((1,), var)
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if i != j:
                num = num * UniPoly((-xj, 1), var)
                den = den * (xi - xj)
        result = result + num * (yi / den)
    return result
