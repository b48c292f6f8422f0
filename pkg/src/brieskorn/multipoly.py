"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a map from exponent vectors (one non-negative integer per
variable) to nonzero coefficients.  Coefficients are ``Fraction`` or number
field elements (``NFElt``); mixing the two domains coerces rationals upward
and rejects distinct fields.

  x^2*y + 3   over vars (x, y)   ->   {(2, 1): 1, (0, 0): 3}

The zero polynomial has an empty term map and total degree ``NEG_INF``.
Instances are immutable; every operation returns a fresh polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .scalars import (NEG_INF, NFElt, Scalar, ScalarDomainError, as_fraction,
                      is_zero)

Exponent = Tuple[int, ...]


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exponent, Scalar]):
        vs = tuple(variables)
        tm: Dict[Exponent, Scalar] = {}
        for exp, c in terms.items():
            e = tuple(int(x) for x in exp)
            if len(e) != len(vs):
                raise ValueError("exponent length does not match variables")
            if any(x < 0 for x in e):
                raise ValueError("negative exponent")
            if isinstance(c, int):
                c = Fraction(c)
            if not is_zero(c):
                tm[e] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", tm)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables) -> "MultiPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, c) -> "MultiPoly":
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): c})

    @classmethod
    def variable(cls, variables, name: str) -> "MultiPoly":
        vs = tuple(variables)
        i = vs.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(vs)))
        return cls(vs, {exp: Fraction(1)})

    @classmethod
    def monomial(cls, variables, exp: Exponent, c=Fraction(1)) -> "MultiPoly":
        return cls(variables, {tuple(exp): c})

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def coefficient(self, exp: Exponent) -> Scalar:
        return self.terms.get(tuple(exp), Fraction(0))

    def sorted_terms(self):
        """Terms sorted by (degree desc, exponents lex desc); deterministic."""
        return sorted(self.terms.items(),
                      key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))

    def _check_compatible(self, other: "MultiPoly"):
        if self.vars != other.vars:
            raise ScalarDomainError(
                f"variable lists differ: {self.vars} vs {other.vars}")

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, NFElt)):
            other = MultiPoly.constant(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if is_zero(s) if not isinstance(s, int) else s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, NFElt)):
            other = MultiPoly.constant(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NFElt)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_compatible(other)
        out: Dict[Exponent, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if is_zero(s) if not isinstance(s, int) else s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        if isinstance(c, int):
            c = Fraction(c)
        if is_zero(c):
            return MultiPoly.zero(self.vars)
        return MultiPoly(self.vars, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, NFElt)):
            other = MultiPoly.constant(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, tuple(self.sorted_terms())))

    # -- calculus ------------------------------------------------------

    def partial(self, var: str) -> "MultiPoly":
        """Formal partial derivative with respect to ``var``."""
        if var not in self.vars:
            raise ValueError(f"unknown variable {var!r}")
        i = self.vars.index(var)
        out: Dict[Exponent, Scalar] = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly(self.vars, out)

    def integrate(self, var: str) -> "MultiPoly":
        """Formal antiderivative in ``var`` with zero constant term."""
        if var not in self.vars:
            raise ValueError(f"unknown variable {var!r}")
        i = self.vars.index(var)
        out: Dict[Exponent, Scalar] = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] += 1
            out[tuple(ne)] = c * Fraction(1, ne[i])
        return MultiPoly(self.vars, out)

    def eval_partial(self, assignment: Mapping[str, Scalar]) -> "MultiPoly":
        """Substitute scalars for some variables; exact.

        The result keeps the full variable list so that repeated partial
        evaluation and arithmetic stay well typed.
        """
        for v in assignment:
            if v not in self.vars:
                raise ValueError(f"unknown variable {v!r}")
        idx = {self.vars.index(v): val for v, val in assignment.items()}
        out: Dict[Exponent, Scalar] = {}
        for e, c in self.terms.items():
            val = c
            ne = list(e)
            for i, s in idx.items():
                if e[i]:
                    if isinstance(s, int):
                        s = Fraction(s)
                    val = val * s ** e[i]
                ne[i] = 0
            key = tuple(ne)
            cur = out.get(key, 0) + val
            if is_zero(cur) if not isinstance(cur, int) else cur == 0:
                out.pop(key, None)
            else:
                out[key] = cur
        return MultiPoly(self.vars, out)

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Exact quotient self/other; raises ValueError when not divisible."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        self._check_compatible(other)
        key = lambda e: (sum(e), e)
        oe = max(other.terms, key=key)
        oc = other.terms[oe]
        rem = self
        q: Dict[Exponent, Scalar] = {}
        while not rem.is_zero():
            re = max(rem.terms, key=key)
            diff = tuple(a - b for a, b in zip(re, oe))
            if any(d < 0 for d in diff):
                raise ValueError("not an exact division")
            c = rem.terms[re] / oc
            q[diff] = c
            rem = rem - MultiPoly(self.vars, {diff: c}) * other
        return MultiPoly(self.vars, q)

    def to_field(self, field) -> "MultiPoly":
        """Coerce rational coefficients into the given number field."""
        return MultiPoly(self.vars,
                         {e: field.from_rational(c) if not isinstance(c, NFElt) else c
                          for e, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.vars, e) if k)
            if mono:
                if isinstance(c, Fraction) and c == 1:
                    parts.append(mono)
                elif isinstance(c, Fraction) and c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}" if not isinstance(c, NFElt)
                                 else f"({c})*{mono}")
            else:
                parts.append(f"({c})" if isinstance(c, NFElt) else str(c))
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def jacobian2(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """f_x*g_y - f_y*g_x for polynomials in exactly two variables."""
    if len(f.vars) != 2 or f.vars != g.vars:
        raise ValueError("jacobian2 needs two polynomials in the same two variables")
    x, y = f.vars
    return f.partial(x) * g.partial(y) - f.partial(y) * g.partial(x)


# -- parser -----------------------------------------------------------------
#
# Grammar (CLI polynomial syntax): variables are identifiers, ^ for powers,
# * optional between a coefficient and a monomial, rational literals a/b.
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*')? factor)*       juxtaposition multiplies
#   factor := atom ('^' integer)?
#   atom   := rational | variable | '(' expr ')'


class PolyParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Tok:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind, self.value, self.pos = kind, value, pos


def _tokenize(text: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = int(text[i:j])
            if j < n and text[j] == "/":
                k = j + 1
                if k >= n or not text[k].isdigit():
                    raise PolyParseError("expected denominator digits", j)
                m = k
                while m < n and text[m].isdigit():
                    m += 1
                den = int(text[k:m])
                if den == 0:
                    raise PolyParseError("zero denominator", k)
                toks.append(_Tok("num", Fraction(num, den), i))
                i = m
            else:
                toks.append(_Tok("num", Fraction(num), i))
                i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("var", text[i:j], i))
            i = j
            continue
        if ch in "+-*^()":
            toks.append(_Tok(ch, ch, i))
            i += 1
            continue
        raise PolyParseError(f"unexpected character {ch!r}", i)
    toks.append(_Tok("end", None, n))
    return toks


class _Parser:
    def __init__(self, toks, variables):
        self.toks = toks
        self.i = 0
        self.vars = tuple(variables)

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expr(self) -> MultiPoly:
        sign = 1
        while self.peek().kind in "+-":
            if self.next().kind == "-":
                sign = -sign
        result = self.term().scale(sign)
        while self.peek().kind in "+-":
            op = self.next().kind
            sign = 1 if op == "+" else -1
            while self.peek().kind in "+-":
                if self.next().kind == "-":
                    sign = -sign
            result = result + self.term().scale(sign)
        return result

    def term(self) -> MultiPoly:
        result = self.factor()
        while True:
            t = self.peek()
            if t.kind == "*":
                self.next()
                result = result * self.factor()
            elif t.kind in ("num", "var") or t.kind == "(":
                result = result * self.factor()
            else:
                return result

    def factor(self) -> MultiPoly:
        base = self.atom()
        if self.peek().kind == "^":
            self.next()
            t = self.next()
            neg = False
            if t.kind == "-":
                neg, t = True, self.next()
            if t.kind != "num" or t.value.denominator != 1:
                raise PolyParseError("exponent must be an integer", t.pos)
            if neg:
                raise PolyParseError("negative exponent", t.pos)
            return base ** int(t.value)
        return base

    def atom(self) -> MultiPoly:
        t = self.next()
        if t.kind == "num":
            return MultiPoly.constant(self.vars, t.value)
        if t.kind == "var":
            if t.value not in self.vars:
                raise PolyParseError(f"unknown variable {t.value!r}", t.pos)
            return MultiPoly.variable(self.vars, t.value)
        if t.kind == "(":
            inner = self.expr()
            closing = self.next()
            if closing.kind != ")":
                raise PolyParseError("expected ')'", closing.pos)
            return inner
        raise PolyParseError("expected a number, variable or '('", t.pos)


def parse_polynomial(text: str, variables=("x", "y")) -> MultiPoly:
    """Parse the CLI polynomial syntax into an exact MultiPoly."""
    parser = _Parser(_tokenize(text), variables)
    result = parser.expr()
    tail = parser.peek()
    if tail.kind != "end":
        raise PolyParseError("trailing input", tail.pos)
    return result
