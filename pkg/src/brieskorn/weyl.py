"""Univariate differential operators and the operator search.

Operators are Sum p_i(t) dt^i in normal form (all t's left of all dt's),
with the commutator dt*t = t*dt + 1.  The inverse derivative enters through
the finite expansion

    dt^(-n) q(t) = Sum_l (-1)^l C(n-1+l, l) q^(l)(t) dt^(-n-l),

which terminates because q is a polynomial.  The annihilator search looks
for P = Sum p_i dt^i, deg p_i <= L, such that dt^(-k) P applied to a module
class lands in the relation span; every candidate membership is an exact
reduction against the truncated relation echelon, plateau-gated like any
other truncation query.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Dict, List, Optional, Tuple

from .linalg import Matrix, kernel_basis
from .multipoly import MultiPoly
from .scalars import NEG_INF, NFElt, is_zero
from .truncation import ModuleAnalyzer, inverse_dt_poly
from .unifactor import factor_rational
from .unipoly import UniPoly


class DiffOperator:
    """Sum p_i(t) dt^i with p_order nonzero (zero operator: empty list)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, UniPoly) else UniPoly((c,)) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("DiffOperator is immutable")

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((UniPoly((1,)),))

    @classmethod
    def dt(cls, n: int = 1):
        return cls([UniPoly(())] * n + [UniPoly((1,))])

    @classmethod
    def t(cls):
        return cls((UniPoly((0, 1)),))

    def is_zero(self) -> bool:
        return not self.coeffs

    def order(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __getitem__(self, i: int) -> UniPoly:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else UniPoly(())

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOperator([self[i] + other[i] for i in range(n)])

    def __neg__(self):
        return DiffOperator([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DiffOperator":
        return DiffOperator([p * c for p in self.coeffs])

    def scale_poly(self, q: UniPoly) -> "DiffOperator":
        return DiffOperator([p * q for p in self.coeffs])

    def normalized(self) -> "DiffOperator":
        """Primitive integer coefficients, positive leading coefficient."""
        if self.is_zero():
            return self
        den = 1
        for p in self.coeffs:
            for c in p.coeffs:
                den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for p in self.coeffs:
            for c in p.coeffs:
                num = gcd(num, int(c * den))
        if num == 0:
            num = 1
        if self.coeffs[-1].lead() < 0:
            num = -num
        factor = Fraction(den, num)
        return self.scale(factor)

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            p = self.coeffs[i]
            if p.is_zero():
                continue
            ps = str(p)
            if len(p.coeffs) > 1 or "/" in ps or ps.startswith("-"):
                ps = f"({ps})"
            if i == 0:
                parts.append(ps)
            elif i == 1:
                parts.append("Dt" if ps == "(1)" or ps == "1" else f"{ps}*Dt")
            else:
                parts.append(f"Dt^{i}" if ps in ("1", "(1)") else f"{ps}*Dt^{i}")
        return " + ".join(parts)


def weyl_mul(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """Product in the Weyl algebra, normal form."""
    if a.is_zero() or b.is_zero():
        return DiffOperator.zero()
    out: Dict[int, UniPoly] = {}
    for i, p in enumerate(a.coeffs):
        if p.is_zero():
            continue
        for j, q in enumerate(b.coeffs):
            if q.is_zero():
                continue
            # dt^i q = Sum_l C(i,l) q^(l) dt^(i-l)
            deriv = q
            for l in range(0, i + 1):
                if deriv.is_zero():
                    break
                term = p * deriv * comb(i, l)
                key = i - l + j
                out[key] = out.get(key, UniPoly(())) + term
                deriv = deriv.derivative()
            else:
                pass
    size = max(out) + 1 if out else 0
    return DiffOperator([out.get(i, UniPoly(())) for i in range(size)])


def dt_pow_times(m: int, q: UniPoly) -> Dict[int, UniPoly]:
    """Normal form of dt^m * q(t) as {power: coefficient}; m may be negative."""
    if q.is_zero():
        return {}
    out: Dict[int, UniPoly] = {}
    if m >= 0:
        deriv = q
        for l in range(m + 1):
            if deriv.is_zero():
                break
            out[m - l] = deriv * comb(m, l)
            deriv = deriv.derivative()
        return out
    n = -m
    deriv = q
    l = 0
    while not deriv.is_zero():
        c = comb(n - 1 + l, l)
        out[m - l] = deriv * (c if l % 2 == 0 else -c)
        deriv = deriv.derivative()
        l += 1
    return out


def laurent_left_dt(m: int, op: Dict[int, UniPoly]) -> Dict[int, UniPoly]:
    """Normal form of dt^m * op for a Laurent operator {power: poly}."""
    out: Dict[int, UniPoly] = {}
    for j, q in op.items():
        for power, coeff in dt_pow_times(m, q).items():
            key = power + j
            out[key] = out.get(key, UniPoly(())) + coeff
    return {k: v for k, v in out.items() if not v.is_zero()}


def inverse_derivative_form(P: DiffOperator) -> Dict[int, UniPoly]:
    """dt^(-order) * P, a Laurent operator supported in powers <= 0."""
    k = P.order()
    op = {i: p for i, p in enumerate(P.coeffs) if not p.is_zero()}
    return laurent_left_dt(-k, op)


# -- annihilator search -------------------------------------------------------


class AnnihilatorNotFound(RuntimeError):
    def __init__(self, bounds):
        super().__init__(f"no annihilating operator within bounds {bounds}")
        self.bounds = bounds


@dataclass
class AnnihilatorResult:
    operator: DiffOperator
    order: int
    coeff_degree: int
    ambient_degree: int
    e_used: int
    plateau: bool


def _falling_factorial(i: int) -> UniPoly:
    # s(s-1)...(s-i+1) in the exponent variable
    p = UniPoly((1,), "s")
    for j in range(i):
        p = p * UniPoly((-j, 1), "s")
    return p


def _apply_inverse_form(qs: Dict[int, UniPoly], f: MultiPoly,
                        w_chain: List[MultiPoly]) -> MultiPoly:
    """Sum over j of q_{-j}(f) * w_j as a polynomial in x, y."""
    acc = MultiPoly.zero(f.vars)
    for power, q in qs.items():
        j = -power
        qf = MultiPoly.zero(f.vars)
        for c in reversed(q.coeffs):
            qf = qf * f + MultiPoly.constant(f.vars, c)
        acc = acc + qf * w_chain[j]
    return acc


def inverse_dt_chain(omega: MultiPoly, f: MultiPoly, depth: int) -> List[MultiPoly]:
    chain = [omega]
    for _ in range(depth):
        chain.append(inverse_dt_poly(chain[-1], f))
    return chain


def annihilator(f: MultiPoly, omega: MultiPoly, analyzer: ModuleAnalyzer,
                max_order: Optional[int] = None,
                max_coeff_degree: Optional[int] = None) -> AnnihilatorResult:
    """Minimal-order operator annihilating the class of omega dx^dy.

    Searches order k = 0..max_order, and for each k the coefficient degree
    bound L = 0..max_coeff_degree; the first solvable grid point wins, with
    the kernel vector chosen canonically (smallest support, then smallest
    primitive height).
    """
    config = analyzer.config
    if max_order is None:
        max_order = config.pf_max_order
    if max_coeff_degree is None:
        max_coeff_degree = config.pf_max_coeff_degree
    deg_f = analyzer.deg_f
    deg_w = omega.total_degree()
    deg_w = 0 if deg_w is NEG_INF else deg_w
    skipped_cap = False

    for k in range(max_order + 1):
        for L in range(max_coeff_degree + 1):
            ambient = deg_w + (k + 2 * L) * deg_f
            if ambient > config.pf_ambient_cap:
                skipped_cap = True
                continue
            result = _search_at(f, omega, analyzer, k, L)
            if result is not None:
                return result
    raise AnnihilatorNotFound({
        "max_order": max_order,
        "max_coeff_degree": max_coeff_degree,
        "ambient_cap_hit": skipped_cap,
    })


def _search_at(f: MultiPoly, omega: MultiPoly, analyzer: ModuleAnalyzer,
               k: int, L: int) -> Optional[AnnihilatorResult]:
    w = analyzer.config.plateau_window
    deg_f = analyzer.deg_f
    chain = inverse_dt_chain(omega, f, k + L)

    # candidate combinations u_{i,l} = (dt^-k t^l dt^i) omega, exact polys
    unknowns: List[Tuple[int, int]] = [(i, l) for i in range(k + 1)
                                       for l in range(L + 1)]
    u_polys = []
    for i, l in unknowns:
        qs = dt_pow_times(-k, UniPoly([0] * l + [1]))
        qs = {power + i: coeff for power, coeff in qs.items()}
        u_polys.append(_apply_inverse_form(qs, f, chain))

    max_deg = max((p.total_degree() for p in u_polys if not p.is_zero()),
                  default=0)
    if max_deg is NEG_INF:
        max_deg = 0
    e = max(analyzer.trunc.gen_degree, max_deg - deg_f + 2, 1)
    analyzer.ensure_generators(e)
    residuals = [analyzer.normal_form(p) for p in u_polys]
    stable = 0
    e_cap = max(max_deg + deg_f + analyzer.config.cap_slack, e + w + 1)
    while stable < w and e < e_cap:
        e += 1
        analyzer.ensure_generators(e)
        cur = [analyzer.normal_form(p) for p in u_polys]
        stable = stable + 1 if cur == residuals else 0
        residuals = cur

    support = sorted({c for r in residuals for c in r})
    if support:
        col_of = {c: i for i, c in enumerate(support)}
        rows = []
        for c in support:
            rows.append([r.get(c, Fraction(0)) for r in residuals])
        ker = kernel_basis(Matrix(rows, ncols=len(unknowns)))
    else:
        ker = kernel_basis(Matrix.zero(1, len(unknowns)))
    if ker.dim == 0:
        return None

    best = None
    for row in ker.basis.rows:
        supp = tuple(i for i, v in enumerate(row) if not is_zero(v))
        den = 1
        for v in row:
            den = den * v.denominator // gcd(den, v.denominator)
        ints = [int(v * den) for v in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        height = max(abs(v // g) for v in ints if v) if any(ints) else 0
        key = (supp, height, tuple(ints))
        if best is None or key < best[0]:
            best = (key, row)
    sol = best[1]

    coeffs = []
    for i in range(k + 1):
        c = [Fraction(0)] * (L + 1)
        for pos, (ii, ll) in enumerate(unknowns):
            if ii == i:
                c[ll] = sol[pos]
        coeffs.append(UniPoly(c))
    P = DiffOperator(coeffs).normalized()
    if P.is_zero() or P.order() != k:
        # the kernel vector degenerated to a lower order; it would have been
        # found earlier, so treat this grid point as unsolved
        return None
    return AnnihilatorResult(P, k, L, max_deg, e, stable >= w)


def annihilation_check(P: DiffOperator, f: MultiPoly, omega: MultiPoly,
                       analyzer: ModuleAnalyzer, extra_window: int = 2) -> bool:
    """Independent re-verification: rewrite dt^(-k) P as an inverse-derivative
    combination, apply it to omega and test exact membership in the relation
    span (with a widened generator bound)."""
    qs = inverse_derivative_form(P)
    depth = max((-p for p in qs), default=0)
    chain = inverse_dt_chain(omega, f, depth)
    combo = _apply_inverse_form(qs, f, chain)
    if combo.is_zero():
        return True
    deg = combo.total_degree()
    analyzer.ensure_generators(deg - analyzer.deg_f + 2 +
                               analyzer.config.cap_slack + extra_window)
    return analyzer.trunc.contains_poly(combo)


# -- indicial data ------------------------------------------------------------


@dataclass
class IndicialData:
    """Exponent data of an operator at one point."""

    location: object          # Fraction, NFElt, or the string "infinity"
    polynomial: UniPoly       # in the exponent variable s
    rational_roots: List[Tuple[Fraction, int]]
    irrational_factors: List[Tuple[UniPoly, int]]
    degenerate: bool          # degree < order: not a regular singular point


def indicial(P: DiffOperator, location) -> IndicialData:
    """Indicial polynomial at a finite point or at infinity.

    At a finite c the local parameter is u = t - c and the polynomial is the
    coefficient of the lowest u-shift of P acting on u^s; its roots are the
    exponents of formal solutions u^s(1 + O(u)).  At infinity the roots are
    the exponents s of formal solutions t^s(1 + O(1/t)).
    """
    if P.is_zero():
        raise ValueError("indicial data of the zero operator")
    k = P.order()
    terms: List[Tuple[int, int, object]] = []  # (shift m - i, i, coeff)
    if location == "infinity":
        for i, p in enumerate(P.coeffs):
            for m, c in enumerate(p.coeffs):
                if not is_zero(c):
                    terms.append((m - i, i, c))
        best = max(s for s, _, _ in terms)
    else:
        c0 = location
        for i, p in enumerate(P.coeffs):
            shifted = p.compose_shift(c0)
            for m, c in enumerate(shifted.coeffs):
                if not is_zero(c):
                    terms.append((m - i, i, c))
        best = min(s for s, _, _ in terms)
    b = UniPoly((), "s")
    for s, i, c in terms:
        if s == best:
            b = b + _falling_factorial(i) * c
    rational_roots: List[Tuple[Fraction, int]] = []
    irrational: List[Tuple[UniPoly, int]] = []
    if all(isinstance(c, Fraction) for c in b.coeffs):
        for fac, mult in factor_rational(b):
            if fac.degree() == 1:
                rational_roots.append((-fac.coeffs[0], mult))
            else:
                irrational.append((fac, mult))
        rational_roots.sort()
    degenerate = b.degree() < k
    return IndicialData(location, b, rational_roots, irrational, degenerate)


def finite_singular_points(P: DiffOperator) -> List[Tuple[UniPoly, int]]:
    """Irreducible factors of the leading coefficient (candidate singular
    locations in the finite plane)."""
    if P.is_zero():
        raise ValueError("zero operator")
    lead = P.coeffs[-1]
    if lead.degree() == 0:
        return []
    return factor_rational(lead)


# -- equivalence --------------------------------------------------------------


def right_pseudo_rem(P: DiffOperator, Q: DiffOperator) -> DiffOperator:
    """Remainder of right division of P by Q over rational functions of t,
    computed fraction-free (the remainder is zero iff Q right-divides P)."""
    if Q.is_zero():
        raise ZeroDivisionError("right division by the zero operator")
    R = P
    while not R.is_zero() and R.order() >= Q.order():
        n = R.order() - Q.order()
        q_top = Q.coeffs[-1]
        r_top = R.coeffs[-1]
        shifted = weyl_mul(DiffOperator([UniPoly(())] * n + [r_top]), Q)
        R = R.scale_poly(q_top) - shifted
    return R


def operator_equiv(P: DiffOperator, Q: DiffOperator) -> bool:
    """True when each operator right-divides the other: same order and
    proportional over rational functions of t."""
    if P.is_zero() or Q.is_zero():
        raise ValueError("equivalence of zero operators is undefined")
    if P.order() != Q.order():
        return False
    return right_pseudo_rem(P, Q).is_zero() and \
        right_pseudo_rem(Q, P).is_zero()


def parse_operator(text: str) -> DiffOperator:
    """Parse the report syntax: polynomial coefficients in t times Dt^i."""
    from .multipoly import parse_polynomial

    p = parse_polynomial(text, ("t", "Dt"))
    coeffs: Dict[int, UniPoly] = {}
    for (et, ed), c in p.terms.items():
        cur = coeffs.get(ed, UniPoly(()))
        coeffs[ed] = cur + UniPoly([0] * et + [c])
    size = max(coeffs) + 1 if coeffs else 0
    return DiffOperator([coeffs.get(i, UniPoly(())) for i in range(size)])


def operator_to_text(P: DiffOperator) -> str:
    return repr(P)
