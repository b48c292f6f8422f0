"""Sylvester resultants of multivariate polynomials.

Used to locate candidate atypical values at infinity: the finite limits of f
along the branches at infinity of the Milnor set {x f_x + y f_y = 0} are
roots of leading coefficients of the eliminants

    Res_x(x f_x + y f_y, f - t)   and   Res_y(x f_x + y f_y, f - t),

which is the classical two-variable bifurcation-candidate recipe.  The
determinant is computed fraction-free (Bareiss) with exact polynomial
division, so everything stays in Q[x, y, t].
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional

from .multipoly import MultiPoly
from .scalars import NEG_INF
from .unipoly import UniPoly


def poly_coeffs_in(p: MultiPoly, var: str) -> List[MultiPoly]:
    """Coefficient list of p as a polynomial in ``var`` (low degree first),
    coefficients in the remaining variables (same variable tuple kept)."""
    i = p.vars.index(var)
    if p.is_zero():
        return []
    deg = max(e[i] for e in p.terms)
    coeffs = [dict() for _ in range(deg + 1)]
    for e, c in p.terms.items():
        rest = list(e)
        rest[i] = 0
        coeffs[e[i]][tuple(rest)] = c
    return [MultiPoly(p.vars, t) for t in coeffs]


def _det_bareiss_poly(rows: List[List[MultiPoly]], vars_) -> MultiPoly:
    n = len(rows)
    if n == 0:
        return MultiPoly.constant(vars_, 1)
    m = [[c for c in r] for r in rows]
    sign = 1
    prev: Optional[MultiPoly] = None
    for k in range(n - 1):
        if m[k][k].is_zero():
            pr = None
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    pr = i
                    break
            if pr is None:
                return MultiPoly.zero(vars_)
            m[k], m[pr] = m[pr], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else num.exact_div(prev)
            m[i][k] = MultiPoly.zero(vars_)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Res_var(p, q); zero when either argument is zero in ``var``-degree."""
    a = poly_coeffs_in(p, var)
    b = poly_coeffs_in(q, var)
    dp, dq = len(a) - 1, len(b) - 1
    if dp < 0 or dq < 0:
        return MultiPoly.zero(p.vars)
    if dp == 0 and dq == 0:
        return MultiPoly.constant(p.vars, 1)
    if dp == 0:
        return a[0] ** dq
    if dq == 0:
        return b[0] ** dp
    n = dp + dq
    zero = MultiPoly.zero(p.vars)
    rows = []
    for i in range(dq):
        row = [zero] * n
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(dp):
        row = [zero] * n
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return _det_bareiss_poly(rows, p.vars)


def to_unipoly(p: MultiPoly, var: str) -> UniPoly:
    """Convert a polynomial supported in a single variable."""
    i = p.vars.index(var)
    if p.is_zero():
        return UniPoly((), var)
    deg = max(e[i] for e in p.terms)
    coeffs = [Fraction(0)] * (deg + 1)
    for e, c in p.terms.items():
        if any(x != 0 for j, x in enumerate(e) if j != i):
            raise ValueError(f"polynomial involves more than {var}")
        coeffs[e[i]] = c
    return UniPoly(coeffs, var)


def atypical_candidates_at_infinity(f: MultiPoly) -> List[UniPoly]:
    """Irreducible candidate polynomials for atypical values at infinity.

    Roots of the returned polynomials contain every finite limit of f along
    a branch at infinity of the Milnor set x f_x + y f_y = 0; every true
    atypical non-critical value is such a limit.
    """
    from .unifactor import factor_rational

    x, y = f.vars
    vars3 = (x, y, "t")
    f3 = MultiPoly(vars3, {(e[0], e[1], 0): c for e, c in f.terms.items()})
    tpoly = MultiPoly.variable(vars3, "t")
    fx = f3.partial(x)
    fy = f3.partial(y)
    milnor = MultiPoly.variable(vars3, x) * fx + MultiPoly.variable(vars3, y) * fy
    out = {}
    for var, other in ((x, y), (y, x)):
        res = resultant(milnor, f3 - tpoly, var)
        if res.is_zero():
            continue
        # leading coefficient with respect to the surviving affine variable
        coeffs = poly_coeffs_in(res, other)
        lead = coeffs[-1]
        if lead.is_zero():
            continue
        try:
            lead_t = to_unipoly(lead, "t")
        except ValueError:
            # the leading coefficient still involves the affine variable;
            # taking its content in t keeps every t-root candidate
            lead_t = _content_in_t(lead)
        if lead_t.degree() is NEG_INF or lead_t.degree() == 0:
            continue
        for fac, _ in factor_rational(lead_t):
            if fac.degree() >= 1:
                out[tuple(fac.coeffs)] = fac
    return sorted(out.values(), key=lambda p: (p.degree(), tuple(p.coeffs)))


def _content_in_t(p: MultiPoly) -> UniPoly:
    """gcd over Q[t] of the coefficients of p w.r.t. the affine variables."""
    i = p.vars.index("t")
    buckets = {}
    for e, c in p.terms.items():
        rest = tuple(v for j, v in enumerate(e) if j != i)
        buckets.setdefault(rest, {})[e[i]] = c
    g = UniPoly((), "t")
    for terms in buckets.values():
        deg = max(terms)
        u = UniPoly([terms.get(k, Fraction(0)) for k in range(deg + 1)], "t")
        g = u if g.is_zero() else g.gcd_monic(u)
        if g.degree() == 0:
            break
    return g
