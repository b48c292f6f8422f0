"""Degree-truncated models of the algebraic Brieskorn module of f: A^2 -> A^1.

The module under study is Q[x,y] modulo the span of all Jacobians J(f, g)
(each polynomial standing for the coefficient of dx^dy), with t acting as
multiplication by f.  Nothing here is an ideal quotient: the relation space
is only a linear span, so every dimension is computed from an incremental
row echelon over exactly indexed monomials.

Monomial indexing (two variables, degree-compatible):

    index(x^a y^b) = T(a+b) + b,   T(d) = d(d+1)/2

so indices increase with total degree and, within a degree, with the y
exponent.  A row whose leading (largest) column has degree k is supported
entirely in degrees <= k; hence for every cutoff d the echelon rows with
pivot degree <= d form a basis of  span ∩ {degree <= d}.  That one fact
turns all truncation queries into pivot counting.

Truncated quantities carry plateau flags: a dimension is trusted once it is
unchanged over a window of consecutive generator-degree increments and
agrees across the ambient-degree schedule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, List, Optional, Tuple

from .echelon import FieldEchelon, IntEchelon
from .multipoly import MultiPoly, jacobian2
from .scalars import NEG_INF, NFElt
from .unipoly import UniPoly


class NonIsolatedSingularities(ValueError):
    """The Jacobian ideal of f is not zero-dimensional."""


class ConstantMap(ValueError):
    """f is constant; the fibration is degenerate."""


class TruncationOverflow(ValueError):
    """An operation would leave the ambient degree bound."""


# -- monomial indexing -------------------------------------------------------

def mono_index(a: int, b: int) -> int:
    d = a + b
    return d * (d + 1) // 2 + b


def mono_unrank(idx: int) -> Tuple[int, int]:
    # largest d with d(d+1)/2 <= idx
    d = (isqrt(8 * idx + 1) - 1) // 2
    b = idx - d * (d + 1) // 2
    return d - b, b


def cutoff_index(d: int) -> int:
    """Largest monomial index of total degree <= d."""
    return (d + 1) * (d + 2) // 2 - 1


def n_monomials_upto(d: int) -> int:
    return (d + 1) * (d + 2) // 2 if d >= 0 else 0


def monomials_upto(d: int):
    for idx in range(n_monomials_upto(d)):
        yield mono_unrank(idx)


def poly_to_Zrow(p: MultiPoly) -> Tuple[List[int], List[int]]:
    """Clear denominators and sort terms by monomial index (ascending).

    The clearing factor is dropped: rows are used for span computations,
    which scaling does not affect.  Use ``poly_to_Zrow_with_den`` when the
    exact linear image matters.
    """
    cols, vals, _ = poly_to_Zrow_with_den(p)
    return cols, vals


def poly_to_Zrow_with_den(p: MultiPoly) -> Tuple[List[int], List[int], int]:
    if p.is_zero():
        return [], [], 1
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    items = sorted((mono_index(e[0], e[1]), c) for e, c in p.terms.items())
    cols = [i for i, _ in items]
    vals = [int(c * den) for _, c in items]
    return cols, vals, den


def Zrow_to_poly(cols, vals, variables=("x", "y")) -> MultiPoly:
    terms = {}
    for i, v in zip(cols, vals):
        a, b = mono_unrank(i)
        terms[(a, b)] = Fraction(v)
    return MultiPoly(variables, terms)


def poly_to_field_row(p: MultiPoly):
    items = sorted(((mono_index(e[0], e[1]), c) for e, c in p.terms.items()))
    return [i for i, _ in items], [c for _, c in items]


# -- configuration -----------------------------------------------------------

@dataclass
class EngineConfig:
    plateau_window: int = 3
    d_start_mult: int = 2
    d_max_mult: int = 6
    cap_slack: int = 10
    seed: int = 0
    pf_max_order: int = 4
    pf_max_coeff_degree: int = 4
    pf_ambient_cap: int = 60
    max_rows: int = 200_000
    absolute_d_max: Optional[int] = None

    def d_schedule(self, deg_f: int) -> List[int]:
        d = max(1, self.d_start_mult * deg_f)
        dmax = max(d, self.d_max_mult * deg_f)
        if self.absolute_d_max is not None:
            dmax = max(d, self.absolute_d_max)
        out = [d]
        while out[-1] < dmax:
            out.append(min(2 * out[-1], dmax))
        return out


@dataclass
class PlateauResult:
    value: int
    stable_e: bool
    stable_d: bool
    d_used: int
    e_used: int

    @property
    def plateau(self) -> bool:
        return self.stable_e and self.stable_d


# -- the shared truncation ---------------------------------------------------

class BrieskornTruncation:
    """Relation span of f with incrementally growing generator degree.

    ``gen_degree`` is the current bound e: all rows J(f, x^a y^b) with
    a+b <= e have been echelonized.  Raw generator rows are cached per degree
    so that per-value overlays can replay them.
    """

    def __init__(self, f: MultiPoly, config: Optional[EngineConfig] = None):
        if f.total_degree() is NEG_INF or f.total_degree() == 0:
            raise ConstantMap("f must be non-constant")
        if len(f.vars) != 2:
            raise ValueError("the engine works with exactly two variables")
        self.f = f
        self.deg_f = f.total_degree()
        self.config = config or EngineConfig()
        self.echelon = IntEchelon()
        self.gen_degree = 0
        self._gen_rows: Dict[int, List[Tuple[List[int], List[int]]]] = {}
        self._x, self._y = f.vars

    def _jacobian_rows(self, gdeg: int) -> List[Tuple[List[int], List[int]]]:
        rows = self._gen_rows.get(gdeg)
        if rows is None:
            rows = []
            for b in range(gdeg + 1):
                a = gdeg - b
                g = MultiPoly.monomial(self.f.vars, (a, b))
                rows.append(poly_to_Zrow(jacobian2(self.f, g)))
            self._gen_rows[gdeg] = rows
        return rows

    def extend_to(self, e: int) -> None:
        while self.gen_degree < e:
            self.gen_degree += 1
            for cols, vals in self._jacobian_rows(self.gen_degree):
                if cols:
                    self.echelon.insert(list(cols), list(vals))
            if len(self.echelon) > self.config.max_rows:
                raise ResourceBoundExceeded(
                    f"echelon exceeded {self.config.max_rows} rows")

    def relation_dim(self, d: int) -> int:
        return self.echelon.count_pivots_upto(cutoff_index(d))

    def relation_rows(self, d: int):
        return self.echelon.rows_upto(cutoff_index(d))

    def reduce_poly(self, p: MultiPoly):
        """Normal form of p against the relation echelon.

        Returns (cols, vals, scale) with vals/scale the exact linear image.
        """
        cols, vals, den = poly_to_Zrow_with_den(p)
        rcols, rvals, scale = self.echelon.reduce_with_scale(cols, vals)
        return rcols, rvals, scale * den

    def contains_poly(self, p: MultiPoly) -> bool:
        cols, vals = poly_to_Zrow(p)
        return self.echelon.contains(cols, vals)


class ResourceBoundExceeded(RuntimeError):
    """A configured hard limit was hit before any plateau."""


class ValueOverlay:
    """Echelon of  span{J(f,g)} + q(f)*span{monomials}  for one value.

    q is (t - c) for a rational value c, or the minimal polynomial of an
    algebraic value; q(f) multiples are inserted alongside the Jacobian
    generators so that high-degree multipliers can cancel down into low
    degrees (this is exactly the reach-down that non-tame values exhibit).
    """

    def __init__(self, trunc: BrieskornTruncation, qf: MultiPoly):
        self.trunc = trunc
        self.qf = qf
        self.echelon = IntEchelon()
        self.gen_degree = -1
        self._qf_row = poly_to_Zrow(qf)

    def _mult_row(self, a: int, b: int):
        cols, vals = self._qf_row
        shifted = [0] * len(cols)
        for k, ci in enumerate(cols):
            ea, eb = mono_unrank(ci)
            shifted[k] = mono_index(ea + a, eb + b)
        return shifted, list(vals)

    def extend_to(self, e: int) -> None:
        self.trunc.extend_to(e)
        while self.gen_degree < e:
            self.gen_degree += 1
            if self.gen_degree > 0:
                for cols, vals in self.trunc._jacobian_rows(self.gen_degree):
                    if cols:
                        self.echelon.insert(list(cols), list(vals))
            for b in range(self.gen_degree + 1):
                a = self.gen_degree - b
                cols, vals = self._mult_row(a, b)
                if cols:
                    self.echelon.insert(cols, vals)

    def coker_dim(self, d: int) -> int:
        return n_monomials_upto(d) - self.echelon.count_pivots_upto(cutoff_index(d))


# -- fixed-parameter operations (the raw recipe steps) -----------------------

def relation_space(f: MultiPoly, d: int, e: int,
                   config: Optional[EngineConfig] = None):
    """Echelonized basis of span{J(f,g) : deg g <= e} ∩ {deg <= d}."""
    trunc = BrieskornTruncation(f, config)
    trunc.extend_to(e)
    return trunc.relation_rows(d)


def _value_in_f(f: MultiPoly, q: UniPoly) -> MultiPoly:
    """q(f) as a polynomial in x, y (q over Q)."""
    acc = MultiPoly.zero(f.vars)
    for c in reversed(q.coeffs):
        acc = acc * f + MultiPoly.constant(f.vars, c)
    return acc


def _q_for_value(c) -> UniPoly:
    if isinstance(c, UniPoly):
        return c
    return UniPoly((-c, 1))


def coker_dim_t_minus_c(f: MultiPoly, c, d: int, e: int,
                        config: Optional[EngineConfig] = None) -> int:
    """dim {deg<=d} / ({deg<=d} ∩ (q(f)*{deg<=e} + relations(e))).

    ``c`` is a rational value (q = t - c) or a UniPoly minimal polynomial q;
    in the latter case the result counts over Q, i.e. it is deg(q) times the
    per-root dimension.
    """
    trunc = BrieskornTruncation(f, config)
    overlay = ValueOverlay(trunc, _value_in_f(f, _q_for_value(c)))
    overlay.extend_to(e)
    return overlay.coker_dim(d)


def ker_dims_fixed(trunc: BrieskornTruncation, qf: MultiPoly, d: int,
                   qrow_cache: Optional[dict] = None) -> int:
    """dim of {g : deg g <= d, q(f)g ∈ relations} modulo relations ∩ {<=d}.

    Uses the current generator degree of ``trunc``; two rank computations,
    no kernel bases.
    """
    n_d = n_monomials_upto(d)
    scratch = IntEchelon()
    rank_all = 0
    for idx in range(n_d):
        row = None
        if qrow_cache is not None:
            row = qrow_cache.get(idx)
        if row is None:
            a, b = mono_unrank(idx)
            g = MultiPoly.monomial(trunc.f.vars, (a, b))
            row = poly_to_Zrow(qf * g)
            if qrow_cache is not None:
                qrow_cache[idx] = row
        cols, vals, _ = trunc.echelon.reduce_with_scale(list(row[0]), list(row[1]))
        if cols and scratch.insert(cols, vals):
            rank_all += 1
    dim_K = n_d - rank_all

    rel_rows = trunc.relation_rows(d)
    dim_R = len(rel_rows)
    scratch2 = IntEchelon()
    rank_R = 0
    for cols, vals in rel_rows:
        rho = Zrow_to_poly(cols, vals, trunc.f.vars)
        rcols, rvals = poly_to_Zrow(qf * rho)
        rcols, rvals, _ = trunc.echelon.reduce_with_scale(rcols, rvals)
        if rcols and scratch2.insert(rcols, rvals):
            rank_R += 1
    dim_K_cap_R = dim_R - rank_R
    return dim_K - dim_K_cap_R


def ker_dim_t_minus_c(f: MultiPoly, c, d: int, e: int,
                      config: Optional[EngineConfig] = None) -> int:
    trunc = BrieskornTruncation(f, config)
    trunc.extend_to(e)
    return ker_dims_fixed(trunc, _value_in_f(f, _q_for_value(c)), d)


# -- module elements and the inverse t-derivative ----------------------------

@dataclass(frozen=True)
class ModuleElement:
    """A polynomial standing for (poly) dx^dy inside a truncation."""

    poly: MultiPoly
    ambient_degree: int

    def __post_init__(self):
        if self.poly.total_degree() is not NEG_INF and \
                self.poly.total_degree() > self.ambient_degree:
            raise TruncationOverflow("element degree exceeds the ambient bound")


def inverse_dt_poly(g: MultiPoly, f: MultiPoly) -> MultiPoly:
    """Canonical representative of the inverse t-derivative of [g dx^dy].

    Uses the primitive (A, B) = (0, integral of g in x), which turns
    df ^ (A dx + B dy) into f_x * B.
    """
    x = f.vars[0]
    return f.partial(x) * g.integrate(x)


def inverse_dt(elem: ModuleElement, f: MultiPoly) -> ModuleElement:
    result = inverse_dt_poly(elem.poly, f)
    deg = result.total_degree()
    if deg is not NEG_INF and deg > elem.ambient_degree:
        raise TruncationOverflow(
            f"inverse_dt image has degree {deg} > ambient {elem.ambient_degree}")
    return ModuleElement(result, elem.ambient_degree)


def inverse_dt_alternative(g: MultiPoly, f: MultiPoly) -> MultiPoly:
    """Second antiderivative choice (A, B) = (-integral of g in y, 0)."""
    y = f.vars[1]
    return f.partial(y) * g.integrate(y)


# -- the df ^ Omega^1 submodule ----------------------------------------------

class GMinusOneSpace:
    """Truncated span of {f_x*m, f_y*m : deg m <= e}; contains the relations."""

    def __init__(self, f: MultiPoly, d: int, e: int):
        self.f = f
        self.d = d
        self.e = e
        self.echelon = IntEchelon()
        fx, fy = f.partial(f.vars[0]), f.partial(f.vars[1])
        for gdeg in range(e + 1):
            for b in range(gdeg + 1):
                a = gdeg - b
                m = MultiPoly.monomial(f.vars, (a, b))
                for gen in (fx * m, fy * m):
                    cols, vals = poly_to_Zrow(gen)
                    if cols:
                        self.echelon.insert(cols, vals)

    def dim(self) -> int:
        return self.echelon.count_pivots_upto(cutoff_index(self.d))

    def rows(self):
        return self.echelon.rows_upto(cutoff_index(self.d))

    def contains_poly(self, p: MultiPoly) -> bool:
        cols, vals = poly_to_Zrow(p)
        return self.echelon.contains(cols, vals)

    def quotient_dim_by_relations(self,
                                  config: Optional[EngineConfig] = None) -> int:
        """dim of (this space) / (relation span) at the same truncation."""
        trunc = BrieskornTruncation(self.f, config)
        trunc.extend_to(self.e)
        return self.dim() - trunc.relation_dim(self.d)

    def coker_dim(self, c, config: Optional[EngineConfig] = None) -> int:
        """dim of W / (q(f)W + relations) at this truncation, W = this span."""
        qf = _value_in_f(self.f, _q_for_value(c))
        trunc = BrieskornTruncation(self.f, config)
        trunc.extend_to(self.e)
        denom = IntEchelon()
        for cols, vals in trunc.echelon.pivots.values():
            denom.insert(list(cols), list(vals))
        fx, fy = self.f.partial(self.f.vars[0]), self.f.partial(self.f.vars[1])
        for gdeg in range(self.e + 1):
            for b in range(gdeg + 1):
                a = gdeg - b
                m = MultiPoly.monomial(self.f.vars, (a, b))
                for gen in (fx * m, fy * m):
                    cols, vals = poly_to_Zrow(qf * gen)
                    if cols:
                        denom.insert(cols, vals)
        return self.dim() - denom.count_pivots_upto(cutoff_index(self.d))


def g_minus_one_space(f: MultiPoly, d: int, e: int) -> GMinusOneSpace:
    return GMinusOneSpace(f, d, e)


# -- plateau-gated analysis ---------------------------------------------------

@dataclass
class ValueDims:
    """Stabilized cokernel/kernel dimensions of (t - c) for one value."""

    coker: int
    ker: int
    plateau: bool
    d_used: int
    e_used: int


class ModuleAnalyzer:
    """Shared truncation plus per-value overlays with plateau gating.

    All values queried through one analyzer share the Jacobian echelon; each
    value keeps one overlay whose degree cutoffs serve the whole ambient
    schedule.
    """

    def __init__(self, f: MultiPoly, config: Optional[EngineConfig] = None):
        self.config = config or EngineConfig()
        self.trunc = BrieskornTruncation(f, self.config)
        self.f = f
        self.deg_f = self.trunc.deg_f
        self._overlays: Dict[object, ValueOverlay] = {}
        self._qf: Dict[object, MultiPoly] = {}
        self._qrow_caches: Dict[object, dict] = {}

    def _key(self, c):
        if isinstance(c, UniPoly):
            return ("alg", c.coeffs)
        return ("rat", Fraction(c))

    def _overlay(self, c) -> ValueOverlay:
        key = self._key(c)
        ov = self._overlays.get(key)
        if ov is None:
            qf = _value_in_f(self.f, _q_for_value(c))
            ov = ValueOverlay(self.trunc, qf)
            self._overlays[key] = ov
            self._qf[key] = qf
            self._qrow_caches[key] = {}
        return ov

    def value_dims_at(self, c, d: int) -> Tuple[PlateauResult, PlateauResult]:
        """(coker, ker) at cutoff d, each stabilized over the e sweep."""
        w = self.config.plateau_window
        ov = self._overlay(c)
        key = self._key(c)

        e = max(ov.gen_degree, 1, d - self.deg_f + 2)
        # the confirmation window is always granted, even when earlier
        # queries already pushed the generator degree past the soft cap
        e_cap = max(d + self.deg_f + self.config.cap_slack, e + w + 1)
        ov.extend_to(e)
        prev = ov.coker_dim(d)
        stable = 0
        while stable < w and e < e_cap:
            e += 1
            ov.extend_to(e)
            cur = ov.coker_dim(d)
            stable = stable + 1 if cur == prev else 0
            prev = cur
        coker = PlateauResult(prev, stable >= w, True, d, e)

        kprev = ker_dims_fixed(self.trunc, self._qf[key], d,
                               self._qrow_caches[key])
        kstable = 0
        k_cap = max(e_cap, e + w + 1)
        while kstable < w and e < k_cap:
            e += 1
            ov.extend_to(e)
            kcur = ker_dims_fixed(self.trunc, self._qf[key], d,
                                  self._qrow_caches[key])
            kstable = kstable + 1 if kcur == kprev else 0
            kprev = kcur
            if ov.coker_dim(d) != coker.value:
                coker = PlateauResult(ov.coker_dim(d), False, True, d, e)
        ker = PlateauResult(kprev, kstable >= w, True, d, e)
        return coker, ker

    def value_dims(self, c) -> ValueDims:
        """Run the ambient schedule until consecutive cutoffs agree."""
        degree = _q_for_value(c).degree() if isinstance(c, UniPoly) else 1
        schedule = self.config.d_schedule(self.deg_f)
        prev_pair = None
        stable_d = False
        results = None
        d_used = e_used = 0
        for d in schedule:
            coker, ker = self.value_dims_at(c, d)
            pair = (coker.value, ker.value)
            results = (coker, ker)
            d_used, e_used = d, max(coker.e_used, ker.e_used)
            if prev_pair == pair:
                stable_d = True
                break
            prev_pair = pair
        coker, ker = results
        plateau = coker.stable_e and ker.stable_e and stable_d
        cval, kval = coker.value, ker.value
        if degree > 1:
            # conjugate values share all invariants; the rational computation
            # returns the sum over the conjugates
            if cval % degree or kval % degree:
                plateau = False
            cval //= degree
            kval //= degree
        return ValueDims(cval, kval, plateau, d_used, e_used)

    # -- support for the operator search ---------------------------------

    def ensure_generators(self, e: int) -> None:
        self.trunc.extend_to(e)

    def normal_form(self, p: MultiPoly):
        """Exact normal form of p against the relation echelon.

        Returns a dict column -> Fraction; exact linear image of p.
        """
        cols, vals, scale = self.trunc.reduce_poly(p)
        return {c: Fraction(v, scale) for c, v in zip(cols, vals)}
