"""Buchberger's algorithm over Q and critical-point analysis of f: A^2 -> A^1.

The monomial order is graded reverse lexicographic throughout.  The main
consumers are ``milnor_algebra`` (standard monomial basis of
Q[x,y]/(f_x, f_y) plus the multiplication-by-f matrix) and
``critical_spectrum`` (critical values as the factored characteristic
polynomial of that matrix, with algebraic multiplicities giving the local
Milnor number totals per fiber).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .linalg import Matrix, charpoly
from .multipoly import MultiPoly
from .scalars import NEG_INF
from .truncation import NonIsolatedSingularities
from .unifactor import factor_rational
from .unipoly import UniPoly

Exponent = Tuple[int, ...]


def grevlex_key(e: Exponent):
    # graded reverse lexicographic: higher degree first, then the monomial
    # with the smaller last exponent wins within a degree
    return (sum(e), tuple(-x for x in reversed(e)))


def leading_term(p: MultiPoly) -> Tuple[Exponent, Fraction]:
    if p.is_zero():
        raise ValueError("zero polynomial has no leading term")
    e = max(p.terms, key=grevlex_key)
    return e, p.terms[e]


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _exp_sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def _exp_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def reduce_mod(p: MultiPoly, basis: List[MultiPoly]) -> MultiPoly:
    """Full normal form of p modulo a list of nonzero polynomials."""
    if not basis:
        return p
    lts = [leading_term(g) for g in basis]
    rem_terms: Dict[Exponent, Fraction] = {}
    work = p
    while not work.is_zero():
        e, c = leading_term(work)
        for (ge, gc), g in zip(lts, basis):
            if _divides(ge, e):
                shift = _exp_sub(e, ge)
                factor = MultiPoly.monomial(p.vars, shift, c / gc)
                work = work - factor * g
                break
        else:
            rem_terms[e] = c
            work = work - MultiPoly.monomial(p.vars, e, c)
    return MultiPoly(p.vars, rem_terms)


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis, graded reverse lexicographic order."""

    generators: List[MultiPoly]
    basis: List[MultiPoly]

    def reduce(self, p: MultiPoly) -> MultiPoly:
        return reduce_mod(p, self.basis)

    def leading_exponents(self) -> List[Exponent]:
        return [leading_term(g)[0] for g in self.basis]


def _spoly(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    fe, fc = leading_term(f)
    ge, gc = leading_term(g)
    l = _exp_lcm(fe, ge)
    mf = MultiPoly.monomial(f.vars, _exp_sub(l, fe), Fraction(1) / fc)
    mg = MultiPoly.monomial(g.vars, _exp_sub(l, ge), Fraction(1) / gc)
    return mf * f - mg * g


def buchberger(generators: List[MultiPoly]) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return GroebnerBasis(list(generators), [])
    vars_ = gens[0].vars
    basis = [g.scale(1 / leading_term(g)[1]) for g in gens]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    while pairs:
        # deterministic normal strategy: smallest lcm degree first
        pairs.sort(key=lambda ij: grevlex_key(
            _exp_lcm(leading_term(basis[ij[0]])[0],
                     leading_term(basis[ij[1]])[0])))
        i, j = pairs.pop(0)
        fi, fj = basis[i], basis[j]
        ei, ej = leading_term(fi)[0], leading_term(fj)[0]
        lcm = _exp_lcm(ei, ej)
        # product criterion
        if lcm == tuple(a + b for a, b in zip(ei, ej)):
            continue
        rem = reduce_mod(_spoly(fi, fj), basis)
        if not rem.is_zero():
            rem = rem.scale(1 / leading_term(rem)[1])
            basis.append(rem)
            pairs.extend((len(basis) - 1, k) for k in range(len(basis) - 1))
    # interreduce to the unique reduced basis
    reduced: List[MultiPoly] = []
    lts = [leading_term(g)[0] for g in basis]
    for i, g in enumerate(basis):
        if any(j != i and _divides(lts[j], lts[i]) and
               (not _divides(lts[i], lts[j]) or j < i) for j in range(len(basis))):
            continue
        reduced.append(g)
    final = []
    for i, g in enumerate(reduced):
        others = [h for j, h in enumerate(reduced) if j != i]
        r = reduce_mod(g, others) if others else g
        if not r.is_zero():
            final.append(r.scale(1 / leading_term(r)[1]))
    final.sort(key=lambda g: grevlex_key(leading_term(g)[0]))
    return GroebnerBasis(list(generators), final)


@dataclass
class QuotientAlgebra:
    """Q[x,y]/J_f with its monomial basis and multiplication-by-f matrix."""

    f: MultiPoly
    groebner: GroebnerBasis
    basis: List[Exponent]
    mult_f: Matrix

    @property
    def milnor_number(self) -> int:
        return len(self.basis)


def standard_monomials(gb: GroebnerBasis, nvars: int = 2) -> List[Exponent]:
    """Monomials not divisible by any leading term; raises if infinite."""
    lts = gb.leading_exponents()
    if not lts:
        raise NonIsolatedSingularities("jacobian ideal is zero")
    # finite iff some pure power of each variable appears among leading terms
    bounds = []
    for v in range(nvars):
        pure = [e[v] for e in lts if all(x == 0 for i, x in enumerate(e) if i != v)]
        if not pure:
            raise NonIsolatedSingularities(
                "no pure power of a variable leads the jacobian ideal")
        bounds.append(min(pure))
    out = []
    for a in range(bounds[0]):
        for b in range(bounds[1]):
            e = (a, b)
            if not any(_divides(lt, e) for lt in lts):
                out.append(e)
    out.sort(key=grevlex_key)
    return out


def milnor_algebra(f: MultiPoly) -> QuotientAlgebra:
    """Milnor algebra of f; raises NonIsolatedSingularities when infinite."""
    x, y = f.vars
    fx, fy = f.partial(x), f.partial(y)
    if fx.is_zero() and fy.is_zero():
        raise NonIsolatedSingularities("f is constant")
    gb = buchberger([fx, fy])
    if not gb.basis:
        raise NonIsolatedSingularities("jacobian ideal is zero")
    if gb.basis[0].total_degree() == 0:
        # unit ideal: no critical points at all
        return QuotientAlgebra(f, gb, [], Matrix([], ncols=0))
    basis = standard_monomials(gb)
    index = {e: i for i, e in enumerate(basis)}
    cols = []
    for e in basis:
        prod = gb.reduce(f * MultiPoly.monomial(f.vars, e))
        col = [Fraction(0)] * len(basis)
        for ee, c in prod.terms.items():
            col[index[ee]] = c
        cols.append(col)
    mat = Matrix([[cols[j][i] for j in range(len(basis))]
                  for i in range(len(basis))], ncols=len(basis))
    return QuotientAlgebra(f, gb, basis, mat)


@dataclass
class SpectrumEntry:
    """One Galois orbit of critical values."""

    minpoly: UniPoly          # irreducible monic over Q
    mu: int                   # local Milnor number total per root

    @property
    def degree(self) -> int:
        return self.minpoly.degree()

    def rational_value(self) -> Optional[Fraction]:
        if self.degree == 1:
            return -self.minpoly.coeffs[0]
        return None


@dataclass
class CriticalSpectrum:
    entries: List[SpectrumEntry]
    mu_total: int

    def contains_value(self, c: Fraction) -> bool:
        return any(e.minpoly.eval(c) == 0 for e in self.entries)

    def charpoly(self) -> UniPoly:
        p = UniPoly((1,))
        for e in self.entries:
            p = p * e.minpoly ** e.mu
        return p


def critical_spectrum(qa: QuotientAlgebra) -> CriticalSpectrum:
    """Critical values of f as eigenvalues of multiplication by f.

    Each irreducible factor of the characteristic polynomial contributes one
    entry; its algebraic multiplicity is the Milnor number total over any of
    the conjugate fibers.
    """
    if qa.milnor_number == 0:
        return CriticalSpectrum([], 0)
    cp = charpoly(qa.mult_f, var="t")
    entries = [SpectrumEntry(p, m) for p, m in factor_rational(cp)]
    entries.sort(key=lambda e: (e.degree, tuple(e.minpoly.coeffs)))
    total = sum(e.mu * e.degree for e in entries)
    assert total == qa.milnor_number
    return CriticalSpectrum(entries, total)
