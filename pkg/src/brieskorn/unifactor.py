"""Univariate factorization over Q and exact real root isolation.

Factorization runs squarefree decomposition (Yun), rational root stripping,
then Zassenhaus for what remains: Berlekamp factorization modulo a good
small prime, Hensel lifting past the Mignotte bound, subset recombination.
Degrees in this engine are small (characteristic polynomials of Milnor
algebras), so the plain deterministic variants are used throughout.

Real roots are isolated with Sturm chains into disjoint rational intervals;
complex roots get display approximations only (Durand-Kerner with a fixed
deterministic start), used for labeling and never for any exact decision.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import List, Tuple

from .unipoly import UniPoly

# -- integer coefficient helpers (dense lists, low degree first) -------------


def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _add(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                  for i in range(n)])


def _sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                  for i in range(n)])


def _mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _mod_coeffs(a, m):
    return _trim([c % m for c in a])


def _sym(a, m):
    out = []
    for c in a:
        c %= m
        if c > m // 2:
            c -= m
        out.append(c)
    return _trim(out)


def _polydivmod_mod(a, b, p):
    """Division mod p; b need not be monic (leading coeff inverted mod p)."""
    a = _mod_coeffs(list(a), p)
    b = _mod_coeffs(list(b), p)
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, p)
    q = [0] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and _trim(list(r)):
        r = _trim(r)
        if len(r) < len(b):
            break
        shift = len(r) - len(b)
        c = (r[-1] * inv) % p
        if c:
            q[shift] = c
            for i in range(len(b)):
                r[shift + i] = (r[shift + i] - c * b[i]) % p
        r = _trim(r)
        if not r:
            break
    return _trim([c % p for c in q]), _trim(r)


def _gcd_mod(a, b, p):
    a, b = _mod_coeffs(list(a), p), _mod_coeffs(list(b), p)
    while b:
        a, b = b, _polydivmod_mod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = _mod_coeffs([c * inv for c in a], p)
    return a


def _polymulmod(a, b, modpoly, p):
    return _polydivmod_mod(_mul(a, b), modpoly, p)[1]


def _powmod(base, n, modpoly, p):
    result = [1]
    base = _polydivmod_mod(base, modpoly, p)[1]
    while n:
        if n & 1:
            result = _polymulmod(result, base, modpoly, p)
        base = _polymulmod(base, base, modpoly, p)
        n >>= 1
    return result


# -- Berlekamp over F_p -------------------------------------------------------


def _berlekamp(f: List[int], p: int) -> List[List[int]]:
    """Irreducible monic factors of a monic squarefree f over F_p."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    # Frobenius matrix: columns are x^(p*i) mod f
    frob = []
    xp = _powmod([0, 1], p, f, p)
    cur = [1]
    for i in range(n):
        col = cur + [0] * (n - len(cur))
        frob.append(col[:n])
        cur = _polymulmod(cur, xp, f, p)
    # kernel of (frob - I)^T over F_p
    mat = [[(frob[j][i] - (1 if i == j else 0)) % p for j in range(n)]
           for i in range(n)]
    basis = _nullspace_mod(mat, p)
    r = len(basis)
    if r == 1:
        return [f]
    factors = [f]
    for v in basis:
        vpoly = _trim(list(v))
        if len(vpoly) <= 1:
            continue
        new_factors = []
        for g in factors:
            if len(g) - 1 <= 1:
                new_factors.append(g)
                continue
            pieces = []
            rest = g
            for a in range(p):
                if len(rest) - 1 < 1:
                    break
                h = _gcd_mod(rest, _sub(vpoly, [a]), p)
                if 0 < len(h) - 1 < len(rest) - 1:
                    pieces.append(h)
                    rest = _polydivmod_mod(rest, h, p)[0]
            pieces.append(rest)
            new_factors.extend(pc for pc in pieces if len(pc) > 1)
        factors = new_factors
        if len(factors) == r:
            break
    return sorted(factors)


def _nullspace_mod(mat, p):
    n = len(mat)
    m = [row[:] for row in mat]
    pivots = {}
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, n):
            if m[i][c] % p:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(n):
            if i != r and m[i][c] % p:
                fac = m[i][c]
                m[i] = [(a - fac * b) % p for a, b in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
    basis = []
    for c in range(n):
        if c in pivots:
            continue
        v = [0] * n
        v[c] = 1
        for pc, pr in pivots.items():
            v[pc] = (-m[pr][c]) % p
        basis.append(v)
    return basis


# -- Hensel lifting -----------------------------------------------------------


def _eea_mod(a, b, p):
    """s, t with s a + t b = 1 mod p (a, b coprime mod p)."""
    r0, r1 = _mod_coeffs(list(a), p), _mod_coeffs(list(b), p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _polydivmod_mod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _mod_coeffs(_sub(s0, _mul(q, s1)), p)
        t0, t1 = t1, _mod_coeffs(_sub(t0, _mul(q, t1)), p)
    inv = pow(r0[0], -1, p)
    return (_mod_coeffs([c * inv for c in s0], p),
            _mod_coeffs([c * inv for c in t0], p))


def _hensel_pair(f, g, h, s, t, p, q):
    """One quadratic step: from f = g h (mod q) to mod q^2 (q a power of p)."""
    qq = q * q
    e = _sym(_sub(f, _mul(g, h)), qq)
    qpoly, rpoly = _polydivmod_mod(_mul(s, e), h, qq)
    gstar = _sym(_add(_add(g, _mul(t, e)), _mul(qpoly, g)), qq)
    hstar = _sym(_add(h, rpoly), qq)
    b = _sym(_sub(_add(_mul(s, gstar), _mul(t, hstar)), [1]), qq)
    cpoly, dpoly = _polydivmod_mod(_mul(s, b), hstar, qq)
    sstar = _sym(_sub(s, dpoly), qq)
    tstar = _sym(_sub(_sub(t, _mul(t, b)), _mul(cpoly, gstar)), qq)
    return gstar, hstar, sstar, tstar


def _hensel_tree(f, factors, p, target):
    """Lift the factorization f = lc(f) * prod(monic factors) (mod p) to a
    factorization mod p^k >= target.  ``f`` carries exact integer
    coefficients; returns monic symmetric representatives mod p^k."""
    q = p
    while q < target:
        q = q * q
    if len(factors) == 1:
        return [_monic_int(_sym(f, q), q)]
    mid = len(factors) // 2
    g = [f[-1] % p]
    for fac in factors[:mid]:
        g = _mod_coeffs(_mul(g, fac), p)
    h = [1]
    for fac in factors[mid:]:
        h = _mod_coeffs(_mul(h, fac), p)
    s, t = _eea_mod(g, h, p)
    qq = p
    while qq < target:
        g, h, s, t = _hensel_pair(f, g, h, s, t, p, qq)
        qq = qq * qq
    # the halves are exact mod q; recurse on them as integer polynomials
    left = _hensel_tree(g, factors[:mid], p, target)
    right = _hensel_tree(h, factors[mid:], p, target)
    return left + right


def _monic_int(a, q):
    inv = pow(a[-1], -1, q)
    return _sym([c * inv for c in a], q)


def _primes():
    yield from (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127)
    n = 131
    while True:
        if all(n % d for d in range(3, isqrt(n) + 1, 2)):
            yield n
        n += 2


def _zassenhaus(G: List[int]) -> List[List[int]]:
    """Irreducible integer factors of a primitive squarefree G, deg >= 2."""
    n = len(G) - 1
    lc = G[-1]
    deriv = _trim([G[i] * i for i in range(1, len(G))])
    for p in _primes():
        if lc % p == 0:
            continue
        if len(_gcd_mod(G, deriv, p)) - 1 == 0:
            break
    monicG = _mod_coeffs([c * pow(lc, -1, p) for c in G], p)
    modular = _berlekamp(monicG, p)
    if len(modular) == 1:
        return [G]
    # Mignotte-style bound on factor coefficients
    norm = isqrt(sum(c * c for c in G)) + 1
    bound = 2 ** n * norm * abs(lc)
    target = 2 * bound + 1
    q = p
    while q < target:
        q = q * q
    lifted = _hensel_tree(G, modular, p, target)

    result = []
    remaining = list(range(len(lifted)))
    current = G
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for subset in _subsets(remaining, size):
            cand = [lc]
            for i in subset:
                cand = _sym(_mul(cand, lifted[i]), q)
            cand = _primitive_int(cand)
            quo = _exact_div_int(current, cand)
            if quo is not None:
                result.append(cand)
                remaining = [i for i in remaining if i not in subset]
                current = quo
                lc = current[-1]
                found = True
                break
        if not found:
            size += 1
    if len(current) > 1:
        result.append(_primitive_int(current))
    return result


def _subsets(items, size):
    from itertools import combinations

    yield from combinations(items, size)


def _primitive_int(a):
    g = 0
    for c in a:
        g = gcd(g, c)
    if a and a[-1] < 0:
        g = -g
    return [c // g for c in a] if g not in (0, 1) else list(a)


def _exact_div_int(a, b):
    """a / b over Z if exact, else None."""
    if not b:
        return None
    r = list(a)
    q = [0] * max(1, len(a) - len(b) + 1)
    while _trim(list(r)) and len(_trim(list(r))) >= len(b):
        r = _trim(r)
        shift = len(r) - len(b)
        if r[-1] % b[-1]:
            return None
        c = r[-1] // b[-1]
        q[shift] = c
        for i in range(len(b)):
            r[shift + i] -= c * b[i]
        r = _trim(r)
    return _trim(q) if not _trim(list(r)) else None


# -- public API ---------------------------------------------------------------


def yun_squarefree(p: UniPoly) -> List[Tuple[UniPoly, int]]:
    """Squarefree decomposition of a monic rational polynomial."""
    p = p.monic()
    out = []
    dp = p.derivative()
    a = p.gcd_monic(dp)
    b = p.divmod(a)[0]
    c = dp.divmod(a)[0]
    d = c - b.derivative()
    i = 1
    while b.degree() != 0:
        a = b.gcd_monic(d)
        if a.degree() != 0:
            out.append((a, i))
        b = b.divmod(a)[0]
        c = d.divmod(a)[0]
        d = c - b.derivative()
        i += 1
    return out


def factor_rational(p: UniPoly) -> List[Tuple[UniPoly, int]]:
    """Monic irreducible factors over Q with multiplicities.

    The product of factor^multiplicity times the leading coefficient of p
    reproduces p exactly.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree() == 0:
        return []
    out: List[Tuple[UniPoly, int]] = []
    for sq, mult in yun_squarefree(p):
        for f in _factor_squarefree(sq):
            out.append((f, mult))
    out.sort(key=lambda fm: (fm[0].degree(), tuple(fm[0].coeffs)))
    return out


def _factor_squarefree(g: UniPoly) -> List[UniPoly]:
    """Irreducible monic factors of a monic squarefree rational polynomial."""
    factors = []
    # powers of the variable
    k = 0
    while g.degree() > 0 and g.coeffs[0] == 0:
        g = UniPoly(g.coeffs[1:], g.var)
        k += 1
    if k:
        factors.append(UniPoly((0, 1), g.var))
    if g.degree() == 0:
        return factors
    prim, _ = g.content_free()
    ints = [int(c) for c in prim.coeffs]
    # rational roots
    a0, an = abs(ints[0]), abs(ints[-1])
    roots = []
    for num in _divisors(a0):
        for den in _divisors(an):
            for sgn in (1, -1):
                r = Fraction(sgn * num, den)
                if g.eval(r) == 0:
                    roots.append(r)
    for r in sorted(set(roots)):
        factors.append(UniPoly((-r, 1), g.var))
        g = g.divmod(UniPoly((-r, 1), g.var))[0]
    if g.degree() == 0:
        return factors
    if g.degree() in (1, 2, 3):
        # no rational root and degree <= 3: irreducible
        factors.append(g.monic())
        return factors
    prim, _ = g.content_free()
    for fac in _zassenhaus([int(c) for c in prim.coeffs]):
        factors.append(UniPoly(fac, g.var).monic())
    return factors


def _divisors(n: int) -> List[int]:
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def is_irreducible_q(coeffs) -> bool:
    p = UniPoly(coeffs)
    if p.degree() in (0,) or p.is_zero():
        return False
    fs = factor_rational(p)
    return len(fs) == 1 and fs[0][1] == 1 and fs[0][0].degree() == p.degree()


# -- Sturm isolation ----------------------------------------------------------


def sturm_chain(p: UniPoly) -> List[UniPoly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree() > 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero():
            break
        chain.append(-rem)
    return [c for c in chain if not c.is_zero()]


def _sign_at(p: UniPoly, x) -> int:
    if x == "+inf":
        v = p.lead()
    elif x == "-inf":
        v = p.lead() * (1 if (p.degree() % 2 == 0) else -1)
    else:
        v = p.eval(x)
    return (v > 0) - (v < 0)


def _variations(chain, x) -> int:
    signs = [s for s in (_sign_at(c, x) for c in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: UniPoly, lo=None, hi=None) -> int:
    """Distinct real roots of p in (lo, hi] (whole line by default)."""
    sq = p.squarefree_part()
    if sq.degree() == 0:
        return 0
    chain = sturm_chain(sq)
    a = "-inf" if lo is None else lo
    b = "+inf" if hi is None else hi
    return _variations(chain, a) - _variations(chain, b)


def _root_bound(p: UniPoly) -> Fraction:
    # Cauchy bound
    lead = abs(p.lead())
    m = max((abs(c) for c in p.coeffs[:-1]), default=Fraction(0))
    return m / lead + 1


def isolate_real_roots(p: UniPoly) -> List[Tuple[Fraction, Fraction]]:
    """Disjoint rational intervals (lo, hi], one per distinct real root,
    sorted in ascending root order."""
    sq = p.squarefree_part()
    if sq.degree() == 0:
        return []
    chain = sturm_chain(sq)
    bound = _root_bound(sq)
    out = []

    def recurse(lo, hi, nroots):
        if nroots == 0:
            return
        if nroots == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        left = _variations(chain, lo) - _variations(chain, mid)
        recurse(lo, mid, left)
        recurse(mid, hi, nroots - left)

    total = _variations(chain, -bound) - _variations(chain, bound)
    recurse(-bound, bound, total)
    return out


def refine_interval(p: UniPoly, lo: Fraction, hi: Fraction,
                    width: Fraction) -> Tuple[Fraction, Fraction]:
    """Shrink an isolating (lo, hi] below the given width by bisection."""
    sq = p.squarefree_part()
    chain = sturm_chain(sq)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if _variations(chain, lo) - _variations(chain, mid) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def approx_complex_roots(p: UniPoly, iterations: int = 200):
    """Display-only complex approximations (deterministic Durand-Kerner)."""
    n = p.degree()
    if n <= 0:
        return []
    cs = [complex(c) for c in p.monic().coeffs]

    def ev(z):
        acc = 0j
        for c in reversed(cs):
            acc = acc * z + c
        return acc

    roots = [(0.4 + 0.9j) ** k for k in range(n)]
    for _ in range(iterations):
        new = []
        for i, z in enumerate(roots):
            denom = 1.0 + 0j
            for j, w in enumerate(roots):
                if i != j:
                    denom *= (z - w)
            if denom == 0:
                denom = 1e-12
            new.append(z - ev(z) / denom)
        if all(abs(a - b) < 1e-14 for a, b in zip(new, roots)):
            roots = new
            break
        roots = new
    return roots
