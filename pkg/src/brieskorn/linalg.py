"""Exact dense linear algebra over Q and over number fields.

Rational matrices are eliminated fraction-free (Bareiss) after clearing
denominators; number-field matrices use plain exact field elimination.
Everything returns normalized reduced row-echelon data, so ranks, kernels
and membership tests are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from .scalars import NFElt, Scalar, is_zero
from .unipoly import UniPoly, lagrange_interpolate


class Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Sequence[Sequence[Scalar]], ncols: int = None):
        rws = [list(r) for r in rows]
        if rws:
            width = len(rws[0])
            if any(len(r) != width for r in rws):
                raise ValueError("ragged rows")
        else:
            width = ncols or 0
        self.nrows = len(rws)
        self.ncols = width if ncols is None else ncols
        if rws and self.ncols != width:
            raise ValueError("ncols does not match rows")
        self.rows = [[Fraction(c) if isinstance(c, int) else c for c in r]
                     for r in rws]

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int, m: int) -> "Matrix":
        return cls([[Fraction(0)] * m for _ in range(n)], ncols=m)

    def copy(self) -> "Matrix":
        return Matrix([list(r) for r in self.rows], ncols=self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def mul_vec(self, v: Sequence[Scalar]) -> List[Scalar]:
        return [sum((r[j] * v[j] for j in range(self.ncols)), Fraction(0))
                for r in self.rows]

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = Fraction(0)
                for k in range(self.ncols):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(out, ncols=other.ncols)

    def transpose(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)], ncols=self.nrows)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"


def _has_nf(m: Matrix) -> bool:
    return any(isinstance(c, NFElt) for r in m.rows for c in r)


def rref(m: Matrix) -> Tuple[Matrix, int, List[int]]:
    """Reduced row-echelon form, rank and pivot columns.

    Rational input goes through fraction-free elimination on cleared
    integers; number-field input uses exact field steps.  Output pivots are
    normalized to 1 in either case.
    """
    if m.nrows == 0:
        return m.copy(), 0, []
    if _has_nf(m):
        return _rref_field(m)
    return _rref_bareiss(m)


def _rref_field(m: Matrix):
    rows = [list(r) for r in m.rows]
    nr, nc = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if not is_zero(rows[i][c]):
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        lead = rows[r][c]
        inv = lead.inverse() if isinstance(lead, NFElt) else 1 / lead
        rows[r] = [v * inv for v in rows[r]]
        for i in range(nr):
            if i != r and not is_zero(rows[i][c]):
                fac = rows[i][c]
                rows[i] = [a - fac * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    out = [rows[i] for i in range(r)]
    return Matrix(out, ncols=nc), r, pivots


def _rref_bareiss(m: Matrix):
    # clear denominators row by row; elimination stays in Z
    nr, nc = m.nrows, m.ncols
    rows: List[List[int]] = []
    for r in m.rows:
        den = 1
        for c in r:
            den = den * c.denominator // gcd(den, c.denominator)
        rows.append([int(c * den) for c in r])
    pivots = []
    r = 0
    prev = 1
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        lead = rows[r][c]
        for i in range(r + 1, nr):
            if rows[i][c] or True:
                fac = rows[i][c]
                row = rows[i]
                prow = rows[r]
                for j in range(c, nc):
                    row[j] = (lead * row[j] - fac * prow[j]) // prev
        prev = lead
        pivots.append(c)
        r += 1
        if r == nr:
            break
    rank = r
    # back substitution over Q with pivot normalization
    out = [[Fraction(v) for v in rows[i]] for i in range(rank)]
    for i in range(rank - 1, -1, -1):
        c = pivots[i]
        lead = out[i][c]
        out[i] = [v / lead for v in out[i]]
        for k in range(i):
            fac = out[k][c]
            if fac:
                out[k] = [a - fac * b for a, b in zip(out[k], out[i])]
    return Matrix(out, ncols=nc), rank, pivots


@dataclass
class Subspace:
    """Subspace of a coordinate space given by a reduced row-echelon basis."""

    basis: Matrix
    ambient: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], ambient: int) -> "Subspace":
        if not rows:
            return cls(Matrix([], ncols=ambient), ambient)
        mat, rank, _ = rref(Matrix(rows, ncols=ambient))
        return cls(mat, ambient)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def pivot_columns(self) -> List[int]:
        cols = []
        for r in self.basis.rows:
            for j, v in enumerate(r):
                if not is_zero(v):
                    cols.append(j)
                    break
        return cols

    def reduce_vector(self, v: Sequence[Scalar]) -> List[Scalar]:
        vec = [Fraction(c) if isinstance(c, int) else c for c in v]
        for row, pc in zip(self.basis.rows, self.pivot_columns()):
            fac = vec[pc]
            if not is_zero(fac):
                vec = [a - fac * b for a, b in zip(vec, row)]
        return vec

    def contains(self, v: Sequence[Scalar]) -> bool:
        return all(is_zero(c) for c in self.reduce_vector(v))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient:
        raise ValueError("ambient dimension mismatch")
    return Subspace.from_rows(list(a.basis.rows) + list(b.basis.rows), a.ambient)


def subspace_membership(v: Sequence[Scalar], s: Subspace) -> bool:
    if len(list(v)) != s.ambient:
        raise ValueError("vector length does not match the ambient space")
    return s.contains(v)


def quotient_dim(ambient: int, s: Subspace) -> int:
    if s.ambient != ambient:
        raise ValueError("ambient dimension mismatch")
    return ambient - s.dim


def kernel_basis(m: Matrix) -> Subspace:
    """Right kernel {v : m v = 0} as an echelonized subspace."""
    red, rank, pivots = rref(m)
    free = [j for j in range(m.ncols) if j not in pivots]
    rows = []
    for j in free:
        v = [Fraction(0)] * m.ncols
        v[j] = Fraction(1)
        for i, pc in enumerate(pivots):
            coef = red.rows[i][j]
            if not is_zero(coef):
                v[pc] = -coef
        rows.append(v)
    return Subspace.from_rows(rows, m.ncols)


def det_bareiss(m: Matrix) -> Scalar:
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    if _has_nf(m):
        return _det_field(m)
    den = Fraction(1)
    rows = []
    for r in m.rows:
        d = 1
        for c in r:
            d = d * c.denominator // gcd(d, c.denominator)
        den = den * d
        rows.append([int(c * d) for c in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            pr = None
            for i in range(k + 1, n):
                if rows[i][k]:
                    pr = i
                    break
            if pr is None:
                return Fraction(0)
            rows[k], rows[pr] = rows[pr], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[k][k] * rows[i][j]
                              - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return Fraction(sign * rows[n - 1][n - 1]) / den


def _det_field(m: Matrix) -> Scalar:
    n = m.nrows
    rows = [list(r) for r in m.rows]
    det = None
    sign = 1
    for k in range(n):
        pr = None
        for i in range(k, n):
            if not is_zero(rows[i][k]):
                pr = i
                break
        if pr is None:
            return Fraction(0)
        if pr != k:
            rows[k], rows[pr] = rows[pr], rows[k]
            sign = -sign
        lead = rows[k][k]
        det = lead if det is None else det * lead
        inv = lead.inverse() if isinstance(lead, NFElt) else 1 / lead
        for i in range(k + 1, n):
            fac = rows[i][k] * inv
            if not is_zero(fac):
                rows[i] = [a - fac * b for a, b in zip(rows[i], rows[k])]
    return det * sign


def charpoly(m: Matrix, var: str = "lambda") -> UniPoly:
    """Characteristic polynomial det(var*I - m), exact, by interpolation."""
    if m.nrows != m.ncols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.nrows
    if n == 0:
        return UniPoly((1,), var)
    points = []
    for k in range(n + 1):
        lam = Fraction(k)
        shifted = Matrix([[lam * Fraction(int(i == j)) - m.rows[i][j]
                           for j in range(n)] for i in range(n)])
        points.append((lam, det_bareiss(shifted)))
    return lagrange_interpolate(points, var)
