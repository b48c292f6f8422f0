"""Incremental sparse row echelon structures.

Rows live in a coordinate space whose columns are indexed by non-negative
integers; the *leading* entry of a row is its largest column.  Inserting rows
one at a time maintains a row-echelon family ``pivot column -> row`` without
back-substitution.  Since column indices increase with monomial degree (see
``truncation``), a row with pivot column j is supported entirely on columns
<= j, which is what makes degree-cutoff queries exact.

``IntEchelon`` keeps fraction-free primitive integer rows (the hot path, row
arithmetic delegated to the selected kernel backend).  ``FieldEchelon`` is
the generic variant over any exact scalar field.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Tuple

from . import kernel
from .scalars import NFElt, is_zero

Row = Tuple[List[int], List[int]]


class IntEchelon:
    def __init__(self):
        self.pivots: Dict[int, Row] = {}

    def copy(self) -> "IntEchelon":
        # row objects are immutable after insertion, so sharing them is safe
        out = IntEchelon.__new__(IntEchelon)
        out.pivots = dict(self.pivots)
        return out

    def __len__(self):
        return len(self.pivots)

    def insert(self, cols: List[int], vals: List[int]) -> bool:
        """Reduce the row by leading elimination and adopt it if nonzero."""
        while cols:
            lead = cols[-1]
            pivot = self.pivots.get(lead)
            if pivot is None:
                cols, vals = kernel.make_primitive(cols, vals)
                self.pivots[lead] = (cols, vals)
                return True
            pcols, pvals = pivot
            a, b = pvals[-1], vals[-1]
            g = gcd(a, b)
            cols, vals = kernel.combine(cols, vals, a // g, pcols, pvals, -(b // g))
            cols, vals = kernel.make_primitive(cols, vals)
        return False

    def contains(self, cols: List[int], vals: List[int]) -> bool:
        while cols:
            pivot = self.pivots.get(cols[-1])
            if pivot is None:
                return False
            pcols, pvals = pivot
            a, b = pvals[-1], vals[-1]
            g = gcd(a, b)
            cols, vals = kernel.combine(cols, vals, a // g, pcols, pvals, -(b // g))
        return True

    def reduce_with_scale(self, cols, vals) -> Tuple[List[int], List[int], int]:
        """Full normal form against all pivots.

        Returns (cols, vals, scale) with no entry left on a pivot column and
        scale > 0 such that vals/scale is the exact normal form of the input.
        """
        scale = 1
        i = len(cols) - 1
        while i >= 0:
            pivot = self.pivots.get(cols[i])
            if pivot is None:
                i -= 1
                continue
            pcols, pvals = pivot
            a, b = pvals[-1], vals[i]
            g = gcd(a, b)
            m1 = a // g
            cols, vals = kernel.combine(cols, vals, m1, pcols, pvals, -(b // g))
            scale *= m1
            if scale < 0:
                scale, vals = -scale, [-v for v in vals]
            # shrink the common content to keep entries small
            c = scale
            for v in vals:
                c = gcd(c, v)
                if c == 1:
                    break
            if c > 1:
                scale //= c
                vals = [v // c for v in vals]
            # entries at or above the eliminated column are pivot-free now
            i = len(cols) - 1
            while i >= 0 and cols[i] >= pcols[-1]:
                i -= 1
        return cols, vals, scale

    def pivot_columns(self) -> List[int]:
        return sorted(self.pivots)

    def count_pivots_upto(self, col_bound: int) -> int:
        return sum(1 for c in self.pivots if c <= col_bound)

    def rows_upto(self, col_bound: int) -> List[Row]:
        return [self.pivots[c] for c in sorted(self.pivots) if c <= col_bound]


class FieldEchelon:
    """Row echelon over an exact field (Fraction or one NFElt domain)."""

    def __init__(self):
        self.pivots: Dict[int, Tuple[List[int], list]] = {}

    def copy(self) -> "FieldEchelon":
        out = FieldEchelon.__new__(FieldEchelon)
        out.pivots = dict(self.pivots)
        return out

    def __len__(self):
        return len(self.pivots)

    @staticmethod
    def _inv(x):
        return x.inverse() if isinstance(x, NFElt) else 1 / x

    @staticmethod
    def _combine(cols1, vals1, cols2, vals2, m2):
        # row1 + m2*row2, merged
        out_c, out_v = [], []
        i = j = 0
        n1, n2 = len(cols1), len(cols2)
        while i < n1 and j < n2:
            c1, c2 = cols1[i], cols2[j]
            if c1 < c2:
                out_c.append(c1)
                out_v.append(vals1[i])
                i += 1
            elif c2 < c1:
                out_c.append(c2)
                out_v.append(m2 * vals2[j])
                j += 1
            else:
                v = vals1[i] + m2 * vals2[j]
                if not is_zero(v):
                    out_c.append(c1)
                    out_v.append(v)
                i += 1
                j += 1
        out_c.extend(cols1[i:])
        out_v.extend(vals1[i:])
        for k in range(j, n2):
            out_c.append(cols2[k])
            out_v.append(m2 * vals2[k])
        return out_c, out_v

    def insert(self, cols, vals) -> bool:
        while cols:
            lead = cols[-1]
            pivot = self.pivots.get(lead)
            if pivot is None:
                inv = self._inv(vals[-1])
                self.pivots[lead] = (cols, [v * inv for v in vals])
                return True
            pcols, pvals = pivot
            cols, vals = self._combine(cols, vals, pcols, pvals, -vals[-1])
        return False

    def reduce(self, cols, vals):
        """Exact normal form (no entries on pivot columns)."""
        i = len(cols) - 1
        while i >= 0:
            pivot = self.pivots.get(cols[i])
            if pivot is None:
                i -= 1
                continue
            pcols, pvals = pivot
            cols, vals = self._combine(cols, vals, pcols, pvals, -vals[i])
            i = len(cols) - 1
            while i >= 0 and cols[i] >= pcols[-1]:
                i -= 1
        return cols, vals

    def contains(self, cols, vals) -> bool:
        cols, _ = self.reduce(cols, vals)
        return not cols

    def count_pivots_upto(self, col_bound: int) -> int:
        return sum(1 for c in self.pivots if c <= col_bound)

    def pivot_columns(self):
        return sorted(self.pivots)
