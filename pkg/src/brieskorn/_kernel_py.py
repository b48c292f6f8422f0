"""Pure-Python row kernels for the integer sparse echelon.

A row is a pair of parallel lists (cols, vals): strictly increasing column
indices and nonzero integer values.  These two functions are the hot inner
loops of every relation-space computation; ``_speedups.pyx`` provides a
compiled drop-in replacement selected at import in ``kernel``.
"""

from math import gcd

BACKEND = "python"


def combine(cols1, vals1, m1, cols2, vals2, m2):
    """Merged m1*row1 + m2*row2 with zero entries dropped."""
    n1, n2 = len(cols1), len(cols2)
    out_cols = []
    out_vals = []
    i = j = 0
    while i < n1 and j < n2:
        c1, c2 = cols1[i], cols2[j]
        if c1 < c2:
            out_cols.append(c1)
            out_vals.append(m1 * vals1[i])
            i += 1
        elif c2 < c1:
            out_cols.append(c2)
            out_vals.append(m2 * vals2[j])
            j += 1
        else:
            v = m1 * vals1[i] + m2 * vals2[j]
            if v:
                out_cols.append(c1)
                out_vals.append(v)
            i += 1
            j += 1
    while i < n1:
        out_cols.append(cols1[i])
        out_vals.append(m1 * vals1[i])
        i += 1
    while j < n2:
        out_cols.append(cols2[j])
        out_vals.append(m2 * vals2[j])
        j += 1
    return out_cols, out_vals


def make_primitive(cols, vals):
    """Divide by the content gcd and make the leading value positive."""
    if not vals:
        return cols, vals
    g = 0
    for v in vals:
        g = gcd(g, v)
        if g == 1:
            break
    if vals[-1] < 0:
        g = -g
    if g != 1:
        vals = [v // g for v in vals]
    return cols, vals
