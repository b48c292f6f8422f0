"""Exact invariants of polynomial maps of the plane.

Given f in Q[x, y] with isolated critical points, this package computes,
in exact arithmetic, the critical spectrum and Milnor numbers, the
kernel/cokernel dimensions of (t - c) on the algebraic Brieskorn module
(hence the Betti numbers of every fiber), the count of vanishing cycles at
infinity per value, a differential operator annihilating the class of
dx^dy with its local exponent data, and the squared-period-determinant
exponents, together with a self-checking identity suite.
"""

__version__ = "0.1.0"

from .multipoly import MultiPoly, jacobian2, parse_polynomial
from .scalars import NumberField, NFElt
from .unipoly import UniPoly
from .invariants import analyze_invariants, InvariantReport
from .truncation import (BrieskornTruncation, EngineConfig, ModuleAnalyzer,
                         NonIsolatedSingularities, ConstantMap)
from .weyl import DiffOperator, weyl_mul, operator_equiv, annihilator, indicial

__all__ = [
    "__version__", "MultiPoly", "jacobian2", "parse_polynomial",
    "NumberField", "NFElt", "UniPoly", "analyze_invariants",
    "InvariantReport", "BrieskornTruncation", "EngineConfig",
    "ModuleAnalyzer", "NonIsolatedSingularities", "ConstantMap",
    "DiffOperator", "weyl_mul", "operator_equiv", "annihilator", "indicial",
]
