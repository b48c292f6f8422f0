"""Report documents: canonical JSON and the text table.

JSON output is canonical: sorted keys, rationals rendered "p/q", algebraic
values as {"minpoly", "root_indices", "conjugates"} with the documented
root order (real roots ascending by exact isolation, then complex conjugate
pairs by ascending real part, positive imaginary part first).  Decimal
approximations appear only in display fields and are tagged with "~".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from . import __version__
from .invariants import InvariantReport, ValueRecord, report_passes
from .truncation import EngineConfig
from .unifactor import approx_complex_roots, isolate_real_roots, refine_interval
from .unipoly import UniPoly
from . import weyl


@dataclass
class RunConfig:
    poly_text: str
    variables: tuple = ("x", "y")
    probes: List[str] = field(default_factory=list)
    max_degree: Optional[int] = None
    plateau_window: int = 3
    pf_order: int = 4
    pf_degree: int = 4
    seed: int = 0
    json_path: Optional[str] = None
    text: bool = True

    def engine_config(self) -> EngineConfig:
        return EngineConfig(plateau_window=self.plateau_window,
                            seed=self.seed,
                            pf_max_order=self.pf_order,
                            pf_max_coeff_degree=self.pf_degree,
                            absolute_d_max=self.max_degree)


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else \
        f"{x.numerator}/{x.denominator}"


def fmt_unipoly(p: UniPoly) -> str:
    return str(p)


def _value_approx_strings(minpoly: UniPoly) -> List[str]:
    """Display approximations of all roots in the documented order."""
    deg = minpoly.degree()
    out = []
    real = isolate_real_roots(minpoly)
    for lo, hi in real:
        lo2, hi2 = refine_interval(minpoly, lo, hi, Fraction(1, 10 ** 12))
        mid = (lo2 + hi2) / 2
        out.append(f"~{float(mid):.10g}")
    n_complex = deg - len(real)
    if n_complex:
        roots = approx_complex_roots(minpoly)
        complex_roots = sorted((r for r in roots if abs(r.imag) > 1e-9),
                               key=lambda z: (round(z.real, 9),
                                              -abs(round(z.imag, 9)),
                                              -z.imag))
        for z in complex_roots[:n_complex]:
            sign = "+" if z.imag >= 0 else "-"
            out.append(f"~{z.real:.10g} {sign} {abs(z.imag):.10g}i")
    return out


def value_to_json(rec: ValueRecord, m: int) -> Dict:
    rational = rec.rational_value()
    return {
        "value": {
            "minpoly": fmt_unipoly(rec.minpoly),
            "rational": fmt_rational(rational) if rational is not None else None,
            "root_indices": list(range(rec.conjugates)),
            "conjugates": rec.conjugates,
            "approx": _value_approx_strings(rec.minpoly),
        },
        "kind": rec.kind,
        "mu": rec.mu,
        "coker": rec.coker,
        "ker": rec.ker,
        "nu": rec.nu,
        "betti": {"reduced_bottom": rec.h_bottom, "reduced_top": rec.h_top},
        "euler": rec.euler(m),
        "full_gm_difference_predicted": rec.full_gm_difference_predicted,
        "period_exponents": (list(rec.exponent_pair)
                             if rec.exponent_pair is not None else None),
        "period_exponents_conditional": rec.exponents_conditional,
        "plateau": rec.plateau,
        "sources": sorted(set(rec.sources)),
    }


def operator_to_json(res: weyl.AnnihilatorResult) -> Dict:
    return {
        "operator": weyl.operator_to_text(res.operator),
        "order": res.order,
        "coeff_degree_bound": res.coeff_degree,
        "plateau": res.plateau,
        "singular_factors": [fmt_unipoly(p) for p, _ in
                             weyl.finite_singular_points(res.operator)],
    }


def indicial_to_json(data: weyl.IndicialData) -> Dict:
    if data.location == "infinity":
        loc = "infinity"
    elif isinstance(data.location, Fraction):
        loc = fmt_rational(data.location)
    else:
        loc = f"root of {data.location.field.modulus_text()}" \
            if hasattr(data.location, "field") else str(data.location)
    return {
        "location": loc,
        "indicial_polynomial": fmt_unipoly(data.polynomial),
        "rational_roots": [[fmt_rational(r), m] for r, m in data.rational_roots],
        "irrational_factors": [[fmt_unipoly(p), m]
                               for p, m in data.irrational_factors],
        "degenerate": data.degenerate,
    }


def report_to_document(report: InvariantReport, run_config: RunConfig) -> Dict:
    cfg = report.config
    return {
        "engine": {"name": "brieskorn", "version": __version__},
        "config": {
            "polynomial": run_config.poly_text,
            "variables": list(run_config.variables),
            "probes": list(run_config.probes),
            "plateau_window": cfg.plateau_window,
            "ambient_schedule": cfg.d_schedule(report.f.total_degree()),
            "cap_slack": cfg.cap_slack,
            "pf_max_order": cfg.pf_max_order,
            "pf_max_coeff_degree": cfg.pf_max_coeff_degree,
            "seed": cfg.seed,
        },
        "spectrum": {
            "mu": report.mu_total,
            "entries": [{"minpoly": fmt_unipoly(e.minpoly), "mu": e.mu,
                         "conjugates": e.degree}
                        for e in report.spectrum.entries],
        },
        "values": [value_to_json(r, report.m) for r in report.records],
        "global": {
            "m": report.m,
            "mu": report.mu_total,
            "nu": report.nu_total,
            "tame": report.tame,
        },
        "probes": [{"value": fmt_rational(p.value), "coker": p.coker,
                    "ker": p.ker, "plateau": p.plateau}
                   for p in report.probes],
        "operators": [operator_to_json(o) for o in report.operators],
        "indicial": [indicial_to_json(d) for d in report.indicial],
        "identities": [{"name": c.name, "value": c.value, "holds": c.holds,
                        "lhs": str(c.lhs), "rhs": str(c.rhs)}
                       for c in report.identities],
        "caveats": sorted(report.caveats),
        "candidate_sources": sorted(set(report.candidate_sources)),
        "suite_passes": report_passes(report),
    }


def canonical_json(doc: Dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


def text_report(report: InvariantReport) -> str:
    lines = []
    lines.append(f"polynomial: {report.f}")
    lines.append(f"global: m = {report.m}   mu = {report.mu_total}   "
                 f"nu = {report.nu_total}   tame = {report.tame}")
    lines.append("")
    header = (f"{'value':>16} {'kind':>14} {'mu':>4} {'coker':>6} {'ker':>4} "
              f"{'nu':>4} {'h~0':>4} {'h~1':>4} {'chi':>4} {'R-N pred':>9} "
              f"{'exp':>10} {'plateau':>8}")
    lines.append(header)
    lines.append("-" * len(header))
    for r in report.records:
        rational = r.rational_value()
        label = fmt_rational(rational) if rational is not None \
            else f"{r.minpoly}"
        exp = "cond" if r.exponents_conditional else str(r.exponent_pair)
        lines.append(f"{label:>16} {r.kind:>14} {r.mu:>4} {r.coker:>6} "
                     f"{r.ker:>4} {r.nu:>4} {r.h_bottom:>4} {r.h_top:>4} "
                     f"{r.euler(report.m):>4} "
                     f"{r.full_gm_difference_predicted:>9} {exp:>10} "
                     f"{str(r.plateau):>8}")
    lines.append("")
    for o in report.operators:
        lines.append(f"annihilator of [dx^dy]: {o.operator}")
        lines.append(f"  order {o.order}, plateau {o.plateau}")
    for d in report.indicial:
        if d.location == "infinity":
            where = "infinity"
        elif isinstance(d.location, Fraction):
            where = f"t = {fmt_rational(d.location)}"
        else:
            where = f"t = ({d.location})"
        roots = ", ".join(f"{fmt_rational(r)} (x{m})" if m > 1
                          else fmt_rational(r) for r, m in d.rational_roots)
        extra = "; ".join(str(p) for p, _ in d.irrational_factors)
        tail = f"; irrational factors: {extra}" if extra else ""
        flag = "  [degenerate]" if d.degenerate else ""
        lines.append(f"  exponents at {where}: {d.polynomial} -> "
                     f"[{roots}]{tail}{flag}")
    bad = [c for c in report.identities if not c.holds]
    lines.append("")
    lines.append(f"identity suite: {len(report.identities) - len(bad)} passed, "
                 f"{len(bad)} failed")
    for c in bad:
        lines.append(f"  FAILED {c.name} at {c.value}: {c.lhs} != {c.rhs}")
    if report.caveats:
        lines.append("caveats:")
        for c in sorted(report.caveats):
            lines.append(f"  - {c}")
    return "\n".join(lines) + "\n"
