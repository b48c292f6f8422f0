"""Assembly of the per-value invariant table and its identity suite.

For each relevant value c the record carries the Milnor total mu_c, the
kernel/cokernel dimensions of (t - c) on the truncated module, the count
nu_c = m - (coker - ker) of vanishing cycles at infinity, and the fiber
Betti numbers they encode.  The identity suite re-checks the whole web at
the end; any failed line is a hard report failure.

Values are handled per Galois orbit: one record per irreducible minimal
polynomial, all conjugate roots sharing every invariant.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .groebner import CriticalSpectrum, critical_spectrum, milnor_algebra
from .multipoly import MultiPoly
from .resultants import atypical_candidates_at_infinity
from .truncation import EngineConfig, ModuleAnalyzer, ValueDims
from .unipoly import UniPoly
from . import weyl


@dataclass
class ValueRecord:
    minpoly: UniPoly
    kind: str                 # "critical" | "atypical" | "regular-probe"
    mu: int
    coker: int                # dim Coker(t - c)
    ker: int                  # dim Ker(t - c)
    nu: int
    plateau: bool
    conjugates: int
    sources: List[str] = field(default_factory=list)
    nu_ne1: Optional[int] = None
    exponent_pair: Optional[Tuple[int, int]] = None
    exponents_conditional: bool = False

    @property
    def h_bottom(self) -> int:
        # reduced H^(n-2) of the fiber
        return self.ker

    @property
    def h_top(self) -> int:
        # reduced H^(n-1) of the fiber
        return self.coker - self.mu

    def euler(self, m: int) -> int:
        return (1 + self.ker) - (self.coker - self.mu)

    @property
    def full_gm_difference_predicted(self) -> int:
        # R_c - N_c on the full Gauss-Manin module; not computed directly
        return self.coker - self.ker - self.mu

    def rational_value(self) -> Optional[Fraction]:
        if self.minpoly.degree() == 1:
            return -self.minpoly.coeffs[0]
        return None


@dataclass
class IdentityCheck:
    name: str
    value: Optional[str]
    holds: bool
    lhs: object
    rhs: object


@dataclass
class GenericProbe:
    value: Fraction
    coker: int
    ker: int
    plateau: bool


@dataclass
class InvariantReport:
    f: MultiPoly
    n: int
    mu_total: int
    m: int
    nu_total: int
    tame: bool
    spectrum: CriticalSpectrum
    records: List[ValueRecord]
    probes: List[GenericProbe]
    operators: List[weyl.AnnihilatorResult]
    indicial: List[weyl.IndicialData]
    identities: List[IdentityCheck]
    caveats: List[str]
    candidate_sources: List[str]
    config: EngineConfig
    generic_fiber_connected: bool


class ReportError(RuntimeError):
    """The identity suite failed; the report is unusable."""


def _draw_probe(rng: random.Random, reject) -> Fraction:
    while True:
        num = rng.randint(-40, 40)
        den = rng.randint(1, 6)
        c = Fraction(num, den)
        if not reject(c):
            return c


def generic_rank(analyzer: ModuleAnalyzer, spectrum: CriticalSpectrum,
                 rng: random.Random,
                 extra_reject: Optional[List[UniPoly]] = None
                 ) -> Tuple[int, List[GenericProbe], List[str]]:
    """Stabilized generic cokernel dimension (the local-system rank m).

    Draws random rational values away from the critical spectrum (and away
    from known at-infinity candidates) until two independent draws agree;
    a disagreement forces a third draw and a majority vote, all reported.
    """
    reject_polys = [e.minpoly for e in spectrum.entries]
    if extra_reject:
        reject_polys = reject_polys + list(extra_reject)
    seen: List[Fraction] = []

    def rejected(c: Fraction) -> bool:
        return c in seen or any(p.eval(c) == 0 for p in reject_polys)

    caveats: List[str] = []
    probes: List[GenericProbe] = []

    def draw() -> GenericProbe:
        c = _draw_probe(rng, rejected)
        seen.append(c)
        dims = analyzer.value_dims(c)
        probe = GenericProbe(c, dims.coker, dims.ker, dims.plateau)
        probes.append(probe)
        if not dims.plateau:
            caveats.append(f"no plateau for regular probe at t = {c}")
        return probe

    a, b = draw(), draw()
    if (a.coker, a.ker) == (b.coker, b.ker):
        return a.coker - a.ker, probes, caveats
    caveats.append(
        f"regular probes disagree: {a.value} -> {a.coker - a.ker}, "
        f"{b.value} -> {b.coker - b.ker}; drawing a third")
    c = draw()
    votes = [(p.coker - p.ker) for p in probes]
    m = max(set(votes), key=votes.count)
    if votes.count(m) < 2:
        caveats.append("all three probes disagree; using the last draw")
        m = votes[-1]
    return m, probes, caveats


def period_exponents(record: ValueRecord, n: int = 2,
                     nu_ne1: Optional[int] = None) -> None:
    """Fill the squared-period-determinant exponent pair (m_c, m'_c).

    With n = 2 the pair is (-nu_ne1, -nu_ne1 + 2 mu_c), where nu_ne1 is the
    non-unipotent part of the vanishing cycles at infinity over c.  It is
    forced to zero when nu_c = 0; otherwise it must be supplied, and the
    record is marked conditional when it is not.
    """
    if record.nu == 0:
        record.nu_ne1 = 0
        record.exponents_conditional = False
    elif nu_ne1 is not None:
        record.nu_ne1 = nu_ne1
        record.exponents_conditional = False
    else:
        record.nu_ne1 = None
        record.exponent_pair = None
        record.exponents_conditional = True
        return
    v = record.nu_ne1
    record.exponent_pair = (-v + (n - 2) * record.mu, -v + n * record.mu)


def identity_suite(report: InvariantReport) -> List[IdentityCheck]:
    """Every computable line of the invariant web; pure in the report."""
    checks: List[IdentityCheck] = []
    m = report.m

    total_nu = sum(r.nu * r.conjugates for r in report.records)
    checks.append(IdentityCheck(
        "rank = milnor total + vanishing at infinity", None,
        m == report.mu_total + total_nu, m, report.mu_total + total_nu))

    for r in report.records:
        label = str(r.minpoly)
        checks.append(IdentityCheck(
            "coker = reduced top betti + milnor", label,
            r.coker == r.h_top + r.mu, r.coker, r.h_top + r.mu))
        checks.append(IdentityCheck(
            "reduced top betti >= 0", label, r.h_top >= 0, r.h_top, 0))
        checks.append(IdentityCheck(
            "ker = reduced bottom betti", label,
            r.ker == r.h_bottom, r.ker, r.h_bottom))
        checks.append(IdentityCheck(
            "coker - ker = m - nu", label,
            r.coker - r.ker == m - r.nu, r.coker - r.ker, m - r.nu))
        checks.append(IdentityCheck(
            "nu >= 0", label, r.nu >= 0, r.nu, 0))
        if report.generic_fiber_connected:
            checks.append(IdentityCheck(
                "euler jump", label,
                r.euler(m) == (1 - m) + r.nu + r.mu,
                r.euler(m), (1 - m) + r.nu + r.mu))
    for p in report.probes:
        checks.append(IdentityCheck(
            "generic coker = m", str(p.value),
            p.coker - p.ker == m, p.coker - p.ker, m))
    return checks


def _as_minpoly(c) -> UniPoly:
    if isinstance(c, UniPoly):
        return c.monic()
    return UniPoly((-Fraction(c), 1))


def analyze_invariants(f: MultiPoly,
                       config: Optional[EngineConfig] = None,
                       user_probes: Optional[List[Fraction]] = None,
                       nu_ne1_overrides: Optional[Dict[str, int]] = None,
                       ) -> InvariantReport:
    """Full pipeline: Milnor data, generic rank, value records, operator,
    exponents, identity suite."""
    config = config or EngineConfig()
    rng = random.Random(config.seed)
    nu_ne1_overrides = nu_ne1_overrides or {}

    qa = milnor_algebra(f)
    spectrum = critical_spectrum(qa)
    analyzer = ModuleAnalyzer(f, config)
    caveats: List[str] = []
    sources = ["critical values"]

    infinity_cands = atypical_candidates_at_infinity(f)
    sources.append("milnor set at infinity")

    m, probes, probe_caveats = generic_rank(analyzer, spectrum, rng,
                                            extra_reject=infinity_cands)
    caveats.extend(probe_caveats)

    generic_fiber_connected = all(p.ker == 0 for p in probes)
    if not generic_fiber_connected:
        caveats.append("a regular probe has nonzero kernel: generic fiber "
                       "may be disconnected; euler line unchecked")

    # candidate values: critical + operator singularities + at infinity + user
    candidates: Dict[tuple, Tuple[UniPoly, List[str]]] = {}

    def add_candidate(p: UniPoly, source: str):
        key = tuple(p.monic().coeffs)
        if key in candidates:
            candidates[key][1].append(source)
        else:
            candidates[key] = (p.monic(), [source])

    for entry in spectrum.entries:
        add_candidate(entry.minpoly, "critical spectrum")
    for p in infinity_cands:
        add_candidate(p, "milnor set at infinity")

    operators: List[weyl.AnnihilatorResult] = []
    indicial_data: List[weyl.IndicialData] = []
    omega = MultiPoly.constant(f.vars, 1)
    try:
        res = weyl.annihilator(f, omega, analyzer)
        operators.append(res)
        sources.append("operator singularities")
        if not res.plateau:
            caveats.append("operator search residuals did not plateau")
        for fac, _ in weyl.finite_singular_points(res.operator):
            add_candidate(fac, "operator leading coefficient")
            if fac.degree() == 1:
                indicial_data.append(weyl.indicial(res.operator,
                                                   -fac.coeffs[0]))
            else:
                from .scalars import NumberField

                field_ = NumberField(fac.coeffs)
                indicial_data.append(weyl.indicial(res.operator,
                                                   field_.generator()))
        indicial_data.append(weyl.indicial(res.operator, "infinity"))
    except weyl.AnnihilatorNotFound as exc:
        caveats.append(f"incomplete scan: no operator within {exc.bounds}")

    for c in (user_probes or []):
        add_candidate(_as_minpoly(c), "user probe")

    mu_by_key = {tuple(e.minpoly.coeffs): e.mu for e in spectrum.entries}
    records: List[ValueRecord] = []
    for key in sorted(candidates,
                      key=lambda k: (len(k), tuple(Fraction(c) for c in k))):
        minpoly, srcs = candidates[key]
        arg = -minpoly.coeffs[0] if minpoly.degree() == 1 else minpoly
        dims = analyzer.value_dims(arg)
        mu_c = mu_by_key.get(key, 0)
        nu_c = m - (dims.coker - dims.ker)
        kind = "critical" if key in mu_by_key else (
            "atypical" if nu_c > 0 else "regular-probe")
        rec = ValueRecord(minpoly, kind, mu_c, dims.coker, dims.ker, nu_c,
                          dims.plateau, minpoly.degree(), srcs)
        if not dims.plateau:
            caveats.append(f"no plateau for value {minpoly}")
        period_exponents(rec, 2, nu_ne1_overrides.get(str(minpoly)))
        if rec.exponents_conditional:
            caveats.append(
                f"period exponents at {minpoly} conditional: nonunipotent "
                f"part of the vanishing cycles at infinity not supplied")
        records.append(rec)

    nu_total = sum(r.nu * r.conjugates for r in records)
    report = InvariantReport(
        f=f, n=2, mu_total=spectrum.mu_total, m=m, nu_total=nu_total,
        tame=(nu_total == 0), spectrum=spectrum, records=records,
        probes=probes, operators=operators, indicial=indicial_data,
        identities=[], caveats=caveats, candidate_sources=sources,
        config=config, generic_fiber_connected=generic_fiber_connected)
    report.identities = identity_suite(report)
    return report


def report_passes(report: InvariantReport) -> bool:
    return all(c.holds for c in report.identities)
