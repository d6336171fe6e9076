"""
Global dimension of slope stability sigma_tau on coh of an orbifold projective line.

gldim sigma = sup{phi(B) - phi(A) : Hom(A, B[k]) != 0}. coh is hereditary, so
only k = 0 (Hom) and k = 1 (Ext^1, gap + 1) contribute between heart objects.

The sup runs over a finite catalog: line bundles with |l| <= L, torsion of
length <= N at every tube and at one generic point. A catalog maximum is a
lower bound for gldim sigma; it is labelled ExactGlobal only when a
certificate covers every semistable object:
- tubular: S = - (x) O(omega)[1] preserves Z_tau, so S(P(phi)) = P(phi + 1)
  and gldim sigma_tau = 1 (Gepner type);
- domestic: every Ext^1 pair has phi(B) <= phi(A), and the torsion self-ext
  pair attains 1.
Everything else is a WindowLowerBound.

Input:  WeightSpec, StabilityParam, window (L, N)
Output: GapReport (exact Phase value + ratio witness), scan tables (pandas)
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import pandas as pd
from tqdm import tqdm

import config
import k0
import lattice
import stability
from exactnum import GaussRat, Ordering, Phase, parse_gauss, parse_rational, phase_compare, phase_difference
from homdim import ext1_dim, hom_dim
from k0 import GenericTorsion, K0Class, Line, SheafObject, TubeTorsion
from lattice import TypeClass, WeightSpec
from stability import SemistabilityVerdict, StabilityParam
from utils import format_rational, logger

SCAN_COLUMNS = ["tau_re", "tau_im", "lower_bound_float", "exact_flag",
                "witness_a", "witness_b", "witness_ext"]

# Phase of every torsion sheaf (Z = -deg on the negative real axis),
# and also the value 1 of a gap
TORSION_PHASE = Phase(0, GaussRat(-1, 0))


@dataclass(frozen=True)
class SerreDimRef:
    """uSdim = lSdim of D^b(coh); cited, not computed."""
    value: Fraction = Fraction(1)


SERRE_DIMENSION = SerreDimRef()


class Exactness(str, Enum):
    EXACT_GLOBAL = "ExactGlobal"
    WINDOW_LOWER_BOUND = "WindowLowerBound"


@dataclass(frozen=True)
class CatalogEntry:
    obj: SheafObject
    cls: K0Class
    charge: GaussRat
    phase: Phase
    verdict: SemistabilityVerdict


@dataclass
class Catalog:
    spec: WeightSpec
    sigma: StabilityParam
    window: tuple[int, int]
    entries: list[CatalogEntry] = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    @property
    def lines(self) -> list[tuple[int, CatalogEntry]]:
        return [(idx, e) for idx, e in enumerate(self.entries) if isinstance(e.obj, Line)]

    @property
    def torsion(self) -> list[tuple[int, CatalogEntry]]:
        return [(idx, e) for idx, e in enumerate(self.entries) if k0.is_torsion(e.obj)]

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for e in self.entries:
            rows.append({
                "object": k0.format_object(e.obj),
                "kind": e.obj.kind,
                "rank": k0.rank(e.cls),
                "degree": k0.degree(e.cls),
                "charge_re": format_rational(e.charge.re),
                "charge_im": format_rational(e.charge.im),
                "phase": str(e.phase),
                "phase_float": float(e.phase),
                "verdict": e.verdict.status,
                "certificate": e.verdict.certificate.value if e.verdict.certificate else "",
            })
        return pd.DataFrame(rows)


@dataclass(frozen=True)
class GapReport:
    """
    value = phi(B) - phi(A) (+1 for an Ext^1 pair). ratio is the witness
    w = dir(B) * conj(dir(A)), whose argument is the fractional part of the gap.
    """
    value: Phase
    ratio: GaussRat
    witness_a: SheafObject
    witness_b: SheafObject
    ext: bool
    exactness: Exactness

    @property
    def float_value(self) -> float:
        return float(self.value)

    def to_json(self):
        exact = self.value.as_fraction()
        return {
            "value": format_rational(exact) if exact is not None else str(self.value),
            "phase": self.value.to_json(),
            "ratio": self.ratio.to_json(),
            "float_value": self.float_value,
            "witness": {
                "a": k0.format_object(self.witness_a),
                "b": k0.format_object(self.witness_b),
                "ext": self.ext,
            },
            "exact_flag": self.exactness.value,
        }


def default_torsion_window(spec) -> int:
    return 2 * max(lattice._weights(spec))


def catalog_build(spec, sigma: StabilityParam, L: int, N: Optional[int] = None) -> Catalog:
    """
    Certified semistable objects in catalog order: generic torsion (length
    1..N), tube torsion (by tube, socle, length), then line bundles in
    normal_forms order. The order fixes which pair is reported as witness.
    """
    if not isinstance(spec, WeightSpec):
        spec = WeightSpec(lattice._weights(spec))
    weights = spec.weights
    if N is None:
        N = default_torsion_window(weights)
    if L < 1:
        raise ValueError(f"Line window L must be at least 1, got {L}")
    if N < max(weights):
        raise ValueError(f"Torsion window N must be at least max(a_i) = {max(weights)}, got {N}")

    chi = lattice.euler_char(weights)
    catalog = Catalog(spec, sigma, (L, N))

    objects: list[SheafObject] = [GenericTorsion(weights, n) for n in range(1, N + 1)]
    for i, a_i in enumerate(weights, start=1):
        for j in range(a_i):
            objects.extend(TubeTorsion(weights, i, j, n) for n in range(1, N + 1))
    objects.extend(Line(x) for x in lattice.normal_forms(weights, L))

    for obj in objects:
        verdict = stability.is_semistable(sigma, obj, chi)
        if not verdict.is_semistable:
            continue
        cls = k0.class_of(obj)
        z = stability.central_charge(sigma, cls)
        catalog.entries.append(CatalogEntry(obj, cls, z, Phase.of_charge(z), verdict))
    return catalog


# --- pair search ------------------------------------------------------------

@dataclass
class _Best:
    value: Optional[Phase] = None
    ratio: Optional[GaussRat] = None
    key: tuple = ()

    def offer(self, gap: Phase, ratio: GaussRat, key: tuple) -> None:
        # key = (index of A, index of B, ext); ties go to the smallest key
        if self.value is None:
            self.value, self.ratio, self.key = gap, ratio, key
            return
        order = phase_compare(gap, self.value)
        if order == Ordering.GT or (order == Ordering.EQ and key < self.key):
            self.value, self.ratio, self.key = gap, ratio, key


@dataclass
class PairSummary:
    best: _Best
    ext_capped: bool
    torsion_self_ext: bool
    hom_pairs: int = 0
    ext_pairs: int = 0


def _gap(a: CatalogEntry, b: CatalogEntry, ext: bool) -> tuple[Phase, GaussRat]:
    gap, w = phase_difference(b.phase, a.phase)
    return (gap.shift(1) if ext else gap), w


def _same_tube(a: SheafObject, b: SheafObject) -> bool:
    if isinstance(a, GenericTorsion) and isinstance(b, GenericTorsion):
        return a.point == b.point
    if isinstance(a, TubeTorsion) and isinstance(b, TubeTorsion):
        return a.i == b.i
    return False


def _scan_pairs(catalog: Catalog) -> PairSummary:
    """
    Exact search over all catalog pairs, bucketed by kind:
    line -> line (Hom and Ext^1), line -> torsion (Hom only),
    torsion -> line (Ext^1 only), torsion -> torsion within one tube.
    Torsion phases all equal 1, so inside a torsion bucket only the first
    nonzero pair in catalog order can be the witness.
    """
    if not catalog.entries:
        raise ValueError("max_gap needs a nonempty catalog")
    weights = catalog.spec.weights
    omega = lattice.omega(weights)
    lines, torsion = catalog.lines, catalog.torsion
    summary = PairSummary(_Best(), ext_capped=True, torsion_self_ext=False)
    best = summary.best

    # line -> line: Hom(O(x), O(y)) = S_{y-x}, Ext^1(O(x), O(y)) = D S_{x+omega-y}
    shifted = [lattice.add(e.obj.x, omega) for _, e in lines]
    for (ia, a), x_omega in zip(lines, shifted):
        for ib, b in lines:
            if hom_dim(a.obj, b.obj):
                summary.hom_pairs += 1
                best.offer(*_gap(a, b, False), (ia, ib, False))
            if lattice.is_effective(lattice.sub(x_omega, b.obj.x)):
                summary.ext_pairs += 1
                if phase_compare(b.phase, a.phase) == Ordering.GT:
                    summary.ext_capped = False
                best.offer(*_gap(a, b, True), (ia, ib, True))

    # line -> torsion: Hom only; Ext^1(O(x), T) = D Hom(T, O(x + omega)) = 0
    for ia, a in lines:
        for ib, b in torsion:
            if hom_dim(a.obj, b.obj):
                summary.hom_pairs += 1
                best.offer(*_gap(a, b, False), (ia, ib, False))
                break

    # torsion -> line: Ext^1 only
    for ib, b in lines:
        for ia, a in torsion:
            if ext1_dim(a.obj, b.obj):
                summary.ext_pairs += 1
                if phase_compare(b.phase, a.phase) == Ordering.GT:
                    summary.ext_capped = False
                best.offer(*_gap(a, b, True), (ia, ib, True))
                break

    # torsion -> torsion: every gap is 0 (Hom) or 1 (Ext^1)
    for ext, dim in ((False, hom_dim), (True, ext1_dim)):
        found = next(((ia, ib, a, b) for ia, a in torsion for ib, b in torsion
                      if _same_tube(a.obj, b.obj) and dim(a.obj, b.obj)), None)
        if found is not None:
            ia, ib, a, b = found
            best.offer(*_gap(a, b, ext), (ia, ib, ext))
    summary.torsion_self_ext = any(ext1_dim(e.obj, e.obj) for _, e in torsion)

    logger.debug(f"Scanned {len(catalog)} entries: {summary.hom_pairs} hom pairs, "
                 f"{summary.ext_pairs} ext pairs")
    return summary


def max_gap(catalog: Catalog) -> GapReport:
    summary = _scan_pairs(catalog)
    best = summary.best
    ia, ib, ext = best.key
    spec = catalog.spec
    type_class = lattice.classify(spec)

    exactness = Exactness.WINDOW_LOWER_BOUND
    if best.value == TORSION_PHASE:
        if type_class == TypeClass.TUBULAR and gepner_check(spec, catalog.sigma):
            exactness = Exactness.EXACT_GLOBAL
        elif type_class == TypeClass.DOMESTIC and summary.ext_capped and summary.torsion_self_ext:
            exactness = Exactness.EXACT_GLOBAL

    return GapReport(best.value, best.ratio, catalog.entries[ia].obj, catalog.entries[ib].obj,
                     ext, exactness)


def gepner_check(spec, sigma: StabilityParam) -> bool:
    """
    Charge-level Gepner identity: Z_tau(B (x) O(omega)) = Z_tau(B) on the K_0
    basis, checked on the tilting line bundles and the simple torsion sheaves.
    Together with the shift in S this gives S . sigma_tau = 1 . sigma_tau.
    """
    weights = lattice._weights(spec)
    omega = lattice.omega(weights)
    basis: list[SheafObject] = [Line(x) for x in lattice.tilting_vectors(weights)]
    basis.append(GenericTorsion(weights))
    for i, a_i in enumerate(weights, start=1):
        basis.extend(TubeTorsion(weights, i, j) for j in range(a_i))
    for obj in basis:
        before = stability.charge_of(sigma, obj)
        after = stability.charge_of(sigma, k0.twist(obj, omega))
        if before != after:
            return False
    return True


def wild_gap(spec, sigma: StabilityParam) -> GapReport:
    """
    1 + phi(O(omega)) - phi(O): Ext^1(O, O(omega)) = D Hom(O, O) = C, and
    deg(omega) = -a * chi_A > 0 rotates Z(O(omega)) = tau - deg(omega)
    strictly to the left of Z(O) = tau.
    """
    weights = lattice._weights(spec)
    if lattice.classify(weights) != TypeClass.WILD:
        raise ValueError(f"wild_gap needs a wild weight type, {lattice.format_weights(weights)} "
                         f"is {lattice.classify(weights).value}")
    a = Line(lattice.zero(weights))
    b = Line(lattice.omega(weights))
    gap, w = phase_difference(stability.phase(sigma, b), stability.phase(sigma, a))
    return GapReport(gap.shift(1), w, a, b, True, Exactness.WINDOW_LOWER_BOUND)


def limit_family(spec, ts: Iterable = config.LIMIT_FAMILY_TS) -> list[tuple[Fraction, GapReport]]:
    """wild_gap along tau = t*i."""
    family = []
    for t in ts:
        t = Fraction(t)
        family.append((t, wild_gap(spec, StabilityParam(GaussRat(0, t)))))
    return family


def phase_order_violations(catalog: Catalog) -> list[tuple[SheafObject, SheafObject]]:
    """Pairs with Hom(A, B) != 0 but phi(A) > phi(B); empty for a stability condition."""
    violations = []
    for a in catalog.entries:
        for b in catalog.entries:
            if a.phase <= b.phase:
                continue
            if hom_dim(a.obj, b.obj):
                violations.append((a.obj, b.obj))
    return violations


def support_constant(catalog: Catalog) -> Fraction:
    """max ||[E]||_1^2 / |Z(E)|^2 over the catalog."""
    best = Fraction(0)
    for e in catalog.entries:
        norm1 = sum(abs(v) for v in e.cls.vector())
        best = max(best, Fraction(norm1 * norm1) / e.charge.norm2())
    return best


# --- tau grids --------------------------------------------------------------

def parse_grid(text: str) -> list[GaussRat]:
    """
    Grid syntaxes:
    - 're=v1,v2:im=w1,w2' -> Cartesian product, re varying slowest
    - 're,im;re,im;...'   -> explicit list
    - a path to a file with one 're,im' per line ('#' comments allowed)
    """
    text = str(text).strip()
    if text.startswith("re="):
        axes = {}
        for part in text.split(":"):
            name, _, values = part.partition("=")
            axes[name.strip()] = [parse_rational(v) for v in values.split(",") if v.strip()]
        if set(axes) != {"re", "im"}:
            raise ValueError(f"Grid axes must be 're' and 'im', got {sorted(axes)}")
        grid = [GaussRat(x, y) for x in axes["re"] for y in axes["im"]]
    elif os.path.isfile(text):
        with open(text, encoding="utf-8") as handle:
            grid = [parse_gauss(line.split("#")[0]) for line in handle
                    if line.split("#")[0].strip()]
    else:
        grid = [parse_gauss(p) for p in text.split(";") if p.strip()]
    if not grid:
        raise ValueError("Empty tau grid")
    for tau in grid:
        if not tau.im > 0:
            raise ValueError(f"Grid point {tau} is not in the upper half-plane")
    return grid


def _evaluate(spec, tau: GaussRat, L: int, N: Optional[int]) -> GapReport:
    return max_gap(catalog_build(spec, StabilityParam(tau), L, N))


def scan(spec, grid: Sequence[GaussRat], L: int = config.DEFAULT_WINDOW_L,
         N: Optional[int] = config.DEFAULT_WINDOW_N, threads: int = config.THREADS) -> pd.DataFrame:
    """
    max_gap at every grid point plus a closing GridInfimum row.
    Rows follow grid order whatever the thread count.
    """
    if not grid:
        raise ValueError("scan needs a nonempty grid")
    logger.info(f"Scanning {len(grid)} tau values for A = ({lattice.format_weights(spec)}) "
                f"with {threads} threads")
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        reports = list(tqdm(pool.map(lambda tau: _evaluate(spec, tau, L, N), grid),
                            total=len(grid), desc="Scanning"))

    rows = [_scan_row(format_rational(tau.re), format_rational(tau.im), r.float_value,
                      r.exactness.value, r) for tau, r in zip(grid, reports)]
    inf_idx = 0
    for idx, report in enumerate(reports):
        if report.value < reports[inf_idx].value:
            inf_idx = idx
    inf = reports[inf_idx]
    rows.append(_scan_row("*", "*", inf.float_value, "GridInfimum", inf))
    return pd.DataFrame(rows, columns=SCAN_COLUMNS)


def _scan_row(tau_re: str, tau_im: str, value: float, flag: str, report: GapReport) -> dict:
    return {
        "tau_re": tau_re,
        "tau_im": tau_im,
        "lower_bound_float": value,
        "exact_flag": flag,
        "witness_a": k0.format_object(report.witness_a),
        "witness_b": k0.format_object(report.witness_b),
        "witness_ext": report.ext,
    }


# --- end-to-end verification --------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    spec: WeightSpec
    tau: GaussRat
    type_class: TypeClass
    chi: Fraction
    gepner: bool
    gap: GapReport
    lower_bound: Optional[GapReport] = None
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    @property
    def gldim_text(self) -> str:
        if self.type_class == TypeClass.WILD:
            bound = self.lower_bound or self.gap
            return f"> 1 (lower bound {bound.float_value:.6g})"
        if self.gap.exactness == Exactness.EXACT_GLOBAL:
            return "1 (exact)"
        return f">= {self.gap.float_value:.6g} (window lower bound)"

    def to_json(self):
        return {
            "A": lattice.format_weights(self.spec),
            "tau": self.tau,
            "type": self.type_class.value,
            "chi": self.chi,
            "gepner": self.gepner,
            "gldim": self.gldim_text,
            "lower_bound_float": (self.lower_bound or self.gap).float_value,
            "gap": self.gap,
            "wild_gap": self.lower_bound,
            "serre_dimension": SERRE_DIMENSION.value,
            "gldim_D": SERRE_DIMENSION.value,
            "checks": self.checks,
            "failures": self.failures,
            "passed": self.passed,
        }


def _theorem1_checks(spec, sigma: StabilityParam) -> list[CheckResult]:
    checks = []
    verdict = stability.theorem1_check(stability.charge_assignment_from_tau(spec, sigma), spec)
    checks.append(CheckResult("theorem1_round_trip", verdict.accepted and verdict.tau == sigma.tau,
                              verdict.detail or f"accepted tau = {verdict.tau}"))
    for reason, assignment in stability.perturbed_assignments(spec, sigma).items():
        got = stability.theorem1_check(assignment, spec)
        checks.append(CheckResult(f"theorem1_rejects_{reason.value}",
                                  not got.accepted and got.reason == reason,
                                  got.detail or "accepted a perturbed charge"))
    return checks


def verify_theorems(spec, sigma: StabilityParam, L: int = config.DEFAULT_WINDOW_L,
                    N: Optional[int] = config.DEFAULT_WINDOW_N) -> VerificationReport:
    if not isinstance(spec, WeightSpec):
        spec = WeightSpec(lattice._weights(spec))
    type_class = lattice.classify(spec)
    logger.info(f"Verifying A = ({spec}) [{type_class.value}] at tau = {sigma.tau}")

    catalog = catalog_build(spec, sigma, L, N)
    gap = max_gap(catalog)
    gepner = gepner_check(spec, sigma)
    report = VerificationReport(spec, sigma.tau, type_class, lattice.euler_char(spec), gepner, gap)

    report.checks.extend(_theorem1_checks(spec, sigma))
    is_tubular = type_class == TypeClass.TUBULAR
    report.checks.append(CheckResult("gepner_matches_type", gepner == is_tubular,
                                     f"gepner={gepner}, type={type_class.value}"))
    report.checks.append(CheckResult("fractional_cy_matches_type",
                                     (lattice.fractional_cy(spec) is not None) == is_tubular,
                                     f"fractional_cy={lattice.fractional_cy(spec)}"))
    violations = phase_order_violations(catalog)
    report.checks.append(CheckResult("hom_vanishing_axiom", not violations,
                                     f"{len(violations)} violating pairs"))

    one = TORSION_PHASE
    if type_class == TypeClass.WILD:
        lower = wild_gap(spec, sigma)
        report.lower_bound = lower
        report.checks.append(CheckResult("wild_gap_exceeds_one", lower.value > one, str(lower.value)))
        report.checks.append(CheckResult("max_gap_at_least_wild_gap", gap.value >= lower.value,
                                         f"max_gap={gap.value}, wild_gap={lower.value}"))
        family = limit_family(spec)
        values = [r.value for _, r in family]
        decreasing = all(later < earlier for earlier, later in zip(values, values[1:]))
        report.checks.append(CheckResult("limit_family_decreasing", decreasing,
                                         ", ".join(f"{float(v):.6g}" for v in values)))
        tail = family[-1][1].float_value - 1
        report.checks.append(CheckResult("limit_family_tends_to_one", 0 < tail < 1e-3,
                                         f"gap - 1 = {tail:.3g} at t = {family[-1][0]}"))
    else:
        report.checks.append(CheckResult("gldim_equals_one",
                                         gap.value == one and gap.exactness == Exactness.EXACT_GLOBAL,
                                         f"value={gap.value}, exactness={gap.exactness.value}"))

    if report.passed:
        logger.info(f"✓ All {len(report.checks)} checks passed for ({spec})")
    else:
        logger.warning(f"Failed checks for ({spec}): {report.failures}")
    return report
