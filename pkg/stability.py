"""
Slope stability sigma_tau = (Z_tau, coh) with Z_tau(E) = -deg(E) + tau*rank(E).

Also the charge-level checker for the characterization of the sigma_tau family:
a central charge on the K_0 basis comes from some tau in H exactly when
Z(S_lambda) = -a, Z(S_{i,j}) = Z(S_lambda)/a_i, Im Z(O) > 0 and Z agrees with
Z_tau on the tilting line bundles. Semistability of the named objects is an
input assumption; a charge table alone cannot decide it.
"""

import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

import config
import k0
import lattice
from exactnum import GaussRat, Phase, parse_rational
from k0 import K0Class, SheafObject
from utils import logger


@dataclass(frozen=True)
class StabilityParam:
    tau: GaussRat

    def __post_init__(self):
        if not self.tau.im > 0:
            raise ValueError(f"tau must lie in the upper half-plane, got {self.tau}")


def central_charge(sigma: StabilityParam, cls: K0Class) -> GaussRat:
    return sigma.tau * k0.rank(cls) - k0.degree(cls)


def charge_of(sigma: StabilityParam, obj: SheafObject) -> GaussRat:
    """Z_tau of an object; uncatalogued bundles only need rank and degree."""
    rk, d = k0.rank_degree(obj)
    return sigma.tau * rk - d


def phase(sigma: StabilityParam, obj: SheafObject) -> Phase:
    z = charge_of(sigma, obj)
    if z.is_zero():
        raise ValueError(f"Zero charge for {k0.format_object(obj)}")
    p = Phase.of_charge(z)
    if p.offset != 0:
        raise ValueError(f"{k0.format_object(obj)} is not a sheaf in the heart (charge {z})")
    return p


def mass_squared(sigma: StabilityParam, cls: K0Class) -> Fraction:
    """m(E)^2 = |Z(E)|^2; m itself is generally irrational."""
    return central_charge(sigma, cls).norm2()


def slope(cls: K0Class) -> Fraction | float:
    """degree/rank; math.inf for torsion classes."""
    rk, d = k0.rank(cls), k0.degree(cls)
    if rk == 0 and d == 0:
        raise ValueError("Slope of a class with zero rank and degree is undefined")
    if rk < 0:
        raise ValueError(f"Negative rank {rk} is not the class of a sheaf")
    if rk == 0:
        return math.inf
    return Fraction(d, rk)


class Certificate(str, Enum):
    TORSION_PHASE_ONE = "TorsionPhaseOne"
    LINE_BUNDLE_STABLE = "LineBundleStable"
    COROLLARY_CHI_NONPOSITIVE = "CorollaryChiNonpositive"


@dataclass(frozen=True)
class SemistabilityVerdict:
    certificate: Optional[Certificate] = None

    @property
    def status(self) -> str:
        return "Unknown" if self.certificate is None else "Semistable"

    @property
    def is_semistable(self) -> bool:
        return self.certificate is not None

    def to_json(self):
        return {"status": self.status,
                "certificate": self.certificate.value if self.certificate else None}


UNKNOWN = SemistabilityVerdict(None)


def is_semistable(sigma: StabilityParam, obj: SheafObject, chi: Fraction) -> SemistabilityVerdict:
    """
    Torsion sits in P(1). A rank-1 subsheaf of O(x) is O(x - y) with y effective,
    so deg(y) >= 0 and no subobject has larger slope. Bundles of rank >= 2 are
    certified only when chi = 0, where the catalog includes them. Wild-type
    bundles are never catalogued, so no certificate is issued for them.
    """
    if k0.is_torsion(obj):
        return SemistabilityVerdict(Certificate.TORSION_PHASE_ONE)
    if isinstance(obj, k0.Line):
        return SemistabilityVerdict(Certificate.LINE_BUNDLE_STABLE)
    if chi == 0:
        return SemistabilityVerdict(Certificate.COROLLARY_CHI_NONPOSITIVE)
    return UNKNOWN


# --- charge tables and the characterization check -------------------------

@dataclass(frozen=True)
class ChargeAssignment:
    weights: tuple[int, ...]
    values: dict

    def __post_init__(self):
        labels = k0.basis_labels(self.weights)
        missing = [lbl for lbl in labels if lbl not in self.values]
        if missing:
            raise ValueError(f"Charge assignment is missing basis labels: {missing}")
        extra = [lbl for lbl in self.values if lbl not in labels]
        if extra:
            raise ValueError(f"Unknown basis labels in charge assignment: {extra}")

    def evaluate(self, cls: K0Class) -> GaussRat:
        total = GaussRat(0, 0)
        for label, coeff in zip(k0.basis_labels(self.weights), cls.vector()):
            if coeff:
                total = total + self.values[label] * coeff
        return total

    def to_json(self):
        return {label: self.values[label] for label in k0.basis_labels(self.weights)}


def charge_assignment_from_tau(spec, sigma: StabilityParam) -> ChargeAssignment:
    """Z_tau restricted to the basis."""
    weights = lattice._weights(spec)
    values = {}
    for label, vec in zip(k0.basis_labels(weights), _unit_vectors(weights)):
        values[label] = central_charge(sigma, K0Class.from_vector(weights, vec))
    return ChargeAssignment(weights, values)


def _unit_vectors(weights):
    n = k0.k0_rank(weights)
    for idx in range(n):
        vec = [0] * n
        vec[idx] = 1
        yield vec


def load_charges(spec, path: str) -> ChargeAssignment:
    """
    Read a JSON map from basis labels to [re, im] pairs of 'num/den' strings.
    """
    with open(path, encoding="utf-8") as handle:
        raw = json.load(handle)
    if not isinstance(raw, dict):
        raise ValueError(f"Charge file {path} must hold a JSON object keyed by basis labels")
    values = {}
    for label, pair in raw.items():
        if not isinstance(pair, list) or len(pair) != 2:
            raise ValueError(f"Charge for {label} must be a [re, im] pair, got {pair!r}")
        values[label.replace(" ", "")] = GaussRat(parse_rational(pair[0]), parse_rational(pair[1]))
    assignment = ChargeAssignment(lattice._weights(spec), values)
    logger.info(f"✓ Loaded {len(values)} charges from {path}")
    return assignment


class RejectReason(str, Enum):
    MASS = "mass"
    SIMPLE_CONSISTENCY = "simple_charge_consistency"
    PHASE_OF_O = "phase_of_O"
    LINE_BUNDLE_CHARGE = "line_bundle_charge"


@dataclass(frozen=True)
class Theorem1Result:
    accepted: bool
    tau: Optional[GaussRat] = None
    reason: Optional[RejectReason] = None
    detail: str = ""

    def to_json(self):
        return {"accepted": self.accepted, "tau": self.tau,
                "reason": self.reason.value if self.reason else None, "detail": self.detail}


def theorem1_check(Z: ChargeAssignment, spec) -> Theorem1Result:
    """
    Accept(Z(O)) iff (a) Z(S) = -a, (b) Z(S[i,j]) = Z(S)/a_i for all i, j,
    (c) Im Z(O) > 0 and (d) Z(O(x)) = Z(O) - deg(x) for 0 <= x <= c.
    Otherwise reject with the first failing clause.
    """
    weights = lattice._weights(spec)
    if Z.weights != weights:
        raise ValueError(f"Charge table is for {Z.weights}, not {weights}")
    a = math.lcm(*weights)
    z_S = Z.values["S"]
    if z_S != GaussRat(-a, 0):
        return Theorem1Result(False, reason=RejectReason.MASS,
                              detail=f"Z(S) = {z_S}, expected {-a}")
    for i, a_i in enumerate(weights, start=1):
        for j in range(1, a_i):
            label = f"S[{i},{j}]"
            if Z.values[label] != z_S / a_i:
                return Theorem1Result(False, reason=RejectReason.SIMPLE_CONSISTENCY,
                                      detail=f"Z({label}) = {Z.values[label]}, expected {z_S / a_i}")
    tau = Z.values["O"]
    if not tau.im > 0:
        return Theorem1Result(False, reason=RejectReason.PHASE_OF_O,
                              detail=f"Z(O) = {tau} is not in the upper half-plane")
    for x in lattice.tilting_vectors(weights):
        got = Z.evaluate(k0.class_of_line(x))
        expected = tau - lattice.deg(weights, x)
        if got != expected:
            return Theorem1Result(False, reason=RejectReason.LINE_BUNDLE_CHARGE,
                                  detail=f"Z(O({lattice.format_lvec(x)})) = {got}, expected {expected}")
    return Theorem1Result(True, tau=tau)


def perturbed_assignments(spec, sigma: StabilityParam) -> dict[RejectReason, ChargeAssignment]:
    """Z_tau with exactly one characterization clause broken, keyed by the expected reason."""
    weights = lattice._weights(spec)
    base = charge_assignment_from_tau(weights, sigma).values
    out = {RejectReason.MASS: ChargeAssignment(weights, {**base, "S": base["S"] + 1})}
    tube_labels = [lbl for lbl in k0.basis_labels(weights) if lbl.startswith("S[")]
    if tube_labels:
        first = tube_labels[0]
        out[RejectReason.SIMPLE_CONSISTENCY] = ChargeAssignment(
            weights, {**base, first: base[first] + Fraction(1, 2)})
    flipped = GaussRat(base["O"].re, -base["O"].im)
    out[RejectReason.PHASE_OF_O] = ChargeAssignment(weights, {**base, "O": flipped})
    return out


def default_sigma(tau: Optional[GaussRat] = None) -> StabilityParam:
    return StabilityParam(tau if tau is not None else GaussRat(*config.DEFAULT_TAU))
