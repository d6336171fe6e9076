"""
The weight lattice L_A = (+) Z x_i / <a_i x_i - a_j x_j>.

Every element has a unique normal form l*c + sum l_i*x_i with 0 <= l_i < a_i.
Weight-1 entries are allowed: x_i with a_i = 1 equals c and normalizes into l.
Point labels (Lambda) are stored on WeightSpec but never enter a computation:
graded dimensions and charges do not depend on them.
"""

import itertools
import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Sequence

INFINITY_LABELS = {"inf", "infinity", "∞"}


class TypeClass(str, Enum):
    DOMESTIC = "Domestic"
    TUBULAR = "Tubular"
    WILD = "Wild"


@dataclass(frozen=True)
class WeightSpec:
    weights: tuple[int, ...]
    lambda_labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        weights = tuple(int(a) for a in self.weights)
        if len(weights) < 3:
            raise ValueError(f"Need at least 3 weights, got {weights}")
        if any(a < 1 for a in weights):
            raise ValueError(f"Weights must be positive integers, got {weights}")
        object.__setattr__(self, "weights", weights)

        if self.lambda_labels is not None:
            labels = tuple(str(x).strip() for x in self.lambda_labels)
            labels = tuple("∞" if x.lower() in INFINITY_LABELS else x for x in labels)
            if len(labels) != len(weights):
                raise ValueError(f"Expected {len(weights)} point labels, got {len(labels)}")
            if len(set(labels)) != len(labels):
                raise ValueError(f"Point labels must be pairwise distinct: {labels}")
            if labels[:3] != ("∞", "0", "1"):
                raise ValueError(f"First three labels must be normalized to ∞, 0, 1: {labels[:3]}")
            object.__setattr__(self, "lambda_labels", labels)

    @property
    def r(self) -> int:
        return len(self.weights)

    @property
    def a(self) -> int:
        return math.lcm(*self.weights)

    def __str__(self):
        return format_weights(self)


@dataclass(frozen=True)
class LVec:
    """Normal form l*c + sum parts[i]*x_{i+1}; only the weights are kept for mismatch checks."""
    weights: tuple[int, ...]
    l: int
    parts: tuple[int, ...]

    def __post_init__(self):
        if len(self.parts) != len(self.weights):
            raise ValueError(f"LVec has {len(self.parts)} parts for {len(self.weights)} weights")
        for p, a in zip(self.parts, self.weights):
            if not 0 <= p < a:
                raise ValueError(f"Residue {p} not in [0, {a}) - use normalize()")

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return neg(self)

    def __str__(self):
        return format_lvec(self)


def _weights(spec) -> tuple[int, ...]:
    return spec.weights if isinstance(spec, (WeightSpec, LVec)) else tuple(spec)


def normalize(spec, c_mult: int, raw_parts: Sequence[int]) -> LVec:
    """Normal form of c_mult*c + sum raw_parts[i]*x_i (Euclidean division with carries)."""
    weights = _weights(spec)
    if len(raw_parts) != len(weights):
        raise ValueError(f"Expected {len(weights)} coefficients, got {len(raw_parts)}")
    l = int(c_mult)
    parts = []
    for raw, a in zip(raw_parts, weights):
        carry, rem = divmod(int(raw), a)
        l += carry
        parts.append(rem)
    return LVec(weights, l, tuple(parts))


def zero(spec) -> LVec:
    weights = _weights(spec)
    return LVec(weights, 0, (0,) * len(weights))


def canonical(spec) -> LVec:
    weights = _weights(spec)
    return LVec(weights, 1, (0,) * len(weights))


def x_i(spec, i: int) -> LVec:
    """The generator x_i (1-based index)."""
    weights = _weights(spec)
    if not 1 <= i <= len(weights):
        raise ValueError(f"Index {i} out of range 1..{len(weights)}")
    raw = [0] * len(weights)
    raw[i - 1] = 1
    return normalize(weights, 0, raw)


def omega(spec) -> LVec:
    """The dualizing element (r - 2)c - sum x_i."""
    weights = _weights(spec)
    r = len(weights)
    return normalize(weights, r - 2, [-1] * r)


def _check_same(x: LVec, y: LVec) -> None:
    if x.weights != y.weights:
        raise ValueError(f"Weight mismatch: {x.weights} vs {y.weights}")


def add(x: LVec, y: LVec) -> LVec:
    _check_same(x, y)
    return normalize(x.weights, x.l + y.l, [p + q for p, q in zip(x.parts, y.parts)])


def neg(x: LVec) -> LVec:
    return normalize(x.weights, -x.l, [-p for p in x.parts])


def sub(x: LVec, y: LVec) -> LVec:
    _check_same(x, y)
    return normalize(x.weights, x.l - y.l, [p - q for p, q in zip(x.parts, y.parts)])


def scale(x: LVec, k: int) -> LVec:
    return normalize(x.weights, k * x.l, [k * p for p in x.parts])


def deg(spec, x: LVec) -> int:
    weights = _weights(spec)
    a = math.lcm(*weights)
    return x.l * a + sum(p * (a // ai) for p, ai in zip(x.parts, weights))


def euler_char(spec) -> Fraction:
    """chi_A = 2 + sum (1/a_i - 1)."""
    return 2 + sum(Fraction(1, a) - 1 for a in _weights(spec))


def classify(spec) -> TypeClass:
    chi = euler_char(spec)
    if chi > 0:
        return TypeClass.DOMESTIC
    if chi == 0:
        return TypeClass.TUBULAR
    return TypeClass.WILD


def is_effective(x: LVec) -> bool:
    # parts are nonnegative in normal form
    return x.l >= 0


def leq(x: LVec, y: LVec) -> bool:
    return is_effective(sub(y, x))


def fractional_cy(spec) -> Optional[tuple[int, int]]:
    """
    (a, a) when the Serre functor satisfies S^a = [a], i.e. a*omega = 0 in L_A.
    """
    weights = _weights(spec)
    a = math.lcm(*weights)
    if scale(omega(weights), a) == zero(weights):
        return (a, a)
    return None


def _layer_order(L: int) -> list[int]:
    order = [0]
    for k in range(1, L + 1):
        order.extend([k, -k])
    return order


def normal_forms(spec, L: int) -> Iterator[LVec]:
    """All normal forms with |l| <= L, in order l = 0, 1, -1, 2, -2, ..., parts lexicographic."""
    weights = _weights(spec)
    residues = [range(a) for a in weights]
    for l in _layer_order(L):
        for parts in itertools.product(*residues):
            yield LVec(weights, l, tuple(parts))


def tilting_vectors(spec) -> list[LVec]:
    """0, x_1, ..., (a_1-1)x_1, ..., x_r, ..., (a_r-1)x_r, c."""
    weights = _weights(spec)
    vectors = [zero(weights)]
    for i, a in enumerate(weights, start=1):
        for j in range(1, a):
            vectors.append(scale(x_i(weights, i), j))
    vectors.append(canonical(weights))
    return vectors


# --- text syntax ---------------------------------------------------------

def parse_weights(text: str) -> WeightSpec:
    try:
        weights = tuple(int(w) for w in str(text).replace(" ", "").split(",") if w)
    except ValueError as e:
        raise ValueError(f"Malformed weight list: {text!r}") from e
    return WeightSpec(weights)


def format_weights(spec) -> str:
    return ",".join(str(a) for a in _weights(spec))


_TERM = re.compile(r"([+-]?)(\d*)\*?(c|x(\d+))")


def parse_lvec(spec, text: str) -> LVec:
    """
    Parse 'l*c + l1*x1 + ... + lr*xr' (any subset of terms, any order,
    coefficients optional, terms after the first joined by + or -) and return
    the normal form. '0' is the zero vector.
    """
    weights = _weights(spec)
    compact = str(text).replace(" ", "")
    if compact in ("0", ""):
        return zero(weights)
    c_mult = 0
    raw = [0] * len(weights)
    pos = 0
    for m in _TERM.finditer(compact):
        if m.start() != pos or (pos and not m.group(1)):
            break
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign * (int(m.group(2)) if m.group(2) else 1)
        if m.group(3) == "c":
            c_mult += coeff
        else:
            i = int(m.group(4))
            if not 1 <= i <= len(weights):
                raise ValueError(f"x{i} is out of range for weights {weights}")
            raw[i - 1] += coeff
        pos = m.end()
    if pos != len(compact):
        raise ValueError(f"Malformed lattice vector: {text!r}")
    return normalize(weights, c_mult, raw)


def format_lvec(x: LVec) -> str:
    """'-2*c+1*x1+2*x2+6*x3'; zero residues are omitted."""
    text = f"{x.l}*c"
    for i, p in enumerate(x.parts, start=1):
        if p:
            text += f"+{p}*x{i}"
    return text
