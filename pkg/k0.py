"""
Grothendieck group K_0 of the orbifold projective line.

Basis: [O], [S_lambda] and [S_{i,j}] for 1 <= j <= a_i - 1. The class of the
remaining simple at each orbifold point is eliminated through
    [S_{i,0}] = [S_lambda] - sum_{j=1}^{a_i-1} [S_{i,j}].

Line bundle classes follow from the sequences
    0 -> O(x) -> O(x + c)   -> S_lambda          -> 0
    0 -> O(x) -> O(x + x_i) -> S_{i, l_i(x)}     -> 0
which give [O(x)] = [O] + l[S_lambda] + sum_i sum_{j=0}^{l_i - 1} [S_{i,j}].
Note the upper bound l_i - 1: summing up to l_i would already give
[O(x_i)] = [O] + [S_{i,0}] + [S_{i,1}], contradicting the second sequence.
"""

import math
import re
from dataclasses import dataclass
from typing import Union

import lattice
from lattice import LVec

GENERIC_POINT = "*"


@dataclass(frozen=True)
class K0Class:
    weights: tuple[int, ...]
    coeff_O: int
    coeff_S: int
    tube: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.tube) != len(self.weights):
            raise ValueError("One tube block per weight is required")
        for block, a in zip(self.tube, self.weights):
            if len(block) != a - 1:
                raise ValueError(f"Tube block of weight {a} needs {a - 1} entries, got {len(block)}")

    def vector(self) -> tuple[int, ...]:
        flat = [self.coeff_O, self.coeff_S]
        for block in self.tube:
            flat.extend(block)
        return tuple(flat)

    @classmethod
    def from_vector(cls, weights, vec) -> "K0Class":
        weights = tuple(weights)
        if len(vec) != k0_rank(weights):
            raise ValueError(f"Expected {k0_rank(weights)} coordinates, got {len(vec)}")
        tube, pos = [], 2
        for a in weights:
            tube.append(tuple(vec[pos:pos + a - 1]))
            pos += a - 1
        return cls(weights, vec[0], vec[1], tuple(tube))

    def _combine(self, other, sign: int) -> "K0Class":
        if self.weights != other.weights:
            raise ValueError(f"Weight mismatch: {self.weights} vs {other.weights}")
        return K0Class.from_vector(
            self.weights, [u + sign * v for u, v in zip(self.vector(), other.vector())]
        )

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, k: int):
        return K0Class.from_vector(self.weights, [k * v for v in self.vector()])

    __rmul__ = __mul__

    def with_entry(self, index: int, value: int) -> "K0Class":
        vec = list(self.vector())
        vec[index] = value
        return K0Class.from_vector(self.weights, vec)

    def is_zero(self) -> bool:
        return not any(self.vector())

    def to_json(self):
        return dict(zip(basis_labels(self.weights), self.vector()))


def k0_rank(weights) -> int:
    """2 + sum (a_i - 1), the size of the canonical tilting collection."""
    return 2 + sum(a - 1 for a in weights)


def basis_labels(spec) -> list[str]:
    weights = lattice._weights(spec)
    labels = ["O", "S"]
    for i, a in enumerate(weights, start=1):
        labels.extend(f"S[{i},{j}]" for j in range(1, a))
    return labels


def zero_class(spec) -> K0Class:
    weights = lattice._weights(spec)
    return K0Class.from_vector(weights, [0] * k0_rank(weights))


def unit_O(spec) -> K0Class:
    return zero_class(spec).with_entry(0, 1)


def unit_S(spec) -> K0Class:
    return zero_class(spec).with_entry(1, 1)


def simple_class(spec, i: int, j: int) -> K0Class:
    """[S_{i,j}] with j taken mod a_i; j = 0 is expanded via the tube relation."""
    weights = lattice._weights(spec)
    a_i = weights[i - 1]
    j %= a_i
    if j == 0:
        vec = list(unit_S(weights).vector())
        offset = 2 + sum(a - 1 for a in weights[:i - 1])
        for k in range(a_i - 1):
            vec[offset + k] = -1
        return K0Class.from_vector(weights, vec)
    offset = 2 + sum(a - 1 for a in weights[:i - 1])
    return zero_class(weights).with_entry(offset + j - 1, 1)


# --- catalogued objects --------------------------------------------------

@dataclass(frozen=True)
class Line:
    x: LVec
    kind = "line"

    @property
    def weights(self):
        return self.x.weights


@dataclass(frozen=True)
class GenericTorsion:
    """Length-n sheaf at a point outside Lambda; all factors are S_lambda."""
    weights: tuple[int, ...]
    n: int = 1
    point: str = GENERIC_POINT
    kind = "generic"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"Torsion length must be positive, got {self.n}")


@dataclass(frozen=True)
class TubeTorsion:
    """
    Uniserial sheaf at the orbifold point i with socle S_{i,j} and length n.
    Composition factors from the socle up: S_{i,j}, S_{i,j+1}, ..., S_{i,j+n-1}.
    """
    weights: tuple[int, ...]
    i: int
    j: int
    n: int = 1
    kind = "tube"

    def __post_init__(self):
        if not 1 <= self.i <= len(self.weights):
            raise ValueError(f"Tube index {self.i} out of range 1..{len(self.weights)}")
        if not 0 <= self.j < self.weights[self.i - 1]:
            raise ValueError(f"Socle index {self.j} not in [0, {self.weights[self.i - 1]})")
        if self.n < 1:
            raise ValueError(f"Torsion length must be positive, got {self.n}")

    @property
    def top(self) -> int:
        return (self.j + self.n - 1) % self.weights[self.i - 1]


@dataclass(frozen=True)
class Bundle:
    """
    An indecomposable bundle of rank >= 2 known only by rank and degree.
    Never catalogued; Hom dimensions involving it are unknown.
    """
    weights: tuple[int, ...]
    rank: int
    degree: int
    label: str = "E"
    kind = "bundle"

    def __post_init__(self):
        if self.rank < 2:
            raise ValueError(f"Bundle rank must be at least 2, got {self.rank}")


SheafObject = Union[Line, GenericTorsion, TubeTorsion, Bundle]


def is_torsion(obj: SheafObject) -> bool:
    return isinstance(obj, (GenericTorsion, TubeTorsion))


def class_of_line(x: LVec) -> K0Class:
    weights = x.weights
    cls = unit_O(weights) + x.l * unit_S(weights)
    for i, l_i in enumerate(x.parts, start=1):
        for j in range(l_i):
            cls = cls + simple_class(weights, i, j)
    return cls


def class_of(obj: SheafObject) -> K0Class:
    if isinstance(obj, Line):
        return class_of_line(obj.x)
    if isinstance(obj, GenericTorsion):
        return obj.n * unit_S(obj.weights)
    if isinstance(obj, TubeTorsion):
        cls = zero_class(obj.weights)
        for k in range(obj.n):
            cls = cls + simple_class(obj.weights, obj.i, obj.j + k)
        return cls
    raise ValueError(f"Class of {format_object(obj)} is not determined by rank and degree")


def rank(cls: K0Class) -> int:
    return cls.coeff_O


def degree(cls: K0Class) -> int:
    a = math.lcm(*cls.weights)
    total = a * cls.coeff_S
    for block, a_i in zip(cls.tube, cls.weights):
        total += (a // a_i) * sum(block)
    return total


def rank_degree(obj: SheafObject) -> tuple[int, int]:
    if isinstance(obj, Bundle):
        return obj.rank, obj.degree
    cls = class_of(obj)
    return rank(cls), degree(cls)


def twist(obj: SheafObject, y: LVec) -> SheafObject:
    """obj (x) O(y)."""
    if obj.weights != y.weights:
        raise ValueError(f"Weight mismatch: {obj.weights} vs {y.weights}")
    if isinstance(obj, Line):
        return Line(lattice.add(obj.x, y))
    if isinstance(obj, GenericTorsion):
        return obj
    if isinstance(obj, TubeTorsion):
        a_i = obj.weights[obj.i - 1]
        return TubeTorsion(obj.weights, obj.i, (obj.j + y.parts[obj.i - 1]) % a_i, obj.n)
    return Bundle(obj.weights, obj.rank, obj.degree + obj.rank * lattice.deg(y.weights, y), obj.label)


def composition_factors(obj: SheafObject) -> list[str]:
    """Simple factors from the socle up, as basis-style labels."""
    if isinstance(obj, GenericTorsion):
        return ["S"] * obj.n
    if isinstance(obj, TubeTorsion):
        a_i = obj.weights[obj.i - 1]
        return [f"S[{obj.i},{(obj.j + k) % a_i}]" for k in range(obj.n)]
    raise ValueError("Only torsion objects have a composition series here")


def tilting_coordinates(cls: K0Class) -> dict[LVec, int]:
    """Coordinates in the tilting basis {[O(x)] : 0 <= x <= c}."""
    weights = cls.weights
    vectors = lattice.tilting_vectors(weights)
    coords = {v: 0 for v in vectors}
    o, c = lattice.zero(weights), lattice.canonical(weights)
    coords[o] += cls.coeff_O
    # [S] = [O(c)] - [O]
    coords[c] += cls.coeff_S
    coords[o] -= cls.coeff_S
    for i, block in enumerate(cls.tube, start=1):
        gen = lattice.x_i(weights, i)
        for j, coeff in enumerate(block, start=1):
            # [S_{i,j}] = [O((j+1)x_i)] - [O(j x_i)]
            coords[lattice.scale(gen, j + 1)] += coeff
            coords[lattice.scale(gen, j)] -= coeff
    return coords


# --- literals -------------------------------------------------------------

_LINE = re.compile(r"^O\((.*)\)$")
_SIMPLE = re.compile(r"^S\[(\*|\d+,\d+)(?:;(\d+))?\]$")


def parse_object(spec, text: str) -> SheafObject:
    """O(<lvec>), S[*], S[*;n], S[i,j], S[i,j;n]."""
    weights = lattice._weights(spec)
    compact = str(text).replace(" ", "")
    m = _LINE.match(compact)
    if m:
        return Line(lattice.parse_lvec(weights, m.group(1)))
    m = _SIMPLE.match(compact)
    if not m:
        raise ValueError(f"Malformed object literal: {text!r}")
    n = int(m.group(2)) if m.group(2) else 1
    if m.group(1) == "*":
        return GenericTorsion(weights, n)
    i, j = (int(v) for v in m.group(1).split(","))
    if not 1 <= i <= len(weights):
        raise ValueError(f"Tube index {i} out of range for weights {weights}")
    return TubeTorsion(weights, i, j % weights[i - 1], n)


def format_object(obj: SheafObject) -> str:
    if isinstance(obj, Line):
        return f"O({lattice.format_lvec(obj.x)})"
    if isinstance(obj, GenericTorsion):
        return "S[*]" if obj.n == 1 else f"S[*;{obj.n}]"
    if isinstance(obj, TubeTorsion):
        return f"S[{obj.i},{obj.j}]" if obj.n == 1 else f"S[{obj.i},{obj.j};{obj.n}]"
    return f"{obj.label}(rank={obj.rank},deg={obj.degree})"
