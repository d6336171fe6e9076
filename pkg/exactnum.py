"""
Exact rational and Gaussian-rational arithmetic with angular predicates.

Phases are never stored as floats. A phase is an integer offset (whole
half-turns) plus a nonzero direction in the closed upper half-plane minus the
positive real axis, so its fractional part lies in (0, 1]. Every comparison
reduces to quadrant classification plus the sign of a 2x2 determinant.
"""

import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import total_ordering

from utils import format_rational

Rat = Fraction


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _cmp(a, b) -> Ordering:
    if a < b:
        return Ordering.LT
    if a > b:
        return Ordering.GT
    return Ordering.EQ


def parse_rational(text: str) -> Fraction:
    """Parse '3', '-2/7' or '0.25' into an exact Fraction."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not a rational number: {text!r}") from e


@dataclass(frozen=True)
class GaussRat:
    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def of(cls, value) -> "GaussRat":
        if isinstance(value, GaussRat):
            return value
        return cls(Fraction(value), Fraction(0))

    def __add__(self, other):
        other = GaussRat.of(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussRat.of(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRat.of(other) - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussRat.of(other)
        return GaussRat(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussRat.of(other)
        n = other.norm2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conj()
        return GaussRat(num.re / n, num.im / n)

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm2(self) -> Fraction:
        """|z|^2, exact."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        sign = "-" if self.im < 0 else "+"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"

    def to_json(self):
        return [format_rational(self.re), format_rational(self.im)]


def parse_gauss(text: str) -> GaussRat:
    """Parse 're,im' with rational entries, e.g. '0,1' or '-1/2,3/4'."""
    parts = str(text).split(",")
    if len(parts) != 2:
        raise ValueError(f"Expected 're,im', got {text!r}")
    return GaussRat(parse_rational(parts[0]), parse_rational(parts[1]))


def _arg_class(w: GaussRat) -> int:
    # Rays and open half-planes in increasing principal argument (-pi, pi]
    if w.im < 0:
        return 0
    if w.im == 0:
        return 1 if w.re > 0 else 3
    return 2


def arg_compare(w1: GaussRat, w2: GaussRat) -> Ordering:
    """
    Compare principal arguments in (-pi, pi] exactly.

    Raises ValueError for a zero input.
    """
    if w1.is_zero() or w2.is_zero():
        raise ValueError("arg_compare is undefined for zero")
    c1, c2 = _arg_class(w1), _arg_class(w2)
    if c1 != c2:
        return _cmp(c1, c2)
    if c1 in (1, 3):
        return Ordering.EQ
    # Same open half-plane: angle difference is below pi
    cross = w1.re * w2.im - w1.im * w2.re
    return _cmp(0, cross)


@total_ordering
@dataclass(frozen=True, eq=True)
class Phase:
    """
    phi = offset + arg(dir)/pi with arg(dir) in (0, pi].

    The direction is rescaled to |re| + |im| = 1 so that equal phases are
    equal values.
    """
    offset: int
    dir: GaussRat

    def __post_init__(self):
        d = self.dir
        if d.is_zero():
            raise ValueError("Phase direction must be nonzero")
        if not (d.im > 0 or (d.im == 0 and d.re < 0)):
            raise ValueError(f"Phase direction {d} is outside the half-plane (0, 1]")
        scale = abs(d.re) + abs(d.im)
        object.__setattr__(self, "dir", GaussRat(d.re / scale, d.im / scale))
        object.__setattr__(self, "offset", int(self.offset))

    @classmethod
    def of_charge(cls, z: GaussRat) -> "Phase":
        """Phase of a nonzero complex number, taken in (-1, 1]."""
        if z.is_zero():
            raise ValueError("Zero charge has no phase")
        if z.im > 0 or (z.im == 0 and z.re < 0):
            return cls(0, z)
        return cls(-1, -z)

    def __lt__(self, other):
        if not isinstance(other, Phase):
            return NotImplemented
        return phase_compare(self, other) == Ordering.LT

    def shift(self, k: int) -> "Phase":
        return Phase(self.offset + k, self.dir)

    def as_fraction(self) -> Fraction | None:
        """Exact value when the direction is on an axis or a diagonal, else None."""
        d = self.dir
        if d.re == 0:
            frac = Fraction(1, 2)
        elif d.im == 0:
            frac = Fraction(1)
        elif d.re == d.im:
            frac = Fraction(1, 4)
        elif d.re == -d.im:
            frac = Fraction(3, 4)
        else:
            return None
        return self.offset + frac

    def __float__(self):
        return phase_float(self)

    def __str__(self):
        exact = self.as_fraction()
        if exact is not None:
            return format_rational(exact)
        return f"{self.offset}+arg({self.dir})/pi"

    def to_json(self):
        exact = self.as_fraction()
        return {
            "offset": self.offset,
            "dir": self.dir.to_json(),
            "exact": format_rational(exact) if exact is not None else None,
            "float": phase_float(self),
        }


def phase_compare(p1: Phase, p2: Phase) -> Ordering:
    if p1.offset != p2.offset:
        return _cmp(p1.offset, p2.offset)
    return arg_compare(p1.dir, p2.dir)


def phase_float(p: Phase) -> float:
    """Display only; never used for decisions."""
    return p.offset + math.atan2(float(p.dir.im), float(p.dir.re)) / math.pi


def phase_difference(later: Phase, earlier: Phase) -> tuple[Phase, GaussRat]:
    """
    Exact later - earlier, returned as a Phase together with the ratio
    witness w = dir_later * conj(dir_earlier).
    """
    w = later.dir * earlier.dir.conj()
    # arg difference lies in (-pi, pi), so the principal argument of w is exact
    frac = Phase.of_charge(w)
    return frac.shift(later.offset - earlier.offset), w


def rotate_charge(z: GaussRat, s: Fraction) -> GaussRat:
    """z * exp(-i*pi*s) for s a multiple of 1/2."""
    s = Fraction(s)
    if (2 * s).denominator != 1:
        raise ValueError(f"Exact rotation needs s in (1/2)Z, got {s}")
    quarter = int(2 * s) % 4
    factor = [GaussRat(1, 0), GaussRat(0, -1), GaussRat(-1, 0), GaussRat(0, 1)][quarter]
    return z * factor


def shift_phase(p: Phase, s: Fraction) -> Phase:
    """
    Phase after the C-action by s in (1/2)Z: an object at phase phi moves
    to phi - s, matching rotate_charge on its charge.
    """
    s = Fraction(s)
    if (2 * s).denominator != 1:
        raise ValueError(f"Exact shift needs s in (1/2)Z, got {s}")
    k = math.floor(s)
    if s == k:
        return p.shift(-k)
    half = Phase.of_charge(p.dir * GaussRat(0, -1))
    return half.shift(p.offset - k)
