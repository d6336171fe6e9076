"""
Dimensions of Hom and Ext^1 between catalogued sheaves.

Line bundles: Hom(O(x), O(y)) is the (y - x)-graded piece of S_{A,Lambda}.
Torsion rows come from the defining sequences of S_lambda and S_{i,j} by long
exact sequences; coh is hereditary, so Ext^1 is the last term. Ext^1 itself
is computed through Serre duality, Ext^1(E, F) = D Hom(F, E (x) O(omega)).

None means "unknown": pairs involving an uncatalogued bundle are never guessed.
"""

from dataclasses import dataclass
from typing import Optional

import lattice
from k0 import Bundle, GenericTorsion, Line, SheafObject, TubeTorsion, twist
from lattice import LVec


def graded_dim(x: LVec) -> int:
    """
    dim of the x-graded piece: monomials X_1^{m_1} X_2^{m_2} prod X_i^{l_i}
    with m_1 = l_1 + k_1 a_1, m_2 = l_2 + k_2 a_2, k_1 + k_2 = l.
    """
    return x.l + 1 if x.l >= 0 else 0


def _count_residue(length: int, residue: int, p: int) -> int:
    # #{k in [0, length) : k = residue mod p}, residue already in [0, p)
    if residue >= length:
        return 0
    return (length - 1 - residue) // p + 1


def _line_to_tube(x: LVec, t: TubeTorsion) -> int:
    # Hom(O(x), S_{i,k}) != 0 exactly for k = l_i(x) - 1
    p = t.weights[t.i - 1]
    residue = (x.parts[t.i - 1] - 1 - t.j) % p
    return _count_residue(t.n, residue, p)


def _tube_to_tube(e: TubeTorsion, f: TubeTorsion) -> int:
    """
    Image of a map is a top quotient of e and a socle submodule of f. A length-t
    quotient of e has socle j + n - t, so count t in [1, min(n, n')] with
    t = j + n - j' mod p.
    """
    p = e.weights[e.i - 1]
    m = min(e.n, f.n)
    s = (e.j + e.n - f.j) % p or p
    if s > m:
        return 0
    return (m - s) // p + 1


def hom_dim(E: SheafObject, F: SheafObject) -> Optional[int]:
    if E.weights != F.weights:
        raise ValueError(f"Weight mismatch: {E.weights} vs {F.weights}")
    if isinstance(E, Bundle) or isinstance(F, Bundle):
        return None
    if isinstance(E, Line):
        if isinstance(F, Line):
            return graded_dim(lattice.sub(F.x, E.x))
        if isinstance(F, GenericTorsion):
            return F.n
        return _line_to_tube(E.x, F)
    # torsion has no maps to torsion-free sheaves
    if isinstance(F, Line):
        return 0
    if isinstance(E, GenericTorsion) and isinstance(F, GenericTorsion):
        return min(E.n, F.n) if E.point == F.point else 0
    if isinstance(E, TubeTorsion) and isinstance(F, TubeTorsion):
        return _tube_to_tube(E, F) if E.i == F.i else 0
    return 0


def ext1_dim(E: SheafObject, F: SheafObject) -> Optional[int]:
    omega = lattice.omega(E.weights)
    return hom_dim(F, twist(E, omega))


@dataclass(frozen=True)
class HomQuery:
    source: SheafObject
    target: SheafObject
    ext_degree: int = 0

    def __post_init__(self):
        if self.ext_degree not in (0, 1):
            raise ValueError(f"coh is hereditary: ext degree must be 0 or 1, got {self.ext_degree}")

    def dim(self) -> Optional[int]:
        if self.ext_degree == 0:
            return hom_dim(self.source, self.target)
        return ext1_dim(self.source, self.target)
