"""Subgroup-lattice recurrences as independent oracles for the ring.

The basis product and the basic degrees are recomputed here from raw
lattice data (Weyl-group orders |W(H)| and containment counts n(H, K))
instead of the closed multiplication rules, via downward recurrences
over the class order.  For the product of classes H and K, coefficients
are computed from the maximal class downward:

    n_L = ( n(L,H)|W(H)| * n(L,K)|W(K)|
            - sum over classes M above L of n_M * n(L,M) * |W(M)| ) / |W(L)|

and for the degree element of the m-th irreducible representation the
leading term is replaced by (-1)**dim(fixed space of L in V_m):

    n_L = ( (-1)**dim V_m^L
            - sum over classes M above L of n_M * n(L,M) * |W(M)| ) / |W(L)|

Every division must be exact; a remainder means the lattice data is
inconsistent.  The lattice fixture for O(2) is certified purely by
these recurrences reproducing the direct rules in `burnside`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .burnside import (
    IDENTITY,
    O2,
    SO2,
    BurnsideElement,
    D,
    Generator,
    basic_degree,
)

__all__ = [
    "LatticeConsistencyError",
    "LatticeData",
    "o2_lattice",
    "recurrence_mul",
    "FixedPointTable",
    "fixed_point_dims",
    "basic_degree_recurrence",
    "linear_iso_degree",
]


class LatticeConsistencyError(ArithmeticError):
    """A recurrence division left a remainder: the lattice data is wrong."""


@dataclass(frozen=True)
class LatticeData:
    """Weyl orders and containment counts over a finite class range.

    `classes` is stored in descending order (O2 first, then SO2, then
    D(max_index) down to D(1)), the order in which the recurrences
    compute coefficients.
    """

    max_index: int
    classes: tuple[Generator, ...]
    weyl: dict[Generator, int]
    contains: dict[tuple[Generator, Generator], int]

    def weyl_order(self, h: Generator) -> int:
        return self.weyl[h]

    def contains_count(self, h: Generator, k: Generator) -> int:
        """Number of subgroups in class k containing a fixed member of h."""
        return self.contains.get((h, k), 0)

    def leq(self, h: Generator, k: Generator) -> bool:
        """Class partial order: h is (conjugate to) a subgroup of k."""
        if h == k or k == O2:
            return True
        if h == O2:
            return False
        if h == SO2 or k == SO2:
            return False  # dihedral classes and SO2 are incomparable
        return k.index % h.index == 0

    def _check_member(self, g: Generator) -> None:
        if g.is_dihedral and g.index > self.max_index:
            raise ValueError(
                f"generator {g.label} is outside the lattice range (max {self.max_index})"
            )


def o2_lattice(max_index: int) -> LatticeData:
    """Lattice fixture over {D(1..max_index), SO2, O2}.

    Weyl orders are 2 for every dihedral class and for SO2, 1 for O2.
    A dihedral D(k) lies in exactly one conjugate of D(m) when k divides
    m, in O2 itself, and in no conjugate of SO2 (rotations only).
    """
    if max_index < 1:
        raise ValueError(f"max_index must be >= 1, got {max_index}")
    dihedrals = [D(k) for k in range(1, max_index + 1)]
    classes = (O2, SO2, *reversed(dihedrals))
    weyl: dict[Generator, int] = {O2: 1, SO2: 2}
    weyl.update({g: 2 for g in dihedrals})
    contains: dict[tuple[Generator, Generator], int] = {
        (O2, O2): 1,
        (SO2, SO2): 1,
        (SO2, O2): 1,
    }
    for g in dihedrals:
        contains[(g, O2)] = 1
        for h in dihedrals:
            if h.index % g.index == 0:
                contains[(g, h)] = 1
    return LatticeData(max_index=max_index, classes=classes, weyl=weyl, contains=contains)


def _descend(
    lattice: LatticeData, leading: Mapping[Generator, int]
) -> BurnsideElement:
    """Shared downward solve: peel coefficients off class by class."""
    coeffs: dict[Generator, int] = {}
    seen: list[Generator] = []
    for cls in lattice.classes:
        acc = 0
        for above in seen:
            c = coeffs.get(above, 0)
            if c:
                acc += c * lattice.contains_count(cls, above) * lattice.weyl[above]
        numerator = leading[cls] - acc
        quotient, remainder = divmod(numerator, lattice.weyl[cls])
        if remainder:
            raise LatticeConsistencyError(
                f"non-integral coefficient at {cls.label}: "
                f"{numerator} / {lattice.weyl[cls]}"
            )
        if quotient:
            coeffs[cls] = quotient
        seen.append(cls)
    return BurnsideElement(coeffs)


def recurrence_mul(h: Generator, k: Generator, lattice: LatticeData) -> BurnsideElement:
    """Product of two basis classes computed from the lattice alone."""
    lattice._check_member(h)
    lattice._check_member(k)
    wh = lattice.weyl[h]
    wk = lattice.weyl[k]
    leading = {
        cls: lattice.contains_count(cls, h) * wh * lattice.contains_count(cls, k) * wk
        for cls in lattice.classes
    }
    return _descend(lattice, leading)


@dataclass(frozen=True)
class FixedPointTable:
    """Real dimensions of fixed-point spaces of the irreducibles.

    The m-th nontrivial irreducible is the plane with the m-folded
    action: a rotation by theta acts as rotation by m*theta and a
    reflection as conjugation.  D(k) fixes the real axis when k divides
    m and nothing otherwise; rotations fix nothing; everything fixes
    the trivial representation (m = 0).
    """

    max_irrep: int
    max_index: int
    dims: dict[tuple[int, Generator], int]

    def dim(self, m: int, h: Generator) -> int:
        if not 0 <= m <= self.max_irrep:
            raise ValueError(f"irrep index {m} outside table range 0..{self.max_irrep}")
        if h.is_dihedral and h.index > self.max_index:
            raise ValueError(f"{h.label} outside table range (max {self.max_index})")
        return self.dims[(m, h)]


def fixed_point_dims(max_irrep: int, max_index: int) -> FixedPointTable:
    if max_irrep < 1 or max_index < 1:
        raise ValueError("table bounds must be >= 1")
    dims: dict[tuple[int, Generator], int] = {}
    groups = [O2, SO2, *(D(k) for k in range(1, max_index + 1))]
    for h in groups:
        dims[(0, h)] = 1
    for m in range(1, max_irrep + 1):
        dims[(m, O2)] = 0
        dims[(m, SO2)] = 0
        for k in range(1, max_index + 1):
            dims[(m, D(k))] = 1 if m % k == 0 else 0
    return FixedPointTable(max_irrep=max_irrep, max_index=max_index, dims=dims)


def basic_degree_recurrence(
    m: int, lattice: LatticeData, dims: FixedPointTable
) -> BurnsideElement:
    """Degree element of the m-th irreducible from fixed-point data.

    The leading term of each class L is (-1)**dim V_m^L, the degree of
    minus-identity on the fixed space.  For the trivial representation
    the degree element is the ring identity by convention, matching
    basic_degree(0).
    """
    if m < 0:
        raise ValueError(f"representation index must be >= 0, got {m}")
    if m == 0:
        return IDENTITY
    if m > dims.max_irrep:
        raise ValueError(f"irrep index {m} outside table range 0..{dims.max_irrep}")
    if m > lattice.max_index or lattice.max_index > dims.max_index:
        raise ValueError("lattice range must cover the irrep index and the dims table")
    leading = {cls: (-1) ** dims.dim(m, cls) for cls in lattice.classes}
    return _descend(lattice, leading)


def _power(base: BurnsideElement, exponent: int) -> BurnsideElement:
    result = IDENTITY
    square = base
    while exponent:
        if exponent & 1:
            result = result * square
        square = square * square
        exponent >>= 1
    return result


def linear_iso_degree(multiplicities: Mapping[int, int]) -> BurnsideElement:
    """Degree of an equivariant linear isomorphism from its spectrum.

    `multiplicities` maps each irreducible index to the total number of
    copies of that irreducible across the negative eigenspaces.  The
    degree is the product of the matching basic degrees raised to those
    multiplicities; since each basic degree squares to the identity,
    only the odd multiplicities survive.
    """
    result = IDENTITY
    for index, mult in sorted(multiplicities.items()):
        if index < 0:
            raise ValueError(f"irrep index must be >= 0, got {index}")
        if mult < 0:
            raise ValueError(f"multiplicity must be >= 0, got {mult}")
        result = result * _power(basic_degree(index), mult)
    return result
