"""Exact arithmetic in the Burnside ring of O(2).

The ring is the free Z-module on the subgroup classes with finite Weyl
group: the dihedral classes D(1), D(2), ..., the rotation class SO2 and
the full class O2.  Products of basis classes:

    O2 * x      = x                 (multiplicative identity)
    SO2 * SO2   = 2*SO2
    SO2 * D(m)  = 0
    D(k) * D(m) = 2*D(gcd(k, m))

extended bilinearly.  Elements are kept in canonical sparse form (no
zero coefficients stored), so equality is structural equality.

Canonical text rendering, one term per line in ascending basis order
D1 < D2 < ... < SO2 < O2, e.g. for O2 + 2*D1 - D3:

    D1 2
    D3 -1
    O2 1

The zero element renders as the single line ``0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Generator",
    "D",
    "SO2",
    "O2",
    "BurnsideElement",
    "ZERO",
    "IDENTITY",
    "ElementFormatError",
    "KeySet",
    "as_key_set",
    "basic_degree",
    "key_element",
    "key_coeff",
    "key_coeff_bruteforce",
    "key_coeff_fold",
    "DEFAULT_SUBSET_CAP",
]

# Family tags; their numeric order gives the basis order D(k) < SO2 < O2.
_DIHEDRAL = 0
_ROTATION = 1
_FULL = 2


class ElementFormatError(ValueError):
    """Raised when canonical element text cannot be parsed."""


@dataclass(frozen=True, order=True)
class Generator:
    """Basis class of the ring: a dihedral class D(k), SO2 or O2."""

    family: int
    index: int = 0

    def __post_init__(self) -> None:
        if self.family == _DIHEDRAL:
            if self.index < 1:
                raise ValueError(f"dihedral index must be >= 1, got {self.index}")
        elif self.family in (_ROTATION, _FULL):
            if self.index != 0:
                raise ValueError("SO2/O2 carry no index")
        else:
            raise ValueError(f"unknown generator family {self.family}")

    @property
    def is_dihedral(self) -> bool:
        return self.family == _DIHEDRAL

    @property
    def label(self) -> str:
        if self.family == _DIHEDRAL:
            return f"D{self.index}"
        return "SO2" if self.family == _ROTATION else "O2"

    def __repr__(self) -> str:
        return self.label


SO2 = Generator(_ROTATION)
O2 = Generator(_FULL)

_D_CACHE: dict[int, Generator] = {}


def D(k: int) -> Generator:
    """The dihedral basis class D(k), k >= 1."""
    g = _D_CACHE.get(k)
    if g is None:
        g = _D_CACHE[k] = Generator(_DIHEDRAL, k)
    return g


def _parse_generator(token: str) -> Generator:
    if token == "O2":
        return O2
    if token == "SO2":
        return SO2
    if token.startswith("D") and token[1:].isdigit():
        k = int(token[1:])
        if k >= 1:
            return D(k)
    raise ElementFormatError(f"unknown generator label {token!r}")


class BurnsideElement:
    """Finitely supported integer combination of basis classes.

    Values are immutable; all arithmetic returns new elements in
    canonical form.  Python integers are unbounded, so coefficient
    arithmetic is exact at any size.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Generator, int] = ()):
        clean: dict[Generator, int] = {}
        for g, c in dict(terms).items():
            if not isinstance(g, Generator):
                raise TypeError(f"term key must be a Generator, got {g!r}")
            if not isinstance(c, int):
                raise TypeError(f"coefficient must be an int, got {c!r}")
            if c:
                clean[g] = c
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict[Generator, int]) -> BurnsideElement:
        # Internal fast path: `terms` must already be canonical.
        elem = cls.__new__(cls)
        elem._terms = terms
        return elem

    def coeff(self, g: Generator) -> int:
        """Coefficient of the basis class `g`, 0 if absent."""
        return self._terms.get(g, 0)

    def support(self) -> tuple[Generator, ...]:
        """Basis classes with nonzero coefficient, in ascending order."""
        return tuple(sorted(self._terms))

    def terms(self) -> tuple[tuple[Generator, int], ...]:
        """(generator, coefficient) pairs in ascending basis order."""
        return tuple(sorted(self._terms.items()))

    def dihedral_indices(self) -> tuple[int, ...]:
        """Indices k with a nonzero D(k) coefficient, ascending."""
        return tuple(sorted(g.index for g in self._terms if g.family == _DIHEDRAL))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: BurnsideElement) -> BurnsideElement:
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        acc = dict(self._terms)
        for g, c in other._terms.items():
            s = acc.get(g, 0) + c
            if s:
                acc[g] = s
            elif g in acc:
                del acc[g]
        return BurnsideElement._raw(acc)

    def __neg__(self) -> BurnsideElement:
        return BurnsideElement._raw({g: -c for g, c in self._terms.items()})

    def __sub__(self, other: BurnsideElement) -> BurnsideElement:
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: BurnsideElement | int) -> BurnsideElement:
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return BurnsideElement._raw({g: c * other for g, c in self._terms.items()})
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        acc: dict[Generator, int] = {}
        for g, a in self._terms.items():
            gf = g.family
            gi = g.index
            for h, b in other._terms.items():
                hf = h.family
                if gf == _FULL:
                    basis, m = h, 1
                elif hf == _FULL:
                    basis, m = g, 1
                elif gf == _ROTATION:
                    if hf != _ROTATION:
                        continue
                    basis, m = SO2, 2
                elif hf == _ROTATION:
                    continue
                else:
                    basis, m = D(gcd(gi, h.index)), 2
                s = acc.get(basis, 0) + a * b * m
                if s:
                    acc[basis] = s
                elif basis in acc:
                    del acc[basis]
        return BurnsideElement._raw(acc)

    def __rmul__(self, other: int) -> BurnsideElement:
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def render(self) -> str:
        """Canonical multi-line text form (see module docstring)."""
        if not self._terms:
            return "0"
        return "\n".join(f"{g.label} {c}" for g, c in self.terms())

    @classmethod
    def parse(cls, text: str) -> BurnsideElement:
        """Parse the canonical rendering back into an element.

        Parsing is strict: terms must be in strictly ascending basis
        order with nonzero coefficients, or the single line ``0``.
        """
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ElementFormatError("empty element text")
        if lines == ["0"]:
            return ZERO
        terms: dict[Generator, int] = {}
        prev: Generator | None = None
        for ln in lines:
            parts = ln.split()
            if len(parts) != 2:
                raise ElementFormatError(f"malformed term line {ln!r}")
            g = _parse_generator(parts[0])
            try:
                c = int(parts[1])
            except ValueError:
                raise ElementFormatError(f"bad coefficient in line {ln!r}") from None
            if c == 0:
                raise ElementFormatError(f"zero coefficient stored for {g.label}")
            if prev is not None and not prev < g:
                raise ElementFormatError(f"terms out of order at {g.label}")
            prev = g
            terms[g] = c
        return cls._raw(terms)

    def __str__(self) -> str:
        # Compact human form, highest class first: "O2 + 2*D1 - D2".
        if not self._terms:
            return "0"
        parts: list[str] = []
        for g, c in sorted(self._terms.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = g.label if mag == 1 else f"{mag}*{g.label}"
            parts.append(f"{sign} {body}")
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self) -> str:
        return f"<BurnsideElement {self}>"


ZERO = BurnsideElement()
IDENTITY = BurnsideElement({O2: 1})


class KeySet:
    """Finite set of distinct positive representation indices.

    Normalized to a strictly increasing tuple; the derived key element
    is the product of the basic degrees of its indices.
    """

    __slots__ = ("indices",)

    def __init__(self, indices: Iterable[int]):
        idx = tuple(sorted(indices))
        if not idx:
            raise ValueError("key set must be non-empty")
        for i in idx:
            if not isinstance(i, int):
                raise ValueError(f"key index must be an int, got {i!r}")
            if i < 1:
                raise ValueError(f"key index must be >= 1, got {i}")
        if len(set(idx)) != len(idx):
            raise ValueError(f"duplicate key indices in {idx}")
        self.indices: tuple[int, ...] = idx

    @property
    def max_index(self) -> int:
        return self.indices[-1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, i: object) -> bool:
        return i in self.indices

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KeySet):
            return NotImplemented
        return self.indices == other.indices

    def __hash__(self) -> int:
        return hash(self.indices)

    def __str__(self) -> str:
        return "{" + ", ".join(str(i) for i in self.indices) + "}"

    def __repr__(self) -> str:
        return f"KeySet({self.indices})"


def as_key_set(s: KeySet | Iterable[int]) -> KeySet:
    return s if isinstance(s, KeySet) else KeySet(s)


# Subset-enumerating operations cost 2**|S|; reject larger sets.
DEFAULT_SUBSET_CAP = 20


def _check_cap(s: KeySet, cap: int) -> None:
    if len(s) > cap:
        raise ValueError(f"key set has {len(s)} indices, above the subset enumeration cap {cap}")


def basic_degree(m: int) -> BurnsideElement:
    """Degree element of the m-th irreducible O(2)-representation.

    O2 - D(m) for m >= 1; the trivial representation (m = 0) yields the
    ring identity O2.  Each is an involution under the ring product.
    """
    if m < 0:
        raise ValueError(f"representation index must be >= 0, got {m}")
    if m == 0:
        return IDENTITY
    return BurnsideElement._raw({O2: 1, D(m): -1})


def key_element(s: KeySet | Iterable[int]) -> BurnsideElement:
    """Product of the basic degrees over the index set (self-inverse)."""
    out = IDENTITY
    for i in as_key_set(s):
        out = out * basic_degree(i)
    return out


def key_coeff(s: KeySet | Iterable[int], s0: int, *, subset_cap: int = DEFAULT_SUBSET_CAP) -> int:
    """Coefficient of D(s0) in key_element(s), by subset enumeration.

    Evaluates -[s0 in s] + 2 * sum over subsets I of s, |I| >= 2, of
    (-2)**(|I|-2) * [gcd(I) == s0].  Singleton subsets other than {s0}
    never hit s0, and {s0} itself is accounted for by the membership
    term, so only subsets of size >= 2 are enumerated.
    """
    if s0 < 1:
        raise ValueError(f"dihedral index must be >= 1, got {s0}")
    s = as_key_set(s)
    _check_cap(s, subset_cap)
    total = 0
    for r in range(2, len(s) + 1):
        for sub in combinations(s.indices, r):
            if gcd(*sub) == s0:
                total += (-2) ** (r - 2)
    return -(1 if s0 in s else 0) + 2 * total


def key_coeff_bruteforce(
    s: KeySet | Iterable[int], s0: int, *, subset_cap: int = DEFAULT_SUBSET_CAP
) -> int:
    """Same coefficient, read off a literal expansion of the product.

    Multiplies the basic-degree factors one by one with the ring
    product and looks up D(s0); the independent check for key_coeff.
    """
    if s0 < 1:
        raise ValueError(f"dihedral index must be >= 1, got {s0}")
    s = as_key_set(s)
    _check_cap(s, subset_cap)
    product = IDENTITY
    for i in s:
        product = product * basic_degree(i)
    return product.coeff(D(s0))


def key_coeff_fold(s: KeySet | Iterable[int], x: int, *, subset_cap: int = DEFAULT_SUBSET_CAP) -> int:
    """Sum of key_coeff(s, n) over the multiples n of x.

    Coefficients vanish above max(s) (every subset gcd is bounded by
    its smallest member), so the sum is finite.  The self-coefficient
    of an encrypted probe D(x) equals 1 + 2*key_coeff_fold(s, x), which
    is what the one-query distinguisher reads out.
    """
    if x < 1:
        raise ValueError(f"dihedral index must be >= 1, got {x}")
    s = as_key_set(s)
    _check_cap(s, subset_cap)
    return sum(key_coeff(s, n, subset_cap=subset_cap) for n in range(x, s.max_index + 1, x))
