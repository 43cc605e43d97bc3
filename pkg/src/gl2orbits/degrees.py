"""Degrees of points on X0(n) and X1(n) above a rational j-invariant.

For a rational non-CM j with extended image G, the points of X_H over j
correspond to the orbits of G on the cosets of +-H, and a point's degree
is its orbit size.  Only rational j is handled, so the residue degree of
j itself is always 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from . import tables
from .cosets import StandardFamily, build_coset_table, orbits
from .invariants import b1_index, deg_x0, deg_x1, psi
from .subgroups import _as_spec, adjoin_minus_identity, at_modulus
from .zmod import divisors

CONDITIONAL_NOTE = "conditional on Zywina's conjecture on images of Galois"


class CurveKind(enum.Enum):
    X0 = "X0"
    X1 = "X1"

    @classmethod
    def parse(cls, value) -> "CurveKind":
        if isinstance(value, cls):
            return value
        return cls(str(value).upper())


class CMInput(ValueError):
    """The j-invariant is CM (or 0, 1728); the orbit description does not apply."""


class MissingCatalog(LookupError):
    """Level data needed for the request has to be ingested first."""


@dataclass(frozen=True, order=True)
class JInvariant:
    numerator: int
    denominator: int = 1

    def __post_init__(self):
        q = Fraction(self.numerator, self.denominator)
        object.__setattr__(self, "numerator", q.numerator)
        object.__setattr__(self, "denominator", q.denominator)

    @classmethod
    def of(cls, value) -> "JInvariant":
        if isinstance(value, cls):
            return value
        q = Fraction(value) if not isinstance(value, str) else Fraction(value.strip())
        return cls(q.numerator, q.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        return str(self.value)


JLike = Union[JInvariant, Fraction, int, str]


def is_cm(j: JLike) -> bool:
    return JInvariant.of(j).value in tables.CM_J


def check_j(j: Optional[JLike]) -> None:
    if j is not None and is_cm(j):
        raise CMInput(f"j = {JInvariant.of(j)} is a CM j-invariant")


@dataclass(frozen=True)
class DegreeMultiset:
    values: tuple[int, ...]
    curve: CurveKind
    n: int
    source: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(sorted(self.values)))

    @property
    def total(self) -> int:
        return sum(self.values)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.values)

    def __str__(self) -> str:
        return ",".join(map(str, self.values))


@dataclass(frozen=True)
class DegreeSet:
    values: tuple[int, ...]
    curve: CurveKind
    n: int
    regime: str  # "infinite" or "all"
    conditional: bool = False

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(sorted(set(self.values))))

    def as_set(self) -> frozenset[int]:
        return frozenset(self.values)


def family(curve: CurveKind, n: int) -> StandardFamily:
    curve = CurveKind.parse(curve)
    return StandardFamily.b0(n) if curve is CurveKind.X0 else StandardFamily.b1(n)


def total_degree(curve: CurveKind, n: int) -> int:
    """deg(X_H -> X(1)): psi(n) for X0, [GL2 : +-B1(n)] for X1."""
    return psi(n) if CurveKind.parse(curve) is CurveKind.X0 else b1_index(n)


def covering_degree(curve: CurveKind, n: int, m: int) -> int:
    return deg_x0(n, m) if CurveKind.parse(curve) is CurveKind.X0 else deg_x1(n, m)


def fiber_partition(curve: CurveKind, n: int, G):
    table = build_coset_table(family(curve, n))
    spec = at_modulus(adjoin_minus_identity(_as_spec(G)), n)
    return orbits(table, spec.generators)


def fiber_degrees(curve, n: int, G, j: Optional[JLike] = None) -> DegreeMultiset:
    """Degrees of the points of X_H(n) above j, with G the image for j."""
    check_j(j)
    curve = CurveKind.parse(curve)
    sizes = fiber_partition(curve, n, G).block_sizes
    spec = _as_spec(G)
    return DegreeMultiset(tuple(sizes), curve, n, spec.label or f"modulus {spec.modulus}")


def point_degrees(curve, n: int, G, j: Optional[JLike] = None) -> frozenset[int]:
    return fiber_degrees(curve, n, G, j).as_set()


def _constants(curve: CurveKind, regime: str) -> dict[int, set[int]]:
    if curve is CurveKind.X0:
        base = tables.D0_INFINITE
        extra = tables.D0_ALL
    else:
        base = tables.D1_INFINITE
        extra = tables.D1_ALL
    if regime == "infinite":
        return base
    merged = dict(base)
    merged.update(extra)
    return merged


def _assemble(curve: CurveKind, n: int, regime: str, levels: Iterable[int]) -> set[int]:
    D = _constants(curve, regime)
    out: set[int] = set()
    for m in levels:
        scale = covering_degree(curve, n, m)
        out |= {d * scale for d in D.get(m, ())}
    return out


def _check_level(n: int) -> None:
    if n < 1:
        raise ValueError(f"level must be positive, got {n}")


def infinite_degree_set(curve, n: int) -> DegreeSet:
    """Degrees occurring for infinitely many rational j on X_H(n)."""
    _check_level(n)
    curve = CurveKind.parse(curve)
    return DegreeSet(tuple(_assemble(curve, n, "infinite", divisors(n))), curve, n, "infinite")


def all_degree_set(curve, n: int) -> DegreeSet:
    """All degrees of non-CM points above rational j (conditional)."""
    _check_level(n)
    curve = CurveKind.parse(curve)
    values = _assemble(curve, n, "all", divisors(n))
    return DegreeSet(tuple(values), curve, n, "all", conditional=True)


def level_component(curve, n: int, regime: str = "infinite") -> DegreeSet:
    """The degrees first appearing at level n: the union formula minus
    everything inherited from proper divisors."""
    _check_level(n)
    curve = CurveKind.parse(curve)
    full = _assemble(curve, n, regime, divisors(n))
    values = full - inherited_degrees(curve, n, regime)
    return DegreeSet(tuple(values), curve, n, regime, conditional=regime == "all")


def inherited_degrees(curve, n: int, regime: str = "infinite") -> frozenset[int]:
    """Degrees at level n pulled back from proper divisors of n."""
    curve = CurveKind.parse(curve)
    return frozenset(_assemble(curve, n, regime, [m for m in divisors(n) if m < n]))


def primitive_degrees(curve, level: int, multisets: Iterable[Iterable[int]],
                      regime: str = "infinite") -> frozenset[int]:
    """Values of level-m orbit multisets not already inherited from below."""
    values = {v for ms in multisets for v in ms}
    return frozenset(values - inherited_degrees(curve, level, regime))


def _table_rows(curve: CurveKind, catalog) -> list[tuple[int, str, tuple[int, ...]]]:
    if catalog is not None:
        rows = []
        for e in catalog:
            ms = e.orbit_multiset_x0 if curve is CurveKind.X0 else e.orbit_multiset_x1
            if ms is not None and (e.flags or {}).get("has_infinitely_many_rational_points", True):
                rows.append((e.level, e.label, tuple(ms.values if isinstance(ms, DegreeMultiset) else ms)))
        return rows
    if curve is CurveKind.X1:
        raise MissingCatalog("X1 fiber multisets need an ingested table of infinite B1-closed classes")
    return list(tables.INFINITE_B0)


def infinite_fiber_multisets(curve, n: int, catalog=None) -> frozenset[DegreeMultiset]:
    """Fiber multisets on X_H(n) that occur for infinitely many rational j.

    Each listed class at a level m dividing n contributes its orbit multiset
    scaled by deg(X_H(n) -> X_H(m)).
    """
    _check_level(n)
    curve = CurveKind.parse(curve)
    out = set()
    for m, label, ms in _table_rows(curve, catalog):
        if n % m:
            continue
        k = covering_degree(curve, n, m)
        out.add(DegreeMultiset(tuple(k * v for v in ms), curve, n, label))
    return frozenset(out)


def theorem_consistency_check(n: int, curve=CurveKind.X0) -> bool:
    """Listed multisets and the degree-set formula give the same degrees."""
    values = set()
    for ms in infinite_fiber_multisets(curve, n):
        values |= ms.as_set()
    return values == set(infinite_degree_set(curve, n).values)
