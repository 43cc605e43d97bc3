"""Index functions, covering degrees and the genus of X_G."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import batch
from .cosets import ConsistencyError, StandardFamily, build_coset_table, orbits, psi
from .subgroups import (
    DEFAULT_CAP,
    EnumeratedSubgroup,
    SubgroupSpec,
    _as_spec,
    gl_level,
    index,
    intersect_sl2,
    sl_level,
)
from .zmod import Mat2, euler_phi, minus_identity

__all__ = [
    "GenusData",
    "deg_x0",
    "deg_x1",
    "genus",
    "label_invariants",
    "phi",
    "psi",
]


def phi(n: int) -> int:
    return euler_phi(n)


def _check_divides(n: int, m: int) -> None:
    if m < 1 or n % m:
        raise ValueError(f"{m} does not divide {n}")


def b1_index(n: int) -> int:
    """[GL2 : B1(n)] with B1(n) containing -I."""
    return psi(n) * phi(n) // 2 if n > 2 else psi(n)


def deg_x0(n: int, m: int) -> int:
    """[B0(m) : B0(n)], counted from coset tables and checked against psi."""
    _check_divides(n, m)
    k = build_coset_table(StandardFamily.b0(n)).index
    j = build_coset_table(StandardFamily.b0(m)).index
    if k % j or k // j != psi(n) // psi(m):
        raise ConsistencyError(f"deg_x0({n},{m}): tables give {k}/{j}")
    return k // j


def deg_x1(n: int, m: int) -> int:
    """[B1(m) : B1(n)], counted from coset tables and checked against the
    closed form."""
    _check_divides(n, m)
    k = build_coset_table(StandardFamily.b1(n)).index
    j = build_coset_table(StandardFamily.b1(m)).index
    if k % j or k // j != b1_index(n) // b1_index(m):
        raise ConsistencyError(f"deg_x1({n},{m}): tables give {k}/{j}")
    return k // j


@dataclass(frozen=True)
class GenusData:
    sl_index: int
    e2: int
    e3: int
    cusps: int
    genus: int
    sl_level: int = 1

    def integral(self) -> bool:
        return 12 * (self.genus - 1) + 3 * self.e2 + 4 * self.e3 + 6 * self.cusps == self.sl_index


ORDER_FOUR = (0, -1, 1, 0)
ORDER_SIX = (0, -1, 1, -1)
TRANSLATION = (1, 1, 0, 1)


def genus_of_sl2_subgroup(S: EnumeratedSubgroup) -> GenusData:
    """Genus data of a subgroup of SL2(Z/m) given by its elements.

    -I is adjoined first, so all counts are in PSL2 terms.
    """
    m = S.modulus
    keys = S.keys
    if m > 2:
        neg = batch.pack(batch.mul(S.matrices(), minus_identity(m).entries, m), m)
        keys = np.union1d(keys, neg)
    H = EnumeratedSubgroup(SubgroupSpec(m, (Mat2.identity(m),), "+-S"), keys)
    table = build_coset_table(H, m, ambient="SL2")
    i = table.index
    e2 = int(np.sum(table.action(Mat2.of(ORDER_FOUR, m)) == np.arange(i)))
    e3 = int(np.sum(table.action(Mat2.of(ORDER_SIX, m)) == np.arange(i)))
    cusps = len(orbits(table, [Mat2.of(TRANSLATION, m)]).blocks)
    g = 1 + Fraction(i, 12) - Fraction(e2, 4) - Fraction(e3, 3) - Fraction(cusps, 2)
    if g.denominator != 1 or g < 0:
        raise ConsistencyError(f"non-integral genus {g} (i={i}, e2={e2}, e3={e3}, cusps={cusps})")
    return GenusData(i, e2, e3, cusps, int(g), m)


def genus(G, cap: int = DEFAULT_CAP) -> GenusData:
    """Genus data of X_G, read off G n SL2 at its SL-level."""
    spec = _as_spec(G)
    m = sl_level(spec, cap)
    S = intersect_sl2(spec, cap)
    X = S.matrices() % m
    keys = np.unique(batch.pack(X, m))
    return genus_of_sl2_subgroup(EnumeratedSubgroup(SubgroupSpec(m, (Mat2.identity(m),)), keys))


def label_invariants(G, cap: int = DEFAULT_CAP) -> tuple[int, int, int]:
    """(GL-level, index, genus): the leading digits of an N.i.g label."""
    spec = _as_spec(G)
    return gl_level(spec, cap), index(spec, cap), genus(spec, cap).genus
