"""H-closures and CH-closures at level n.

G acts on the cosets H\\GL2(Z/n) by right multiplication.  Let Omega_1 be
the orbit of the identity coset and Omega_1, ..., Omega_r all orbits.

* the H-closure is the setwise stabiliser of Omega_1;
* the CH-closure is the set of g fixing every Omega_i setwise.

Both live inside H * Omega_1, which bounds the candidate set.  G is first
brought to modulus n; this loses nothing because the kernel of reduction
mod n lies in H, and a normal subgroup inside H never changes the orbits.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from math import gcd

import numpy as np

from . import batch
from .cosets import (
    CosetTable,
    FamilyKind,
    OrbitPartition,
    StandardFamily,
    build_coset_table,
    orbits,
)
from .subgroups import (
    DEFAULT_CAP,
    EnumeratedSubgroup,
    SubgroupSpec,
    _as_spec,
    at_modulus,
    enumerate_subgroup,
    same_open_subgroup,
)
from .zmod import Mat2, gl2_order

ORACLE_LIMIT = 10**5


class ClosureKind(enum.Enum):
    H = "H-closure"
    CH = "CH-closure"


@dataclass(eq=False)
class ClosureResult:
    input: SubgroupSpec
    family: StandardFamily | EnumeratedSubgroup
    closure: SubgroupSpec
    elements: EnumeratedSubgroup
    orbit_partition: OrbitPartition
    kind: ClosureKind
    note: str = "generators reduced to the family level (reduction kernel lies in H)"

    @property
    def order(self) -> int:
        return self.elements.order


def _table(H) -> CosetTable:
    if isinstance(H, CosetTable):
        return H
    return build_coset_table(H)


def _subgroup_of(table: CosetTable) -> EnumeratedSubgroup:
    H = table.subgroup
    if isinstance(H, StandardFamily):
        spec = H.spec()
        if table.modulus != H.level:
            spec = at_modulus(spec, table.modulus)
        return enumerate_subgroup(spec)
    return H


def _actors(table: CosetTable, G) -> SubgroupSpec:
    return at_modulus(_as_spec(G), table.modulus)


def h_equivalent(H, G1, G2) -> bool:
    """H G1 = H G2: the identity coset has the same orbit."""
    table = _table(H)
    a = orbits(table, _actors(table, G1).generators).identity_block()
    b = orbits(table, _actors(table, G2).generators).identity_block()
    return a == b


def ch_equivalent(H, G1, G2) -> bool:
    """Same orbit partition of the whole coset space."""
    table = _table(H)
    a = orbits(table, _actors(table, G1).generators)
    b = orbits(table, _actors(table, G2).generators)
    return a.same_partition(b)


def _closure_elements(table: CosetTable, partition: OrbitPartition, kind: ClosureKind,
                      chunk: int = 1 << 19) -> np.ndarray:
    n = table.modulus
    H = _subgroup_of(table).matrices()
    R = table.rep_batch()
    ident = sorted(partition.identity_block())
    block_of = np.array(partition.block_of)
    target = block_of if kind is ClosureKind.CH else (block_of == block_of[0])
    # candidates g with H g inside Omega_1, i.e. g in H * r for r in Omega_1
    cands = batch.outer_mul(H, R[ident], n)
    keep = np.zeros(len(cands), dtype=bool)
    step = max(1, chunk // len(R))
    for lo in range(0, len(cands), step):
        C = cands[lo : lo + step]
        moved = table.identify_many(batch.outer_mul(R, C, n)).reshape(len(R), len(C))
        if kind is ClosureKind.CH:
            ok = np.all(block_of[moved] == target[:, None], axis=0)
        else:
            inside = block_of[moved] == block_of[0]
            ok = np.all(inside[target], axis=0)
        keep[lo : lo + step] = ok
    return np.unique(batch.pack(cands[keep], n))


def small_generating_set(keys: np.ndarray, n: int, seed: int = 0) -> list[Mat2]:
    """A short generating list for the group with these elements, from
    seeded random sampling followed by pruning of redundant members."""
    rng = random.Random(seed)
    target = keys.size
    one = batch.identity_key(n)
    gens: list[int] = []
    current = np.array([one], dtype=np.int64)
    pool = keys.tolist()
    while current.size < target:
        k = pool[rng.randrange(len(pool))]
        if batch.member(current, np.array([k]))[0]:
            continue
        current = batch.generate([Mat2.from_key(k, n)], n, target, start=current,
                                 start_gens=[Mat2.from_key(g, n) for g in gens])
        gens.append(k)
    for k in list(gens):
        rest = [g for g in gens if g != k]
        trial = batch.generate([Mat2.from_key(g, n) for g in rest], n, target)
        if trial.size == target:
            gens = rest
    return [Mat2.from_key(k, n) for k in gens] or [Mat2.identity(n)]


def _closure(H, G, kind: ClosureKind, seed: int) -> ClosureResult:
    table = _table(H)
    spec = _as_spec(G)
    actors = _actors(table, spec)
    partition = orbits(table, actors.generators)
    keys = _closure_elements(table, partition, kind)
    n = table.modulus
    gens = small_generating_set(keys, n, seed)
    label = f"{kind.value} of {spec.label or 'G'} for {_name(table)}"
    closure = SubgroupSpec(n, tuple(gens), label)
    elements = EnumeratedSubgroup(closure, keys)
    return ClosureResult(spec, table.subgroup, closure, elements, partition, kind)


def _name(table: CosetTable) -> str:
    H = table.subgroup
    return H.name if isinstance(H, StandardFamily) else f"H (mod {table.modulus})"


def h_closure(H, G, seed: int = 0) -> ClosureResult:
    return _closure(H, G, ClosureKind.H, seed)


def ch_closure(H, G, seed: int = 0) -> ClosureResult:
    return _closure(H, G, ClosureKind.CH, seed)


def ch_closed(H, G, cap: int = DEFAULT_CAP) -> bool:
    """Whether G equals its CH-closure as an open subgroup."""
    result = ch_closure(H, G)
    return same_open_subgroup(result.closure, _as_spec(G), cap)


# --- brute-force oracle -------------------------------------------------------


@dataclass(frozen=True)
class _FiniteGL2:
    """GL2(Z/n) listed element by element with a full multiplication table."""

    n: int
    elements: tuple[tuple[int, int, int, int], ...]
    index_of: dict
    table: np.ndarray
    inverse: np.ndarray


@lru_cache(maxsize=None)
def _finite_gl2(n: int) -> _FiniteGL2:
    elems = tuple(
        (a, b, c, d)
        for a, b, c, d in iproduct(range(n), repeat=4)
        if gcd((a * d - b * c) % n, n) == 1
    )
    index_of = {e: i for i, e in enumerate(elems)}
    k = len(elems)
    table = np.empty((k, k), dtype=np.int32)
    for i, (a, b, c, d) in enumerate(elems):
        for j, (e, f, g, h) in enumerate(elems):
            table[i, j] = index_of[
                ((a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n)
            ]
    one = index_of[(1 % n, 0, 0, 1 % n)]
    inverse = np.argmax(table == one, axis=1)
    return _FiniteGL2(n, elems, index_of, table, inverse)


def _in_family(kind: FamilyKind, n: int, e) -> bool:
    a, _, c, _ = e
    if c % n:
        return False
    if kind is FamilyKind.B1:
        return a % n in (1 % n, (n - 1) % n)
    if kind is FamilyKind.B1_STRICT:
        return a % n == 1 % n
    return True


def _close_indices(F: _FiniteGL2, gens: list[int]) -> np.ndarray:
    one = F.index_of[(1 % F.n, 0, 0, 1 % F.n)]
    seen = np.zeros(len(F.elements), dtype=bool)
    seen[one] = True
    frontier = np.array([one])
    g = np.array(gens, dtype=np.int64)
    while frontier.size:
        nxt = np.unique(F.table[np.ix_(frontier, g)].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return seen


def brute_force_ch_closure(family: StandardFamily, G) -> tuple[SubgroupSpec, frozenset[Mat2]]:
    """The CH-closure from its definition: the largest overgroup of G inside
    the intersection of the products H^g G over all cosets H g.

    Elements are handled as indices into a full multiplication table, so
    this is independent of the coset-table machinery.  Small n only.
    """
    n = family.level
    if gl2_order(n) > ORACLE_LIMIT:
        raise ValueError(f"|GL2(Z/{n})| = {gl2_order(n)} exceeds the oracle limit")
    F = _finite_gl2(n)
    spec = at_modulus(_as_spec(G), n)
    gens = [F.index_of[x.entries] for x in spec.generators]
    Gmask = _close_indices(F, gens)
    Gidx = np.flatnonzero(Gmask)
    Hidx = np.array([i for i, e in enumerate(F.elements) if _in_family(family.kind, n, e)])
    # a transversal of the right cosets H g
    covered = np.zeros(len(F.elements), dtype=bool)
    S = np.ones(len(F.elements), dtype=bool)
    for g in range(len(F.elements)):
        if covered[g]:
            continue
        covered[F.table[Hidx, g]] = True
        conj = F.table[F.table[F.inverse[g], Hidx], g]  # g^-1 H g
        prod = np.zeros(len(F.elements), dtype=bool)
        prod[F.table[np.ix_(conj, Gidx)].ravel()] = True
        S &= prod
    K = Gmask.copy()
    changed = True
    while changed:
        changed = False
        for s in np.flatnonzero(S & ~K):
            if K[s]:
                continue
            trial = _close_indices(F, list(np.flatnonzero(K)) + [int(s)])
            if np.all(S[trial]):
                K = trial
                changed = True
    members = frozenset(Mat2.of(F.elements[i], n) for i in np.flatnonzero(K))
    closure = SubgroupSpec(n, tuple(sorted(members)) or (Mat2.identity(n),), "oracle closure")
    return closure, members
