"""Right cosets H\\GL2(Z/n), the right-multiplication action and its orbits.

For the standard families the coset of M is read off a signature of M:
for B0(n) the bottom row (c, d) up to unit scaling (a point of the
projective line over Z/n); for B1(n) the bottom row together with det(M),
scaled along, and taken up to sign when -I is included.  Arbitrary
subgroups are handled by representative search with the test M' M^-1 in H.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import batch
from .subgroups import EnumeratedSubgroup, SubgroupSpec, enumerate_subgroup
from .zmod import (
    Mat2,
    euler_phi,
    factor,
    gl2_generators,
    gl2_order,
    sl2_generators,
    sl2_order,
    unit_group_generators,
    units,
)


class ConsistencyError(RuntimeError):
    """An internal cross-check failed (e.g. a coset count off the formula)."""


class FamilyKind(enum.Enum):
    B0 = "B0"  # c = 0
    B1 = "B1"  # c = 0 and a = +-1; contains -I
    B1_STRICT = "B1_strict"  # c = 0 and a = 1


# B1 already carries the sign, so the "plus-minus" variant is the same group.
PLUS_MINUS_B1 = FamilyKind.B1


def psi(n: int) -> int:
    out = n
    for p, _ in factor(n):
        out = out // p * (p + 1)
    return out


@dataclass(frozen=True)
class StandardFamily:
    kind: FamilyKind
    level: int

    @classmethod
    def b0(cls, n: int) -> "StandardFamily":
        return cls(FamilyKind.B0, n)

    @classmethod
    def b1(cls, n: int) -> "StandardFamily":
        return cls(FamilyKind.B1, n)

    @property
    def name(self) -> str:
        return f"{self.kind.value}({self.level})"

    def index_formula(self) -> int:
        n = self.level
        if self.kind is FamilyKind.B0:
            return psi(n)
        scale = euler_phi(n)
        if self.kind is FamilyKind.B1 and n > 2:
            scale //= 2
        return psi(n) * scale

    def spec(self) -> SubgroupSpec:
        n = self.level
        us = unit_group_generators(n)
        gens = [Mat2(1, 1, 0, 1, n)] + [Mat2(1, 0, 0, u, n) for u in us]
        if self.kind is FamilyKind.B0:
            gens += [Mat2(u, 0, 0, 1, n) for u in us]
        elif self.kind is FamilyKind.B1:
            gens.append(Mat2(-1, 0, 0, -1, n))
        return SubgroupSpec(n, tuple(gens), self.name)

    def contains(self, M: Mat2) -> bool:
        return bool(self.member_mask(batch.as_batch([M]))[0])

    def member_mask(self, X: np.ndarray) -> np.ndarray:
        """Membership of the rows of X (at any modulus divisible by the level)."""
        n = self.level
        X = np.asarray(X) % n
        ok = (X[:, 2] == 0) & (np.gcd(X[:, 0] * X[:, 3], n) == 1)
        if self.kind is FamilyKind.B1:
            ok &= (X[:, 0] == 1 % n) | (X[:, 0] == (n - 1) % n)
        elif self.kind is FamilyKind.B1_STRICT:
            ok &= X[:, 0] == 1 % n
        return ok


@lru_cache(maxsize=None)
def _signature_classes(kind: FamilyKind, n: int) -> np.ndarray:
    """Map each signature to the index of its canonical signature (or -1).

    B0 signatures are c*n + d; B1 signatures are (c*n + d)*n + det.  The
    canonical member of a class is the one with the smallest signature,
    which for B0 is the lexicographically least unit multiple of (c, d).
    """
    us = np.array(units(n), dtype=np.int64)
    c, d = np.divmod(np.arange(n * n, dtype=np.int64), n)
    primitive = np.gcd(np.gcd(c, d), n) == 1
    if kind is FamilyKind.B0:
        scaled = ((us[:, None] * c) % n) * n + (us[:, None] * d) % n
        canon = scaled.min(axis=0)
        return np.where(primitive, canon, -1)
    size = n * n * n
    sig = np.arange(size, dtype=np.int64)
    cd, t = np.divmod(sig, n)
    c, d = np.divmod(cd, n)
    valid = (np.gcd(np.gcd(c, d), n) == 1) & (np.gcd(t, n) == 1)
    variants = [((u * c % n) * n + u * d % n) * n + u * t % n for u in us]
    if kind is FamilyKind.B1:
        variants += [((u * c % n) * n + u * d % n) * n + (-u * t) % n for u in us]
    canon = np.min(np.stack(variants), axis=0)
    return np.where(valid, canon, -1)


def _signatures(kind: FamilyKind, n: int, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X) % n
    cd = X[:, 2] * n + X[:, 3]
    if kind is FamilyKind.B0:
        return cd
    return cd * n + batch.det(X, n)


@dataclass(eq=False)
class CosetTable:
    """Right cosets H g of H in an ambient group (GL2 or SL2) mod n.

    ``representatives[0]`` is the identity coset.  Coset ids are assigned
    in breadth-first order from the identity under the ambient generators.
    """

    subgroup: StandardFamily | EnumeratedSubgroup
    modulus: int
    representatives: list[Mat2]
    ambient: str = "GL2"
    _rep_batch: np.ndarray = field(default=None, repr=False)
    _lookup: np.ndarray | None = field(default=None, repr=False)
    _memo: dict = field(default_factory=dict, repr=False)

    @property
    def index(self) -> int:
        return len(self.representatives)

    def __len__(self) -> int:
        return self.index

    def rep_batch(self) -> np.ndarray:
        return self._rep_batch

    def identify(self, M: Mat2) -> int:
        return int(self.identify_many(batch.as_batch([M]))[0])

    def identify_many(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64).reshape(-1, 4)
        if self._lookup is not None:
            fam = self.subgroup
            ids = self._lookup[_signatures(fam.kind, fam.level, X)]
        else:
            ids = _search(self.subgroup, self._rep_inverses(), X, self.modulus)
        if np.any(ids < 0):
            raise ConsistencyError("matrix outside the tabulated cosets")
        return ids

    def _rep_inverses(self) -> np.ndarray:
        if "inv" not in self._memo:
            self._memo["inv"] = batch.inv(self._rep_batch, self.modulus)
        return self._memo["inv"]

    def action(self, A: Mat2) -> np.ndarray:
        """The permutation i -> id(representatives[i] * A)."""
        if A.modulus != self.modulus:
            raise ValueError(f"actor is mod {A.modulus}, table is mod {self.modulus}")
        key = A.key
        if key not in self._memo:
            self._memo[key] = self.identify_many(batch.mul(self._rep_batch, A.entries, self.modulus))
        return self._memo[key]


def _search(H: EnumeratedSubgroup, rep_inverses: np.ndarray, X: np.ndarray, n: int,
            chunk: int = 1 << 20) -> np.ndarray:
    """Coset ids by representative search: the i with X R_i^-1 in H."""
    out = np.full(len(X), -1, dtype=np.int64)
    r = len(rep_inverses)
    if r == 0:
        return out
    step = max(1, chunk // r)
    for lo in range(0, len(X), step):
        part = X[lo : lo + step]
        prod = batch.outer_mul(part, rep_inverses, n)
        hit = batch.member(H.keys, batch.pack(prod, n)).reshape(len(part), r)
        found = hit.any(axis=1)
        out[lo : lo + step] = np.where(found, hit.argmax(axis=1), -1)
    return out


def _standard_table(family: StandardFamily, n: int) -> CosetTable:
    kind, level = family.kind, family.level
    classes = _signature_classes(kind, level)
    lookup = np.full(classes.size, -1, dtype=np.int64)
    gens = batch.as_batch(gl2_generators(n))
    reps = [np.array(Mat2.identity(n).entries, dtype=np.int64)]
    canon_id: dict[int, int] = {}
    start = int(classes[_signatures(kind, level, reps[0][None, :])[0]])
    canon_id[start] = 0
    frontier = np.array(reps)
    while frontier.size:
        fresh = []
        for g in gens:
            Y = batch.mul(frontier, g, n)
            for row, cls in zip(Y, classes[_signatures(kind, level, Y)]):
                cls = int(cls)
                if cls not in canon_id:
                    canon_id[cls] = len(reps)
                    reps.append(row)
                    fresh.append(row)
        frontier = np.array(fresh).reshape(-1, 4)
    valid = classes >= 0
    ids = np.full(classes.size, -1, dtype=np.int64)
    for cls, i in canon_id.items():
        ids[cls] = i
    lookup[valid] = ids[classes[valid]]
    R = np.array(reps, dtype=np.int64).reshape(-1, 4)
    table = CosetTable(family, n, batch.to_mats(R, n), "GL2", R, lookup)
    if table.index != family.index_formula():
        raise ConsistencyError(
            f"{family.name}: {table.index} cosets found, formula gives {family.index_formula()}"
        )
    return table


def _generic_table(H: EnumeratedSubgroup, n: int, ambient: str) -> CosetTable:
    gens = gl2_generators(n) if ambient == "GL2" else sl2_generators(n)
    total = gl2_order(n) if ambient == "GL2" else sl2_order(n)
    if total % H.order:
        raise ConsistencyError("subgroup order does not divide the ambient order")
    expected = total // H.order
    G = batch.as_batch(gens)
    reps = np.array([Mat2.identity(n).entries], dtype=np.int64)
    inv = batch.inv(reps, n)
    frontier = reps
    while frontier.size and len(reps) < expected:
        fresh: list[np.ndarray] = []
        Y = np.concatenate([batch.mul(frontier, g, n) for g in G])
        # drop duplicates inside the batch, then test against known reps
        ids = _search(H, inv, Y, n)
        for row in Y[ids < 0]:
            if fresh:
                F = np.array(fresh)
                if _search(H, batch.inv(F, n), row[None, :], n)[0] >= 0:
                    continue
            fresh.append(row)
        frontier = np.array(fresh, dtype=np.int64).reshape(-1, 4)
        if frontier.size:
            reps = np.concatenate([reps, frontier])
            inv = batch.inv(reps, n)
    table = CosetTable(H, n, batch.to_mats(reps, n), ambient, reps, None)
    if table.index != expected:
        raise ConsistencyError(f"{table.index} cosets found, expected {expected}")
    return table


@lru_cache(maxsize=128)
def _cached_standard(family: StandardFamily, n: int) -> CosetTable:
    return _standard_table(family, n)


def build_coset_table(H, n: int | None = None, ambient: str = "GL2") -> CosetTable:
    """Coset table of H in GL2(Z/n) (or SL2(Z/n) when ``ambient='SL2'``).

    H may be a :class:`StandardFamily` (n a multiple of its level; the
    table then lists lifts of the level-n cosets), a SubgroupSpec or an
    EnumeratedSubgroup.
    """
    if isinstance(H, StandardFamily):
        n = H.level if n is None else n
        if n % H.level:
            raise ValueError(f"modulus {n} is not a multiple of level {H.level}")
        if ambient != "GL2":
            raise ValueError("standard families are tabulated inside GL2")
        return _cached_standard(H, n)
    if isinstance(H, SubgroupSpec):
        H = enumerate_subgroup(H)
    n = H.modulus if n is None else n
    if n != H.modulus:
        raise ValueError("subgroup and table moduli differ")
    return _generic_table(H, n, ambient)


# --- orbits ---------------------------------------------------------------------


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x


@dataclass(eq=False)
class OrbitPartition:
    table: CosetTable
    block_of: list[int]
    blocks: list[frozenset[int]]

    @property
    def block_sizes(self) -> list[int]:
        return sorted(len(b) for b in self.blocks)

    def identity_block(self) -> frozenset[int]:
        return self.blocks[self.block_of[0]]

    def same_partition(self, other: "OrbitPartition") -> bool:
        return set(self.blocks) == set(other.blocks)


def _reduce_actors(actors: Iterable[Mat2], n: int) -> list[Mat2]:
    out = []
    for A in actors:
        if A.modulus % n:
            raise ValueError(f"actor modulus {A.modulus} is not a multiple of {n}")
        out.append(Mat2(*A.entries, n))
    return out


def orbits(table: CosetTable, actors: Sequence[Mat2]) -> OrbitPartition:
    """Orbits of the group generated by ``actors`` on the cosets.

    Actors given at a multiple of the table modulus are reduced first.
    """
    k = table.index
    uf = UnionFind(k)
    for A in _reduce_actors(actors, table.modulus):
        for i, j in enumerate(table.action(A).tolist()):
            uf.union(i, j)
    roots: dict[int, int] = {}
    block_of = []
    members: list[list[int]] = []
    for i in range(k):
        r = uf.find(i)
        if r not in roots:
            roots[r] = len(members)
            members.append([])
        block_of.append(roots[r])
        members[roots[r]].append(i)
    return OrbitPartition(table, block_of, [frozenset(m) for m in members])


def orbit_of_identity(table: CosetTable, actors: Sequence[Mat2]) -> frozenset[int]:
    return orbits(table, actors).identity_block()
