"""Subgroups of GL2(Z/n) given by generators.

A :class:`SubgroupSpec` at modulus n stands for the open subgroup of
GL2(Zhat) that is the full preimage of the generated finite group.  Orders
are computed through the determinant: |G| = |G n SL2| * |det G|, and the
SL2 part is enumerated from Schreier generators, so G itself is only
enumerated when an element list is actually needed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

import numpy as np

from . import batch
from .batch import CapExceeded
from .zmod import (
    Mat2,
    NonInvertible,
    crt_join,
    embed_component,
    euler_phi,
    factor,
    gl2_generators,
    gl2_order,
    mat_det,
    mat_inv,
    mat_mul,
    minus_identity,
    sl2_order,
    unit_group_generators,
)

DEFAULT_CAP = 2**25

__all__ = [
    "CapExceeded",
    "ConjClass",
    "DEFAULT_CAP",
    "EnumeratedSubgroup",
    "SubgroupSpec",
]


@dataclass(frozen=True)
class SubgroupSpec:
    modulus: int
    generators: tuple[Mat2, ...]
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("a subgroup needs at least one generator")
        for g in gens:
            if g.modulus != self.modulus:
                raise ValueError(f"generator {g} is not mod {self.modulus}")
            det = mat_det(g)
            if not det.is_unit():
                raise NonInvertible(det.value, self.modulus)
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_lists(cls, modulus: int, rows: Iterable[Sequence[int]], label=None):
        return cls(modulus, tuple(Mat2.of(r, modulus) for r in rows), label)

    @classmethod
    def full(cls, n: int) -> "SubgroupSpec":
        return cls(n, tuple(gl2_generators(n)), "GL2")

    @classmethod
    def trivial(cls, n: int) -> "SubgroupSpec":
        return cls(n, (Mat2.identity(n),), "trivial")

    def batch(self) -> np.ndarray:
        return batch.as_batch(self.generators)

    def reduced(self, m: int) -> "SubgroupSpec":
        """The image mod m, for m dividing the modulus."""
        if self.modulus % m:
            raise ValueError(f"{m} does not divide {self.modulus}")
        return SubgroupSpec(m, tuple(Mat2(*g.entries, m) for g in self.generators), self.label)


@dataclass(frozen=True)
class ConjClass:
    """A GL2(Z/n)-conjugacy class, held through one representative."""

    representative: SubgroupSpec


@dataclass(eq=False)
class EnumeratedSubgroup:
    spec: SubgroupSpec
    keys: np.ndarray
    cached: dict = field(default_factory=dict)

    @property
    def modulus(self) -> int:
        return self.spec.modulus

    @property
    def order(self) -> int:
        return int(self.keys.size)

    @property
    def elements(self) -> list[Mat2]:
        return [Mat2.from_key(int(k), self.modulus) for k in self.keys]

    def matrices(self) -> np.ndarray:
        return batch.unpack(self.keys, self.modulus)

    def __contains__(self, A: Mat2) -> bool:
        return bool(batch.member(self.keys, np.array([A.key]))[0])

    def __len__(self) -> int:
        return self.order

    def same_elements(self, other: "EnumeratedSubgroup") -> bool:
        return self.modulus == other.modulus and np.array_equal(self.keys, other.keys)


def _as_spec(G) -> SubgroupSpec:
    return G.spec if isinstance(G, EnumeratedSubgroup) else G


def from_keys(keys: np.ndarray, n: int, label=None) -> EnumeratedSubgroup:
    """Wrap a sorted key array that is already known to be a subgroup."""
    gens = tuple(Mat2.from_key(int(k), n) for k in keys[: min(keys.size, 1)])
    spec = SubgroupSpec(n, gens or (Mat2.identity(n),), label)
    return EnumeratedSubgroup(spec, keys)


@lru_cache(maxsize=64)
def enumerate_subgroup(spec: SubgroupSpec, cap: int = DEFAULT_CAP) -> EnumeratedSubgroup:
    keys = batch.generate(spec.generators, spec.modulus, cap)
    return EnumeratedSubgroup(spec, keys)


def contains(G, A: Mat2) -> bool:
    if not isinstance(G, EnumeratedSubgroup):
        G = enumerate_subgroup(G)
    return A in G


# --- determinant and SL2 part -------------------------------------------------


@lru_cache(maxsize=256)
def _det_transversal(spec: SubgroupSpec) -> tuple[dict[int, Mat2], tuple[Mat2, ...]]:
    """Coset representatives of G n SL2 in G, indexed by determinant, and
    the resulting Schreier generators of G n SL2."""
    n = spec.modulus
    one = Mat2.identity(n)
    reps = {1 % n: one}
    queue = [1 % n]
    schreier: dict[Mat2, None] = {}
    while queue:
        u = queue.pop(0)
        r = reps[u]
        for g in spec.generators:
            rg = mat_mul(r, g)
            v = mat_det(rg).value
            if v not in reps:
                reps[v] = rg
                queue.append(v)
            else:
                s = mat_mul(rg, mat_inv(reps[v]))
                if s != one:
                    schreier[s] = None
    return reps, tuple(schreier) or (one,)


def det_image(G) -> tuple[int, ...]:
    spec = _as_spec(G)
    return tuple(sorted(_det_transversal(spec)[0]))


def is_full_det(G) -> bool:
    spec = _as_spec(G)
    return len(det_image(spec)) == euler_phi(spec.modulus)


def sl2_part(G) -> SubgroupSpec:
    """Generators of G n SL2(Z/n)."""
    spec = _as_spec(G)
    return SubgroupSpec(spec.modulus, _det_transversal(spec)[1], "SL2 part")


@lru_cache(maxsize=64)
def _sl2_keys(spec: SubgroupSpec, cap: int) -> np.ndarray:
    return batch.generate(sl2_part(spec).generators, spec.modulus, cap)


def intersect_sl2(G, cap: int = DEFAULT_CAP) -> EnumeratedSubgroup:
    spec = _as_spec(G)
    return EnumeratedSubgroup(sl2_part(spec), _sl2_keys(spec, cap))


@lru_cache(maxsize=1024)
def _order(spec: SubgroupSpec, cap: int) -> int:
    return int(_sl2_keys(spec, cap).size) * len(det_image(spec))


def order(G, cap: int = DEFAULT_CAP) -> int:
    if isinstance(G, EnumeratedSubgroup):
        return G.order
    return _order(G, cap)


def index(G, cap: int = DEFAULT_CAP) -> int:
    spec = _as_spec(G)
    return gl2_order(spec.modulus) // order(G, cap)


# --- levels ---------------------------------------------------------------------


def _descend(n: int, valid) -> int:
    """Least divisor d of n with valid(d), given that validity is closed
    under taking multiples and under gcd: lower one prime at a time."""
    current = n
    for p, _ in factor(n):
        while current % p == 0 and valid(current // p):
            current //= p
    return current


def gl_level(G, cap: int = DEFAULT_CAP) -> int:
    spec = _as_spec(G)
    n = spec.modulus
    full = order(spec, cap)

    def valid(d: int) -> bool:
        return order(spec.reduced(d), cap) * (gl2_order(n) // gl2_order(d)) == full

    return _descend(n, valid)


def reduced_count(keys: np.ndarray, n: int, d: int) -> int:
    """Number of distinct images mod d of the packed matrices."""
    X = batch.unpack(keys, n) % d
    return int(np.unique(batch.pack(X, d)).size)


def sl_level(G, cap: int = DEFAULT_CAP) -> int:
    spec = _as_spec(G)
    n = spec.modulus
    S = _sl2_keys(spec, cap)

    def valid(d: int) -> bool:
        return reduced_count(S, n, d) * (sl2_order(n) // sl2_order(d)) == S.size

    return _descend(n, valid)


# --- constructions --------------------------------------------------------------


def adjoin_minus_identity(G) -> SubgroupSpec:
    spec = _as_spec(G)
    n = spec.modulus
    return SubgroupSpec(n, spec.generators + (minus_identity(n),), spec.label)


def contains_minus_identity(G, cap: int = DEFAULT_CAP) -> bool:
    spec = _as_spec(G)
    n = spec.modulus
    return bool(batch.member(_sl2_keys(spec, cap), np.array([minus_identity(n).key]))[0])


def conjugate(G, g: Mat2) -> SubgroupSpec:
    """The subgroup g G g^-1."""
    spec = _as_spec(G)
    gi = mat_inv(g)
    gens = tuple(mat_mul(mat_mul(g, x), gi) for x in spec.generators)
    return SubgroupSpec(spec.modulus, gens, spec.label)


def element_orders(G: EnumeratedSubgroup) -> np.ndarray:
    n = G.modulus
    X = G.matrices()
    one = batch.identity_key(n)
    orders = np.zeros(len(X), dtype=np.int64)
    P = X.copy()
    k = 1
    while True:
        hit = (batch.pack(P, n) == one) & (orders == 0)
        orders[hit] = k
        if np.all(orders):
            return orders
        P = batch.mul(P, X, n)
        k += 1


def order_histogram(G: EnumeratedSubgroup) -> dict[int, int]:
    return dict(sorted(Counter(element_orders(G).tolist()).items()))


def is_conjugate(G1, G2, cap: int = DEFAULT_CAP) -> Optional[Mat2]:
    """A matrix h with h G2 h^-1 = G1, or None when the groups are not
    conjugate in GL2(Z/n).  Invariants are compared first; the search then
    runs over right-coset representatives of G1 (if h works, so does g h
    for every g in G1)."""
    s1, s2 = _as_spec(G1), _as_spec(G2)
    if s1.modulus != s2.modulus:
        raise ValueError("subgroups live at different moduli")
    n = s1.modulus
    if order(s1, cap) != order(s2, cap):
        return None
    if det_image(s1) != det_image(s2):
        return None
    E1, E2 = enumerate_subgroup(s1, cap), enumerate_subgroup(s2, cap)
    if order_histogram(E1) != order_histogram(E2):
        return None
    from .cosets import build_coset_table

    table = build_coset_table(E1, n)
    R = batch.as_batch(table.representatives)
    Rinv = batch.inv(R, n)
    ok = np.ones(len(R), dtype=bool)
    for x in s2.generators:
        conj = batch.mul(batch.mul(R, x.entries, n), Rinv, n)
        ok &= batch.member(E1.keys, batch.pack(conj, n))
    hits = np.flatnonzero(ok)
    return table.representatives[int(hits[0])] if hits.size else None


def commutator(a: Mat2, b: Mat2) -> Mat2:
    return mat_mul(mat_mul(a, b), mat_mul(mat_inv(a), mat_inv(b)))


def commutator_subgroup(G, cap: int = DEFAULT_CAP) -> EnumeratedSubgroup:
    """[G, G]: the normal closure in G of the generator commutators."""
    spec = _as_spec(G)
    n = spec.modulus
    one = Mat2.identity(n)
    gens = [commutator(a, b) for a in spec.generators for b in spec.generators]
    gens = [g for g in dict.fromkeys(gens) if g != one] or [one]
    keys = batch.generate(gens, n, cap)
    changed = True
    while changed:
        changed = False
        for g in spec.generators:
            gi = mat_inv(g)
            for k in list(gens):
                c = mat_mul(mat_mul(g, k), gi)
                if not batch.member(keys, np.array([c.key]))[0]:
                    keys = batch.generate([c], n, cap, start=keys, start_gens=gens)
                    gens.append(c)
                    changed = True
    return EnumeratedSubgroup(SubgroupSpec(n, tuple(gens), "commutator"), keys)


@dataclass(frozen=True)
class AgreeableClosure:
    spec: SubgroupSpec
    working_modulus: int
    commutator_primes: tuple[int, ...]


def agreeable_closure(G, cap: int = DEFAULT_CAP) -> AgreeableClosure:
    """Scalars times G times the full GL2 factors at the primes outside the
    support of the SL-level of [G, G], all computed at the modulus of G."""
    spec = _as_spec(G)
    n = spec.modulus
    C = commutator_subgroup(spec, cap)
    primes = tuple(p for p, _ in factor(sl_level(C.spec, cap)))
    gens = list(spec.generators)
    gens += [Mat2(u, 0, 0, u, n) for u in unit_group_generators(n)]
    for p, e in factor(n):
        if p not in primes:
            gens += [embed_component(x, n) for x in gl2_generators(p**e)]
    label = f"agreeable closure at modulus {n}"
    return AgreeableClosure(SubgroupSpec(n, tuple(gens), label), n, primes)


# --- moving between moduli ---------------------------------------------------


def kernel_generators(n: int, d: int) -> list[Mat2]:
    """Generators of the kernel of GL2(Z/n) -> GL2(Z/d), for d | n."""
    if n % d:
        raise ValueError(f"{d} does not divide {n}")
    gens = []
    for p, a in factor(n):
        q = p**a
        b = 0
        while d % p ** (b + 1) == 0:
            b += 1
        if b == 0:
            gens += [embed_component(x, n) for x in gl2_generators(q)]
            continue
        for k in range(b, a):
            t = p**k
            for E in ((1 + t, 0, 0, 1), (1, t, 0, 1), (1, 0, t, 1), (1, 0, 0, 1 + t)):
                gens.append(embed_component(Mat2.of(E, q), n))
    return gens or [Mat2.identity(n)]


def _lift(x: Mat2, m: int) -> Mat2:
    """Lift x (mod g, g | m) to mod m: identity at primes not dividing g."""
    g = x.modulus
    parts = []
    for p, a in factor(m):
        if g % p == 0:
            parts.append(Mat2(*x.entries, p**a))
        else:
            parts.append(Mat2.identity(p**a))
    return crt_join(parts) if parts else Mat2.identity(1)


def at_modulus(G, m: int) -> SubgroupSpec:
    """The image mod m of the open subgroup presented by G."""
    spec = _as_spec(G)
    N = spec.modulus
    if N % m == 0:
        return spec.reduced(m)
    g = gcd(N, m)
    base = [_lift(x, m) for x in spec.reduced(g).generators] if g > 1 else []
    gens = base + kernel_generators(m, g)
    return SubgroupSpec(m, tuple(gens), spec.label)


def same_open_subgroup(G1, G2, cap: int = DEFAULT_CAP) -> bool:
    """Whether two specs (possibly at different moduli) present the same
    open subgroup: compare element sets at the lcm of their levels."""
    d = lcm(gl_level(G1, cap), gl_level(G2, cap))
    A = enumerate_subgroup(at_modulus(G1, d), cap)
    B = enumerate_subgroup(at_modulus(G2, d), cap)
    return A.same_elements(B)


def is_subgroup(G1, G2, cap: int = DEFAULT_CAP) -> bool:
    """Whether the open subgroup G1 lies in G2."""
    d = lcm(gl_level(G1, cap), gl_level(G2, cap))
    B = enumerate_subgroup(at_modulus(G2, d), cap)
    gens = at_modulus(G1, d).generators
    return bool(np.all(batch.member(B.keys, np.array([x.key for x in gens]))))
