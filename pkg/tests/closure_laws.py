"""Closure laws shared by the property tests and the acceptance suite."""

from math import gcd

import numpy as np

from gl2orbits import batch
from gl2orbits.closures import brute_force_ch_closure, ch_closed, ch_closure, ch_equivalent, h_closure
from gl2orbits.cosets import FamilyKind, StandardFamily, build_coset_table, orbit_of_identity, orbits
from gl2orbits.subgroups import (
    SubgroupSpec,
    at_modulus,
    conjugate,
    enumerate_subgroup,
    gl_level,
    kernel_generators,
)
from gl2orbits.zmod import Mat2

from conftest import random_element, random_spec


def elements(G, n) -> np.ndarray:
    return enumerate_subgroup(at_modulus(G, n)).keys


def subset(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.all(batch.member(b, a)))


def product_keys(A: np.ndarray, B: np.ndarray, n: int) -> np.ndarray:
    X = batch.outer_mul(batch.unpack(A, n), batch.unpack(B, n), n)
    return np.unique(batch.pack(X, n))


def check_closure_case(family: StandardFamily, G: SubgroupSpec, extra: Mat2) -> None:
    """Containment, idempotence, CH-monotonicity, level bound and oracle
    agreement for one sampled input."""
    n = family.level
    res = ch_closure(family, G)
    clo = res.elements.keys
    g_keys = elements(G, n)
    H_keys = enumerate_subgroup(family.spec()).keys
    h_keys = h_closure(family, G).elements.keys
    assert subset(g_keys, clo)
    assert subset(clo, h_keys)
    assert subset(h_keys, product_keys(H_keys, g_keys, n))
    assert np.array_equal(ch_closure(family, res.closure).elements.keys, clo)
    bigger = SubgroupSpec(G.modulus, G.generators + (extra,))
    assert subset(clo, ch_closure(family, bigger).elements.keys)
    assert n % gl_level(res.closure) == 0
    # the closure has the same orbit partition as G
    assert ch_equivalent(family, G, res.closure)
    _, members = brute_force_ch_closure(family, G)
    assert np.array_equal(np.unique([m.key for m in members]), clo)


def check_monotone_in_family(n: int, G: SubgroupSpec) -> None:
    small = ch_closure(StandardFamily.b1(n), G).elements.keys
    big = ch_closure(StandardFamily.b0(n), G).elements.keys
    assert subset(small, big)


def preimage_table(family: StandardFamily, N: int):
    return build_coset_table(enumerate_subgroup(at_modulus(family.spec(), N)), N)


def check_normal_product(family: StandardFamily, table, G: SubgroupSpec) -> None:
    """G and K.G have the same orbits for normal K inside H: the kernel of
    reduction to the family level, and the scalars lying in H."""
    N = table.modulus
    n = family.level
    KG = SubgroupSpec(N, G.generators + tuple(kernel_generators(N, n)))
    assert ch_equivalent(table, G, KG)
    scalars = tuple(Mat2(u, 0, 0, u, N) for u in range(1, N) if gcd(u, N) == 1
                    and family.contains(Mat2(u, 0, 0, u, n)))
    assert ch_equivalent(table, G, SubgroupSpec(N, G.generators + scalars))
    coarse = build_coset_table(family)
    assert orbits(table, G.generators).block_sizes == [
        s * (table.index // coarse.index) for s in orbits(coarse, G.generators).block_sizes
    ]


def find_h_counterexample(rng, max_n: int = 4, tries: int = 2000):
    """A triple (family, G, G') with G <= G' but clo_H(G) not inside clo_H(G')."""
    for _ in range(tries):
        n = rng.randint(2, max_n)
        family = StandardFamily(rng.choice([FamilyKind.B0, FamilyKind.B1]), n)
        G = random_spec(rng, n, 2) if rng.random() < 0.7 else SubgroupSpec.trivial(n)
        big = SubgroupSpec(n, G.generators + (random_element(rng, n),))
        a = h_closure(family, G).elements.keys
        b = h_closure(family, big).elements.keys
        if not subset(a, b):
            return family, G, big
    return None


def closed_of_level(n: int, rng, count: int = 3) -> list[SubgroupSpec]:
    """CB0(n)-closed subgroups whose level is exactly n."""
    out = [StandardFamily.b0(n).spec()]
    for _ in range(40 * count):
        if len(out) >= count:
            break
        G = ch_closure(StandardFamily.b0(n), random_spec(rng, n)).closure
        if gl_level(G) == n:
            out.append(G)
    return out


def check_family_lemma(n: int, G: SubgroupSpec, m_max: int = 12) -> None:
    for m in range(1, m_max + 1):
        assert ch_closed(StandardFamily.b0(m), G) == (m % n == 0), (n, m)


def check_degree_formula(n: int, small: StandardFamily, G: SubgroupSpec, g: Mat2) -> None:
    """|(H g).G| = [H':H] |(H' g).G|  iff  H.K = H'.K for K = g G g^-1,
    with H = small and H' = B0(n)."""
    big = StandardFamily.b0(n)
    Ts, Tb = build_coset_table(small), build_coset_table(big)
    ratio = Ts.index // Tb.index
    Ps, Pb = orbits(Ts, G.generators), orbits(Tb, G.generators)
    lhs = len(Ps.blocks[Ps.block_of[Ts.identify(g)]]) == ratio * len(Pb.blocks[Pb.block_of[Tb.identify(g)]])
    K = enumerate_subgroup(conjugate(G, g)).keys
    Hs = enumerate_subgroup(small.spec()).keys
    Hb = enumerate_subgroup(big.spec()).keys
    rhs = np.array_equal(product_keys(Hs, K, n), product_keys(Hb, K, n))
    assert lhs == rhs
    assert len(orbit_of_identity(Ts, conjugate(G, g).generators)) == len(Ps.blocks[Ps.block_of[Ts.identify(g)]])
    return lhs
