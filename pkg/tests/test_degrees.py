from fractions import Fraction

import pytest
from conftest import image, random_spec
from hypothesis import given, settings
from hypothesis import strategies as st

from gl2orbits import catalog, tables
from gl2orbits.closures import ch_closure
from gl2orbits.cosets import build_coset_table
from gl2orbits.degrees import (
    CMInput,
    CurveKind,
    DegreeMultiset,
    JInvariant,
    MissingCatalog,
    all_degree_set,
    family,
    fiber_degrees,
    fiber_partition,
    infinite_degree_set,
    infinite_fiber_multisets,
    is_cm,
    level_component,
    point_degrees,
    primitive_degrees,
    theorem_consistency_check,
    total_degree,
)
from gl2orbits.invariants import b1_index, psi
from gl2orbits.subgroups import SubgroupSpec

X0, X1 = CurveKind.X0, CurveKind.X1
J7 = Fraction(2268945, 128)


def test_cm_list():
    assert is_cm(0)
    assert is_cm(-262537412640768000)
    assert is_cm("1728")
    assert not is_cm(1)
    assert len(tables.CM_J) == 13


@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9).filter(bool))
def test_j_invariant_is_reduced(a, b):
    j = JInvariant(a, b)
    assert j.denominator > 0
    assert Fraction(j.numerator, j.denominator) == Fraction(a, b)
    assert JInvariant.of(str(j)) == j


def test_cm_inputs_rejected():
    with pytest.raises(CMInput):
        fiber_degrees(X0, 7, image(J7), j=1728)
    with pytest.raises(CMInput):
        point_degrees(X1, 7, image(J7), j=0)


def test_fiber_examples():
    assert fiber_degrees(X0, 7, image(J7), j=J7).values == (2, 3, 3)
    assert fiber_degrees(X1, 15, image(Fraction(1331, 8))).values == (4, 4, 8, 40, 40)
    assert fiber_degrees(X0, 1, image(J7)).values == (1,)
    assert fiber_degrees("x0", 1, SubgroupSpec.trivial(3)).values == (1,)
    assert point_degrees(X0, 7, image(J7)) == {2, 3}
    assert point_degrees(X1, 7, image(J7)) == {6, 9}
    assert point_degrees(X0, 1, SubgroupSpec.full(5)) == {1}


def test_infinite_degree_sets():
    assert infinite_degree_set(X0, 7).values == (1, 2, 6, 7, 8)
    assert level_component(X0, 7).values == (1, 2, 6, 7)
    assert infinite_degree_set(X0, 1).values == (1,)
    # evaluated by hand: D(16) plus d * [B1(m):B1(16)] for m = 1, 2, 4, 8
    expected = {2} | {96} | {32, 64} | {16, 48} | {4, 8}
    assert set(infinite_degree_set(X1, 16).values) == expected
    assert not infinite_degree_set(X1, 16).conditional


def test_all_degree_sets():
    s = all_degree_set(X0, 7)
    assert s.conditional and s.regime == "all"
    assert level_component(X0, 7, "all").values == (1, 2, 3, 6, 7)
    assert level_component(X1, 11, "all").values == (5, 55)
    assert set(all_degree_set(X0, 37).values) == {1, 37, 38}
    for n in range(1, 40):
        for c in (X0, X1):
            assert infinite_degree_set(c, n).as_set() <= all_degree_set(c, n).as_set()
            assert all_degree_set(c, n).values


def test_infinite_fiber_multisets():
    got = {ms.values for ms in infinite_fiber_multisets(X0, 7)}
    assert got == {(1, 7), (2, 6), (8,)}
    assert {ms.values for ms in infinite_fiber_multisets(X0, 1)} == {(1,)}
    got = {ms.values for ms in infinite_fiber_multisets(X0, 9)}
    assert got == {(12,), (3, 3, 6), (3, 9), (6, 6), (1, 2, 9)}
    with pytest.raises(MissingCatalog):
        infinite_fiber_multisets(X1, 7)


def test_infinite_fiber_multisets_from_catalog():
    entries = [
        catalog.CatalogEntry("1.1.0.a.1", 1, orbit_multiset_x1=DegreeMultiset((1,), X1, 1)),
        catalog.CatalogEntry("7.x", 7, orbit_multiset_x1=DegreeMultiset((6, 9, 9), X1, 7),
                             flags={"has_infinitely_many_rational_points": False}),
    ]
    got = {ms.values for ms in infinite_fiber_multisets(X1, 7, entries)}
    assert got == {(24,)}


def test_theorem_consistency():
    for n in list(range(1, 31)) + [36, 50]:
        assert theorem_consistency_check(n), n
    values = set()
    for ms in infinite_fiber_multisets(X0, 9):
        values |= ms.as_set()
    assert values == {1, 2, 3, 6, 9, 12} == infinite_degree_set(X0, 9).as_set()


def test_primitive_degrees_from_tables():
    for m, D in tables.D0_INFINITE.items():
        rows = [ms for level, _, ms in tables.INFINITE_B0 if level == m]
        assert primitive_degrees(X0, m, rows) == D


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 24), st.integers(0, 2**32))
def test_fiber_totals(n, seed):
    import random

    G = random_spec(random.Random(seed), n)
    assert sum(fiber_degrees(X0, n, G).values) == psi(n) == total_degree(X0, n)
    assert sum(fiber_degrees(X1, n, G).values) == b1_index(n) == total_degree(X1, n)


ROW_LEVELS = [
    (J7, 7), (Fraction(-35937, 4), 12), (Fraction(109503, 64), 12),
    (Fraction(1331, 8), 15), (Fraction(-1680914269, 32768), 15),
    (Fraction(4097**3, 2**4), 16), (Fraction(16974593, 256), 16),
    (Fraction(406749952), 18), (Fraction(1792), 18),
    (Fraction(4913), 24), (Fraction(16974593), 24),
]


@pytest.mark.parametrize("j,n", ROW_LEVELS)
def test_closure_invariance(j, n):
    G = image(j)
    for curve in (X0, X1):
        clo = ch_closure(family(curve, n), G).closure
        assert fiber_degrees(curve, n, G) == fiber_degrees(curve, n, clo)


@pytest.mark.parametrize("j,n", ROW_LEVELS)
def test_x1_blocks_refine_x0_blocks(j, n):
    G = image(j)
    T0 = build_coset_table(family(X0, n))
    T1 = build_coset_table(family(X1, n))
    P0, P1 = fiber_partition(X0, n, G), fiber_partition(X1, n, G)
    for block in P1.blocks:
        images = {P0.block_of[T0.identify(T1.representatives[i])] for i in block}
        assert len(images) == 1
