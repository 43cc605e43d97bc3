import json
import random
from fractions import Fraction

import pytest
from conftest import image, random_element
from hypothesis import given, settings
from hypothesis import strategies as st

from gl2orbits import catalog, tables
from gl2orbits.catalog import (
    CatalogEntry,
    NotFound,
    ParseError,
    builtin,
    ingest_catalog,
    label_digits,
    load_subgroup,
    pipeline_filter,
    serialize,
)
from gl2orbits.cosets import StandardFamily
from gl2orbits.degrees import CurveKind, DegreeMultiset, total_degree
from gl2orbits.subgroups import SubgroupSpec, enumerate_subgroup
from gl2orbits.zmod import Mat2, NonInvertible

J7 = Fraction(2268945, 128)


def test_load_subgroup_forms(tmp_path):
    doc = {"modulus": 7, "generators": [[1, 1, 0, 1], [3, 0, 0, 1]]}
    p = tmp_path / "g.json"
    p.write_text(json.dumps(doc))
    for src in (doc, json.dumps(doc), p, str(p)):
        G = load_subgroup(src)
        assert G.modulus == 7 and len(G.generators) == 2
    assert enumerate_subgroup(load_subgroup(doc)).order == 42


def test_load_subgroup_errors(tmp_path):
    with pytest.raises(NonInvertible, match="gcd 2"):
        load_subgroup({"modulus": 4, "generators": [[1, 0, 0, 1], [2, 0, 0, 1]]})
    with pytest.raises(ParseError):
        load_subgroup("{not json")
    with pytest.raises(ParseError):
        load_subgroup({"modulus": 0, "generators": [[1, 0, 0, 1]]})
    with pytest.raises(ParseError):
        load_subgroup({"modulus": 5, "generators": [[1, 0, 0]]})
    with pytest.raises(ParseError):
        load_subgroup({"generators": [[1, 0, 0, 1]]})
    with pytest.raises(ParseError):
        load_subgroup(tmp_path / "missing.json")


@settings(max_examples=100)
@given(st.integers(1, 400), st.integers(0, 2**32), st.integers(1, 4))
def test_serialize_round_trip(n, seed, k):
    rng = random.Random(seed)
    G = SubgroupSpec(n, tuple(random_element(rng, n) for _ in range(k)))
    back = load_subgroup(serialize(G))
    assert back.modulus == G.modulus
    assert [g.to_list() for g in back.generators] == [g.to_list() for g in G.generators]


def test_builtin_lookups():
    e = builtin("7.56.1.b.1")
    assert e.orbit_multiset_x0.values == (2, 3, 3)
    assert Fraction(J7) in [j.value for j in e.j_invariants]
    by_j = builtin(J7)
    assert by_j.image.modulus == 56 and by_j.image.index == 112
    assert by_j.orbit_multiset_x1.values == (6, 9, 9)
    assert builtin("2268945/128").label == by_j.label
    assert builtin(1728).flags == {"cm": True}
    assert builtin("1.1.0.a.1").orbit_multiset_x0.values == (1,)
    with pytest.raises(NotFound):
        builtin("9.9.9.z.9")
    with pytest.raises(NotFound):
        builtin(5)
    with pytest.raises(NotFound):
        builtin("not-a-number")


def test_builtin_tables_sum_correctly():
    entries = catalog.builtin_entries()
    assert len(entries) == len({e.label for e in entries})
    for e in entries:
        for curve, ms in ((CurveKind.X0, e.orbit_multiset_x0), (CurveKind.X1, e.orbit_multiset_x1)):
            if ms is not None:
                assert ms.total == total_degree(curve, e.level), e.label
    assert sum(1 for e in entries if e.orbit_multiset_x0 and
               e.flags["has_infinitely_many_rational_points"]) == len(tables.INFINITE_B0) == 44


def test_bad_table_row_is_rejected():
    with pytest.raises(catalog.ValidationError, match="7.bad"):
        catalog._multiset(CurveKind.X0, 7, (2, 3, 4), "7.bad")


def test_embedded_j_are_not_cm():
    js = {j for _, _, js, _ in tables.FINITE_B0 + tables.FINITE_B1 for j in js}
    js |= {row[1] for row in tables.EXCEPTIONAL_IMAGES}
    assert js and not (js & tables.CM_J)


def test_label_digits():
    assert label_digits("7.56.1.b.1") == (7, 56, 1)
    with pytest.raises(ParseError):
        label_digits("abc")


def _write(directory, name, spec, label, flags=None):
    doc = json.loads(serialize(spec))
    doc["label"] = label
    if flags:
        doc["flags"] = flags
    (directory / name).write_text(json.dumps(doc))


def test_ingest(tmp_path):
    assert len(ingest_catalog(tmp_path)) == 0
    for k, img in enumerate(catalog.exceptional_images()[:3]):
        flags = {"level": img.modulus, "index": img.index, "genus": img.genus}
        _write(tmp_path, f"row{k}.json", img.spec, f"{img.curve_label}", flags)
    _write(tmp_path, "b0_11.json", StandardFamily.b0(11).spec(), "11.12.1.a.1")
    report = ingest_catalog(tmp_path)
    assert report.errors == []
    assert len(report) == 4
    assert {e.label for e in report} >= {"7.56.1.b.1", "11.12.1.a.1"}


def test_ingest_reports_bad_rows(tmp_path):
    _write(tmp_path, "bad.json", StandardFamily.b0(11).spec(), "11.12.0.a.1")
    (tmp_path / "broken.json").write_text("{")
    (tmp_path / "noninv.json").write_text(json.dumps(
        {"modulus": 4, "generators": [[2, 0, 0, 1]], "label": "4.1.0.a.1"}))
    report = ingest_catalog(tmp_path)
    assert len(report) == 0 and len(report.errors) == 3
    assert any("11.12.0.a.1" in e for e in report.errors)
    # without validation the wrong genus goes unnoticed
    assert len(ingest_catalog(tmp_path, validate=False).errors) == 2


def test_ingest_with_index(tmp_path):
    _write(tmp_path, "a.json", StandardFamily.b0(5).spec(), "5.6.0.a.1")
    (tmp_path / "index.json").write_text(json.dumps(
        [{"file": "a.json", "orbit_multiset_x0": [1, 5]}]))
    report = ingest_catalog(tmp_path)
    (e,) = report.entries
    assert e.orbit_multiset_x0 == DegreeMultiset((1, 5), CurveKind.X0, 5)


def _level8_twist() -> SubgroupSpec:
    """Full-determinant group of GL-level 8 whose SL-part has level 4:
    a = 1 (mod 4) on det 1, twisted by a character of det of conductor 8."""
    chi8 = {1: 1, 3: 1, 5: -1, 7: -1}
    members = []
    for a in range(8):
        for b in range(8):
            for c in range(0, 8, 4):
                for d in range(8):
                    det = (a * d - b * c) % 8
                    if det % 2 and chi8[det] == (1 if a % 4 == 1 else -1):
                        members.append(Mat2(a, b, c, d, 8))
    rng = random.Random(0)
    while True:
        G = SubgroupSpec(8, tuple(rng.sample(members, 4)))
        if enumerate_subgroup(G).order == len(members):
            return G


def test_pipeline_conditions():
    entries = [
        CatalogEntry("det", 3, generators=SubgroupSpec.trivial(3)),
        CatalogEntry("twist", 8, generators=_level8_twist()),
        CatalogEntry("open", 6, generators=SubgroupSpec.from_lists(6, [(5, 0, 0, 1)])),
        CatalogEntry("nopoints", 3, generators=StandardFamily.b0(3).spec(),
                     flags={"has_infinitely_many_rational_points": False}),
    ]
    res = pipeline_filter(entries)
    failed = {o.entry.label: o.failed for o in res.rejected}
    assert failed == {
        "det": catalog.CONDITIONS[0],
        "twist": catalog.CONDITIONS[1],
        "open": catalog.CONDITIONS[2],
        "nopoints": catalog.CONDITIONS[3],
    }


def test_pipeline_passes_known_classes():
    entries = [CatalogEntry(f"B0({p})", p, generators=StandardFamily.b0(p).spec())
               for p in (2, 3, 5, 7, 13)]
    entries.append(CatalogEntry("1.1.0.a.1", 1, generators=SubgroupSpec.full(1)))
    res = pipeline_filter(entries)
    assert len(res.passed) == len(entries)
    for o in res.outcomes:
        assert "rational points: flag-unknown" in o.notes
    # flags only, no generators
    e = CatalogEntry("7.8.0.a.1", 7, flags={"full_det": True, "sl_level": 7, "genus": 0,
                                            "closed": True, "has_infinitely_many_rational_points": True})
    assert pipeline_filter([e]).passed == [e]
    bare = CatalogEntry("x", 7)
    assert pipeline_filter([bare]).outcomes[0].notes == [
        "no generators: computable conditions read from flags", "flag-unknown"]


def test_entry_json_is_stable():
    e = builtin(J7)
    a = json.dumps(e.to_json(), sort_keys=True)
    assert a == json.dumps(builtin(J7).to_json(), sort_keys=True)
    assert e.to_json()["conditional"] is True
    assert builtin("7.8.0.a.1").to_json()["conditional"] is False
    assert e.to_json()["image"]["generators"] == [g.to_list() for g in image(J7).generators]
