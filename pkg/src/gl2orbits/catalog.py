"""Built-in tables, the subgroup file format, catalog ingestion and the
filter pipeline for candidate images."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Optional, Union

from . import tables
from .cosets import StandardFamily
from .closures import ch_closed
from .degrees import CurveKind, DegreeMultiset, JInvariant, JLike, total_degree
from .invariants import genus
from .subgroups import DEFAULT_CAP, SubgroupSpec, gl_level, index, is_full_det, sl_level
from .zmod import Mat2, NonInvertible, mat_det

log = logging.getLogger(__name__)

# SL-levels allowed for images of non-CM rational j with infinitely many points.
ALLOWED_SL_LEVELS = frozenset(
    list(range(1, 23)) + [24, 25, 26, 27, 28, 30, 32, 33, 36, 39, 40, 42, 48, 49, 52]
)


class ParseError(ValueError):
    pass


class NotFound(LookupError):
    pass


class ValidationError(ValueError):
    pass


@dataclass
class CatalogEntry:
    label: str
    level: int
    orbit_multiset_x0: Optional[DegreeMultiset] = None
    orbit_multiset_x1: Optional[DegreeMultiset] = None
    j_invariants: list[JInvariant] = field(default_factory=list)
    generators: Optional[SubgroupSpec] = None
    flags: dict = field(default_factory=dict)
    image: Optional["ExceptionalImage"] = None

    def to_json(self) -> dict:
        out = {"label": self.label, "level": self.level}
        if self.orbit_multiset_x0 is not None:
            out["orbit_multiset_x0"] = str(self.orbit_multiset_x0)
        if self.orbit_multiset_x1 is not None:
            out["orbit_multiset_x1"] = str(self.orbit_multiset_x1)
        if self.j_invariants:
            out["j_invariants"] = [str(j) for j in self.j_invariants]
        if self.generators is not None:
            out["modulus"] = self.generators.modulus
            out["generators"] = [g.to_list() for g in self.generators.generators]
        if self.flags:
            out["flags"] = dict(self.flags)
        if self.image is not None:
            out["image"] = self.image.to_json()
        out["conditional"] = not self.flags.get("has_infinitely_many_rational_points", False)
        return out


@dataclass(frozen=True)
class ExceptionalImage:
    """An explicit image of Galois attached to an exceptional rational j."""

    curve_label: str
    j: JInvariant
    modulus: int
    index: int
    genus: int
    sl_level: int
    spec: SubgroupSpec

    def to_json(self) -> dict:
        return {
            "curve_label": self.curve_label,
            "j": str(self.j),
            "n": self.modulus,
            "i": self.index,
            "g": self.genus,
            "m": self.sl_level,
            "generators": [g.to_list() for g in self.spec.generators],
        }


# --- subgroup files -----------------------------------------------------------


def _parse_document(source) -> dict:
    if isinstance(source, dict):
        return source
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        try:
            source = Path(source).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc}") from exc
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("a subgroup document must be a JSON object")
    return doc


def spec_from_document(doc: dict) -> SubgroupSpec:
    try:
        n = doc["modulus"]
        rows = doc["generators"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc}") from exc
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"modulus must be a positive integer, got {n!r}")
    if not isinstance(rows, list) or not rows:
        raise ParseError("generators must be a non-empty list")
    gens = []
    for k, r in enumerate(rows):
        if not (isinstance(r, list) and len(r) == 4 and all(isinstance(x, int) for x in r)):
            raise ParseError(f"generator {k} is not a list of four integers: {r!r}")
        gens.append(Mat2.of(r, n))
    label = doc.get("label")
    for k, g in enumerate(gens):
        det = mat_det(g)
        if not det.is_unit():
            err = NonInvertible(det.value, n)
            err.args = (f"generator {k} {rows[k]}: {err}",)
            raise err
    return SubgroupSpec(n, tuple(gens), label if isinstance(label, str) else None)


def load_subgroup(source: Union[str, Path, dict]) -> SubgroupSpec:
    """Read a subgroup file: a path, JSON text or an already-parsed object."""
    return spec_from_document(_parse_document(source))


def serialize(spec: SubgroupSpec) -> str:
    doc = {"modulus": spec.modulus, "generators": [g.to_list() for g in spec.generators]}
    if spec.label:
        doc["label"] = spec.label
    return json.dumps(doc)


# --- built-in data ------------------------------------------------------------


def _multiset(curve: CurveKind, level: int, values, label: str) -> DegreeMultiset:
    ms = DegreeMultiset(tuple(values), curve, level, label)
    if ms.total != total_degree(curve, level):
        raise ValidationError(f"{label}: {curve.value} orbits sum to {ms.total}, "
                              f"expected {total_degree(curve, level)}")
    return ms


def _merge_j(entry: CatalogEntry, js) -> None:
    for j in js:
        j = JInvariant.of(j)
        if j not in entry.j_invariants:
            entry.j_invariants.append(j)


@lru_cache(maxsize=None)
def _exceptional() -> tuple[ExceptionalImage, ...]:
    out = []
    for label, j, n, i, g, m, rows in tables.EXCEPTIONAL_IMAGES:
        spec = SubgroupSpec.from_lists(n, rows, f"image of j = {j}")
        out.append(ExceptionalImage(label, JInvariant.of(j), n, i, g, m, spec))
    return tuple(out)


@lru_cache(maxsize=None)
def _by_label() -> dict[str, CatalogEntry]:
    entries: dict[str, CatalogEntry] = {}
    for level, label, ms in tables.INFINITE_B0:
        entries[label] = CatalogEntry(
            label, level, orbit_multiset_x0=_multiset(CurveKind.X0, level, ms, label),
            flags={"has_infinitely_many_rational_points": True},
        )
    for curve, rows in ((CurveKind.X0, tables.FINITE_B0), (CurveKind.X1, tables.FINITE_B1)):
        for level, label, js, ms in rows:
            e = entries.setdefault(label, CatalogEntry(label, level, flags={
                "has_infinitely_many_rational_points": False}))
            attr = "orbit_multiset_x0" if curve is CurveKind.X0 else "orbit_multiset_x1"
            setattr(e, attr, _multiset(curve, level, ms, label))
            _merge_j(e, js)
    return entries


@lru_cache(maxsize=None)
def _by_j() -> dict[Fraction, CatalogEntry]:
    """One entry per exceptional j, combining its B0 and B1 rows."""
    out: dict[Fraction, CatalogEntry] = {}
    for curve, rows in ((CurveKind.X0, tables.FINITE_B0), (CurveKind.X1, tables.FINITE_B1)):
        for level, label, js, ms in rows:
            for j in js:
                e = out.setdefault(j, CatalogEntry(label, level, j_invariants=[JInvariant.of(j)],
                                                   flags={"has_infinitely_many_rational_points": False}))
                attr = "orbit_multiset_x0" if curve is CurveKind.X0 else "orbit_multiset_x1"
                setattr(e, attr, _multiset(curve, level, ms, label))
    for img in _exceptional():
        out[img.j.value].image = img
    return out


def builtin_entries() -> list[CatalogEntry]:
    return list(_by_label().values())


def exceptional_images() -> tuple[ExceptionalImage, ...]:
    return _exceptional()


def builtin(key: Union[str, JLike]) -> CatalogEntry:
    """Look up a built-in row by label ("7.56.1.b.1") or by exact rational j."""
    if isinstance(key, str) and key.count(".") == 4:
        try:
            return _by_label()[key]
        except KeyError:
            raise NotFound(f"no built-in entry labelled {key}") from None
    try:
        j = JInvariant.of(key).value
    except (ValueError, ZeroDivisionError):
        raise NotFound(f"{key!r} is neither a label nor a rational number") from None
    if j in tables.CM_J:
        return CatalogEntry("CM", 1, j_invariants=[JInvariant.of(j)], flags={"cm": True})
    try:
        return _by_j()[j]
    except KeyError:
        raise NotFound(f"no built-in entry for j = {j}") from None


# --- ingestion ----------------------------------------------------------------


def label_digits(label: str) -> tuple[int, int, int]:
    parts = label.split(".")
    try:
        return int(parts[0]), int(parts[1]), int(parts[2])
    except (IndexError, ValueError):
        raise ParseError(f"label {label!r} does not start with N.i.g") from None


def expected_invariants(label: str, flags: dict) -> tuple[int, int, int]:
    """(level, index, genus) claimed for an entry: explicit flags win over
    the label digits."""
    if all(k in flags for k in ("level", "index", "genus")):
        return flags["level"], flags["index"], flags["genus"]
    N, i, g = label_digits(label)
    return flags.get("level", N), flags.get("index", i), flags.get("genus", g)


def validate_entry(entry: CatalogEntry, cap: int = DEFAULT_CAP) -> tuple[int, int, int]:
    """Recompute (level, index, genus) from generators and compare."""
    spec = entry.generators
    want = expected_invariants(entry.label, entry.flags)
    got = (gl_level(spec, cap), index(spec, cap), genus(spec, cap).genus)
    if got != tuple(want):
        raise ValidationError(
            f"{entry.label}: claims (level, index, genus) = {tuple(want)}, computed {got}")
    return got


@dataclass
class IngestReport:
    entries: list[CatalogEntry] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def _index_document(directory: Path) -> list[dict]:
    idx = directory / "index.json"
    if idx.exists():
        doc = json.loads(idx.read_text())
        if not isinstance(doc, list):
            raise ParseError("index.json must be a JSON array")
        return doc
    return [{"file": p.name} for p in sorted(directory.glob("*.json"))]


def ingest_catalog(directory: Union[str, Path], validate: bool = True,
                   cap: int = DEFAULT_CAP) -> IngestReport:
    """Load every subgroup file listed in a directory's index.json (or every
    *.json file when there is no index).  Per-file failures are collected
    in ``errors`` instead of aborting."""
    directory = Path(directory)
    report = IngestReport()
    try:
        records = _index_document(directory)
    except (ParseError, json.JSONDecodeError) as exc:
        report.errors.append(f"index.json: {exc}")
        return report
    for rec in records:
        name = rec.get("file", "?")
        try:
            doc = _parse_document(directory / name)
            spec = spec_from_document(doc)
            label = rec.get("label") or doc.get("label") or spec.label
            if not label:
                raise ParseError("no label")
            flags = dict(rec.get("flags") or doc.get("flags") or {})
            entry = CatalogEntry(label, label_digits(label)[0], generators=spec, flags=flags)
            for curve, key in ((CurveKind.X0, "orbit_multiset_x0"), (CurveKind.X1, "orbit_multiset_x1")):
                if key in rec:
                    setattr(entry, key, _multiset(curve, entry.level, rec[key], label))
            if validate:
                validate_entry(entry, cap)
        except (ParseError, ValidationError, NonInvertible, ValueError, OSError) as exc:
            log.warning("skipping %s: %s", name, exc)
            report.errors.append(f"{name}: {exc}")
            continue
        report.entries.append(entry)
    return report


# --- filter pipeline ----------------------------------------------------------


CONDITIONS = (
    "full determinant, allowed SL-level, genus at most 1",
    "GL-level equals SL-level",
    "B0- or B1-closed",
    "genus 0 with a rational point",
    "genus 1 with positive rank",
)


@dataclass
class FilterOutcome:
    entry: CatalogEntry
    passed: bool
    failed: Optional[str] = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"label": self.entry.label, "passed": self.passed,
                "failed": self.failed, "notes": self.notes}


@dataclass
class PipelineResult:
    outcomes: list[FilterOutcome]

    @property
    def passed(self) -> list[CatalogEntry]:
        return [o.entry for o in self.outcomes if o.passed]

    @property
    def rejected(self) -> list[FilterOutcome]:
        return [o for o in self.outcomes if not o.passed]

    def __iter__(self):
        return iter(self.passed)


def _rational_point_condition(flags: dict, g: int) -> tuple[Optional[bool], str]:
    if "has_infinitely_many_rational_points" in flags:
        return bool(flags["has_infinitely_many_rational_points"]), "from flag"
    if g == 1 and "rank_bound" in flags:
        return flags["rank_bound"] > 0, "from rank_bound flag"
    return None, "flag-unknown"


def filter_entry(entry: CatalogEntry, cap: int = DEFAULT_CAP) -> FilterOutcome:
    out = FilterOutcome(entry, False)
    spec = entry.generators
    flags = entry.flags
    if spec is None:
        out.notes.append("no generators: computable conditions read from flags")
        try:
            full, m, g = flags["full_det"], flags["sl_level"], flags["genus"]
            N = flags.get("level", label_digits(entry.label)[0])
        except (KeyError, ParseError):
            out.notes.append("flag-unknown")
            out.passed = True
            return out
        closed = flags.get("closed")
    else:
        full = is_full_det(spec)
        m = sl_level(spec, cap)
        g = genus(spec, cap).genus
        N = gl_level(spec, cap)
        closed = None
    if not (full and m in ALLOWED_SL_LEVELS and g <= 1):
        out.failed = CONDITIONS[0]
        return out
    if N != m:
        out.failed = CONDITIONS[1]
        return out
    if closed is None and spec is not None:
        closed = ch_closed(StandardFamily.b0(N), spec, cap) or ch_closed(StandardFamily.b1(N), spec, cap)
    if closed is None:
        out.notes.append("closedness flag-unknown")
    elif not closed:
        out.failed = CONDITIONS[2]
        return out
    ok, how = _rational_point_condition(flags, g)
    out.notes.append(f"rational points: {how}")
    if ok is False:
        out.failed = CONDITIONS[3] if g == 0 else CONDITIONS[4]
        return out
    out.passed = True
    return out


def pipeline_filter(entries: Iterable[CatalogEntry], cap: int = DEFAULT_CAP) -> PipelineResult:
    """Apply the five conditions.  Rational-point data is never computed;
    entries lacking it pass with a "flag-unknown" note."""
    return PipelineResult([filter_entry(e, cap) for e in entries])
