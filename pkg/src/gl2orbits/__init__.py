"""Orbits of open subgroups of GL2(Zhat) on coset spaces, and the degrees of
points on X0(n) and X1(n) above rational j-invariants."""

from .batch import CapExceeded
from .catalog import (
    CatalogEntry,
    ExceptionalImage,
    IngestReport,
    NotFound,
    ParseError,
    ValidationError,
    builtin,
    exceptional_images,
    ingest_catalog,
    load_subgroup,
    pipeline_filter,
    serialize,
)
from .closures import (
    ClosureKind,
    ClosureResult,
    brute_force_ch_closure,
    ch_closed,
    ch_closure,
    ch_equivalent,
    h_closure,
    h_equivalent,
)
from .cosets import (
    ConsistencyError,
    CosetTable,
    FamilyKind,
    OrbitPartition,
    StandardFamily,
    build_coset_table,
    orbits,
    psi,
)
from .degrees import (
    CMInput,
    CurveKind,
    DegreeMultiset,
    DegreeSet,
    JInvariant,
    MissingCatalog,
    all_degree_set,
    fiber_degrees,
    infinite_degree_set,
    infinite_fiber_multisets,
    is_cm,
    level_component,
    point_degrees,
    theorem_consistency_check,
)
from .invariants import GenusData, deg_x0, deg_x1, genus, label_invariants, phi
from .subgroups import (
    DEFAULT_CAP,
    ConjClass,
    EnumeratedSubgroup,
    SubgroupSpec,
    agreeable_closure,
    commutator_subgroup,
    contains_minus_identity,
    det_image,
    enumerate_subgroup,
    gl_level,
    index,
    intersect_sl2,
    is_conjugate,
    is_full_det,
    order,
    sl_level,
)
from .zmod import Mat2, NonInvertible, Residue, mat_det, mat_inv, mat_mul, reduce

__version__ = "0.1.0"
