"""Exact quandle calculus on finite tables and torus curve classes."""

from .errors import DomainError, ResourceCapError
from .groups import Group, cyclic_group, symmetric_group, transpositions_s3
from .quandle import (
    AxiomReport,
    CosetQuandleSpec,
    FiniteQuandle,
    PermGroup,
    alexander_quandle,
    components,
    conj_quandle,
    coset_decomposition,
    coset_quandle,
    dihedral_quandle,
    disjoint_union,
    dual_op,
    find_isomorphism,
    inner_group,
    trivial_quandle,
    verify_quandle,
)
from .torus import (
    ZERO_CURVE,
    CurveClass,
    MappingClassT,
    WeightedMulticurve,
    braid_check,
    dehn_twist,
    distinct_four,
    intersection,
    normalize,
    op_c1,
    op_d1,
    op_w1,
    phi,
    phi_inverse,
    twist_matrix,
)
from .metrics import (
    BfsConfig,
    DistanceResult,
    farey_distance,
    min_twist_word_length,
    quandle_distance,
)
from .cohomology import (
    Cochain,
    CohomologyResult,
    coboundary,
    cohomology,
    comparison_check,
    degenerate_subspace,
    is_coboundary,
    is_cocycle,
)
from .extensions import (
    ExtensionQuandle,
    FiniteAbelianGroup,
    QuandleCocycle2,
    build_extension,
    is_cocycle2,
    iterated_mean,
    kappa,
    mean,
    pullback,
    verify_gmt,
)
from .ring import (
    FiniteCarrier,
    IdemScanConfig,
    RingElement,
    TorusCarrier,
    augmentation,
    distinct_curves_audit,
    enumerate_idempotents,
    is_idempotent,
    length,
    multiply,
    torus_idempotent_scan,
)

__version__ = "0.1.0"
