"""Exact-arithmetic verification, construction, and certification of Waring
decompositions of powers of quadratic forms q_n^s = (x_1^2+...+x_n^2)^s."""

from .errors import (
    BadApproxRoot,
    DegreeMismatch,
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    MissingGenerator,
    NonHomogeneous,
    NotUnitPoint,
    OutOfRange,
    QwaringError,
    RingMismatch,
    UnsupportedExponent,
    UnsupportedN,
    ZeroDivisor,
)
from .exactfield import (
    QQ,
    AlgNum,
    ComplexInterval,
    FieldTower,
    Rational,
    numeric_eval,
)
from .multipoly import (
    MultiPoly,
    contract,
    dot,
    evaluate,
    laplacian,
    linear_power,
    q_power,
)
from .apolar import (
    CatalecticantMatrix,
    ann_component_dim,
    apolar_generators,
    catalecticant,
    exact_rank,
    kernel_generator,
    rank_drop_check,
)
from .harmonic import (
    HarmonicBasis,
    HarmonicDecomposition,
    harmonic_basis,
    harmonic_basis3,
    harmonic_decompose,
    harmonic_dim,
    sl2_apply,
    uvz_change,
)
from .waring import (
    CaliberReport,
    Decomposition,
    RankBounds,
    bombieri,
    caliber,
    catalog,
    constants,
    gen_binary,
    gen_q8,
    gen_stroud_q2,
    rank_bounds,
    verify,
)
from .tightness import (
    AngleCertificate,
    Status,
    TightVerdict,
    angle_certificate,
    gram_det,
    gram_orbit_check,
    kernel_roots,
    s2_counts,
    tight_verdict,
    two_value_polys,
)

__version__ = "0.1.0"
