__author__ = "abelat developers"
__email__ = ""
__copyright__ = "Copyright 2026, abelat developers"
__license__ = "Apache 2.0"
__url__ = ""
__version__ = "0.1.0"

from .errors import (
    AbelatError,
    ConsistencyError,
    DomainError,
    GroupMismatchError,
    GroupSpecError,
    NoMinimalBasisError,
    NotEutacticError,
    VerificationError,
)
from .abelian_group import (
    AbelianGroup,
    GroupElement,
    Subgroup,
    abelian_group_types,
    enumerate_elements,
    groups_up_to,
    parse_group_spec,
    presentations,
    squares_subgroup,
    torsion2_subgroup,
)
from .group_ring import (
    GroupRingElement,
    Idempotent,
    complement_projection,
    difference_product,
    idempotent,
)
from .lattice import (
    LatticeDescription,
    MinimalVector,
    OmegaPair,
    augmentation_quotient_invariants,
    canonical_basis,
    check_rewriting_identities,
    congruence_representative,
    kissing_count,
    membership,
    min_distance,
    min_vectors_any,
    minimal_vectors,
    omega_pairs,
    orbits,
    parametrizing_triples,
    quadruple_oracle,
    short_vector_oracle,
)
from .min_basis import (
    MinimalBasis,
    general_min_basis,
    min_basis,
    sha_basis,
    single_orbit_basis,
    small_group_basis,
    verify_unimodular,
)
from .eutaxy import (
    EutaxyCertificate,
    ExtremalityReport,
    PerfectionReport,
    build_certificate,
    check_certificate,
    classify_strong,
    cross_sum,
    extremality,
    perfection_rank,
    sum_mm_star,
    verify_certificate,
)
from .report import Report
from .analyzer import Analyzer, reports_to_csv, sweep
from . import utils as abelat_utils
