"""Factorization with respect to a symmetric relation, and its U-factorization
refinement, in finite commutative rings."""

from .classify import (
    GRADES,
    IrreducibilityReport,
    atomic_u_factorization,
    classify_all,
    essential_divisor_inventory,
    grade,
    irreducibility,
    is_tau_alpha,
)
from .errors import TauError
from .factor import (
    Check,
    EnumerationResult,
    Factorization,
    PumpCycle,
    UFactorization,
    all_u_factorizations,
    apply_refinement,
    apply_u_refinement,
    check_tau_factorization,
    check_u_factorization,
    enumerate_tau_factorizations,
    enumerate_tau_u_factorizations,
    is_u_factorization,
    max_factorization_length,
    to_u_factorization,
    u_split,
    unboundedness_certificate,
)
from .lab import DEFAULT_CORPUS, run_corpus, search_open_question, verify
from .products import (
    CoordinateFactorization,
    decompose_product_factorization,
    lift_u_factorization,
    project_u_factorization,
)
from .props import (
    PropertyVerdict,
    check_atomicity,
    check_chain_props,
    check_counting_props,
    check_presimplifiable_variants,
    check_uniqueness_props,
)
from .relations import TauRelation, make_tau, relation_report
from .rings import ASSOC, MODES, STRONG, VERY_STRONG, Ring, associated, embed, make_ring, ring_flags

__version__ = "0.1.0"
