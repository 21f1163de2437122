"""Exact singularity certificates for LCM matrices on GCD-closed sets."""

from __future__ import annotations

__version__ = "0.1.0"

from .construct import (
    ClassLabel,
    ConstructionError,
    CubeWitness,
    classify9,
    construct,
    find_cube_subsemilattices,
    insert_between,
    insert_maximal,
    insert_minimum,
)
from .enumeration import (
    CensusRecord,
    census_record,
    count_meet_semilattices,
    enumerate_meet_semilattices,
    filter_special,
)
from .errors import (
    FactorizationBudgetExceeded,
    LcmLatError,
    NotGcdClosedError,
    PreconditionError,
    UncertifiableError,
    ValidationError,
)
from .exact import bareiss_det
from .lcm import (
    CoverLcm,
    GcdSet,
    PsiVector,
    build_gcd_set,
    cover_lcm_predicate,
    det_lcm,
    factorize,
    gcd_closure,
    is_singular,
    lcm_matrix,
    psi,
)
from .poset import (
    CanonicalForm,
    Structure,
    canonical_form,
    generates_double_chain,
    is_isomorphic,
    meet,
    meet_closure,
    moebius,
    width,
)
from .power import AlphaBracket, PowerConstruction, build_power_construction, find_alpha0, h_eval
