"""lefiber: exact invariants of polynomial hypersurface singularities."""

__version__ = "0.1.0"

from .errors import (
    ConsistencyFailureError,
    CorpusError,
    GenericityFailureError,
    ImproperIntersectionError,
    InputError,
    LefiberError,
    NegativeLeNumberError,
    NonIsolatedSliceError,
    ParseError,
    ResourceLimitError,
    RingError,
    SingularMatrixError,
)
from .orders import MonomialOrder
from .poly import Monomial, Polynomial, PolyRing, Rational, partial_derivative
from .parse import infer_variables, parse_polynomial, polynomial_to_text
from .ideals import (
    BasisResult,
    Ideal,
    clear_cache,
    get_engine_options,
    global_quotient_dimension,
    ideal_equal,
    ideal_quotient,
    intersection,
    is_member,
    local_dimension,
    local_quotient_dimension,
    normal_form,
    origin_membership,
    point_count,
    saturation,
    saturation_by_element,
    set_engine_options,
    standard_basis,
)
from .frames import CoordinateFrame, apply_frame, parse_frame_rows
from .invariants import (
    InvariantRecord,
    OracleResult,
    curve_case_numbers,
    gamma_is_zero,
    invariant_record,
    jacobian_ideal,
    le_cycle_ideal,
    le_number_top,
    milnor_number,
    multiplicity_at_origin,
    polar_ideal,
    polar_intersection_number,
    restricted_milnor_number,
    sigma_dim,
    slice_point_count,
    slice_sigma_dim,
    transversal_milnor_sum,
    transversal_oracle,
)
from .equisingular import (
    INDETERMINATE,
    MILNOR_EQUISINGULAR,
    NONSINGULAR,
    NOT_APPLICABLE,
    NOT_EQUISINGULAR,
    NOT_SIMPLE,
    SIMPLE_MU_CONSTANT,
    BettiReport,
    EquisingularityVerdict,
    FrameEvidence,
    GenericityConfig,
    betti_report,
    milnor_equisingular_check,
    mu_constancy_scan,
    prepolar_check,
    simple_mu_constant_check,
)
from .report import analysis_payload, render_json, render_text
from .corpus import ResultCache, load_corpus, run_corpus, run_entry
