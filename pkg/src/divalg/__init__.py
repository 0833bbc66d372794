"""divalg: exact section rings of divisors and their graded modules.

Geometry backends (toric fans, tabulated Hilbert data) feed a common graded
layer; finite generation is decided exactly where the backend allows it and
probed by bounded search with honest certificates everywhere else.
"""

from .errors import (
    DegreeZeroKernel,
    DimensionMismatch,
    DivalgError,
    EmptyPolyhedron,
    ExactnessFailure,
    HypothesisFailure,
    InsufficientRange,
    MissingStructure,
    NoSections,
    NotAmple,
    NotASubmodule,
    NotCartier,
    NotComplete,
    NotPointed,
    OracleFailure,
    OracleRangeExceeded,
    SchemaError,
    SpanFailure,
    StepNotFG,
    UnboundedPolyhedron,
)
from .graded import (
    CountingCheck,
    DegreeSlice,
    FGCertificate,
    GeneratorSet,
    GradedAlgebra,
    GradedModule,
    GrowthEstimate,
    NonFgWitness,
    change_offset,
    compress_truncation,
    counting_bound_check,
    counting_refutation,
    decompose,
    find_algebra_generators,
    find_module_generators,
    generated_slice_spans,
    growth_degree,
    reindex_component,
    truncate,
)
from .induction import (
    PipelineTrace,
    RestrictionStep,
    TwistedInductionReport,
    algebra_generators_from_restriction,
    algebra_restriction_induction,
    module_generators_from_extension,
    module_restriction_induction,
    twisted_module_induction,
)
from .lattice import (
    Cone,
    HalfSpace,
    HilbertBasisResult,
    RationalPolyhedron,
    cone_contains,
    dilate,
    hilbert_basis,
    lattice_points,
    polyhedron_from_inequalities,
    recession_cone,
    vertices,
)
from .tables import (
    HilbertTable,
    NonFgVerdict,
    TableStructure,
    example26_dataset,
    load_table,
    nonfg_witness,
    read_table,
    table_from_algebra,
    table_from_module,
    table_to_text,
)
from .toric import (
    CartierDivisor,
    Fan,
    FixStabilityReport,
    SectionPolytopeFamily,
    SuppFixReport,
    ToricVariety,
    blown_up_p2,
    divisorial_algebra,
    divisorial_module,
    exact_fg_algebra,
    exact_fg_module,
    fix_mov,
    fix_stability_check,
    h0,
    p1_x_p1,
    projective_space,
    ray_divisor,
    restricted_algebra,
    restriction_image,
    restriction_kernel,
    section_polytope,
    supp_fix_with_ample,
    weighted_p112,
    zero_divisor,
)

__version__ = "0.1.0"
