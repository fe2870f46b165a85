"""Chart atlas of the stability manifold of the n-Kronecker quiver.

Exact integer sequences and mutation algebra, chart transition and quotient
maps, the projection to CP^1 with its integer Moebius symmetry, removed-set
classification and fiber enumeration, and numerical path lifting with
monodromy reporting.
"""

from .ksequence import (
    KClass,
    SlitParams,
    a_seq,
    central_charge,
    closed_form,
    euler_form,
    kclass_of,
    ratio_limits,
    slit_params,
)
from .mutation import (
    ExcCollection,
    ExcLabel,
    HomProfile,
    alpha_coeffs,
    class_mutation,
    ext_exceptional_violations,
    ext_shift_choice,
    hom_profile,
    left_mutation_pair,
    right_mutation_pair,
)
from .atlas import (
    ChartPoint,
    QuotientPoint,
    c_action,
    chart_to_zero,
    exceptional_phase,
    g_k,
    in_strip,
    phi_k,
    psi_k,
    psi_k_inv,
)
from .projective import (
    MobiusPSL2,
    ProjPoint,
    RemovedSetVerdict,
    VerdictKind,
    chi,
    chordal,
    classify,
    exceptional_rays,
    fiber,
    fixed_points,
    g_matrix,
    g_power,
    removed_distance,
)
from .stability import (
    HNResult,
    StabilityRecord,
    ValidationReport,
    construct,
    hn_direct_sum,
    sigma_minus1,
    validate,
)
from .lifting import (
    LiftError,
    LiftOptions,
    LiftReport,
    LineProximity,
    MonodromyResult,
    PathSample,
    RemovedPointOnPath,
    StartMismatch,
    StepTooLarge,
    circle_path,
    lift_quotient,
    lift_total,
    monodromy,
    puncture_start,
)

__version__ = "0.1.0"
