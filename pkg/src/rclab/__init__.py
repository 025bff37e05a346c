"""rclab: exact Rankin-Cohen bracket laboratory.

Exact-arithmetic modular forms, the pi-free sl2 lowest-weight machinery
behind the brackets, the one-parameter families of deformed products built
on them, and machine verification of the associativity / uniqueness /
positivity claims the construction rests on.
"""

from .exactcore import MPoly, QSeries, Rat, binom, pochhammer, rat
from .forms import (
    GradedForm,
    ModularForm,
    delta,
    eisenstein,
    eisenstein_form,
    eta_log_derivative,
    form_by_name,
    graded_mul,
    phi_zagier,
    sigma,
)
from .nearlyholo import (
    NearlyHoloForm,
    canonical_rc,
    combi_bracket,
    lower,
    ramanujan_X,
    rc_bracket,
    shimura_X,
    verify_canonical_rc,
    verify_der_identity,
    zagier_sequence,
)
from .rep import (
    DSVector,
    TensorVector,
    TripleVector,
    act_lower,
    act_raise,
    act_weight,
    casimir,
    casimir_eigenvalue,
    lowest_weight_tensor,
    realize_and_multiply,
    tensor_lower,
    triple_kernel_dim,
    triple_lower,
    triple_preimage,
    xi_vector_concrete,
)
from .starprod import (
    HbarSeries,
    PoleError,
    StarCoefficients,
    assoc_residual,
    cmz_coeff,
    free_assoc_residual,
    ident_residual,
    rc_series,
    star_product,
)
from .coeffsolve import (
    ATable,
    LinSystem,
    a2_family,
    a2_family_assoc,
    build_ident_system,
    chain_solve,
    degree_in_c,
    det2x2_lemma,
    kappa_c_report,
    kappa_to_c,
    solve,
    verify_symmetry_and_zero,
)
from .uniq import (
    IsobaricPoly,
    bracket_shift_residual,
    fine_det3,
    form_to_isobaric,
    isobaric_gcd,
    lowest_q_identity,
    p3_build,
    p3_substitute_and_certify,
    rc_uniqueness_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
