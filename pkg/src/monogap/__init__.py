"""Exact tools for matrix monotonicity of polynomials on intervals ``[0, alpha)``."""
from .gap_classifier import (
    DegreeGate,
    GapVerdict,
    OrderStatus,
    Status,
    UnboundedGate,
    classify,
    classify_order,
    degree_gate,
    unbounded_gate,
)
from .hadamard_transport import (
    affine_transport_loewner,
    eig_bounds_check,
    hadamard,
    invertibility_transport,
    rank_inequality_check,
    scaling_matrix,
)
from .hankel_moments import (
    AtomicMeasure,
    MomentReport,
    SingularHankelError,
    construct_atomic_measure,
    hankel_matrix,
    hankel_rank,
    matrix_rank_exact,
    moment_flags,
)
from .loewner import (
    LoewnerMatrix,
    PnCertificate,
    PnFalsification,
    build_loewner,
    certify_Pn,
    eval_loewner,
    falsify_Pn_near_zero,
    is_psd_exact,
    leading_minor_polys,
    quintic_family,
)
from .mclass_cert import (
    MClassCertificate,
    PremiseError,
    build_certificate,
    mclass_falsify,
    mobius_premise_identity,
    partial_fraction_coeffs,
    run_preset,
    sos_decomposition_check,
)
from .mono_sampler import falsify_monotone, matfun_poly, sample_ordered_pair
from .ratpoly import RatPoly, compose_affine, standard_gap_poly, taylor_coeff
from .realroots import Interval, RootEnclosure, Sign, SignReport, count_real_roots, isolate_real_roots, sign_on_interval

__version__ = "0.1.0"
