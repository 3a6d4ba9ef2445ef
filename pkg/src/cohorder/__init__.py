"""Coherence measures on density matrices and coherence-induced state ordering."""
from .channels import KrausChannel, adc, adc_bloch_transform, apply, identity_channel, ordering_dynamics, pdc, pdc_bloch_transform
from .linalg import EigenDecomposition, hermitian_eig, matrix_power, trace
from .measures import (
    CoherenceMeasure,
    c_alpha2,
    c_l1,
    c_l2sq,
    c_r,
    c_tsallis,
    check_generalized_monotonicity,
    nearest_incoherent_tsallis,
    pure_closed_forms,
    qubit_closed_forms,
    tsallis_divergence,
    xstate_closed_forms,
)
from .ordering import (
    OrderingReport,
    StateFamily,
    majorization_comparable,
    majorizes,
    monotonicity_scan,
    ordering_report,
    schur_concavity_spotcheck,
)
from .states import BlochVector, XStateParams, from_bloch, mixedness, pure_from_spectrum, to_bloch, validate, x_state

__version__ = "0.1.0"
