"""Super dense coding capacity of bipartite states sent through correlated
(memory) Pauli channels, for unitary and pre-processing encodings."""

from . import qmat
from .channels import (
    CorrelatedPauliSpec,
    KrausMap,
    PauliChannelSpec,
    bob_marginal_apply,
    channel_from_json,
    channel_to_json,
    correlated_apply,
    displacement,
    displacements,
    kraus_apply,
    pauli_apply,
    quasi_classical_spec,
    reset_map,
)
from .holevo import (
    CapacityReport,
    EncodingEnsemble,
    achievability_ensemble,
    analytic_capacity_quasi,
    capacity_nonunitary,
    capacity_unitary,
    holevo_quantity,
    quasi_channel_spectrum,
    transferred_info_preprocessed,
)
from .optimize import (
    CrossoverResult,
    OptimizerConfig,
    OptimResult,
    crossover_mu,
    minimize_cptp,
    minimize_unitary,
)
from .states import DensityOperator, bell_phi_plus, max_entangled, phi_with_phase, werner

__version__ = "0.1.0"
