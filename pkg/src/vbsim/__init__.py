"""Numerical twin of a photonic simulator for the frustrated spin-1/2 tetramer."""

__version__ = "0.1.0"

from .spin_model import (  # noqa: F401
    THETA_MIN,
    build_hamiltonian,
    dimer_state,
    ground_state_analytic,
    ground_state_energy_closed,
    kappa_from_theta,
    pair_coupling_operator,
    theta_from_kappa,
)
from .optics import (  # noqa: F401
    FockState,
    NoiseParams,
    apply_noise,
    apply_tdc,
    ground_state_via_optics,
    noisy_ground_state,
    postselect_coincidence,
    singlet_source,
)
from .tomography import (  # noqa: F401
    TomographyDataset,
    basis_projector,
    correlation_tensor,
    expected_distribution,
    fidelity,
    linear_inversion,
    mle_reconstruct,
    monte_carlo_uncertainty,
    sample_dataset,
)
from .observables import (  # noqa: F401
    complementarity_sum,
    concurrence_from_energy,
    pair_energies_closed,
    pair_energy,
    partial_trace,
    total_energy,
    wootters_concurrence,
)
