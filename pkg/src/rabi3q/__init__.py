"""Ground state of three qubits coupled to one oscillator beyond the
rotating-wave approximation: exact diagonalization and the displacement
transformation method side by side."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfigError,
    CutoffCeiling,
    DegenerateB,
    DimensionMismatch,
    EmptySeries,
    NoConvergence,
    NoDeathFound,
    NoRootInBracket,
    NotXForm,
    Rabi3QError,
    TailTooHeavy,
)
from .exact import ExactGround, solve_converged, solve_exact  # noqa: E402
from .model import (  # noqa: E402
    FockOps,
    JointState,
    ModelParams,
    SpinOps,
    build_hamiltonian,
    coherent_vector,
    fock_ops,
    spin_ops,
)
from .observables import (  # noqa: E402
    TwoQubitRDM,
    dicke_to_qubits,
    fidelity,
    pairwise_entanglement,
    partial_transpose_negativity,
    quadratic_entanglement,
    rdm_from_moments,
    two_qubit_rdm,
)
from .transform import (  # noqa: E402
    TransformCoeffs,
    TransformedSolution,
    coeffs_at,
    quadratic_energy,
    solve_chi,
    transformed_energy,
    transformed_ground,
)
