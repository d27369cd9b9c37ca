"""Wave-particle duality in a Mach-Zehnder interferometer with an asymmetric beam splitter.

The package models the interferometer and its which-path detector, builds
the two unsharp qubit observables the setup measures jointly, tests their
joint measurability in closed form and with a grid oracle, and checks the
visibility/distinguishability trade-offs on randomized suites.
"""

from .errors import (
    ContractViolation,
    DegeneratePortError,
    DimensionError,
    DomainError,
    InfeasibleWitnessError,
    InvalidObservableError,
    MZDualityError,
    RejectedSizeError,
    ScenarioFormatError,
    UnsupportedRegimeError,
)
from .harness import (
    SLACKS,
    DualityReport,
    TrialConfig,
    TrialRecord,
    cross_validate_povms,
    evaluate_trial,
    run_suite,
    sample_config,
)
from .interferometer import (
    InterferometerConfig,
    PathWeights,
    a_priori_visibility,
    beam_splitter_unitary,
    coupling_unitary,
    detection_probability,
    detection_probability_from_state,
    final_state,
    fringe_visibility,
    path_weights,
    predictability,
    visibility_ratio,
)
from .io import load_scenario, load_strategy, scenario_to_dict, strategy_to_dict
from .operators import (
    hermitian_eigenvalues,
    partial_trace_detector,
    rotation_y,
    tensor,
    trace_norm,
)
from .unsharp import (
    JointObservable,
    UnsharpObservable,
    assemble_joint,
    guess_observable,
    interference_observable,
    jm_closed_form,
    jm_oracle,
    oracle_search,
)
from .which_path import (
    EtaPair,
    Strategy,
    distinguishability,
    eta_values,
    gamma_term,
    guess_likelihood,
    helstrom_bound,
    optimal_strategy,
    optimize_strategy,
)

__version__ = "0.1.0"
