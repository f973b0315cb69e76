"""Dense state-vector simulator and the phase-kickback algorithm family."""

from .statevec import CapacityError, StateVector, basis_state
from .gates import (
    Gate2x2,
    ModMultSpec,
    Oracle,
    controlled_modmult,
    f_controlled_not,
    hadamard,
    load_oracle,
    parse_oracle_text,
    pauli_x,
    phase_shifter,
    r_k,
)
from .qft import QftPlan, dft_reference, inverse_qft, plan, qft
from .phase_estimation import (
    DiagonalEigenOracle,
    EigenOracle,
    EstimationAnalysis,
    PhaseFraction,
    PrecisionRequest,
    analytic_distribution,
    estimate_phase,
    kernel_state,
    precision_for_error,
    round_to_bits,
    tail_bound,
)
from .algorithms import (
    AffineSpec,
    GroverOracle,
    PatternSpec,
    PromiseViolation,
    Verdict,
    affine_oracle,
    affine_recovery,
    affine_row,
    bernstein_vazirani,
    default_grover_iterations,
    deutsch,
    deutsch_jozsa,
    fourier_eigenstate,
    grover_search,
    linear_oracle,
    mach_zehnder,
    parity_promise,
    pattern_generate,
)
from .order_finding import (
    Convergent,
    CrackResult,
    OrderProblem,
    OrderResult,
    RsaInstance,
    TrialLimitError,
    convergents,
    coprime_pair_probability,
    find_order,
    mod_exp,
    multiplicative_order,
    prepare_psi_k,
    rsa_crack,
    totient_decrypt,
)
from .analysis import (
    BoundSweepReport,
    cross_minor_entanglement,
    grover_rotation_probability,
    sweep_success_bound,
    sweep_tail_bound,
)

__all__ = [
    "AffineSpec",
    "BoundSweepReport",
    "CapacityError",
    "Convergent",
    "CrackResult",
    "DiagonalEigenOracle",
    "EigenOracle",
    "EstimationAnalysis",
    "Gate2x2",
    "GroverOracle",
    "ModMultSpec",
    "Oracle",
    "OrderProblem",
    "OrderResult",
    "PatternSpec",
    "PhaseFraction",
    "PrecisionRequest",
    "PromiseViolation",
    "QftPlan",
    "RsaInstance",
    "StateVector",
    "TrialLimitError",
    "Verdict",
    "affine_oracle",
    "affine_recovery",
    "affine_row",
    "analytic_distribution",
    "basis_state",
    "bernstein_vazirani",
    "controlled_modmult",
    "convergents",
    "coprime_pair_probability",
    "cross_minor_entanglement",
    "default_grover_iterations",
    "deutsch",
    "deutsch_jozsa",
    "dft_reference",
    "estimate_phase",
    "f_controlled_not",
    "find_order",
    "fourier_eigenstate",
    "grover_rotation_probability",
    "grover_search",
    "hadamard",
    "inverse_qft",
    "kernel_state",
    "linear_oracle",
    "load_oracle",
    "mach_zehnder",
    "mod_exp",
    "multiplicative_order",
    "parity_promise",
    "parse_oracle_text",
    "pattern_generate",
    "pauli_x",
    "phase_shifter",
    "plan",
    "precision_for_error",
    "prepare_psi_k",
    "qft",
    "r_k",
    "round_to_bits",
    "rsa_crack",
    "sweep_success_bound",
    "sweep_tail_bound",
    "tail_bound",
    "totient_decrypt",
]
