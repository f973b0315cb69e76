"""Phase estimation: controlled-power kernel, readout, closed-form statistics.

The kernel puts m control qubits through Hadamards and controlled-U^(2^j)
gates (the qubit of weight 2^j controls U^(2^j)); with the target holding
an eigenstate of eigenvalue e^{2 pi i phase}, the control register becomes

    2^{-m/2} sum_y exp(2 pi i phase y) |y>

whose inverse Fourier transform concentrates on the best m-bit dyadic
approximation of the phase. ``analytic_distribution`` gives the exact
readout statistics without simulating a circuit; extra bits plus rounding
amplify the success probability to any desired level.

Error is always measured as wrap-around distance on the unit circle.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .gates import hadamard, pauli_x, phase_shifter
from .qft import inverse_qft
from .statevec import StateVector, basis_state, sample_index

TWO_PI = 2.0 * math.pi


def wrap_half(x):
    """Wrap a phase difference (scalar or array) into (-1/2, 1/2]."""
    return 0.5 - (0.5 - np.asarray(x)) % 1.0


class EigenOracle(ABC):
    """Provider of controlled-U^(2^j) actions plus eigenstate preparation.

    ``prepare_eigenstate`` is called on a register still in |0...0> and must
    write the eigenstate (or a superposition of eigenstates) into the target
    span. ``apply_controlled_power(state, j, control, target_span)`` must
    act as controlled-U^(2^j), i.e. equal 2^j compositions of the j = 0 gate
    on the control-1 subspace.
    """

    target_width: int

    @abstractmethod
    def prepare_eigenstate(self, state: StateVector, target_span: Sequence[int]) -> None:
        ...

    @abstractmethod
    def apply_controlled_power(
        self, state: StateVector, j: int, control: int, target_span: Sequence[int]
    ) -> None:
        ...


class DiagonalEigenOracle(EigenOracle):
    """Synthetic single-qubit U = diag(1, e^{2 pi i phase}), eigenstate |1>.

    Makes the phase a free parameter, which is exactly what tests need.
    """

    target_width = 1

    def __init__(self, phase: float):
        self.phase = phase % 1.0

    def prepare_eigenstate(self, state, target_span):
        state.apply_single_qubit(pauli_x(), target_span[0])

    def apply_controlled_power(self, state, j, control, target_span):
        # phase * 2^j is exact in doubles; reduce mod 1 before scaling by 2 pi
        angle = TWO_PI * ((self.phase * (1 << j)) % 1.0)
        state.apply_controlled_single_qubit(phase_shifter(angle), control, target_span[0])


def kernel_state(m: int, oracle: EigenOracle) -> StateVector:
    """Run the estimation kernel; returns the (m + target_width)-qubit state.

    Control qubits are 0..m-1, the target register follows. The target is
    returned unchanged (up to global phase) when it holds an exact
    eigenstate; the eigenvalue phases are kicked back onto the controls.
    """
    if m < 1:
        raise ValueError("control register needs at least one qubit")
    width = oracle.target_width
    state = basis_state(m + width)
    target_span = list(range(m, m + width))
    oracle.prepare_eigenstate(state, target_span)
    h = hadamard()
    for q in range(m):
        state.apply_single_qubit(h, q)
    for j in range(m):
        oracle.apply_controlled_power(state, j, m - 1 - j, target_span)
    return state


@dataclass(frozen=True)
class PhaseFraction:
    """An m-bit dyadic phase estimate numerator/2^bits in [0, 1)."""

    numerator: int
    bits: int

    def __post_init__(self):
        if self.bits < 1:
            raise ValueError("bit width must be >= 1")
        if not 0 <= self.numerator < (1 << self.bits):
            raise ValueError(f"numerator {self.numerator} out of range for {self.bits} bits")

    @property
    def value(self) -> float:
        return self.numerator / (1 << self.bits)


@dataclass
class EstimationAnalysis:
    """Exact m-bit readout statistics for a given phase.

    ``best`` lists the best m-bit estimates (two entries exactly at the
    half-way tie |delta| = 2^-(m+1), one otherwise); ``success_prob`` is
    their combined probability.
    """

    phi: float
    m: int
    best: tuple[int, ...]
    delta: float
    distribution: np.ndarray
    success_prob: float


def analytic_distribution(phi: float, m: int) -> EstimationAnalysis:
    """Closed-form readout distribution; no circuit simulation.

    P(t) = |(1 - e^{2 pi i d 2^m}) / (2^m (1 - e^{2 pi i d}))|^2 with
    d = wrap(phi - t/2^m), and the removable d = 0 singularity set to its
    limit 1.
    """
    if not 0.0 <= phi < 1.0:
        raise ValueError("phase must lie in [0, 1)")
    if m < 1:
        raise ValueError("bit width must be >= 1")
    dim = 1 << m
    delta_t = wrap_half(phi - np.arange(dim) / dim)
    exact = delta_t == 0.0
    probs = np.ones(dim)
    d = delta_t[~exact]
    num = 1.0 - np.exp(2j * np.pi * d * dim)
    den = dim * (1.0 - np.exp(2j * np.pi * d))
    probs[~exact] = np.abs(num / den) ** 2
    err = np.abs(delta_t)
    best = tuple(int(i) for i in np.flatnonzero(err == err.min()))
    return EstimationAnalysis(
        phi=phi,
        m=m,
        best=best,
        delta=float(delta_t[best[0]]),
        distribution=probs,
        success_prob=float(probs[list(best)].sum()),
    )


def estimate_phase(m: int, oracle: EigenOracle, rng: np.random.Generator) -> PhaseFraction:
    """Kernel, inverse Fourier transform, measure the control register."""
    state = kernel_state(m, oracle)
    inverse_qft(state, range(m))
    dist = state.marginal_probabilities(range(m))
    return PhaseFraction(sample_index(dist, rng), m)


def control_distribution(m: int, oracle: EigenOracle) -> np.ndarray:
    """Exact pre-measurement distribution of the control register."""
    state = kernel_state(m, oracle)
    inverse_qft(state, range(m))
    return state.marginal_probabilities(range(m))


@dataclass(frozen=True)
class PrecisionRequest:
    """How many total bits buy n accurate bits at failure probability <= epsilon."""

    accurate_bits: int
    failure_bound: float
    total_bits: int


def precision_for_error(n: int, epsilon: float) -> PrecisionRequest:
    """total_bits = n + ceil(log2(1/(2 epsilon) + 1/2)), computed exactly.

    Estimating with total_bits and rounding back to n bits lands within
    2^-(n+1) of the true phase with probability at least 1 - epsilon.
    """
    if n < 1:
        raise ValueError("accurate bit count must be >= 1")
    if not 0.0 < epsilon < 1.0:
        raise ValueError("failure probability must lie in (0, 1)")
    target = 1 / (2 * Fraction(epsilon)) + Fraction(1, 2)
    extra = 0
    while (1 << extra) < target:
        extra += 1
    return PrecisionRequest(n, epsilon, n + extra)


def tail_bound(k: int) -> float:
    """Bound 1/(2k-1) on P[wrap error > k/2^m]; vacuous at k = 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return 1.0 / (2 * k - 1)


def round_to_bits(est: PhaseFraction, n: int) -> PhaseFraction:
    """Nearest n-bit dyadic modulo 1: add half an ulp, truncate, wrap."""
    if n < 1:
        raise ValueError("bit width must be >= 1")
    if n > est.bits:
        raise ValueError(f"cannot round {est.bits} bits up to {n}")
    if n == est.bits:
        return est
    shift = est.bits - n
    a = ((est.numerator + (1 << (shift - 1))) >> shift) & ((1 << n) - 1)
    return PhaseFraction(a, n)
