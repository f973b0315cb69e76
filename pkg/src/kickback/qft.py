"""Fourier transform over Z_{2^m} as a gate network.

The network is the usual ladder: for each span qubit a Hadamard followed by
controlled rotations r_k with controls on the later qubits, finished by an
explicit qubit reversal (swaps). Keeping the reversal inside qft means the
output convention is exactly

    |a>  ->  2^{-m/2} sum_y exp(2 pi i a y / 2^m) |y>

and callers never track reversed qubit order. ``dft_reference`` applies the
same map as a dense matrix, serving as an independent oracle for tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gates import hadamard, r_k
from .statevec import CapacityError, StateVector

DENSE_MAX_WIDTH = 12

_SWAP = np.array([0, 2, 1, 3])


@dataclass(frozen=True)
class QftPlan:
    """Gate schedule for one transform: ladder steps plus reversal swaps.

    ``gate_sequence`` holds ("h", target) and ("cr", k, control, target)
    entries with span-local indices; ``reversal`` holds swap pairs.
    """

    width: int
    gate_sequence: tuple
    reversal: tuple


def plan(width: int) -> QftPlan:
    if width < 1:
        raise ValueError("transform width must be >= 1")
    seq = []
    for i in range(width):
        seq.append(("h", i))
        for k in range(2, width - i + 1):
            seq.append(("cr", k, i + k - 1, i))
    reversal = tuple((i, width - 1 - i) for i in range(width // 2))
    return QftPlan(width, tuple(seq), reversal)


def qft(state: StateVector, span: Sequence[int]) -> StateVector:
    """Fourier-transform the span (qubit span[0] is the MSB of the value)."""
    qubits = list(span)
    p = plan(len(qubits))
    h = hadamard()
    for step in p.gate_sequence:
        if step[0] == "h":
            state.apply_single_qubit(h, qubits[step[1]])
        else:
            _, k, control, target = step
            state.apply_controlled_single_qubit(r_k(k), qubits[control], qubits[target])
    for i, j in p.reversal:
        state.apply_permutation(_SWAP, [qubits[i], qubits[j]])
    return state


def inverse_qft(state: StateVector, span: Sequence[int]) -> StateVector:
    """Exact inverse: the same network backwards with conjugated rotations."""
    qubits = list(span)
    p = plan(len(qubits))
    for i, j in p.reversal:
        state.apply_permutation(_SWAP, [qubits[i], qubits[j]])
    h = hadamard()
    for step in reversed(p.gate_sequence):
        if step[0] == "h":
            state.apply_single_qubit(h, qubits[step[1]])
        else:
            _, k, control, target = step
            state.apply_controlled_single_qubit(
                r_k(k).dagger(), qubits[control], qubits[target]
            )
    return state


def dft_reference(state: StateVector, span: Sequence[int], inverse: bool = False) -> StateVector:
    """Dense 2^m x 2^m Fourier matrix applied by direct multiplication.

    Mathematically identical to qft / inverse_qft but shares no gate code
    with them. Capped at 12 qubits by the dense cost.
    """
    qubits = list(span)
    m = len(qubits)
    if m > DENSE_MAX_WIDTH:
        raise CapacityError(f"dense reference capped at {DENSE_MAX_WIDTH} qubits, got {m}")
    dim = 1 << m
    y = np.arange(dim)
    sign = -1.0 if inverse else 1.0
    f = np.exp(sign * 2j * np.pi * np.outer(y, y) / dim) / np.sqrt(dim)

    n = state.num_qubits
    rest = [q for q in range(n) if q not in qubits]
    order = qubits + rest
    t = state.amplitudes.reshape([2] * n)
    t = np.transpose(t, order).reshape(dim, -1)
    t = f @ t
    t = np.transpose(t.reshape([2] * n), np.argsort(order))
    state.amplitudes = np.ascontiguousarray(t).reshape(-1)
    return state
