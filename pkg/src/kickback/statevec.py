"""Dense state-vector simulation of an n-qubit register.

A register of n qubits is a numpy array of 2**n complex amplitudes indexed
by basis integer. Qubit 0 is the most significant bit of that integer:
|a1 a2 ... an> sits at index 2**(n-1)*a1 + ... + 2**0*an. Every module in
this package uses this single convention.

All randomness flows through numpy Generator objects (PCG64, as returned by
``np.random.default_rng``), so a fixed seed reproduces the same outcome
sequence on every platform.

Gate and permutation methods mutate the vector in place and return ``self``
so calls can be chained. A vector must be driven from one thread at a time;
distinct vectors are fully independent.
"""

from __future__ import annotations

import os
from typing import Callable, Sequence, Union

import numpy as np

PermSpec = Union[Sequence[int], np.ndarray, Callable[[int], int]]

DEFAULT_MAX_QUBITS = 24
MAX_QUBITS_ENV = "KICKBACK_MAX_QUBITS"

UNITARY_TOL = 1e-10
MEASURE_NORM_TOL = 1e-8


class CapacityError(ValueError):
    """Requested register exceeds the configured qubit cap."""


def max_qubits() -> int:
    """Soft cap on register width; override with KICKBACK_MAX_QUBITS."""
    raw = os.environ.get(MAX_QUBITS_ENV)
    return DEFAULT_MAX_QUBITS if raw is None else int(raw)


def check_unitary(matrix: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    """Return ``matrix`` as a complex array, raising unless it is unitary.

    Unitarity means every entry of U+U - I is below ``tol`` in modulus.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix contains non-finite entries")
    defect = float(np.abs(m.conj().T @ m - np.eye(m.shape[0])).max())
    if defect > tol:
        raise ValueError(f"matrix is not unitary (defect {defect:.3e} > {tol:.0e})")
    return m


def _gate_matrix(gate) -> np.ndarray:
    """Coerce ``gate`` to a validated 2x2 unitary array.

    Objects exposing a ``matrix`` attribute (gates.Gate2x2) are trusted to
    have been validated at construction; raw arrays are checked here.
    """
    trusted = hasattr(gate, "matrix")
    m = np.asarray(getattr(gate, "matrix", gate), dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 gate matrix, got shape {m.shape}")
    if not trusted:
        check_unitary(m)
    return m


def sample_index(probabilities: np.ndarray, rng: np.random.Generator) -> int:
    """Draw one index from a probability vector using one uniform variate."""
    cdf = np.cumsum(probabilities)
    u = rng.random() * cdf[-1]
    return int(np.searchsorted(cdf, u, side="right"))


class StateVector:
    """2**n complex amplitudes of an n-qubit register."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, num_qubits: int, amplitudes: np.ndarray | None = None):
        if num_qubits < 1:
            raise ValueError("a register needs at least one qubit")
        cap = max_qubits()
        if num_qubits > cap:
            raise CapacityError(
                f"{num_qubits} qubits exceeds the cap of {cap} "
                f"(override with {MAX_QUBITS_ENV})"
            )
        dim = 1 << num_qubits
        if amplitudes is None:
            amps = np.zeros(dim, dtype=complex)
            amps[0] = 1.0
        else:
            amps = np.array(amplitudes, dtype=complex)
            if amps.shape != (dim,):
                raise ValueError(f"expected {dim} amplitudes, got shape {amps.shape}")
            if not np.all(np.isfinite(amps.real)) or not np.all(np.isfinite(amps.imag)):
                raise ValueError("amplitudes contain non-finite entries")
            if abs(np.vdot(amps, amps).real - 1.0) > MEASURE_NORM_TOL:
                raise ValueError("amplitudes are not normalized")
        self.num_qubits = num_qubits
        self.amplitudes = amps

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def copy(self) -> StateVector:
        out = StateVector.__new__(StateVector)
        out.num_qubits = self.num_qubits
        out.amplitudes = self.amplitudes.copy()
        return out

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits})"

    def _bit(self, qubit: int) -> int:
        """Bit position of ``qubit`` inside the basis integer."""
        if not 0 <= qubit < self.num_qubits:
            raise ValueError(f"qubit {qubit} out of range for {self.num_qubits} qubits")
        return self.num_qubits - 1 - qubit

    def _check_span(self, span: Sequence[int]) -> list[int]:
        qubits = [int(q) for q in span]
        if not qubits:
            raise ValueError("span must contain at least one qubit")
        if len(set(qubits)) != len(qubits):
            raise ValueError("span contains repeated qubits")
        for q in qubits:
            self._bit(q)
        return qubits

    # -- gates ----------------------------------------------------------

    def apply_single_qubit(self, gate, target: int) -> StateVector:
        """Apply a 2x2 unitary to ``target``; qubit 0 is the MSB."""
        m = _gate_matrix(gate)
        step = 1 << self._bit(target)
        r = np.arange(self.dim >> 1)
        idx0 = ((r & ~(step - 1)) << 1) | (r & (step - 1))
        idx1 = idx0 | step
        a = self.amplitudes[idx0]
        b = self.amplitudes[idx1]
        self.amplitudes[idx0] = m[0, 0] * a + m[0, 1] * b
        self.amplitudes[idx1] = m[1, 0] * a + m[1, 1] * b
        return self

    def apply_controlled_single_qubit(self, gate, control: int, target: int) -> StateVector:
        """Apply ``gate`` to ``target`` on the subspace where ``control`` is 1."""
        if control == target:
            raise ValueError("control and target must be different qubits")
        m = _gate_matrix(gate)
        cmask = 1 << self._bit(control)
        tmask = 1 << self._bit(target)
        idx = np.arange(self.dim)
        idx0 = idx[((idx & cmask) != 0) & ((idx & tmask) == 0)]
        idx1 = idx0 | tmask
        a = self.amplitudes[idx0]
        b = self.amplitudes[idx1]
        self.amplitudes[idx0] = m[0, 0] * a + m[0, 1] * b
        self.amplitudes[idx1] = m[1, 0] * a + m[1, 1] * b
        return self

    def apply_permutation(self, perm: PermSpec, span: Sequence[int]) -> StateVector:
        """Relabel the basis values of ``span`` by a bijection.

        The amplitude whose span bits read x moves to span bits perm(x);
        all other bits are untouched, so the norm is preserved exactly.
        ``span`` lists qubits MSB-first with respect to the span value; it
        does not have to be contiguous. ``perm`` is a table (length
        2**len(span)) or a callable, and is verified to be a bijection.
        """
        qubits = self._check_span(span)
        w = len(qubits)
        table = _permutation_table(perm, w)
        idx = np.arange(self.dim)
        if all(qubits[i + 1] == qubits[i] + 1 for i in range(w - 1)):
            shift = self._bit(qubits[-1])
            mask = (1 << w) - 1
            x = (idx >> shift) & mask
            new_idx = (idx & ~(mask << shift)) | (table[x] << shift)
        else:
            x = np.zeros(self.dim, dtype=np.int64)
            span_mask = 0
            for pos, q in enumerate(qubits):
                b = self._bit(q)
                span_mask |= 1 << b
                x |= ((idx >> b) & 1) << (w - 1 - pos)
            px = table[x]
            new_idx = idx & ~span_mask
            for pos, q in enumerate(qubits):
                new_idx |= ((px >> (w - 1 - pos)) & 1) << self._bit(q)
        out = np.empty_like(self.amplitudes)
        out[new_idx] = self.amplitudes
        self.amplitudes = out
        return self

    # -- readout --------------------------------------------------------

    def probabilities(self) -> np.ndarray:
        """Born-rule probabilities |amplitude_i|**2 for every basis index."""
        return np.abs(self.amplitudes) ** 2

    def marginal_probabilities(self, span: Sequence[int]) -> np.ndarray:
        """Distribution of the span's value, summed over all other qubits."""
        qubits = self._check_span(span)
        rest = [q for q in range(self.num_qubits) if q not in qubits]
        p = self.probabilities().reshape([2] * self.num_qubits)
        p = np.transpose(p, qubits + rest).reshape(1 << len(qubits), -1)
        return p.sum(axis=1)

    def measure_all(self, rng: np.random.Generator, collapse: bool = False) -> int:
        """Sample a basis index; optionally collapse onto the outcome.

        Raises if the squared norm strays from 1 by more than 1e-8.
        """
        p = self.probabilities()
        total = float(p.sum())
        if abs(total - 1.0) > MEASURE_NORM_TOL:
            raise ValueError(f"state is not normalized (probability mass {total})")
        outcome = sample_index(p, rng)
        if collapse:
            self.amplitudes[:] = 0.0
            self.amplitudes[outcome] = 1.0
        return outcome


def _permutation_table(perm: PermSpec, width: int) -> np.ndarray:
    size = 1 << width
    if callable(perm):
        table = np.fromiter((perm(x) for x in range(size)), dtype=np.int64, count=size)
    else:
        table = np.asarray(perm, dtype=np.int64)
    if table.shape != (size,):
        raise ValueError(f"permutation table must have {size} entries")
    if table.min() < 0 or table.max() >= size:
        raise ValueError("permutation maps outside the span's value range")
    if not np.all(np.bincount(table, minlength=size) == 1):
        raise ValueError("mapping is not a bijection (repeated image)")
    return table


def basis_state(num_qubits: int, index: int = 0) -> StateVector:
    """The computational basis state |index> on ``num_qubits`` qubits."""
    state = StateVector(num_qubits)
    if not 0 <= index < state.dim:
        raise ValueError(f"basis index {index} out of range for {num_qubits} qubits")
    state.amplitudes[0] = 0.0
    state.amplitudes[index] = 1.0
    return state
