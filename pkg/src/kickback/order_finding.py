"""Order finding over the full simulated network, and the RSA crack on it.

The quantum part estimates an eigenvalue phase k/r of the multiply-by-a
map: target register prepared in |1> (the uniform combination of all the
eigenvectors), m control bits through the controlled-power kernel, inverse
Fourier transform, measure. Continued fractions pull a candidate for r out
of the measured dyadic x/2^m; candidates are verified classically and the
loop retries until verification succeeds, falling back to combining two
runs by least common multiple when single runs keep failing.

The default control width is twice the target width, which gives continued
fractions enough precision to isolate any denominator below the modulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .gates import ModMultSpec, controlled_modmult, pauli_x
from .phase_estimation import EigenOracle, kernel_state
from .qft import inverse_qft
from .statevec import StateVector, sample_index

SINGLE_RUN_ATTEMPTS = 4
MAX_NETWORK_RUNS = 64


class TrialLimitError(RuntimeError):
    """Order finding exhausted its run budget without a verified order."""


def mod_exp(base: int, exponent: int, modulus: int) -> int:
    """base**exponent mod modulus by square-and-multiply."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    result = 1
    b = base % modulus
    e = exponent
    while e:
        if e & 1:
            result = result * b % modulus
        b = b * b % modulus
        e >>= 1
    return result


def multiplicative_order(a: int, modulus: int) -> int:
    """Smallest r >= 1 with a**r = 1 mod modulus, by direct iteration."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if math.gcd(a, modulus) != 1:
        raise ValueError(f"{a} and {modulus} are not coprime")
    r, y = 1, a % modulus
    while y != 1:
        y = y * a % modulus
        r += 1
    return r


@dataclass(frozen=True)
class OrderProblem:
    """Find the least r > 0 with base**r = 1 mod modulus."""

    base: int
    modulus: int
    control_bits: int | None = None

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        if not 1 <= self.base < self.modulus:
            raise ValueError("base must satisfy 1 <= base < modulus")
        if math.gcd(self.base, self.modulus) != 1:
            raise ValueError(
                f"base {self.base} and modulus {self.modulus} are not coprime"
            )

    @property
    def target_bits(self) -> int:
        """Width of the register holding values mod modulus."""
        return max(1, (self.modulus - 1).bit_length())

    @property
    def precision_bits(self) -> int:
        """Control register width; defaults to twice the target width."""
        return self.control_bits if self.control_bits is not None else 2 * self.target_bits


class ModMultEigenOracle(EigenOracle):
    """Controlled multiply-by-base powers; eigenstate defaults to |1>."""

    def __init__(self, problem: OrderProblem, eigenstate: np.ndarray | None = None):
        self.problem = problem
        self.target_width = problem.target_bits
        if eigenstate is not None:
            eigenstate = np.asarray(eigenstate, dtype=complex)
            if eigenstate.shape != (1 << self.target_width,):
                raise ValueError("eigenstate has the wrong dimension for the target span")
        self._eigenstate = eigenstate

    def prepare_eigenstate(self, state, target_span):
        if self._eigenstate is None:
            state.apply_single_qubit(pauli_x(), target_span[-1])  # target value 1
        else:
            # the whole register is still |0...0>, so the target span owns
            # the low amplitude block
            state.amplitudes[: self._eigenstate.size] = self._eigenstate

    def apply_controlled_power(self, state, j, control, target_span):
        spec = ModMultSpec(self.problem.base, self.problem.modulus, j)
        controlled_modmult(spec, state, control, target_span)


def prepare_psi_k(problem: OrderProblem, k: int, r: int) -> StateVector:
    """The eigenvector sum_j e^{-2 pi i k j / r} |a^j mod N> / sqrt r.

    Test-only helper: r must be the true multiplicative order (verified
    here), since fabricating these states is the whole difficulty the
    |1>-substitution argument removes.
    """
    a, modulus = problem.base, problem.modulus
    if r != multiplicative_order(a, modulus):
        raise ValueError(f"{r} is not the multiplicative order of {a} mod {modulus}")
    if not 1 <= k <= r:
        raise ValueError(f"eigenvector index k must lie in 1..{r}")
    amps = np.zeros(1 << problem.target_bits, dtype=complex)
    value = 1
    for j in range(r):
        amps[value] += np.exp(-2j * np.pi * k * j / r)
        value = value * a % modulus
    return StateVector(problem.target_bits, amps / math.sqrt(r))


@dataclass(frozen=True)
class Convergent:
    numerator: int
    denominator: int


def convergents(x: int, denom: int, bound: int) -> tuple[int, list[Convergent]]:
    """Continued-fraction convergents of x/denom.

    Returns (candidate, all) where candidate is the denominator of the last
    convergent with denominator < bound. x = 0 expands to 0/1, candidate 1.
    """
    if denom < 1:
        raise ValueError("denominator must be >= 1")
    if not 0 <= x < denom:
        raise ValueError(f"numerator {x} out of range for denominator {denom}")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    coeffs = []
    a, b = x, denom
    while b:
        q = a // b
        coeffs.append(q)
        a, b = b, a - q * b
    convs = []
    h1, h2, k1, k2 = 1, 0, 0, 1
    for q in coeffs:
        h1, h2 = q * h1 + h2, h1
        k1, k2 = q * k1 + k2, k1
        convs.append(Convergent(h1, k1))
    candidate = 1
    for c in convs:
        if c.denominator < bound:
            candidate = c.denominator
    return candidate, convs


def control_distribution(
    problem: OrderProblem, eigenstate: np.ndarray | None = None
) -> np.ndarray:
    """Exact pre-measurement distribution of the control register."""
    oracle = ModMultEigenOracle(problem, eigenstate)
    state = kernel_state(problem.precision_bits, oracle)
    inverse_qft(state, range(problem.precision_bits))
    return state.marginal_probabilities(range(problem.precision_bits))


def _measure_control(problem: OrderProblem, rng: np.random.Generator) -> int:
    return sample_index(control_distribution(problem), rng)


def _prime_factors(value: int) -> list[int]:
    factors = []
    v = value
    p = 2
    while p * p <= v:
        if v % p == 0:
            factors.append(p)
            while v % p == 0:
                v //= p
        p += 1
    if v > 1:
        factors.append(v)
    return factors


def _order_from_multiple(a: int, modulus: int, multiple: int) -> int:
    """Shrink a verified multiple of the order down to the order itself."""
    order = multiple
    for p in _prime_factors(multiple):
        while order % p == 0 and mod_exp(a, order // p, modulus) == 1:
            order //= p
    return order


def _verified_order(a: int, modulus: int, candidate: int) -> int | None:
    if candidate >= 1 and mod_exp(a, candidate, modulus) == 1:
        return _order_from_multiple(a, modulus, candidate)
    return None


@dataclass
class OrderResult:
    """A verified order plus the evidence that produced it."""

    base: int
    modulus: int
    precision_bits: int
    order: int
    trials: int
    measured: list[int] = field(default_factory=list)
    candidates: list[int] = field(default_factory=list)
    verified: bool = True

    def to_record(self) -> dict:
        return {
            "a": self.base,
            "N": self.modulus,
            "m": self.precision_bits,
            "trials": self.trials,
            "measured_x": list(self.measured),
            "convergents": list(self.candidates),
            "r": self.order,
            "verified": self.verified,
        }


def find_order(
    problem: OrderProblem,
    rng: np.random.Generator,
    max_runs: int = MAX_NETWORK_RUNS,
    single_run_attempts: int = SINGLE_RUN_ATTEMPTS,
) -> OrderResult:
    """Run the network until a candidate order verifies.

    Each run measures x, takes the largest convergent denominator of x/2^m
    below N as the candidate, and accepts it if a^candidate = 1 mod N
    (shrunk to the minimal such exponent). After ``single_run_attempts``
    failures, later runs also try the least common multiple of the two most
    recent informative candidates. Raises TrialLimitError at ``max_runs``.
    """
    a, modulus, m = problem.base, problem.modulus, problem.precision_bits
    measured: list[int] = []
    candidates: list[int] = []
    previous = None
    for runs in range(1, max_runs + 1):
        x = _measure_control(problem, rng)
        measured.append(x)
        candidate, _ = convergents(x, 1 << m, modulus)
        candidates.append(candidate)
        order = _verified_order(a, modulus, candidate)
        if order is None and runs > single_run_attempts and previous is not None:
            combined = math.lcm(previous, candidate)
            if combined < modulus:
                order = _verified_order(a, modulus, combined)
        if order is not None:
            return OrderResult(
                base=a,
                modulus=modulus,
                precision_bits=m,
                order=order,
                trials=runs,
                measured=measured,
                candidates=candidates,
            )
        if candidate > 1:
            previous = candidate
    raise TrialLimitError(
        f"no verified order for base {a} mod {modulus} after {max_runs} runs"
    )


def coprime_pair_probability(r: int) -> float:
    """Exact fraction of pairs (k1, k2) in {1..r}^2 with gcd(k1, k2) = 1."""
    if r < 1:
        raise ValueError("r must be >= 1")
    ks = np.arange(1, r + 1)
    return float((np.gcd.outer(ks, ks) == 1).sum()) / (r * r)


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with g = gcd(a, b) = s*a + t*b."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _mod_inverse(a: int, modulus: int) -> int:
    g, s, _ = _extended_gcd(a % modulus, modulus)
    if g != 1:
        raise ValueError(f"{a} is not invertible modulo {modulus}")
    return s % modulus


@dataclass(frozen=True)
class RsaInstance:
    """Ciphertext C = P**e mod N with the plaintext P to be recovered."""

    modulus: int
    public_exponent: int
    ciphertext: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        if self.public_exponent < 1:
            raise ValueError("public exponent must be >= 1")
        if not 1 <= self.ciphertext < self.modulus:
            raise ValueError("ciphertext must lie in [1, modulus)")
        if math.gcd(self.ciphertext, self.modulus) != 1:
            raise ValueError("ciphertext shares a factor with the modulus")


@dataclass
class CrackResult:
    plaintext: int
    order: int | None
    decryption_exponent: int
    trials: int


def rsa_crack(inst: RsaInstance, rng: np.random.Generator) -> CrackResult:
    """Recover P from (C, e, N) via the order of C.

    The order of C equals the order of P, so d with e*d = 1 mod ord(C)
    (extended Euclid) satisfies C**d = P**(e*d) = P. The recovered value is
    always re-encrypted and checked against C before being returned.
    """
    modulus, e, c = inst.modulus, inst.public_exponent, inst.ciphertext
    if e == 1:
        return CrackResult(plaintext=c, order=None, decryption_exponent=1, trials=0)
    found = find_order(OrderProblem(c, modulus), rng)
    d = _mod_inverse(e, found.order)
    plaintext = mod_exp(c, d, modulus)
    if mod_exp(plaintext, e, modulus) != c:
        raise RuntimeError("recovered plaintext failed the re-encryption check")
    return CrackResult(
        plaintext=plaintext,
        order=found.order,
        decryption_exponent=d,
        trials=found.trials,
    )


def totient_decrypt(factorization: Mapping[int, int], public_exponent: int) -> int:
    """Classical reference path: d = e^{-1} mod phi(N) from N's factors."""
    if public_exponent < 1:
        raise ValueError("public exponent must be >= 1")
    if not factorization:
        raise ValueError("factorization must not be empty")
    phi = 1
    for p, k in factorization.items():
        if p < 2 or k < 1:
            raise ValueError(f"invalid factor {p}^{k}")
        if any(p % q == 0 for q in range(2, int(math.isqrt(p)) + 1)):
            raise ValueError(f"{p} is not prime")
        phi *= p ** (k - 1) * (p - 1)
    return _mod_inverse(public_exponent, phi)
