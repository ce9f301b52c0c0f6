"""Dense statevector engine.

Qubit 0 is the least-significant bit of the basis-state index, so the
amplitude of |b_{n-1} ... b_1 b_0> sits at index sum_j b_j 2^j.  All
operations are pure: they take a StateVector and return a new one.

Rotation conventions (half-angle form):
    Ry(t) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]]
    Rx(t) = [[cos(t/2), -i sin(t/2)], [-i sin(t/2), cos(t/2)]]
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import cos, sin, sqrt

import numpy as np

# Centralized tolerances: unit-norm drift and cross-route equivalence.
ATOL_NORM = 1e-12
ATOL_ORACLE = 1e-10

# A renormalization request on a vector shorter than this is treated as a
# zero-norm (post-selection-impossible) state.
DEGENERATE_NORM = 1e-12


class DegenerateStateError(Exception):
    """Post-selection or renormalization hit a numerically zero state."""


@dataclass
class StateVector:
    """Complex amplitudes over the 2**num_qubits computational basis."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise ValueError(f"num_qubits must be >= 1, got {self.num_qubits}")
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        expected = 2**self.num_qubits
        if self.amplitudes.shape != (expected,):
            raise ValueError(
                f"amplitude vector must have length {expected}, "
                f"got shape {self.amplitudes.shape}"
            )

    @property
    def dim(self) -> int:
        return 2**self.num_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class PauliString:
    """One Pauli label per qubit; factors[j] acts on qubit j."""

    factors: str

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("factors must name at least one qubit")
        bad = set(self.factors) - set("IXYZ")
        if bad:
            raise ValueError(f"unknown Pauli labels {sorted(bad)}")

    @property
    def num_qubits(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class Observable:
    """Real linear combination of Pauli strings."""

    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("observable needs at least one term")
        n = self.terms[0][1].num_qubits
        for coeff, pauli in self.terms:
            if not np.isfinite(coeff):
                raise ValueError(f"non-finite coefficient {coeff!r}")
            if pauli.num_qubits != n:
                raise ValueError("all Pauli strings must cover the same qubits")

    @property
    def num_qubits(self) -> int:
        return self.terms[0][1].num_qubits


def observable(*terms: tuple[float, str]) -> Observable:
    """Shorthand: observable((1.0, "ZZI"), (0.5, "IXY"))."""
    return Observable(tuple((float(c), PauliString(p)) for c, p in terms))


@dataclass
class DenseOperator:
    """A dim x dim matrix, generally non-unitary.

    num_terms declares how many summed unitaries the matrix stands for; it
    feeds the success-probability accounting of apply_dense (1 for plain
    unitaries).
    """

    dim: int
    entries: np.ndarray
    num_terms: int = 1

    def __post_init__(self) -> None:
        if self.dim < 2 or self.dim & (self.dim - 1):
            raise ValueError(f"dim must be a power of two >= 2, got {self.dim}")
        self.entries = np.asarray(self.entries, dtype=complex)
        if self.entries.shape != (self.dim, self.dim):
            raise ValueError(
                f"entries must be {self.dim}x{self.dim}, got {self.entries.shape}"
            )
        if self.num_terms < 1:
            raise ValueError(f"num_terms must be >= 1, got {self.num_terms}")


def zero_state(num_qubits: int) -> StateVector:
    """The all-zeros computational basis state |0...0>."""
    if num_qubits < 1:
        raise ValueError(f"num_qubits must be >= 1, got {num_qubits}")
    amps = np.zeros(2**num_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def _check_qubit(state: StateVector, qubit: int) -> None:
    if not 0 <= qubit < state.num_qubits:
        raise ValueError(
            f"qubit {qubit} out of range for {state.num_qubits}-qubit state"
        )


def _apply_1q(amps: np.ndarray, mat: np.ndarray, qubit: int, n: int) -> np.ndarray:
    # Axis layout: reshaping 2**n amplitudes to (high, 2, low) puts qubit
    # `qubit` on the middle axis because qubit 0 is the least-significant bit.
    shaped = amps.reshape(2 ** (n - 1 - qubit), 2, 2**qubit)
    return np.einsum("ab,xbz->xaz", mat, shaped).reshape(-1)


def ry_matrix(theta: float) -> np.ndarray:
    c, s = cos(theta / 2.0), sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rx_matrix(theta: float) -> np.ndarray:
    c, s = cos(theta / 2.0), sin(theta / 2.0)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def apply_ry(state: StateVector, qubit: int, theta: float) -> StateVector:
    """Rotate `qubit` about the y axis by `theta`."""
    _check_qubit(state, qubit)
    amps = _apply_1q(state.amplitudes, ry_matrix(theta), qubit, state.num_qubits)
    return StateVector(state.num_qubits, amps)


def apply_rx(state: StateVector, qubit: int, theta: float) -> StateVector:
    """Rotate `qubit` about the x axis by `theta`."""
    _check_qubit(state, qubit)
    amps = _apply_1q(state.amplitudes, rx_matrix(theta), qubit, state.num_qubits)
    return StateVector(state.num_qubits, amps)


def _check_controls(
    state: StateVector, controls: tuple[int, ...], pattern: int, target: int
) -> None:
    _check_qubit(state, target)
    if len(set(controls)) != len(controls):
        raise ValueError(f"duplicate control qubits in {controls}")
    if target in controls:
        raise ValueError(f"target {target} overlaps controls {controls}")
    for c in controls:
        _check_qubit(state, c)
    if not 0 <= pattern < 2 ** len(controls):
        raise ValueError(
            f"pattern {pattern} out of range for {len(controls)} controls"
        )


@lru_cache(maxsize=None)
def _basis_indices(num_qubits: int) -> np.ndarray:
    idx = np.arange(2**num_qubits)
    idx.setflags(write=False)
    return idx


def _control_pair_indices(
    n: int, controls: tuple[int, ...], pattern: int, target: int
) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs (target bit 0, target bit 1) where the control bits match."""
    idx = _basis_indices(n)
    mask = (idx >> target) & 1 == 0
    for i, c in enumerate(controls):
        mask &= (idx >> c) & 1 == (pattern >> i) & 1
    i0 = idx[mask]
    return i0, i0 | (1 << target)


def apply_multi_controlled_ry(
    state: StateVector,
    controls: tuple[int, ...],
    pattern: int,
    target: int,
    theta: float,
) -> StateVector:
    """Ry(theta) on `target`, applied only where control bits equal `pattern`.

    Bit i of `pattern` corresponds to controls[i].  Empty controls reduce to
    apply_ry exactly.
    """
    controls = tuple(controls)
    _check_controls(state, controls, pattern, target)
    i0, i1 = _control_pair_indices(state.num_qubits, controls, pattern, target)
    c, s = cos(theta / 2.0), sin(theta / 2.0)
    amps = state.amplitudes.copy()
    a0, a1 = amps[i0], amps[i1]
    amps[i0] = c * a0 - s * a1
    amps[i1] = s * a0 + c * a1
    return StateVector(state.num_qubits, amps)


def apply_multi_controlled_x(
    state: StateVector, controls: tuple[int, ...], pattern: int, target: int
) -> StateVector:
    """Pauli-X on `target` where control bits equal `pattern`."""
    controls = tuple(controls)
    _check_controls(state, controls, pattern, target)
    i0, i1 = _control_pair_indices(state.num_qubits, controls, pattern, target)
    amps = state.amplitudes.copy()
    amps[i0], amps[i1] = state.amplitudes[i1], state.amplitudes[i0]
    return StateVector(state.num_qubits, amps)


def apply_pauli_string(state: StateVector, pauli: PauliString) -> np.ndarray:
    """Amplitudes of P|psi> computed via bit permutation and phases."""
    if pauli.num_qubits != state.num_qubits:
        raise ValueError(
            f"Pauli string covers {pauli.num_qubits} qubits, "
            f"state has {state.num_qubits}"
        )
    n = state.num_qubits
    idx = _basis_indices(n)
    flip = 0
    phase = np.ones(state.dim, dtype=complex)
    for q, label in enumerate(pauli.factors):
        if label == "I":
            continue
        bits = (idx >> q) & 1
        if label == "Z":
            phase = phase * (1 - 2 * bits)
        elif label == "X":
            flip ^= 1 << q
        else:  # Y: |0> -> i|1>, |1> -> -i|0>
            flip ^= 1 << q
            phase = phase * (1j * (2 * bits - 1))
    return phase * state.amplitudes[idx ^ flip]


def expectation(state: StateVector, obs: Observable) -> float:
    """<psi| sum_j c_j P_j |psi> as a real number.

    The imaginary residue must stay below ATOL_ORACLE; it is discarded after
    the check.
    """
    if obs.num_qubits != state.num_qubits:
        raise ValueError(
            f"observable covers {obs.num_qubits} qubits, "
            f"state has {state.num_qubits}"
        )
    value = 0.0 + 0.0j
    for coeff, pauli in obs.terms:
        value += coeff * np.vdot(state.amplitudes, apply_pauli_string(state, pauli))
    if abs(value.imag) > ATOL_ORACLE:
        raise ValueError(f"expectation has imaginary residue {value.imag:.3e}")
    return float(value.real)


def apply_dense(
    state: StateVector, op: DenseOperator, renormalize: bool = False
) -> tuple[StateVector, float]:
    """Apply a dense (possibly non-unitary) operator A.

    Returns (A|psi>, success_probability) where the success probability is
    ||A psi||^2 / T^2 with T = op.num_terms, the post-selection chance of the
    equivalent ancilla construction.  With `renormalize` the returned state is
    A|psi> / ||A psi||; a zero-norm result raises DegenerateStateError.
    """
    if op.dim != state.dim:
        raise ValueError(f"operator dim {op.dim} != state dim {state.dim}")
    out = op.entries @ state.amplitudes
    nrm = float(np.linalg.norm(out))
    success = (nrm / op.num_terms) ** 2
    if renormalize:
        if nrm < DEGENERATE_NORM:
            raise DegenerateStateError(
                f"cannot renormalize: ||A psi|| = {nrm:.3e}"
            )
        out = out / nrm
    return StateVector(state.num_qubits, out), success


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2; the global-phase-free comparison used throughout."""
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)
