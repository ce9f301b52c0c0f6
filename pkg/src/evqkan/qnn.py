"""Data re-uploading QNN baseline: Ry columns, CNOT chains, Rx encoding."""
from __future__ import annotations

from dataclasses import dataclass
from math import acos, pi

import numpy as np

from .ansatz import LayerVector
from .qsim import (
    Observable,
    StateVector,
    apply_multi_controlled_x,
    apply_rx,
    apply_ry,
    expectation,
    zero_state,
)

NUM_QUBITS = 4
PARAMS_PER_LAYER = 2 * NUM_QUBITS


@dataclass
class QnnParams:
    """Flat rotation angles, 8 per layer (two Ry columns of 4)."""

    thetas: np.ndarray

    def __post_init__(self) -> None:
        self.thetas = np.asarray(self.thetas, dtype=float)
        if (
            self.thetas.ndim != 1
            or self.thetas.size == 0
            or self.thetas.size % PARAMS_PER_LAYER
        ):
            raise ValueError(
                f"thetas must be a flat vector of length 8*L, got shape "
                f"{self.thetas.shape}"
            )

    @classmethod
    def random(cls, num_layers: int, rng: np.random.Generator) -> "QnnParams":
        """Uniform initialization in [0, 2*pi)."""
        return cls(rng.uniform(0.0, 2.0 * pi, size=PARAMS_PER_LAYER * num_layers))

    @property
    def num_layers(self) -> int:
        return self.thetas.size // PARAMS_PER_LAYER

    def with_flat(self, flat: np.ndarray) -> "QnnParams":
        return QnnParams(np.asarray(flat, dtype=float))


def _cnot_chain(state: StateVector) -> StateVector:
    for control in range(NUM_QUBITS - 1):
        state = apply_multi_controlled_x(state, (control,), 1, control + 1)
    return state


def qnn_forward(params: QnnParams, x: LayerVector, hamiltonian: Observable) -> float:
    """Evaluate the circuit of one input point.

    Per layer: trainable Ry column, CNOT chain 0->1, 1->2, 2->3, Rx encoding
    column with angle acos(2 x_k - 1) (inputs recycled modulo their length),
    second trainable Ry column, CNOT chain again.  Starts from |0000>.
    """
    if hamiltonian.num_qubits != NUM_QUBITS:
        raise ValueError(
            f"hamiltonian covers {hamiltonian.num_qubits} qubits, need {NUM_QUBITS}"
        )
    state = zero_state(NUM_QUBITS)
    comp = x.components
    for layer in range(params.num_layers):
        base = PARAMS_PER_LAYER * layer
        for k in range(NUM_QUBITS):
            state = apply_ry(state, k, params.thetas[base + k])
        state = _cnot_chain(state)
        for k in range(NUM_QUBITS):
            state = apply_rx(state, k, acos(2.0 * comp[k % x.dim] - 1.0))
        for k in range(NUM_QUBITS):
            state = apply_ry(state, k, params.thetas[base + NUM_QUBITS + k])
        state = _cnot_chain(state)
    return expectation(state, hamiltonian)
