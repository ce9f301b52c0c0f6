"""Tiled sum-operator ansatz.

Every layer turns the current input vector into a table of rotation angles
(Fermi-Dirac transform plus a trainable spline), assembles a block-diagonal
unitary per table column, and sums X-shifted copies of those unitaries into a
single non-unitary layer matrix whose 2x2 tiles are Ry rotations.  Applying
the matrix with renormalization reproduces the ancilla-based linear
combination of unitaries post-selected on all-zero ancillae; the gate-level
construction is kept alongside as a validation path.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import acos, pi
from typing import Literal, NamedTuple

import numpy as np

from .qsim import (
    DegenerateStateError,
    DenseOperator,
    Observable,
    StateVector,
    apply_dense,
    apply_multi_controlled_ry,
    apply_multi_controlled_x,
    apply_rx,
    apply_ry,
    expectation,
    observable,
    ry_matrix,
    zero_state,
)
from .spline import SplineGrid, basis_values

EncodingMode = Literal["simple", "fit"]
ChainingMode = Literal["state_passing", "re_encode"]


@dataclass
class EvqkanParams:
    """Trainable spline coefficients, shape (layers, rows, terms, basis).

    rows = terms = 2**(num_qubits - 1).  The optimizer sees the row-major
    flattening of this tensor.
    """

    num_layers: int
    num_qubits: int
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        if self.num_layers < 1:
            raise ValueError(f"num_layers must be >= 1, got {self.num_layers}")
        if self.num_qubits < 2:
            raise ValueError(f"num_qubits must be >= 2, got {self.num_qubits}")
        self.coefficients = np.asarray(self.coefficients, dtype=float)
        rows = 2 ** (self.num_qubits - 1)
        if self.coefficients.ndim != 4 or self.coefficients.shape[:3] != (
            self.num_layers,
            rows,
            rows,
        ):
            raise ValueError(
                f"coefficients must have shape ({self.num_layers}, {rows}, {rows}, "
                f"basis), got {self.coefficients.shape}"
            )
        if not np.all(np.isfinite(self.coefficients)):
            raise ValueError("coefficients must be finite")

    @classmethod
    def zeros(
        cls, num_layers: int, num_qubits: int, num_basis: int
    ) -> "EvqkanParams":
        rows = 2 ** (num_qubits - 1)
        return cls(num_layers, num_qubits, np.zeros((num_layers, rows, rows, num_basis)))

    @property
    def num_basis(self) -> int:
        return self.coefficients.shape[3]

    def flatten(self) -> np.ndarray:
        return self.coefficients.ravel().copy()

    def with_flat(self, flat: np.ndarray) -> "EvqkanParams":
        """Rebuild from the optimizer's row-major parameter vector."""
        coeffs = np.asarray(flat, dtype=float).reshape(self.coefficients.shape)
        return EvqkanParams(self.num_layers, self.num_qubits, coeffs)


@dataclass
class LayerVector:
    """Per-layer input vector; every component lives in [0, 1]."""

    components: np.ndarray

    def __post_init__(self) -> None:
        self.components = np.asarray(self.components, dtype=float)
        if self.components.ndim != 1 or self.components.size < 1:
            raise ValueError("components must be a non-empty 1-d vector")
        if np.any(self.components < 0.0) or np.any(self.components > 1.0):
            raise ValueError(
                f"components must lie in [0, 1], got {self.components!r}"
            )

    @property
    def dim(self) -> int:
        return self.components.size


@dataclass
class AngleTable:
    """Rotation angles phi[row][term] for one layer, each in [0, 2*pi]."""

    angles: np.ndarray

    def __post_init__(self) -> None:
        self.angles = np.asarray(self.angles, dtype=float)
        rows = self.angles.shape[0] if self.angles.ndim == 2 else 0
        if self.angles.ndim != 2 or self.angles.shape != (rows, rows) or rows < 2:
            raise ValueError(f"angles must be square, got {self.angles.shape}")
        if rows & (rows - 1):
            raise ValueError(f"table size must be a power of two, got {rows}")
        if np.any(self.angles < -1e-12) or np.any(self.angles > 2 * pi + 1e-12):
            raise ValueError("angles must lie in [0, 2*pi]")

    @property
    def num_terms(self) -> int:
        return self.angles.shape[0]

    @property
    def num_qubits(self) -> int:
        return int(np.log2(self.angles.shape[0])) + 1


def fermi_dirac(x: float) -> float:
    """x / (exp(-x) + 1); total on finite reals."""
    with np.errstate(over="ignore"):
        return float(x / (np.exp(-x) + 1.0))


def phi_angle(
    params: EvqkanParams,
    layer: int,
    row: int,
    term: int,
    x: LayerVector,
    grid: SplineGrid,
) -> float:
    """Angle for one controlled rotation.

    Only one input element feeds each angle: x[row mod dim].  The rotation
    argument (Fermi-Dirac value plus spline) is clamped to the domain of acos.
    """
    x_sel = float(x.components[row % x.dim])
    coeffs = params.coefficients[layer, row, term]
    val = fermi_dirac(x_sel) + float(coeffs @ basis_values(grid, x_sel))
    return 2.0 * acos(min(1.0, max(-1.0, val)))


def angle_table(
    params: EvqkanParams, layer: int, x: LayerVector, grid: SplineGrid
) -> AngleTable:
    """All rows and terms of phi_angle for one layer."""
    if not 0 <= layer < params.num_layers:
        raise ValueError(f"layer {layer} out of range")
    rows = 2 ** (params.num_qubits - 1)
    angles = np.empty((rows, rows))
    for j in range(rows):
        x_sel = float(x.components[j % x.dim])
        basis = basis_values(grid, x_sel)
        vals = fermi_dirac(x_sel) + params.coefficients[layer, j] @ basis
        angles[j] = 2.0 * np.arccos(np.clip(vals, -1.0, 1.0))
    return AngleTable(angles)


def build_block_unitary(table: AngleTable, term: int) -> DenseOperator:
    """Block-diagonal unitary with block j = Ry(phi[j][term]) on qubit 0.

    Block index j is the pattern of the control qubits 1..n-1 (qubit 1 as bit
    0 of j); with qubit 0 least-significant the blocks are contiguous 2x2
    tiles on the diagonal.
    """
    if not 0 <= term < table.num_terms:
        raise ValueError(f"term {term} out of range")
    dim = 2 * table.num_terms
    u = np.zeros((dim, dim), dtype=complex)
    for j in range(table.num_terms):
        u[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = ry_matrix(table.angles[j, term])
    return DenseOperator(dim, u, num_terms=1)


def build_tiled_operator(table: AngleTable, transposed: bool = False) -> DenseOperator:
    """Sum of X-shifted block unitaries, built by the halving recursion.

    The recursion over k combines the lower half of the term range with the
    upper half shifted by Pauli-X on qubit k, so term p ends up multiplied by
    X on qubit i+1 for every set bit i of p.  For the 2-control case the
    result has the closed form: tile (block-row r, block-col c) = Ry(phi[c][r
    xor c]).  The declared term count is 2**(n-1).
    """
    nq = table.num_qubits
    dim = 2**nq

    def recur(k: int, base: int) -> np.ndarray:
        if k == 0:
            return build_block_unitary(table, base).entries
        lower = recur(k - 1, base)
        upper = recur(k - 1, base + 2 ** (k - 1))
        # X on qubit k acts on a matrix product from the left as the row
        # permutation i -> i xor (1 << k).
        rows = np.arange(dim) ^ (1 << k)
        return lower + upper[rows]

    a = recur(nq - 1, 0)
    if transposed:
        a = a.T.copy()
    return DenseOperator(dim, a, num_terms=table.num_terms)


def lcu_apply_gate_level(
    state: StateVector, table: AngleTable
) -> tuple[StateVector, float]:
    """Ancilla-based application of the tiled operator, post-selected.

    Appends n-1 ancillae in |0>, rotates them into the uniform superposition,
    applies each X-shifted block unitary controlled on its ancilla pattern,
    undoes the preparation, and keeps the all-zero ancilla branch.  Matches
    apply_dense(build_tiled_operator(table), renormalize=True) in state
    fidelity and success probability.
    """
    nq = table.num_qubits
    if state.num_qubits != nq:
        raise ValueError(
            f"state has {state.num_qubits} qubits, table needs {nq}"
        )
    n_anc = nq - 1
    total = nq + n_anc
    full = np.zeros(2**total, dtype=complex)
    full[: state.dim] = state.amplitudes  # ancilla bits are the high bits
    sv = StateVector(total, full)
    ancillae = tuple(range(nq, total))
    work_controls = tuple(range(1, nq))

    for q in ancillae:
        sv = apply_ry(sv, q, pi / 2.0)
    for p in range(table.num_terms):
        for j in range(table.num_terms):
            sv = apply_multi_controlled_ry(
                sv,
                work_controls + ancillae,
                j | (p << (nq - 1)),
                0,
                float(table.angles[j, p]),
            )
        for bit in range(n_anc):
            if (p >> bit) & 1:
                sv = apply_multi_controlled_x(sv, ancillae, p, bit + 1)
    for q in ancillae:
        sv = apply_ry(sv, q, -pi / 2.0)

    kept = sv.amplitudes[: state.dim]
    success = float(np.vdot(kept, kept).real)
    if success < 1e-24:
        raise DegenerateStateError(
            f"all-zero ancilla branch has probability {success:.3e}"
        )
    return StateVector(nq, kept / np.sqrt(success)), success


@lru_cache(maxsize=None)
def _single_pauli(num_qubits: int, qubit: int, label: str) -> Observable:
    factors = "".join(label if q == qubit else "I" for q in range(num_qubits))
    return observable((1.0, factors))


def layer_readout(state: StateVector, dim: int) -> LayerVector:
    """Expectation-value readout rescaled to [0, 1].

    Component 2i reads Z on qubit (2i mod n), component 2i+1 reads Y on qubit
    ((2i+1) mod n).
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    comps = np.empty(dim)
    for k in range(dim):
        label = "Z" if k % 2 == 0 else "Y"
        val = expectation(state, _single_pauli(state.num_qubits, k % state.num_qubits, label))
        comps[k] = 0.5 * (val + 1.0)
    return LayerVector(np.clip(comps, 0.0, 1.0))


def encode_initial_state(
    x: LayerVector, mode: EncodingMode, num_qubits: int
) -> StateVector:
    """Rotation encoding of the input vector.

    simple: qubit j gets Ry(acos(2 x[j mod dim] - 1)).
    fit:    qubit j gets Ry(acos(2 x[2j mod dim] - 1)) then
            Rx(acos(2 x[(2j+1) mod dim] - 1)).
    """
    state = zero_state(num_qubits)
    comp = x.components
    if mode == "simple":
        for j in range(num_qubits):
            state = apply_ry(state, j, acos(2.0 * comp[j % x.dim] - 1.0))
    elif mode == "fit":
        for j in range(num_qubits):
            state = apply_ry(state, j, acos(2.0 * comp[(2 * j) % x.dim] - 1.0))
            state = apply_rx(state, j, acos(2.0 * comp[(2 * j + 1) % x.dim] - 1.0))
    else:
        raise ValueError(f"unknown encoding mode {mode!r}")
    return state


class ForwardResult(NamedTuple):
    prediction: float
    trace: list[LayerVector]


def forward(
    params: EvqkanParams,
    x_input: LayerVector,
    task_mode: EncodingMode,
    hamiltonian: Observable,
    grid: SplineGrid,
    transposed: bool = False,
    chaining: ChainingMode = "state_passing",
) -> ForwardResult:
    """Full pass: encode, apply each tiled layer, measure the observable.

    The readout vector after each layer parameterizes the next layer's
    angles.  With state_passing the renormalized post-layer state flows into
    the next layer; with re_encode it is discarded and the readout vector is
    encoded afresh.
    """
    if grid.num_basis != params.num_basis:
        raise ValueError(
            f"grid has {grid.num_basis} basis functions, params expect "
            f"{params.num_basis}"
        )
    vec = x_input
    state = encode_initial_state(x_input, task_mode, params.num_qubits)
    trace: list[LayerVector] = []
    for layer in range(params.num_layers):
        table = angle_table(params, layer, vec, grid)
        op = build_tiled_operator(table, transposed)
        state, _ = apply_dense(state, op, renormalize=True)
        vec = layer_readout(state, x_input.dim)
        trace.append(vec)
        if chaining == "re_encode" and layer < params.num_layers - 1:
            state = encode_initial_state(vec, task_mode, params.num_qubits)
    return ForwardResult(expectation(state, hamiltonian), trace)
