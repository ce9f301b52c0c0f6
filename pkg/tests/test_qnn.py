"""Baseline circuit against a dense 16x16 gate-product oracle."""
import numpy as np
import pytest

from evqkan.ansatz import LayerVector
from evqkan.qnn import QnnParams, qnn_forward
from evqkan.qsim import observable

import oracles

ZZII = observable((1.0, "ZZII"))


def oracle_value(thetas, x, ham_factors="ZZII"):
    """Build the full circuit unitary from kron matrices and evaluate <H>."""
    n = 4
    dim = 2**n
    u = np.eye(dim, dtype=complex)
    num_layers = len(thetas) // 8
    for layer in range(num_layers):
        base = 8 * layer
        for k in range(n):
            u = oracles.op_on_qubit(oracles.ry(thetas[base + k]), k, n) @ u
        for c in range(n - 1):
            u = oracles.cnot(c, c + 1, n) @ u
        for k in range(n):
            angle = np.arccos(2 * x[k % len(x)] - 1)
            u = oracles.op_on_qubit(oracles.rx(angle), k, n) @ u
        for k in range(n):
            u = oracles.op_on_qubit(oracles.ry(thetas[base + 4 + k]), k, n) @ u
        for c in range(n - 1):
            u = oracles.cnot(c, c + 1, n) @ u
    psi = u[:, 0]
    ham = oracles.pauli_matrix(ham_factors)
    return float(np.real(psi.conj() @ ham @ psi))


def test_zero_thetas_half_inputs():
    params = QnnParams(np.zeros(8))
    x = LayerVector(np.full(4, 0.5))
    got = qnn_forward(params, x, ZZII)
    assert abs(got - oracle_value(params.thetas, x.components)) < 1e-12
    assert abs(got) < 1e-12


def test_zero_thetas_unit_inputs():
    params = QnnParams(np.zeros(8))
    got = qnn_forward(params, LayerVector(np.ones(4)), ZZII)
    assert abs(got - 1.0) < 1e-12


def test_matches_dense_oracle():
    rng = np.random.default_rng(40)
    for _ in range(40):
        params = QnnParams.random(3, rng)
        x = rng.uniform(size=4)
        got = qnn_forward(params, LayerVector(x), ZZII)
        assert abs(got - oracle_value(params.thetas, x)) < 1e-12


def test_two_dim_inputs_recycle():
    rng = np.random.default_rng(41)
    params = QnnParams.random(3, rng)
    x = rng.uniform(size=2)
    got = qnn_forward(params, LayerVector(x), ZZII)
    assert abs(got - oracle_value(params.thetas, x)) < 1e-12


def test_output_bounded():
    rng = np.random.default_rng(42)
    for _ in range(50):
        params = QnnParams.random(3, rng)
        got = qnn_forward(params, LayerVector(rng.uniform(size=4)), ZZII)
        assert -1.0 - 1e-12 <= got <= 1.0 + 1e-12


def test_two_pi_periodic_in_each_theta():
    rng = np.random.default_rng(43)
    params = QnnParams.random(3, rng)
    x = LayerVector(rng.uniform(size=4))
    base = qnn_forward(params, x, ZZII)
    for idx in (0, 7, 13, 23):
        shifted = params.thetas.copy()
        shifted[idx] += 2 * np.pi
        assert abs(qnn_forward(QnnParams(shifted), x, ZZII) - base) < 1e-12


def test_default_parameter_count():
    rng = np.random.default_rng(44)
    params = QnnParams.random(3, rng)
    assert params.thetas.size == 24
    assert params.num_layers == 3


def test_random_init_range_and_seeding():
    a = QnnParams.random(3, np.random.default_rng(7)).thetas
    b = QnnParams.random(3, np.random.default_rng(7)).thetas
    np.testing.assert_array_equal(a, b)
    assert np.all(a >= 0.0) and np.all(a < 2 * np.pi)


def test_rejects_bad_shapes():
    with pytest.raises(ValueError):
        QnnParams(np.zeros(10))
    with pytest.raises(ValueError):
        qnn_forward(
            QnnParams(np.zeros(8)),
            LayerVector(np.full(4, 0.5)),
            observable((1.0, "ZZI")),
        )
