"""Statevector simulation and variational training for tiled sum-operator
quantum Kolmogorov-Arnold networks, with a QNN baseline and an experiment
harness."""

__version__ = "0.1.0"

from .ansatz import (
    AngleTable,
    EvqkanParams,
    ForwardResult,
    LayerVector,
    angle_table,
    build_block_unitary,
    build_tiled_operator,
    encode_initial_state,
    fermi_dirac,
    forward,
    layer_readout,
    lcu_apply_gate_level,
    phi_angle,
)
from .harness import (
    ExperimentConfig,
    RunRecord,
    SummaryStats,
    layer_sweep,
    run_experiment,
    summarize,
)
from .optimizer import OptimizerConfig, Trajectory, minimize
from .qnn import QnnParams, qnn_forward
from .qsim import (
    DegenerateStateError,
    DenseOperator,
    Observable,
    PauliString,
    StateVector,
    apply_dense,
    apply_multi_controlled_ry,
    apply_multi_controlled_x,
    apply_rx,
    apply_ry,
    expectation,
    fidelity,
    observable,
    zero_state,
)
from .reports import emit_reports, emit_sweep_reports, regenerate_reports
from .spline import SplineGrid, basis_values, spline_sum
from .tasks import (
    Dataset,
    TaskSpec,
    boundary_f,
    build_dataset,
    classify_label,
    evaluate_test,
    loss,
    normalize_targets,
    target_eq7,
    target_extra,
)
