"""
Semigroup engine: the exponential formula, its error estimates and
trajectory diagnostics.
"""

from core.semigroup.diagnostics import (
    asymptotic_center,
    delta_convergence_check,
    fejer_flags,
    opial_margin,
    tail_radius,
    tail_window,
)
from core.semigroup.dto import (
    DeltaReport,
    DoubleSeqResult,
    DoubleSeqRow,
    ErrorRow,
    ErrorTable,
    FlowRequest,
    Trajectory,
)
from core.semigroup.generation import (
    adaptive_steps,
    cauchy_residual,
    composition_residual,
    double_seq_bound,
    double_seq_verify,
    error_bound,
    error_table,
    exp_formula,
    flow_nonexpansive_residual,
    run_flow,
    semigroup,
    semigroup_law_bound,
    semigroup_law_residual,
    trajectory,
    uniformity_scan,
)

__all__ = [
    'DeltaReport',
    'DoubleSeqResult',
    'DoubleSeqRow',
    'ErrorRow',
    'ErrorTable',
    'FlowRequest',
    'Trajectory',
    'adaptive_steps',
    'asymptotic_center',
    'cauchy_residual',
    'composition_residual',
    'delta_convergence_check',
    'double_seq_bound',
    'double_seq_verify',
    'error_bound',
    'error_table',
    'exp_formula',
    'fejer_flags',
    'flow_nonexpansive_residual',
    'opial_margin',
    'run_flow',
    'semigroup',
    'semigroup_law_bound',
    'semigroup_law_residual',
    'tail_radius',
    'tail_window',
    'trajectory',
    'uniformity_scan',
]
