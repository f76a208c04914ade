"""
CLI commands, one module per experiment kind.

Each module exposes run(ctx) -> List[ArtifactTable].
"""

from typing import Callable, Dict, List

from app.artifacts import ArtifactTable
from app.commands import axioms, double_seq, error_table, limits, prox, sweep, trajectory, yosida
from app.commands.common import ExperimentContext, build_context
from app.core.config import ExperimentKind

CommandFn = Callable[[ExperimentContext], List[ArtifactTable]]

COMMANDS: Dict[ExperimentKind, CommandFn] = {
    ExperimentKind.AXIOMS: axioms.run,
    ExperimentKind.PROX: prox.run,
    ExperimentKind.SWEEP: sweep.run,
    ExperimentKind.YOSIDA: yosida.run,
    ExperimentKind.LIMITS: limits.run,
    ExperimentKind.ERROR_TABLE: error_table.run,
    ExperimentKind.TRAJECTORY: trajectory.run,
    ExperimentKind.DOUBLE_SEQ: double_seq.run,
}

__all__ = ['COMMANDS', 'CommandFn', 'ExperimentContext', 'build_context']
