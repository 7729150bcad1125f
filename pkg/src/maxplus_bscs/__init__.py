"""Max-plus algebra toolkit for battery swapping station cycle-time analysis."""

from . import tropical
from .bscs import (
    Deterministic,
    Exponential,
    SimTrace,
    StationParams,
    Uniform,
    default_station,
    matrix_process,
    mean_cycle_time_exact,
    scalar_vs_matrix_equivalence,
    simulate_recurrence,
)
from .dynamics import (
    BlockTriangularSpec,
    GrowthTrace,
    LyapunovEstimate,
    MatrixProcess,
    lyapunov_block_diagonal,
    lyapunov_block_triangular,
    lyapunov_estimate,
    product_norm_trace,
    sandwich_bounds,
    stream,
)
from .network import (
    AllocationPlan,
    NetworkStation,
    allocate_bruteforce,
    allocate_heuristic,
    income_rate,
    threshold,
)

__all__ = [
    "AllocationPlan",
    "BlockTriangularSpec",
    "Deterministic",
    "Exponential",
    "GrowthTrace",
    "LyapunovEstimate",
    "MatrixProcess",
    "NetworkStation",
    "SimTrace",
    "StationParams",
    "Uniform",
    "allocate_bruteforce",
    "allocate_heuristic",
    "default_station",
    "income_rate",
    "lyapunov_block_diagonal",
    "lyapunov_block_triangular",
    "lyapunov_estimate",
    "matrix_process",
    "mean_cycle_time_exact",
    "product_norm_trace",
    "sandwich_bounds",
    "scalar_vs_matrix_equivalence",
    "simulate_recurrence",
    "stream",
    "threshold",
    "tropical",
]
