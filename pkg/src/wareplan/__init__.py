"""Warehouse layout synthesis: constrained beam search over carved aisle
grids, multi-objective scoring, and Pareto-front exploration."""

from .constraints import (
    ConstraintId,
    ValidationReport,
    Violation,
    check_efficiency,
    check_functional,
    clear_width_map,
    is_valid,
    validate,
)
from .errors import (
    DegenerateSpace,
    DimensionMismatch,
    InvariantViolation,
    JobCancelled,
    MaskConflict,
    NodeLimitExceeded,
    NoPickFaces,
    OffsetOutOfRange,
    ParseError,
    UnknownRefinerId,
    WareplanError,
)
from .grid import (
    BlockStore,
    CarveAction,
    CellKind,
    Layout,
    Orientation,
    SpaceSpec,
    canonical_hash,
    carve,
    derive_pick_faces,
    enumerate_children,
    extract_block_stores,
    initial_layout,
    layout_from_cells,
    replay,
    space_orientation,
)
from .refine import Refiner, RefinerKind, apply_refiners
from .scoring import (
    ConnectivityReport,
    ScoreBreakdown,
    ScoringParams,
    accessibility_penalty,
    compute_breakdown,
    connectivity,
    orientation_counts,
    score,
    sweep_grid,
)
from .search import (
    ParetoSet,
    SearchConfig,
    SearchResult,
    SearchStats,
    exhaustive,
    generate,
    pareto_front,
    pareto_sweep,
)

__version__ = "0.1.0"
