"""Layout scoring: weighted capacity/pick-face/orientation score, the
accessibility penalty, the standalone connectivity score, and the
alpha-theta sweep grid."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvariantViolation, NoPickFaces
from .grid import BlockStore, CellKind, Layout, Orientation, space_orientation

C1_DEFAULT = 0.01
C2_DEFAULT = 0.1


@dataclass(frozen=True)
class ScoringParams:
    """Weights of the score terms. beta is always derived from alpha."""

    alpha: float
    theta: float
    c1: float = C1_DEFAULT
    c2: float = C2_DEFAULT

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise InvariantViolation("alpha must be in (0, 1]")
        if self.theta < 0:
            raise InvariantViolation("theta must be >= 0")

    @property
    def beta(self) -> float:
        return min(0.1, 1.0 - self.alpha)


@dataclass(frozen=True)
class ScoreBreakdown:
    t_s: float
    t_pf: float
    t_o: float
    p_a: float
    n_s: int
    n_pf: int
    score: float


@dataclass(frozen=True)
class PairDistance:
    i: int
    j: int
    shortest: int | None
    manhattan: int
    ratio: float


@dataclass(frozen=True)
class ConnectivityReport:
    score: float
    pair_count: int
    disconnected_pairs: int = 0
    per_pair: tuple[PairDistance, ...] | None = None


def accessibility_penalty(block_stores: Iterable[BlockStore]) -> float:
    """Sum over stores of omega * (deepest lane - 1)^2."""
    return float(
        sum(store.omega * (store.max_depth - 1) ** 2 for store in block_stores)
    )


def orientation_counts(
    block_stores: Sequence[BlockStore], space_orient: Orientation
) -> tuple[int, int]:
    """(stores oriented opposite to the space, total stores)."""
    opposite = {
        Orientation.HORIZONTAL: Orientation.VERTICAL,
        Orientation.VERTICAL: Orientation.HORIZONTAL,
    }.get(space_orient)
    total = len(block_stores)
    if opposite is None or total == 0:
        return (0, total)
    return (sum(1 for s in block_stores if s.orientation == opposite), total)


def compute_breakdown(
    n_s: int,
    n_pf: int,
    open_area: int,
    p_a: float,
    opposite_stores: int,
    total_stores: int,
    params: ScoringParams,
) -> ScoreBreakdown:
    """Score from precomputed layout metrics (shared by search caching)."""
    t_s = (n_s - params.c2 * params.theta * p_a) / open_area
    t_pf = n_pf / n_s if n_s > 0 else 0.0
    t_o = opposite_stores / total_stores if total_stores > 0 else 0.0
    value = params.alpha * t_s + params.beta * t_pf + params.c1 * t_o
    return ScoreBreakdown(
        t_s=t_s, t_pf=t_pf, t_o=t_o, p_a=p_a, n_s=n_s, n_pf=n_pf, score=value
    )


def score(layout: Layout, params: ScoringParams) -> ScoreBreakdown:
    """Evaluate the weighted score of a layout."""
    stores = layout.block_stores
    opposite, total = orientation_counts(stores, space_orientation(layout.spec))
    return compute_breakdown(
        n_s=layout.n_storage,
        n_pf=layout.n_pick_faces,
        open_area=layout.spec.total_open_area,
        p_a=accessibility_penalty(stores),
        opposite_stores=opposite,
        total_stores=total,
        params=params,
    )


_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def _bfs_distances(traversable: np.ndarray, sources: list[tuple[int, int]]) -> np.ndarray:
    """Grid BFS distance map from a set of source cells (-1 unreachable)."""
    h, w = traversable.shape
    dist = np.full((h, w), -1, dtype=np.int32)
    queue = deque()
    for r, c in sources:
        if dist[r, c] == -1:
            dist[r, c] = 0
            queue.append((r, c))
    while queue:
        r, c = queue.popleft()
        d = dist[r, c] + 1
        for dr, dc in _STEPS:
            nr, nc = r + dr, c + dc
            if 0 <= nr < h and 0 <= nc < w and traversable[nr, nc] and dist[nr, nc] == -1:
                dist[nr, nc] = d
                queue.append((nr, nc))
    return dist


def connectivity(layout: Layout, include_pairs: bool = False) -> ConnectivityReport:
    """Mean over pick-face pairs of Manhattan / shortest-path distance.

    Pick faces are entered through an adjacent aisle cell, so each endpoint
    adds one step to the in-aisle path. Pairs with no connecting route
    contribute zero and are counted as disconnected.
    """
    if layout.n_pick_faces == 0:
        raise NoPickFaces("layout has no pick faces")
    cells = layout.cells
    h, w = cells.shape
    traversable = layout.aisle_mask() | (cells == CellKind.DOOR)
    faces = [(int(r), int(c)) for r, c in np.argwhere(cells == CellKind.PICK_FACE)]

    entries: list[list[tuple[int, int]]] = []
    for r, c in faces:
        pts = [
            (r + dr, c + dc)
            for dr, dc in _STEPS
            if 0 <= r + dr < h and 0 <= c + dc < w and cells[r + dr, c + dc] == CellKind.AISLE
        ]
        entries.append(pts)

    n = len(faces)
    if n < 2:
        return ConnectivityReport(score=1.0, pair_count=0, per_pair=() if include_pairs else None)

    dist_maps = [_bfs_distances(traversable, entries[i]) for i in range(n)]

    total = 0.0
    pair_count = 0
    disconnected = 0
    per_pair: list[PairDistance] = []
    for i in range(n):
        di = dist_maps[i]
        for j in range(i + 1, n):
            manhattan = abs(faces[i][0] - faces[j][0]) + abs(faces[i][1] - faces[j][1])
            best = min((di[r, c] for r, c in entries[j] if di[r, c] >= 0), default=-1)
            pair_count += 1
            if best < 0:
                disconnected += 1
                ratio = 0.0
                shortest = None
            else:
                shortest = int(best) + 2  # one step into the aisle on each end
                ratio = manhattan / shortest
                total += ratio
            if include_pairs:
                per_pair.append(PairDistance(i, j, shortest, manhattan, ratio))
    return ConnectivityReport(
        score=total / pair_count,
        pair_count=pair_count,
        disconnected_pairs=disconnected,
        per_pair=tuple(per_pair) if include_pairs else None,
    )


def sweep_grid() -> list[tuple[float, float]]:
    """The (alpha, theta) combinations of a full sweep, in deterministic order.

    theta runs over 0.1, 0.2, ... up to alpha / 2; when that range is empty
    (alpha = 0.1) the single value alpha / 2 is used instead.
    """
    pairs: list[tuple[float, float]] = []
    for ai in range(1, 11):
        alpha = ai / 10
        thetas = [ti / 10 for ti in range(1, ai // 2 + 1)]
        if not thetas:
            thetas = [alpha / 2]
        pairs.extend((alpha, theta) for theta in thetas)
    return pairs
