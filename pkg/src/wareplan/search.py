"""Beam search over carve actions, the alpha-theta sweep, and Pareto
front extraction.

Level 1 expands every unique child of the full layout, valid or not, to
promote diversity. Deeper levels keep only valid children; a node's
children stay in contention only while their best score is at least the
node's own, and the pooled survivors are truncated to the beam width.
"""

from __future__ import annotations

import os
import time
from collections import deque
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field, replace
from typing import Callable

from .constraints import is_valid
from .errors import JobCancelled, NodeLimitExceeded
from .grid import Layout, SpaceSpec, enumerate_children, initial_layout, space_orientation
from .scoring import (
    ConnectivityReport,
    ScoreBreakdown,
    ScoringParams,
    accessibility_penalty,
    compute_breakdown,
    connectivity,
    orientation_counts,
    sweep_grid,
)


@dataclass(frozen=True)
class SearchConfig:
    beam_size: int = 1
    max_depth: int | None = None
    dedupe: bool = True
    record_path: bool = False

    def __post_init__(self):
        if self.beam_size < 1:
            raise ValueError("beam_size must be >= 1")


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    children_generated: int = 0
    children_valid: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class SearchResult:
    optimal: Layout
    breakdown: ScoreBreakdown
    connectivity: ConnectivityReport | None
    params: ScoringParams
    stats: SearchStats
    path: tuple[Layout, ...] | None = None

    @property
    def n_storage(self) -> int:
        return self.optimal.n_storage

    @property
    def n_pick_faces(self) -> int:
        return self.optimal.n_pick_faces


@dataclass(frozen=True)
class ParetoSet:
    candidates: tuple[SearchResult, ...]
    front: tuple[SearchResult, ...]


@dataclass(frozen=True)
class _Metrics:
    """Param-independent facts about a layout, cacheable across runs."""

    valid: bool
    n_s: int
    n_pf: int
    p_a: float
    opposite_stores: int
    total_stores: int


# Validity and structural metrics do not depend on the scoring weights, so
# one per-process cache serves every (alpha, theta) run of a sweep worker.
_metrics_cache: dict[str, _Metrics] = {}
_METRICS_CACHE_LIMIT = 400_000


def _metrics(layout: Layout) -> _Metrics:
    cached = _metrics_cache.get(layout.digest)
    if cached is not None:
        return cached
    stores = layout.block_stores
    opposite, total = orientation_counts(stores, space_orientation(layout.spec))
    m = _Metrics(
        valid=is_valid(layout),
        n_s=layout.n_storage,
        n_pf=layout.n_pick_faces,
        p_a=accessibility_penalty(stores),
        opposite_stores=opposite,
        total_stores=total,
    )
    if len(_metrics_cache) >= _METRICS_CACHE_LIMIT:
        _metrics_cache.clear()
    _metrics_cache[layout.digest] = m
    return m


def _score_from_metrics(m: _Metrics, open_area: int, params: ScoringParams) -> ScoreBreakdown:
    return compute_breakdown(
        n_s=m.n_s,
        n_pf=m.n_pf,
        open_area=open_area,
        p_a=m.p_a,
        opposite_stores=m.opposite_stores,
        total_stores=m.total_stores,
        params=params,
    )


def _connectivity_or_none(layout: Layout) -> ConnectivityReport | None:
    if layout.n_pick_faces == 0:
        return None
    return connectivity(layout)


def generate(
    spec: SpaceSpec,
    params: ScoringParams,
    config: SearchConfig = SearchConfig(),
) -> SearchResult:
    """Beam search for the best-scoring valid layout under one parameter set."""
    started = time.perf_counter()
    open_area = spec.total_open_area
    stats = SearchStats()
    root = initial_layout(spec)

    def layout_score(layout: Layout) -> float:
        return _score_from_metrics(_metrics(layout), open_area, params).score

    best = root
    best_score = layout_score(root)
    path: list[Layout] = []

    # Level 1: every unique child of the full layout enters the frontier,
    # valid or not; only valid ones are scored for the optimum.
    frontier: list[tuple[Layout, float]] = []
    stats.nodes_expanded += 1
    level_one = enumerate_children(root)
    stats.children_generated += len(level_one)
    for child in level_one:
        m = _metrics(child)
        s = _score_from_metrics(m, open_area, params).score
        if m.valid:
            stats.children_valid += 1
            if s > best_score:
                best, best_score = child, s
        frontier.append((child, s))
    if config.record_path and frontier:
        path.append(max(frontier, key=lambda t: (t[1], t[0].digest))[0])

    level = 1
    while frontier:
        if config.max_depth is not None and level >= config.max_depth:
            break
        level += 1
        pool: list[tuple[Layout, float]] = []
        seen: set[str] = set()
        for node, node_score in frontier:
            children = enumerate_children(node)
            stats.nodes_expanded += 1
            stats.children_generated += len(children)
            scored: list[tuple[Layout, float]] = []
            for child in children:
                m = _metrics(child)
                if not m.valid:
                    continue
                s = _score_from_metrics(m, open_area, params).score
                scored.append((child, s))
                stats.children_valid += 1
                if s > best_score:
                    best, best_score = child, s
            if not scored:
                continue
            if max(s for _, s in scored) >= node_score:
                for child, s in scored:
                    if config.dedupe:
                        if child.digest in seen:
                            continue
                        seen.add(child.digest)
                    pool.append((child, s))
        pool.sort(key=lambda t: (-t[1], t[0].digest))
        frontier = pool[: config.beam_size]
        if config.record_path and frontier:
            path.append(frontier[0][0])

    stats.wall_time = time.perf_counter() - started
    breakdown = _score_from_metrics(_metrics(best), open_area, params)
    return SearchResult(
        optimal=best,
        breakdown=breakdown,
        connectivity=_connectivity_or_none(best),
        params=params,
        stats=stats,
        path=tuple(path) if config.record_path else None,
    )


def exhaustive(
    spec: SpaceSpec, params: ScoringParams, node_limit: int = 100_000
) -> SearchResult:
    """Full carve-tree enumeration with dedup; the test oracle for generate."""
    started = time.perf_counter()
    open_area = spec.total_open_area
    stats = SearchStats()
    root = initial_layout(spec)

    best = root
    best_score = _score_from_metrics(_metrics(root), open_area, params).score

    seen = {root.digest}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        stats.nodes_expanded += 1
        children = enumerate_children(node)
        stats.children_generated += len(children)
        for child in children:
            if child.digest in seen:
                continue
            seen.add(child.digest)
            if len(seen) > node_limit:
                raise NodeLimitExceeded(
                    f"exhaustive enumeration exceeded {node_limit} nodes"
                )
            m = _metrics(child)
            if m.valid:
                stats.children_valid += 1
                s = _score_from_metrics(m, open_area, params).score
                if s > best_score:
                    best, best_score = child, s
            queue.append(child)

    stats.wall_time = time.perf_counter() - started
    breakdown = _score_from_metrics(_metrics(best), open_area, params)
    return SearchResult(
        optimal=best,
        breakdown=breakdown,
        connectivity=_connectivity_or_none(best),
        params=params,
        stats=stats,
    )


def pareto_front(candidates: list[SearchResult]) -> list[SearchResult]:
    """Maximal candidates under dominance on (n_pick_faces, n_storage).

    Duplicate points keep the candidate with the higher connectivity score,
    then the lower layout digest. Output is sorted by pick-face count.
    """
    def conn_score(r: SearchResult) -> float:
        return r.connectivity.score if r.connectivity is not None else -1.0

    reps: dict[tuple[int, int], SearchResult] = {}
    for cand in candidates:
        point = (cand.n_pick_faces, cand.n_storage)
        cur = reps.get(point)
        if cur is None:
            reps[point] = cand
            continue
        if (-conn_score(cand), cand.optimal.digest) < (
            -conn_score(cur),
            cur.optimal.digest,
        ):
            reps[point] = cand

    def dominated(point: tuple[int, int]) -> bool:
        return any(
            other[0] >= point[0]
            and other[1] >= point[1]
            and other != point
            for other in reps
        )

    front = [reps[p] for p in reps if not dominated(p)]
    front.sort(key=lambda r: (r.n_pick_faces, r.n_storage))
    return front


def _sweep_worker(args: tuple[SpaceSpec, float, float, SearchConfig]) -> SearchResult:
    spec, alpha, theta, config = args
    return generate(spec, ScoringParams(alpha=alpha, theta=theta), config)


def pareto_sweep(
    spec: SpaceSpec,
    config: SearchConfig = SearchConfig(),
    jobs: int | None = None,
    progress: Callable[[int, int], None] | None = None,
    cancel: Callable[[], bool] | None = None,
) -> ParetoSet:
    """Run generate for every (alpha, theta) of the sweep grid.

    Runs are independent and may execute on ``jobs`` worker processes;
    results are ordered by sweep index regardless of completion order.
    """
    pairs = sweep_grid()
    total = len(pairs)
    if jobs is None:
        jobs = os.cpu_count() or 1
    tasks = [(spec, alpha, theta, config) for alpha, theta in pairs]

    results: list[SearchResult | None] = [None] * total
    done = 0
    if jobs <= 1:
        for idx, task in enumerate(tasks):
            if cancel is not None and cancel():
                raise JobCancelled("sweep cancelled")
            results[idx] = _sweep_worker(task)
            done += 1
            if progress is not None:
                progress(done, total)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_sweep_worker, task): idx for idx, task in enumerate(tasks)}
            pending = set(futures)
            try:
                while pending:
                    if cancel is not None and cancel():
                        for fut in pending:
                            fut.cancel()
                        raise JobCancelled("sweep cancelled")
                    finished, pending = wait(pending, timeout=0.2, return_when=FIRST_COMPLETED)
                    for fut in finished:
                        results[futures[fut]] = fut.result()
                        done += 1
                        if progress is not None:
                            progress(done, total)
            except JobCancelled:
                pool.shutdown(wait=False, cancel_futures=True)
                raise

    candidates = tuple(results)  # type: ignore[arg-type]
    front = tuple(pareto_front(list(candidates)))
    return ParetoSet(candidates=candidates, front=front)
