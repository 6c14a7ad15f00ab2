"""Plain-text file formats, ASCII rendering, layout import, and comparison.

All files are JSON written in a canonical form (sorted keys, fixed
indentation) so that identical objects always serialize to identical bytes.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

import numpy as np

from .errors import DimensionMismatch, MaskConflict, ParseError
from .grid import (
    CarveAction,
    CellKind,
    Coord,
    Layout,
    Orientation,
    SpaceSpec,
    layout_from_cells,
)
from .constraints import ValidationReport
from .scoring import ConnectivityReport, ScoreBreakdown, ScoringParams
from .search import ParetoSet, SearchResult, SearchStats

log = logging.getLogger(__name__)

FORMAT_VERSION = 1

CHAR_BY_KIND = {
    CellKind.WALL: "W",
    CellKind.DOOR: "D",
    CellKind.PILLAR: "P",
    CellKind.RESERVED: "R",
    CellKind.AISLE: ".",
    CellKind.STORAGE: "S",
    CellKind.PICK_FACE: "F",
}
KIND_BY_CHAR = {v: k for k, v in CHAR_BY_KIND.items()}


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _coord_list(coords) -> list[list[int]]:
    return [[r, c] for r, c in sorted(coords)]


# ---------------------------------------------------------------------------
# Space files

def space_to_dict(spec: SpaceSpec) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "width": spec.width,
        "height": spec.height,
        "aisle_width": spec.aisle_width,
        "walls": _coord_list(spec.walls),
        "door_connections": _coord_list(spec.door_connections),
        "pillars": _coord_list(spec.pillars),
        "reserved": _coord_list(spec.reserved),
    }


def space_from_dict(data: dict) -> SpaceSpec:
    try:
        return SpaceSpec(
            width=int(data["width"]),
            height=int(data["height"]),
            aisle_width=int(data.get("aisle_width", 1)),
            walls=[tuple(p) for p in data.get("walls", [])],
            door_connections=[tuple(p) for p in data.get("door_connections", [])],
            pillars=[tuple(p) for p in data.get("pillars", [])],
            reserved=[tuple(p) for p in data.get("reserved", [])],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed space file: {exc}") from exc


def save_space(spec: SpaceSpec, path) -> None:
    Path(path).write_text(canonical_json(space_to_dict(spec)))


def load_space_file(path) -> tuple[SpaceSpec, dict]:
    """Parsed spec plus the raw dict (sweep overrides, refiner pipeline)."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return space_from_dict(data), data


def load_space(path) -> SpaceSpec:
    return load_space_file(path)[0]


# ---------------------------------------------------------------------------
# ASCII grids

def render_ascii(layout: Layout) -> str:
    """Lossless character rendering, one row per line."""
    rows = []
    for r in range(layout.cells.shape[0]):
        rows.append(
            "".join(CHAR_BY_KIND[CellKind(k)] for k in layout.cells[r])
        )
    return "\n".join(rows)


def _grid_from_rows(rows: list[str]) -> np.ndarray:
    if not rows:
        raise ParseError("empty grid")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ParseError("ragged grid rows")
    cells = np.zeros((len(rows), width), dtype=np.uint8)
    for r, row in enumerate(rows):
        for c, ch in enumerate(row):
            kind = KIND_BY_CHAR.get(ch)
            if kind is None:
                raise ParseError(f"unknown grid character {ch!r} at ({r}, {c})")
            cells[r, c] = kind
    return cells


def parse_ascii(text: str, aisle_width: int = 1) -> Layout:
    """Build a layout (with its own implied space) from rendered text."""
    rows = [line for line in text.strip("\n").splitlines()]
    cells = _grid_from_rows(rows)
    spec = spec_from_cells(cells, aisle_width)
    return layout_from_cells(spec, cells)


def spec_from_cells(cells: np.ndarray, aisle_width: int) -> SpaceSpec:
    """Recover the fixed-mask space implied by a full cell grid."""
    def where(kind: CellKind) -> list[Coord]:
        return [(int(r), int(c)) for r, c in np.argwhere(cells == kind)]

    return SpaceSpec(
        width=int(cells.shape[1]),
        height=int(cells.shape[0]),
        aisle_width=aisle_width,
        walls=where(CellKind.WALL),
        door_connections=where(CellKind.DOOR),
        pillars=where(CellKind.PILLAR),
        reserved=where(CellKind.RESERVED),
    )


# ---------------------------------------------------------------------------
# Layout files

def params_to_dict(params: ScoringParams) -> dict:
    return {
        "alpha": params.alpha,
        "theta": params.theta,
        "beta": params.beta,
        "c1": params.c1,
        "c2": params.c2,
    }


def breakdown_to_dict(b: ScoreBreakdown) -> dict:
    return {
        "t_s": b.t_s,
        "t_pf": b.t_pf,
        "t_o": b.t_o,
        "p_a": b.p_a,
        "n_s": b.n_s,
        "n_pf": b.n_pf,
        "score": b.score,
    }


def connectivity_to_dict(c: ConnectivityReport | None) -> dict | None:
    if c is None:
        return None
    return {
        "score": c.score,
        "pair_count": c.pair_count,
        "disconnected_pairs": c.disconnected_pairs,
    }


def validation_to_dict(report: ValidationReport) -> dict:
    return {
        "valid": report.valid,
        "violations": [
            {
                "constraint": v.constraint.value,
                "message": v.message,
                "cells": [[r, c] for r, c in v.cells],
            }
            for v in report.violations
        ],
    }


def stats_to_dict(stats: SearchStats) -> dict:
    # wall time is intentionally omitted: output files must be reproducible
    return {
        "nodes_expanded": stats.nodes_expanded,
        "children_generated": stats.children_generated,
        "children_valid": stats.children_valid,
    }


def layout_to_dict(
    layout: Layout,
    params: ScoringParams | None = None,
    breakdown: ScoreBreakdown | None = None,
    connectivity: ConnectivityReport | None = None,
    validation: ValidationReport | None = None,
    stats: SearchStats | None = None,
    imported: bool = False,
) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "space_digest": layout.spec.digest,
        "aisle_width": layout.spec.aisle_width,
        "grid": render_ascii(layout).splitlines(),
        "carve_history": [
            {
                "block_store": a.block_store_id,
                "orientation": a.orientation.value,
                "offset": a.offset,
            }
            for a in layout.carve_history
        ],
        "imported": imported,
        "params": params_to_dict(params) if params else None,
        "score": breakdown_to_dict(breakdown) if breakdown else None,
        "connectivity": connectivity_to_dict(connectivity),
        "validation": validation_to_dict(validation) if validation else None,
        "stats": stats_to_dict(stats) if stats else None,
    }


def result_to_dict(result: SearchResult) -> dict:
    from .constraints import validate

    return layout_to_dict(
        result.optimal,
        params=result.params,
        breakdown=result.breakdown,
        connectivity=result.connectivity,
        validation=validate(result.optimal),
        stats=result.stats,
    )


def save_layout(data_or_result, path) -> None:
    if isinstance(data_or_result, SearchResult):
        data = result_to_dict(data_or_result)
    elif isinstance(data_or_result, dict):
        data = data_or_result
    else:
        data = layout_to_dict(data_or_result)
    Path(path).write_text(canonical_json(data))


def _history_from_dict(entries) -> tuple[CarveAction, ...]:
    return tuple(
        CarveAction(
            block_store_id=int(e["block_store"]),
            orientation=Orientation(e["orientation"]),
            offset=int(e["offset"]),
        )
        for e in entries or ()
    )


def layout_from_dict(data: dict, spec: SpaceSpec | None = None) -> Layout:
    """Rebuild a layout; without a spec, the space is recovered from the grid."""
    try:
        cells = _grid_from_rows(list(data["grid"]))
        aisle_width = int(data.get("aisle_width", 1))
        history = _history_from_dict(data.get("carve_history"))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed layout file: {exc}") from exc
    if spec is None:
        spec = spec_from_cells(cells, aisle_width)
    return _checked_layout(spec, cells, history)


def _checked_layout(spec: SpaceSpec, cells: np.ndarray, history=()) -> Layout:
    if cells.shape != (spec.height, spec.width):
        raise DimensionMismatch(
            f"grid is {cells.shape[0]}x{cells.shape[1]}, space is "
            f"{spec.height}x{spec.width}"
        )
    fixed = {
        CellKind.WALL: spec.walls,
        CellKind.DOOR: spec.door_connections,
        CellKind.PILLAR: spec.pillars,
        CellKind.RESERVED: spec.reserved,
    }
    for kind, coords in fixed.items():
        for r, c in sorted(coords):
            if cells[r, c] != kind:
                raise MaskConflict(
                    f"cell ({r}, {c}) must stay {CHAR_BY_KIND[kind]!r}, "
                    f"got {CHAR_BY_KIND[CellKind(int(cells[r, c]))]!r}"
                )
    all_fixed = spec.walls | spec.door_connections | spec.pillars | spec.reserved
    for r, c in zip(*np.where(np.isin(cells, [CellKind.WALL, CellKind.DOOR,
                                              CellKind.PILLAR, CellKind.RESERVED]))):
        if (int(r), int(c)) not in all_fixed:
            raise MaskConflict(
                f"grid marks ({r}, {c}) as a fixed mask the space does not have"
            )
    return layout_from_cells(spec, cells, tuple(history))


def load_layout(path, spec: SpaceSpec | None = None) -> tuple[Layout, dict]:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return layout_from_dict(data, spec), data


def import_layout(path, spec: SpaceSpec) -> Layout:
    """Load a manually designed layout against a known space.

    Pick faces are recomputed from aisle adjacency; imported pick-face labels
    that disagree are logged and overridden.
    """
    try:
        data = json.loads(Path(path).read_text())
        rows = list(data["grid"])
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed layout file: {exc}") from exc
    cells = _grid_from_rows(rows)
    layout = _checked_layout(spec, cells)
    rendered = render_ascii(layout).splitlines()
    if rendered != rows:
        log.warning(
            "imported pick-face labels disagreed with aisle adjacency; "
            "labels were recomputed"
        )
    return layout


def result_from_dict(data: dict, spec: SpaceSpec | None = None) -> SearchResult:
    """Rebuild a search result from a saved run file."""
    layout = layout_from_dict(data, spec)
    try:
        p = data["params"]
        params = ScoringParams(
            alpha=p["alpha"], theta=p["theta"], c1=p["c1"], c2=p["c2"]
        )
        s = data["score"]
        breakdown = ScoreBreakdown(
            t_s=s["t_s"], t_pf=s["t_pf"], t_o=s["t_o"], p_a=s["p_a"],
            n_s=s["n_s"], n_pf=s["n_pf"], score=s["score"],
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"run file lacks params/score: {exc}") from exc
    conn = data.get("connectivity")
    connectivity = (
        ConnectivityReport(
            score=conn["score"],
            pair_count=conn["pair_count"],
            disconnected_pairs=conn.get("disconnected_pairs", 0),
        )
        if conn
        else None
    )
    st = data.get("stats") or {}
    stats = SearchStats(
        nodes_expanded=st.get("nodes_expanded", 0),
        children_generated=st.get("children_generated", 0),
        children_valid=st.get("children_valid", 0),
    )
    return SearchResult(
        optimal=layout,
        breakdown=breakdown,
        connectivity=connectivity,
        params=params,
        stats=stats,
    )


# ---------------------------------------------------------------------------
# Pareto sets

def pareto_to_dict(pareto: ParetoSet) -> dict:
    front_ids = {id(member) for member in pareto.front}
    candidates = []
    for result in pareto.candidates:
        entry = result_to_dict(result)
        entry["on_front"] = id(result) in front_ids
        candidates.append(entry)
    index_of = {id(result): i for i, result in enumerate(pareto.candidates)}
    front_indices = [index_of[id(member)] for member in pareto.front]
    space_digest = (
        pareto.candidates[0].optimal.spec.digest if pareto.candidates else None
    )
    return {
        "format_version": FORMAT_VERSION,
        "space_digest": space_digest,
        "candidates": candidates,
        "front": front_indices,
    }


def save_pareto(pareto: ParetoSet, path) -> None:
    Path(path).write_text(canonical_json(pareto_to_dict(pareto)))


def load_pareto_dict(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if "candidates" not in data:
        raise ParseError(f"{path}: not a pareto file")
    return data


# ---------------------------------------------------------------------------
# Comparison reports

def compare(manual: Layout, pareto: ParetoSet) -> dict:
    """How the manual layout fares against the sweep's Pareto front."""
    entries = []
    dominated = False
    for member in pareto.front:
        d_ns = member.n_storage - manual.n_storage
        d_npf = member.n_pick_faces - manual.n_pick_faces
        dominates = (
            d_ns >= 0 and d_npf >= 0 and (d_ns > 0 or d_npf > 0)
        )
        dominated = dominated or dominates
        entries.append(
            {
                "alpha": member.params.alpha,
                "theta": member.params.theta,
                "n_s": member.n_storage,
                "n_pf": member.n_pick_faces,
                "delta_n_s": d_ns,
                "delta_n_pf": d_npf,
                "dominates_manual": dominates,
            }
        )
    return {
        "manual": {"n_s": manual.n_storage, "n_pf": manual.n_pick_faces},
        "dominated": dominated,
        "front": entries,
    }


def compare_dicts(manual_counts: tuple[int, int], pareto_data: dict) -> dict:
    """File-level variant of compare, for the CLI working from saved output."""
    n_s, n_pf = manual_counts
    entries = []
    dominated = False
    for idx in pareto_data["front"]:
        cand = pareto_data["candidates"][idx]
        c_ns = cand["score"]["n_s"]
        c_npf = cand["score"]["n_pf"]
        d_ns = c_ns - n_s
        d_npf = c_npf - n_pf
        dominates = d_ns >= 0 and d_npf >= 0 and (d_ns > 0 or d_npf > 0)
        dominated = dominated or dominates
        entries.append(
            {
                "alpha": cand["params"]["alpha"],
                "theta": cand["params"]["theta"],
                "n_s": c_ns,
                "n_pf": c_npf,
                "delta_n_s": d_ns,
                "delta_n_pf": d_npf,
                "dominates_manual": dominates,
            }
        )
    return {
        "manual": {"n_s": n_s, "n_pf": n_pf},
        "dominated": dominated,
        "front": entries,
    }
