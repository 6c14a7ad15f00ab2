"""Post-refinement: site-specific pass/fail filters over final candidates.

Refiners never mutate layouts; they only partition candidates into passed
and rejected, attributing each rejection to the first failing refiner.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping

import numpy as np
from scipy import ndimage

from .constraints import _traversable_components
from .errors import UnknownRefinerId
from .grid import CellKind, Layout
from .search import SearchResult


class RefinerKind(str, Enum):
    EVEN_RACKING_UNITS = "even_racking_units"
    PILLAR_ACCESS = "pillar_access"
    EXTERNAL = "external"


@dataclass(frozen=True)
class Refiner:
    id: str
    kind: RefinerKind
    config: Mapping[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Refiner":
        try:
            kind = RefinerKind(data["kind"])
        except (KeyError, ValueError) as exc:
            raise UnknownRefinerId(
                f"unknown refiner kind in pipeline entry {data!r}"
            ) from exc
        return cls(id=str(data.get("id", kind.value)), kind=kind,
                   config=dict(data.get("config", {})))


def _even_racking_ok(layout: Layout) -> bool:
    return all(store.omega % 2 == 0 for store in layout.block_stores)


def _pillar_access_ok(layout: Layout, pillar_coords) -> bool:
    cells = layout.cells
    h, w = cells.shape
    labels, _ = _traversable_components(layout)
    door_labels = {
        labels[r, c] for r, c in sorted(layout.spec.door_connections)
    }
    for r, c in pillar_coords:
        ok = False
        for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            nr, nc = r + dr, c + dc
            if not (0 <= nr < h and 0 <= nc < w):
                continue
            if cells[nr, nc] != CellKind.AISLE:
                continue
            if all(labels[nr, nc] == dl for dl in door_labels):
                ok = True
                break
        if not ok:
            return False
    return True


def _passes(candidate: SearchResult, refiner: Refiner) -> bool:
    layout = candidate.optimal
    if refiner.kind == RefinerKind.EVEN_RACKING_UNITS:
        return _even_racking_ok(layout)
    if refiner.kind == RefinerKind.PILLAR_ACCESS:
        pillars = [tuple(p) for p in refiner.config.get("pillars", [])]
        return _pillar_access_ok(layout, pillars)
    if refiner.kind == RefinerKind.EXTERNAL:
        results = refiner.config.get("results", {})
        # an unevaluated candidate has not fulfilled the criterion
        return bool(results.get(layout.digest, False))
    raise UnknownRefinerId(f"unknown refiner kind {refiner.kind!r}")


def apply_refiners(
    candidates: list[SearchResult], pipeline: list[Refiner]
) -> tuple[list[SearchResult], list[tuple[SearchResult, str]]]:
    """Partition candidates; each rejection names the first failing refiner."""
    ids = [r.id for r in pipeline]
    if len(set(ids)) != len(ids):
        raise UnknownRefinerId(f"duplicate refiner ids in pipeline: {ids}")
    passed: list[SearchResult] = []
    rejected: list[tuple[SearchResult, str]] = []
    for candidate in candidates:
        for refiner in pipeline:
            if not _passes(candidate, refiner):
                rejected.append((candidate, refiner.id))
                break
        else:
            passed.append(candidate)
    return passed, rejected
