"""Layout filtering: functional and efficiency constraint checks.

Aisle width is measured by the largest axis-aligned all-aisle square
containing each cell, which keeps "too narrow" and "too wide" well defined
on junctions and other non-straight aisle shapes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import ndimage

from .grid import FOUR_CONNECTED, CellKind, Coord, Layout, _neighbor_any


class ConstraintId(str, Enum):
    F1_AISLE_TOO_NARROW_AT_PICK_FACE = "F1"
    F2_AISLE_UNREACHABLE_FROM_DOOR = "F2"
    F3_STORAGE_IN_DOORWAY_OR_RESERVED = "F3"
    F4_PILLAR_BLOCKS_AISLE = "F4"
    E1_AISLE_TOO_WIDE = "E1"
    E2_TWO_SIDED_STORE_UNDER_TWO_ROWS = "E2"
    E3_SINGLE_ITEM_BLOCK_STORE = "E3"


@dataclass(frozen=True)
class Violation:
    constraint: ConstraintId
    message: str
    cells: tuple[Coord, ...]


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[Violation, ...]

    @property
    def constraint_ids(self) -> set[ConstraintId]:
        return {v.constraint for v in self.violations}


def _merge(*reports: ValidationReport) -> ValidationReport:
    violations = tuple(v for r in reports for v in r.violations)
    return ValidationReport(valid=not violations, violations=violations)


def _coords(mask: np.ndarray) -> tuple[Coord, ...]:
    return tuple(map(tuple, np.argwhere(mask).tolist()))


def _square_widths(open_mask: np.ndarray) -> np.ndarray:
    """Per cell, the side of the largest all-open square containing it."""
    h, w = open_mask.shape
    out = np.zeros((h, w), dtype=np.int32)
    ii = np.zeros((h + 1, w + 1), dtype=np.int64)
    ii[1:, 1:] = open_mask.astype(np.int64).cumsum(0).cumsum(1)
    k = 1
    while k <= min(h, w):
        # ok[i, j]: the k x k window with top-left (i, j) is all open
        sums = ii[k:, k:] - ii[:-k, k:] - ii[k:, :-k] + ii[:-k, :-k]
        ok = sums == k * k
        if not ok.any():
            break
        placed = np.zeros((h, w), dtype=np.uint8)
        placed[: h - k + 1, : w - k + 1] = ok
        # a cell is covered if some window top-left within the k-1 cells
        # up/left of it is all open
        covered = ndimage.maximum_filter(
            placed, size=k, mode="constant", cval=0, origin=(k - 1) // 2
        )
        out[covered.astype(bool)] = k
        k += 1
    return out


def clear_width_map(layout: Layout) -> np.ndarray:
    """Largest inscribed all-aisle square per aisle cell (0 elsewhere)."""
    return _square_widths(layout.aisle_mask())


def _traversable_components(layout: Layout) -> tuple[np.ndarray, int]:
    traversable = layout.aisle_mask() | (layout.cells == CellKind.DOOR)
    return ndimage.label(traversable, structure=FOUR_CONNECTED)


def check_functional(layout: Layout, cw: np.ndarray | None = None) -> ValidationReport:
    """F1-F4: pick-face aisle width, door reachability, forbidden storage,
    pillar obstruction."""
    spec = layout.spec
    cells = layout.cells
    violations: list[Violation] = []

    aisle = layout.aisle_mask()
    pick = cells == CellKind.PICK_FACE

    # F1 / F4: aisle cells serving pick faces must admit an aisle_width
    # square. Narrowing attributable to a pillar (the square fits once the
    # pillar is treated as open) is reported as F4, the rest as F1.
    if cw is None:
        cw = _square_widths(aisle)
    serving = aisle & _neighbor_any(pick)
    narrow = serving & (cw < spec.aisle_width)
    if narrow.any():
        cw_no_pillars = _square_widths(aisle | (cells == CellKind.PILLAR))
        pillar_caused = narrow & (cw_no_pillars >= spec.aisle_width)
        plain_narrow = narrow & ~pillar_caused
        if plain_narrow.any():
            violations.append(
                Violation(
                    ConstraintId.F1_AISLE_TOO_NARROW_AT_PICK_FACE,
                    f"aisle serving pick faces is narrower than "
                    f"{spec.aisle_width} cells",
                    _coords(plain_narrow),
                )
            )
        if pillar_caused.any():
            violations.append(
                Violation(
                    ConstraintId.F4_PILLAR_BLOCKS_AISLE,
                    "pillar narrows an aisle below the required width",
                    _coords(pillar_caused),
                )
            )

    # F2: every aisle cell reachable from every door (doors traversable).
    if aisle.any():
        labels, _ = _traversable_components(layout)
        aisle_labels = set(np.unique(labels[aisle]).tolist())
        door_cells = sorted(spec.door_connections)
        door_labels = {labels[r, c] for r, c in door_cells}
        if len(aisle_labels) > 1 or (door_cells and door_labels != aisle_labels):
            good = aisle_labels.pop() if len(aisle_labels) == 1 else None
            bad = aisle & ~(labels == good) if good is not None else aisle
            offending = _coords(bad)
            if not offending:
                offending = tuple(
                    (r, c) for r, c in door_cells if labels[r, c] != good
                )
            violations.append(
                Violation(
                    ConstraintId.F2_AISLE_UNREACHABLE_FROM_DOOR,
                    "some aisles are not reachable from every door",
                    offending,
                )
            )

    # F3: no storage on doorway or reserved coordinates.
    storage = layout.storage_mask()
    forbidden = np.zeros_like(storage)
    for r, c in spec.door_connections | spec.reserved:
        forbidden[r, c] = True
    misplaced = storage & forbidden
    if misplaced.any():
        violations.append(
            Violation(
                ConstraintId.F3_STORAGE_IN_DOORWAY_OR_RESERVED,
                "storage placed on a doorway or reserved cell",
                _coords(misplaced),
            )
        )

    return ValidationReport(valid=not violations, violations=tuple(violations))


def check_efficiency(layout: Layout, cw: np.ndarray | None = None) -> ValidationReport:
    """E1-E3: no over-wide aisles, two-sided depth, no single-item stores."""
    spec = layout.spec
    violations: list[Violation] = []

    if cw is None:
        cw = clear_width_map(layout)
    too_wide = cw > spec.aisle_width
    if too_wide.any():
        violations.append(
            Violation(
                ConstraintId.E1_AISLE_TOO_WIDE,
                f"aisle wider than the required {spec.aisle_width} cells",
                _coords(too_wide),
            )
        )

    shallow: list[Coord] = []
    tiny: list[Coord] = []
    for store in layout.block_stores:
        r0, c0, r1, c1 = store.bounding_box
        if {"N", "S"} <= store.access_sides and r1 - r0 + 1 < 2:
            shallow.extend(sorted(store.cells))
        elif {"E", "W"} <= store.access_sides and c1 - c0 + 1 < 2:
            shallow.extend(sorted(store.cells))
        if store.size < 2:
            tiny.extend(sorted(store.cells))
    if shallow:
        violations.append(
            Violation(
                ConstraintId.E2_TWO_SIDED_STORE_UNDER_TWO_ROWS,
                "two-sided block store is only one row deep",
                tuple(shallow),
            )
        )
    if tiny:
        violations.append(
            Violation(
                ConstraintId.E3_SINGLE_ITEM_BLOCK_STORE,
                "block store holds a single item",
                tuple(tiny),
            )
        )

    return ValidationReport(valid=not violations, violations=tuple(violations))


def validate(layout: Layout) -> ValidationReport:
    """Full report over all functional and efficiency constraints."""
    cw = clear_width_map(layout)
    return _merge(check_functional(layout, cw), check_efficiency(layout, cw))


def is_valid(layout: Layout) -> bool:
    """Early-exit equivalent of validate().valid, without building reports.

    The search evaluates thousands of candidates per level and only needs
    the boolean, so the expensive parts (violation coordinates, pillar
    attribution of narrow aisles) are skipped here.
    """
    spec = layout.spec
    cells = layout.cells
    storage = layout.storage_mask()

    # F3: storage on doorway or reserved coordinates.
    for r, c in spec.door_connections | spec.reserved:
        if storage[r, c]:
            return False

    # E2 / E3: two-sided one-row stores, single-item stores.
    for store in layout.block_stores:
        if store.size < 2:
            return False
        r0, c0, r1, c1 = store.bounding_box
        if {"N", "S"} <= store.access_sides and r1 - r0 + 1 < 2:
            return False
        if {"E", "W"} <= store.access_sides and c1 - c0 + 1 < 2:
            return False

    aisle = layout.aisle_mask()
    cw = _square_widths(aisle)

    # E1: any aisle cell wider than required.
    if (cw > spec.aisle_width).any():
        return False

    # F1 / F4: a narrow aisle cell serving a pick face is invalid whether
    # or not a pillar caused it, so no attribution pass is needed.
    pick = cells == CellKind.PICK_FACE
    if (aisle & _neighbor_any(pick) & (cw < spec.aisle_width)).any():
        return False

    # F2: all aisles in one traversable component containing every door.
    if aisle.any():
        labels, _ = _traversable_components(layout)
        aisle_labels = set(np.unique(labels[aisle]).tolist())
        door_cells = sorted(spec.door_connections)
        door_labels = {labels[r, c] for r, c in door_cells}
        if len(aisle_labels) > 1 or (door_cells and door_labels != aisle_labels):
            return False
    return True
