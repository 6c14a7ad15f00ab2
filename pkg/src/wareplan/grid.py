"""Grid data model: space specs, layouts, block stores, and carve moves.

Coordinates are (row, col), zero-based, row 0 at the top. All layout
operations are pure: a layout is immutable once built and every move
returns a new layout.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from functools import cached_property
from typing import Iterable

import numpy as np
from scipy import ndimage

from .errors import DegenerateSpace, InvariantViolation, OffsetOutOfRange

Coord = tuple[int, int]

# 4-connectivity structuring element shared by every flood-fill style pass.
FOUR_CONNECTED = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


class CellKind(IntEnum):
    WALL = 0
    DOOR = 1
    PILLAR = 2
    RESERVED = 3
    STORAGE = 4
    AISLE = 5
    PICK_FACE = 6


class Orientation(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    SQUARE = "square"


def _as_coord_set(coords: Iterable[Coord]) -> frozenset[Coord]:
    return frozenset((int(r), int(c)) for r, c in coords)


@dataclass(frozen=True)
class SpaceSpec:
    """Immutable description of the physical space to lay out."""

    width: int
    height: int
    aisle_width: int = 1
    walls: frozenset[Coord] = frozenset()
    door_connections: frozenset[Coord] = frozenset()
    pillars: frozenset[Coord] = frozenset()
    reserved: frozenset[Coord] = frozenset()

    def __post_init__(self):
        for name in ("walls", "door_connections", "pillars", "reserved"):
            object.__setattr__(self, name, _as_coord_set(getattr(self, name)))
        self._validate()

    def _validate(self) -> None:
        if self.width < 1 or self.height < 1:
            raise InvariantViolation("space dimensions must be positive")
        if self.aisle_width < 1:
            raise InvariantViolation("aisle_width must be >= 1")
        masks = {
            "walls": self.walls,
            "door_connections": self.door_connections,
            "pillars": self.pillars,
            "reserved": self.reserved,
        }
        for name, cells in masks.items():
            for r, c in cells:
                if not (0 <= r < self.height and 0 <= c < self.width):
                    raise InvariantViolation(
                        f"{name} coordinate ({r}, {c}) out of bounds"
                    )
        names = list(masks)
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                overlap = masks[a] & masks[b]
                if overlap:
                    cell = next(iter(overlap))
                    raise InvariantViolation(
                        f"masks {a} and {b} overlap at {cell}"
                    )
        blocked = self.walls | self.pillars | self.reserved | self.door_connections
        for r, c in self.door_connections:
            on_boundary = r in (0, self.height - 1) or c in (0, self.width - 1)
            beside_wall = any(
                (r + dr, c + dc) in self.walls
                for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1))
            )
            if not (on_boundary or beside_wall):
                raise InvariantViolation(
                    f"door connection ({r}, {c}) is not on the boundary or walls"
                )
            has_open_neighbor = any(
                0 <= r + dr < self.height
                and 0 <= c + dc < self.width
                and (r + dr, c + dc) not in blocked
                for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1))
            )
            if not has_open_neighbor:
                raise InvariantViolation(
                    f"door connection ({r}, {c}) has no adjacent open cell"
                )
        if self.total_open_area <= 0:
            raise InvariantViolation("space has no open area")

    @cached_property
    def total_open_area(self) -> int:
        """Cells that are not wall, pillar, or reserved (doors count as open)."""
        return (
            self.width * self.height
            - len(self.walls)
            - len(self.pillars)
            - len(self.reserved)
        )

    @cached_property
    def base_cells(self) -> np.ndarray:
        """Grid with the fixed masks painted and every storable cell Storage."""
        cells = np.full((self.height, self.width), CellKind.STORAGE, dtype=np.uint8)
        for mask, kind in (
            (self.walls, CellKind.WALL),
            (self.door_connections, CellKind.DOOR),
            (self.pillars, CellKind.PILLAR),
            (self.reserved, CellKind.RESERVED),
        ):
            for r, c in mask:
                cells[r, c] = kind
        cells.flags.writeable = False
        return cells

    @cached_property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.height}x{self.width}:{self.aisle_width}".encode())
        h.update(self.base_cells.tobytes())
        return h.hexdigest()


def space_orientation(spec: SpaceSpec) -> Orientation:
    if spec.width > spec.height:
        return Orientation.HORIZONTAL
    if spec.height > spec.width:
        return Orientation.VERTICAL
    return Orientation.SQUARE


@dataclass(frozen=True)
class CarveAction:
    """One move of the search: turn a full-span strip of a block store into aisle.

    ``offset`` positions the strip along the axis perpendicular to the carve:
    row offset from the bounding-box top for horizontal strips, column offset
    from the left for vertical strips.
    """

    block_store_id: int
    orientation: Orientation
    offset: int


@dataclass(frozen=True, eq=False)
class BlockStore:
    """A maximal 4-connected group of storage cells.

    Cell coordinates are kept as a compact (n, 2) array; the ``cells``
    frozenset is materialized lazily since most stores the search touches
    are only ever counted, never enumerated.
    """

    coords: np.ndarray
    bounding_box: tuple[int, int, int, int]  # (min_row, min_col, max_row, max_col)
    omega: int
    lane_depths: tuple[int, ...]
    orientation: Orientation
    access_sides: frozenset[str]

    @property
    def size(self) -> int:
        return int(self.coords.shape[0])

    @property
    def cells(self) -> frozenset[Coord]:
        cached = self.__dict__.get("_cells")
        if cached is None:
            cached = frozenset(
                zip(self.coords[:, 0].tolist(), self.coords[:, 1].tolist())
            )
            object.__setattr__(self, "_cells", cached)
        return cached

    @property
    def max_depth(self) -> int:
        return max(self.lane_depths) if self.lane_depths else 1

    @property
    def two_sided(self) -> bool:
        return (
            {"N", "S"} <= self.access_sides or {"E", "W"} <= self.access_sides
        )


@dataclass(frozen=True, eq=False)
class Layout:
    """One node in the search tree: a categorized grid plus carve lineage."""

    spec: SpaceSpec
    cells: np.ndarray
    carve_history: tuple[CarveAction, ...]
    n_storage: int
    n_pick_faces: int

    @cached_property
    def digest(self) -> str:
        return canonical_hash(self)

    @cached_property
    def block_stores(self) -> tuple[BlockStore, ...]:
        return extract_block_stores(self)

    def storage_mask(self) -> np.ndarray:
        return (self.cells == CellKind.STORAGE) | (self.cells == CellKind.PICK_FACE)

    def aisle_mask(self) -> np.ndarray:
        return self.cells == CellKind.AISLE


def canonical_hash(layout: Layout) -> str:
    """Stable digest of the cell grid only; lineage does not contribute."""
    h = hashlib.sha256()
    h.update(f"{layout.cells.shape[0]}x{layout.cells.shape[1]}".encode())
    h.update(layout.cells.tobytes())
    return h.hexdigest()


def _neighbor_any(mask: np.ndarray) -> np.ndarray:
    """Cells with at least one 4-neighbor set in ``mask``."""
    adj = np.zeros_like(mask)
    adj[1:, :] |= mask[:-1, :]
    adj[:-1, :] |= mask[1:, :]
    adj[:, 1:] |= mask[:, :-1]
    adj[:, :-1] |= mask[:, 1:]
    return adj


def _derive_cells(cells: np.ndarray) -> np.ndarray:
    """Relabel storage cells: aisle-adjacent ones become pick faces."""
    out = cells.copy()
    storage = (out == CellKind.STORAGE) | (out == CellKind.PICK_FACE)
    beside_aisle = _neighbor_any(out == CellKind.AISLE)
    out[storage] = CellKind.STORAGE
    out[storage & beside_aisle] = CellKind.PICK_FACE
    return out


def _finalize(
    spec: SpaceSpec, cells: np.ndarray, history: tuple[CarveAction, ...]
) -> Layout:
    cells = _derive_cells(cells)
    cells.flags.writeable = False
    storage = int(((cells == CellKind.STORAGE) | (cells == CellKind.PICK_FACE)).sum())
    pick = int((cells == CellKind.PICK_FACE).sum())
    return Layout(
        spec=spec,
        cells=cells,
        carve_history=history,
        n_storage=storage,
        n_pick_faces=pick,
    )


def initial_layout(spec: SpaceSpec) -> Layout:
    """The fully packed starting layout: every storable cell is storage."""
    cells = spec.base_cells.copy()
    if not (cells == CellKind.STORAGE).any():
        raise DegenerateSpace("space has no storable cells")
    return _finalize(spec, cells, ())


def derive_pick_faces(layout: Layout) -> Layout:
    """Recompute pick-face labels from aisle adjacency (idempotent)."""
    return _finalize(layout.spec, layout.cells.copy(), layout.carve_history)


_SIDES = ("N", "S", "E", "W")


def _annotate_store(
    coords: np.ndarray, aisle: np.ndarray, height: int, width: int
) -> BlockStore:
    rows = coords[:, 0]
    cols = coords[:, 1]
    r0, c0, r1, c1 = int(rows.min()), int(cols.min()), int(rows.max()), int(cols.max())
    bbox_h = r1 - r0 + 1
    bbox_w = c1 - c0 + 1

    if bbox_w > bbox_h:
        orientation = Orientation.HORIZONTAL
    elif bbox_h > bbox_w:
        orientation = Orientation.VERTICAL
    else:
        orientation = Orientation.SQUARE

    up = rows > 0
    down = rows < height - 1
    left = cols > 0
    right = cols < width - 1
    access_sides = set()
    if aisle[rows[up] - 1, cols[up]].any():
        access_sides.add("N")
    if aisle[rows[down] + 1, cols[down]].any():
        access_sides.add("S")
    if aisle[rows[right], cols[right] + 1].any():
        access_sides.add("E")
    if aisle[rows[left], cols[left] - 1].any():
        access_sides.add("W")

    # Lane bookkeeping: lanes run perpendicular to the access face. An end
    # cell of a lane is "open" on a side when the aisle sits directly beyond
    # it. Depth is measured from the lane's nearest open end to its deepest
    # cell; a lane open at both ends bottoms out in the middle.
    rel_c = cols - c0
    col_count = np.bincount(rel_c, minlength=bbox_w)
    col_rmin = np.full(bbox_w, height, dtype=np.int64)
    np.minimum.at(col_rmin, rel_c, rows)
    col_rmax = np.full(bbox_w, -1, dtype=np.int64)
    np.maximum.at(col_rmax, rel_c, rows)
    abs_c = np.arange(c0, c1 + 1)
    open_n = (col_rmin > 0) & aisle[np.clip(col_rmin - 1, 0, height - 1), abs_c]
    open_s = (col_rmax < height - 1) & aisle[
        np.clip(col_rmax + 1, 0, height - 1), abs_c
    ]

    rel_r = rows - r0
    row_count = np.bincount(rel_r, minlength=bbox_h)
    row_cmin = np.full(bbox_h, width, dtype=np.int64)
    np.minimum.at(row_cmin, rel_r, cols)
    row_cmax = np.full(bbox_h, -1, dtype=np.int64)
    np.maximum.at(row_cmax, rel_r, cols)
    abs_r = np.arange(r0, r1 + 1)
    open_w = (row_cmin > 0) & aisle[abs_r, np.clip(row_cmin - 1, 0, width - 1)]
    open_e = (row_cmax < width - 1) & aisle[
        abs_r, np.clip(row_cmax + 1, 0, width - 1)
    ]

    lane_counts = {
        "N": int(open_n.sum()),
        "S": int(open_s.sum()),
        "E": int(open_e.sum()),
        "W": int(open_w.sum()),
    }
    best_side = max(_SIDES, key=lambda s: lane_counts[s])
    if lane_counts[best_side] == 0:
        # No usable access yet: fall back to the bounding-box reading.
        omega = max(bbox_h, bbox_w)
        depth = min(bbox_h, bbox_w)
        return BlockStore(
            coords=coords,
            bounding_box=(r0, c0, r1, c1),
            omega=omega,
            lane_depths=tuple([depth] * omega),
            orientation=orientation,
            access_sides=frozenset(access_sides),
        )

    omega = lane_counts[best_side]
    if best_side in ("N", "S"):
        counts = col_count
        near, far = (open_n, open_s) if best_side == "N" else (open_s, open_n)
    else:
        counts = row_count
        near, far = (open_e, open_w) if best_side == "E" else (open_w, open_e)
    depth_arr = np.where(near & far, (counts + 1) // 2, counts)
    depths = [int(d) for d in depth_arr]
    return BlockStore(
        coords=coords,
        bounding_box=(r0, c0, r1, c1),
        omega=omega,
        lane_depths=tuple(depths),
        orientation=orientation,
        access_sides=frozenset(access_sides),
    )


# Identical stores with identical aisle surroundings recur across the many
# sibling layouts of a search level; annotating each once is a large win.
# Sibling layouts are processed back to back, so locality matters more
# than cache size.
_annotation_cache: dict[bytes, BlockStore] = {}
_ANNOTATION_CACHE_LIMIT = 20_000


def extract_block_stores(layout: Layout) -> tuple[BlockStore, ...]:
    """Partition storage cells into maximal 4-connected components.

    Components come out in row-major order of their first (minimum) cell,
    which is the raster order scipy's labeler discovers them in.
    """
    storage = layout.storage_mask()
    labels, count = ndimage.label(storage, structure=FOUR_CONNECTED)
    if count == 0:
        return ()
    aisle = layout.aisle_mask()
    height, width = layout.cells.shape
    stores = []
    for idx in range(1, count + 1):
        coords = np.argwhere(labels == idx)
        r0, c0 = coords.min(axis=0)
        r1, c1 = coords.max(axis=0)
        ring = aisle[
            max(r0 - 1, 0) : r1 + 2, max(c0 - 1, 0) : c1 + 2
        ]
        key = hashlib.blake2b(
            coords.tobytes() + b"|" + np.ascontiguousarray(ring).tobytes(),
            digest_size=16,
        ).digest()
        store = _annotation_cache.get(key)
        if store is None:
            store = _annotate_store(coords, aisle, height, width)
            if len(_annotation_cache) >= _ANNOTATION_CACHE_LIMIT:
                _annotation_cache.clear()
            _annotation_cache[key] = store
        stores.append(store)
    return tuple(stores)


def _strip_bounds(
    store: BlockStore, orientation: Orientation, offset: int, aisle_width: int
) -> tuple[int, int, int, int]:
    """Row/col window of the strip; raises if the offset does not fit."""
    r0, c0, r1, c1 = store.bounding_box
    if orientation == Orientation.HORIZONTAL:
        extent = r1 - r0 + 1
        if not 0 <= offset <= extent - aisle_width:
            raise OffsetOutOfRange(
                f"horizontal offset {offset} outside [0, {extent - aisle_width}]"
            )
        return (r0 + offset, c0, r0 + offset + aisle_width - 1, c1)
    if orientation == Orientation.VERTICAL:
        extent = c1 - c0 + 1
        if not 0 <= offset <= extent - aisle_width:
            raise OffsetOutOfRange(
                f"vertical offset {offset} outside [0, {extent - aisle_width}]"
            )
        return (r0, c0 + offset, r1, c0 + offset + aisle_width - 1)
    raise InvariantViolation("carve orientation must be horizontal or vertical")


def carve(layout: Layout, action: CarveAction) -> Layout:
    """Carve a full-span aisle strip out of one block store.

    The strip spans the store's whole bounding box along the carve axis and
    converts only cells that belong to the store; masks inside the box (e.g.
    pillars) are untouched and any legality question is left to the validator.
    """
    stores = layout.block_stores
    if not 0 <= action.block_store_id < len(stores):
        raise OffsetOutOfRange(
            f"block store id {action.block_store_id} out of range"
        )
    store = stores[action.block_store_id]
    sr0, sc0, sr1, sc1 = _strip_bounds(
        store, action.orientation, action.offset, layout.spec.aisle_width
    )
    cells = layout.cells.copy()
    rows = store.coords[:, 0]
    cols = store.coords[:, 1]
    hit = (rows >= sr0) & (rows <= sr1) & (cols >= sc0) & (cols <= sc1)
    cells[rows[hit], cols[hit]] = CellKind.AISLE
    return _finalize(layout.spec, cells, layout.carve_history + (action,))


def enumerate_children(layout: Layout) -> list[Layout]:
    """All unique one-carve children, in canonical order.

    Order is block stores row-major, horizontal strips before vertical,
    offsets ascending; duplicates (by grid digest) keep the first. A strip
    is only generated when the store spans at least ``aisle_width`` cells
    along the carve axis too, otherwise the carved cells could never form
    a corridor of the required width.
    """
    aw = layout.spec.aisle_width
    children: list[Layout] = []
    seen: set[str] = set()
    for store_id, store in enumerate(layout.block_stores):
        r0, c0, r1, c1 = store.bounding_box
        bbox_h = r1 - r0 + 1
        bbox_w = c1 - c0 + 1
        for orientation, perp, span in (
            (Orientation.HORIZONTAL, bbox_h, bbox_w),
            (Orientation.VERTICAL, bbox_w, bbox_h),
        ):
            if span < aw:
                continue
            for offset in range(perp - aw + 1):
                child = carve(
                    layout, CarveAction(store_id, orientation, offset)
                )
                if child.digest in seen:
                    continue
                seen.add(child.digest)
                children.append(child)
    return children


def replay(spec: SpaceSpec, history: Iterable[CarveAction]) -> Layout:
    """Rebuild a layout by reapplying its carve lineage from the full grid."""
    layout = initial_layout(spec)
    for action in history:
        layout = carve(layout, action)
    return layout


def layout_from_cells(
    spec: SpaceSpec,
    cells: np.ndarray,
    history: tuple[CarveAction, ...] = (),
) -> Layout:
    """Build a layout directly from a cell grid (imports, fixtures)."""
    if cells.shape != (spec.height, spec.width):
        raise InvariantViolation(
            f"grid shape {cells.shape} does not match space "
            f"{spec.height}x{spec.width}"
        )
    return _finalize(spec, np.asarray(cells, dtype=np.uint8).copy(), history)
