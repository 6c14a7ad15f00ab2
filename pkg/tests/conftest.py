"""Shared fixtures and independent oracles.

Oracles here deliberately avoid the library's own primitives: flood fill
and shortest paths are hand-rolled BFS, square widths are brute force.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import replace

import numpy as np
import pytest

from wareplan import CellKind, Layout, SpaceSpec, initial_layout, layout_from_cells
from wareplan.errors import InvariantViolation
from wareplan.fileio import parse_ascii

STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))


# ---------------------------------------------------------------------------
# Oracles

def flood_fill_components(mask: np.ndarray) -> list[set[tuple[int, int]]]:
    """4-connected components by plain BFS."""
    h, w = mask.shape
    seen = np.zeros_like(mask, dtype=bool)
    comps = []
    for r in range(h):
        for c in range(w):
            if not mask[r, c] or seen[r, c]:
                continue
            comp = set()
            queue = deque([(r, c)])
            seen[r, c] = True
            while queue:
                cr, cc = queue.popleft()
                comp.add((cr, cc))
                for dr, dc in STEPS:
                    nr, nc = cr + dr, cc + dc
                    if 0 <= nr < h and 0 <= nc < w and mask[nr, nc] and not seen[nr, nc]:
                        seen[nr, nc] = True
                        queue.append((nr, nc))
            comps.append(comp)
    return comps


def bfs_shortest(
    traversable: np.ndarray,
    starts: list[tuple[int, int]],
    goals: set[tuple[int, int]],
) -> int | None:
    """Shortest path length from any start to any goal, or None."""
    h, w = traversable.shape
    dist = {s: 0 for s in starts if traversable[s]}
    queue = deque(dist)
    while queue:
        cell = queue.popleft()
        if cell in goals:
            return dist[cell]
        r, c = cell
        for dr, dc in STEPS:
            nr, nc = r + dr, c + dc
            if 0 <= nr < h and 0 <= nc < w and traversable[nr, nc] and (nr, nc) not in dist:
                dist[(nr, nc)] = dist[cell] + 1
                queue.append((nr, nc))
    return None


def brute_square_widths(open_mask: np.ndarray) -> np.ndarray:
    """O(n^3) reference for the largest all-open square containing each cell."""
    h, w = open_mask.shape
    out = np.zeros((h, w), dtype=int)
    for top in range(h):
        for left in range(w):
            for k in range(1, min(h - top, w - left) + 1):
                block = open_mask[top:top + k, left:left + k]
                if not block.all():
                    break
                sub = out[top:top + k, left:left + k]
                np.maximum(sub, k, out=sub)
    return out


# ---------------------------------------------------------------------------
# Random inputs

def random_space(rng: random.Random, max_size: int = 8) -> SpaceSpec:
    """A small randomized space honoring every SpaceSpec invariant."""
    while True:
        w = rng.randint(4, max_size)
        h = rng.randint(4, max_size)
        aisle_width = rng.randint(1, 2)
        cells = [(r, c) for r in range(h) for c in range(w)]
        n_walls = rng.randint(0, (w * h) // 3)
        walls = set(rng.sample(cells, n_walls))
        boundary = [
            (r, c)
            for r, c in cells
            if (r in (0, h - 1) or c in (0, w - 1)) and (r, c) not in walls
        ]
        if not boundary:
            continue
        doors = {rng.choice(boundary)}
        open_cells = [p for p in cells if p not in walls and p not in doors]
        pillars = set(rng.sample(open_cells, rng.randint(0, 2))) if open_cells else set()
        rest = [p for p in open_cells if p not in pillars]
        reserved = set(rng.sample(rest, rng.randint(0, 2))) if rest else set()
        try:
            return SpaceSpec(
                width=w, height=h, aisle_width=aisle_width,
                walls=walls, door_connections=doors,
                pillars=pillars, reserved=reserved,
            )
        except InvariantViolation:
            continue


def tree_size_within(spec: SpaceSpec, cap: int) -> bool:
    """True when the full deduplicated carve tree has at most cap nodes."""
    from collections import deque as _deque

    from wareplan import enumerate_children

    root = initial_layout(spec)
    seen = {root.digest}
    queue = _deque([root])
    while queue:
        node = queue.popleft()
        for child in enumerate_children(node):
            if child.digest in seen:
                continue
            seen.add(child.digest)
            if len(seen) > cap:
                return False
            queue.append(child)
    return True


def bounded_space(rng: random.Random, max_size: int = 8, cap: int = 20_000) -> SpaceSpec:
    """A random space whose carve tree is small enough to enumerate fully."""
    while True:
        spec = random_space(rng, max_size=max_size)
        if tree_size_within(spec, cap):
            return spec


def random_layout(rng: random.Random, max_size: int = 10) -> Layout:
    """A layout with arbitrary aisle carvings (not necessarily valid)."""
    from wareplan import carve, enumerate_children

    spec = random_space(rng, max_size=max_size)
    layout = initial_layout(spec)
    for _ in range(rng.randint(0, 4)):
        children = enumerate_children(layout)
        if not children:
            break
        layout = rng.choice(children)
    return layout


# ---------------------------------------------------------------------------
# The "ring" validity fixture family

def ring_ascii(block_w: int, block_h: int) -> str:
    """A valid warehouse: ring corridor (width 2) around a storage block,
    plus a two-cell pocket store in the south wall band. aisle_width = 2."""
    assert block_w >= 2 and block_h >= 4
    width = 6 + block_w
    height = 7 + block_h
    rows = []
    rows.append("W" * width)
    rows.append("W" + "." * (width - 2) + "W")
    rows.append("W" + "." * (width - 2) + "W")
    for _ in range(block_h):
        rows.append("W" + ".." + "S" * block_w + ".." + "W")
    rows.append("W" + "." * (width - 2) + "W")
    rows.append("W" + "." * (width - 2) + "W")
    rows.append("WWW" + "SS" + "W" * (width - 5))
    rows.append("W" * width)
    # west door beside the left corridor
    rows[3] = "D" + rows[3][1:]
    rows[4] = "D" + rows[4][1:]
    return "\n".join(rows)


def ring_layout(block_w: int, block_h: int) -> Layout:
    return parse_ascii(ring_ascii(block_w, block_h), aisle_width=2)


def with_cells(layout: Layout, changes: dict[tuple[int, int], str]) -> Layout:
    """Rebuild a layout's full grid with some cells replaced by grid chars."""
    from wareplan.fileio import CHAR_BY_KIND, render_ascii, parse_ascii

    rows = [list(line) for line in render_ascii(layout).splitlines()]
    for (r, c), ch in changes.items():
        rows[r][c] = ch
    return parse_ascii("\n".join("".join(row) for row in rows),
                       aisle_width=layout.spec.aisle_width)


def with_extra_reserved(layout: Layout, coord: tuple[int, int]) -> Layout:
    """Same grid, but the spec newly reserves one of its storage cells."""
    spec = replace(layout.spec, reserved=layout.spec.reserved | {coord})
    return layout_from_cells(spec, layout.cells.copy())


RING_SIZES = [(2, 4), (3, 4), (4, 4), (5, 4), (6, 4),
              (2, 6), (3, 6), (4, 6), (5, 6), (6, 6)]


@pytest.fixture(params=RING_SIZES, ids=lambda s: f"ring{s[0]}x{s[1]}")
def ring(request) -> Layout:
    bw, bh = request.param
    return ring_layout(bw, bh)
