/** Space editor brush logic: painting mask cells with live invariants. */

import type { Coord, SpaceFile } from './types';

export type Brush = 'wall' | 'door' | 'pillar' | 'reserved' | 'erase';

const MASK_KEYS = ['walls', 'door_connections', 'pillars', 'reserved'] as const;
type MaskKey = (typeof MASK_KEYS)[number];

const BRUSH_KEY: Record<Exclude<Brush, 'erase'>, MaskKey> = {
    wall: 'walls',
    door: 'door_connections',
    pillar: 'pillars',
    reserved: 'reserved',
};

function sameCell(a: Coord, b: Coord): boolean {
    return a[0] === b[0] && a[1] === b[1];
}

function without(coords: Coord[], cell: Coord): Coord[] {
    return coords.filter((c) => !sameCell(c, cell));
}

function sortCoords(coords: Coord[]): Coord[] {
    return [...coords].sort((a, b) => a[0] - b[0] || a[1] - b[1]);
}

export function clampCell(space: SpaceFile, row: number, col: number): Coord {
    return [
        Math.min(Math.max(Math.trunc(row), 0), space.height - 1),
        Math.min(Math.max(Math.trunc(col), 0), space.width - 1),
    ];
}

/**
 * Apply one brush stroke. Masks stay disjoint: painting over another mask
 * clears that cell from it first, so the submitted space can never hit the
 * server's conflicting-mask rejection. Erase clears the cell everywhere.
 * Out-of-range clicks are clamped to the boundary cell.
 */
export function paint(space: SpaceFile, brush: Brush, row: number, col: number): SpaceFile {
    const cell = clampCell(space, row, col);
    const next: SpaceFile = { ...space };
    for (const key of MASK_KEYS) {
        next[key] = without(space[key], cell);
    }
    if (brush !== 'erase') {
        const key = BRUSH_KEY[brush];
        next[key] = sortCoords([...next[key], cell]);
    }
    return next;
}

export function maskAt(space: SpaceFile, row: number, col: number): Brush | null {
    const cell: Coord = [row, col];
    if (space.walls.some((c) => sameCell(c, cell))) return 'wall';
    if (space.door_connections.some((c) => sameCell(c, cell))) return 'door';
    if (space.pillars.some((c) => sameCell(c, cell))) return 'pillar';
    if (space.reserved.some((c) => sameCell(c, cell))) return 'reserved';
    return null;
}

/** Coordinate pairs appearing in more than one mask (should always be empty). */
export function maskConflicts(space: SpaceFile): Coord[] {
    const seen = new Map<string, Coord>();
    const conflicts: Coord[] = [];
    for (const key of MASK_KEYS) {
        for (const cell of space[key]) {
            const id = `${cell[0]},${cell[1]}`;
            if (seen.has(id)) {
                conflicts.push(cell);
            } else {
                seen.set(id, cell);
            }
        }
    }
    return conflicts;
}
