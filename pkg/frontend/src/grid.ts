/** LayoutFile grid characters and client-side recounting. */

import type { CandidateEntry } from './types';

export type CellChar = 'W' | 'D' | 'P' | 'R' | '.' | 'S' | 'F';

export const CELL_NAMES: Record<CellChar, string> = {
    W: 'wall',
    D: 'door connection',
    P: 'pillar',
    R: 'reserved',
    '.': 'aisle',
    S: 'storage',
    F: 'pick face',
};

/**
 * One color per grid character; the single place the palette lives.
 * Walls/doors/aisles/storage/pick faces carry the legend roles, pillar
 * and reserved get their own distinct colors.
 */
export const CELL_COLORS: Record<CellChar, string> = {
    W: '#37474f',
    D: '#2e7d32',
    P: '#6d4c41',
    R: '#f9a825',
    '.': '#eceff1',
    S: '#1565c0',
    F: '#e53935',
};

export interface GridCounts {
    nStorage: number;
    nPickFaces: number;
}

/**
 * Recount N_s and N_pf from the rendered grid alone. Pick faces are
 * storage cells, so they count toward both.
 */
export function recount(grid: string[]): GridCounts {
    let nStorage = 0;
    let nPickFaces = 0;
    for (const row of grid) {
        for (const ch of row) {
            if (ch === 'F') {
                nStorage += 1;
                nPickFaces += 1;
            } else if (ch === 'S') {
                nStorage += 1;
            } else if (!(ch in CELL_NAMES)) {
                throw new Error(`unknown grid character ${JSON.stringify(ch)}`);
            }
        }
    }
    return { nStorage, nPickFaces };
}

export function assertRectangular(grid: string[]): void {
    if (grid.length === 0) {
        throw new Error('empty grid');
    }
    const width = grid[0].length;
    for (const row of grid) {
        if (row.length !== width) {
            throw new Error('ragged grid rows');
        }
    }
}

/** Counts recomputed from a candidate's grid, for cross-checks against score.n_s/n_pf. */
export function recountCandidate(candidate: CandidateEntry): GridCounts {
    assertRectangular(candidate.grid);
    return recount(candidate.grid);
}
