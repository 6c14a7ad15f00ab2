/** Pareto scatter geometry: points, front polyline, dominance deltas. */

import type { CandidateEntry, CompareEntry, CompareReport, ParetoFile } from './types';

export interface ScatterPoint {
    /** Index into ParetoFile.candidates. */
    index: number;
    /** Horizontal axis: pick-face count. */
    x: number;
    /** Vertical axis: storage count. */
    y: number;
    onFront: boolean;
    rejected: boolean;
    candidate: CandidateEntry;
}

export function scatterPoints(pareto: ParetoFile): ScatterPoint[] {
    return pareto.candidates.map((candidate, index) => ({
        index,
        x: candidate.score.n_pf,
        y: candidate.score.n_s,
        onFront: candidate.on_front,
        rejected: candidate.rejected_by != null,
        candidate,
    }));
}

/**
 * Front polyline vertices, sorted by pick-face count ascending. The engine
 * owns front membership; the client only orders it for drawing.
 */
export function frontPolyline(pareto: ParetoFile): ScatterPoint[] {
    const points = scatterPoints(pareto);
    return pareto.front
        .map((index) => points[index])
        .sort((a, b) => a.x - b.x);
}

/** Downward-sloping check: N_s strictly decreasing as N_pf increases. */
export function isMonotoneFront(polyline: ScatterPoint[]): boolean {
    for (let i = 1; i < polyline.length; i++) {
        if (polyline[i].x <= polyline[i - 1].x) return false;
        if (polyline[i].y >= polyline[i - 1].y) return false;
    }
    return true;
}

function dominates(a: { x: number; y: number }, b: { x: number; y: number }): boolean {
    return a.x >= b.x && a.y >= b.y && (a.x > b.x || a.y > b.y);
}

/**
 * Independent O(n^2) dominance check. Returns the unique non-dominated
 * (N_pf, N_s) points; the engine picks one representative candidate per
 * point (highest connectivity), so membership is a point-level property.
 */
export function dominanceFront(points: ScatterPoint[]): Array<{ x: number; y: number }> {
    const unique = new Map<string, { x: number; y: number }>();
    for (const p of points) {
        unique.set(`${p.x},${p.y}`, { x: p.x, y: p.y });
    }
    const front: Array<{ x: number; y: number }> = [];
    for (const p of unique.values()) {
        let beaten = false;
        for (const q of unique.values()) {
            if (dominates(q, p)) {
                beaten = true;
                break;
            }
        }
        if (!beaten) front.push(p);
    }
    return front;
}

/**
 * Dominance deltas of the front against an imported manual layout,
 * matching the engine's compare report entry for entry.
 */
export function compareManual(
    manual: { n_s: number; n_pf: number },
    pareto: ParetoFile,
): CompareReport {
    const entries: CompareEntry[] = [];
    let dominated = false;
    for (const index of pareto.front) {
        const candidate = pareto.candidates[index];
        const dNs = candidate.score.n_s - manual.n_s;
        const dNpf = candidate.score.n_pf - manual.n_pf;
        const dom = dNs >= 0 && dNpf >= 0 && (dNs > 0 || dNpf > 0);
        dominated = dominated || dom;
        entries.push({
            alpha: candidate.params.alpha,
            theta: candidate.params.theta,
            n_s: candidate.score.n_s,
            n_pf: candidate.score.n_pf,
            delta_n_s: dNs,
            delta_n_pf: dNpf,
            dominates_manual: dom,
        });
    }
    return { manual: { ...manual }, dominated, front: entries };
}
