/** DOM rendering: SVG scatter with the front polyline, grid, tooltips. */

import { CELL_COLORS, CELL_NAMES, type CellChar } from './grid';
import { frontPolyline, scatterPoints, type ScatterPoint } from './pareto';
import type { ManualOverlay } from './store';
import type { CandidateEntry, ParetoFile } from './types';

const SVG_NS = 'http://www.w3.org/2000/svg';
const PLOT_SIZE = 420;
const PLOT_PAD = 36;

function svgEl<K extends keyof SVGElementTagNameMap>(
    tag: K,
    attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
    const el = document.createElementNS(SVG_NS, tag);
    for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
    return el;
}

function scale(value: number, min: number, max: number, flip: boolean): number {
    const span = max - min || 1;
    const t = (value - min) / span;
    const px = PLOT_PAD + (flip ? 1 - t : t) * (PLOT_SIZE - 2 * PLOT_PAD);
    return px;
}

export function pointTooltip(point: ScatterPoint): string {
    const s = point.candidate.score;
    const p = point.candidate.params;
    const conn = point.candidate.connectivity;
    return [
        `alpha=${p.alpha} theta=${p.theta}`,
        `N_s=${s.n_s} N_pf=${s.n_pf}`,
        `T_s=${s.t_s.toFixed(4)} T_pf=${s.t_pf.toFixed(4)} T_o=${s.t_o.toFixed(4)}`,
        `score=${s.score.toFixed(4)}`,
        conn ? `connectivity=${conn.score.toFixed(4)}` : 'connectivity=n/a',
        point.candidate.rejected_by ? `rejected by ${point.candidate.rejected_by}` : '',
    ]
        .filter(Boolean)
        .join('\n');
}

export interface ScatterOptions {
    showRejected: boolean;
    manual: ManualOverlay | null;
    onSelect?: (index: number) => void;
}

export function renderScatter(
    root: HTMLElement,
    pareto: ParetoFile,
    options: ScatterOptions,
): void {
    root.replaceChildren();
    const points = scatterPoints(pareto);
    if (points.length === 0) {
        const empty = document.createElement('p');
        empty.className = 'empty-state';
        empty.textContent = 'No candidates: the sweep produced no valid layouts.';
        root.appendChild(empty);
        return;
    }

    const xs = points.map((p) => p.x).concat(options.manual ? [options.manual.nPickFaces] : []);
    const ys = points.map((p) => p.y).concat(options.manual ? [options.manual.nStorage] : []);
    const [xMin, xMax] = [Math.min(...xs), Math.max(...xs)];
    const [yMin, yMax] = [Math.min(...ys), Math.max(...ys)];

    const svg = svgEl('svg', {
        width: String(PLOT_SIZE),
        height: String(PLOT_SIZE),
        viewBox: `0 0 ${PLOT_SIZE} ${PLOT_SIZE}`,
    });

    const polyline = frontPolyline(pareto);
    if (polyline.length > 1) {
        svg.appendChild(
            svgEl('polyline', {
                points: polyline
                    .map(
                        (p) =>
                            `${scale(p.x, xMin, xMax, false)},${scale(p.y, yMin, yMax, true)}`,
                    )
                    .join(' '),
                fill: 'none',
                stroke: '#ec407a',
                'stroke-dasharray': '6 4',
                'stroke-width': '2',
            }),
        );
    }

    for (const point of points) {
        const greyed = point.rejected && options.showRejected;
        const circle = svgEl('circle', {
            cx: String(scale(point.x, xMin, xMax, false)),
            cy: String(scale(point.y, yMin, yMax, true)),
            r: point.onFront ? '6' : '4',
            fill: greyed ? '#b0bec5' : point.onFront ? '#ec407a' : '#546e7a',
            'data-index': String(point.index),
        });
        const title = svgEl('title', {});
        title.textContent = pointTooltip(point);
        circle.appendChild(title);
        circle.addEventListener('click', () => options.onSelect?.(point.index));
        svg.appendChild(circle);
    }

    if (options.manual) {
        // Imported manual layout: the distinct star marker.
        const cx = scale(options.manual.nPickFaces, xMin, xMax, false);
        const cy = scale(options.manual.nStorage, yMin, yMax, true);
        const star = svgEl('text', {
            x: String(cx),
            y: String(cy + 5),
            'text-anchor': 'middle',
            'font-size': '18',
            fill: '#d32f2f',
        });
        star.textContent = '★';
        svg.appendChild(star);
    }

    root.appendChild(svg);
}

export function renderGrid(root: HTMLElement, candidate: CandidateEntry): void {
    root.replaceChildren();
    const table = document.createElement('table');
    table.className = 'layout-grid';
    for (const row of candidate.grid) {
        const tr = document.createElement('tr');
        for (const ch of row) {
            const td = document.createElement('td');
            td.style.backgroundColor = CELL_COLORS[ch as CellChar];
            td.title = CELL_NAMES[ch as CellChar];
            tr.appendChild(td);
        }
        table.appendChild(tr);
    }
    root.appendChild(table);
}

export function renderLegend(root: HTMLElement): void {
    root.replaceChildren();
    const list = document.createElement('ul');
    list.className = 'legend';
    for (const [ch, name] of Object.entries(CELL_NAMES)) {
        const item = document.createElement('li');
        const swatch = document.createElement('span');
        swatch.style.backgroundColor = CELL_COLORS[ch as CellChar];
        swatch.className = 'swatch';
        item.appendChild(swatch);
        item.appendChild(document.createTextNode(` ${name}`));
        list.appendChild(item);
    }
    root.appendChild(list);
}
