/** Page bootstrap: wires the store, API client, and renderers together. */

import { WareplanClient } from './api';
import { paint, type Brush } from './editor';
import { recount } from './grid';
import { Store } from './store';
import type { SpaceFile } from './types';
import { renderGrid, renderLegend, renderScatter } from './view';

const API_BASE = (window as { WAREPLAN_API?: string }).WAREPLAN_API ?? 'http://localhost:8080';

function emptySpace(height: number, width: number, aisleWidth: number): SpaceFile {
    return {
        format_version: 1,
        width,
        height,
        aisle_width: aisleWidth,
        walls: [],
        door_connections: [],
        pillars: [],
        reserved: [],
    };
}

function el(id: string): HTMLElement {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node;
}

export function mount(): void {
    const store = new Store();
    const client = new WareplanClient(API_BASE);

    const scatterRoot = el('scatter');
    const gridRoot = el('layout');
    const legendRoot = el('legend');
    const editorRoot = el('editor');
    const statusRoot = el('status');

    renderLegend(legendRoot);
    store.setSpace(emptySpace(20, 25, 2));

    function redraw(): void {
        const state = store.get();
        if (state.pareto) {
            renderScatter(scatterRoot, state.pareto, {
                showRejected: state.refinerOverlay,
                manual: state.manual,
                onSelect: (index) => store.selectPoint(index),
            });
        }
        const selected = store.selectedCandidate();
        if (selected) renderGrid(gridRoot, selected);
        drawEditor(state.space);
        const active = state.jobs.find((j) => j.id === state.activeJobId);
        statusRoot.textContent = active
            ? `${active.kind} ${active.progress.completed}/${active.progress.total}`
            : '';
    }

    function drawEditor(space: SpaceFile | null): void {
        editorRoot.replaceChildren();
        if (!space) return;
        const table = document.createElement('table');
        table.className = 'space-editor';
        for (let r = 0; r < space.height; r++) {
            const tr = document.createElement('tr');
            for (let c = 0; c < space.width; c++) {
                const td = document.createElement('td');
                td.addEventListener('click', () => {
                    const brush = (
                        document.querySelector(
                            'input[name=brush]:checked',
                        ) as HTMLInputElement | null
                    )?.value as Brush | undefined;
                    store.setSpace(paint(space, brush ?? 'wall', r, c), null);
                });
                tr.appendChild(td);
            }
            table.appendChild(tr);
        }
        editorRoot.appendChild(table);
    }

    el('run-sweep').addEventListener('click', () => {
        void runSweep();
    });

    async function runSweep(): Promise<void> {
        const space = store.get().space;
        if (!space) return;
        const { id: spaceId } = await client.createSpace(space);
        const { id: jobId } = await client.createJob({
            space_id: spaceId,
            kind: 'sweep',
            config: { beam_size: 3 },
        });
        await client.waitForJob(jobId, (status) => store.upsertJob(status));
        store.setPareto(await client.getSweepResult(jobId));
    }

    el('toggle-refiners').addEventListener('click', () => store.toggleRefinerOverlay());

    el('import-manual').addEventListener('change', (event) => {
        const input = event.target as HTMLInputElement;
        const file = input.files?.[0];
        if (!file) return;
        void file.text().then((text) => {
            const grid = text.trim().split('\n');
            const counts = recount(grid);
            store.setManual({
                layout: {
                    grid,
                } as never,
                nStorage: counts.nStorage,
                nPickFaces: counts.nPickFaces,
            });
        });
    });

    store.subscribe(redraw);
    redraw();
}

if (typeof document !== 'undefined' && document.readyState !== 'loading') {
    mount();
} else if (typeof document !== 'undefined') {
    document.addEventListener('DOMContentLoaded', mount);
}
