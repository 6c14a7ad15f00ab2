/** Single view-state store; every UI transition goes through here. */

import type { Brush } from './editor';
import type { CandidateEntry, JobStatus, ParetoFile, SpaceFile } from './types';

export interface ManualOverlay {
    layout: CandidateEntry;
    nStorage: number;
    nPickFaces: number;
}

export interface ViewState {
    space: SpaceFile | null;
    spaceId: string | null;
    brush: Brush;
    jobs: JobStatus[];
    activeJobId: string | null;
    pareto: ParetoFile | null;
    selectedIndex: number | null;
    refinerOverlay: boolean;
    manual: ManualOverlay | null;
}

export function initialState(): ViewState {
    return {
        space: null,
        spaceId: null,
        brush: 'wall',
        jobs: [],
        activeJobId: null,
        pareto: null,
        selectedIndex: null,
        refinerOverlay: false,
        manual: null,
    };
}

type Listener = (state: ViewState) => void;

export class Store {
    private state: ViewState = initialState();
    private listeners: Listener[] = [];

    get(): ViewState {
        return this.state;
    }

    subscribe(listener: Listener): () => void {
        this.listeners.push(listener);
        return () => {
            this.listeners = this.listeners.filter((l) => l !== listener);
        };
    }

    private set(patch: Partial<ViewState>): void {
        this.state = { ...this.state, ...patch };
        for (const listener of this.listeners) listener(this.state);
    }

    setSpace(space: SpaceFile, spaceId: string | null = null): void {
        // A new space invalidates sweep results and selections.
        this.set({
            space,
            spaceId,
            pareto: null,
            selectedIndex: null,
            manual: null,
        });
    }

    setBrush(brush: Brush): void {
        this.set({ brush });
    }

    upsertJob(status: JobStatus): void {
        const jobs = this.state.jobs.filter((j) => j.id !== status.id);
        jobs.push(status);
        jobs.sort((a, b) => a.created_at - b.created_at);
        this.set({ jobs, activeJobId: status.state === 'running' ? status.id : this.state.activeJobId });
    }

    setPareto(pareto: ParetoFile): void {
        this.set({ pareto, selectedIndex: null, activeJobId: null });
    }

    /** Select a scatter point; the rendered layout is always its candidate. */
    selectPoint(index: number): void {
        const pareto = this.state.pareto;
        if (!pareto || index < 0 || index >= pareto.candidates.length) {
            throw new Error(`candidate index ${index} out of range`);
        }
        this.set({ selectedIndex: index });
    }

    selectedCandidate(): CandidateEntry | null {
        const { pareto, selectedIndex } = this.state;
        if (!pareto || selectedIndex === null) return null;
        return pareto.candidates[selectedIndex];
    }

    toggleRefinerOverlay(): void {
        this.set({ refinerOverlay: !this.state.refinerOverlay });
    }

    setManual(overlay: ManualOverlay | null): void {
        this.set({ manual: overlay });
    }
}
