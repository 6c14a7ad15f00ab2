/** Wire formats served by the wareplan HTTP API and written by its CLI. */

export type Coord = [number, number];

export interface SpaceFile {
    format_version: number;
    width: number;
    height: number;
    aisle_width: number;
    walls: Coord[];
    door_connections: Coord[];
    pillars: Coord[];
    reserved: Coord[];
}

export interface ScoringParams {
    alpha: number;
    theta: number;
    beta: number;
    c1: number;
    c2: number;
}

export interface ScoreBreakdown {
    t_s: number;
    t_pf: number;
    t_o: number;
    p_a: number;
    n_s: number;
    n_pf: number;
    score: number;
}

export interface ConnectivityReport {
    score: number;
    pair_count: number;
    disconnected_pairs: number;
}

export interface Violation {
    id: string;
    message: string;
    cells: Coord[];
}

export interface ValidationReport {
    valid: boolean;
    violations: Violation[];
}

export interface SearchStats {
    nodes_expanded: number;
    children_generated: number;
    children_valid: number;
}

export interface CarveEntry {
    block_store: number;
    orientation: 'horizontal' | 'vertical';
    offset: number;
}

/** One sweep candidate: a full layout plus its evaluation. */
export interface CandidateEntry {
    format_version: number;
    space_digest: string;
    aisle_width: number;
    grid: string[];
    carve_history: CarveEntry[];
    imported: boolean;
    params: ScoringParams;
    score: ScoreBreakdown;
    connectivity: ConnectivityReport | null;
    validation: ValidationReport;
    stats: SearchStats;
    on_front: boolean;
    /** Refiner id that rejected this candidate, when a pipeline ran. */
    rejected_by?: string | null;
}

export interface ParetoFile {
    format_version: number;
    space_digest: string;
    candidates: CandidateEntry[];
    /** Indices into candidates, in front order. */
    front: number[];
}

export interface CompareEntry {
    alpha: number;
    theta: number;
    n_s: number;
    n_pf: number;
    delta_n_s: number;
    delta_n_pf: number;
    dominates_manual: boolean;
}

export interface CompareReport {
    manual: { n_s: number; n_pf: number };
    dominated: boolean;
    front: CompareEntry[];
}

export type JobState = 'queued' | 'running' | 'done' | 'failed';

export interface JobStatus {
    id: string;
    kind: 'sweep' | 'solve';
    space_id: string;
    state: JobState;
    progress: { completed: number; total: number };
    created_at: number;
    error: string | null;
}
