/** Thin client for the wareplan HTTP service. */

import type { CandidateEntry, JobStatus, ParetoFile, SpaceFile } from './types';

export class ApiError extends Error {
    constructor(
        public readonly status: number,
        message: string,
    ) {
        super(message);
        this.name = 'ApiError';
    }
}

export interface JobRequest {
    space_id: string;
    kind: 'sweep' | 'solve';
    config?: { beam_size?: number; max_depth?: number };
    params?: { alpha: number; theta: number };
    refiners?: Array<Record<string, unknown>>;
}

type Fetch = typeof fetch;

export class WareplanClient {
    constructor(
        private readonly baseUrl: string,
        private readonly fetchFn: Fetch = fetch,
    ) {}

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
        if (!response.ok) {
            let detail = response.statusText;
            try {
                const body = (await response.json()) as { detail?: string };
                if (body.detail) detail = body.detail;
            } catch {
                // non-JSON error body, keep the status text
            }
            throw new ApiError(response.status, detail);
        }
        return (await response.json()) as T;
    }

    private post<T>(path: string, body: unknown): Promise<T> {
        return this.request<T>(path, {
            method: 'POST',
            headers: { 'Content-Type': 'application/json' },
            body: JSON.stringify(body),
        });
    }

    createSpace(space: SpaceFile): Promise<{ id: string }> {
        return this.post('/spaces', space);
    }

    getSpace(spaceId: string): Promise<SpaceFile> {
        return this.request(`/spaces/${spaceId}`);
    }

    createJob(job: JobRequest): Promise<{ id: string }> {
        return this.post('/jobs', job);
    }

    getJob(jobId: string): Promise<JobStatus> {
        return this.request(`/jobs/${jobId}`);
    }

    getSweepResult(jobId: string): Promise<ParetoFile> {
        return this.request(`/jobs/${jobId}/result`);
    }

    cancelJob(jobId: string): Promise<{ id: string; cancel_requested: boolean }> {
        return this.request(`/jobs/${jobId}`, { method: 'DELETE' });
    }

    getLayout(layoutId: string): Promise<CandidateEntry> {
        return this.request(`/layouts/${layoutId}`);
    }

    importLayout(spaceId: string, layout: Record<string, unknown>): Promise<CandidateEntry> {
        return this.post(`/spaces/${spaceId}/import-layout`, layout);
    }

    /**
     * Poll a job until it leaves the queue, reporting progress along the
     * way. Resolves on "done", rejects on "failed".
     */
    async waitForJob(
        jobId: string,
        onProgress?: (status: JobStatus) => void,
        intervalMs = 1000,
    ): Promise<JobStatus> {
        for (;;) {
            const status = await this.getJob(jobId);
            onProgress?.(status);
            if (status.state === 'done') return status;
            if (status.state === 'failed') {
                throw new Error(status.error ?? 'job failed');
            }
            await new Promise((resolve) => setTimeout(resolve, intervalMs));
        }
    }
}
