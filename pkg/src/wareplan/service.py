"""HTTP facade over the engine: spaces, jobs, results, layouts.

Jobs live in memory; results can optionally be persisted to a data
directory. The engine calls are pure, so job workers share nothing but the
immutable space spec.
"""

from __future__ import annotations

import itertools
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import fileio
from .constraints import validate
from .errors import InvariantViolation, JobCancelled, ParseError, WareplanError
from .grid import SpaceSpec, layout_from_cells
from .refine import Refiner, apply_refiners
from .scoring import ScoringParams, connectivity, score
from .search import (
    ParetoSet,
    SearchConfig,
    generate,
    pareto_front,
    pareto_sweep,
)


@dataclass
class Job:
    id: str
    kind: str
    space_id: str
    state: str = "queued"  # queued -> running -> done | failed
    completed: int = 0
    total: int = 1
    created_at: float = field(default_factory=time.time)
    error: str | None = None
    result: dict | None = None
    cancel_event: threading.Event = field(default_factory=threading.Event)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "space_id": self.space_id,
            "state": self.state,
            "progress": {"completed": self.completed, "total": self.total},
            "created_at": self.created_at,
            "error": self.error,
        }


class Registry:
    def __init__(self):
        self.lock = threading.Lock()
        self.spaces: dict[str, tuple[SpaceSpec, dict]] = {}
        self.jobs: dict[str, Job] = {}
        self.layouts: dict[str, dict] = {}
        self._job_counter = itertools.count(1)

    def next_job_id(self) -> str:
        return f"job-{next(self._job_counter)}"


def _sweep_result(spec: SpaceSpec, config: SearchConfig, job: Job,
                  refiners: list[Refiner], jobs: int) -> dict:
    def on_progress(done: int, total: int) -> None:
        job.completed, job.total = done, total

    pareto = pareto_sweep(
        spec, config, jobs=jobs,
        progress=on_progress, cancel=job.cancel_event.is_set,
    )
    rejected_by: dict[int, str] = {}
    if refiners:
        candidates = list(pareto.candidates)
        passed, rejected = apply_refiners(candidates, refiners)
        for cand, refiner_id in rejected:
            rejected_by[candidates.index(cand)] = refiner_id
        pareto = ParetoSet(
            candidates=pareto.candidates, front=tuple(pareto_front(passed))
        )
    data = fileio.pareto_to_dict(pareto)
    for idx, entry in enumerate(data["candidates"]):
        entry["rejected_by"] = rejected_by.get(idx)
        if idx in rejected_by:
            entry["on_front"] = False
    return data


def create_app(jobs: int | None = None, data_dir: str | None = None) -> FastAPI:
    import os

    worker_count = jobs if jobs is not None else (os.cpu_count() or 1)
    registry = Registry()
    app = FastAPI(title="wareplan")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.registry = registry

    out_dir = Path(data_dir) if data_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)

    @app.exception_handler(WareplanError)
    async def _domain_error(_request: Request, exc: WareplanError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.post("/spaces")
    async def create_space(request: Request):
        body = await request.json()
        spec = fileio.space_from_dict(body)
        registry.spaces[spec.digest] = (spec, body)
        return {"id": spec.digest}

    @app.get("/spaces/{space_id}")
    async def get_space(space_id: str):
        entry = registry.spaces.get(space_id)
        if entry is None:
            raise HTTPException(404, "unknown space")
        return fileio.space_to_dict(entry[0])

    def _run_job(job: Job, spec: SpaceSpec, body: dict) -> None:
        job.state = "running"
        try:
            config_body = body.get("config") or {}
            config = SearchConfig(
                beam_size=int(config_body.get("beam_size", 1)),
                max_depth=config_body.get("max_depth"),
            )
            if job.kind == "sweep":
                refiners = [
                    Refiner.from_dict(entry)
                    for entry in body.get("refiners") or []
                ]
                job.result = _sweep_result(
                    spec, config, job, refiners, worker_count
                )
                for cand in job.result["candidates"]:
                    registry.layouts[_grid_digest(cand)] = cand
            else:
                params_body = body.get("params") or {}
                params = ScoringParams(
                    alpha=float(params_body.get("alpha", 0.5)),
                    theta=float(params_body.get("theta", 0.1)),
                )
                result = generate(spec, params, config)
                job.completed, job.total = 1, 1
                job.result = fileio.result_to_dict(result)
                registry.layouts[result.optimal.digest] = job.result
            if out_dir and job.result is not None:
                (out_dir / f"{job.id}.json").write_text(
                    fileio.canonical_json(job.result)
                )
            job.state = "done"
        except JobCancelled:
            job.state = "failed"
            job.error = "cancelled"
        except Exception as exc:  # pragma: no cover - defensive
            job.state = "failed"
            job.error = str(exc)

    @app.post("/jobs")
    async def create_job(request: Request):
        body = await request.json()
        space_id = body.get("space_id")
        entry = registry.spaces.get(space_id)
        if entry is None:
            raise HTTPException(404, "unknown space")
        kind = body.get("kind", "sweep")
        if kind not in ("sweep", "solve"):
            raise HTTPException(400, f"unknown job kind {kind!r}")
        with registry.lock:
            job = Job(id=registry.next_job_id(), kind=kind, space_id=space_id)
            registry.jobs[job.id] = job
        thread = threading.Thread(
            target=_run_job, args=(job, entry[0], body), daemon=True
        )
        thread.start()
        return {"id": job.id}

    def _get_job(job_id: str) -> Job:
        job = registry.jobs.get(job_id)
        if job is None:
            raise HTTPException(404, "unknown job")
        return job

    @app.get("/jobs/{job_id}")
    async def get_job(job_id: str):
        return _get_job(job_id).to_dict()

    @app.get("/jobs/{job_id}/result")
    async def get_job_result(job_id: str):
        job = _get_job(job_id)
        if job.state != "done" or job.result is None:
            raise HTTPException(404, f"job is {job.state}")
        return job.result

    @app.delete("/jobs/{job_id}")
    async def cancel_job(job_id: str):
        job = _get_job(job_id)
        if job.state in ("done", "failed"):
            raise HTTPException(409, f"job already {job.state}")
        job.cancel_event.set()
        return {"id": job.id, "state": job.state, "cancel_requested": True}

    @app.get("/layouts/{layout_id}")
    async def get_layout(layout_id: str):
        layout = registry.layouts.get(layout_id)
        if layout is None:
            raise HTTPException(404, "unknown layout")
        return layout

    @app.post("/spaces/{space_id}/import-layout")
    async def import_layout(space_id: str, request: Request):
        entry = registry.spaces.get(space_id)
        if entry is None:
            raise HTTPException(404, "unknown space")
        spec = entry[0]
        body = await request.json()
        layout = fileio.layout_from_dict(body, spec)
        params_body = body.get("params") or {}
        params = ScoringParams(
            alpha=float(params_body.get("alpha", 0.5)),
            theta=float(params_body.get("theta", 0.1)),
        )
        breakdown = score(layout, params)
        conn = connectivity(layout) if layout.n_pick_faces else None
        data = fileio.layout_to_dict(
            layout,
            params=params,
            breakdown=breakdown,
            connectivity=conn,
            validation=validate(layout),
            imported=True,
        )
        registry.layouts[layout.digest] = data
        return data

    return app


def _grid_digest(layout_dict: dict) -> str:
    import hashlib

    rows = layout_dict["grid"]
    h = hashlib.sha256()
    h.update(f"{len(rows)}x{len(rows[0])}".encode())
    from .fileio import KIND_BY_CHAR

    h.update(bytes(int(KIND_BY_CHAR[ch]) for row in rows for ch in row))
    return h.hexdigest()
