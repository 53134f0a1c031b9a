"""HTTP service binding the engine to UI clients.

All risk numbers are computed server-side; every mutation returns the fresh
assessment result so clients never compute risk locally. Numbers are
serialized at full precision; display rounding is the client's job.
"""

from __future__ import annotations

import json
from typing import Any

from fastapi import Body, FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware

from ..advisor import DefenderContext, permissive_context, recommend
from ..engine import ProfileError, UseCaseProfile, apply_patch, what_if
from .workspace import Workspace, WorkspaceError


def _record_doc(record) -> dict:
    return {
        "id": record.id,
        "revision": record.revision,
        "profile": record.profile.to_doc(),
        "result": record.result.to_doc(),
    }


def create_app(workspace: Workspace) -> FastAPI:
    app = FastAPI(title="oransec", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])

    def get_record(assessment_id: str):
        try:
            return workspace.get_assessment(assessment_id)
        except KeyError:
            raise HTTPException(404, detail=f"assessment {assessment_id!r} not found")

    @app.get("/catalog")
    def get_catalog() -> Any:
        return json.loads((workspace.root / "catalog.json").read_text())

    @app.get("/questions")
    def get_questions() -> Any:
        return json.loads((workspace.root / "questions.json").read_text())

    @app.get("/assessments")
    def list_assessments() -> Any:
        return {"assessments": workspace.list_assessments()}

    @app.post("/assessments", status_code=201)
    def create_assessment(body: dict = Body(...)) -> Any:
        try:
            profile = UseCaseProfile.from_doc(body["profile"])
            record = workspace.create_assessment(profile, body.get("id"))
        except KeyError as exc:
            raise HTTPException(422, detail=f"missing field {exc}")
        except (ProfileError, WorkspaceError) as exc:
            raise HTTPException(422, detail=str(exc))
        return _record_doc(record)

    @app.get("/assessments/{assessment_id}")
    def get_assessment(assessment_id: str) -> Any:
        return _record_doc(get_record(assessment_id))

    def patch_profile(assessment_id: str, patch: dict) -> Any:
        record = get_record(assessment_id)
        try:
            new_profile = apply_patch(record.profile, patch)
            updated = workspace.update_assessment(assessment_id, new_profile)
        except (ProfileError, ValueError) as exc:
            raise HTTPException(422, detail=str(exc))
        return _record_doc(updated)

    @app.patch("/assessments/{assessment_id}/answers")
    def patch_answers(assessment_id: str, body: dict = Body(...)) -> Any:
        return patch_profile(assessment_id, {"answers": body})

    @app.patch("/assessments/{assessment_id}/impacts")
    def patch_impacts(assessment_id: str, body: dict = Body(...)) -> Any:
        return patch_profile(assessment_id, {"impact_grades": body})

    @app.patch("/assessments/{assessment_id}/profile")
    def patch_whole_profile(assessment_id: str, body: dict = Body(...)) -> Any:
        return patch_profile(assessment_id, body)

    @app.get("/assessments/{assessment_id}/risk")
    def get_risk(assessment_id: str) -> Any:
        record = get_record(assessment_id)
        return {
            "revision": record.revision,
            "catalog_version": record.result.catalog_version,
            "entries": [e.to_doc() for e in record.result.entries],
        }

    @app.get("/assessments/{assessment_id}/prioritization")
    def get_prioritization(assessment_id: str) -> Any:
        record = get_record(assessment_id)
        return {
            "revision": record.revision,
            "ranked": [e.to_doc() for e in record.result.ranked_entries()],
        }

    @app.post("/assessments/{assessment_id}/what-if")
    def post_what_if(assessment_id: str, body: dict = Body(...)) -> Any:
        record = get_record(assessment_id)
        try:
            report = what_if(record.profile, body, workspace.questions, workspace.catalog)
        except (ProfileError, ValueError) as exc:
            raise HTTPException(422, detail=str(exc))
        return report.to_doc()

    @app.get("/assessments/{assessment_id}/recommendations")
    def get_recommendations(assessment_id: str, top: int = Query(5, ge=1),
                            context: str | None = None) -> Any:
        record = get_record(assessment_id)
        try:
            ctx = (DefenderContext.from_doc(json.loads(context)) if context
                   else permissive_context())
        except (ValueError, KeyError) as exc:
            raise HTTPException(422, detail=f"context: {exc}")
        recs = recommend(record.result, ctx, workspace.catalog, top_n=top)
        return {"recommendations": [r.to_doc() for r in recs]}

    @app.post("/attack-runs", status_code=201)
    def post_attack_run(body: dict = Body(...)) -> Any:
        from ..attacklab import (
            HsjaParams, demo_dataset, demo_model, estimate_effectiveness,
        )

        kind = body.get("kind", "estimate")
        seed = body.get("seed")
        if seed is None:
            raise HTTPException(422, detail="seed: required for attack runs")
        if kind == "estimate":
            est = estimate_effectiveness(
                demo_model(), demo_dataset(), HsjaParams(seed=int(seed)),
                trials=int(body.get("trials", 25)), seed=int(seed),
                technique_id=body.get("technique", "AT2.2"))
            run_id = workspace.save_run("estimate", est.to_doc())
            return {"id": run_id, **est.to_doc()}
        raise HTTPException(422, detail=f"kind: unsupported attack run kind {kind!r}")

    @app.get("/attack-runs")
    def list_attack_runs() -> Any:
        return {"runs": workspace.list_runs()}

    @app.get("/attack-runs/{run_id}")
    def get_attack_run(run_id: str) -> Any:
        try:
            return workspace.get_run(run_id)
        except KeyError:
            raise HTTPException(404, detail=f"run {run_id!r} not found")

    return app
