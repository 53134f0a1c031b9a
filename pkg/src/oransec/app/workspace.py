"""File-backed workspace: catalog, question set, assessments and attack runs.

Layout: one directory holding catalog.json, questions.json, assessments/*.json
and runs/*.json. Cached results are stamped with the catalog version and
recomputed when it changes. Writes to one assessment are serialized; distinct
assessments may be written concurrently.
"""

from __future__ import annotations

import json
import shutil
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from ..catalog import Catalog, bundled_catalog_path, load_catalog
from ..engine import (
    AssessmentResult,
    Question,
    UseCaseProfile,
    assess,
    bundled_questions_path,
    load_questions,
)


class WorkspaceError(Exception):
    pass


@dataclass
class AssessmentRecord:
    id: str
    profile: UseCaseProfile
    revision: int
    result: AssessmentResult | None = None

    def to_doc(self) -> dict:
        doc = {
            "id": self.id,
            "revision": self.revision,
            "profile": self.profile.to_doc(),
        }
        if self.result is not None:
            doc["catalog_version"] = self.result.catalog_version
            doc["result"] = self.result.to_doc()
        return doc


class Workspace:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        if not self.root.is_dir():
            raise WorkspaceError(f"workspace directory {self.root} does not exist")
        self.catalog: Catalog = load_catalog(self.root / "catalog.json")
        self.questions: list[Question] = load_questions(self.root / "questions.json")
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    @classmethod
    def create(cls, root: str | Path, catalog_path: Path | None = None,
               questions_path: Path | None = None) -> "Workspace":
        root = Path(root)
        (root / "assessments").mkdir(parents=True, exist_ok=True)
        (root / "runs").mkdir(parents=True, exist_ok=True)
        shutil.copy(catalog_path or bundled_catalog_path(), root / "catalog.json")
        shutil.copy(questions_path or bundled_questions_path(), root / "questions.json")
        return cls(root)

    def _lock_for(self, assessment_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(assessment_id, threading.Lock())

    def _assessment_path(self, assessment_id: str) -> Path:
        return self.root / "assessments" / f"{assessment_id}.json"

    def list_assessments(self) -> list[str]:
        return sorted(p.stem for p in (self.root / "assessments").glob("*.json"))

    def create_assessment(self, profile: UseCaseProfile,
                          assessment_id: str | None = None) -> AssessmentRecord:
        assessment_id = assessment_id or uuid.uuid4().hex[:12]
        if self._assessment_path(assessment_id).exists():
            raise WorkspaceError(f"assessment {assessment_id!r} already exists")
        record = AssessmentRecord(id=assessment_id, profile=profile, revision=0)
        with self._lock_for(assessment_id):
            record.result = assess(profile, self.questions, self.catalog)
            self._save(record)
        return record

    def get_assessment(self, assessment_id: str) -> AssessmentRecord:
        path = self._assessment_path(assessment_id)
        if not path.exists():
            raise KeyError(assessment_id)
        doc = json.loads(path.read_text())
        profile = UseCaseProfile.from_doc(doc["profile"])
        record = AssessmentRecord(id=doc["id"], profile=profile,
                                  revision=int(doc.get("revision", 0)))
        # the cached result is stamped with the catalog version; recompute
        # (deterministic and cheap) whenever we serve it, so a swapped
        # catalog can never leak stale numbers
        record.result = assess(profile, self.questions, self.catalog)
        return record

    def update_assessment(self, assessment_id: str,
                          new_profile: UseCaseProfile) -> AssessmentRecord:
        with self._lock_for(assessment_id):
            record = self.get_assessment(assessment_id)
            record.profile = new_profile
            record.revision += 1
            record.result = assess(new_profile, self.questions, self.catalog)
            self._save(record)
        return record

    def _save(self, record: AssessmentRecord) -> None:
        path = self._assessment_path(record.id)
        path.write_text(json.dumps(record.to_doc(), indent=1) + "\n")

    def save_run(self, kind: str, doc: dict, run_id: str | None = None) -> str:
        run_id = run_id or uuid.uuid4().hex[:12]
        path = self.root / "runs" / f"{run_id}.json"
        path.write_text(json.dumps({"id": run_id, "kind": kind, **doc}, indent=1) + "\n")
        return run_id

    def get_run(self, run_id: str) -> dict:
        path = self.root / "runs" / f"{run_id}.json"
        if not path.exists():
            raise KeyError(run_id)
        return json.loads(path.read_text())

    def list_runs(self) -> list[str]:
        return sorted(p.stem for p in (self.root / "runs").glob("*.json"))
