"""Questionnaire model: graded questions mapped to attacker capabilities."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..catalog import CAPABILITY_CODES, Catalog, close_scores_under_dominance


class QuestionError(ValueError):
    pass


@dataclass(frozen=True)
class Question:
    id: str
    text: str
    capability: str
    scale: tuple[tuple[str, float], ...]  # (grade label, score), strictly increasing

    def __post_init__(self):
        scores = [s for _, s in self.scale]
        if len(scores) < 2 or any(b <= a for a, b in zip(scores, scores[1:])):
            raise QuestionError(f"{self.id}: scale scores must be strictly increasing")
        if scores[0] != 0.0 or scores[-1] != 1.0:
            raise QuestionError(f"{self.id}: scale endpoints must be 0.0 and 1.0")
        if self.capability not in CAPABILITY_CODES:
            raise QuestionError(f"{self.id}: unknown capability {self.capability!r}")

    def grades(self) -> list[str]:
        return [label for label, _ in self.scale]


def grade_to_score(question: Question, grade: str) -> float:
    """Numeric score of a grade on this question's scale."""
    for label, score in question.scale:
        if label == grade:
            return score
    raise QuestionError(f"grade {grade!r} is not on the scale of {question.id}")


def parse_questions(doc: list[dict]) -> list[Question]:
    return [
        Question(
            id=raw["id"],
            text=raw.get("text", ""),
            capability=raw["capability"],
            scale=tuple((label, float(score)) for label, score in raw["scale"]),
        )
        for raw in doc
    ]


def load_questions(path: str | Path) -> list[Question]:
    return parse_questions(json.loads(Path(path).read_text()))


def bundled_questions_path() -> Path:
    return Path(str(resources.files("oransec").joinpath("data/questions.json")))


def load_bundled_questions() -> list[Question]:
    return load_questions(bundled_questions_path())


def capability_scores(answers: dict[str, str], questions: list[Question],
                      catalog: Catalog, apply_dominance_closure: bool = True) -> dict[str, float]:
    """Aggregate graded answers into a per-capability score vector.

    A capability scores the max over its answered questions (a capability is
    as obtainable as its easiest path); unanswered capabilities score 0.
    """
    by_id = {q.id: q for q in questions}
    scores = {cap: 0.0 for cap in CAPABILITY_CODES}
    for qid, grade in answers.items():
        if qid not in by_id:
            raise QuestionError(f"answer references unknown question {qid!r}")
        question = by_id[qid]
        scores[question.capability] = max(scores[question.capability],
                                          grade_to_score(question, grade))
    if apply_dominance_closure:
        scores = close_scores_under_dominance(catalog, scores)
    return scores
