"""Report export for assessment results (CSV shows risk to 2 decimals)."""

from __future__ import annotations

import csv
import io

from .assessment import AssessmentResult

REPORT_COLUMNS = ("rank", "technique_id", "variant", "threat", "actor",
                  "feasible", "Ef", "Imp", "LH", "risk")


def format_risk(value: float) -> str:
    """Display rounding: two decimals (7.9 renders as '7.90')."""
    return f"{value:.2f}"


def result_to_csv(result: AssessmentResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for rank, entry in enumerate(result.ranked_entries(), start=1):
        writer.writerow([
            rank,
            entry.technique,
            entry.variant_label,
            entry.threat,
            entry.actor,
            str(entry.feasible).lower(),
            repr(entry.effectiveness),
            repr(entry.impact_value),
            repr(entry.likelihood),
            format_risk(entry.risk),
        ])
    return buf.getvalue()
