import json

import pytest

import oracle

from oransec.catalog import ImpactKind
from oransec.catalog.model import ActorFeasibility, AttackTechnique, CAPABILITY_CODES, MlHost, RicLocation
from oransec.engine import (
    ImpactGrade,
    ProfileError,
    Question,
    QuestionError,
    UseCaseProfile,
    apply_patch,
    assess,
    capability_scores,
    grade_to_score,
    likelihood,
    what_if,
)


def q1(questions):
    return next(q for q in questions if q.id == "Q1")


class TestGradeToScore:
    def test_easy_on_q1_is_0_8(self, questions):
        assert grade_to_score(q1(questions), "Easy") == 0.8

    def test_impossible_is_scale_floor(self, questions):
        for q in questions:
            assert grade_to_score(q, "Impossible") == 0.0

    def test_trivial_is_scale_ceiling(self, questions):
        for q in questions:
            assert grade_to_score(q, "Trivial") == 1.0

    def test_unknown_grade_raises(self, questions):
        with pytest.raises(QuestionError):
            grade_to_score(q1(questions), "Effortless")


class TestQuestionInvariants:
    def test_scale_must_increase(self):
        with pytest.raises(QuestionError):
            Question("QX", "t", "ACD4", (("A", 0.0), ("B", 0.8), ("C", 0.5), ("D", 1.0)))

    def test_scale_endpoints(self):
        with pytest.raises(QuestionError):
            Question("QX", "t", "ACD4", (("A", 0.1), ("B", 1.0)))
        with pytest.raises(QuestionError):
            Question("QX", "t", "ACD4", (("A", 0.0), ("B", 0.9)))

    def test_unknown_capability(self):
        with pytest.raises(QuestionError):
            Question("QX", "t", "ACD9", (("A", 0.0), ("B", 1.0)))


class TestCapabilityScores:
    def test_q1_easy_scores_sensor_access(self, questions, catalog):
        scores = capability_scores({"Q1": "Easy"}, questions, catalog)
        assert scores["ACD4"] == 0.8

    def test_no_answers_all_zero(self, questions, catalog):
        scores = capability_scores({}, questions, catalog)
        assert all(v == 0.0 for v in scores.values())

    def test_max_aggregation_over_questions(self, catalog):
        scale = (("Impossible", 0.0), ("Moderate", 0.5), ("Easy", 0.8), ("Trivial", 1.0))
        qs = [Question("QA", "a", "ACM2", scale), Question("QB", "b", "ACM2", scale)]
        scores = capability_scores({"QA": "Moderate", "QB": "Easy"}, qs, catalog,
                                   apply_dominance_closure=False)
        assert scores["ACM2"] == 0.8

    def test_closure_applied_when_enabled(self, questions, catalog):
        scores = capability_scores({"Q13": "Trivial"}, questions, catalog,
                                   apply_dominance_closure=True)
        assert scores["AKM3"] == 1.0
        raw = capability_scores({"Q13": "Trivial"}, questions, catalog,
                                apply_dominance_closure=False)
        assert raw["AKM3"] == 0.0


def make_technique(req, impacts=(ImpactKind.TAMPERING,), ef=1.0, extra=()):
    full_req = {c: 0.0 for c in CAPABILITY_CODES}
    full_req.update(req)
    return AttackTechnique(
        id="AT1.1", family="AF1", variant_label="synthetic",
        req=full_req,
        impacts={k: (1 if k in impacts else 0) for k in ImpactKind},
        effectiveness=ef,
        feasibility=ActorFeasibility(
            a1={h: False for h in MlHost},
            a2={(loc, f"DS{i}"): False for loc in RicLocation for i in range(1, 6)},
            a3=False, a4=False, a5=False, a6=False),
        extra_threats=extra)


class TestLikelihood:
    def test_spec_hand_case(self):
        tech = make_technique({"AKD1": 1.0, "AKM1": 1.0, "ACD4": 0.5, "ACM2": 0.5})
        scores = {"AKD1": 0.2, "AKM1": 0.2, "ACD4": 0.8, "ACM2": 0.8}
        assert likelihood(tech, scores) == pytest.approx(0.30, abs=1e-12)

    def test_all_required_all_one(self):
        tech = make_technique({c: 1.0 for c in CAPABILITY_CODES})
        assert likelihood(tech, {c: 1.0 for c in CAPABILITY_CODES}) == 1.0

    def test_single_required_zero_score(self):
        tech = make_technique({"ACM1": 1.0})
        assert likelihood(tech, {"ACM1": 0.0}) == 0.0

    def test_no_requirements_is_zero(self):
        tech = make_technique({})
        assert likelihood(tech, {c: 1.0 for c in CAPABILITY_CODES}) == 0.0

    def test_matches_independent_oracle_on_catalog(self, catalog):
        scores = {c: (0.1 * (i % 11)) / 1.0 for i, c in enumerate(CAPABILITY_CODES)}
        for tech in catalog.techniques.values():
            assert likelihood(tech, scores) == pytest.approx(
                oracle.likelihood(tech.req, scores), abs=1e-12)


class TestRiskArithmetic:
    def test_medium_impact_case(self):
        # Ef=1.0, Imp=Medium(5.0), indicator=1, LH=0.30 -> 1.50
        assert oracle.risk_value(1.0, 5.0, 1, 0.30) == pytest.approx(1.50, abs=1e-12)

    def test_indicator_zero_kills_risk(self):
        assert oracle.risk_value(1.0, 10.0, 0, 1.0) == 0.0

    def test_paper_magnitude(self):
        assert oracle.risk_value(1.0, 10.0, 1, 0.79) == pytest.approx(7.90, abs=1e-12)


class TestAssess:
    def test_all_zero_answers_all_zero_risk(self, questions, catalog, ts_profile):
        profile = UseCaseProfile(
            title="zeroed", description="", scenario="DS2", actor="A5",
            impact_grades=ts_profile.impact_grades,
            answers={q.id: "Impossible" for q in questions})
        result = assess(profile, questions, catalog)
        assert all(e.risk == 0.0 for e in result.entries)
        ranked = [(e.technique, e.threat) for e in result.ranked_entries()]
        assert ranked == sorted(ranked, key=lambda p: (oracle.technique_key(p[0]),
                                                       int(p[1].lstrip("T"))))

    def test_fixture_top_entry_is_poisoning(self, questions, catalog, ts_profile):
        result = assess(ts_profile, questions, catalog)
        top = result.ranked_entries()[0]
        assert catalog.techniques[top.technique].family in ("AF4", "AF5")
        assert top.technique == "AT4.1"
        assert top.feasible is False  # A5 cannot obtain the poisoning capabilities

    def test_fixture_matches_independent_oracle(self, questions, catalog, ts_profile,
                                                catalog_doc, questions_doc, ts_project_doc):
        result = assess(ts_profile, questions, catalog)
        entries, order = oracle.evaluate_catalog(catalog_doc, questions_doc,
                                                 ts_project_doc["profile"])
        assert len(result.entries) == len(entries)
        for mine, ref in zip(result.entries, entries):
            assert mine.technique == ref["technique"]
            assert mine.threat == ref["threat"]
            assert mine.risk == pytest.approx(ref["risk"], abs=1e-12)
            assert mine.likelihood == pytest.approx(ref["likelihood"], abs=1e-12)
        assert list(result.prioritized) == order

    def test_single_grade_change_is_local(self, questions, catalog, ts_profile):
        base = assess(ts_profile, questions, catalog)
        # Q7 maps to ACM1, which nothing else reaches by closure from this profile
        patched = apply_patch(ts_profile, {"answers": {"Q7": "Trivial"}})
        after = assess(patched, questions, catalog)
        changed_caps = {"ACM1", "ACM2"}  # ACM1 dominates ACM2, but ACM2 is already 1.0
        for e0, e1 in zip(base.entries, after.entries):
            tech = catalog.techniques[e0.technique]
            requires_changed = any(tech.req[c] > 0 and after.scores[c] != base.scores[c]
                                   for c in changed_caps)
            if not requires_changed:
                assert e1.risk == e0.risk, e0.technique

    def test_missing_impact_grade_names_field(self, questions, catalog, ts_profile):
        grades = dict(ts_profile.impact_grades)
        del grades["T4"]
        profile = UseCaseProfile(
            title="broken", description="", scenario="DS2", actor="A5",
            impact_grades=grades, answers={})
        with pytest.raises(ProfileError, match="impact_grades.T4"):
            assess(profile, questions, catalog)

    def test_bad_grade_names_question(self, questions, catalog, ts_profile):
        profile = apply_patch(ts_profile, {})
        with pytest.raises(ProfileError, match="answers.Q1"):
            assess(apply_patch(profile, {"answers": {"Q1": "Sideways"}}),
                   questions, catalog)

    def test_deterministic_output_bytes(self, questions, catalog, ts_profile):
        a = assess(ts_profile, questions, catalog).canonical_json()
        b = assess(ts_profile, questions, catalog).canonical_json()
        assert a == b


class TestWhatIf:
    def test_raising_a_grade_never_lowers_risk(self, questions, catalog, ts_profile):
        report = what_if(ts_profile, {"answers": {"Q6": "Trivial"}}, questions, catalog)
        for delta in report.deltas:
            assert delta.new_risk >= delta.old_risk - 1e-15

    def test_empty_patch_all_deltas_zero(self, questions, catalog, ts_profile):
        report = what_if(ts_profile, {}, questions, catalog)
        assert all(d.new_risk == d.old_risk and d.rank_shift == 0 for d in report.deltas)

    def test_actor_switch_changes_feasibility(self, questions, catalog, ts_profile):
        report = what_if(ts_profile, {"actor": "A4"}, questions, catalog)
        # A4 can obtain every technique's capabilities; A5 only a few
        a5_feasible = {(e.technique, e.threat): e.feasible for e in report.base.entries}
        a4_feasible = {(e.technique, e.threat): e.feasible for e in report.patched.entries}
        assert all(a4_feasible.values())
        assert not all(a5_feasible.values())
        assert a5_feasible[("AT2.2", "T1")] is True

    def test_base_profile_unchanged(self, questions, catalog, ts_profile):
        before = json.dumps(ts_profile.to_doc(), sort_keys=True)
        what_if(ts_profile, {"answers": {"Q1": "Trivial"}, "actor": "A1"},
                questions, catalog)
        assert json.dumps(ts_profile.to_doc(), sort_keys=True) == before

    def test_invalid_patch_rejected(self, questions, catalog, ts_profile):
        with pytest.raises(ValueError):
            what_if(ts_profile, {"nonsense": 1}, questions, catalog)


def test_impact_grade_bijection():
    values = {g.label: g.numeric for g in ImpactGrade}
    assert values == {"None": 0.0, "Low": 2.5, "Medium": 5.0, "High": 7.5, "Critical": 10.0}
    for grade in ImpactGrade:
        assert ImpactGrade.from_label(grade.label) is grade
