import json

import pytest

from oransec.catalog import (
    CatalogParseError,
    CatalogValidationError,
    UnknownIdError,
    capability_implies,
    close_scores_under_dominance,
    feasible_actors,
    load_catalog,
    validate_catalog,
)


def test_bundled_catalog_counts(catalog):
    assert len(catalog.families) == 13
    assert len(catalog.capabilities) == 16
    assert len(catalog.countermeasures) == 14
    assert len(catalog.threats) == 7
    assert len(catalog.actors) == 6
    assert len(catalog.scenarios) == 5


def test_bundled_catalog_has_no_violations(catalog):
    assert validate_catalog(catalog) == []


def test_empty_document_is_parse_error():
    with pytest.raises(CatalogParseError):
        load_catalog("{}")
    with pytest.raises(CatalogParseError):
        load_catalog("not json at all {")


def test_unknown_family_reference_is_validation_error(catalog_doc):
    doc = json.loads(json.dumps(catalog_doc))
    doc["techniques"][0]["family"] = "AF14"
    with pytest.raises(CatalogValidationError) as excinfo:
        load_catalog(doc)
    tid = doc["techniques"][0]["id"]
    assert any(tid in v.path and "AF14" in v.message for v in excinfo.value.violations)


def test_order_cycle_is_detected(catalog_doc):
    doc = json.loads(json.dumps(catalog_doc))
    doc["order_edges"].append(["AKM3", "AKM-Full"])  # closes a 2-cycle via the chain
    with pytest.raises(CatalogValidationError) as excinfo:
        load_catalog(doc)
    assert any("antisymmetric" in v.message for v in excinfo.value.violations)


def test_effectiveness_out_of_range_is_flagged(catalog_doc):
    doc = json.loads(json.dumps(catalog_doc))
    doc["techniques"][3]["effectiveness"] = 1.2
    with pytest.raises(CatalogValidationError) as excinfo:
        load_catalog(doc)
    assert any("effectiveness" in v.path and "out of [0,1]" in v.message
               for v in excinfo.value.violations)


def test_cross_axis_edge_is_flagged(catalog_doc):
    doc = json.loads(json.dumps(catalog_doc))
    doc["order_edges"].append(["AKM3", "ACM2"])  # knowledge -> access
    with pytest.raises(CatalogValidationError) as excinfo:
        load_catalog(doc)
    assert any("crosses" in v.message for v in excinfo.value.violations)


class TestCapabilityImplies:
    def test_full_model_knowledge_implies_task_knowledge(self, catalog):
        assert capability_implies(catalog, "AKM-Full", "AKM3")

    def test_antisymmetry(self, catalog):
        assert not capability_implies(catalog, "AKM3", "AKM-Full")

    def test_score_access_subsumes_decision_access(self, catalog):
        assert capability_implies(catalog, "ACM1", "ACM2")

    def test_reflexive(self, catalog):
        assert capability_implies(catalog, "ACD4", "ACD4")

    def test_incomparable_leaves(self, catalog):
        assert not capability_implies(catalog, "ACD4", "ACD5")
        assert not capability_implies(catalog, "ACD5", "ACD4")

    def test_unknown_id_raises(self, catalog):
        with pytest.raises(UnknownIdError):
            capability_implies(catalog, "AKM9", "AKM3")


class TestFeasibleActors:
    def test_gradient_evasion_training_hyper_ds2(self, catalog):
        actors = feasible_actors(catalog, "AT1.1", "DS2")
        assert ("A1", "TrainingHost") in actors
        assert ("A2", "NonRtRic") in actors
        assert ("A3", "All") in actors
        assert ("A4", "All") in actors
        assert ("A6", "All") in actors
        assert not any(a == "A5" for a, _ in actors)

    def test_query_decision_evasion_includes_ue(self, catalog):
        for ds in ("DS1", "DS2", "DS3", "DS4", "DS5"):
            assert ("A5", "All") in feasible_actors(catalog, "AT2.2", ds)

    def test_a2_excluded_when_no_placement_marked(self, catalog):
        # AT1.1 marks only O-CU/O-DU for DS5 in the A2 columns
        actors = feasible_actors(catalog, "AT1.1", "DS5")
        a2 = {loc for a, loc in actors if a == "A2"}
        assert a2 == {"OCuOdu"}

    def test_unknown_ids(self, catalog):
        with pytest.raises(UnknownIdError):
            feasible_actors(catalog, "AT99.9", "DS1")
        with pytest.raises(UnknownIdError):
            feasible_actors(catalog, "AT1.1", "DS9")


class TestDominanceClosure:
    def test_full_model_knowledge_propagates_down(self, catalog):
        closed = close_scores_under_dominance(catalog, {"AKM-Full": 0.9, "AKM3": 0.1})
        assert closed["AKM3"] == 0.9
        assert closed["AKM1"] == 0.9
        assert closed["AKM2"] == 0.9

    def test_idempotent(self, catalog):
        once = close_scores_under_dominance(catalog, {"AKD1": 0.7, "ACM1": 0.4})
        twice = close_scores_under_dominance(catalog, once)
        assert once == twice

    def test_all_zero_stays_zero(self, catalog):
        closed = close_scores_under_dominance(catalog, {})
        assert all(v == 0.0 for v in closed.values())

    def test_never_lowers_a_score(self, catalog):
        raw = {"AKD1": 0.3, "AKD4": 0.8, "ACM2": 0.5}
        closed = close_scores_under_dominance(catalog, raw)
        for cap, value in raw.items():
            assert closed[cap] >= value

    def test_out_of_range_rejected(self, catalog):
        with pytest.raises(ValueError):
            close_scores_under_dominance(catalog, {"AKD1": 1.5})

    def test_monotone_pointwise(self, catalog):
        lo = close_scores_under_dominance(catalog, {"AKM-Full": 0.3, "ACD1": 0.2})
        hi = close_scores_under_dominance(catalog, {"AKM-Full": 0.5, "ACD1": 0.2})
        assert all(lo[c] <= hi[c] for c in lo)


def test_closure_computed_twice_equals_once(catalog):
    # dominance is the precomputed closure; closing it again adds nothing
    pairs = catalog.dominance
    again = {(a, d) for (a, b) in pairs for (c, d) in pairs if b == c}
    assert again <= pairs


def test_ef_overrides_applied(catalog_doc):
    doc = json.loads(json.dumps(catalog_doc))
    cat = load_catalog(doc, ef_overrides={"AT2.2": 0.42})
    assert cat.techniques["AT2.2"].effectiveness == 0.42
    assert cat.techniques["AT2.1"].effectiveness == 0.9
