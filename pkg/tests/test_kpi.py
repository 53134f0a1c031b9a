import numpy as np
import pytest

from oransec.attacklab import (
    FEATURE_NAMES,
    GeneratorConfig,
    KpiSample,
    LabelingPolicy,
    PolicyError,
    QoEClass,
    dataset_from_csv,
    dataset_to_csv,
    expert_label,
    generate_dataset,
)


def make_sample(sinr=25.0, rsrp=-70.0, prb_dl=0.2):
    return KpiSample(
        ue_id=1, serving_cell_id=2,
        pdcp_dl_bytes=3e6, pdcp_ul_bytes=1e6,
        prb_dl_ratio=prb_dl, prb_ul_ratio=0.2,
        rsrp=rsrp, rsrq=-8.0, sinr=sinr,
        cell_pdcp_dl=2e7, cell_pdcp_ul=1e7,
        cell_prb_dl_ratio=0.3, cell_prb_ul_ratio=0.3)


class TestExpertLabel:
    def test_strong_signal_is_excellent(self):
        assert expert_label(make_sample(sinr=30.0, rsrp=-60.0, prb_dl=0.9)) is QoEClass.EXCELLENT

    def test_very_low_sinr_is_poor(self):
        assert expert_label(make_sample(sinr=-15.0)) is QoEClass.POOR

    def test_boundary_goes_to_higher_class(self):
        assert expert_label(make_sample(sinr=20.0, rsrp=-60.0)) is QoEClass.EXCELLENT
        assert expert_label(make_sample(sinr=0.0, rsrp=-60.0)) is QoEClass.AVERAGE

    def test_min_rule_over_kpis(self):
        # excellent sinr but average-grade rsrp
        assert expert_label(make_sample(sinr=30.0, rsrp=-100.0)) is QoEClass.AVERAGE

    def test_prb_cutoffs_when_enabled(self):
        policy = LabelingPolicy(prb_dl_cutoffs=(0.9, 0.6, 0.3))
        assert expert_label(make_sample(sinr=30.0, rsrp=-60.0, prb_dl=0.95),
                            policy) is QoEClass.POOR
        assert expert_label(make_sample(sinr=30.0, rsrp=-60.0, prb_dl=0.2),
                            policy) is QoEClass.EXCELLENT

    def test_invalid_sample_rejected(self):
        with pytest.raises(ValueError):
            expert_label(make_sample(sinr=90.0))

    def test_policy_thresholds_must_be_ordered(self):
        with pytest.raises(PolicyError):
            LabelingPolicy(sinr_cutoffs=(0.0, 20.0, 10.0))
        with pytest.raises(PolicyError):
            LabelingPolicy(prb_dl_cutoffs=(0.3, 0.6, 0.9))


class TestGenerator:
    def test_deterministic_per_seed(self):
        a = generate_dataset(GeneratorConfig(), 1000, seed=7)
        b = generate_dataset(GeneratorConfig(), 1000, seed=7)
        assert dataset_to_csv(a) == dataset_to_csv(b)
        c = generate_dataset(GeneratorConfig(), 1000, seed=8)
        assert dataset_to_csv(a) != dataset_to_csv(c)

    def test_relabeling_reproduces_stored_labels(self):
        config = GeneratorConfig()
        ds = generate_dataset(config, 500, seed=3)
        relabeled = config.policy.label_features(ds.X)
        assert np.array_equal(relabeled, ds.labels)

    def test_class_proportions_near_weights(self):
        ds = generate_dataset(GeneratorConfig(), 10_000, seed=42)
        freqs = np.bincount(ds.labels, minlength=4) / len(ds)
        assert np.all(np.abs(freqs - 0.25) <= 0.05)

    def test_features_within_declared_ranges(self):
        ds = generate_dataset(GeneratorConfig(), 2000, seed=5)
        for i in range(len(FEATURE_NAMES)):
            sample = ds.sample(i)
            sample.validate()

    def test_unreachable_proportions_rejected(self):
        with pytest.raises(ValueError):
            generate_dataset(GeneratorConfig(class_weights=(0.9, 0.9, 0.1, 0.1)), 10, 1)
        with pytest.raises(ValueError):
            generate_dataset(GeneratorConfig(), 0, 1)

    def test_csv_round_trip(self):
        ds = generate_dataset(GeneratorConfig(), 200, seed=9)
        text = dataset_to_csv(ds)
        back = dataset_from_csv(text)
        assert np.array_equal(back.X, ds.X)
        assert np.array_equal(back.labels, ds.labels)
        assert np.array_equal(back.ue_id, ds.ue_id)
