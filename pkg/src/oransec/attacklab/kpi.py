"""Synthetic traffic-steering KPI data and the expert threshold labeler.

The generator draws one Gaussian mixture component per QoE class. Signal
KPIs (sinr/rsrp) determine the expert label; the load/volume KPIs carry
strong per-class signal of their own, so a classifier genuinely leans on
them - which is what makes labeler/classifier disagreement reachable for
the evasion attack.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np


class QoEClass(IntEnum):
    EXCELLENT = 0
    GOOD = 1
    AVERAGE = 2
    POOR = 3


CLASS_NAMES = tuple(c.name.capitalize() for c in QoEClass)

FEATURE_NAMES = (
    "pdcp_dl_bytes", "pdcp_ul_bytes",
    "prb_dl_ratio", "prb_ul_ratio",
    "rsrp", "rsrq", "sinr",
    "cell_pdcp_dl", "cell_pdcp_ul",
    "cell_prb_dl_ratio", "cell_prb_ul_ratio",
)

#: Valid value range per feature; also the attack's box bounds.
FEATURE_RANGES: dict[str, tuple[float, float]] = {
    "pdcp_dl_bytes": (0.0, 8e6),
    "pdcp_ul_bytes": (0.0, 4e6),
    "prb_dl_ratio": (0.0, 1.0),
    "prb_ul_ratio": (0.0, 1.0),
    "rsrp": (-140.0, -40.0),
    "rsrq": (-20.0, -3.0),
    "sinr": (-20.0, 40.0),
    "cell_pdcp_dl": (0.0, 4e7),
    "cell_pdcp_ul": (0.0, 2e7),
    "cell_prb_dl_ratio": (0.0, 1.0),
    "cell_prb_ul_ratio": (0.0, 1.0),
}

_IDX = {name: i for i, name in enumerate(FEATURE_NAMES)}


@dataclass(frozen=True)
class KpiSample:
    ue_id: int
    serving_cell_id: int
    pdcp_dl_bytes: float
    pdcp_ul_bytes: float
    prb_dl_ratio: float
    prb_ul_ratio: float
    rsrp: float
    rsrq: float
    sinr: float
    cell_pdcp_dl: float
    cell_pdcp_ul: float
    cell_prb_dl_ratio: float
    cell_prb_ul_ratio: float

    def features(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in FEATURE_NAMES], dtype=np.float64)

    def validate(self) -> None:
        for name in FEATURE_NAMES:
            lo, hi = FEATURE_RANGES[name]
            value = getattr(self, name)
            if not (lo <= value <= hi):
                raise ValueError(f"{name}={value} outside [{lo}, {hi}]")


class PolicyError(ValueError):
    pass


@dataclass(frozen=True)
class LabelingPolicy:
    """Threshold cascade over (sinr, rsrp, prb_dl_ratio).

    Per-KPI grade = number of cutoffs the value clears (a value exactly on
    a cutoff clears it: boundary goes to the higher class). Final grade is
    the minimum over graded KPIs; grade 3 = Excellent .. 0 = Poor. The prb
    cutoffs are optional and descending (lower load is better).
    """

    sinr_cutoffs: tuple[float, float, float] = (0.0, 10.0, 20.0)
    rsrp_cutoffs: tuple[float, float, float] = (-110.0, -95.0, -80.0)
    prb_dl_cutoffs: tuple[float, float, float] | None = None

    def __post_init__(self):
        for name, cuts, ascending in (("sinr_cutoffs", self.sinr_cutoffs, True),
                                      ("rsrp_cutoffs", self.rsrp_cutoffs, True),
                                      ("prb_dl_cutoffs", self.prb_dl_cutoffs, False)):
            if cuts is None:
                continue
            pairs = list(zip(cuts, cuts[1:]))
            if ascending and any(b <= a for a, b in pairs):
                raise PolicyError(f"{name} must be strictly increasing")
            if not ascending and any(b >= a for a, b in pairs):
                raise PolicyError(f"{name} must be strictly decreasing")

    def grade_arrays(self, sinr: np.ndarray, rsrp: np.ndarray,
                     prb_dl: np.ndarray) -> np.ndarray:
        grade = np.zeros(sinr.shape, dtype=np.int64)
        for cut in self.sinr_cutoffs:
            grade += (sinr >= cut).astype(np.int64)
        rg = np.zeros_like(grade)
        for cut in self.rsrp_cutoffs:
            rg += (rsrp >= cut).astype(np.int64)
        grade = np.minimum(grade, rg)
        if self.prb_dl_cutoffs is not None:
            pg = np.zeros_like(grade)
            for cut in self.prb_dl_cutoffs:
                pg += (prb_dl <= cut).astype(np.int64)
            grade = np.minimum(grade, pg)
        return grade

    def label_features(self, X: np.ndarray) -> np.ndarray:
        """Vectorized expert labels (QoEClass ints) for feature rows."""
        X = np.atleast_2d(X)
        grade = self.grade_arrays(X[:, _IDX["sinr"]], X[:, _IDX["rsrp"]],
                                  X[:, _IDX["prb_dl_ratio"]])
        return 3 - grade


def expert_label(sample: KpiSample, policy: LabelingPolicy | None = None) -> QoEClass:
    """Deterministic threshold labeling of one sample."""
    policy = policy or LabelingPolicy()
    sample.validate()
    return QoEClass(int(policy.label_features(sample.features()[None, :])[0]))


# Per-class component stats: (mean, std, low, high) indexed by QoEClass order.
# The sinr/rsrp supports leave an asymmetric gap around each expert cutoff
# (tight on the low side, wide on the high side), so a trained classifier's
# decision wall settles strictly on the lenient side of the expert threshold.
_DEFAULT_COMPONENTS: dict[str, tuple[tuple[float, float, float, float], ...]] = {
    "sinr": ((28.0, 3.0, 22.0, 40.0), (15.0, 1.8, 12.0, 19.0),
             (7.5, 1.2, 6.0, 9.5), (-2.5, 1.5, -12.0, -0.5)),
    "rsrp": ((-65.0, 5.0, -77.0, -40.0), (-87.0, 2.5, -93.5, -81.5),
             (-101.0, 2.0, -103.0, -96.5), (-104.0, 2.5, -112.0, -98.0)),
    "pdcp_dl_bytes": ((4.5e6, 4e5, 0.0, 8e6), (2.8e6, 4e5, 0.0, 8e6),
                      (1.4e6, 3e5, 0.0, 8e6), (3.0e5, 1.2e5, 0.0, 8e6)),
    "pdcp_ul_bytes": ((1.8e6, 1.5e5, 0.0, 4e6), (1.1e6, 1.5e5, 0.0, 4e6),
                      (5.0e5, 1.0e5, 0.0, 4e6), (1.0e5, 5e4, 0.0, 4e6)),
    "prb_dl_ratio": ((0.15, 0.06, 0.0, 1.0), (0.35, 0.06, 0.0, 1.0),
                     (0.55, 0.06, 0.0, 1.0), (0.82, 0.06, 0.0, 1.0)),
    "prb_ul_ratio": ((0.12, 0.06, 0.0, 1.0), (0.30, 0.06, 0.0, 1.0),
                     (0.50, 0.06, 0.0, 1.0), (0.75, 0.06, 0.0, 1.0)),
    "cell_pdcp_dl": ((2.6e7, 2.5e6, 0.0, 4e7), (1.8e7, 2.5e6, 0.0, 4e7),
                     (1.0e7, 2.0e6, 0.0, 4e7), (4.0e6, 1.5e6, 0.0, 4e7)),
    "cell_pdcp_ul": ((1.2e7, 1.2e6, 0.0, 2e7), (8.0e6, 1.2e6, 0.0, 2e7),
                     (4.5e6, 1.0e6, 0.0, 2e7), (1.5e6, 7e5, 0.0, 2e7)),
    "cell_prb_dl_ratio": ((0.30, 0.07, 0.0, 1.0), (0.45, 0.07, 0.0, 1.0),
                          (0.62, 0.07, 0.0, 1.0), (0.85, 0.07, 0.0, 1.0)),
    "cell_prb_ul_ratio": ((0.25, 0.07, 0.0, 1.0), (0.40, 0.07, 0.0, 1.0),
                          (0.58, 0.07, 0.0, 1.0), (0.80, 0.07, 0.0, 1.0)),
}


@dataclass(frozen=True)
class GeneratorConfig:
    class_weights: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)
    components: dict[str, tuple[tuple[float, float, float, float], ...]] = field(
        default_factory=lambda: dict(_DEFAULT_COMPONENTS))
    n_cells: int = 6
    policy: LabelingPolicy = field(default_factory=LabelingPolicy)
    #: tolerance on realized class frequencies vs weights (fraction)
    proportion_tolerance: float = 0.05

    def validate(self) -> None:
        if len(self.class_weights) != 4 or any(w < 0 for w in self.class_weights):
            raise ValueError("class_weights must be 4 non-negative numbers")
        if abs(sum(self.class_weights) - 1.0) > 1e-9:
            raise ValueError("class_weights must sum to 1 (unreachable class proportions)")
        for name in FEATURE_NAMES:
            if name != "rsrq" and name not in self.components:
                raise ValueError(f"missing component stats for feature {name!r}")


@dataclass(frozen=True)
class TrafficDataset:
    X: np.ndarray  # (n, 11) float64 in FEATURE_NAMES order
    ue_id: np.ndarray  # (n,) int64
    serving_cell_id: np.ndarray  # (n,) int64
    labels: np.ndarray  # (n,) int64 QoEClass values
    component: np.ndarray  # (n,) int64 mixture component each row was drawn from

    def __len__(self) -> int:
        return self.X.shape[0]

    def sample(self, i: int) -> KpiSample:
        row = self.X[i]
        return KpiSample(int(self.ue_id[i]), int(self.serving_cell_id[i]),
                         *(float(v) for v in row))


def generate_dataset(config: GeneratorConfig, n: int, seed: int) -> TrafficDataset:
    """n labeled KPI rows, deterministic per seed.

    Labels are produced by applying the config's LabelingPolicy to the
    generated features, so re-labeling reproduces them exactly.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    config.validate()
    rng = np.random.Generator(np.random.PCG64(seed))
    comp = rng.choice(4, size=n, p=np.asarray(config.class_weights, dtype=np.float64))
    X = np.empty((n, len(FEATURE_NAMES)), dtype=np.float64)
    for name in FEATURE_NAMES:
        if name == "rsrq":
            continue
        stats = config.components[name]
        means = np.array([stats[c][0] for c in range(4)])
        stds = np.array([stats[c][1] for c in range(4)])
        lows = np.array([max(stats[c][2], FEATURE_RANGES[name][0]) for c in range(4)])
        highs = np.array([min(stats[c][3], FEATURE_RANGES[name][1]) for c in range(4)])
        X[:, _IDX[name]] = np.clip(rng.normal(means[comp], stds[comp]),
                                   lows[comp], highs[comp])
    # rsrq tracks rsrp with mild noise
    rsrp = X[:, _IDX["rsrp"]]
    lo, hi = FEATURE_RANGES["rsrq"]
    X[:, _IDX["rsrq"]] = np.clip(-6.0 + 0.11 * (rsrp + 65.0) + rng.normal(0.0, 0.8, n), lo, hi)

    labels = config.policy.label_features(X)
    return TrafficDataset(
        X=X,
        ue_id=np.arange(1, n + 1, dtype=np.int64),
        serving_cell_id=rng.integers(1, config.n_cells + 1, size=n).astype(np.int64),
        labels=labels.astype(np.int64),
        component=comp.astype(np.int64),
    )


def dataset_to_csv(dataset: TrafficDataset) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["ue_id", "serving_cell_id", *FEATURE_NAMES, "label"])
    for i in range(len(dataset)):
        writer.writerow([
            int(dataset.ue_id[i]), int(dataset.serving_cell_id[i]),
            *(repr(float(v)) for v in dataset.X[i]),
            CLASS_NAMES[dataset.labels[i]],
        ])
    return buf.getvalue()


def dataset_from_csv(text: str) -> TrafficDataset:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    expected = ["ue_id", "serving_cell_id", *FEATURE_NAMES, "label"]
    if header != expected:
        raise ValueError(f"unexpected CSV header {header!r}")
    ue, cell, rows, labels = [], [], [], []
    name_to_class = {name: i for i, name in enumerate(CLASS_NAMES)}
    for row in reader:
        ue.append(int(row[0]))
        cell.append(int(row[1]))
        rows.append([float(v) for v in row[2:-1]])
        labels.append(name_to_class[row[-1]])
    return TrafficDataset(
        X=np.array(rows, dtype=np.float64),
        ue_id=np.array(ue, dtype=np.int64),
        serving_cell_id=np.array(cell, dtype=np.int64),
        labels=np.array(labels, dtype=np.int64),
        component=np.full(len(ue), -1, dtype=np.int64),
    )


def feature_bounds() -> tuple[np.ndarray, np.ndarray]:
    lo = np.array([FEATURE_RANGES[n][0] for n in FEATURE_NAMES])
    hi = np.array([FEATURE_RANGES[n][1] for n in FEATURE_NAMES])
    return lo, hi


def normalize(X: np.ndarray) -> np.ndarray:
    lo, hi = feature_bounds()
    return (X - lo) / (hi - lo)


def denormalize(Z: np.ndarray) -> np.ndarray:
    lo, hi = feature_bounds()
    return lo + Z * (hi - lo)
