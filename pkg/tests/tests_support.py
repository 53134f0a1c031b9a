"""Shared helpers for building synthetic engine inputs in tests."""

from oransec.catalog import ImpactKind
from oransec.catalog.model import (
    ActorFeasibility,
    AttackTechnique,
    CAPABILITY_CODES,
    MlHost,
    RicLocation,
)


def synthetic_technique(req, impacts=(ImpactKind.TAMPERING,), ef=1.0,
                        tid="AT1.1", family="AF1"):
    full_req = {c: 0.0 for c in CAPABILITY_CODES}
    full_req.update(req)
    return AttackTechnique(
        id=tid, family=family, variant_label="synthetic",
        req=full_req,
        impacts={k: (1 if k in impacts else 0) for k in ImpactKind},
        effectiveness=ef,
        feasibility=ActorFeasibility(
            a1={h: False for h in MlHost},
            a2={(loc, f"DS{i}"): False for loc in RicLocation for i in range(1, 6)},
            a3=False, a4=False, a5=False, a6=False),
    )
