"""Command-line interface.

Subcommands: validate-catalog, assess, prioritize, what-if, recommend,
attack demo, attack estimate, export, serve. Outputs are deterministic for
fixed inputs and seeds; exit status 0 on success.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..advisor import DefenderContext, permissive_context, recommend, recommendations_to_csv
from ..catalog import (
    CatalogError,
    CatalogValidationError,
    load_bundled_catalog,
    load_catalog,
    load_ef_overrides,
    validate_catalog,
)
from ..engine import (
    ProfileError,
    UseCaseProfile,
    assess,
    format_risk,
    load_bundled_questions,
    load_questions,
    parse_questions,
    result_to_csv,
    what_if,
)


@dataclass(frozen=True)
class CommandOutcome:
    exit_status: int
    summary: str
    payload_paths: tuple[str, ...] = ()


def traffic_steering_project_path() -> Path:
    return Path(str(resources.files("oransec").joinpath("data/traffic_steering.json")))


def _load_project(path: str):
    doc = json.loads(Path(path).read_text())
    profile = UseCaseProfile.from_doc(doc["profile"])
    questions = (parse_questions(doc["questions"]) if "questions" in doc
                 else load_bundled_questions())
    return doc, profile, questions


def _load_catalog_arg(args) -> object:
    overrides = None
    if getattr(args, "ef_overrides", None):
        overrides = load_ef_overrides(args.ef_overrides)
    if getattr(args, "catalog", None):
        return load_catalog(args.catalog, ef_overrides=overrides)
    return load_bundled_catalog(ef_overrides=overrides)


def _write_result(result, out: str | None, fmt: str) -> tuple[str, ...]:
    if fmt == "csv":
        text = result_to_csv(result)
    else:
        text = json.dumps(result.to_doc(), indent=1) + "\n"
    if out:
        Path(out).write_text(text)
        return (out,)
    sys.stdout.write(text)
    return ()


def cmd_validate_catalog(args) -> CommandOutcome:
    try:
        catalog = load_catalog(args.path or str(
            resources.files("oransec").joinpath("data/catalog.json")))
    except CatalogValidationError as exc:
        for v in exc.violations:
            print(f"{v.path}: {v.message}", file=sys.stderr)
        return CommandOutcome(1, f"{len(exc.violations)} violations")
    except CatalogError as exc:
        print(str(exc), file=sys.stderr)
        return CommandOutcome(1, "parse error")
    violations = validate_catalog(catalog)
    print(f"{len(violations)} violations "
          f"({len(catalog.techniques)} techniques, "
          f"{len(catalog.countermeasures)} countermeasures, catalog {catalog.version})")
    return CommandOutcome(0, "0 violations")


def cmd_assess(args) -> CommandOutcome:
    catalog = _load_catalog_arg(args)
    _, profile, questions = _load_project(args.project)
    result = assess(profile, questions, catalog)
    paths = _write_result(result, args.out, args.format)
    top = result.ranked_entries()[0]
    summary = (f"{len(result.entries)} entries; top: {top.technique} ({top.threat}) "
               f"risk {format_risk(top.risk)}")
    print(summary)
    return CommandOutcome(0, summary, paths)


def cmd_prioritize(args) -> CommandOutcome:
    catalog = _load_catalog_arg(args)
    _, profile, questions = _load_project(args.project)
    result = assess(profile, questions, catalog)
    limit = args.top or 10
    print(f"{'rank':>4} {'technique':10} {'threat':6} {'risk':>6} feasible")
    for rank, entry in enumerate(result.ranked_entries()[:limit], start=1):
        print(f"{rank:>4} {entry.technique:10} {entry.threat:6} "
              f"{format_risk(entry.risk):>6} {str(entry.feasible).lower()}")
    return CommandOutcome(0, f"top {limit} of {len(result.entries)} entries")


def cmd_what_if(args) -> CommandOutcome:
    catalog = _load_catalog_arg(args)
    _, profile, questions = _load_project(args.project)
    patch = json.loads(Path(args.patch).read_text())
    report = what_if(profile, patch, questions, catalog)
    moved = [d for d in report.deltas if d.new_risk != d.old_risk]
    doc = report.to_doc()
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=1) + "\n")
        paths = (args.out,)
    else:
        json.dump(doc, sys.stdout, indent=1)
        sys.stdout.write("\n")
        paths = ()
    summary = f"{len(moved)} of {len(report.deltas)} entries changed risk"
    print(summary, file=sys.stderr)
    return CommandOutcome(0, summary, paths)


def cmd_recommend(args) -> CommandOutcome:
    catalog = _load_catalog_arg(args)
    _, profile, questions = _load_project(args.project)
    result = assess(profile, questions, catalog)
    ctx = (DefenderContext.from_doc(json.loads(Path(args.context).read_text()))
           if args.context else permissive_context())
    recs = recommend(result, ctx, catalog, top_n=args.top or 5)
    text = recommendations_to_csv(recs)
    if args.out:
        Path(args.out).write_text(text)
        paths = (args.out,)
    else:
        sys.stdout.write(text)
        paths = ()
    summary = f"{len(recs)} applicable countermeasures for top {args.top or 5} threats"
    print(summary, file=sys.stderr)
    return CommandOutcome(0, summary, paths)


def cmd_attack_demo(args) -> CommandOutcome:
    import numpy as np

    from ..attacklab import (
        FEATURE_NAMES, HsjaParams, LabelingPolicy, QoEClass, attack_pair_pool,
        demo_dataset, demo_holdout_accuracy, demo_model, denormalize, normalize,
        run_attack_trial, trace_path_csv,
    )

    dataset = demo_dataset()
    model = demo_model()
    policy = LabelingPolicy()
    seed = args.seed if args.seed is not None else 13
    src_pool, init_pool = attack_pair_pool(model, dataset, QoEClass.EXCELLENT, QoEClass.POOR)
    rng = np.random.Generator(np.random.PCG64(seed))
    source_i = int(src_pool[rng.integers(0, src_pool.size)])
    init_Z = normalize(dataset.X[init_pool])
    z_source = normalize(dataset.X[source_i])
    init_i = int(init_pool[np.argmin(np.linalg.norm(init_Z - z_source, axis=1))])
    trace = run_attack_trial(model, dataset, HsjaParams(seed=seed), source_i, init_i)

    final = denormalize(trace.best_adversarial)
    predicted = QoEClass(int(model.predict(final[None, :])[0])).name
    labeled = QoEClass(int(policy.label_features(final[None, :])[0])).name
    doc = trace.to_doc()
    doc["final_model_class"] = predicted
    doc["final_expert_label"] = labeled
    doc["holdout_accuracy"] = demo_holdout_accuracy()
    paths = []
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=1) + "\n")
        paths.append(args.out)
    if args.path_csv:
        Path(args.path_csv).write_text(
            trace_path_csv(trace, FEATURE_NAMES, point_transform=denormalize))
        paths.append(args.path_csv)
    summary = (f"queries={trace.queries} distance={trace.best_distance:.4f} "
               f"model says {predicted}, expert labels {labeled}")
    print(summary)
    return CommandOutcome(0, summary, tuple(paths))


def cmd_attack_estimate(args) -> CommandOutcome:
    from ..attacklab import (
        HsjaParams, append_estimate, demo_dataset, demo_model, estimate_effectiveness,
    )

    if args.seed is None:
        print("--seed is required for attack estimate", file=sys.stderr)
        return CommandOutcome(2, "seed missing")
    dataset = demo_dataset()
    model = demo_model()
    est = estimate_effectiveness(model, dataset, HsjaParams(seed=args.seed),
                                 trials=args.trials, seed=args.seed,
                                 technique_id=args.technique,
                                 parallel=args.parallel)
    paths = ()
    if args.out:
        append_estimate(args.out, est)
        paths = (args.out,)
    summary = (f"{est.technique_id}: {est.successes}/{est.trials} success rate "
               f"{est.success_rate:.3f} (95% CI {est.wilson_low:.3f}..{est.wilson_high:.3f}), "
               f"median queries {est.median_queries:.0f}")
    print(summary)
    return CommandOutcome(0, summary, paths)


def cmd_export(args) -> CommandOutcome:
    return cmd_assess(args)


def cmd_serve(args) -> CommandOutcome:
    import uvicorn

    from .service import create_app
    from .workspace import Workspace

    root = Path(args.workspace)
    if not (root / "catalog.json").exists():
        Workspace.create(root)
    app = create_app(Workspace(root))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return CommandOutcome(0, "server stopped")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oransec",
        description="Adversarial-ML risk assessment for ML use cases in O-RAN")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, project=True):
        if project:
            p.add_argument("--project", required=True, help="assessment project JSON")
        p.add_argument("--catalog", help="catalog JSON (default: bundled)")
        p.add_argument("--ef-overrides", help="estimates file with Ef overrides")
        p.add_argument("--out", help="output path")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--seed", type=int)
        p.add_argument("--top", type=int)

    p = sub.add_parser("validate-catalog", help="validate a catalog document")
    p.add_argument("path", nargs="?", help="catalog JSON (default: bundled)")
    p.set_defaults(func=cmd_validate_catalog)

    p = sub.add_parser("assess", help="run a full assessment")
    common(p)
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("prioritize", help="print the prioritized threat list")
    common(p)
    p.set_defaults(func=cmd_prioritize)

    p = sub.add_parser("what-if", help="recompute under a profile patch")
    common(p)
    p.add_argument("--patch", required=True, help="profile patch JSON")
    p.set_defaults(func=cmd_what_if)

    p = sub.add_parser("recommend", help="rank countermeasures for top threats")
    common(p)
    p.add_argument("--context", help="defender context JSON (default: permissive)")
    p.set_defaults(func=cmd_recommend)

    attack = sub.add_parser("attack", help="attack lab").add_subparsers(
        dest="attack_command", required=True)
    p = attack.add_parser("demo", help="one traffic-steering evasion run")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="trace JSON output path")
    p.add_argument("--path-csv", help="per-iteration attack path CSV (for plotting)")
    p.set_defaults(func=cmd_attack_demo)
    p = attack.add_parser("estimate", help="empirical effectiveness estimate")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--technique", default="AT2.2")
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--out", help="estimates file to append to")
    p.set_defaults(func=cmd_attack_estimate)

    p = sub.add_parser("export", help="export an assessment report")
    common(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--workspace", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8470)
    p.set_defaults(func=cmd_serve)

    return parser


def run_command(argv: list[str]) -> CommandOutcome:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandOutcome(int(exc.code or 0), "argument error")
    try:
        return args.func(args)
    except (CatalogError, ProfileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CommandOutcome(1, str(exc))
    except FileNotFoundError as exc:
        print(f"error: cannot read {exc.filename}", file=sys.stderr)
        return CommandOutcome(1, f"unreadable file {exc.filename}")


def main() -> None:
    sys.exit(run_command(sys.argv[1:]).exit_status)


if __name__ == "__main__":
    main()
