"""Command-line surface for the curriculum complexity pipeline.

Subcommands: validate, metrics, boxplot, hist, anova, samplesize, generate,
study. Machine output is canonical JSON (sorted keys, 12 significant digits);
`--format table` renders human views. Exit codes: 0 success, 2 bad input or
validation failure, 3 infeasible generation target.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from curricomp.anova import (
    AnovaTable,
    TestDecision,
    TierSamples,
    hypothesis_test,
)
from curricomp.formats import (
    ComplexitySampleSet,
    ParseError,
    parse_curriculum,
    parse_samples,
    serialize_curriculum,
    serialize_samples,
)
from curricomp.jsonio import canonical_json
from curricomp.metrics import MetricConfig, curriculum_complexity
from curricomp.model import RequisiteKind, ValidationError
from curricomp.presets import (
    CRITICAL_VALUE_NOTE,
    DESIGN_E,
    DESIGN_SIGMA,
    DESIGN_Z,
    REFERENCE_PRESET_NAME,
    REFERENCE_TIERS,
    SAMPLE_SIZE_NOTE,
    TABLE_F_NOTE,
)
from curricomp.stats import (
    Histogram,
    SampleSummary,
    histogram,
    sample_size,
    summarize_sample,
)
from curricomp.svg import render_boxplot_svg
from curricomp.synthgen import (
    GeneratorConfig,
    InfeasibleTargetError,
    TierStudyResult,
    TierTarget,
    generate_curriculum,
    generate_tier_study,
)

STUDY_FILES = (
    "samples.csv",
    "report.json",
    "boxplot.json",
    "boxplot.svg",
    "histograms.json",
    "anova.txt",
)


@dataclass(frozen=True)
class SampleSizeCalc:
    sigma: float
    z: float
    e: float
    unrounded: float
    n: int


@dataclass(frozen=True)
class StudyReport:
    per_tier: tuple[tuple[str, SampleSummary, Histogram], ...]
    pooled: tuple[SampleSummary, Histogram]
    anova: AnovaTable
    decision: TestDecision
    sample_size_calc: SampleSizeCalc


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _summary_doc(s: SampleSummary) -> dict:
    return {
        "n": s.n,
        "mean": s.mean,
        "std": s.std,
        "median": s.median,
        "q1": s.q1,
        "q3": s.q3,
        "iqr": s.iqr,
        "notch_low": s.notch_low,
        "notch_high": s.notch_high,
        "whisker_low": s.whisker_low,
        "whisker_high": s.whisker_high,
        "outliers": list(s.outliers),
    }


def _histogram_doc(h: Histogram) -> dict:
    return {"bin_edges": list(h.bin_edges), "counts": list(h.counts)}


def _table_doc(t: AnovaTable) -> dict:
    return {
        "tss": t.tss,
        "sst": t.sst,
        "sse": t.sse,
        "df_between": t.df_between,
        "df_within": t.df_within,
        "mst": t.mst,
        "mse": t.mse,
        "f": t.f,
        "grand_mean": t.grand_mean,
        "group_means": list(t.group_means),
    }


def _decision_doc(d: TestDecision) -> dict:
    return {
        "alpha": d.alpha,
        "f": d.f,
        "f_critical": d.f_critical,
        "p_value": d.p_value,
        "reject_null": d.reject_null,
    }


def _decision_text(d: TestDecision) -> str:
    return "reject the null hypothesis" if d.reject_null else (
        "fail to reject the null hypothesis"
    )


def render_anova_text(table: AnovaTable, decision: TestDecision) -> str:
    """Four-column table (Sum of Squares, Deg. of Freedom, Mean Square, F)
    with Tiers/Error/Total rows, then the decision."""
    header = (
        f"{'':<8}{'Sum of Squares':>16}{'Deg. of Freedom':>17}"
        f"{'Mean Square':>13}{'F':>8}"
    )
    tiers_row = (
        f"{'Tiers':<8}{table.sst:>16.2f}{table.df_between:>17d}"
        f"{table.mst:>13.2f}{table.f:>8.2f}"
    )
    error_row = (
        f"{'Error':<8}{table.sse:>16.2f}{table.df_within:>17d}"
        f"{table.mse:>13.2f}"
    )
    total_row = (
        f"{'Total':<8}{table.tss:>16.2f}{table.df_between + table.df_within:>17d}"
    )
    return "\n".join(
        [
            header,
            tiers_row,
            error_row,
            total_row,
            "",
            f"critical value at alpha={decision.alpha:g}: "
            f"{decision.f_critical:.2f}",
            f"p-value: {decision.p_value:.6g}",
            f"decision: {_decision_text(decision)}",
        ]
    ) + "\n"


def _tier_summaries(
    samples: ComplexitySampleSet,
) -> list[tuple[str, SampleSummary]]:
    return [(label, summarize_sample(values)) for label, values in samples.tiers]


def _boxplot_doc(samples: ComplexitySampleSet) -> list[dict]:
    doc = []
    for label, summary in _tier_summaries(samples):
        doc.append(
            {
                "label": label,
                "median": summary.median,
                "q1": summary.q1,
                "q3": summary.q3,
                "notch_low": summary.notch_low,
                "notch_high": summary.notch_high,
                "whisker_low": summary.whisker_low,
                "whisker_high": summary.whisker_high,
                "outliers": list(summary.outliers),
            }
        )
    return doc


def run_study(
    targets: tuple[TierTarget, ...],
    base: GeneratorConfig,
    alpha: float = 0.05,
    sigma: float = DESIGN_SIGMA,
    z: float = DESIGN_Z,
    e: float = DESIGN_E,
    preset_name: str | None = None,
) -> tuple[TierStudyResult, StudyReport, dict[str, str]]:
    """The full study pipeline: generate tier samples, summarize, test.

    Returns the generation result, the report object, and the output
    documents keyed by file name (all deterministic in the inputs).
    """
    if len(targets) < 2:
        raise ValueError("ANOVA requires >= 2 tiers")
    result = generate_tier_study(targets, base)
    samples = result.sample_set

    table, decision = hypothesis_test(TierSamples(groups=samples.tiers), alpha)
    per_tier = tuple(
        (label, summarize_sample(values), histogram(values))
        for label, values in samples.tiers
    )
    pooled_values = [v for _, values in samples.tiers for v in values]
    pooled = (summarize_sample(pooled_values), histogram(pooled_values))
    size_calc_raw = sample_size(sigma, z, e)
    size_calc = SampleSizeCalc(
        sigma=sigma, z=z, e=e, unrounded=size_calc_raw.unrounded, n=size_calc_raw.n
    )
    report = StudyReport(
        per_tier=per_tier,
        pooled=pooled,
        anova=table,
        decision=decision,
        sample_size_calc=size_calc,
    )

    notes: list[str] = []
    if (sigma, z, e) == (DESIGN_SIGMA, DESIGN_Z, DESIGN_E):
        notes.append(SAMPLE_SIZE_NOTE)
    if preset_name == REFERENCE_PRESET_NAME:
        notes.append(TABLE_F_NOTE)
        notes.append(CRITICAL_VALUE_NOTE)

    tier_docs = []
    for tier, (label, summary, hist) in zip(result.tiers, per_tier):
        tier_docs.append(
            {
                "label": label,
                "target_mean": tier.target_mean,
                "target_std": tier.target_std,
                "achieved_mean": tier.achieved_mean,
                "achieved_std": tier.achieved_std,
                "mean_attained": tier.mean_attained,
                "std_attained": tier.std_attained,
                "summary": _summary_doc(summary),
                "histogram": _histogram_doc(hist),
            }
        )
    report_doc = {
        "alpha": alpha,
        "seed": base.seed,
        "targets_preset": preset_name,
        "per_tier": tier_docs,
        "pooled": {
            "summary": _summary_doc(pooled[0]),
            "histogram": _histogram_doc(pooled[1]),
        },
        "anova": _table_doc(table),
        "decision": _decision_doc(decision),
        "sample_size_calc": {
            "sigma": sigma,
            "z": z,
            "e": e,
            "unrounded": size_calc.unrounded,
            "n": size_calc.n,
        },
        "notes": notes,
    }
    documents = {
        "samples.csv": serialize_samples(samples),
        "report.json": canonical_json(report_doc),
        "boxplot.json": canonical_json(_boxplot_doc(samples)),
        "boxplot.svg": render_boxplot_svg(_tier_summaries(samples)),
        "histograms.json": canonical_json(
            {
                "pooled": _histogram_doc(pooled[1]),
                "per_tier": {
                    label: _histogram_doc(hist) for label, _, hist in per_tier
                },
            }
        ),
        "anova.txt": render_anova_text(table, decision),
    }
    return result, report, documents


def _parse_weights(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(
            f"--weights expects 'BLOCKING,DELAY' (two numbers), got {text!r}"
        )
    return float(parts[0]), float(parts[1])


def _parse_edge_kinds(text: str) -> frozenset[RequisiteKind]:
    kinds = set()
    for raw in text.split(","):
        name = raw.strip()
        try:
            kinds.add(RequisiteKind(name))
        except ValueError:
            valid = ", ".join(k.value for k in RequisiteKind)
            raise ValueError(
                f"unknown edge kind {name!r}; valid kinds: {valid}"
            ) from None
    return frozenset(kinds)


def cmd_validate(args: argparse.Namespace) -> int:
    curriculum, plan = parse_curriculum(_read_text(args.file))
    parts = [f"{len(curriculum.courses)} courses", f"{len(curriculum.edges)} edges"]
    if plan is not None:
        parts.append(f"{len(plan.terms)} terms")
    print("OK: " + ", ".join(parts))
    return 0


def cmd_metrics(args: argparse.Namespace) -> int:
    curriculum, plan = parse_curriculum(_read_text(args.file))
    blocking_weight, delay_weight = _parse_weights(args.weights)
    config = MetricConfig(
        blocking_weight=blocking_weight,
        delay_weight=delay_weight,
        edge_kinds=_parse_edge_kinds(args.edge_kinds),
    )
    result = curriculum_complexity(curriculum, plan, config)
    if args.format == "json":
        doc = {
            "courses": [
                {
                    "id": m.course_id,
                    "blocking": m.blocking,
                    "delay": m.delay,
                    "complexity": m.complexity,
                }
                for m in result.per_course.values()
            ],
            "per_term": list(result.per_term) if result.per_term is not None else None,
            "total": result.total,
        }
        print(canonical_json(doc), end="")
    else:
        id_width = max([len("id")] + [len(c) for c in result.per_course])
        print(f"{'id':<{id_width}}  {'blocking':>8}  {'delay':>5}  {'complexity':>10}")
        for cid, m in result.per_course.items():
            print(
                f"{cid:<{id_width}}  {m.blocking:>8d}  {m.delay:>5d}  "
                f"{m.complexity:>10.1f}"
            )
        if result.per_term is not None:
            terms = ", ".join(
                f"{i + 1}: {t:.1f}" for i, t in enumerate(result.per_term)
            )
            print(f"term totals: {terms}")
        print(f"total: {result.total:.1f}")
    return 0


def cmd_boxplot(args: argparse.Namespace) -> int:
    samples = parse_samples(_read_text(args.file))
    print(canonical_json(_boxplot_doc(samples)), end="")
    if args.svg:
        Path(args.svg).write_text(
            render_boxplot_svg(_tier_summaries(samples)), encoding="utf-8"
        )
    return 0


def cmd_hist(args: argparse.Namespace) -> int:
    samples = parse_samples(_read_text(args.file))
    if args.tier is not None:
        if args.tier not in samples.labels():
            raise ValueError(
                f"unknown tier label {args.tier!r}; available: "
                + ", ".join(samples.labels())
            )
        values = samples.values_for(args.tier)
    else:
        values = tuple(v for _, vs in samples.tiers for v in vs)
    edges = None
    if args.edges:
        edges = [float(x) for x in args.edges.split(",")]
    print(canonical_json(_histogram_doc(histogram(values, edges))), end="")
    return 0


def cmd_anova(args: argparse.Namespace) -> int:
    samples = parse_samples(_read_text(args.file))
    table, decision = hypothesis_test(TierSamples(groups=samples.tiers), args.alpha)
    if args.format == "json":
        doc = {"table": _table_doc(table), "decision": _decision_doc(decision)}
        print(canonical_json(doc), end="")
    else:
        print(render_anova_text(table, decision), end="")
    return 0


def cmd_samplesize(args: argparse.Namespace) -> int:
    result = sample_size(args.sigma, args.z, args.e)
    note = None
    if (args.sigma, args.z, args.e) == (DESIGN_SIGMA, DESIGN_Z, DESIGN_E):
        note = SAMPLE_SIZE_NOTE
    if args.format == "json":
        doc = {"unrounded": result.unrounded, "n": result.n, "note": note}
        print(canonical_json(doc), end="")
    else:
        print(f"unrounded: {result.unrounded:.6g}")
        print(f"n: {result.n}")
        if note:
            print(f"note: {note}")
    return 0


def _generator_config(args: argparse.Namespace, file_values: dict) -> GeneratorConfig:
    def setting(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        if key in file_values:
            return file_values[key]
        return default

    courses = setting(
        getattr(args, "courses_per_term", None), "courses_per_term", (4, 6)
    )
    if isinstance(courses, str):
        lo, hi = (int(x) for x in courses.split(","))
        courses = (lo, hi)
    elif isinstance(courses, list):
        courses = tuple(courses)
    return GeneratorConfig(
        seed=setting(getattr(args, "seed", None), "seed", 0),
        num_terms=setting(getattr(args, "num_terms", None), "num_terms", 8),
        courses_per_term=courses,
        edge_probability=setting(
            getattr(args, "edge_probability", None), "edge_probability", 0.25
        ),
        max_prereqs_per_course=setting(
            getattr(args, "max_prereqs", None), "max_prereqs_per_course", 3
        ),
        corequisite_probability=setting(
            getattr(args, "coreq_probability", None), "corequisite_probability", 0.05
        ),
    )


def cmd_generate(args: argparse.Namespace) -> int:
    config = _generator_config(args, {})
    curriculum, plan = generate_curriculum(config)
    text = serialize_curriculum(curriculum, plan)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="")
    else:
        print(text, end="")
    return 0


def _load_targets(spec_text: str) -> tuple[TierTarget, ...]:
    """Targets from a JSON file: a list of {label, mean, std, count}."""
    try:
        raw = json.loads(spec_text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"targets file is not valid JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise ValueError("targets file must hold a JSON array of tier objects")
    targets = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise ValueError(f"targets[{i}] must be an object")
        try:
            targets.append(
                TierTarget(
                    label=str(entry["label"]),
                    target_mean=float(entry["mean"]),
                    target_std=float(entry["std"]),
                    count=int(entry["count"]),
                )
            )
        except KeyError as exc:
            raise ValueError(
                f"targets[{i}] is missing required key {exc.args[0]!r} "
                "(need label, mean, std, count)"
            ) from None
    return tuple(targets)


def cmd_study(args: argparse.Namespace) -> int:
    file_values: dict = {}
    if args.config:
        try:
            file_values = json.loads(_read_text(args.config))
        except json.JSONDecodeError as exc:
            raise ValueError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(file_values, dict):
            raise ValueError("config file must hold a JSON object")

    def setting(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        if key in file_values:
            return file_values[key]
        return default

    targets_spec = setting(args.targets, "targets", REFERENCE_PRESET_NAME)
    alpha = float(setting(args.alpha, "alpha", 0.05))
    sigma = float(setting(args.sigma, "sigma", DESIGN_SIGMA))
    z = float(setting(args.z, "z", DESIGN_Z))
    e = float(setting(args.e, "e", DESIGN_E))
    out_dir = setting(args.out, "out", None)
    if out_dir is None:
        raise ValueError("an output directory is required (--out DIR)")

    if targets_spec == REFERENCE_PRESET_NAME:
        targets = REFERENCE_TIERS
        preset_name = REFERENCE_PRESET_NAME
    else:
        targets = _load_targets(_read_text(targets_spec))
        preset_name = None

    base = _generator_config(args, file_values)
    _, report, documents = run_study(
        targets, base, alpha=alpha, sigma=sigma, z=z, e=e, preset_name=preset_name
    )

    out_path = Path(out_dir)
    out_path.mkdir(parents=True, exist_ok=True)
    for name in STUDY_FILES:
        (out_path / name).write_text(documents[name], encoding="utf-8", newline="")
    print(f"decision: {_decision_text(report.decision)}")
    print(
        f"F = {report.decision.f:.2f}, critical = {report.decision.f_critical:.2f}, "
        f"p = {report.decision.p_value:.6g}"
    )
    print(f"wrote {', '.join(STUDY_FILES)} to {out_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curricomp",
        description=(
            "Structural complexity of curriculum requisite graphs, with "
            "box-plot, sample-size, ANOVA, and synthetic-study tooling."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a curriculum CSV")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("metrics", help="blocking/delay/complexity per course")
    p.add_argument("file")
    p.add_argument("--weights", default="1,1", help="BLOCKING,DELAY weights")
    p.add_argument(
        "--edge-kinds",
        default="prerequisite,corequisite,strict_corequisite",
        help="comma-separated kinds included in the metric graph",
    )
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("boxplot", help="notched box-plot data from samples")
    p.add_argument("file")
    p.add_argument("--svg", help="also render an SVG to this path")
    p.set_defaults(func=cmd_boxplot)

    p = sub.add_parser("hist", help="histogram of complexity samples")
    p.add_argument("file")
    p.add_argument("--tier", help="restrict to one tier label (default: pooled)")
    p.add_argument("--edges", help="explicit comma-separated bin edges")
    p.set_defaults(func=cmd_hist)

    p = sub.add_parser("anova", help="one-way ANOVA over tiered samples")
    p.add_argument("file")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_anova)

    p = sub.add_parser("samplesize", help="required per-tier sample size")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--e", type=float, required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_samplesize)

    p = sub.add_parser("generate", help="generate one synthetic curriculum CSV")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--num-terms", type=int, default=None)
    p.add_argument("--courses-per-term", default=None, help="LO,HI inclusive")
    p.add_argument("--edge-probability", type=float, default=None)
    p.add_argument("--max-prereqs", type=int, default=None)
    p.add_argument("--coreq-probability", type=float, default=None)
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("study", help="run the full synthetic tier study")
    p.add_argument(
        "--targets",
        default=None,
        help=f'"{REFERENCE_PRESET_NAME}" preset or a JSON targets file',
    )
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--z", type=float, default=None)
    p.add_argument("--e", type=float, default=None)
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--config", help="JSON file of defaults (flags override)")
    p.set_defaults(func=cmd_study)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleTargetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
