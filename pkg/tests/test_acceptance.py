"""Acceptance checks for the whole package, one test per criterion.

Each test prints a PASS/FAIL line (visible with `pytest -s`) and asserts the
same condition, with tolerances stated inline.
"""

import contextlib
import dataclasses
import io
import json
import os
import random
import tempfile
from pathlib import Path

from curricomp.anova import (
    TierSamples,
    anova_table,
    f_cdf,
    f_quantile,
    hypothesis_test,
    mean_squares,
)
from curricomp.cli import main, run_study
from curricomp.formats import parse_curriculum, parse_samples, serialize_curriculum
from curricomp.metrics import blocking_factor, curriculum_complexity
from curricomp.model import Course, Curriculum, RequisiteEdge, build_requisite_graph
from curricomp.presets import REFERENCE_TIERS
from curricomp.stats import notch_interval, sample_size, summarize_sample
from curricomp.svg import render_boxplot_svg
from curricomp.synthgen import GeneratorConfig, generate_curriculum

from oracles import (
    all_paths,
    brute_reachable,
    enumerate_small_dags,
    f_cdf_by_integration,
    random_dag,
)

GOLDEN_DIR = Path(__file__).parent / "golden"
CSV_HEADER = (
    "Course ID,Course Name,Prefix,Number,Prerequisites,Corequisites,"
    "Strict-Corequisites,Credit Hours,Term"
)


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
    assert ok, f"criterion {num}: {detail}"


def _curriculum(vertices, edges) -> Curriculum:
    return Curriculum(
        courses=tuple(Course(id=v) for v in vertices),
        edges=tuple(RequisiteEdge(s, t) for s, t in sorted(edges)),
    )


def _longest_containing(vertices, edges):
    best = {v: 0 for v in vertices}
    for path in all_paths(vertices, edges):
        length = len(path)
        for v in path:
            if length > best[v]:
                best[v] = length
    return best


def test_criterion_01_metrics_match_exhaustive_oracles():
    rng = random.Random(20260817)
    random_checked = 0
    for _ in range(500):
        vertices, edges = random_dag(rng, max_vertices=12)
        graph = build_requisite_graph(_curriculum(vertices, edges))
        metrics = curriculum_complexity(_curriculum(vertices, edges))
        expected_delay = _longest_containing(vertices, edges)
        for v in vertices:
            assert blocking_factor(graph, v) == len(brute_reachable(vertices, edges, v))
            assert metrics.per_course[v].blocking == len(brute_reachable(vertices, edges, v))
            assert metrics.per_course[v].delay == expected_delay[v]
        random_checked += 1

    exhaustive_checked = 0
    for vertices, edges in enumerate_small_dags(6):
        metrics = curriculum_complexity(_curriculum(vertices, edges))
        expected_delay = _longest_containing(vertices, edges)
        for v in vertices:
            assert metrics.per_course[v].delay == expected_delay[v]
        exhaustive_checked += 1

    _report(
        1,
        random_checked == 500 and exhaustive_checked == 33867,
        f"blocking/delay equal brute force exactly on {random_checked} random "
        f"DAGs (<=12 vertices) and {exhaustive_checked} exhaustive DAGs "
        "(<=6 vertices)",
    )


def test_criterion_02_hand_fixtures_are_exact():
    chain = _curriculum("ABCD", [("A", "B"), ("B", "C"), ("C", "D")])
    single = _curriculum("AB", [("A", "B")])
    isolated = _curriculum("A", [])
    totals = (
        curriculum_complexity(chain).total,
        curriculum_complexity(single).total,
        curriculum_complexity(isolated).total,
    )
    _report(
        2,
        totals == (22.0, 5.0, 1.0),
        f"chain/single-edge/isolated totals {totals} == (22.0, 5.0, 1.0) exactly",
    )


def test_criterion_03_sample_size_formula_and_note():
    result = sample_size(60.0, 1.96, 30.0)
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        rc = main(["samplesize", "--sigma", "60", "--z", "1.96", "--e", "30"])
    note_shown = rc == 0 and "note:" in buf.getvalue() and "20" in buf.getvalue()
    ok = abs(result.unrounded - 15.3664) <= 1e-4 and result.n == 16 and note_shown
    _report(
        3,
        ok,
        f"sample_size(60, 1.96, 30) = {result.unrounded:.6f} -> n={result.n} "
        "(want 15.3664 +/- 1e-4 -> 16) and the CLI notes the reference "
        "study's choice of 20",
    )


def test_criterion_04_anova_identities_over_random_samples():
    rng = random.Random(424242)
    worst_decomp = 0.0
    worst_invariance = 0.0
    for _ in range(1000):
        k = rng.randint(2, 5)
        groups = tuple(
            (
                f"g{i}",
                tuple(rng.uniform(0.0, 200.0) for _ in range(rng.randint(2, 30))),
            )
            for i in range(k)
        )
        table = anova_table(TierSamples(groups=groups))
        decomp_err = abs(table.tss - (table.sst + table.sse)) / max(1.0, table.tss)
        worst_decomp = max(worst_decomp, decomp_err)

        shift = rng.uniform(-500.0, 500.0)
        scale = rng.uniform(0.1, 10.0)
        moved = anova_table(
            TierSamples(
                groups=tuple(
                    (label, tuple(scale * x + shift for x in values))
                    for label, values in groups
                )
            )
        )
        inv_err = abs(moved.f - table.f) / max(1.0, abs(table.f))
        worst_invariance = max(worst_invariance, inv_err)

    ok = worst_decomp <= 1e-9 and worst_invariance <= 1e-9
    _report(
        4,
        ok,
        "over 1000 random tier samples, worst TSS=SST+SSE relative error "
        f"{worst_decomp:.2e} and worst F shift/scale-invariance error "
        f"{worst_invariance:.2e} (both need <= 1e-9)",
    )


def test_criterion_05_reference_study_table_rows():
    ms = mean_squares(46735.0, 2, 102133.0, 52)
    doc_notes = " ".join(_study_notes(seed=0))
    ok = (
        abs(ms.mst - 23367.5) <= 0.5
        and abs(ms.mse - 1964.1) <= 0.5
        and abs(ms.f - 11.90) <= 0.01
        and "11.09" in doc_notes
    )
    _report(
        5,
        ok,
        f"rows 46735/2 and 102133/52 give MST={ms.mst:.1f} (+/-0.5 of "
        f"23367.5), MSE={ms.mse:.1f} (+/-0.5 of 1964.1), F={ms.f:.2f} "
        "(+/-0.01 of 11.90), and the study report documents the reference "
        "study's printed 11.09",
    )


def _study_notes(seed: int) -> list[str]:
    _, _, documents = run_study(
        REFERENCE_TIERS, GeneratorConfig(seed=seed), preset_name="paper"
    )
    return json.loads(documents["report.json"])["notes"]


def test_criterion_06_f_distribution_numerics():
    q54 = f_quantile(0.95, 2, 54)
    q60 = f_quantile(0.95, 2, 60)
    oracle_p = f_cdf_by_integration(q60, 2, 60)
    medians_ok = all(abs(f_cdf(1.0, d, d) - 0.5) <= 1e-9 for d in (1, 2, 10, 54))

    worst_identity = 0.0
    grid = [0.01 * (100.0 / 0.01) ** (i / 24) for i in range(25)]
    for d1, d2 in [(1, 1), (1, 2), (2, 1), (2, 2), (5, 2), (10, 1), (2, 5), (3, 3)]:
        for x in grid:
            p = f_cdf(x, d1, d2)
            err = abs(f_quantile(p, d1, d2) - x) / max(1.0, x)
            worst_identity = max(worst_identity, err)

    ok = (
        3.15 <= q54 <= 3.18
        and abs(q60 - 3.150) <= 0.005
        and abs(oracle_p - 0.95) <= 1e-7
        and medians_ok
        and worst_identity <= 1e-6
    )
    _report(
        6,
        ok,
        f"quantile(0.95; 2,54)={q54:.4f} in [3.15, 3.18]; quantile(0.95; 2,60)"
        f"={q60:.4f} within 0.005 of 3.150 (integration oracle cdf="
        f"{oracle_p:.9f}); equal-df median cdf within 1e-9; quantile/cdf "
        f"round-trip worst scaled error {worst_identity:.2e} (needs <= 1e-6)",
    )


def test_criterion_07_two_group_test_matches_t_test():
    from scipy import stats as scipy_stats

    rng = random.Random(77)
    worst = 0.0
    for _ in range(100):
        a = [rng.gauss(100.0, 20.0) for _ in range(rng.randint(2, 25))]
        b = [rng.gauss(110.0, 25.0) for _ in range(rng.randint(2, 25))]
        _, decision = hypothesis_test(
            TierSamples(groups=(("a", tuple(a)), ("b", tuple(b)))), 0.05
        )
        expected = scipy_stats.ttest_ind(a, b, equal_var=True).pvalue
        worst = max(worst, abs(decision.p_value - expected))
    _report(
        7,
        worst <= 1e-8,
        f"two-group F-test p-value matches pooled t-test within {worst:.2e} "
        "on 100 seeded pairs (needs <= 1e-8)",
    )


def test_criterion_08_study_rejects_across_seeds(tmp_path):
    rejections = 0
    worst_mean_err = 0.0
    for seed in range(100):
        result, report, _ = run_study(REFERENCE_TIERS, GeneratorConfig(seed=seed))
        rejections += report.decision.reject_null
        for tier, target in zip(result.tiers, REFERENCE_TIERS):
            worst_mean_err = max(
                worst_mean_err, abs(tier.achieved_mean - target.target_mean)
            )

    out = tmp_path / "study"
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        rc = main(["study", "--seed", "0", "--out", str(out)])
    files_ok = rc == 0 and all(
        (out / name).exists()
        for name in (
            "samples.csv", "report.json", "boxplot.json",
            "boxplot.svg", "histograms.json", "anova.txt",
        )
    )

    ok = rejections >= 95 and worst_mean_err <= 5.0 and files_ok
    _report(
        8,
        ok,
        f"equal-means null rejected at alpha=0.05 in {rejections}/100 seeds "
        f"(needs >= 95); worst tier-mean error {worst_mean_err:.2f} (needs "
        "<= 5); CLI study run writes all six documents",
    )


def test_criterion_09_notch_golden_boxplot_and_svg():
    notch_ok = notch_interval(100.0, 40.0, 16) == (84.3, 115.7)

    fixture = "tier,complexity\n" + "".join(f"fixture,{v}\n" for v in range(1, 10))
    fixture_path = GOLDEN_DIR / "boxplot_1to9.json"
    buf = io.StringIO()
    with tempfile.NamedTemporaryFile("w", suffix=".csv", delete=False) as fh:
        fh.write(fixture)
        tmp_name = fh.name
    try:
        with contextlib.redirect_stdout(buf):
            rc = main(["boxplot", tmp_name])
    finally:
        os.unlink(tmp_name)
    golden_ok = rc == 0 and buf.getvalue().encode() == fixture_path.read_bytes()

    samples = parse_samples(fixture)
    tiers = [(label, summarize_sample(values)) for label, values in samples.tiers]
    svg_ok = render_boxplot_svg(tiers) == render_boxplot_svg(tiers)

    _report(
        9,
        notch_ok and golden_ok and svg_ok,
        "notch_interval(100, 40, 16) == (84.3, 115.7) exactly; 1..9 box-plot "
        "JSON matches the golden bytes; repeated SVG renders are "
        "byte-identical",
    )


def test_criterion_10_round_trip_and_fuzz(tmp_path):
    round_trips = 0
    for seed in range(100):
        cfg = GeneratorConfig(seed=seed, num_terms=5, courses_per_term=(2, 5))
        curriculum, plan = generate_curriculum(cfg)
        text = serialize_curriculum(curriculum, plan)
        again, again_plan = parse_curriculum(text)
        # the CSV carries no curriculum-level name/institution columns, so
        # identity holds on everything the format can express
        assert again == dataclasses.replace(curriculum, name="", institution="")
        assert again_plan is not None
        assert tuple((t.index, t.course_ids) for t in again_plan.terms) == tuple(
            (t.index, t.course_ids) for t in plan.terms
        )
        assert serialize_curriculum(again, again_plan) == text
        round_trips += 1

    rng = random.Random(0xFEED)
    fuzz_path = tmp_path / "fuzz.csv"
    codes = set()
    header_bytes = (CSV_HEADER + "\n").encode()
    for i in range(10_000):
        blob = bytes(rng.randrange(256) for _ in range(rng.randrange(300)))
        if i % 10 < 3:  # bias some inputs past the header check
            blob = header_bytes + blob
        fuzz_path.write_bytes(blob)
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            codes.add(main(["validate", str(fuzz_path)]))
    fuzz_ok = codes <= {0, 2}

    _report(
        10,
        round_trips == 100 and fuzz_ok,
        f"parse(serialize(c)) identity on {round_trips} generated curricula; "
        f"10,000 fuzzed inputs exit with codes {sorted(codes)} (allowed: 0, 2)",
    )
