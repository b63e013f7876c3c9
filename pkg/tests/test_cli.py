import json

import pytest

from curricomp.cli import main, run_study
from curricomp.formats import parse_curriculum
from curricomp.presets import REFERENCE_TIERS
from curricomp.synthgen import GeneratorConfig

HEADER = (
    "Course ID,Course Name,Prefix,Number,Prerequisites,Corequisites,"
    "Strict-Corequisites,Credit Hours,Term"
)
CHAIN_CSV = "\n".join(
    [
        HEADER,
        "A,First,X,1,,,,3,1",
        "B,Second,X,2,A,,,3,2",
        "C,Third,X,3,B,,,3,3",
        "D,Fourth,X,4,C,,,3,4",
    ]
) + "\n"
SAMPLES_CSV = "tier,complexity\n" + "".join(
    f"{label},{v}\n"
    for label, values in (("low", (1, 2, 3, 4, 5)), ("high", (6, 7, 8, 9, 10)))
    for v in values
)


@pytest.fixture
def chain_file(tmp_path):
    path = tmp_path / "chain.csv"
    path.write_text(CHAIN_CSV)
    return str(path)


@pytest.fixture
def samples_file(tmp_path):
    path = tmp_path / "samples.csv"
    path.write_text(SAMPLES_CSV)
    return str(path)


class TestValidate:
    def test_ok_with_terms(self, chain_file, capsys):
        assert main(["validate", chain_file]) == 0
        assert capsys.readouterr().out == "OK: 4 courses, 3 edges, 4 terms\n"

    def test_ok_without_terms(self, tmp_path, capsys):
        path = tmp_path / "c.csv"
        path.write_text(HEADER + "\nA,First,X,1,,,,3,\n")
        assert main(["validate", str(path)]) == 0
        assert capsys.readouterr().out == "OK: 1 courses, 0 edges\n"

    def test_parse_error_exits_2(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("bad,header\n")
        assert main(["validate", str(path)]) == 2
        err = capsys.readouterr().err
        assert err.startswith("error: line 1")

    def test_missing_file_exits_2(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path / "absent.csv")]) == 2
        assert "error:" in capsys.readouterr().err

    def test_unknown_subcommand_is_usage_error(self):
        with pytest.raises(SystemExit):
            main(["frobnicate"])


class TestMetrics:
    def test_json_document(self, chain_file, capsys):
        assert main(["metrics", chain_file]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["total"] == 22
        assert doc["per_term"] == [7, 6, 5, 4]
        by_id = {c["id"]: c for c in doc["courses"]}
        assert by_id["A"] == {"id": "A", "blocking": 3, "delay": 4, "complexity": 7}

    def test_weights_flag(self, chain_file, capsys):
        assert main(["metrics", chain_file, "--weights", "2,0.5"]) == 0
        assert json.loads(capsys.readouterr().out)["total"] == 20

    def test_delay_only_weights(self, chain_file, capsys):
        assert main(["metrics", chain_file, "--weights", "0,1"]) == 0
        assert json.loads(capsys.readouterr().out)["total"] == 16

    def test_empty_curriculum(self, tmp_path, capsys):
        path = tmp_path / "empty.csv"
        path.write_text(HEADER + "\n")
        assert main(["metrics", str(path)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc == {"courses": [], "per_term": None, "total": 0}

    def test_emitted_total_equals_sum_of_courses(self, tmp_path, capsys):
        gen = tmp_path / "gen.csv"
        assert main(["generate", "--seed", "31", "--out", str(gen)]) == 0
        capsys.readouterr()
        assert main(["metrics", str(gen)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["total"] == sum(c["complexity"] for c in doc["courses"])

    def test_edge_kinds_flag(self, tmp_path, capsys):
        path = tmp_path / "c.csv"
        path.write_text(
            HEADER + "\nA,First,X,1,,,,3,1\nB,Second,X,2,,A,,3,1\n"
        )
        assert main(["metrics", str(path), "--edge-kinds", "prerequisite"]) == 0
        assert json.loads(capsys.readouterr().out)["total"] == 2

    def test_table_format(self, chain_file, capsys):
        assert main(["metrics", chain_file, "--format", "table"]) == 0
        out = capsys.readouterr().out
        assert "total: 22.0" in out
        assert "term totals: 1: 7.0, 2: 6.0, 3: 5.0, 4: 4.0" in out

    def test_bad_weights_exit_2(self, chain_file, capsys):
        assert main(["metrics", chain_file, "--weights", "nope"]) == 2
        assert main(["metrics", chain_file, "--edge-kinds", "sorcery"]) == 2


class TestBoxplot:
    def test_json_per_tier(self, samples_file, capsys):
        assert main(["boxplot", samples_file]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert [d["label"] for d in doc] == ["low", "high"]
        assert doc[0]["median"] == 3
        assert doc[0]["q1"] == 2
        assert doc[0]["q3"] == 4
        assert doc[0]["outliers"] == []

    def test_zero_iqr_notch_collapses_to_median(self, tmp_path, capsys):
        path = tmp_path / "flat.csv"
        path.write_text("tier,complexity\na,5\na,5\na,5\n")
        assert main(["boxplot", str(path)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc[0]["notch_low"] == doc[0]["median"] == doc[0]["notch_high"] == 5

    def test_svg_written_and_deterministic(self, samples_file, tmp_path, capsys):
        a = tmp_path / "a.svg"
        b = tmp_path / "b.svg"
        assert main(["boxplot", samples_file, "--svg", str(a)]) == 0
        assert main(["boxplot", samples_file, "--svg", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()
        text = a.read_text()
        assert text.startswith("<svg") and text.rstrip().endswith("</svg>")


class TestHist:
    def test_pooled(self, samples_file, capsys):
        assert main(["hist", samples_file]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert sum(doc["counts"]) == 10

    def test_single_tier_with_edges(self, samples_file, capsys):
        assert main(["hist", samples_file, "--tier", "low", "--edges", "0,3,6"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["bin_edges"] == [0, 3, 6]
        assert doc["counts"] == [2, 3]

    def test_unknown_tier_exits_2(self, samples_file, capsys):
        assert main(["hist", samples_file, "--tier", "nope"]) == 2
        assert "unknown tier label" in capsys.readouterr().err


class TestAnova:
    def test_json(self, samples_file, capsys):
        assert main(["anova", samples_file]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["table"]["df_between"] == 1
        assert doc["table"]["df_within"] == 8
        assert doc["decision"]["reject_null"] is True

    def test_table_format(self, samples_file, capsys):
        assert main(["anova", samples_file, "--format", "table"]) == 0
        out = capsys.readouterr().out
        assert "Sum of Squares" in out and "Deg. of Freedom" in out
        assert "Tiers" in out and "Error" in out and "Total" in out
        assert "decision: reject the null hypothesis" in out

    def test_single_tier_exits_2(self, tmp_path, capsys):
        path = tmp_path / "one.csv"
        path.write_text("tier,complexity\nonly,1\nonly,2\n")
        assert main(["anova", str(path)]) == 2

    def test_constant_groups_exit_2(self, tmp_path, capsys):
        path = tmp_path / "flat.csv"
        path.write_text("tier,complexity\na,1\na,1\nb,2\nb,2\n")
        assert main(["anova", str(path)]) == 2
        assert "zero within-group variance" in capsys.readouterr().err


class TestSampleSize:
    def test_text_with_note_at_reference_design(self, capsys):
        assert main(["samplesize", "--sigma", "60", "--z", "1.96", "--e", "30"]) == 0
        out = capsys.readouterr().out
        assert "unrounded: 15.3664" in out
        assert "n: 16" in out
        assert "note:" in out and "20" in out

    def test_json_without_note_elsewhere(self, capsys):
        assert main(
            ["samplesize", "--sigma", "50", "--z", "1.96", "--e", "30",
             "--format", "json"]
        ) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["n"] == 11
        assert doc["note"] is None

    def test_exact_square_design(self, capsys):
        assert main(
            ["samplesize", "--sigma", "10", "--z", "2", "--e", "5", "--format", "json"]
        ) == 0
        assert json.loads(capsys.readouterr().out)["n"] == 16

    def test_bad_inputs_exit_2(self, capsys):
        assert main(["samplesize", "--sigma", "0", "--z", "1", "--e", "1"]) == 2


class TestGenerate:
    def test_stdout_is_a_valid_curriculum(self, capsys):
        assert main(["generate", "--seed", "5"]) == 0
        curriculum, plan = parse_curriculum(capsys.readouterr().out)
        assert len(curriculum.courses) >= 4
        assert plan is not None

    def test_deterministic_and_seed_sensitive(self, capsys):
        main(["generate", "--seed", "5"])
        first = capsys.readouterr().out
        main(["generate", "--seed", "5"])
        again = capsys.readouterr().out
        main(["generate", "--seed", "6"])
        other = capsys.readouterr().out
        assert first == again
        assert first != other

    def test_out_file_and_layout_flags(self, tmp_path, capsys):
        path = tmp_path / "gen.csv"
        assert main(
            ["generate", "--seed", "2", "--num-terms", "3",
             "--courses-per-term", "2,2", "--out", str(path)]
        ) == 0
        capsys.readouterr()
        curriculum, plan = parse_curriculum(path.read_text())
        assert len(curriculum.courses) == 6
        assert len(plan.terms) == 3

    def test_bad_layout_exits_2(self, capsys):
        assert main(["generate", "--courses-per-term", "9"]) == 2


class TestStudy:
    def test_full_run_writes_all_documents(self, tmp_path, capsys):
        out = tmp_path / "study"
        assert main(["study", "--seed", "7", "--out", str(out)]) == 0
        stdout = capsys.readouterr().out
        assert "decision: reject the null hypothesis" in stdout
        for name in (
            "samples.csv", "report.json", "boxplot.json",
            "boxplot.svg", "histograms.json", "anova.txt",
        ):
            assert (out / name).exists(), name
        report = json.loads((out / "report.json").read_text())
        assert report["seed"] == 7
        assert report["targets_preset"] == "paper"
        assert [t["label"] for t in report["per_tier"]] == ["top", "middle", "bottom"]
        assert report["sample_size_calc"]["n"] == 16
        notes = "\n".join(report["notes"])
        assert "20" in notes and "11.09" in notes and "3.15" in notes

    def test_rerun_is_byte_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["study", "--seed", "3", "--out", str(a)]) == 0
        assert main(["study", "--seed", "3", "--out", str(b)]) == 0
        capsys.readouterr()
        for name in ("samples.csv", "report.json", "boxplot.json",
                     "boxplot.svg", "histograms.json", "anova.txt"):
            assert (a / name).read_bytes() == (b / name).read_bytes(), name

    def test_custom_targets_file(self, tmp_path, capsys):
        targets = tmp_path / "targets.json"
        targets.write_text(json.dumps([
            {"label": "a", "mean": 90.0, "std": 20.0, "count": 8},
            {"label": "b", "mean": 150.0, "std": 30.0, "count": 8},
        ]))
        out = tmp_path / "study"
        assert main(
            ["study", "--targets", str(targets), "--seed", "1", "--out", str(out)]
        ) == 0
        capsys.readouterr()
        report = json.loads((out / "report.json").read_text())
        assert report["targets_preset"] is None
        assert [t["label"] for t in report["per_tier"]] == ["a", "b"]
        notes = "\n".join(report["notes"])
        assert "11.09" not in notes  # table notes only apply to the preset

    def test_config_file_with_flag_override(self, tmp_path, capsys):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"seed": 11, "alpha": 0.01}))
        out = tmp_path / "study"
        assert main(
            ["study", "--config", str(config), "--seed", "12", "--out", str(out)]
        ) == 0
        capsys.readouterr()
        report = json.loads((out / "report.json").read_text())
        assert report["seed"] == 12  # flag wins
        assert report["alpha"] == 0.01  # file fills the gap

    def test_missing_out_exits_2(self, capsys):
        assert main(["study", "--seed", "1"]) == 2
        assert "output directory" in capsys.readouterr().err

    def test_single_tier_targets_exit_2(self, tmp_path, capsys):
        targets = tmp_path / "targets.json"
        targets.write_text(json.dumps([
            {"label": "a", "mean": 90.0, "std": 20.0, "count": 5},
        ]))
        assert main(
            ["study", "--targets", str(targets), "--out", str(tmp_path / "o")]
        ) == 2
        assert "2 tiers" in capsys.readouterr().err

    def test_infeasible_target_exits_3(self, tmp_path, capsys):
        targets = tmp_path / "targets.json"
        targets.write_text(json.dumps([
            {"label": "a", "mean": 1.0, "std": 1.0, "count": 4},
            {"label": "b", "mean": 2.0, "std": 1.0, "count": 4},
        ]))
        assert main(
            ["study", "--targets", str(targets), "--out", str(tmp_path / "o")]
        ) == 3
        assert "attainable minimum" in capsys.readouterr().err


class TestRunStudy:
    def test_documents_and_report_agree(self):
        result, report, documents = run_study(
            REFERENCE_TIERS, GeneratorConfig(seed=2)
        )
        doc = json.loads(documents["report.json"])
        assert doc["decision"]["f"] == pytest.approx(report.decision.f, rel=1e-12)
        assert sorted(documents) == sorted(
            ["samples.csv", "report.json", "boxplot.json", "boxplot.svg",
             "histograms.json", "anova.txt"]
        )
        assert len(result.tiers) == 3
