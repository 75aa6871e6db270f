"""
命令行测试：子命令的退出码与输出。
"""

import numpy as np
import pytest
import yaml

from cli import EXIT_FAILURE, EXIT_OK, main
from core.benchmark import read_pair_list, read_scores, write_pair_list, write_scores
from core.features import save_descriptor_file
from core.models import (
    BinaryDescriptor,
    DescriptorSet,
    Keypoint,
    MetricId,
    PairSpec,
    ScoreRecord,
)


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture
def config_file(tmp_path):
    """低阈值、少迭代的配置，使小尺寸合成图像也能快速跑完。"""
    path = tmp_path / "bench.yaml"
    path.write_text(
        yaml.safe_dump(
            {
                "benchmark": {
                    "features": {"fast_threshold": 5, "target_n": 300},
                    "ransac": {"max_iters": 500},
                    "synth": {"image_size": 128},
                }
            }
        ),
        encoding="utf-8",
    )
    return str(path)


@pytest.fixture
def descriptor_files(tmp_path):
    rows = ["11000000", "00110000", "00001100"]
    descs = [BinaryDescriptor.from_bitstring(r) for r in rows]
    kps = [Keypoint(float(i), float(i)) for i in range(len(rows))]
    save_descriptor_file(DescriptorSet(kps, descs, "toy8"), tmp_path / "a.bdsc")
    save_descriptor_file(DescriptorSet(kps, list(reversed(descs)), "toy8"), tmp_path / "b.bdsc")
    return tmp_path / "a.bdsc", tmp_path / "b.bdsc"


def _scores(path):
    rng = np.random.default_rng(2)
    records = [
        ScoreRecord(
            f"p{p}", "brief256", metric,
            match_count=80, inlier_count=40, nonzero_count=int(n), raw_sum=int(n) * 2,
            overlap_pixels=5000, log_score=float(np.log1p(n)),
        )
        for p in range(5)
        for metric, n in zip(MetricId, rng.integers(0, 400, len(MetricId)))
    ]
    write_scores(path, records)
    return path


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

class TestSynthCommand:

    def test_writes_dataset(self, config_file, tmp_path):
        out = tmp_path / "data"
        code = main(["--config", config_file, "synth", "--seed", "3", "--pairs", "2", "--out", str(out)])
        assert code == EXIT_OK
        pairs = read_pair_list(out / "pairs.csv")
        assert [p.pair_id for p in pairs] == ["synth000", "synth001", "self"]

    def test_no_self_pair(self, config_file, tmp_path):
        out = tmp_path / "data"
        main(["--config", config_file, "synth", "--pairs", "1", "--no-self-pair", "--out", str(out)])
        assert [p.pair_id for p in read_pair_list(out / "pairs.csv")] == ["synth000"]

    def test_small_size_fails(self, config_file, tmp_path):
        code = main(["--config", config_file, "synth", "--size", "32", "--out", str(tmp_path)])
        assert code == EXIT_FAILURE


class TestBenchCommand:

    def test_synthetic_run(self, config_file, tmp_path):
        data = tmp_path / "data"
        main(["--config", config_file, "synth", "--seed", "4", "--pairs", "1", "--out", str(data)])
        out = tmp_path / "run"
        code = main(
            [
                "--config", config_file, "bench",
                "--pairs", str(data / "pairs.csv"),
                "--metrics", "yule,hamming",
                "--seed", "0x2a",
                "--out", str(out),
            ]
        )
        assert code == EXIT_OK
        records = read_scores(out / "scores.csv")
        assert [(r.pair_id, r.metric) for r in records] == [
            ("self", MetricId.HAMMING),
            ("self", MetricId.YULE),
            ("synth000", MetricId.HAMMING),
            ("synth000", MetricId.YULE),
        ]

    def test_all_failed_exit_code(self, config_file, tmp_path):
        write_pair_list(tmp_path / "pairs.csv", [PairSpec("x", tmp_path / "a.pgm", tmp_path / "b.pgm")])
        code = main(
            ["--config", config_file, "bench", "--pairs", str(tmp_path / "pairs.csv"), "--out", str(tmp_path / "o")]
        )
        assert code == EXIT_FAILURE
        assert {r.status.value for r in read_scores(tmp_path / "o" / "scores.csv")} == {"input_error"}

    def test_missing_pair_list(self, config_file, tmp_path):
        code = main(
            ["--config", config_file, "bench", "--pairs", str(tmp_path / "none.csv"), "--out", str(tmp_path)]
        )
        assert code == EXIT_FAILURE

    @pytest.mark.parametrize(
        "extra",
        [
            ["--metrics", "cosine"],
            ["--metrics", "hamming,hamming"],
            ["--nbits", "abc"],
            ["--seed", "-1"],
            ["--desc", "sift"],
        ],
    )
    def test_bad_arguments(self, extra, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["bench", "--pairs", "p.csv", "--out", str(tmp_path), *extra])
        assert exc.value.code == 2

    def test_invalid_config(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text(yaml.safe_dump({"benchmark": {"ransac": {"iterations": 3}}}), encoding="utf-8")
        code = main(["--config", str(path), "synth", "--out", str(tmp_path)])
        assert code == EXIT_FAILURE


class TestReportCommand:

    def test_writes_report(self, config_file, tmp_path):
        scores = _scores(tmp_path / "scores.csv")
        code = main(["--config", config_file, "report", "--scores", str(scores), "--out", str(tmp_path / "rep")])
        assert code == EXIT_OK
        assert (tmp_path / "rep" / "report.md").exists()
        assert (tmp_path / "rep" / "anova_brief256.csv").exists()

    def test_raw_sum_column(self, config_file, tmp_path):
        scores = _scores(tmp_path / "scores.csv")
        code = main(
            ["--config", config_file, "report", "--scores", str(scores), "--value", "raw_sum", "--out", str(tmp_path / "r")]
        )
        assert code == EXIT_OK
        header = (tmp_path / "r" / "matrix_brief256.csv").read_text().splitlines()[0]
        assert header == "pair_id,Hamming,Jaccard-Needham,Correlation,Dice,Yule"

    def test_unusable_scores(self, config_file, tmp_path):
        write_scores(tmp_path / "scores.csv", [ScoreRecord("p0", "brief256", MetricId.HAMMING, match_count=0)])
        code = main(["--config", config_file, "report", "--scores", str(tmp_path / "scores.csv"), "--out", str(tmp_path)])
        assert code == EXIT_FAILURE


class TestMatchCommand:

    def test_prints_matches(self, config_file, descriptor_files, capsys):
        a, b = descriptor_files
        code = main(["--config", config_file, "match", "--desc-a", str(a), "--desc-b", str(b)])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines == ["query_idx,train_idx,dist", "0,2,0.0", "1,1,0.0", "2,0,0.0"]

    def test_metric_option(self, config_file, descriptor_files, capsys):
        a, b = descriptor_files
        main(["--config", config_file, "match", "--desc-a", str(a), "--desc-b", str(b), "--metric", "jaccard"])
        assert capsys.readouterr().out.splitlines()[1] == "0,2,0.0"

    def test_missing_file(self, config_file, tmp_path):
        code = main(
            ["--config", config_file, "match", "--desc-a", str(tmp_path / "x"), "--desc-b", str(tmp_path / "y")]
        )
        assert code == EXIT_FAILURE
