"""
MCP 工具层测试：注册表、工具返回结构与错误码转换。
"""

import json
from pathlib import Path

import pytest

import setup as app_setup
from core.exceptions import DegenerateOverlapError, GeometryError, ParameterError
from core.features import save_descriptor_file
from core.models import BinaryDescriptor, DescriptorSet, Keypoint
from core.monitoring import get_error_tracker, get_performance_monitor
from modules.YA_Common.utils.config import Config
from modules.YA_Common.utils.errors import error_code_for, from_domain_error
from modules.YA_Common.utils.middleware import exception_handler
from tools import registered_tools
from tools.benchmark_tools import build_report, match_descriptors, synth_dataset

REPO_ROOT = Path(__file__).resolve().parents[1]


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture
def core_ready(tmp_path):
    app_setup.setup(tmp_path / "absent.yaml")
    yield
    app_setup._core = None


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

class TestRegistry:

    def test_tool_names(self):
        names = [spec.name for spec in registered_tools()]
        assert names == ["run_benchmark", "build_report", "synth_dataset", "match_descriptors"]

    def test_match_is_read_only(self):
        specs = {spec.name: spec for spec in registered_tools()}
        assert specs["match_descriptors"].annotations().readOnlyHint is True
        assert specs["run_benchmark"].annotations().readOnlyHint is False


# ---------------------------------------------------------------------------
# Error codes
# ---------------------------------------------------------------------------

class TestErrorCodes:

    @pytest.mark.parametrize(
        "exc, code",
        [
            (GeometryError("x"), "GEOMETRY_ERROR"),
            (DegenerateOverlapError("x"), "DEGENERATE_OVERLAP_ERROR"),
            (ParameterError("x"), "PARAMETER_ERROR"),
        ],
    )
    def test_code_from_class_name(self, exc, code):
        assert error_code_for(exc) == code
        assert from_domain_error(exc, {"k": 1}).to_error().to_dict()["error"]["code"] == code

    def test_middleware_emits_json(self, capsys):
        @exception_handler
        def boom():
            raise ParameterError("bad width")

        assert boom() is None
        payload = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert payload["error"] == {"code": "PARAMETER_ERROR", "message": "bad width", "details": {}}


# ---------------------------------------------------------------------------
# Tool calls
# ---------------------------------------------------------------------------

class TestToolCalls:

    def test_synth_then_report_error(self, core_ready, tmp_path):
        result = synth_dataset(str(tmp_path / "data"), seed=1, pairs=1, size=64, self_pair=False)
        assert result["status"] == "success"
        assert result["pair_ids"] == ["synth000"]

        missing = build_report(str(tmp_path / "none.csv"), str(tmp_path / "rep"))
        assert missing["status"] == "error"
        assert missing["error_type"] == "FileNotFoundError"

    def test_synth_parameter_error(self, core_ready, tmp_path):
        result = synth_dataset(str(tmp_path), size=16)
        assert result["status"] == "error"
        assert result["error"]["code"] == "PARAMETER_ERROR"

    def test_match(self, core_ready, tmp_path):
        descs = [BinaryDescriptor.from_bitstring(s) for s in ("1010", "0101")]
        kps = [Keypoint(0.0, 0.0), Keypoint(1.0, 1.0)]
        save_descriptor_file(DescriptorSet(kps, descs, "toy"), tmp_path / "a.bdsc")
        save_descriptor_file(DescriptorSet(kps, descs[::-1], "toy"), tmp_path / "b.bdsc")
        result = match_descriptors(str(tmp_path / "a.bdsc"), str(tmp_path / "b.bdsc"))
        assert result["matches"] == [[0, 1, 0.0], [1, 0, 0.0]]

    def test_unknown_metric(self, core_ready, tmp_path):
        result = match_descriptors(str(tmp_path / "a"), str(tmp_path / "b"), metric="cosine")
        assert result["error"]["code"] == "PARAMETER_ERROR"


# ---------------------------------------------------------------------------
# Server and core command bookkeeping
# ---------------------------------------------------------------------------

class TestServer:

    def test_unknown_transport_reports_config_error(self, capsys):
        import server

        server.mcp_server.transport_type = "carrier-pigeon"
        assert server.mcp_server.start() is None
        payload = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert payload["error"]["code"] == "CONFIG_ERROR"
        assert payload["error"]["details"] == {"supported": ["stdio", "sse"]}


class TestCommandMonitoring:

    def test_commands_timed_and_failures_tracked(self, core_ready, tmp_path):
        monitor, tracker = get_performance_monitor(), get_error_tracker()
        monitor.reset_metrics()
        tracker.clear_errors()
        core = app_setup.get_core()

        core.synth(tmp_path / "data", seed=2, n_pairs=1, image_size=64, self_pair=False)
        assert monitor.get_metrics("synth")["synth"]["count"] == 1

        with pytest.raises(FileNotFoundError):
            core.report(tmp_path / "missing.csv", tmp_path / "rep")
        assert monitor.get_metrics("report")["report"]["error_count"] == 1
        recent = tracker.get_error_summary()["recent_errors"][-1]
        assert recent["type"] == "FileNotFoundError"
        assert recent["context"] == {"command": "report", "function": "report"}


# ---------------------------------------------------------------------------
# Shipped project files
# ---------------------------------------------------------------------------

class TestProjectFiles:

    def test_server_identity(self):
        cfg = Config(REPO_ROOT / "config.yaml")
        assert cfg.get_server_name() == "binary-descriptor-bench"
        assert cfg.get_server_author() == "descbench maintainers"

    def test_formatters_are_dev_only(self):
        tomllib = pytest.importorskip("tomllib")
        manifest = tomllib.loads((REPO_ROOT / "pyproject.toml").read_text(encoding="utf-8"))
        runtime = " ".join(manifest["project"]["dependencies"])
        dev = " ".join(manifest["dependency-groups"]["dev"])
        for tool in ("black", "ruff"):
            assert tool not in runtime
            assert tool in dev

    def test_module_loggers_follow_import_path(self):
        from core.benchmark import report, runner, synth
        from core.features import brief_extractor, fast_detector
        from core.geometry import homography_estimator
        from core.stats import anova

        for module in (report, runner, synth, brief_extractor, fast_detector, homography_estimator, anova):
            assert module.logger.name == module.__name__
        assert runner.logger.name == "core.benchmark.runner"
