"""
Command-line and application tests.
"""

import json
import os

import pytest

from assocmink.cli import main
from assocmink.exceptions import IncompleteSpecError, InvalidPartitionError
from assocmink.models import CommandConfig, Method
from assocmink.repository import TableRepository
from assocmink.zvalues import default_facet_spec

pytestmark = pytest.mark.usefixtures("restore_logging")

HEXAGON = ("--n", "4", "--up", "2")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def y_values(report, method):
    return [entry["y"][method] for entry in report["entries"]]


@pytest.mark.integration
class TestCommands:
    """Test each subcommand end to end."""

    def test_decompose_pentagon(self, capsys):
        """Test all three methods agree on the pentagon."""
        code, out, _ = run(capsys, "decompose", "--n", "3")
        assert code == 0
        report = json.loads(out)
        assert report["methods"] == ["moebius", "four-term", "product"]
        assert report["consistent"] is True
        assert y_values(report, "product") == ["1", "1", "1", "1", "0", "1", "1"]

    def test_decompose_hexagon(self, capsys):
        """Test the n=4, Up={2} coefficients."""
        code, out, _ = run(capsys, "decompose", "--n", "4", "--up", "2")
        assert code == 0
        report = json.loads(out)
        by_set = {tuple(e["set"]): e["y"]["moebius"] for e in report["entries"]}
        assert by_set[(2,)] == "-1"
        assert by_set[(1, 2)] == "3"
        assert by_set[(1, 2, 3, 4)] == "-1"
        assert all(e["agree"] for e in report["entries"])

    def test_decompose_single_method(self, capsys):
        """Test --method restricts the report."""
        code, out, _ = run(
            capsys, "decompose", "--n", "3", "--up", "2", "--method", "four-term"
        )
        assert code == 0
        report = json.loads(out)
        assert report["methods"] == ["four-term"]
        assert y_values(report, "four-term")[-1] == "-1"

    def test_decompose_with_facet_file(self, capsys, temp_dir, pentagon_up):
        """Test a facet file runs Moebius and four-term only."""
        TableRepository(temp_dir).save_facet_spec(
            default_facet_spec(pentagon_up), "facets.json"
        )
        path = os.path.join(temp_dir, "facets.json")
        code, out, _ = run(
            capsys, "decompose", "--n", "3", "--up", "2", "--z-file", path
        )
        assert code == 0
        report = json.loads(out)
        assert report["methods"] == ["moebius", "four-term"]
        assert report["spec"] == "custom"

    def test_zvalues(self, capsys):
        """Test the z table JSON schema."""
        code, out, _ = run(capsys, "zvalues", "--n", "3", "--up", "2")
        assert code == 0
        report = json.loads(out)
        assert report["total"] == "6"
        assert [e["z"] for e in report["entries"]] == [
            "1", "0", "1", "3", "3", "3", "6"
        ]

    def test_zvalues_seeded(self, capsys):
        """Test seeded output is stable."""
        first = run(capsys, "zvalues", "--n", "4", "--up", "2", "--seed", "7")
        second = run(capsys, "zvalues", "--n", "4", "--up", "2", "--seed", "7")
        assert first[:2] == second[:2]
        assert json.loads(first[1])["provenance"] == "custom"

    def test_facets_table(self, capsys):
        """Test the aligned table of facets."""
        code, out, _ = run(
            capsys, "facets", "--n", "4", "--up", "2", "--format", "table"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n=4, Up={2}"
        assert lines[1].split() == ["diagonal", "R", "z"]
        assert lines[3].split() == ["{0,3}", "{1}", "1"]
        assert len(lines) == 12

    def test_classify(self, capsys):
        """Test case labels per subset."""
        code, out, _ = run(capsys, "classify", "--n", "4", "--up", "2")
        assert code == 0
        entries = {tuple(e["set"]): e for e in json.loads(out)["entries"]}
        assert entries[(1,)]["case"] == "{d1}"
        assert entries[(1, 2)]["case"] == "{d1,d4}(a)"
        assert entries[(1, 4)]["case"] is None
        assert entries[(1, 4)]["type"] == [2, 0]

    def test_vertices(self, capsys):
        """Test the pentagon vertices."""
        code, out, _ = run(capsys, "vertices", "--n", "3")
        assert code == 0
        report = json.loads(out)
        assert report["vertex_count"] == 5
        assert report["facet_count"] == 5
        assert ["1", "4", "1"] in report["vertices"]

    def test_cyclo_check(self, capsys):
        """Test the cyclohedron report."""
        code, out, _ = run(capsys, "cyclo-check")
        assert code == 0
        report = json.loads(out)
        assert report["left"] == 27
        assert report["right"] == 20
        assert report["prop_2_3_holds"] is False

    def test_verify(self, capsys):
        """Test the suites pass for small n."""
        code, out, _ = run(capsys, "verify", "--max-n", "4")
        assert code == 0
        report = json.loads(out)
        assert report["passed"] is True
        names = {suite["name"] for suite in report["suites"]}
        assert {
            "three_way",
            "frame_shapes",
            "tightness",
            "sampled_tightness",
            "missing_frame_diagonals",
            "frame_sum",
            "minkowski_decomposition",
        } <= names
        assert all(suite["failed"] == 0 for suite in report["suites"])

    @pytest.mark.parametrize(
        "argv, first_line",
        [
            (["facets", "--n", "3"], "n=3, Up={}"),
            (["zvalues", "--n", "3"], "n=3, Up={}, total=6"),
            (["decompose", "--n", "3"], "n=3, Up={}, spec=default"),
            (["classify", "--n", "3"], "n=3, Up={}"),
            (["vertices", "--n", "3"], "n=3, Up={}: 5 vertices (Catalan 5), 5 facets"),
            (["cyclo-check"], "left=27 right=20 prop_2_3_holds=false"),
            (["verify", "--max-n", "3"], "max_n=3 PASSED"),
        ],
    )
    def test_table_format(self, capsys, argv, first_line):
        """Test every subcommand renders as a table."""
        code, out, _ = run(capsys, *argv, "--format", "table")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == first_line
        assert len(lines) > 2

    def test_decompose_stored_table(self, capsys, temp_dir):
        """Test --z-table decomposes a table written by zvalues."""
        path = os.path.join(temp_dir, "z.json")
        run(capsys, "zvalues", *HEXAGON, "--output", path)
        code, out, _ = run(capsys, "decompose", *HEXAGON, "--z-table", path)
        assert code == 0
        stored = json.loads(out)
        assert stored["methods"] == ["moebius", "four-term", "product"]
        assert stored == json.loads(run(capsys, "decompose", *HEXAGON)[1])

    def test_decompose_stored_sampled_table(self, capsys, temp_dir):
        """Test a stored sampled table skips the product method."""
        path = os.path.join(temp_dir, "z.json")
        run(capsys, "zvalues", *HEXAGON, "--seed", "3", "--output", path)
        code, out, _ = run(capsys, "decompose", *HEXAGON, "--z-table", path)
        assert code == 0
        report = json.loads(out)
        assert report["spec"] == "custom"
        assert report["methods"] == ["moebius", "four-term"]
        assert report["consistent"] is True

    def test_spec_out(self, capsys, temp_dir):
        """Test sampled facet values can be stored and reused."""
        path = os.path.join(temp_dir, "facets.json")
        sampled = run(capsys, "zvalues", *HEXAGON, "--seed", "7", "--spec-out", path)
        assert sampled[0] == 0
        reused = run(capsys, "zvalues", *HEXAGON, "--z-file", path)
        assert json.loads(reused[1]) == json.loads(sampled[1])

    def test_output_and_metrics_files(self, capsys, temp_dir):
        """Test the report and metrics are written to disk."""
        report_path = os.path.join(temp_dir, "report.json")
        metrics_path = os.path.join(temp_dir, "metrics.prom")
        code, out, _ = run(
            capsys,
            "zvalues",
            "--n",
            "3",
            "--output",
            report_path,
            "--metrics-file",
            metrics_path,
        )
        assert code == 0
        with open(report_path) as f:
            assert json.load(f) == json.loads(out)
        with open(metrics_path) as f:
            assert "assocmink_operations_total" in f.read()


@pytest.mark.integration
class TestErrors:
    """Test failures exit 1 with JSON on stderr."""

    @pytest.mark.parametrize(
        "argv, error",
        [
            (["zvalues", "--n", "1"], "InvalidPartitionError"),
            (["zvalues", "--n", "17"], "InvalidPartitionError"),
            (["zvalues", "--n", "4", "--up", "4"], "InvalidPartitionError"),
            (["vertices", "--n", "9"], "EnumerationLimitError"),
            (["zvalues", "--n", "3", "--z-file", "missing.json"], "StorageError"),
        ],
    )
    def test_invalid_input(self, capsys, argv, error):
        """Test errors are reported as JSON."""
        code, out, err = run(capsys, *argv)
        assert code == 1
        assert out == ""
        payload = json.loads(err.strip().splitlines()[-1])
        assert payload["error"] == error

    def test_product_with_facet_file(self, capsys, temp_dir, pentagon):
        """Test the product method refuses custom right-hand sides."""
        TableRepository(temp_dir).save_facet_spec(
            default_facet_spec(pentagon), "facets.json"
        )
        path = os.path.join(temp_dir, "facets.json")
        code, _, err = run(
            capsys, "decompose", "--n", "3", "--z-file", path, "--method", "product"
        )
        assert code == 1
        assert json.loads(err.strip().splitlines()[-1])["error"] == (
            "ContractViolationError"
        )

    def test_z_table_with_seed(self, capsys, temp_dir):
        """Test --z-table excludes the other sources of facet values."""
        path = os.path.join(temp_dir, "z.json")
        run(capsys, "zvalues", "--n", "3", "--output", path)
        code, _, err = run(
            capsys, "decompose", "--n", "3", "--z-table", path, "--seed", "1"
        )
        assert code == 1
        assert json.loads(err.strip().splitlines()[-1])["error"] == "SpecError"

    def test_z_table_for_other_partition(self, capsys, temp_dir):
        """Test a stored table must match --n and --up."""
        path = os.path.join(temp_dir, "z.json")
        run(capsys, "zvalues", "--n", "3", "--output", path)
        code, _, err = run(
            capsys, "decompose", "--n", "3", "--up", "2", "--z-table", path
        )
        assert code == 1
        assert json.loads(err.strip().splitlines()[-1])["error"] == (
            "IncompleteSpecError"
        )

    def test_unknown_log_level(self, capsys):
        """Test a bad --log-level is refused."""
        code, _, err = run(capsys, "cyclo-check", "--log-level", "LOUD")
        assert code == 1
        assert json.loads(err.strip().splitlines()[-1])["error"] == "InvalidLogLevel"


@pytest.mark.unit
class TestApplication:
    """Test the application facade."""

    def test_cli_limit(self, app):
        """Test the command-line bound on n."""
        with pytest.raises(InvalidPartitionError):
            app.partition(17)
        assert app.partition(4, [2]).up_set == (2,)

    def test_facet_file_for_other_partition(self, app, pentagon, pentagon_up):
        """Test a facet file must match --n and --up."""
        app.table_repo.save_facet_spec(default_facet_spec(pentagon), "facets.json")
        with pytest.raises(IncompleteSpecError):
            app.load_spec(pentagon_up, "facets.json")

    def test_run_saves_report(self, app, temp_dir):
        """Test --output goes through the repository."""
        config = CommandConfig(
            "decompose", n=3, method=Method.MOEBIUS, output="r.json"
        )
        report, ok = app.run(config)
        assert ok
        assert os.path.exists(os.path.join(temp_dir, "r.json"))
        assert report["methods"] == ["moebius"]
