"""CLI: scene schema, determinism, exit codes and round-trips."""

import io
import json
import subprocess
import sys

import pytest

from bhm.cli import main, run
from bhm.errors import ExprSchemaError

VAR = {"op": "var"}
CONST0 = {"op": "const", "value": [0, 0]}
RADIAL = {"G": {"f": VAR}, "H": {"f": CONST0}}
PROJECTION = {"G": {"f": CONST0},
              "H": {"f": {"op": "mul", "args": [{"op": "const", "value": [0.5, 0]}, VAR]}}}


def run_config(config, fmt=None, tol=None, seed=0):
    out = io.StringIO()
    code = run(config, out, fmt=fmt, tol=tol, seed=seed)
    return code, out.getvalue()


def run_main(config, *args):
    proc = subprocess.run(
        [sys.executable, "-m", "bhm.cli", *args],
        input=json.dumps(config).encode(),
        capture_output=True,
    )
    return proc


class TestSolve:
    def test_radial_canonical_roots(self):
        config = {"task": "solve", "data": RADIAL, "points": [[0, 1, 0]]}
        code, text = run_config(config)
        assert code == 0
        report = json.loads(text)
        roots = report["results"][0]["roots"]
        # canonical order sorts by the Ringleb components (Re e, Im e, Re f, Im f)
        assert [r["q"] for r in roots] == [
            [-1.0, 0.0, 0.0, 0.0],   # e=-1, f=-1
            [0.0, 0.0, 0.0, 1.0],    # e=-1, f=+1: j
            [0.0, 0.0, 0.0, -1.0],   # e=+1, f=-1: -j
            [1.0, 0.0, 0.0, 0.0],    # e=+1, f=+1
        ]
        degs = [r["degenerate"] for r in roots]
        assert degs == [False, True, True, False]

    def test_determinism(self):
        config = {"task": "solve", "data": RADIAL,
                  "points": [[0.31, 1.07, -0.55], [1, 2, 3]]}
        outs = {run_config(config)[1] for _ in range(3)}
        assert len(outs) == 1

    def test_complex_point_encoding(self):
        config = {"task": "solve", "data": PROJECTION,
                  "points": [[5, [1, 0], [2, 0]]]}
        code, text = run_config(config)
        roots = json.loads(text)["results"][0]["roots"]
        assert len(roots) == 1
        assert roots[0]["q"] == [1.0, 0.0, 2.0, 0.0]

    def test_csv_format(self):
        config = {"task": "solve", "data": PROJECTION, "points": [[5, 1, 2]]}
        code, text = run_config(config, fmt="csv")
        lines = text.strip().split("\n")
        assert lines[0].startswith("p1_re,")
        assert len(lines) == 2


class TestFibres:
    def test_line_export_and_seeded_samples(self):
        config = {"task": "fibres", "data": PROJECTION,
                  "params": [[1, 0, 2, 0]], "samples": 4}
        _, text1 = run_config(config, seed=7)
        _, text2 = run_config(config, seed=7)
        _, text3 = run_config(config, seed=8)
        assert text1 == text2
        assert text1 != text3
        row = json.loads(text1)["results"][0]
        assert row["tag"] == "non_null_line"
        assert len(row["samples"]) == 4

    def test_csv_columns(self):
        config = {"task": "fibres", "data": PROJECTION, "params": [[1, 0, 2, 0]]}
        _, text = run_config(config, fmt="csv")
        header, row = text.strip().split("\n")
        assert header.split(",")[:5] == ["q_x1", "q_x2", "q_x3", "q_x4", "tag"]
        assert len(row.split(",")) == 17


class TestVerify:
    def test_fibre_sample_roundtrip(self):
        # export fibre samples, re-validate them with task verify
        config = {"task": "fibres", "data": PROJECTION,
                  "params": [[1, 0, 2, 0], [0.5, 0.25, -1, 0]], "samples": 3}
        _, text = run_config(config, seed=3)
        fibres = json.loads(text)["results"]
        samples = [{"q": row["q"], "z": z} for row in fibres for z in row["samples"]]
        code, text = run_config({"task": "verify", "data": PROJECTION,
                                 "samples": samples})
        assert code == 0
        for entry in json.loads(text)["results"]:
            assert entry["on_fibre"] is True
            assert entry["residual"] <= 1e-8

    def test_plane_fibre_sample_roundtrip(self):
        # constant G with CN(G) = -1 and H = 0: every fibre is a degenerate
        # plane; its exported samples must still satisfy the congruence
        data = {"G": {"f": {"op": "const", "value": [0, 1]}},
                "H": {"f": CONST0}}
        _, text = run_config({"task": "fibres", "data": data,
                              "params": [[0, 0, 0, 0]], "samples": 4}, seed=5)
        row = json.loads(text)["results"][0]
        assert row["tag"] == "degenerate_plane"
        samples = [{"q": row["q"], "z": z} for z in row["samples"]]
        _, text = run_config({"task": "verify", "data": data, "samples": samples})
        for entry in json.loads(text)["results"]:
            assert entry["on_fibre"] is True
            assert entry["residual"] <= 1e-8

    def test_pde_report(self):
        config = {"task": "verify", "data": PROJECTION, "points": [[5, 1, 2]]}
        _, text = run_config(config)
        root = json.loads(text)["results"][0]["roots"][0]
        assert root["implicit"]["laplacian"] <= 1e-10
        assert root["implicit"]["nullness"] <= 1e-10
        assert root["fd"]["laplacian"] <= 1e-6
        assert root["fd"]["class"] == "regular"


class TestSliceTask:
    def test_grid_run(self):
        config = {
            "task": "slice", "slice": "euclidean",
            "g": {"f": CONST0},
            "h": {"f": {"op": "mul", "args": [{"op": "const", "value": [0.5, 0]}, VAR]}},
            "grid": {"min": [-1, -1, -1], "max": [1, 1, 1], "counts": [2, 2, 2]},
        }
        code, text = run_config(config)
        rows = json.loads(text)["results"]
        assert len(rows) == 8
        for row in rows:
            assert row["harmonic_res"] <= 1e-7
            assert row["null_res"] <= 1e-7

    def test_points_csv(self):
        config = {"task": "slice", "slice": "minkowski_c",
                  "g": {"f": VAR}, "h": {"f": CONST0},
                  "points": [[2.0, 0.5, 0.3]], "fd": False}
        code, text = run_config(config, fmt="csv")
        assert code == 0
        assert text.startswith("x1,x2,x3,branch,")


class TestCharts:
    def test_transition_example(self):
        config = {"task": "charts",
                  "charts": {"op": "transition", "from": "G", "to": "Gcheck",
                             "values": [[2, 0, 0, 0]]}}
        _, text = run_config(config)
        assert json.loads(text)["results"][0]["result"] == [0.5, 0.0, 0.0, 0.0]

    def test_to_point(self):
        config = {"task": "charts",
                  "charts": {"op": "to_point", "space": "S2C", "from": "G",
                             "values": [[0, 0, 0, 0]]}}
        _, text = run_config(config)
        assert json.loads(text)["results"][0]["result"] == [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]

    def test_from_point(self):
        config = {"task": "charts",
                  "charts": {"op": "from_point", "space": "Q2C", "from": "G",
                             "values": [[[1, 0], [1, 0], [0, 0], [0, 0]]]}}
        _, text = run_config(config)
        assert json.loads(text)["results"][0]["result"] == [0.0, 0.0, 0.0, 0.0]


class TestSchemaAndExitCodes:
    @pytest.mark.parametrize("config", [
        {"task": "nope"},
        {"task": "solve"},
        {"task": "solve", "data": RADIAL},
        {"task": "solve", "data": RADIAL, "points": []},
        {"task": "solve", "data": {"G": {"f": VAR}}, "points": [[0, 1, 0]]},
        {"task": "solve", "data": RADIAL, "points": [[0, 1]]},
        {"task": "fibres", "data": RADIAL, "params": [[1, 2]]},
        {"task": "slice", "slice": "bogus", "g": {"f": VAR}, "h": {"f": CONST0},
         "points": [[0, 0, 0]]},
        {"task": "slice", "slice": "euclidean", "g": {"f": VAR}, "h": {"f": CONST0},
         "grid": {"min": [0, 0, 0], "max": [1, 1, 1], "counts": [0, 1, 1]}},
        {"task": "charts", "charts": {"op": "transition", "from": "G", "to": "XX",
                                      "values": [[1, 0, 0, 0]]}},
    ])
    def test_schema_errors_raise(self, config):
        with pytest.raises(ExprSchemaError):
            run_config(config)

    def test_exit_code_2_on_malformed_expression(self):
        config = {"task": "solve",
                  "data": {"G": {"f": {"op": "bad"}}, "H": {"f": CONST0}},
                  "points": [[0, 1, 0]]}
        proc = run_main(config)
        assert proc.returncode == 2
        err = json.loads(proc.stderr)
        assert "error" in err

    def test_exit_code_2_on_bad_json(self):
        proc = subprocess.run([sys.executable, "-m", "bhm.cli"],
                              input=b"{not json", capture_output=True)
        assert proc.returncode == 2

    def test_exit_code_3_on_domain_error(self):
        # identically-vanishing congruence component
        config = {"task": "solve",
                  "data": {"G": {"f": CONST0}, "H": {"f": CONST0}},
                  "points": [[1, 1, [0, 1]]]}
        proc = run_main(config)
        assert proc.returncode == 3
        assert json.loads(proc.stderr)["error"]["type"] == "DegenerateAllComponentsError"

    def test_exit_code_0_and_task_flag(self):
        config = {"data": RADIAL, "points": [[0, 1, 0]]}
        proc = run_main(config, "--task", "solve")
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["task"] == "solve"

    def test_threads_env_same_output(self):
        config = {"task": "solve", "data": RADIAL,
                  "points": [[0.1 * k, 1, 0.2] for k in range(6)]}
        base = run_main(config)
        import os
        proc = subprocess.run(
            [sys.executable, "-m", "bhm.cli"],
            input=json.dumps(config).encode(), capture_output=True,
            env={**os.environ, "BHM_THREADS": "4"},
        )
        assert proc.returncode == 0
        assert proc.stdout == base.stdout
