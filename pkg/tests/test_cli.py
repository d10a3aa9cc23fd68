import io
import json
import subprocess
import sys

import pytest

from swanlab.cli import SCHEMA, main, run_batch, run_job


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_conductor_example(capsys):
    code, data, _ = call(capsys, "conductor", "-p", "3", "--witt", '["pi^-2"]')
    assert code == 0
    assert data["schema"] == SCHEMA and data["command"] == "conductor"
    assert data["sw"] == 2 and data["sw_mod"] == 2
    assert data["rsw"]["alpha"] == "0" and data["rsw"]["beta"] == "2"
    assert data["slope"] == 3 and data["log_slope"] == 2
    assert data["char_point"]["beta"] == "1"
    assert data["status"] == "ok"


def test_out_of_range_exit_code(capsys):
    code, data, _ = call(capsys, "conductor", "-p", "2", "--residue", "rational(y)",
                         "--witt", '["y*pi^-2"]')
    assert code == 2
    assert data["sw"] == 2 and data["sw_mod"] == 1
    assert data["rsw_mod_status"] == "unsupported_range"
    assert data["slope"] is None and data["status"] == "out_of_theorem_range"


def test_reduce(capsys):
    code, data, _ = call(capsys, "reduce", "-p", "2", "--witt", '["pi^-4 + pi^-1"]')
    assert code == 0
    assert data["input"] == ["pi^-4 + pi^-1"]
    assert data["representative"] == ["0"] and data["sw"] == 0


def test_filtration_table(capsys):
    code, data, _ = call(capsys, "filtration", "-p", "3", "--witt", '["pi^-2"]',
                         "--n-range", "0..3")
    assert code == 0
    assert data["n"] == [0, 1, 2, 3]
    assert data["fil"] == [False, False, True, True]
    assert data["fil_prime"] == [False, False, True, True]


def test_filtration_modified_is_one_lower_for_split_levels(capsys):
    code, data, _ = call(capsys, "filtration", "-p", "2", "--residue", "rational(y)",
                         "--witt", '["y*pi^-2"]', "--n-range", "0..3")
    assert data["fil"] == [False, False, True, True]
    assert data["fil_prime"] == [False, True, True, True]


def test_normalform(capsys):
    code, data, _ = call(capsys, "normalform", "-p", "3", "-n", "2", "--beta", "2")
    assert code == 0 and data["normal_form"]["x"] == "2"
    code, data, _ = call(capsys, "normalform", "-p", "2", "-n", "1", "--alpha", "1")
    assert code == 2 and data["status"] == "not_in_bgr"


def test_witt_ops(capsys):
    code, data, _ = call(capsys, "witt", "-p", "2", "--witt", '["pi^-1", "0"]', "--op", "add",
                         "--witt2", '["pi^-1", "0"]')
    assert code == 0 and data["result"] == ["0", "pi^-2"]
    code, data, _ = call(capsys, "witt", "-p", "3", "--witt", '["pi^-1"]', "--op", "v",
                         "--times", "2")
    assert data["result"] == ["0", "0", "pi^-1"]
    code, data, _ = call(capsys, "witt", "-p", "2", "--witt", '["pi^-1", "0"]', "--op", "add")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ("conductor", "-p", "2", "--witt", '["pi^-"]'),
    ("conductor", "-p", "4", "--witt", '["pi^-1"]'),
    ("conductor", "-p", "2", "-q", "6", "--witt", '["pi^-1"]'),
    ("conductor", "-p", "2", "--witt", "not json"),
    ("conductor", "-p", "2", "--residue", "banana", "--witt", '["pi"]'),
    ("filtration", "-p", "2", "--witt", '["pi"]', "--n-range", "5..1"),
])
def test_errors_exit_one(capsys, argv):
    code, data, _ = call(capsys, *argv)
    assert code == 1
    assert data["status"] == "error" and data["error"]["type"]


def test_parse_error_position(capsys):
    _, data, _ = call(capsys, "conductor", "-p", "2", "--witt", '["pi^-"]')
    assert data["error"]["position"] == 4


def test_budget_exit_code(capsys):
    code, data, _ = call(capsys, "conductor", "-p", "2", "--witt", '["pi^-16"]',
                         "--max-iterations", "1")
    assert code == 3
    assert data["status"] == "budget_exceeded" and data["upper_bound"] is True
    assert data["sw_upper_bound"] >= 1


def test_output_is_byte_stable(capsys):
    argv = ("conductor", "-p", "3", "-q", "9", "--residue", "rational(y)",
            "--witt", '["g*y*pi^-5 + pi^-3", "y^2*pi^-1"]')
    _, _, first = call(capsys, *argv)
    _, _, second = call(capsys, *argv)
    assert first == second


JOBS = [
    {"command": "conductor", "p": 3, "witt": ["pi^-2"]},
    {"command": "conductor", "p": 2, "residue": "rational(y)", "witt": ["y*pi^-2"]},
    {"command": "reduce", "p": 2, "witt": ["pi^-2"]},
]


def test_batch_in_process():
    code, data = run_batch(JOBS)
    assert code == 2 and data["status"] == "partial"
    assert [r["command"] for r in data["results"]] == ["conductor", "conductor", "reduce"]
    assert data["results"][0] == run_job(JOBS[0])[1]


def test_batch_parallel_keeps_order(tmp_path, capsys):
    path = tmp_path / "jobs.json"
    path.write_text(json.dumps(JOBS))
    code, serial, _ = call(capsys, "batch", str(path))
    code2, parallel, _ = call(capsys, "batch", str(path), "--jobs", "2")
    assert code == code2 == 2
    assert serial == parallel


def test_batch_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(JOBS[:1])))
    code, data, _ = call(capsys, "batch", "-")
    assert code == 0 and data["results"][0]["sw"] == 2


def test_batch_rejects_non_list(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO('{"p": 2}'))
    code, data, _ = call(capsys, "batch", "-")
    assert code == 1


def test_unknown_command_in_job():
    code, data = run_job({"command": "frobnicate"})
    assert code == 1 and data["error"]["type"] == "ConfigError"


def test_selftest_small(capsys):
    code, data, _ = call(capsys, "selftest", "--suite", "witt", "--suite", "oracle",
                         "--scale", "1/10")
    assert code == 0
    assert len(data["suites"]) == 2 and all(r["ok"] for r in data["suites"])
    assert all(isinstance(r["milliseconds"], int) for r in data["suites"])


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "swanlab.cli", "reduce", "-p", "2",
                          "--witt", '["pi^-2"]'], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["representative"] == ["pi^-1"]
