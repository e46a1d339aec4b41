from __future__ import annotations

import io
import json
import subprocess
import sys

from superdual.cli import run


def call(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_extremal_example():
    code, out, _ = call("extremal", "--algebra", "osp(9|10)", "--borel", "d2+,d1-,e1-,e2+,d3+,d4+,e4+,e3+,d5-",
                        "--lambda", "14,11,8,8,7,4,3,2")
    assert code == 0
    data = json.loads(out)
    assert data["frobenius"] == {"p": [14, 11, 6, 6, 3], "q": [6, 6, 3, 2]}
    assert data["weight"]["text"] == "-11δ1 + 14δ2 + 6δ3 + 6δ4 - 3δ5 - 6ε1 + 6ε2 + 2ε3 + 3ε4"


def test_kl_all_rank2(tmp_path):
    code, out, _ = call("kl", "--type", "B", "--rank", "2", "--all", "--cache-dir", str(tmp_path))
    assert code == 0
    data = json.loads(out)
    assert data["pairs"] == len(data["table"]) == 64
    assert all(row["coeffs"] in ([], [1]) for row in data["table"])


def test_kl_jobs_deterministic(tmp_path):
    one = call("kl", "--type", "B", "--rank", "2", "--all", "--cache-dir", str(tmp_path / "a"))
    three = call("kl", "--type", "B", "--rank", "2", "--all", "--jobs", "3", "--cache-dir", str(tmp_path / "b"))
    assert one == three


def test_character_trivial():
    code, out, _ = call("character", "--head", "c", "--m", "0", "--tail", "even", "--n", "1",
                        "--lambda", "|0", "--depth", "3")
    assert code == 0
    data = json.loads(out)
    assert data["terms"] == [[{"eps": {}, "level": "0"}, 1]]


def test_usage_error_exit_2():
    code, _, err = call("character", "--head", "c")
    assert code == 2 and err.startswith("usage error")
    assert call()[0] == 2


def test_domain_error_exit_3():
    code, _, err = call("extremal", "--algebra", "osp(2|2)", "--borel", "e1+,d1+", "--lambda", "1",
                        "--variant", "minus")
    assert code == 3 and err.startswith("error: ")
    assert call("extremal", "--algebra", "osp(3|2)", "--lambda", "2,2")[0] == 3


def test_negative_lambda_value():
    code, out, _ = call("extremal", "--algebra", "osp(5|2)", "--lambda", "3,1")
    assert code == 0
    assert json.loads(out)["weight"]["epsilon_r"]["eps"] == {"-1": "-1", "1/2": "-3"}


def test_oddreflect_trace():
    code, out, _ = call("oddreflect", "--head", "c", "--m", "1", "--n", "3", "--lambda", "-1|2,1",
                        "--sequence", "btilde-c", "--length", "2")
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines() if line.strip()]
    assert len(lines) >= 4


def test_table_format():
    code, out, _ = call("kl", "--format", "table", "--type", "D", "--rank", "3", "--x", "1,2,3", "--w", "-2,-1,3")
    assert code == 0 and out.strip()


def test_selftest_one_check():
    code, out, _ = call("selftest", "--only", "1")
    assert code == 0 and json.loads(out.splitlines()[0])["ok"]
    code, out, _ = call("selftest", "--format", "table", "--only", "1")
    assert code == 0 and "[PASS]" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "superdual.cli", "extremal", "--algebra", "osp(3|2)",
                           "--lambda", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "weight" in proc.stdout
