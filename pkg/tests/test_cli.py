import io
import json
import subprocess
import sys

import pytest

from orbilat import cli


def run(argv, stdin_text=None):
    out = io.StringIO()
    code = cli.main(argv, stdin=io.StringIO(stdin_text) if stdin_text is not None else None, stdout=out)
    return code, out.getvalue()


def test_report_zero_codes():
    code, text = run(["report", "--job", "-"], '{"p": 3, "d": 1}')
    assert code == 0
    rep = json.loads(text)
    assert rep["group_like"] is False
    assert {s["qdim"]["sqrt_of"] for s in rep["sectors"]} == {"4/1"}
    assert rep["hypothesis_failed"] == "C self-dual"


def test_report_is_canonical_and_roundtrips():
    _, text = run(["report", "--job", "-"], '{"p": 5, "d": 1, "s": 1}')
    line = text.strip()
    assert cli.dumps(json.loads(line)) == line


def test_report_from_file(tmp_path):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({"p": 5, "d": 2, "D_generators": [[1, 2]], "s": 2}))
    code, text = run(["report", "--job", str(job)])
    assert code == 0
    rep = json.loads(text)
    assert [s["s"] for s in rep["sectors"]] == [2]
    assert rep["sectors"][0]["dim_T"] == "5"


@pytest.mark.parametrize("job,needle", [
    ('{"p": 4, "d": 1}', "p must be odd"),
    ('{"p": 3, "d": 1, "C_generators": [[1, 0, 1]]}', "length"),
    ('{"p": 3, "d": 1, "D_generators": [[3]]}', "outside"),
    ('{"p": 3}', "d"),
    ('{"p": 3, "d": 1, "bogus": 1}', "bogus"),
    ("not json", "valid JSON"),
])
def test_schema_errors_exit_2(job, needle):
    code, text = run(["report", "--job", "-"], job)
    assert code == 2
    err = json.loads(text)["error"]
    assert err["kind"] == "usage" and needle in err["message"]


def test_enumerate_examples():
    code, text = run(["enumerate", "-p", "3", "-d", "1", "--self-dual", "--sigma-invariant"])
    assert code == 0 and text == ""
    code, text = run(["enumerate", "-p", "3", "-d", "1", "--even"])
    rows = [json.loads(x) for x in text.splitlines()]
    assert any(r["generators"] == [] for r in rows)
    assert all(r["even"] for r in rows)


def test_enumerate_group_like_at_p3_d2():
    _, text = run(["enumerate", "-p", "3", "-d", "2", "--sigma-invariant", "--even", "--self-dual"])
    rows = [json.loads(x) for x in text.splitlines()]
    assert len(rows) == 3 and all(r["group_like"] for r in rows)


def test_enumerate_resource_errors():
    code, text = run(["enumerate", "-p", "3", "-d", "30"])
    assert code == 3 and json.loads(text)["error"]["kind"] == "resource"
    code, _ = run(["enumerate", "-p", "3", "-d", "3", "--budget", "5"])
    assert code == 3


def test_theta_command():
    code, text = run(["theta", "--job", "-", "--order", "2", "--y-schedule", "1,0.5,0.1,0.05"], '{"p": 3, "d": 1}')
    assert code == 0
    out = json.loads(text)
    assert out["theta"]["coefficients"]["2/1"] == "6/1"
    sec = out["sectors"][0]
    assert sec["twisted_char"]["coefficients"]["1/36"] == "1/1"
    assert abs(sec["qdim_numeric"]["value"] - 2.0) < 1e-6


def test_theta_budget_exit_3():
    code, _ = run(["theta", "--job", "-", "--order", "6", "--budget", "5"], '{"p": 3, "d": 2}')
    assert code == 3


def test_verify_examples():
    code, text = run(["verify", "duality"])
    assert code == 0 and json.loads(text)["passed"] is True
    code, text = run(["verify", "numeric"])
    assert code == 0
    code, text = run(["verify", "nosuch"])
    assert code == 2


def test_verify_failure_exit_1():
    # a single y = 0.5 evaluation is far from the limit
    code, text = run(["verify", "numeric", "--y-schedule", "0.5"])
    assert code == 1 and json.loads(text)["passed"] is False


def test_unknown_command_exit_2():
    code, text = run(["frobnicate"])
    assert code == 2


def test_big_integers_become_strings():
    assert cli.dumps({"a": 2 ** 60, "b": 5}) == '{"a":"1152921504606846976","b":5}'


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "orbilat", "verify", "spectral"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["suites"][0]["failed"] == 0


def test_documented_schema_matches_code():
    from pathlib import Path
    doc = Path(__file__).resolve().parent.parent / "docs" / "job.schema.json"
    assert json.loads(doc.read_text()) == cli.JOB_SCHEMA
