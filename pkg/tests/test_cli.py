import io
import json
import subprocess
import sys

import pytest

from perlab.cli import parse_levi, run, UsageError


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def result(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)["result"]


def test_orbits_report():
    r = result("orbits", "--n", "2", "--levi", "1,1,1,1")
    assert r["count"] == 9 and len(r["orbits"]) == 9


def test_period_value():
    assert result("period", "j1", "--q", "4", "--s", "1/2")["value"] == "5/3"
    assert result("period", "jn", "--q", "2", "--lambda", "3/2,1/2")["value"] == "35/6"


def test_converge_negative_lambda():
    r = result("converge", "sp", "--n", "2", "--levi", "2,2", "--lambda", "-1/2,-1/2,-1/2,-1/2")
    assert r["result"] is False
    r = result("converge", "sp", "--n", "2", "--levi", "4", "--lambda", "-1/2,-1/2,-1/2,-1/2")
    assert r["result"] is True


def test_classify_examples():
    assert result("classify", "sp", "--levi", "1,1", "--labels", "1,1", "--point", "0,1")["result"] is True
    assert result("classify", "sp", "--levi", "1,1", "--labels", "1,1", "--point", "0,0")["result"] is False
    r = result("classify", "sp", "--levi", "1,1", "--labels", "s:d,s:d", "--equations", "1,1=1")
    assert r["result"] is True


def test_rho_with_oracle():
    r = result("rho", "--n", "2", "--levi", "1,1,1,1", "--oracle")
    assert all(o["oracle_agrees"] for o in r["orbits"])


def test_count_and_graph():
    r = result("count", "--n", "2")
    assert r["t_orbits"] == [6, 2, 1]
    g = result("graph", "--n", "2")
    assert (g["vertices"], g["edges"], g["components"]) == (58, 110, 19)


def test_json_is_byte_stable():
    argv = ("orbits", "--n", "2", "--levi", "2,1,1")
    assert call(*argv)[1] == call(*argv)[1]
    text = call(*argv)[1]
    assert text == json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n"


def test_format_after_subcommand():
    code, out, _ = call("count", "--n", "1", "--format", "text")
    assert code == 0 and not out.lstrip().startswith("{")


@pytest.mark.parametrize(
    "argv",
    [
        ("bogus",),
        ("orbits", "--n", "2"),
        ("orbits", "--n", "2", "--levi", "1,1,1,1", "--frobnicate"),
        ("orbits", "--n", "9", "--levi", "1"),
        ("period", "jn", "--q", "2", "--lambda", "1,-1", "--continue"),
        ("period", "j1", "--q", "6", "--s", "1"),
        ("period", "j1", "--q", "2", "--s", "-1"),
        ("converge", "sp", "--n", "2", "--levi", "2,2", "--lambda", "1,2"),
    ],
)
def test_bad_input_exits_2(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == ""


def test_parse_levi():
    assert str(parse_levi("1,1", 2)) == "1,1;2"
    assert str(parse_levi("2,2;0", 2)) == "2,2;0"
    with pytest.raises(UsageError):
        parse_levi("3,3", 2)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "perlab", "period", "j1", "--q", "2", "--s", "1/2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["value"] == "3"
