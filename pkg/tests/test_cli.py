import json

import pytest

from sralgebra.cli import main, run
from sralgebra.reports import SCHEMA, Cache

from conftest import make_algebra

BASE = ["--group", "I2:3", "--eta", "1/3"]


def report(argv):
    code, text = run(argv)
    return code, json.loads(text)


def test_info():
    code, rep = report(["info", *BASE])
    assert code == 0 and rep["schema"] == SCHEMA
    assert rep["system"]["order"] == 6
    assert rep["result"]["basis_sizes"] == {"0": 6, "1": 30}


def test_determinism():
    argv = ["degenerate-scan", *BASE, "--kind", "supertrace", "--d", "1"]
    a = run(argv)
    b = run(argv)
    assert a == b and a[0] == 0


def test_short_probe_scan_is_inconclusive():
    code, rep = report(["degenerate-scan", *BASE, "--kind", "supertrace", "--d", "1", "--probe", "3"])
    assert code == 3 and rep["result"]["status"] == "Inconclusive"


def test_cache_equivalence(tmp_path):
    argv = ["kernel", *BASE, "--kind", "trace", "--d", "1", "--probe", "3"]
    plain = run(argv)
    cold = run(argv + ["--cache", str(tmp_path)])
    assert list(tmp_path.iterdir())
    warm = run(argv + ["--cache", str(tmp_path)])
    strip = lambda text: {k: v for k, v in json.loads(text).items() if k != "config"}
    assert strip(plain[1]) == strip(cold[1]) == strip(warm[1])


def test_cache_rejects_foreign_payload(tmp_path):
    c = Cache(tmp_path)
    c.put({"x": 1}, {"r": 2})
    f = next(tmp_path.iterdir())
    data = json.loads(f.read_text())
    data["input"] = {"x": 3}
    f.write_text(json.dumps(data))
    assert c.get({"x": 1}) is None


def test_traces_both_strategies():
    code, rep = report(["traces", *BASE, "--D", "4", "--strategy", "both"])
    assert code == 0
    for kind in ("trace", "supertrace"):
        assert rep["result"][kind]["strategies_agree"] is True


def test_report_elements_round_trip():
    H = make_algebra("I2", 3, "1/3")
    code, rep = report(["singlet", *BASE, "--d", "2", "--element", "a0_1*a1_1 + 2*a0_2*a1_2*rot(1)"])
    assert code == 0
    for key in ("element", "projection"):
        text = rep["result"][key]
        assert H.format(H.parse(text)) == text


def test_config_errors():
    assert run(["info", "--group", "B2:3"])[0] == 2
    assert run(["info", "--group", "I2:4", "--eta", "1/3"])[0] == 2
    assert run(["kernel", *BASE, "--D", "2", "--d", "1", "--probe", "3"])[0] == 2
    assert run(["info", "--group", "I2:3", "--eta", "1/"])[0] == 2


def test_kernel_comparison_refuses_without_rays():
    code, rep = report(["theorem3", "--group", "I2:3", "--eta", "1/4", "--d", "1", "--probe", "3"])
    assert code == 3 and rep["result"]["status"] == "Refused"


def test_kernel_ideal_flag():
    code, rep = report(["kernel", *BASE, "--kind", "trace", "--d", "1", "--probe", "3", "--ideal"])
    assert code == 0
    assert rep["result"]["report"]["ideal_check"]["passed"] is True


def test_selftest():
    code, rep = report(["selftest", *BASE, "--words", "5"])
    assert code == 0


def test_main_writes_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["info", *BASE, "--out", str(out)]) == 0
    assert json.loads(out.read_text())["command"] == "info"
    assert capsys.readouterr().out == ""
