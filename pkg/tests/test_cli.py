import io
import json
import os
import subprocess
import sys

import jsonschema
import pytest

from fsbasis.cli import main
from fsbasis.counts import WEIGHTED_COUNT_SCHEMA
from fsbasis.verify import REPORT_SCHEMA


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def counts(text):
    rows = [line.split() for line in text.strip().splitlines()[1:]]
    return [int(r[-1]) for r in rows]


def test_enumerate_examples():
    assert counts(run("enumerate", "--type", "b2", "--weight", "1,0,0", "--degree", "1")[1]) == [3]
    assert counts(run("enumerate", "--type", "b2", "--weight", "0,1,0", "--degree", "0")[1]) == [1]
    assert counts(run("enumerate", "--type", "a1", "--weight", "0,1", "--degree", "0")[1]) == [2]


def test_enumerate_list_json_lines():
    code, text = run("enumerate", "--weight", "1,0,0", "--degree", "1", "--list")
    assert code == 0
    lines = [json.loads(x) for x in text.splitlines()]
    assert len(lines) == 3 and all(set(x) == {"exponents"} for x in lines)


def test_dims_example_and_cumulative():
    assert counts(run("dims", "--type", "b2", "--weight", "1,0,0", "--degree", "1")[1]) == [3]
    code, text = run("dims", "--type", "a1", "--level", "1", "--degree", "5", "--cumulative")
    assert code == 0 and counts(text) == [1, 3, 4, 7, 13, 19]


def test_json_outputs_validate():
    for cmd in ("enumerate", "dims", "characters"):
        code, text = run(cmd, "--weight", "0,0,1", "--degree", "3", "--cumulative",
                         "--weighted", "--format", "json")
        assert code == 0
        jsonschema.validate(json.loads(text), WEIGHTED_COUNT_SCHEMA)
    code, text = run("verify", "--check", "sl2-bases", "--level", "1", "--degree", "3", "--format", "json")
    for report in json.loads(text):
        jsonschema.validate(report, REPORT_SCHEMA)


def test_csv_columns():
    code, text = run("characters", "--weight", "0,1,0", "--degree", "0", "--weighted", "--format", "csv")
    lines = text.splitlines()
    assert lines[0] == "degree,w1,w2,mult"
    assert len(lines) == 6  # five weights of the vector representation
    code, text = run("enumerate", "--weight", "1,0,0", "--degree", "2", "--cumulative", "--format", "csv")
    assert text == "degree,count\n0,1\n1,3\n2,4\n"


def test_output_is_byte_identical():
    argv = ("verify", "--check", "all", "--level", "1", "--degree", "3", "--sample", "100", "--format", "json")
    assert run(*argv) == run(*argv)


def test_verify_a1_coincidence_prints_values():
    code, text = run("verify", "--check", "a1-coincidence", "--level", "1", "--degree", "6")
    assert code == 0
    assert "pass" in text and "1, 3, 4, 7, 13, 19" in text


def test_verify_leading_terms_level2():
    code, text = run("verify", "--check", "leading-terms", "--level", "2", "--sample", "500")
    assert code == 0 and text.startswith("pass")


def test_findings_do_not_fail_exit_code():
    code, text = run("verify", "--check", "closure-dimension", "--level", "1")
    assert code == 0 and text.startswith("finding")


def test_usage_errors_exit_1():
    assert run("enumerate", "--weight", "1,0", "--degree", "1")[0] == 1
    assert run("enumerate", "--weight", "x", "--degree", "1")[0] == 1
    assert run("verify", "--check", "bogus")[0] == 1
    assert run("dims", "--weight", "1,0,0", "--degree", "2", "--arith", "modular", "--primes", "7,11")[0] == 1
    assert run("dims", "--type", "a1", "--weight", "0,1", "--degree", "2")[0] == 1
    assert run()[0] == 1


def test_resource_limit_exit_3():
    code, text = run("dims", "--weight", "1,0,0", "--degree", "5", "--cumulative", "--budget", "10")
    assert code == 3
    assert counts(text)[:2] == [1, 3]


def test_arith_both():
    code, text = run("dims", "--weight", "0,2,0", "--degree", "5", "--cumulative", "--arith", "both")
    assert code == 0 and counts(text) == [1, 0, 3, 3, 9, 12]


def test_cache_round_trip(tmp_path):
    cache = str(tmp_path / "c")
    argv = ("dims", "--weight", "1,0,1", "--degree", "5", "--cumulative", "--weighted")
    plain = run(*argv)
    first = run(*argv, "--cache-dir", cache)
    second = run(*argv, "--cache-dir", cache)
    assert plain == first == second
    code, text = run("cache", "info", "--cache-dir", cache)
    assert "1 entries" in text
    run("characters", "--weight", "1,0,0", "--degree", "2", "--cache-dir", cache)
    assert "2 entries" in run("cache", "--cache-dir", cache)[1]
    assert run("cache", "clear", "--cache-dir", cache)[1].startswith("removed 2")
    assert run(*argv, "--cache-dir", cache) == plain


def test_cache_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("FSBASIS_CACHE_DIR", str(tmp_path))
    run("characters", "--weight", "0,0,1", "--degree", "1")
    assert len(list(tmp_path.glob("*.json"))) == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fsbasis", "enumerate", "--weight", "1,0,0", "--degree", "1",
         "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == [{"weight": [], "degree": 1, "mult": 3}]
