from __future__ import annotations

import io
import json
import os
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from turanlab.cli import main

GOLDEN = Path(__file__).parent / "golden"

# (golden file name, argv); regenerate with TURANLAB_REGOLD=1
GOLDEN_RUNS = [
    ("ex_c4.json", ["ex-search", "--H", "cycle:4", "--n", "3", "4", "5", "--format", "records"]),
    ("f_c4.json", ["f-search", "--H", "cycle:4", "--n", "4", "--k", "2", "--format", "records"]),
    ("mat_j2.json", ["mat-ex", "--Q", "ones:2x2", "--n", "3", "4", "--format", "records"]),
    ("lemma1.json", ["verify-lemma1", "--H", "matching:2:2", "--n", "4", "5", "--k", "1", "2", "--format", "records"]),
    ("factorial.txt", ["factorial-check", "--tmax", "50"]),
    ("polarity.txt", ["construct", "polarity", "--q", "2", "--grid"]),
    ("kht.txt", ["construct", "kht", "--H", "cycle:4", "--t", "2"]),
]


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def no_cache(monkeypatch):
    monkeypatch.delenv("TURANLAB_CACHE", raising=False)


class TestGolden:
    @pytest.mark.parametrize("name,argv", GOLDEN_RUNS, ids=[g[0] for g in GOLDEN_RUNS])
    def test_matches(self, name, argv):
        code, out, _ = run(argv)
        assert code == 0
        path = GOLDEN / name
        if os.environ.get("TURANLAB_REGOLD"):
            path.write_text(out)
        assert out == path.read_text()


class TestRecords:
    def test_document_shape(self):
        code, out, _ = run(["ex-search", "--H", "matching:1:2", "--n", "3", "--format", "records"])
        doc = json.loads(out)
        assert code == 0
        assert doc["schema"] == "turanlab.cli/1"
        assert doc["passed"] and doc["complete"]
        assert doc["config"]["n"] == [3]
        assert doc["results"][0]["value"] == 1
        assert "stats" not in doc["results"][0]

    def test_stats_flag(self):
        _, out, _ = run(["ex-search", "--H", "cycle:4", "--n", "4", "--format", "records", "--stats"])
        assert "stats" in json.loads(out)["results"][0]

    def test_workers_same_values(self):
        def values(w):
            _, out, _ = run(["ex-search", "--H", "kst:2:2", "--n", "5", "6", "--workers", str(w),
                             "--format", "records"])
            return [r["value"] for r in json.loads(out)["results"]]

        assert values(1) == values(2) == values(3)

    def test_file_input(self, tmp_path):
        p = tmp_path / "h.txt"
        p.write_text("2 4 4\n0 1\n1 2\n2 3\n0 3\n")
        _, a, _ = run(["ex-search", "--H", str(p), "--n", "5", "--format", "records"])
        _, b, _ = run(["ex-search", "--H", "cycle:4", "--n", "5", "--format", "records"])
        assert json.loads(a)["results"] == json.loads(b)["results"]


class TestExitCodes:
    def test_parse_error(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("2 3 1\n0 1 2\n")
        assert run(["ex-search", "--H", str(p), "--n", "3"])[0] == 3
        assert run(["ex-search", "--H", "cycle:x", "--n", "3"])[0] == 3

    def test_budget(self):
        code, out, _ = run(["ex-search", "--H", "cycle:4", "--n", "6", "--max-nodes", "5"])
        assert code == 4
        assert "INCOMPLETE" in out

    def test_usage(self):
        with pytest.raises(SystemExit) as info:
            run(["ex-search", "--n", "3"])
        assert info.value.code == 2
        assert run(["construct", "khtsr", "--t", "3", "--s", "2"])[0] == 2

    def test_corrupt_cache(self, tmp_path):
        cache = tmp_path / "c"
        assert run(["ex-search", "--H", "cycle:4", "--n", "4", "--cache", str(cache)])[0] == 0
        (f,) = cache.glob("*.json")
        f.write_text(f.read_text().replace('"value": 4', '"value": 5'))
        assert run(["ex-search", "--H", "cycle:4", "--n", "4", "--cache", str(cache)])[0] == 5

    def test_violation(self):
        # an understated ex makes the pigeonhole count fail
        code, _, _ = run(["lemma2-audit", "--H", "cycle:4", "--t", "2", "--ex", "0", "--random", "5",
                          "--seed", "1", "--n-max", "6"])
        assert code == 1


class TestCommands:
    def test_bounds_table(self):
        code, out, _ = run(["bounds-table", "--H", "cycle:4", "--t", "2", "--n", "4", "5", "--exact"])
        assert code == 0 and "PASS" in out

    def test_drc_file(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("3 4 2\n0 1 2\n1 2 3\n")
        code, out, _ = run(["drc-check", "--G", str(p), "--t", "1", "--r", "2", "--x", "1", "--a", "1/3",
                            "--format", "records"])
        doc = json.loads(out)
        assert code == 0
        assert doc["results"][0]["checks"]["passed"]

    def test_drc_sweep(self):
        code, out, _ = run(["drc-check", "--sweep", "--n", "4", "--ts", "1", "--rs", "1", "2"])
        assert code == 0 and "violations=0" in out

    def test_lemma2_random(self):
        code, _, _ = run(["lemma2-audit", "--H", "matching:1:2", "--t", "2", "--random", "10", "--seed", "4"])
        assert code == 0

    def test_lemma2_file(self, tmp_path):
        from turanlab.hypercore import complete
        from turanlab.lettering import letter_transform

        p = tmp_path / "l.txt"
        p.write_text(letter_transform(complete(2, 4), 1).to_text())
        args = ["lemma2-audit", "--H", "matching:1:2", "--t", "2", "--lettered", str(p)]
        # K4 contains K_{M(1,2),2} = C4, which the guarded audit reports
        code, _, err = run(args + ["--assert-free"])
        assert code == 1 and "embedding" in err
        code, _, _ = run(["lemma2-audit", "--H", "matching:1:2", "--t", "2", "--lettered",
                          str(p.parent / "missing.txt")])
        assert code == 3

    @pytest.mark.parametrize("what", ["kht", "khtsr", "matching", "stack", "polarity", "inflate"])
    def test_construct(self, what):
        assert run(["construct", what])[0] == 0

    @pytest.mark.parametrize("which", ["lemma1", "theorem3", "theorem6"])
    def test_sweeps(self, which):
        code, out, _ = run(["sweep", which, "--n-max", "4"])
        assert code == 0 and out.rstrip().endswith("PASS")
