"""Acceptance criteria 1 to 10.

Each criterion is a plain function returning ``(ok, detail)``; the pytest
wrappers print one ``criterion N: PASS|FAIL`` line per criterion and assert.
Run ``python tests/test_acceptance.py`` for the summary lines alone.
"""

from __future__ import annotations

import io
import json
import random
import sys
import time
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import ex_oracle, zarankiewicz_rows, mat_ex_oracle  # noqa: E402
from turanlab.bounds import THEOREM3_C, factorial_bound_check, theorem3_bound  # noqa: E402
from turanlab.cli import main  # noqa: E402
from turanlab.drc import drc_sweep  # noqa: E402
from turanlab.extremal import ex_exact, verify_lemma1  # noqa: E402
from turanlab.hypercore import build_k_h_t, cycle, matching, random_free_hypergraph  # noqa: E402
from turanlab.lettering import lemma2_audit, letter_transform  # noqa: E402
from turanlab.matrix01 import (  # noqa: E402
    all_ones,
    from_rows,
    inflate,
    mat_contains,
    mat_ex_exact,
    polarity_construction,
    stack,
)
from turanlab.search import SearchLimits  # noqa: E402

GRID = {
    "M(1,2)": matching(1, 2),
    "M(1,3)": matching(1, 3),
    "M(2,2)": matching(2, 2),
    "C4": cycle(4),
    "K22": build_k_h_t(matching(1, 2), 2),
}
N_MAX = 6


@lru_cache(maxsize=None)
def ex_value(name: str, n: int) -> int:
    return ex_exact(n, GRID[name], strict=True).value


def criterion_1():
    start = time.perf_counter()
    bad = []
    for name, H in GRID.items():
        for n in range(1, N_MAX + 1):
            got, want = ex_value(name, n), ex_oracle(n, H.d, H.edges, H.n)
            if got != want:
                bad.append((name, n, got, want))
    secs = time.perf_counter() - start
    return not bad and secs < 300, f"{len(GRID) * N_MAX} cases, mismatches={bad}, {secs:.1f}s"


def criterion_2():
    bad = []
    cases = 0
    for n in range(1, 13):
        for s in range(2, n + 2):
            cases += 1
            v = ex_exact(n, matching(1, s), strict=True).value
            if v != s - 1:
                bad.append((n, s, v))
    return not bad, f"{cases} cases, mismatches={bad}"


def criterion_3():
    bad = []
    cases = 0
    for name, H in GRID.items():
        for n in range(1, N_MAX + 1):
            for k in (1, 2, 3):
                cases += 1
                rep = verify_lemma1(n, k, H)
                if not rep.holds:
                    bad.append((name, n, k, rep.ex_value, rep.f_value))
    return not bad, f"{cases} cases, violations={bad}"


def criterion_4(count: int = 240, seed: int = 2024):
    rng = random.Random(seed)
    names = list(GRID)
    bad = []
    nonempty = 0
    for i in range(count):
        name = rng.choice(names)
        H = GRID[name]
        t = rng.choice([2, 3])
        n = rng.randint(H.d + 1, N_MAX)
        Q = random_free_hypergraph(n, H.d + 1, build_k_h_t(H, t), rng)
        L = letter_transform(Q, rng.randint(1, 3))
        audit = lemma2_audit(L, H, t, ex_value(name, n), assert_free=True)
        nonempty += L.base.m > 0
        ok = (audit.tuple_count <= comb(audit.r, t) * audit.ex_value
              and sum(audit.deg_profile.values()) == L.base.m
              and audit.passed)
        if not ok:
            bad.append((i, name, t, n, audit.verdicts))
    return not bad, f"{count} instances ({nonempty} non-empty), violations={bad}"


def criterion_5():
    start = time.perf_counter()
    rep = factorial_bound_check(300)
    secs = time.perf_counter() - start
    return rep.passed and secs < 1, f"t=2..300, failures={rep.failures}, {secs:.3f}s"


def criterion_6():
    J = all_ones(2, 2)
    got = [mat_ex_exact(n, J, 2, strict=True).value for n in range(1, 6)]
    want = [mat_ex_oracle(n, J.ones, J.dims) for n in range(1, 5)] + [zarankiewicz_rows(5)]
    return got == want, f"search={got}, oracle={want}"


def criterion_7():
    start = time.perf_counter()
    parts = []
    ok = True
    J = all_ones(2, 2)
    for q in (2, 3):
        M = polarity_construction(q)
        n = M.dims[0]
        ones = len(M.ones)
        good = (not mat_contains(M, J) and ones == (q + 1) * (q * q + q + 1)
                and Fraction(ones) ** 2 > Fraction(n**3, 4))
        ok &= good
        parts.append(f"polarity q={q}: {ones} ones, avoids J2={not mat_contains(M, J)}")
    I = inflate(polarity_construction(2), 2)
    target = stack(from_rows([[1, 1]]), 2)
    avoids = not mat_contains(I, target)
    ok &= avoids
    parts.append(f"inflate avoids stack(1x2 ones, 2)={avoids}")
    secs = time.perf_counter() - start
    return ok and secs < 60, "; ".join(parts) + f"; {secs:.1f}s"


def criterion_8():
    bad = []
    cases = 0
    for name, H in GRID.items():
        for t in (2, 3):
            K = build_k_h_t(H, t)
            for n in range(1, N_MAX + 1):
                cases += 1
                exK = ex_exact(n, K, strict=True).value
                b = theorem3_bound(n, H.d, t, ex_value(name, n), THEOREM3_C)
                if not exK <= b.value:
                    bad.append((name, t, n, exK, str(b.value)))
    return not bad, f"C={THEOREM3_C}, {cases} cases, violations={bad}"


def criterion_9(sample: int = 10_000, seed: int = 9):
    full = drc_sweep(4)
    sampled = drc_sweep(5, max_edges=6, sample=sample, seed=seed)
    ok = full.passed and sampled.passed and sampled.instances >= 10_000
    detail = (f"n=4 full: {full.instances} instances, {full.hypothesis_instances} with a>0, "
              f"{full.oracle_checked} oracle; n=5 sample: {sampled.instances} instances, "
              f"{sampled.hypothesis_instances} with a>0, {sampled.oracle_checked} oracle; "
              f"violations={full.violations + sampled.violations}")
    return ok, detail


def _run(argv):
    out = io.StringIO()
    with redirect_stdout(out), redirect_stderr(io.StringIO()):
        code = main(argv)
    return code, out.getvalue()


DETERMINISM_RUNS = [
    ["ex-search", "--H", "kst:2:2", "--n", "4", "5", "6"],
    ["f-search", "--H", "cycle:4", "--n", "5", "--k", "2", "3"],
    ["mat-ex", "--Q", "ones:2x2", "--n", "4"],
    ["verify-lemma1", "--H", "matching:2:2", "--n", "5", "--k", "2"],
    ["lemma2-audit", "--H", "cycle:4", "--t", "2", "--random", "20", "--seed", "5"],
    ["bounds-table", "--H", "cycle:4", "--t", "2", "--n", "4", "5", "--exact"],
    ["factorial-check", "--tmax", "100"],
    ["drc-check", "--sweep", "--n", "5", "--max-edges", "4", "--sample", "200", "--seed", "3"],
    ["construct", "inflate", "--q", "2"],
    ["sweep", "theorem6", "--n-max", "5"],
]


def criterion_10():
    problems = []
    for argv in DETERMINISM_RUNS:
        a = _run(argv + ["--format", "records"])
        b = _run(argv + ["--format", "records"])
        if a != b:
            problems.append(("rerun", argv[0]))
    for argv in (["ex-search", "--H", "cycle:4", "--n", "5", "6"],
                 ["ex-search", "--H", "kst:2:2", "--n", "6"],
                 ["f-search", "--H", "cycle:4", "--n", "6", "--k", "2"],
                 ["mat-ex", "--Q", "ones:2x2", "--n", "4"]):
        values = set()
        for w in (1, 2, 4):
            _, out = _run(argv + ["--workers", str(w), "--format", "records"])
            values.add(tuple(r["value"] for r in json.loads(out)["results"]))
        if len(values) != 1:
            problems.append(("workers", argv[0], sorted(values)))
    ex1 = ex_exact(6, build_k_h_t(cycle(4), 2), SearchLimits(workers=1))
    ex3 = ex_exact(6, build_k_h_t(cycle(4), 2), SearchLimits(workers=3))
    if ex1.to_record() != ex3.to_record():
        problems.append(("workers", "library record"))
    return not problems, f"{len(DETERMINISM_RUNS)} commands rerun, problems={problems}"


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}


def line(number, ok, detail):
    return f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, detail = CRITERIA[number]()
    with capsys.disabled():
        print("\n" + line(number, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number in sorted(CRITERIA):
        ok, detail = CRITERIA[number]()
        failed += not ok
        print(line(number, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
