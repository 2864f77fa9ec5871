"""Command-line front end: ``turanlab <command> [options]``.

Exit status: 0 all checks passed, 1 a checked inequality or invariant failed,
2 usage error or invalid parameters, 3 unparsable input, 4 search budget exceeded, 5 corrupt cache
record.

``--format records`` prints one JSON document with sorted keys and no timing
data (unless ``--stats``), so identical invocations give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    THEOREM3_C,
    THEOREM6_C,
    counting_chain,
    factorial_bound_check,
    kst_parameters,
    theorem3_bound,
    theorem6_bound,
)
from .drc import DrcInstance, bound_EY, check_instance, drc_sweep, drc_witness, exact_expectation_X
from .errors import BudgetExceeded, CorruptRecord, DegenerateEx, NotKHtFree, ParseError, TuranLabError
from .extremal import ex_exact, f_exact, verify_lemma1
from .hypercore import (
    Hypergraph,
    build_k_h_t,
    build_k_h_t_s_r,
    complete,
    cycle,
    matching,
    parse_hypergraph,
    random_free_hypergraph,
)
from .lettering import lemma2_audit, letter_transform, parse_lettered
from .matrix01 import (
    Matrix01,
    all_ones,
    identity,
    inflate,
    mat_ex_exact,
    parse_matrix,
    polarity_construction,
    stack,
)
from .records import ResultCache
from .search import SearchLimits

SCHEMA = "turanlab.cli/1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE, EXIT_BUDGET, EXIT_CORRUPT = 0, 1, 2, 3, 4, 5


# ---------------------------------------------------------------------------
# object specs
# ---------------------------------------------------------------------------


def _spec_ints(spec: str, name: str, count: int) -> list[int]:
    parts = spec.split(":")[1:]
    if len(parts) != count:
        raise ParseError(f"{name} spec needs {count} integer fields: {spec!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"bad integer in spec {spec!r}") from None


def load_hypergraph(spec: str) -> Hypergraph:
    """A file path, or one of ``matching:D:S``, ``cycle:N``, ``complete:D:N``,
    ``kst:S:T``."""
    kind = spec.split(":", 1)[0]
    if kind == "matching":
        return matching(*_spec_ints(spec, kind, 2))
    if kind == "cycle":
        return cycle(*_spec_ints(spec, kind, 1))
    if kind == "complete":
        return complete(*_spec_ints(spec, kind, 2))
    if kind == "kst":
        s, t = _spec_ints(spec, kind, 2)
        return build_k_h_t(matching(1, s), t)
    try:
        text = Path(spec).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read hypergraph {spec!r}: {exc}") from exc
    return parse_hypergraph(text)


def load_matrix(spec: str) -> Matrix01:
    """A file path, or ``ones:AxB[xC...]`` / ``identity:N``."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "ones":
            return all_ones(*(int(x) for x in rest.split("x")))
        if kind == "identity":
            return identity(int(rest))
    except ValueError:
        raise ParseError(f"bad matrix spec {spec!r}") from None
    try:
        text = Path(spec).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read matrix {spec!r}: {exc}") from exc
    return parse_matrix(text)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


class Output:
    def __init__(self, args):
        self.args = args
        self.results: list[dict] = []
        self.rows: list[list] = []
        self.header: list[str] | None = None
        self.text: list[str] = []
        self.passed = True
        self.budget = False

    def add(self, record: dict, row: list | None = None, ok: bool = True):
        self.results.append(record)
        if row is not None:
            self.rows.append(row)
        self.passed = self.passed and ok

    def emit(self, stream=None):
        stream = stream or sys.stdout
        if self.args.format == "records":
            doc = {
                "schema": SCHEMA,
                "version": __version__,
                "command": self.args.command,
                "config": _config(self.args),
                "results": self.results,
                "passed": self.passed,
                "complete": not self.budget,
            }
            stream.write(json.dumps(doc, sort_keys=True, indent=1) + "\n")
            return
        for line in self.text:
            stream.write(line.rstrip("\n") + "\n")
        if self.rows:
            header = self.header or []
            cells = [[str(c) for c in r] for r in self.rows]
            widths = [max(len(h), *(len(r[i]) for r in cells)) for i, h in enumerate(header)]
            stream.write("  ".join(h.rjust(w) for h, w in zip(header, widths)) + "\n")
            for r in cells:
                stream.write("  ".join(c.rjust(w) for c, w in zip(r, widths)) + "\n")
        if self.budget:
            stream.write("INCOMPLETE (budget exceeded)\n")
        else:
            stream.write(("PASS" if self.passed else "FAIL") + "\n")


def _config(args) -> dict:
    skip = {"func", "format", "stats"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        out[k] = v
    return out


def _limits(args) -> SearchLimits:
    return SearchLimits(args.max_nodes, args.max_seconds, args.workers)


def _cache(args) -> ResultCache | None:
    if args.cache:
        return ResultCache(args.cache)
    return ResultCache.from_env()


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_ex_search(args, out: Output):
    H = load_hypergraph(args.H)
    out.header = ["n", "d", "ex", "exact", "witness_edges"]
    for n in args.n:
        rec = ex_exact(n, H, _limits(args), _cache(args))
        out.add(rec.to_record(args.stats), [n, H.d, rec.value, rec.exact, rec.witness.m], rec.exact)
        if not rec.exact:
            out.budget = True


def cmd_f_search(args, out: Output):
    H = load_hypergraph(args.H)
    out.header = ["n", "k", "f", "exact"]
    for n in args.n:
        for k in args.k:
            rec = f_exact(n, k, H, _limits(args), _cache(args))
            out.add(rec.to_record(args.stats), [n, k, rec.value, rec.exact], rec.exact)
            if not rec.exact:
                out.budget = True


def cmd_mat_ex(args, out: Output):
    Q = load_matrix(args.Q)
    out.header = ["n", "d", "ex", "exact"]
    for n in args.n:
        rec = mat_ex_exact(n, Q, None, _limits(args), _cache(args))
        out.add(rec.to_record(args.stats), [n, Q.d, rec.value, rec.exact], rec.exact)
        if not rec.exact:
            out.budget = True
        if args.grid and rec.witness.d == 2:
            out.text.append(f"# n={n} witness\n" + rec.witness.grid())


def cmd_verify_lemma1(args, out: Output):
    H = load_hypergraph(args.H)
    out.header = ["n", "k", "ex", "f", "k(f+n)", "holds", "transform_letters"]
    for n in args.n:
        for k in args.k:
            rep = verify_lemma1(n, k, H, _limits(args), _cache(args))
            out.add(rep.to_record(), [n, k, rep.ex_value, rep.f_value, rep.rhs, rep.holds,
                                      rep.transform_letters], rep.passed)


def cmd_lemma2_audit(args, out: Output):
    H = load_hypergraph(args.H)
    out.header = ["instance", "n", "r", "k", "p", "tuples", "C(r,t)ex", "passed"]
    if args.lettered:
        try:
            text = Path(args.lettered).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {args.lettered!r}: {exc}") from exc
        L = parse_lettered(text)
        ex = args.ex if args.ex is not None else ex_exact(L.base.n, H, _limits(args), _cache(args), strict=True).value
        cases = [(L, ex)]
    else:
        rng = random.Random(args.seed)
        K = build_k_h_t(H, args.t)
        ex_cache: dict[int, int] = {}
        cases = []
        for _ in range(args.random):
            n = rng.randint(max(H.d + 1, 2), args.n_max)
            if n not in ex_cache:
                ex_cache[n] = (args.ex if args.ex is not None
                               else ex_exact(n, H, _limits(args), _cache(args), strict=True).value)
            Q = random_free_hypergraph(n, H.d + 1, K, rng)
            cases.append((letter_transform(Q, rng.randint(1, args.k_max)), ex_cache[n]))
    for i, (L, ex) in enumerate(cases):
        audit = lemma2_audit(L, H, args.t, ex, assert_free=args.assert_free)
        out.add(audit.to_record(), [i, audit.n, audit.r, audit.k, audit.p, audit.tuple_count,
                                    audit.pigeonhole_bound, audit.passed], audit.passed)


def cmd_bounds_table(args, out: Output):
    H = load_hypergraph(args.H) if args.H else None
    d = H.d if H is not None else args.d
    if d is None:
        raise ParseError("bounds-table needs --H or --d")
    out.header = ["n", "ex_d", "k", "r", "contradiction", "bound", "exact", "ratio"]
    for n in args.n:
        if H is not None:
            ex = ex_exact(n, H, _limits(args), _cache(args), strict=True).value
        else:
            ex = args.ex
        rec = {"n": n, "d": d, "t": args.t, "ex_value": ex}
        try:
            params = kst_parameters(n, d, args.t, ex, Fraction(args.constant), args.mode)
            chain = counting_chain(params)
            rec["params"] = params.to_record()
            rec["chain"] = chain.to_record()
            k, r, contra = params.k, params.r, chain.contradiction
        except DegenerateEx:
            k = r = contra = "-"
        bound = theorem3_bound(n, d, args.t, ex, Fraction(args.C))
        rec["bound"] = bound.to_record()
        exact = ratio = "-"
        ok = True
        if H is not None and args.exact:
            val = ex_exact(n, build_k_h_t(H, args.t), _limits(args), _cache(args), strict=True).value
            exact = val
            ratio = f"{float(Fraction(val) / bound.value):.4f}"
            rec["exact"] = val
            rec["ratio"] = str(Fraction(val) / bound.value)
            ok = val <= bound.value
        out.add(rec, [n, ex, k, r, contra, f"{float(bound.value):.2f}", exact, ratio], ok)


def cmd_factorial_check(args, out: Output):
    rep = factorial_bound_check(args.tmax)
    out.text.append(f"checked 2 <= t <= {args.tmax}: "
                    + ("all pass" if rep.passed else f"first failure at t={rep.first_failure}"))
    out.add(rep.to_record(), None, rep.passed)


def cmd_drc_check(args, out: Output):
    if args.sweep:
        rep = drc_sweep(args.n, args.uniformity, args.max_edges, tuple(args.ts), tuple(args.rs),
                        None, args.sample, args.seed or 0)
        out.text.append(f"instances={rep.instances} nontrivial={rep.hypothesis_instances} "
                        f"oracle_checked={rep.oracle_checked} violations={len(rep.violations)}")
        out.add(rep.to_record(), None, rep.passed)
        return
    if not args.G:
        raise ParseError("drc-check needs --G FILE (or --sweep)")
    G = load_hypergraph(args.G)
    inst = DrcInstance(G, args.t, args.r, args.x, Fraction(args.a))
    ex, ey = exact_expectation_X(inst), bound_EY(inst)
    w = drc_witness(inst, args.budget, args.seed)
    rep = check_instance(inst)
    rec = {
        "instance": inst.to_record(), "EX": ex.to_record(), "EY": ey.to_record(),
        "witness": w.to_record(), "checks": rep.to_record(),
    }
    out.text.append(f"E[X]={ex.value} >= {ex.bound}  E[Y]={ey.value} <= {ey.bound}")
    out.text.append(f"hypothesis lhs={w.lhs} a={inst.a} holds={w.hypothesis}  A={list(w.A)}")
    out.add(rec, None, rep.passed and w.guarantee_ok)


def cmd_construct(args, out: Output):
    what = args.what
    if what == "kht":
        obj = build_k_h_t(load_hypergraph(args.H), args.t)
    elif what == "khtsr":
        obj = build_k_h_t_s_r(load_hypergraph(args.H), args.t, args.s, args.r)
    elif what == "matching":
        obj = matching(args.d, args.s)
    elif what == "stack":
        obj = stack(load_matrix(args.P), args.t)
    elif what == "polarity":
        obj = polarity_construction(args.q)
    elif what == "inflate":
        M = load_matrix(args.M) if args.M else polarity_construction(args.q)
        obj = inflate(M, args.d, axis=args.axis)
    else:  # pragma: no cover - argparse restricts choices
        raise ParseError(what)
    if isinstance(obj, Matrix01) and obj.d == 2 and args.grid:
        out.text.append(obj.grid())
    else:
        out.text.append(obj.to_text())
    out.add({"object": obj.to_record()}, None, True)


def cmd_sweep(args, out: Output):
    grid = [matching(1, 2), matching(1, 3), matching(2, 2), cycle(4), build_k_h_t(matching(1, 2), 2)]
    names = ["matching:1:2", "matching:1:3", "matching:2:2", "cycle:4", "kst:2:2"]
    lim, cache = _limits(args), _cache(args)
    if args.which == "lemma1":
        out.header = ["H", "n", "k", "ex", "f", "k(f+n)", "holds"]
        for name, H in zip(names, grid):
            for n in range(1, args.n_max + 1):
                for k in (1, 2, 3):
                    rep = verify_lemma1(n, k, H, lim, cache)
                    out.add({"H": name, **rep.to_record()},
                            [name, n, k, rep.ex_value, rep.f_value, rep.rhs, rep.holds], rep.passed)
    elif args.which == "theorem3":
        out.header = ["H", "t", "n", "ex_d", "ex_d+1", "bound", "holds"]
        for name, H in zip(names, grid):
            for t in (2, 3):
                K = build_k_h_t(H, t)
                for n in range(1, args.n_max + 1):
                    exH = ex_exact(n, H, lim, cache, strict=True).value
                    exK = ex_exact(n, K, lim, cache, strict=True).value
                    b = theorem3_bound(n, H.d, t, exH, THEOREM3_C)
                    ok = exK <= b.value
                    out.add({"H": name, "t": t, "n": n, "ex_H": exH, "ex_K": exK,
                             "bound": b.to_record(), "holds": ok},
                            [name, t, n, exH, exK, f"{float(b.value):.1f}", ok], ok)
    elif args.which == "theorem6":
        out.header = ["H", "t", "s", "r", "n", "ex_d", "ex_d+1", "bound", "holds"]
        for name, H in zip(names[:2], grid[:2]):
            for (t, s, r) in ((2, 2, 1), (2, 3, 1), (2, 2, 2)):
                K = build_k_h_t_s_r(H, t, s, r)
                for n in range(1, args.n_max + 1):
                    exH = ex_exact(n, H, lim, cache, strict=True).value
                    exK = ex_exact(n, K, lim, cache, strict=True).value
                    b = theorem6_bound(n, H.d, t, exH, THEOREM6_C)
                    ok = exK <= b.value
                    out.add({"H": name, "t": t, "s": s, "r": r, "n": n, "ex_H": exH, "ex_K": exK,
                             "bound": b.to_record(), "holds": ok},
                            [name, t, s, r, n, exH, exK, f"{float(b.value):.1f}", ok], ok)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "records"), default="table")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--max-nodes", type=int, default=None)
    common.add_argument("--max-seconds", type=float, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--cache", default=None, help="cache directory (default: $TURANLAB_CACHE)")
    common.add_argument("--stats", action="store_true", help="include node counts and timings")

    p = argparse.ArgumentParser(prog="turanlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    sp = add("ex-search", cmd_ex_search, "exact ex_d(n, H)")
    sp.add_argument("--H", required=True)
    sp.add_argument("--n", type=int, nargs="+", required=True)

    sp = add("f-search", cmd_f_search, "exact f_d(n, k, H)")
    sp.add_argument("--H", required=True)
    sp.add_argument("--n", type=int, nargs="+", required=True)
    sp.add_argument("--k", type=int, nargs="+", required=True)

    sp = add("mat-ex", cmd_mat_ex, "exact ex(n, Q, d) for a 0-1 pattern")
    sp.add_argument("--Q", required=True)
    sp.add_argument("--n", type=int, nargs="+", required=True)
    sp.add_argument("--grid", action="store_true", help="print 2-D witnesses as 0/1 grids")

    sp = add("verify-lemma1", cmd_verify_lemma1, "check ex <= k (f + n) exactly")
    sp.add_argument("--H", required=True)
    sp.add_argument("--n", type=int, nargs="+", required=True)
    sp.add_argument("--k", type=int, nargs="+", required=True)

    sp = add("lemma2-audit", cmd_lemma2_audit, "audit the counting chain on lettered instances")
    sp.add_argument("--H", required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--ex", type=int, default=None, help="ex_d(n, H); computed exactly if omitted")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--lettered", help="lettered hypergraph file")
    src.add_argument("--random", type=int, help="number of seeded random K_{H,t}-free instances")
    sp.add_argument("--n-max", type=int, default=6)
    sp.add_argument("--k-max", type=int, default=3)
    sp.add_argument("--assert-free", action="store_true")

    sp = add("bounds-table", cmd_bounds_table, "lettering parameters and the K_{H,t} bound")
    sp.add_argument("--H", default=None)
    sp.add_argument("--d", type=int, default=None)
    sp.add_argument("--ex", type=int, default=1)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--n", type=int, nargs="+", required=True)
    sp.add_argument("--C", default=str(THEOREM3_C))
    sp.add_argument("--constant", default="8")
    sp.add_argument("--mode", choices=("c", "e"), default="c")
    sp.add_argument("--exact", action="store_true", help="also compute ex_{d+1}(n, K_{H,t})")

    sp = add("factorial-check", cmd_factorial_check, "8^t t! > t^t and the doubling steps")
    sp.add_argument("--tmax", type=int, default=300)

    sp = add("drc-check", cmd_drc_check, "dependent random choice audit")
    sp.add_argument("--G", default=None)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--x", type=int, default=0)
    sp.add_argument("--a", default="0")
    sp.add_argument("--budget", type=int, default=10**6)
    sp.add_argument("--sweep", action="store_true")
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--uniformity", type=int, default=3)
    sp.add_argument("--max-edges", type=int, default=None)
    sp.add_argument("--ts", type=int, nargs="+", default=[1, 2])
    sp.add_argument("--rs", type=int, nargs="+", default=[1, 2, 3])
    sp.add_argument("--sample", type=int, default=None)

    sp = add("construct", cmd_construct, "build K_{H,t}, K_{H,t,s,r}, matchings and matrices")
    sp.add_argument("what", choices=("kht", "khtsr", "matching", "stack", "polarity", "inflate"))
    sp.add_argument("--H", default="matching:1:2")
    sp.add_argument("--P", default="ones:1x2")
    sp.add_argument("--M", default=None)
    sp.add_argument("--t", type=int, default=2)
    sp.add_argument("--s", type=int, default=2)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--axis", type=int, default=0)
    sp.add_argument("--grid", action="store_true")

    sp = add("sweep", cmd_sweep, "small-grid verification runs")
    sp.add_argument("which", choices=("lemma1", "theorem3", "theorem6"))
    sp.add_argument("--n-max", type=int, default=5)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args)
    try:
        args.func(args, out)
    except ParseError as exc:
        print(f"turanlab: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"turanlab: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CorruptRecord as exc:
        print(f"turanlab: corrupt cache record: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except NotKHtFree as exc:
        print(f"turanlab: {exc}; embedding {exc.embedding}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"turanlab: invalid parameters: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TuranLabError as exc:
        print(f"turanlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out.emit()
    if out.budget:
        return EXIT_BUDGET
    return EXIT_OK if out.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
