"""Command-line entry point.

Exit codes: 0 clean, 1 an inequality violation was found, 2 a budget was
exceeded, 3 malformed input.  ``CHAMBERISO_BUDGET`` overrides the default
subset budget.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import bounds, mixing, search
from .arrangement import Arrangement, enumerate_chambers, enumerate_faces, generate
from .chamber_graph import BudgetExceeded, ChamberSet, build_graph
from .seeds import stream_seed
from .strata import FaceLattice, stratify

EXIT_OK, EXIT_VIOLATION, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3
BUDGET_ENV = "CHAMBERISO_BUDGET"


class InputError(Exception):
    pass


def _budget(args) -> int:
    if getattr(args, "budget", None):
        value = args.budget
    else:
        value = int(os.environ.get(BUDGET_ENV, search.DEFAULT_BUDGET))
    if value <= 0:
        raise InputError("budgets must be positive")
    return value


def _range(text: str) -> list:
    """``"4..7"`` -> [4, 5, 6, 7]; ``"3,5"`` -> [3, 5]; ``"6"`` -> [6]."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x]
    except ValueError as exc:
        raise InputError(f"bad range {text!r}") from exc


def _floats(text: str) -> list:
    try:
        return [float(Fraction(x)) for x in text.split(",") if x]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad number list {text!r}") from exc


def _load(path) -> Arrangement:
    if path is None:
        raise InputError("an arrangement file is required")
    try:
        return Arrangement.load(path)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_set(text: str, universe: int) -> ChamberSet:
    try:
        if text.startswith("0x"):
            return ChamberSet.from_hex(text[2:], universe)
        return ChamberSet.from_ids([int(x) for x in text.split(",") if x], universe)
    except ValueError as exc:
        raise InputError(f"bad chamber set {text!r}: {exc}") from exc


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    params = {}
    if args.family == "random":
        if args.d is None or args.n is None:
            raise InputError("random family needs --d and --n")
        params = {"d": args.d, "n": args.n, "bound": args.bound}
    elif args.family == "grid":
        if not args.counts:
            raise InputError("grid family needs --counts")
        params = {"counts": _range(args.counts)}
    else:
        if args.k is None:
            raise InputError("circle family needs --k")
        params = {"k": args.k}
    try:
        arr = generate(args.family, seed=stream_seed(args.seed, "generator"), **params)
    except (ValueError, KeyError) as exc:
        raise InputError(str(exc)) from exc
    _emit(arr.dumps(), args.output)
    return EXIT_OK


def cmd_chambers(args) -> int:
    arr = _load(args.path)
    if args.faces:
        items = enumerate_faces(arr, args.max_codim)
    else:
        items = enumerate_chambers(arr)
    doc = {
        "arrangement": arr.digest,
        "count": len(items),
        "faces" if args.faces else "chambers": [
            {"id": i, "signs": f.sign_string(), "dim": f.dim, "witness": [_frac(x) for x in f.witness]}
            for i, f in enumerate(items)
        ],
    }
    _emit(json.dumps(doc, sort_keys=True) + "\n", args.output)
    return EXIT_OK


def cmd_graph(args) -> int:
    g = build_graph(_load(args.path))
    _emit(g.edge_list_text() if args.format == "edges" else g.dumps(), args.output)
    return EXIT_OK


def cmd_strata(args) -> int:
    arr = _load(args.path)
    lat = FaceLattice(arr)
    S = _parse_set(args.set, lat.graph.n_vertices)
    doc = stratify(lat, S).to_dict()
    doc["arrangement"] = arr.digest
    doc["set"] = S.hex()
    _emit(json.dumps(doc, sort_keys=True) + "\n", args.output)
    return EXIT_OK


def _max_size(text, nv: int):
    if text in (None, "half"):
        return nv // 2
    try:
        return int(text)
    except ValueError as exc:
        raise InputError(f"bad --max-size {text!r}") from exc


def _suite_props(args, arr) -> tuple:
    lat = FaceLattice(arr)
    g = lat.graph
    budget = _budget(args)
    seed = stream_seed(args.seed, "sampler")
    exhaustive = (1 << g.n_vertices) <= min(budget, 1 << 12)
    reports = [
        search.verify_support_chain(lat, None if exhaustive else args.sample, seed, budget),
        search.verify_small_sets(g, arr.d, arr.digest, budget),
        search.verify_bounding_sum(lat, None if exhaustive else args.sample, seed, budget=budget),
        search.verify_gluing(lat, args.sample, seed),
    ]
    if arr.n <= 12:
        reports.append(search.verify_convex_bounds(lat))
    if arr.d == 3:
        reports.append(search.verify_r3(lat, args.sample, seed, args.density))
    text = "".join(r.dumps() for r in reports)
    return text, any(not r.ok for r in reports)


def _suite_conjecture(args, arr) -> tuple:
    g = build_graph(arr)
    rep = search.check_conjecture(
        arr, g, _max_size(args.max_size, g.n_vertices), args.strategy, _budget(args), stream_seed(args.seed, "annealer")
    )
    text = rep.summary_csv() if args.format == "csv" else rep.to_jsonl()
    return text, not rep.ok


def _suite_r3(args, arr) -> tuple:
    if arr.d != 3:
        raise InputError("the r3 suite needs a three-dimensional arrangement")
    rep = search.verify_r3(FaceLattice(arr), args.sample, stream_seed(args.seed, "sampler"), args.density)
    return rep.dumps(), not rep.ok


def _suite_bounds(args, arr) -> tuple:
    if arr is not None:
        d, n = arr.d, arr.n
        top = bounds.size_formula(n, d) // 2
    else:
        if args.d is None or args.n is None:
            raise InputError("bounds suite needs an arrangement or --d and --n")
        d, n = args.d, args.n
        top = bounds.size_formula(n, d) // 2
    table = bounds.bound_table_csv((s, d, n) for s in range(1, top + 1))
    if args.format == "csv":
        return table, False
    kk = [bounds.kk_oracle(g, m) for g in range(1, args.kk_ground + 1) for m in range(0, g + 1)]
    lines = [json.dumps({"table": table}, sort_keys=True)]
    bad = False
    for r in kk:
        bad |= not r.ok
        lines.append(json.dumps({
            "check": "kruskal-katona", "ground": r.ground, "m": r.m, "down_sets": r.down_sets,
            "checks_i": r.checks_i, "checks_ii": r.checks_ii, "vacuous_ii": r.vacuous_ii,
            "counterexamples": r.counterexamples,
        }, sort_keys=True))
    return "\n".join(lines) + "\n", bad


def _suite_appendix(args, arr) -> tuple:
    d_values = _range(args.d_range) if args.d_range else [2, 3, 4]
    n_values = _range(args.n_range) if args.n_range else None
    res = bounds.appendix_campaign(d_values, n_values, args.targets, args.a2_n_max)
    if args.format == "csv":
        lines = ["d,n,b,target,ok"]
        lines += [f"{r['d']},{r['n']},{r['b']},{r['target']!r},{int(r['ok'])}" for r in res["rows"]]
        return "\n".join(lines) + "\n", bool(res["violations"] or res["a2_failures"])
    summary = {k: v for k, v in res.items() if k != "rows"}
    return json.dumps(summary, sort_keys=True) + "\n", bool(res["violations"] or res["a2_failures"])


SUITES = {
    "props": _suite_props,
    "conjecture": _suite_conjecture,
    "r3": _suite_r3,
    "bounds": _suite_bounds,
    "appendix": _suite_appendix,
}


def cmd_verify(args) -> int:
    needs_file = args.suite in ("props", "conjecture", "r3")
    arr = _load(args.path) if (needs_file or args.path) else None
    text, bad = SUITES[args.suite](args, arr)
    _emit(text, args.output)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_search(args) -> int:
    arr = _load(args.path)
    g = build_graph(arr)
    budget = _budget(args)
    sizes = [args.size] if args.size is not None else list(range(1, _max_size(args.max_size, g.n_vertices) + 1))
    lines = []
    for s in sizes:
        res = search.min_boundary(g, s, args.strategy, budget, stream_seed(args.seed, "annealer"))
        lines.append(json.dumps({
            "arrangement": arr.digest, "seed": args.seed, "size": s, "minimum": res.minimum,
            "witness": format(res.witness, "x"), "exact": res.exact,
            "kind": "minimum" if res.exact else "upper bound", "strategy": res.strategy,
        }, sort_keys=True))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _mixing_job(job) -> tuple:
    label, arr, eps = job
    g = build_graph(arr)
    return label, mixing.mixing_report(g, arr.n, eps, arr.digest)


def _run_jobs(jobs, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [_mixing_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_mixing_job, jobs))


def cmd_mixing(args) -> int:
    eps = tuple(_floats(args.eps)) if args.eps else mixing.DEFAULT_EPS
    for e in eps:
        if not 0 < e < 1:
            raise InputError("eps values must lie in (0, 1)")
    if args.batch:
        if args.batch == "d3-sweep":
            jobs = []
            for n in _range(args.n or "4..7"):
                for s in _range(args.seeds or "1..10"):
                    arr = generate("random", seed=stream_seed(s, "generator"), d=3, n=n)
                    jobs.append(({"n_param": n, "seed": s}, arr, eps))
        elif args.batch == "grid":
            jobs = []
            for m in _range(args.m or "3..5"):
                arr = generate("grid", counts=(m - 1,) * 3)
                jobs.append(({"m": m}, arr, eps))
        else:
            raise InputError(f"unknown batch {args.batch!r}")
        results = _run_jobs(jobs, args.jobs)
        labels = [lab for lab, _ in results]
        reps = [r for _, r in results]
        bad = any(not r.ok for r in reps)
        if args.format == "json":
            doc = {
                "batch": args.batch,
                "reports": [dict(lab, **r.to_dict()) for lab, r in results],
                "fittedK": {repr(e): mixing.fit_constant([(r.n, e, r.t_mix[e]) for r in reps]) for e in eps},
            }
            _emit(json.dumps(doc, sort_keys=True) + "\n", args.output)
        else:
            _emit(mixing.batch_csv(reps, eps, labels), args.output)
        return EXIT_VIOLATION if bad else EXIT_OK
    arr = _load(args.path)
    _, rep = _mixing_job((None, arr, eps))
    if args.format == "csv":
        _emit(mixing.batch_csv([rep], eps), args.output)
    else:
        _emit(rep.dumps(), args.output)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_report(args) -> int:
    """Deterministic campaign bundle written to a directory, with a checksum manifest."""
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = {}
    bad = False

    def put(name, text):
        (out / name).write_text(text)
        files[name] = hashlib.sha256(text.encode()).hexdigest()

    sampler = stream_seed(args.seed, "sampler")
    for d, n in ((2, 5), (3, 4), (3, 5)):
        arr = generate("random", seed=stream_seed(args.seed, f"generator/{d}/{n}"), d=d, n=n)
        tag = f"d{d}n{n}"
        put(f"{tag}.arrangement.json", arr.dumps())
        g = build_graph(arr)
        rep = search.check_conjecture(arr, g, budget=_budget(args))
        bad |= not rep.ok
        put(f"{tag}.conjecture.jsonl", rep.to_jsonl())
        put(f"{tag}.conjecture.csv", rep.summary_csv())
        lat = FaceLattice(arr, g)
        checks = [search.verify_support_chain(lat, args.sample, sampler), search.verify_bounding_sum(lat, args.sample, sampler)]
        if d == 3:
            checks.append(search.verify_r3(lat, args.sample, sampler))
        bad |= any(not c.ok for c in checks)
        put(f"{tag}.props.jsonl", "".join(c.dumps() for c in checks))
        mrep = mixing.mixing_report(g, n, mixing.DEFAULT_EPS, arr.digest)
        bad |= not mrep.ok
        put(f"{tag}.mixing.json", mrep.dumps())
    app = bounds.appendix_campaign([2, 3], None, 3, 40)
    bad |= bool(app["violations"] or app["a2_failures"])
    put("appendix.json", json.dumps({k: v for k, v in app.items() if k != "rows"}, sort_keys=True) + "\n")
    manifest = {"seed": args.seed, "files": files}
    (out / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=1) + "\n")
    return EXIT_VIOLATION if bad else EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chamberiso", description="Edge-isoperimetry checks on chamber graphs of hyperplane arrangements.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="generate an arrangement file")
    s.add_argument("--family", required=True, choices=["random", "grid", "circle", "circle_degenerate"])
    s.add_argument("--d", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--counts", help="hyperplanes per axis, e.g. 3,3")
    s.add_argument("--bound", type=int, default=50, help="coefficient range for random normals")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("chambers", help="list chambers (or all faces)")
    s.add_argument("path")
    s.add_argument("--faces", action="store_true")
    s.add_argument("--max-codim", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_chambers)

    s = sub.add_parser("graph", help="export the chamber graph")
    s.add_argument("path")
    s.add_argument("--format", choices=["json", "edges"], default="json")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("strata", help="stratification of one chamber set")
    s.add_argument("path")
    s.add_argument("--set", required=True, help="comma-separated chamber ids or 0x-prefixed hex bitset")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_strata)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("path", nargs="?")
    s.add_argument("--suite", required=True, choices=sorted(SUITES))
    s.add_argument("--max-size", default="half")
    s.add_argument("--strategy", default="auto", choices=["auto", "exhaustive", "random", "greedy-anneal"])
    s.add_argument("--sample", type=int, default=500)
    s.add_argument("--density", type=float, default=0.5, help="D in |S| <= D |V|")
    s.add_argument("--budget", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--d", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--d-range")
    s.add_argument("--n-range")
    s.add_argument("--targets", type=int, default=5)
    s.add_argument("--a2-n-max", type=int, default=60)
    s.add_argument("--kk-ground", type=int, default=4)
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="minimal boundary per size")
    s.add_argument("path")
    s.add_argument("--size", type=int)
    s.add_argument("--max-size", default="half")
    s.add_argument("--strategy", default="exhaustive", choices=["exhaustive", "random", "greedy-anneal"])
    s.add_argument("--budget", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("mixing", help="lazy walk mixing measurements")
    s.add_argument("path", nargs="?")
    s.add_argument("--eps", help="comma-separated, e.g. 0.25,0.1,1/100")
    s.add_argument("--batch", choices=["d3-sweep", "grid"])
    s.add_argument("--n", help="range of n for d3-sweep, e.g. 4..7")
    s.add_argument("--seeds", help="range of seeds for d3-sweep, e.g. 1..10")
    s.add_argument("--m", help="range of grid side lengths, e.g. 3..5")
    s.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    s.add_argument("--format", choices=["json", "csv"], default=None)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_mixing)

    s = sub.add_parser("report", help="write a deterministic campaign bundle")
    s.add_argument("--out", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sample", type=int, default=200)
    s.add_argument("--budget", type=int)
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "mixing" and args.format is None:
        args.format = "csv" if args.batch else "json"
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
