"""End-to-end acceptance checks, one test per criterion.

Each test records a one-line verdict; ``conftest.py`` prints the collected
lines in the terminal summary (``python tests/test_acceptance.py`` prints them
directly).
"""

import math
import time

import pytest

from chamberiso import bounds, mixing, search
from chamberiso.arrangement import enumerate_chambers, generate
from chamberiso.chamber_graph import boundary_size, build_graph
from chamberiso.cli import main
from chamberiso.seeds import stream_seed
from chamberiso.strata import FaceLattice, stratify

from conftest import triangle_set

VERDICTS = {}


def _verdict(number, ok, detail):
    VERDICTS[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    assert ok, VERDICTS[number]


def test_criterion_01_chamber_count():
    t0 = time.perf_counter()
    bad = []
    for i in range(20):
        d = (2, 3, 4)[i % 3]
        n = min(8, d + 2 + i % 4)
        arr = generate("random", d=d, n=n, seed=stream_seed(i, "acceptance/1"))
        got = len(enumerate_chambers(arr))
        if got != sum(math.comb(n, j) for j in range(d + 1)):
            bad.append((d, n, got))
    elapsed = time.perf_counter() - t0
    _verdict(1, not bad and elapsed < 30, f"20 arrangements, mismatches={bad}, {elapsed:.1f}s")


def test_criterion_02_three_lines(three_lines_lattice):
    lat = three_lines_lattice
    S = triangle_set(lat)
    st = stratify(lat, S)
    # hyperplane indices are 0-based
    expected = {frozenset(): frozenset({2}), frozenset({0}): frozenset({1, 2}), frozenset({1}): frozenset({0, 2})}
    boundary = boundary_size(lat.graph, S.bits)
    total_b = sum(len(b) for b in expected.values())
    ok = (
        st.support_sets() == [frozenset(), frozenset({0}), frozenset({1})]
        and st.bounding_sets() == expected
        and boundary == 5 == total_b
    )
    _verdict(2, ok, f"support={st.support_sets()}, |dS|={boundary}, sum|b(A)|={total_b}")


def test_criterion_03_support_chain(three_lines_lattice, random_d3n6_lattice):
    full = search.verify_support_chain(three_lines_lattice)
    sampled = search.verify_support_chain(random_d3n6_lattice, sample=10_000, seed=3)
    ok = full.ok and sampled.ok and full.checked == 127 and sampled.checked == 10_000
    _verdict(3, ok, f"three lines {full.checked} nonempty sets, d=3 n=6 {sampled.checked} samples, "
                    f"violations={len(full.violations) + len(sampled.violations)}")


def test_criterion_04_small_sets():
    t0 = time.perf_counter()
    reps = []
    for d in (2, 3):
        arr = generate("random", d=d, n=5, seed=stream_seed(d, "acceptance/4"))
        reps.append(search.verify_small_sets(build_graph(arr), d, arr.digest))
    elapsed = time.perf_counter() - t0
    ok = all(r.ok for r in reps) and elapsed < 120
    _verdict(4, ok, f"sets checked={[r.checked for r in reps]}, violations={sum(len(r.violations) for r in reps)}, {elapsed:.1f}s")


def test_criterion_05_convex_bounds():
    reps = []
    for d in (2, 3):
        for n in range(d + 1, 7):
            for seed in (1, 2):
                arr = generate("random", d=d, n=n, seed=stream_seed(seed, f"acceptance/5/{d}/{n}"))
                reps.append(search.verify_convex_bounds(FaceLattice(arr)))
    totals = {}
    for r in reps:
        for k, v in r.extras["variant_checks"].items():
            totals[k] = totals.get(k, 0) + v
    ok = all(r.ok for r in reps) and all(totals.get(k, 0) > 0 for k in ("basic", "bounded", "weighted"))
    _verdict(5, ok, f"{len(reps)} arrangements, checks per variant={totals}, violations={sum(len(r.violations) for r in reps)}")


def test_criterion_06_plane_bound():
    details, ok = [], True
    for n, limit in ((5, 60), (6, 1800)):
        arr = generate("random", d=2, n=n, seed=stream_seed(n, "acceptance/6"))
        g = build_graph(arr)
        t0 = time.perf_counter()
        rep = search.check_conjecture(arr, g, strategy="exhaustive")
        elapsed = time.perf_counter() - t0
        ok &= rep.ok and all(r.exact for r in rep.records) and elapsed < limit
        ok &= all(r.bound is None or r.minimum >= r.bound for r in rep.records)
        ok &= sum(r.bound is not None for r in rep.records) == len(rep.records) - 1
        details.append(f"n={n} |V|={g.n_vertices} sizes<= {rep.records[-1].size} {elapsed:.2f}s")
    _verdict(6, ok, "; ".join(details))


def test_criterion_07_circle():
    details, ok = [], True
    for k in (5, 6):
        arr = generate("circle", k=k)
        info = search.circle_example(arr, build_graph(arr))
        want = math.comb(k, 4) + math.comb(k, 2) - k + 1
        ok &= info["size"] == want and info["boundary"] == k
        details.append(f"k={k} |S|={info['size']} |dS|={info['boundary']} below_conjecture={info['below_bound']}")
    _verdict(7, ok, "; ".join(details))


def test_criterion_08_three_space_constant():
    reps = []
    for i, n in enumerate((5, 6, 7, 6, 7)):
        arr = generate("random", d=3, n=n, seed=stream_seed(i, "acceptance/8"))
        reps.append(search.verify_r3(FaceLattice(arr), 500, seed=i, D=0.5))
    ok = all(r.ok and r.checked == 500 for r in reps)
    _verdict(8, ok, f"5x500 sets, C(1/2) per instance={[round(r.extras['C_D'], 4) for r in reps]}, "
                    f"violations={sum(len(r.violations) for r in reps)}")


def test_criterion_09_gluing(random_d3n6_lattice):
    plane = FaceLattice(generate("random", d=2, n=6, seed=stream_seed(9, "acceptance/9")))
    reps = [search.verify_gluing(plane, 5000, seed=9), search.verify_gluing(random_d3n6_lattice, 5000, seed=9)]
    ok = all(r.ok for r in reps) and sum(r.checked for r in reps) == 10_000
    _verdict(9, ok, f"{sum(r.checked for r in reps)} triples, tight={sum(r.tight for r in reps)}, "
                    f"violations={sum(len(r.violations) for r in reps)}")


def test_criterion_10_kruskal_katona():
    t0 = time.perf_counter()
    reps = [bounds.kk_oracle(g, m) for g in range(1, 6) for m in range(g + 1)]
    elapsed = time.perf_counter() - t0
    ok = all(r.ok for r in reps) and elapsed < 300
    _verdict(10, ok, f"{sum(r.down_sets for r in reps)} down-set cases, form (ii) checks={sum(r.checks_ii for r in reps)}, "
                     f"counterexamples={sum(len(r.counterexamples) for r in reps)}, {elapsed:.1f}s")


def test_criterion_11_appendix():
    res = bounds.appendix_campaign([2, 3, 4], None, 5, 60)
    ok = not res["violations"] and not res["a2_failures"] and res["pairs_checked"] > 0 and res["a2_checked"] > 0
    _verdict(11, ok, f"monotonicity pairs={res['pairs_checked']}, size-inequality cases={res['a2_checked']}, "
                     f"violations={len(res['violations']) + len(res['a2_failures'])}")


def test_criterion_12_mixing():
    grid = {}
    invariants_ok = True
    for m in (3, 4, 5):
        rep = mixing.mixing_report(build_graph(generate("grid", counts=(m - 1,) * 3)), 3 * (m - 1), (0.25,))
        invariants_ok &= rep.ok
        grid[m] = rep.t_mix[0.25]
    scaling = {m: (grid[m] / grid[3]) / (m / 3) ** 2 for m in (4, 5)}
    scaling_ok = all(abs(r - 1) <= 0.35 for r in scaling.values())
    rows = []
    for n in range(4, 8):
        for s in range(1, 6):
            arr = generate("random", d=3, n=n, seed=stream_seed(s, "generator"))
            rep = mixing.mixing_report(build_graph(arr), n, (0.25, 0.1))
            invariants_ok &= rep.ok
            rows += [(n, e, t) for e, t in rep.t_mix.items()]
    K = mixing.fit_constant(rows)
    fit_ok = math.isfinite(K) and all(t <= K * n * n * math.log(n / e) + 1e-12 for n, e, t in rows)
    _verdict(12, invariants_ok and scaling_ok and fit_ok,
             f"invariants={invariants_ok}, grid t(1/4)={grid}, ratio/m^2-ratio={ {m: round(r, 3) for m, r in scaling.items()} }, "
             f"K={K:.4f} over {len(rows)} points")


def test_criterion_13_determinism(tmp_path):
    dirs = [tmp_path / "run1", tmp_path / "run2"]
    codes = [main(["report", "--out", str(d), "--seed", "13"]) for d in dirs]
    names = sorted(p.name for p in dirs[0].iterdir())
    same = names == sorted(p.name for p in dirs[1].iterdir()) and all(
        (dirs[0] / f).read_bytes() == (dirs[1] / f).read_bytes() for f in names
    )
    _verdict(13, codes == [0, 0] and same, f"{len(names)} files, byte-identical={same}, exit codes={codes}")


if __name__ == "__main__":
    import sys

    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
