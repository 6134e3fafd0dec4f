import json
import math

import pytest

from chamberiso.arrangement import generate
from chamberiso.bounds import conjecture_bound
from chamberiso.chamber_graph import BudgetExceeded, ChamberSet, boundary_size, build_graph
from chamberiso.search import (
    check_conjecture,
    check_r3,
    circle_example,
    gray_consistency,
    min_boundary,
    sample_sets,
    verify_convex_bounds,
    verify_gluing,
    verify_support_chain,
    verify_bounding_sum,
    verify_r3,
    verify_small_sets,
)
from chamberiso.seeds import stream
from chamberiso.strata import FaceLattice, stratify
from conftest import triangle_set


def test_support_chain_exhaustive_on_three_lines(three_lines_lattice):
    rep = verify_support_chain(three_lines_lattice)
    assert rep.checked == 2**7 - 1 and rep.ok


def test_support_chain_full_set_is_tight(random_d3n6_lattice):
    lat = random_d3n6_lattice
    full = ChamberSet.full(lat.graph.n_vertices)
    st = stratify(lat, full)
    assert len(st.support) == len(full) == st.total_components


@pytest.mark.parametrize("d,n", [(2, 4), (3, 5)])
def test_small_sets(d, n):
    g = build_graph(generate("random", d=d, n=n, seed=3))
    rep = verify_small_sets(g, d)
    assert rep.ok and rep.extras["min_degree"] >= d
    if (d, n) == (3, 5):
        assert rep.checked == sum(math.comb(26, s) for s in range(1, 5))


def test_bounding_sum_three_lines_tight(three_lines_lattice):
    S = triangle_set(three_lines_lattice)
    rep = verify_bounding_sum(three_lines_lattice, sets=[S])
    assert rep.checked == 1 and rep.tight == 1 and rep.ok


def test_bounding_sum_single_chambers_are_tight(random_d3n6_lattice):
    lat = random_d3n6_lattice
    nv = lat.graph.n_vertices
    rep = verify_bounding_sum(lat, sets=[ChamberSet.from_ids([v], nv) for v in range(nv)])
    assert rep.checked == rep.tight == nv


def test_bounding_sum_sampled(random_d3n6_lattice):
    rep = verify_bounding_sum(random_d3n6_lattice, sample=400, seed=3)
    assert rep.ok and rep.checked > 0


@pytest.mark.parametrize("d,n,seed", [(2, 5, 1), (2, 6, 2), (3, 5, 1), (3, 6, 2)])
def test_convex_bounds(d, n, seed):
    lat = FaceLattice(generate("random", d=d, n=n, seed=seed))
    rep = verify_convex_bounds(lat)
    assert rep.ok, rep.violations[:3]
    assert rep.extras["variant_checks"]["basic"] > 0


def test_gluing_lemma_samples(random_d3n6_lattice):
    rep = verify_gluing(random_d3n6_lattice, 300, seed=4)
    assert rep.checked == 300 and rep.ok


def test_min_boundary_examples(three_lines):
    g3 = build_graph(three_lines)
    assert min_boundary(g3, 1).minimum == 2
    g5 = build_graph(generate("random", d=2, n=5, seed=1))
    res = min_boundary(g5, 7)
    assert res.exact and res.minimum >= conjecture_bound(7, 2) == 4
    grid = build_graph(generate("grid", counts=(3, 3)))
    assert min_boundary(grid, 4).minimum == 4


def test_min_boundary_budget_and_heuristics(d2n5_graph):
    with pytest.raises(BudgetExceeded):
        min_boundary(d2n5_graph, 8, budget=100)
    exact = min_boundary(d2n5_graph, 6).minimum
    for strategy in ("random", "greedy-anneal"):
        a = min_boundary(d2n5_graph, 6, strategy, budget=500, seed=9)
        b = min_boundary(d2n5_graph, 6, strategy, budget=500, seed=9)
        assert a == b and not a.exact and a.minimum >= exact
        assert boundary_size(d2n5_graph, a.witness) == a.minimum


def test_check_conjecture_plane(random_d2n5, d2n5_graph):
    rep = check_conjecture(random_d2n5, d2n5_graph)
    assert rep.ok and [r.size for r in rep.records] == list(range(1, 9))
    assert all(r.exact for r in rep.records)
    for r in rep.records:
        assert boundary_size(d2n5_graph, int(r.witness, 16)) == r.minimum
    assert rep.to_jsonl().count("\n") == 9
    assert rep.summary_csv().splitlines()[0].startswith("size,min_boundary")


def test_check_conjecture_three_space():
    arr = generate("random", d=3, n=4, seed=5)
    g = build_graph(arr)
    rep = check_conjecture(arr, g, max_size=7)
    assert rep.ok and not rep.counterexamples
    with pytest.raises(ValueError):
        check_conjecture(arr, g, max_size=8)


def test_check_conjecture_is_deterministic(random_d2n5, d2n5_graph):
    assert check_conjecture(random_d2n5, d2n5_graph).to_jsonl() == check_conjecture(random_d2n5, d2n5_graph).to_jsonl()


@pytest.mark.parametrize("k", [5, 6])
def test_circle_example(k):
    arr = generate("circle", k=k)
    info = circle_example(arr, build_graph(arr))
    assert info["size"] == math.comb(k, 4) + math.comb(k, 2) - k + 1
    assert info["boundary"] == k
    assert info["below_bound"] == (k == 6)


def test_circle_report_flags_degenerate_input():
    arr = generate("circle", k=5)
    rep = check_conjecture(arr, build_graph(arr), max_size=3)
    assert not rep.general_position and not rep.violations
    assert rep.extras["polygon_interior"]["boundary"] == 5


def test_check_r3_single_chamber_and_samples(random_d3n6_lattice):
    lat = random_d3n6_lattice
    rec = check_r3(lat, ChamberSet.from_ids([0], lat.graph.n_vertices))
    assert rec["failures"] == [] and not rec["in_hypothesis"]
    rep = verify_r3(lat, 200, seed=7)
    assert rep.ok and rep.checked == 200
    assert 0 < rep.extras["C_D"] < rep.extras["min_ratio"]
    with pytest.raises(ValueError):
        check_r3(lat, ChamberSet.full(lat.graph.n_vertices))


def test_check_r3_needs_three_dimensions(three_lines_lattice):
    with pytest.raises(ValueError):
        check_r3(three_lines_lattice, ChamberSet.from_ids([0], 7))


def test_gray_consistency():
    g = build_graph(generate("random", d=3, n=5, seed=1))
    rep = gray_consistency(g, 20_000, seed=2)
    assert rep.checked == 20_000 and rep.ok


def test_samplers_are_seeded(d2n5_graph):
    a = sample_sets(d2n5_graph, 20, stream(1, "x"), 2, 8)
    b = sample_sets(d2n5_graph, 20, stream(1, "x"), 2, 8)
    assert a == b and all(2 <= len(S) <= 8 for S in a)
