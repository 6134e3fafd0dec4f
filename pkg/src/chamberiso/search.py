"""Verification harness: exhaustive and sampled checks of the boundary inequalities.

Every check returns a record with the arrangement digest, what was scanned
and a list of violations.  Violations are data, never exceptions, so a
campaign always finishes and the caller decides the exit status.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Optional

from . import kernels
from .arrangement import Arrangement, bounded_flags, polygon_interior
from .bounds import conjecture_bound, convex_bounds, gen_binom, size_formula, solve_k
from .chamber_graph import (
    BudgetExceeded,
    ChamberGraph,
    ChamberSet,
    boundary_size,
    enumerate_convex_sets,
)
from .seeds import stream
from .strata import FaceLattice, full_flats, gluing_graph, is_strata_connected, stratify

__all__ = [
    "CheckReport",
    "SizeRecord",
    "SearchReport",
    "MinResult",
    "sample_sets",
    "verify_support_chain",
    "verify_small_sets",
    "verify_bounding_sum",
    "verify_convex_bounds",
    "verify_gluing",
    "min_boundary",
    "check_conjecture",
    "check_r3",
    "verify_r3",
    "circle_example",
    "gray_consistency",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 1 << 26
TOL = 1e-9
C0 = 1.0 / 12.0


def _below(value: float, bound: float) -> bool:
    return value < bound - TOL * max(1.0, abs(bound))


@dataclass
class CheckReport:
    """Outcome of one inequality check over many chamber sets."""

    name: str
    arrangement: str
    seed: Optional[int]
    scope: str
    checked: int = 0
    skipped: int = 0
    tight: int = 0
    violations: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "arrangement": self.arrangement,
            "seed": self.seed,
            "scope": self.scope,
            "checked": self.checked,
            "skipped": self.skipped,
            "tight": self.tight,
            "violations": self.violations,
            "extras": self.extras,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# sampling


def _grow(g: ChamberGraph, size: int, rng) -> int:
    """Random set built by repeatedly adding a random neighbour of the current set."""
    nv = g.n_vertices
    nbr = g.neighbor_masks
    S = 1 << rng.randrange(nv)
    frontier = nbr[S.bit_length() - 1]
    while S.bit_count() < size:
        cand = frontier & ~S
        if cand:
            ids = [i for i in range(nv) if cand >> i & 1]
        else:
            ids = [i for i in range(nv) if not S >> i & 1]
        v = rng.choice(ids)
        S |= 1 << v
        frontier |= nbr[v]
    return S


def sample_sets(g: ChamberGraph, count: int, rng, min_size: int = 1, max_size: Optional[int] = None) -> list:
    """``count`` random chamber sets with sizes uniform in ``[min_size, max_size]``.

    Even draws are grown from a seed chamber (mostly connected, small boundary);
    odd draws are uniform subsets of the chosen size.
    """
    nv = g.n_vertices
    hi = nv if max_size is None else min(nv, max_size)
    if min_size > hi:
        raise ValueError(f"empty size range [{min_size}, {hi}]")
    out = []
    for i in range(count):
        size = rng.randint(min_size, hi)
        if i % 2 == 0:
            bits = _grow(g, size, rng)
        else:
            bits = sum(1 << v for v in rng.sample(range(nv), size))
        out.append(ChamberSet(bits, nv))
    return out


def _all_sets(nv: int, budget: int):
    if (1 << nv) - 1 > budget:
        raise BudgetExceeded(f"2^{nv} subsets exceed budget {budget}")
    for bits in range(1, 1 << nv):
        yield ChamberSet(bits, nv)


def _sets_for(lat: FaceLattice, sample: Optional[int], seed: int, budget: int, name: str, **kw):
    g = lat.graph
    if sample is None:
        return _all_sets(g.n_vertices, budget), "exhaustive"
    return sample_sets(g, sample, stream(seed, name), **kw), f"sample:{sample}"


# ---------------------------------------------------------------------------
# proposition checks


def verify_support_chain(lat: FaceLattice, sample: Optional[int] = None, seed: int = 0, budget: int = DEFAULT_BUDGET) -> CheckReport:
    """``|supp S| <= |S| <= sum_A |conn T_S(A)|`` for every scanned S."""
    sets, scope = _sets_for(lat, sample, seed, budget, "support-chain")
    rep = CheckReport("support-count", lat.arr.digest, seed if sample is not None else None, scope)
    for S in sets:
        st = stratify(lat, S)
        supp, size, total = len(st.support), len(S), st.total_components
        rep.checked += 1
        if not supp <= size <= total:
            rep.violations.append({"set": S.hex(), "support": supp, "size": size, "components": total})
        elif supp == size == total:
            rep.tight += 1
    return rep


def verify_small_sets(g: ChamberGraph, d: int, arrangement: str = "", budget: int = DEFAULT_BUDGET) -> CheckReport:
    """All S with ``|S| <= 2^(d-1)``: ``|dS| >= |S|`` and ``e(S) <= m log2(m) / 2``."""
    nv = g.n_vertices
    top = min(nv, 2 ** (d - 1))
    total = sum(math.comb(nv, s) for s in range(1, top + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} small sets exceed budget {budget}")
    rep = CheckReport("small-sets", arrangement, None, f"exhaustive:|S|<={top}")
    deg = g.degree
    min_deg = min(deg) if deg else 0
    rep.extras["min_degree"] = min_deg
    for m in range(1, top + 1):
        cap = 0.5 * m * math.log2(m) if m > 1 else 0.0
        for combo in itertools.combinations(range(nv), m):
            bits = 0
            for v in combo:
                bits |= 1 << v
            b = boundary_size(g, bits)
            internal = (sum(deg[v] for v in combo) - b) // 2
            rep.checked += 1
            if b < m:
                rep.violations.append({"set": format(bits, "x"), "boundary": b, "size": m})
            if internal > cap + TOL:
                rep.violations.append({"set": format(bits, "x"), "internal_edges": internal, "cap": cap})
            if b == m:
                rep.tight += 1
    return rep


def verify_bounding_sum(lat: FaceLattice, sample: Optional[int] = None, seed: int = 0, sets=None, budget: int = DEFAULT_BUDGET) -> CheckReport:
    """``|dS| >= sum_A |b(A)|`` for every strata-connected scanned S."""
    if sets is not None:
        scope = f"given:{len(sets)}"
    else:
        sets, scope = _sets_for(lat, sample, seed, budget, "bounding-sum")
    g = lat.graph
    rep = CheckReport("bounding-count", lat.arr.digest, seed if sample is not None else None, scope)
    for S in sets:
        if not S.bits or S.bits == (1 << S.universe) - 1:
            rep.skipped += 1
            continue
        st = stratify(lat, S)
        if not is_strata_connected(st):
            rep.skipped += 1
            continue
        b = boundary_size(g, S.bits)
        rhs = sum(m.bit_count() for m in st.bounding.values())
        rep.checked += 1
        if b < rhs:
            rep.violations.append({"set": S.hex(), "boundary": b, "bounding_total": rhs})
        elif b == rhs:
            rep.tight += 1
    return rep


def verify_convex_bounds(lat: FaceLattice, max_n: int = 12) -> CheckReport:
    """Bounds for every proper convex chamber set.

    Checks strata-connectivity and ``|S| = |supp S|`` (proof steps), then the
    basic bound, the bounded-thickening bound when every chamber of S is
    bounded, and the weighted bound when ``|S| <= sum_{i<=d} C(n-d, i)``.
    The size hypothesis ``k >= d-1`` is required for all three.
    """
    arr, g = lat.arr, lat.graph
    d, n, nv = arr.d, arr.n, g.n_vertices
    rep = CheckReport("convex-bounds", arr.digest, None, "exhaustive:convex")
    bounded = bounded_flags(arr, g.chambers)
    bounded_mask = sum(1 << i for i, f in enumerate(bounded) if f)
    cap = size_formula(n - d, d) if n >= d else 0
    floor_size = 2 ** (d - 1)
    counts = {"basic": 0, "bounded": 0, "weighted": 0}
    for S in enumerate_convex_sets(arr, g, max_n=max_n):
        if S.bits == (1 << nv) - 1:
            continue
        st = stratify(lat, S)
        size = len(S)
        if not is_strata_connected(st) or len(st.support) != size:
            rep.violations.append({"set": S.hex(), "strata_connected": is_strata_connected(st), "support": len(st.support), "size": size})
        if size < floor_size:
            rep.skipped += 1
            continue
        b = boundary_size(g, S.bits)
        rep.checked += 1
        tests = [("basic", True), ("bounded", S.bits & ~bounded_mask == 0), ("weighted", size <= cap)]
        for variant, applies in tests:
            if not applies:
                continue
            bound = convex_bounds(size, d, n, variant)
            counts[variant] += 1
            if _below(b, bound):
                rep.violations.append({"set": S.hex(), "variant": variant, "boundary": b, "bound": bound})
    rep.extras["variant_checks"] = counts
    rep.extras["weighted_size_cap"] = cap
    return rep


def verify_gluing(lat: FaceLattice, count: int, seed: int = 0) -> CheckReport:
    """Random ``(S, e, A)`` with ``A`` in ``supp S`` and ``e`` not in ``A``.

    Checks that the gluing graph has one component per piece of ``T_S(A)``,
    the resulting component-count inequality, and that each piece of
    ``T_S(A + e)`` touches exactly one piece on each side.
    """
    rng = stream(seed, "gluing")
    g, n = lat.graph, lat.arr.n
    rep = CheckReport("gluing", lat.arr.digest, seed, f"sample:{count}")
    while rep.checked < count:
        S = sample_sets(g, 1, rng)[0]
        st = stratify(lat, S)
        e = rng.randrange(n)
        choices = [A for A in st.support if not A >> e & 1]
        A = rng.choice(choices)
        gl = gluing_graph(lat, S, e, A, st)
        rep.checked += 1
        bad = {}
        if gl.component_count != gl.conn_count:
            bad["components"] = [gl.component_count, gl.conn_count]
        if not gl.inequality_holds:
            bad["inequality"] = [gl.lhs, gl.rhs]
        if not gl.endpoints_unique:
            bad["endpoints"] = gl.endpoint_multiplicities
        if bad:
            bad.update({"set": S.hex(), "e": e, "A": A})
            rep.violations.append(bad)
        elif gl.lhs == gl.rhs:
            rep.tight += 1
    return rep


# ---------------------------------------------------------------------------
# minimal boundary search


@dataclass(frozen=True)
class MinResult:
    size: int
    minimum: int
    witness: int
    exact: bool
    strategy: str


def _anneal(g: ChamberGraph, size: int, iters: int, rng) -> tuple:
    nv = g.n_vertices
    if size == 0 or size == nv:
        bits = (1 << size) - 1
        return boundary_size(g, bits), bits
    nbr, deg = g.neighbor_masks, g.degree
    S = _grow(g, size, rng)
    b = boundary_size(g, S)
    best, best_set = b, S
    temp0 = 2.0
    for t in range(iters):
        temp = temp0 * (1.0 - t / iters) + 1e-3
        inside = [v for v in range(nv) if S >> v & 1]
        outside = [v for v in range(nv) if not S >> v & 1]
        u = rng.choice(inside)
        v = rng.choice(outside)
        # remove u, then add v
        S1 = S & ~(1 << u)
        b1 = b - (deg[u] - 2 * (nbr[u] & S1).bit_count())
        b2 = b1 + deg[v] - 2 * (nbr[v] & S1).bit_count()
        delta = b2 - b
        if delta <= 0 or rng.random() < math.exp(-delta / temp):
            S, b = S1 | (1 << v), b2
            if b < best:
                best, best_set = b, S
    return best, best_set


def min_boundary(
    g: ChamberGraph,
    size: int,
    strategy: str = "exhaustive",
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> MinResult:
    """Smallest ``|dS|`` over sets of one size.

    ``exhaustive`` is exact and refuses when ``C(|V|, size)`` exceeds the budget.
    ``random`` samples ``budget`` sets, ``greedy-anneal`` runs ``budget`` swap
    moves; both give upper bounds only.
    """
    nv = g.n_vertices
    if not 0 <= size <= nv:
        raise ValueError("size out of range")
    if strategy == "exhaustive":
        if math.comb(nv, size) > budget:
            raise BudgetExceeded(f"C({nv},{size}) = {math.comb(nv, size)} exceeds budget {budget}")
        best, wit = kernels.combo_min_boundary(g.neighbor_masks, g.degree, size)
        exact = True
    elif strategy == "random":
        rng = stream(seed, f"sampler/{size}")
        best, wit = None, 0
        for _ in range(max(1, budget)):
            bits = sum(1 << v for v in rng.sample(range(nv), size))
            b = boundary_size(g, bits)
            if best is None or b < best:
                best, wit = b, bits
        exact = False
    elif strategy == "greedy-anneal":
        best, wit = _anneal(g, size, max(1, budget), stream(seed, f"annealer/{size}"))
        exact = False
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if boundary_size(g, wit) != best:
        raise AssertionError("witness does not reproduce the reported minimum")
    return MinResult(size, int(best), int(wit), exact, strategy)


@dataclass
class SizeRecord:
    size: int
    minimum: int
    witness: str
    exact: bool
    k: Optional[float]
    bound: Optional[float]
    below_bound: bool
    convex_min: Optional[int]
    convex_attained: Optional[bool]
    within_half: bool
    within_weighted_cap: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class SearchReport:
    """Per-size minimal boundaries against the conjectured bound."""

    arrangement: str
    seed: int
    d: int
    n: int
    vertices: int
    general_position: bool
    scope: str
    records: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def header(self) -> dict:
        return {
            "arrangement": self.arrangement,
            "seed": self.seed,
            "d": self.d,
            "n": self.n,
            "vertices": self.vertices,
            "general_position": self.general_position,
            "scope": self.scope,
        }

    def to_jsonl(self) -> str:
        head = self.header()
        lines = []
        for r in self.records:
            row = dict(head)
            row.update(r.to_dict())
            lines.append(json.dumps(row, sort_keys=True))
        summary = dict(head)
        summary.update({
            "summary": True,
            "violations": self.violations,
            "counterexamples": self.counterexamples,
            "extras": self.extras,
        })
        lines.append(json.dumps(summary, sort_keys=True))
        return "\n".join(lines) + "\n"

    def summary_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["size", "min_boundary", "exact", "k", "bound", "below_bound", "convex_min", "convex_attained", "within_half", "within_weighted_cap", "witness"])
        for r in self.records:
            w.writerow([r.size, r.minimum, int(r.exact), "" if r.k is None else repr(r.k), "" if r.bound is None else repr(r.bound), int(r.below_bound),
                        "" if r.convex_min is None else r.convex_min, "" if r.convex_attained is None else int(r.convex_attained),
                        int(r.within_half), int(r.within_weighted_cap), r.witness])
        return buf.getvalue()


def _looks_like_circle(arr: Arrangement) -> bool:
    return arr.d == 2 and all(lab.startswith("p") and lab.count("p") == 2 for lab in arr.labels)


def circle_example(arr: Arrangement, g: ChamberGraph) -> dict:
    """Boundary of the set of chambers inside the polygon of a circle-family arrangement."""
    inside = polygon_interior(arr, g.chambers)
    bits = sum(1 << i for i in inside)
    size = len(inside)
    b = boundary_size(g, bits)
    bound = conjecture_bound(size, 2) if size >= 2 else None
    return {
        "size": size,
        "boundary": b,
        "conjecture_bound": bound,
        "below_bound": bound is not None and _below(b, bound),
        "ratio_sqrt": b / math.sqrt(size),
        "ratio_fourth_root": b / size ** 0.25,
        "witness": format(bits, "x"),
    }


def check_conjecture(
    arr: Arrangement,
    g: ChamberGraph,
    max_size: Optional[int] = None,
    strategy: str = "auto",
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    convex: bool = True,
) -> SearchReport:
    """Minimal boundary per size compared with ``sum_{i<d} C(k, i)``.

    ``auto`` scans all subsets exactly when ``2^(|V|-1)`` fits the budget and
    otherwise anneals.  Only exact minima can count as violations.  In the
    plane a violation contradicts the proven plane bound; in higher dimension it is a
    counterexample to the conjectured bound and is listed separately.
    Arrangements not in general position never produce either.
    """
    nv = g.n_vertices
    d, n = arr.d, arr.n
    half = nv // 2
    if max_size is None:
        max_size = half
    if max_size > half:
        raise ValueError(f"max_size {max_size} exceeds half of {nv} chambers")
    gp = bool(arr.general_position)
    exact_all = None
    if strategy == "auto":
        strategy = "exhaustive" if (1 << max(nv - 1, 0)) <= budget else "greedy-anneal"
        if strategy == "greedy-anneal":
            budget = min(budget, 20000)
    if strategy == "exhaustive" and (1 << max(nv - 1, 0)) <= budget:
        exact_all = kernels.gray_min_boundary(g.neighbor_masks, g.degree, True)
        scope = f"exhaustive:gray:{nv}"
    else:
        scope = f"{strategy}:budget={budget}"

    convex_min = {}
    if convex and n <= 12:
        for S in enumerate_convex_sets(arr, g):
            s = len(S)
            b = boundary_size(g, S.bits)
            if s not in convex_min or b < convex_min[s]:
                convex_min[s] = b

    cap = size_formula(n - d, d) if n >= d else 0
    rep = SearchReport(arr.digest, seed, d, n, nv, gp, scope)
    for size in range(1, max_size + 1):
        if exact_all is not None:
            best, wit = exact_all[0][size], exact_all[1][size]
            if boundary_size(g, wit) != best:
                raise AssertionError("witness does not reproduce the reported minimum")
            res = MinResult(size, best, wit, True, "exhaustive")
        else:
            res = min_boundary(g, size, strategy, budget, seed)
        k = bound = None
        if size >= 2 ** (d - 1):
            k = solve_k(size, d).k
            bound = conjecture_bound(size, d)
        below = bound is not None and _below(res.minimum, bound)
        cm = convex_min.get(size)
        rec = SizeRecord(
            size, res.minimum, format(res.witness, "x"), res.exact, k, bound, below,
            cm, None if cm is None else cm == res.minimum, size <= half, size <= cap,
        )
        rep.records.append(rec)
        if below and res.exact and gp:
            entry = {"size": size, "minimum": res.minimum, "bound": bound, "witness": rec.witness}
            if d == 2:
                rep.violations.append(entry)
            else:
                rep.counterexamples.append(entry)
    if _looks_like_circle(arr):
        try:
            rep.extras["polygon_interior"] = circle_example(arr, g)
        except (ValueError, KeyError):
            pass
    return rep


# ---------------------------------------------------------------------------
# the three-dimensional inequality


def r3_constants(size: int, n: int) -> dict:
    """``k``, ``c_D = max(k/n, (k-2)/(n-2))`` and ``C = c0 (1 - c_D) / (1 + c0)`` for one size."""
    k = solve_k(size, 3).k
    c_d = max(k / n, (k - 2) / (n - 2))
    return {"k": k, "c_D": c_d, "C": C0 * (1.0 - c_d) / (1.0 + C0)}


def check_r3(lat: FaceLattice, S: ChamberSet, D: float = 0.5, constant: Optional[float] = None, lam: Optional[float] = None) -> dict:
    """All inequalities of the three-dimensional bound for one chamber set.

    ``constant`` / ``lam`` override the per-set ``C`` and ``c_D`` (e.g. with
    the values for the largest admissible size).  Sets with fewer than four
    chambers lie outside the size hypothesis (k >= 2); for them only the
    k-free inequalities are checked, with the constants of k = 2.  Returns a
    record whose ``failures`` list is empty when everything holds.
    """
    arr, g = lat.arr, lat.graph
    if arr.d != 3:
        raise ValueError("the three-dimensional bound needs d = 3")
    nv, n = g.n_vertices, arr.n
    size = len(S)
    if size > D * nv:
        raise ValueError(f"|S| = {size} exceeds D * |V| = {D * nv}")
    if size < 1:
        raise ValueError("the bound needs a nonempty set")
    in_hypothesis = size >= 4
    consts = r3_constants(max(size, 4), n)
    k = consts["k"]
    c_d = consts["c_D"] if lam is None else lam
    C = consts["C"] if constant is None else constant
    st = stratify(lat, S)
    N = [0, 0, 0, 0]
    for A in st.support:
        N[A.bit_count()] += len(st.components[A])
    L, M = full_flats(st, lat)
    b = boundary_size(g, S.bits)
    low3 = N[0] + N[1] + N[2]
    base = size_formula(k, 2)
    checks = [
        ("boundary>=C*N012", b, C * low3),
        ("boundary>=C*sum_binom", b, C * base),
        ("boundary>=N0", b, N[0]),
        ("N012>=sum_binom", low3, base),
        ("L+M<=c_D*sum_binom", c_d * base, L + M),
        ("L<=C(k,2)(k-2)/(n-2)", gen_binom(k, 2) * (k - 2) / (n - 2), L),
        ("M<=k(k-1)(k-2)/((n-1)(n-2))", k * (k - 1) * (k - 2) / ((n - 1) * (n - 2)), M),
        ("N3<=C(k,3)", gen_binom(k, 3), N[3]),
    ]
    if not in_hypothesis:
        checks = checks[:1] + checks[2:3]
    failures = [name for name, big, small in checks if _below(big, small)]
    return {
        "set": S.hex(),
        "size": size,
        "in_hypothesis": in_hypothesis,
        "boundary": b,
        "k": k,
        "c_D": c_d,
        "C": C,
        "N": N,
        "L": L,
        "M": M,
        "ratio": b / low3 if low3 else None,
        "failures": failures,
    }


def verify_r3(lat: FaceLattice, count: int = 500, seed: int = 0, D: float = 0.5) -> CheckReport:
    """Sampled check of the three-dimensional bound, with per-set and worst-case constants.

    The worst-case constant uses ``k`` for the largest admissible size
    ``floor(D |V|)``, so it is valid for every sampled set at once.
    """
    g, n = lat.graph, lat.arr.n
    nv = g.n_vertices
    top = int(math.floor(D * nv))
    worst = r3_constants(top, n)
    rep = CheckReport("r3", lat.arr.digest, seed, f"sample:{count}:D={D}")
    rep.extras["C_D"] = worst["C"]
    rep.extras["c_D"] = worst["c_D"]
    min_ratio = None
    for S in sample_sets(g, count, stream(seed, "r3"), min_size=4, max_size=top):
        rec = check_r3(lat, S, D)
        glob = check_r3(lat, S, D, constant=worst["C"], lam=worst["c_D"])
        rep.checked += 1
        fails = sorted(set(rec["failures"]) | {f + "@D" for f in glob["failures"]})
        if fails:
            rec["failures"] = fails
            rep.violations.append(rec)
        if rec["ratio"] is not None and (min_ratio is None or rec["ratio"] < min_ratio[0]):
            min_ratio = (rec["ratio"], rec["set"])
    if min_ratio:
        rep.extras["min_ratio"] = min_ratio[0]
        rep.extras["min_ratio_set"] = min_ratio[1]
    return rep


def gray_consistency(g: ChamberGraph, checkpoints: int = 100_000, seed: int = 0) -> CheckReport:
    """Incremental Gray-code boundary updates against from-scratch recomputation."""
    nv = g.n_vertices
    steps = max(3 * checkpoints, 1)
    if steps >= 1 << nv:
        steps = (1 << nv) - 1
        checkpoints = min(checkpoints, steps)
    rng = stream(seed, "gray")
    marks = set(rng.sample(range(1, steps + 1), checkpoints))
    nbr, deg = g.neighbor_masks, g.degree
    rep = CheckReport("gray-consistency", "", seed, f"checkpoints:{checkpoints}")
    S = b = 0
    for i in range(1, steps + 1):
        v = (i & -i).bit_length() - 1
        x = (nbr[v] & S).bit_count()
        if S >> v & 1:
            S ^= 1 << v
            b -= deg[v] - 2 * x
        else:
            S |= 1 << v
            b += deg[v] - 2 * x
        if i in marks:
            rep.checked += 1
            ref = boundary_size(g, S)
            if ref != b:
                rep.violations.append({"step": i, "incremental": b, "scratch": ref})
    return rep
