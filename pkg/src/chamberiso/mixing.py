"""Lazy simple random walk on a chamber graph: spectral gap, conductance, mixing times."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .bounds import size_formula, solve_k
from .chamber_graph import BudgetExceeded, ChamberGraph

__all__ = [
    "LazyWalk",
    "MixingReport",
    "build_walk",
    "spectral_gap",
    "tv_mixing_time",
    "tv_curve",
    "conductance_star",
    "ConductanceResult",
    "standard_bound",
    "fit_constant",
    "mixing_report",
    "batch_csv",
    "DEFAULT_EPS",
]

DEFAULT_EPS = (0.25, 0.1, 0.01)
DENSE_BUDGET = 5000
EXHAUSTIVE_MAX_VERTICES = 24
ITERATION_CAP = 100_000


@dataclass
class LazyWalk:
    """Exact kernel ``P(u,u) = 1/2``, ``P(u,v) = 1/(2 deg u)``; ``pi(v) = deg v / 2|E|``."""

    graph: ChamberGraph
    rows: tuple
    pi: tuple

    @property
    def n_vertices(self) -> int:
        return len(self.pi)

    def matrix(self) -> np.ndarray:
        nv = self.n_vertices
        P = np.zeros((nv, nv))
        for u, row in enumerate(self.rows):
            for v, p in row.items():
                P[u, v] = float(p)
        return P

    def pi_array(self) -> np.ndarray:
        return np.array([float(p) for p in self.pi])

    def exact_checks(self) -> dict:
        """Row sums, self-loop mass, stationarity and reversibility, all in exact arithmetic."""
        nv = self.n_vertices
        rows_ok = all(sum(row.values()) == 1 for row in self.rows)
        lazy_ok = all(row.get(u) == Fraction(1, 2) for u, row in enumerate(self.rows))
        flow = [Fraction(0)] * nv
        for u, row in enumerate(self.rows):
            for v, p in row.items():
                flow[v] += self.pi[u] * p
        stationary = flow == list(self.pi) and sum(self.pi) == 1
        reversible = all(
            self.pi[u] * self.rows[u][v] == self.pi[v] * self.rows[v][u]
            for u, v, _ in self.graph.edges
        )
        return {"rows": rows_ok, "lazy": lazy_ok, "stationary": stationary, "reversible": reversible}


def build_walk(g: ChamberGraph) -> LazyWalk:
    if g.n_vertices < 2 or not g.is_connected():
        raise ValueError("the lazy walk needs a connected graph with at least two vertices")
    deg = g.degree
    two_e = 2 * len(g.edges)
    rows = []
    for u, nb in enumerate(g.adjacency):
        row = {u: Fraction(1, 2)}
        step = Fraction(1, 2 * deg[u])
        for v in nb:
            row[v] = step
        rows.append(row)
    pi = tuple(Fraction(d, two_e) for d in deg)
    return LazyWalk(g, tuple(rows), pi)


def spectral_gap(walk: LazyWalk, budget: int = DENSE_BUDGET) -> float:
    """``1 - lambda_2`` from the symmetrised kernel ``Pi^(1/2) P Pi^(-1/2)``."""
    nv = walk.n_vertices
    if nv > budget:
        raise BudgetExceeded(f"{nv} vertices exceed dense eigensolve budget {budget}")
    P = walk.matrix()
    s = np.sqrt(walk.pi_array())
    A = (s[:, None] * P) / s[None, :]
    A = (A + A.T) / 2
    ev = np.linalg.eigvalsh(A)
    return float(1.0 - ev[-2])


def tv_curve(walk: LazyWalk, steps: int) -> np.ndarray:
    """Worst-start total variation distance after ``0..steps`` steps (double precision)."""
    P = walk.matrix()
    pi = walk.pi_array()
    D = np.eye(walk.n_vertices)
    out = [0.5 * np.abs(D - pi).sum(axis=1).max()]
    for _ in range(steps):
        D = D @ P
        out.append(0.5 * np.abs(D - pi).sum(axis=1).max())
    return np.array(out)


def _tv_exact(dist: list, pi: tuple) -> Fraction:
    return max(sum(abs(a - b) for a, b in zip(row, pi)) for row in dist) / 2


def tv_mixing_time(walk: LazyWalk, eps: float, mode: str = "float", cap: int = ITERATION_CAP) -> int:
    """Smallest t with ``max_u TV(P^t(u, .), pi) <= eps``, evolving every start exactly or in floats."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    nv = walk.n_vertices
    if mode == "float":
        P = walk.matrix()
        pi = walk.pi_array()
        D = np.eye(nv)
        for t in range(cap + 1):
            if 0.5 * np.abs(D - pi).sum(axis=1).max() <= eps:
                return t
            D = D @ P
    elif mode == "exact":
        target = Fraction(eps)
        dist = [[Fraction(int(u == v)) for v in range(nv)] for u in range(nv)]
        for t in range(cap + 1):
            if _tv_exact(dist, walk.pi) <= target:
                return t
            new = []
            for row in dist:
                nxt = [Fraction(0)] * nv
                for w, mass in enumerate(row):
                    if mass:
                        for v, p in walk.rows[w].items():
                            nxt[v] += mass * p
                new.append(nxt)
            dist = new
    else:
        raise ValueError(f"unknown mode {mode!r}")
    raise RuntimeError(f"total variation did not reach {eps} within {cap} steps")


@dataclass(frozen=True)
class ConductanceResult:
    value: float
    exact: Optional[Fraction]
    witness: Optional[int]
    mode: str


def _volume_profile(g: ChamberGraph) -> list:
    """``maxvol[s]``: largest total degree of any s chambers."""
    degs = sorted(g.degree, reverse=True)
    out = [0]
    for d in degs:
        out.append(out[-1] + d)
    return out


def _three_space_boundary_floor(size: int, n: int) -> float:
    """Lower bound on ``|dU|`` from the proven three-space bound with D = 1/2."""
    if size <= 4:
        return float(size)
    k = solve_k(size, 3).k
    c_d = max(k / n, (k - 2) / (n - 2))
    return (1 / 12) * (1 - c_d) / (1 + 1 / 12) * size_formula(k, 2)


def conductance_star(
    g: ChamberGraph,
    mode: str = "exhaustive",
    max_vertices: int = EXHAUSTIVE_MAX_VERTICES,
    n_hyperplanes: Optional[int] = None,
    exact_minima_budget: int = 1 << 30,
) -> ConductanceResult:
    """Minimum of ``|dS| / (2 vol S)`` over ``pi(S) <= 1/2``.

    ``isoperimetric-bound`` returns a certified lower bound instead: with
    ``c' = min_s minb(s) / maxvol(s)^(2/3)`` over sizes ``s <= |V|/2`` it reports
    ``(c'/2) (2|E|)^(-1/3)``.  ``minb(s)`` comes from an exact subset scan when
    affordable, otherwise from the proven three-space bound (needs
    ``n_hyperplanes``).
    """
    nv = g.n_vertices
    if mode == "exhaustive":
        if nv > max_vertices:
            raise BudgetExceeded(f"exhaustive conductance capped at {max_vertices} vertices (|V| = {nv})")
        num, den, wit = kernels.gray_min_conductance(g.neighbor_masks, g.degree)
        frac = Fraction(num, den)
        return ConductanceResult(float(frac), frac, wit, mode)
    if mode == "isoperimetric-bound":
        maxvol = _volume_profile(g)
        half = nv // 2
        if (1 << max(nv - 1, 0)) <= exact_minima_budget:
            minb = kernels.gray_min_boundary(g.neighbor_masks, g.degree, True)[0]
            source = "exact-minima"
        else:
            if n_hyperplanes is None:
                raise BudgetExceeded("exact minima unaffordable and no hyperplane count for the three-space route")
            minb = [0] + [_three_space_boundary_floor(s, n_hyperplanes) for s in range(1, half + 1)]
            source = "three-space-floor"
        c_prime = min(minb[s] / maxvol[s] ** (2 / 3) for s in range(1, half + 1))
        value = c_prime / 2 * (2 * len(g.edges)) ** (-1 / 3)
        return ConductanceResult(value, None, None, f"{mode}:{source}")
    raise ValueError(f"unknown mode {mode!r}")


def standard_bound(gap: float, eps: float, pi_min: float) -> float:
    """``(1/gap) log(1/(eps pi_min))``."""
    return math.log(1.0 / (eps * pi_min)) / gap


def fit_constant(rows: Sequence[tuple]) -> float:
    """Smallest K with ``t <= K n^2 log(n/eps)`` for every ``(n, eps, t)``."""
    return max(t / (n * n * math.log(n / eps)) for n, eps, t in rows)


@dataclass
class MixingReport:
    arrangement: str
    n: int
    vertices: int
    edges: int
    spectral_gap: float
    conductance: float
    conductance_mode: str
    conductance_exact: Optional[str]
    conductance_witness: Optional[str]
    t_mix: dict
    standard_bounds: dict
    fitted_K: float
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "arrangement": self.arrangement,
            "n": self.n,
            "vertices": self.vertices,
            "edges": self.edges,
            "spectralGap": self.spectral_gap,
            "conductance": self.conductance,
            "conductanceMode": self.conductance_mode,
            "conductanceExact": self.conductance_exact,
            "conductanceWitness": self.conductance_witness,
            "tMix": {repr(e): t for e, t in self.t_mix.items()},
            "standardBound": {repr(e): b for e, b in self.standard_bounds.items()},
            "fittedK": self.fitted_K,
            "checks": self.checks,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


def mixing_report(
    g: ChamberGraph,
    n: int,
    eps: Sequence[float] = DEFAULT_EPS,
    arrangement: str = "",
    conductance_mode: str = "auto",
    exact_tv_max_vertices: int = 0,
) -> MixingReport:
    """Gap, conductance, mixing times and the invariant checks for one chamber graph.

    ``auto`` uses the exhaustive conductance when allowed and the certified
    bound otherwise; the Cheeger sandwich is only asserted against an exact
    conductance (the upper half needs the true minimum).
    """
    walk = build_walk(g)
    exact = walk.exact_checks()
    gap = spectral_gap(walk)
    if conductance_mode == "auto":
        conductance_mode = "exhaustive" if g.n_vertices <= EXHAUSTIVE_MAX_VERTICES else "isoperimetric-bound"
    cond = conductance_star(g, conductance_mode, n_hyperplanes=n)
    phi = cond.value
    checks = dict(exact)
    checks["gap_in_unit_interval"] = 0.0 < gap <= 1.0 + 1e-12
    checks["cheeger_lower"] = gap >= phi * phi / 2 - 1e-12
    if cond.exact is not None:
        checks["cheeger_upper"] = gap <= 2 * phi + 1e-12
    pi_min = min(float(p) for p in walk.pi)
    tmix, bounds = {}, {}
    for e in sorted(eps, reverse=True):
        t = tv_mixing_time(walk, e)
        tmix[e] = t
        bounds[e] = standard_bound(gap, e, pi_min)
        checks[f"standard_bound@{e!r}"] = t <= bounds[e] + 1e-9
        if g.n_vertices <= exact_tv_max_vertices:
            checks[f"exact_tv_agrees@{e!r}"] = tv_mixing_time(walk, e, mode="exact") == t
    ts = [tmix[e] for e in sorted(tmix, reverse=True)]
    checks["t_mix_monotone_in_eps"] = all(a <= b for a, b in zip(ts, ts[1:]))
    K = fit_constant([(n, e, t) for e, t in tmix.items()])
    return MixingReport(
        arrangement, n, g.n_vertices, len(g.edges), gap, phi, cond.mode,
        None if cond.exact is None else f"{cond.exact.numerator}/{cond.exact.denominator}",
        None if cond.witness is None else format(cond.witness, "x"),
        tmix, bounds, K, checks,
    )


def batch_csv(reports: Sequence[MixingReport], eps: Sequence[float] = DEFAULT_EPS, extra: Optional[Sequence[dict]] = None) -> str:
    """One row per instance: n, |V|, gap, conductance, t_mix per eps (plus optional leading columns)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    lead = list(extra[0].keys()) if extra else []
    w.writerow(lead + ["n", "vertices", "gap", "phi_star", "phi_mode"] + [f"tmix_{e!r}" for e in eps])
    for i, r in enumerate(reports):
        row = [extra[i][k] for k in lead] if extra else []
        row += [r.n, r.vertices, repr(r.spectral_gap), repr(r.conductance), r.conductance_mode]
        row += [r.t_mix.get(e, "") for e in eps]
        w.writerow(row)
    return buf.getvalue()
