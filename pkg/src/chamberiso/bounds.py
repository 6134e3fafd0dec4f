"""Closed-form edge-boundary bounds and their brute-force oracles."""

from __future__ import annotations

import csv
import functools
import io
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

__all__ = [
    "KSolution",
    "DownSet",
    "gen_binom",
    "size_formula",
    "solve_k",
    "conjecture_bound",
    "convex_bounds",
    "enumerate_down_sets",
    "kk_oracle",
    "appendix_AB",
    "verify_appendix",
    "size_inequality_applies",
    "size_inequality_holds",
    "bound_table_csv",
    "SAFETY_MARGIN",
]

SAFETY_MARGIN = 1e-6
REL_TOL = 1e-10
MAX_GROUND = 5


def gen_binom(x, i: int):
    """Generalised binomial ``x (x-1) ... (x-i+1) / i!``.

    Exact for ``int`` and ``Fraction`` arguments, float otherwise.
    """
    if i < 0:
        raise ValueError("i must be non-negative")
    if isinstance(x, int):
        if x >= 0:
            return math.comb(x, i)
        return int(Fraction(math.prod(x - j for j in range(i)), math.factorial(i)))
    if isinstance(x, Fraction):
        return Fraction(math.prod((x - j for j in range(i)), start=Fraction(1)), math.factorial(i))
    return math.prod(x - j for j in range(i)) / math.factorial(i)


def size_formula(k, d: int, lo: int = 0):
    """``sum_{i=lo}^{d} C(k, i)``."""
    return sum(gen_binom(k, i) for i in range(lo, d + 1))


def _bisect_increasing(fn, target: float, lo: float, hi: float, tol: float) -> float:
    """Root of an increasing function on ``[lo, hi]`` (caller guarantees bracketing)."""
    for _ in range(200):
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        if fn(mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol:
            break
    return (lo + hi) / 2


@dataclass(frozen=True)
class KSolution:
    size: int
    d: int
    k: float
    residual: float

    @property
    def is_integer(self) -> bool:
        return float(self.k).is_integer()


def solve_k(size, d: int) -> KSolution:
    """Real ``k >= d-1`` with ``sum_{i<=d} C(k, i) = size``."""
    if d < 1:
        raise ValueError("d must be positive")
    floor_size = size_formula(d - 1, d)
    if size < floor_size:
        raise ValueError(f"size {size} below {floor_size} = 2^(d-1); no k >= d-1 exists")
    hi = float(max(size, d))
    k = _bisect_increasing(lambda t: size_formula(t, d), float(size), float(d - 1), hi, 0.0)
    r = round(k)
    if r >= d - 1 and size_formula(r, d) == size:
        k = float(r)
    residual = abs(size_formula(k, d) - size)
    if residual > REL_TOL * max(1.0, float(size)):
        raise ArithmeticError(f"k solver residual {residual} too large for size {size}")
    return KSolution(int(size), d, k, residual)


def conjecture_bound(size, d: int) -> float:
    """``sum_{i<d} C(k, i)`` where ``size = sum_{i<=d} C(k, i)``."""
    k = solve_k(size, d).k
    return float(size_formula(k, d - 1))


def convex_bounds(size, d: int, n: Optional[int] = None, variant: str = "basic") -> float:
    """Lower bounds on ``|dS|`` for proper convex S.

    ``basic``: weights 1; ``bounded`` (T_S bounded): weights ``d-i+1``;
    ``weighted``: weights ``d-i``, needs ``size <= sum_{i<=d} C(n-d, i)``.
    """
    k = solve_k(size, d).k
    if variant == "basic":
        w = lambda i: 1
    elif variant == "bounded":
        w = lambda i: d - i + 1
    elif variant in ("weighted", "halfspace-count"):
        if n is None:
            raise ValueError("weighted variant needs n")
        cap = size_formula(n - d, d) if n - d >= 0 else 0
        if size > cap:
            raise ValueError(f"weighted variant needs size <= {cap}")
        w = lambda i: d - i
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return float(sum(w(i) * gen_binom(k, i) for i in range(d)))


# ---------------------------------------------------------------------------
# Kruskal-Katona oracle


@dataclass(frozen=True)
class DownSet:
    """Subset-closed family of subsets of ``range(ground)``, members as bitmasks."""

    ground: int
    members: frozenset

    def __post_init__(self):
        for A in self.members:
            for b in range(self.ground):
                if A >> b & 1 and (A & ~(1 << b)) not in self.members:
                    raise ValueError("family is not subset-closed")

    def profile(self, top: Optional[int] = None) -> list:
        top = self.ground if top is None else top
        prof = [0] * (top + 1)
        for A in self.members:
            prof[A.bit_count()] += 1
        return prof

    def __len__(self) -> int:
        return len(self.members)


def enumerate_down_sets(ground: int, max_rank: Optional[int] = None) -> list:
    """All down-sets of ``2^[ground]`` whose members have at most ``max_rank`` elements.

    The empty family is included.  Elements are decided in a rank order, and a
    set may be included only when all of its co-atoms already are.
    """
    if ground > MAX_GROUND:
        raise ValueError(f"down-set enumeration capped at ground size {MAX_GROUND}")
    max_rank = ground if max_rank is None else max_rank
    order = sorted((A for A in range(1 << ground) if A.bit_count() <= max_rank), key=lambda A: (A.bit_count(), A))
    out = []

    def rec(pos: int, chosen: set) -> None:
        if pos == len(order):
            out.append(frozenset(chosen))
            return
        A = order[pos]
        rec(pos + 1, chosen)
        if all((A & ~(1 << b)) in chosen for b in range(ground) if A >> b & 1):
            chosen.add(A)
            rec(pos + 1, chosen)
            chosen.discard(A)

    rec(0, set())
    return [DownSet(ground, m) for m in out]


def _weight_lattice(length: int, values: Sequence[int] = (0, 1, 2, 3, 4)) -> list:
    """Non-increasing sequences of the given length over ``values``."""
    vals = sorted(values, reverse=True)
    return [tuple(seq) for seq in itertools.combinations_with_replacement(vals, length)]


@dataclass
class KKReport:
    ground: int
    m: int
    down_sets: int
    checks_i: int = 0
    checks_ii: int = 0
    vacuous_ii: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def kk_oracle(ground: int, m: int, mode: str = "both") -> KKReport:
    """Exhaustive check of both Kruskal-Katona forms on a small ground set.

    (i): with ``x >= m-1`` minimal such that ``|D| <= sum_{i<=m} C(x, i)``,
    ``|D^(m)| <= C(x, m)``.  Minimal x is the hardest instance since
    ``C(., m)`` is increasing there.
    (ii): for each r, when ``sum_{i=r}^m |D^(i)| = sum_{i=r}^m C(x, i)`` has a
    solution ``x >= m-1``, the weighted inequality holds for all non-increasing
    weights from the lattice ``{0..4}``; otherwise the case is recorded vacuous.
    """
    if mode not in ("i", "ii", "both"):
        raise ValueError("mode must be 'i', 'ii' or 'both'")
    if m < 0 or m > ground:
        raise ValueError("need 0 <= m <= ground")
    families = enumerate_down_sets(ground, m)
    rep = KKReport(ground, m, len(families))
    for D in families:
        ci, cii, vac, fails = _kk_profile(tuple(D.profile(m)), m, mode)
        rep.checks_i += ci
        rep.checks_ii += cii
        rep.vacuous_ii += vac
        for fail in fails:
            rep.counterexamples.append((fail[0], sorted(D.members)) + fail[1:])
    return rep


@functools.lru_cache(maxsize=None)
def _kk_profile(prof: tuple, m: int, mode: str) -> tuple:
    """Kruskal-Katona checks for one level profile (the verdict depends on nothing else)."""
    checks_i = checks_ii = vacuous = 0
    fails = []
    total = sum(prof)
    if mode in ("i", "both"):
        base = size_formula(m - 1, m) if m >= 1 else 1
        if total <= base:
            x = float(max(m - 1, 0))
        else:
            x = _bisect_increasing(lambda t: size_formula(t, m), total, m - 1, float(total + m), 1e-12)
        checks_i += 1
        if prof[m] > gen_binom(x, m) + SAFETY_MARGIN:
            fails.append(("i", x))
    if mode in ("ii", "both"):
        lo = max(m - 1, 0)
        for r in range(m + 1):
            target = sum(prof[r:])
            if target < size_formula(lo, m, r) or (m == 0 and target != 1):
                vacuous += 1
                continue
            if m == 0:
                x = 0.0
            else:
                x = _bisect_increasing(lambda t: size_formula(t, m, r), target, lo, float(target + m), 1e-12)
            binoms = [gen_binom(x, i) for i in range(r, m + 1)]
            for w in _weight_lattice(m - r + 1):
                checks_ii += 1
                lhs = sum(wi * p for wi, p in zip(w, prof[r:]))
                rhs = sum(wi * b for wi, b in zip(w, binoms))
                if lhs < rhs - SAFETY_MARGIN * max(1.0, rhs):
                    fails.append(("ii", r, w))
    return checks_i, checks_ii, vacuous, tuple(fails)


# ---------------------------------------------------------------------------
# monotonicity and size-inequality checks


def appendix_AB(n: int, d: int, b: int, k) -> tuple:
    """``(A(b, k), B(b, k))``; exact when k is an int or Fraction."""
    if not 0 < d < n:
        raise ValueError("need 0 < d < n")
    if not 1 <= b <= d:
        raise ValueError("need 1 <= b <= d")
    A = sum(math.comb(n - b, i) for i in range(d - b + 1)) + sum(gen_binom(k, i) for i in range(d - b + 1, d + 1))
    B = sum(b * math.comb(n - b, i) for i in range(d - b + 1)) + sum(
        (d - i) * gen_binom(k, i) for i in range(d - b + 1, d)
    )
    return A, B


def _solve_kb(n: int, d: int, b: int, target: float) -> Optional[float]:
    lo, hi = float(d - 1), float(n - d)
    if hi < lo:
        return None
    a_lo = appendix_AB(n, d, b, lo)[0]
    a_hi = appendix_AB(n, d, b, hi)[0]
    if not a_lo - 1e-9 <= target <= a_hi + 1e-9:
        return None
    return _bisect_increasing(lambda t: appendix_AB(n, d, b, t)[0], target, lo, hi, 1e-12)


def a_range(n: int, d: int, b: int) -> Optional[tuple]:
    """Values of ``A(b, k)`` for ``k in [d-1, n-d]``."""
    if n - d < d - 1:
        return None
    return float(appendix_AB(n, d, b, d - 1)[0]), float(appendix_AB(n, d, b, n - d)[0])


def size_inequality_applies(n: int, d: int) -> bool:
    return 0 < d < n and n >= d * d / math.log(2) + 2 * d


def size_inequality_holds(n: int, d: int) -> bool:
    """Exact integer check of ``2 sum_{i<=d} C(n-d, i) >= sum_{i<=d} C(n, i)``."""
    return 2 * size_formula(n - d, d) >= size_formula(n, d)


@dataclass
class AppendixReport:
    n: int
    d: int
    target: float
    k: dict
    B: dict
    pairs_checked: int = 0
    violations: list = field(default_factory=list)
    a2_applies: bool = False
    a2_holds: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return not self.violations and self.a2_holds is not False


def verify_appendix(n: int, d: int, target: float) -> AppendixReport:
    """Solve ``A(b, k_b) = target`` per b and check ``B(b, k_b) >= B(b+1, k_{b+1})``.

    Values of b with no admissible ``k_b`` in ``[d-1, n-d]`` are recorded as None;
    the step inequality is checked for every consecutive pair where both exist.
    """
    ks, Bs = {}, {}
    for b in range(1, d + 1):
        kb = _solve_kb(n, d, b, target)
        ks[b] = kb
        Bs[b] = None if kb is None else float(appendix_AB(n, d, b, kb)[1])
    rep = AppendixReport(n, d, target, ks, Bs)
    for b in range(1, d):
        if Bs[b] is None or Bs[b + 1] is None:
            continue
        rep.pairs_checked += 1
        if Bs[b] < Bs[b + 1] - SAFETY_MARGIN * max(1.0, abs(Bs[b + 1])):
            rep.violations.append((b, Bs[b], Bs[b + 1]))
    rep.a2_applies = size_inequality_applies(n, d)
    if rep.a2_applies:
        rep.a2_holds = size_inequality_holds(n, d)
    return rep


def appendix_targets(n: int, d: int, b: int, count: int = 5) -> list:
    """``count`` evenly spaced targets admissible for both b and b+1."""
    r1, r2 = a_range(n, d, b), a_range(n, d, b + 1)
    if r1 is None or r2 is None:
        return []
    lo, hi = max(r1[0], r2[0]), min(r1[1], r2[1])
    if lo > hi:
        return []
    if count == 1:
        return [(lo + hi) / 2]
    return [lo + (hi - lo) * j / (count - 1) for j in range(count)]


def bound_table_csv(rows: Iterable[tuple]) -> str:
    """CSV of bound evaluations for ``(size, d, n)`` triples; infeasible cells are blank."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["size", "d", "n", "k", "conjecture_bound", "basic", "bounded", "weighted"])
    for size, d, n in rows:
        try:
            k = solve_k(size, d).k
        except ValueError:
            w.writerow([size, d, n, "", "", "", "", ""])
            continue
        cells = [size, d, n, f"{k:.12g}", f"{conjecture_bound(size, d):.12g}"]
        for variant in ("basic", "bounded", "weighted"):
            try:
                cells.append(f"{convex_bounds(size, d, n, variant):.12g}")
            except ValueError:
                cells.append("")
        w.writerow(cells)
    return buf.getvalue()


def appendix_campaign(d_values: Iterable[int], n_values: Optional[Iterable[int]] = None, count: int = 5, a2_n_max: int = 60) -> dict:
    """Monotonicity grid plus the exact size inequality.

    For each d and each ``n`` (default ``2d+1 .. 20``) and each consecutive
    pair ``(b, b+1)``, ``count`` targets admissible for both are solved and
    ``B(b, k_b) >= B(b+1, k_{b+1})`` checked.  The size inequality is checked
    for every ``1 <= d < n <= a2_n_max`` with ``n >= d^2/ln 2 + 2d``.
    """
    rows, violations = [], []
    pairs = 0
    for d in d_values:
        ns = list(n_values) if n_values is not None else list(range(2 * d + 1, 21))
        for n in ns:
            if not 0 < d < n:
                continue
            for b in range(1, d):
                for target in appendix_targets(n, d, b, count):
                    rep = verify_appendix(n, d, target)
                    pairs += rep.pairs_checked
                    rows.append({"d": d, "n": n, "b": b, "target": target, "k": rep.k, "B": rep.B, "ok": not rep.violations})
                    violations.extend({"d": d, "n": n, "target": target, "pair": list(v)} for v in rep.violations)
    a2_checked, a2_fail = 0, []
    for n in range(2, a2_n_max + 1):
        for d in range(1, n):
            if size_inequality_applies(n, d):
                a2_checked += 1
                if not size_inequality_holds(n, d):
                    a2_fail.append([d, n])
    return {
        "targets": len(rows),
        "pairs_checked": pairs,
        "violations": violations,
        "a2_checked": a2_checked,
        "a2_failures": a2_fail,
        "rows": rows,
    }
