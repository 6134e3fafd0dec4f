"""Exact rational helpers: affine parametrisation and strict feasibility.

An affine function on R^m is stored as ``(coef, const)`` and means
``coef . y + const``.  All arithmetic is over :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Vec = list
Affine = tuple  # (list[Fraction], Fraction)

ZERO = Fraction(0)
ONE = Fraction(1)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    total = ZERO
    for x, y in zip(a, b):
        if x and y:
            total += x * y
    return total


def sign(x) -> int:
    return (x > 0) - (x < 0)


class AffineMap:
    """Parametrisation ``x = origin + sum_q t_q * columns[q]`` of an affine subspace."""

    __slots__ = ("origin", "columns")

    def __init__(self, origin: list, columns: list):
        self.origin = origin
        self.columns = columns

    @classmethod
    def identity(cls, m: int) -> "AffineMap":
        cols = [[ONE if i == j else ZERO for i in range(m)] for j in range(m)]
        return cls([ZERO] * m, cols)

    @property
    def dim(self) -> int:
        return len(self.columns)

    def pull(self, coef: Sequence[Fraction], const: Fraction) -> tuple:
        """Express the affine function ``coef . x + const`` in parameter coordinates."""
        return [dot(coef, c) for c in self.columns], dot(coef, self.origin) + const

    def point(self, t: Sequence[Fraction]) -> list:
        x = list(self.origin)
        for tq, col in zip(t, self.columns):
            if tq:
                for i, v in enumerate(col):
                    if v:
                        x[i] += tq * v
        return x

    def cut(self, coef: Sequence[Fraction], const: Fraction) -> Optional["AffineMap"]:
        """Restrict to ``coef . x + const = 0``.

        Returns ``self`` when the equation is implied, None when inconsistent.
        """
        g, g0 = self.pull(coef, const)
        p = next((q for q, v in enumerate(g) if v), None)
        if p is None:
            return self if g0 == 0 else None
        gp = g[p]
        bp = self.columns[p]
        shift = -g0 / gp
        origin = [o + shift * b for o, b in zip(self.origin, bp)]
        columns = []
        for q, col in enumerate(self.columns):
            if q == p:
                continue
            r = g[q] / gp
            columns.append([c - r * b for c, b in zip(col, bp)] if r else list(col))
        return AffineMap(origin, columns)


def solve_equalities(rows: Sequence[tuple], m: int) -> Optional[AffineMap]:
    """Affine subspace ``{x : coef . x + const = 0 for all rows}`` or None if empty."""
    amap = AffineMap.identity(m)
    for coef, const in rows:
        amap = amap.cut(coef, const)
        if amap is None:
            return None
    return amap


def _value(coef, const, y) -> Fraction:
    return dot(coef, y) + const


def strict_feasible(cons: Sequence[tuple], m: int) -> Optional[list]:
    """Find ``y`` in R^m with ``coef . y + const > 0`` for every constraint.

    Constraints are added one at a time.  When the current point violates the
    next constraint, a point on its boundary hyperplane that satisfies all
    earlier constraints is found recursively (one dimension lower), then nudged
    into the open side.  Exact and deterministic; exponential only in ``m``.
    """
    if m == 0:
        return [] if all(c0 > 0 for _, c0 in cons) else None
    y = [ZERO] * m
    for j, (a, a0) in enumerate(cons):
        if _value(a, a0, y) > 0:
            continue
        if not any(a):
            return None
        plane = AffineMap.identity(m).cut(a, a0)
        sub = []
        for b, b0 in cons[:j]:
            g, g0 = plane.pull(b, b0)
            if not any(g):
                if g0 <= 0:
                    return None
                continue
            sub.append((g, g0))
        z = strict_feasible(sub, m - 1)
        if z is None:
            return None
        p = plane.point(z)
        eps = ONE
        for b, b0 in cons[:j]:
            slope = dot(b, a)
            if slope < 0:
                limit = _value(b, b0, p) / (-slope) / 2
                if limit < eps:
                    eps = limit
        y = [pi + eps * ai for pi, ai in zip(p, a)]
    return y
