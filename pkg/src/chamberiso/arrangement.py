"""Exact affine hyperplane arrangements: chambers, faces, flats, generators."""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from ._exact import AffineMap, dot, sign, strict_feasible

__all__ = [
    "Hyperplane",
    "Arrangement",
    "Face",
    "GeneralPositionReport",
    "GenerationError",
    "sign_at",
    "feasible_witness",
    "check_general_position",
    "enumerate_chambers",
    "enumerate_faces",
    "generate",
    "circle_points",
    "polygon_interior",
    "bounded_flags",
]

MAX_RETRIES = 1000


class GenerationError(RuntimeError):
    """Raised when a generator cannot produce a valid arrangement."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating-point coordinates are not accepted; use int, str or Fraction")
    return Fraction(x)


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Hyperplane:
    """The set ``{x : normal . x = offset}``; ``+`` side is ``normal . x > offset``."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        normal = tuple(_frac(v) for v in self.normal)
        if not any(normal):
            raise ValueError("hyperplane normal must be nonzero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", _frac(self.offset))

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.normal, x) - self.offset

    def affine(self) -> tuple:
        return list(self.normal), -self.offset


def sign_at(h: Hyperplane, x: Sequence) -> int:
    """Exact side of ``x`` relative to ``h``: -1, 0 or +1."""
    if len(x) != h.dim:
        raise ValueError(f"point has dimension {len(x)}, hyperplane lives in R^{h.dim}")
    return sign(h.value([_frac(v) for v in x]))


@dataclass(frozen=True)
class Face:
    """A cell of the arrangement: its covector plus a witness in its relative interior."""

    signs: tuple
    witness: tuple
    dim: int

    @property
    def zero_set(self) -> frozenset:
        return frozenset(i for i, s in enumerate(self.signs) if s == 0)

    @property
    def zero_mask(self) -> int:
        m = 0
        for i, s in enumerate(self.signs):
            if s == 0:
                m |= 1 << i
        return m

    @property
    def is_chamber(self) -> bool:
        return 0 not in self.signs

    def sign_string(self) -> str:
        return "".join("-0+"[s + 1] for s in self.signs)


@dataclass(frozen=True)
class GeneralPositionReport:
    ok: bool
    violation: Optional[tuple] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Arrangement:
    d: int
    hyperplanes: tuple
    labels: tuple = field(default=())

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be at least 1")
        hs = tuple(self.hyperplanes)
        if not hs:
            raise ValueError("an arrangement needs at least one hyperplane")
        for h in hs:
            if h.dim != self.d:
                raise ValueError(f"hyperplane of dimension {h.dim} in R^{self.d}")
        object.__setattr__(self, "hyperplanes", hs)
        labels = tuple(self.labels) or tuple(f"H{i + 1}" for i in range(len(hs)))
        if len(labels) != len(hs):
            raise ValueError("labels must match hyperplanes")
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    @classmethod
    def from_rows(cls, d: int, rows: Iterable, labels: Sequence[str] = ()) -> "Arrangement":
        """Build from ``(normal, offset)`` pairs."""
        return cls(d, tuple(Hyperplane(tuple(nv), off) for nv, off in rows), tuple(labels))

    # -- serialisation ---------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "hyperplanes": [
                {"normal": [_frac_str(v) for v in h.normal], "offset": _frac_str(h.offset)}
                for h in self.hyperplanes
            ],
            "labels": list(self.labels),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: Mapping) -> "Arrangement":
        try:
            d = int(data["d"])
            hs = tuple(
                Hyperplane(tuple(Fraction(v) for v in h["normal"]), Fraction(h["offset"]))
                for h in data["hyperplanes"]
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed arrangement: {exc}") from exc
        return cls(d, hs, tuple(data.get("labels") or ()))

    @classmethod
    def loads(cls, text: str) -> "Arrangement":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "Arrangement":
        with open(path) as fh:
            return cls.loads(fh.read())

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.dumps())

    @cached_property
    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    @cached_property
    def general_position(self) -> GeneralPositionReport:
        return check_general_position(self)

    def require_general_position(self) -> None:
        rep = self.general_position
        if not rep.ok:
            raise ValueError(f"arrangement not in general position: {rep.reason}")


# ---------------------------------------------------------------------------
# feasibility


def _subspace(arr: Arrangement, indices: Iterable[int]) -> Optional[AffineMap]:
    amap = AffineMap.identity(arr.d)
    for i in indices:
        amap = amap.cut(*arr.hyperplanes[i].affine())
        if amap is None:
            return None
    return amap


def feasible_witness(
    arr: Arrangement, equalities: Iterable[int] = (), strict: Optional[Mapping[int, int]] = None
) -> Optional[tuple]:
    """Exact point on every ``H_e`` (e in equalities) and strictly on side ``strict[e]``.

    Returns None when the relatively open polyhedron is empty.
    """
    strict = dict(strict or {})
    equalities = sorted(set(equalities))
    if set(equalities) & set(strict):
        raise ValueError("an index cannot be both an equality and a strict sign")
    amap = _subspace(arr, equalities)
    if amap is None:
        return None
    cons = []
    for e in sorted(strict):
        s = strict[e]
        if s not in (-1, 1):
            raise ValueError("strict signs must be -1 or +1")
        g, g0 = amap.pull(*arr.hyperplanes[e].affine())
        cons.append(([s * v for v in g], s * g0))
    t = strict_feasible(cons, amap.dim)
    if t is None:
        return None
    return tuple(amap.point(t))


def check_general_position(arr: Arrangement) -> GeneralPositionReport:
    """Exact check: every k <= d hyperplanes meet in a (d-k)-flat, no d+1 share a point."""
    d, n = arr.d, arr.n
    for k in range(1, min(d, n) + 1):
        for idx in itertools.combinations(range(n), k):
            amap = _subspace(arr, idx)
            if amap is None:
                return GeneralPositionReport(False, idx, f"hyperplanes {idx} have empty intersection")
            if amap.dim != d - k:
                return GeneralPositionReport(False, idx, f"hyperplanes {idx} are linearly dependent")
    if n > d:
        for idx in itertools.combinations(range(n), d + 1):
            if _subspace(arr, idx) is not None:
                return GeneralPositionReport(False, idx, f"hyperplanes {idx} share a common point")
    return GeneralPositionReport(True)


# ---------------------------------------------------------------------------
# enumeration


def _cells(funcs: Sequence[tuple], m: int) -> list:
    """All realisable strict sign patterns of affine functions on R^m, with witnesses.

    Functions must be non-constant.  Built incrementally: each existing cell is
    split by the next function when both open sides are nonempty.
    """
    cells = [((), [], [Fraction(0)] * m)]
    for coef, const in funcs:
        nxt = []
        for signs, cons, w in cells:
            here = sign(dot(coef, w) + const)
            for s in (-1, 1):
                if s == here:
                    pt = w
                else:
                    pt = strict_feasible(cons + [([s * c for c in coef], s * const)], m)
                    if pt is None:
                        continue
                nxt.append((signs + (s,), cons + [([s * c for c in coef], s * const)], pt))
        cells = nxt
    return [(signs, w) for signs, _, w in cells]


def _flats(arr: Arrangement, max_codim: int) -> list:
    """Nonempty flats as ``(closed index set, AffineMap)``, breadth first by codimension."""
    n, d = arr.n, arr.d
    root = AffineMap.identity(d)
    out = [(frozenset(), root)]
    frontier = out[:]
    seen = {frozenset()}
    while frontier:
        nxt = []
        for closed, amap in frontier:
            if d - amap.dim >= max_codim:
                continue
            for h in range(n):
                if h in closed:
                    continue
                sub = amap.cut(*arr.hyperplanes[h].affine())
                if sub is None or sub is amap:
                    continue
                key = set(closed)
                for g in range(n):
                    if g not in key:
                        gc, g0 = sub.pull(*arr.hyperplanes[g].affine())
                        if g0 == 0 and not any(gc):
                            key.add(g)
                key = frozenset(key)
                if key not in seen:
                    seen.add(key)
                    nxt.append((key, sub))
        out.extend(nxt)
        frontier = nxt
    return out


def _faces_on_flat(arr: Arrangement, closed: frozenset, amap: AffineMap) -> list:
    fixed = {}
    funcs, idx = [], []
    for h in range(arr.n):
        if h in closed:
            continue
        g, g0 = amap.pull(*arr.hyperplanes[h].affine())
        if any(g):
            funcs.append((g, g0))
            idx.append(h)
        else:
            fixed[h] = sign(g0)
    faces = []
    for signs, t in _cells(funcs, amap.dim):
        full = [0] * arr.n
        for h, s in fixed.items():
            full[h] = s
        for h, s in zip(idx, signs):
            full[h] = s
        faces.append(Face(tuple(full), tuple(amap.point(t)), amap.dim))
    faces.sort(key=lambda f: f.signs)
    return faces


def enumerate_chambers(arr: Arrangement) -> list:
    """All chambers, sorted lexicographically by sign vector (``-`` before ``+``)."""
    return _faces_on_flat(arr, frozenset(), AffineMap.identity(arr.d))


def enumerate_faces(arr: Arrangement, max_codim: Optional[int] = None) -> list:
    """All faces of codimension at most ``max_codim``.

    Ordered by codimension, then by zero set, then by sign vector.  Faces whose
    flat is the same share a zero set, so the list is grouped by zero set.
    """
    if max_codim is None:
        max_codim = arr.d
    if not 0 <= max_codim <= arr.d:
        raise ValueError("max_codim must lie in [0, d]")
    faces = []
    for closed, amap in _flats(arr, max_codim):
        faces.extend(_faces_on_flat(arr, closed, amap))
    faces.sort(key=lambda f: (arr.d - f.dim, sorted(f.zero_set), f.signs))
    return faces


# ---------------------------------------------------------------------------
# generators


def _random_family(d: int, n: int, bound: int, seed: int) -> Arrangement:
    if d < 1 or n < 1 or bound < 1:
        raise ValueError("random family needs d >= 1, n >= 1, bound >= 1")
    rng = random.Random(seed)
    for _ in range(MAX_RETRIES):
        rows = []
        while len(rows) < n:
            normal = [rng.randint(-bound, bound) for _ in range(d)]
            offset = rng.randint(-bound, bound)
            if any(normal):
                rows.append((normal, offset))
        arr = Arrangement.from_rows(d, rows)
        if arr.general_position.ok:
            return arr
    raise GenerationError(f"no general-position draw within {MAX_RETRIES} retries")


def _grid_family(counts: Sequence[int]) -> Arrangement:
    counts = [int(c) for c in counts]
    if not counts or any(c < 0 for c in counts) or sum(counts) == 0:
        raise ValueError("grid family needs non-negative per-axis counts, not all zero")
    d = len(counts)
    rows, labels = [], []
    for axis, c in enumerate(counts):
        for j in range(1, c + 1):
            rows.append(([1 if i == axis else 0 for i in range(d)], j))
            labels.append(f"x{axis + 1}={j}")
    return Arrangement.from_rows(d, rows, labels)


def _circle_point(t: Fraction) -> tuple:
    q = 1 + t * t
    return ((1 - t * t) / q, 2 * t / q)


def _line_through(p, q) -> tuple:
    normal = (q[1] - p[1], p[0] - q[0])
    return normal, normal[0] * p[0] + normal[1] * p[1]


def _diagonals_generic(points: Sequence[tuple]) -> bool:
    """No three chords of the convex polygon meet at one interior point."""
    k = len(points)
    lines = {(i, j): _line_through(points[i], points[j]) for i, j in itertools.combinations(range(k), 2)}
    for a, b, c, e in itertools.combinations(range(k), 4):
        # chords (a,c) and (b,e) cross inside the polygon
        (n1, o1), (n2, o2) = lines[(a, c)], lines[(b, e)]
        det = n1[0] * n2[1] - n1[1] * n2[0]
        if det == 0:
            return False
        x = ((o1 * n2[1] - o2 * n1[1]) / det, (n1[0] * o2 - n2[0] * o1) / det)
        for key, (nv, off) in lines.items():
            if key in ((a, c), (b, e)):
                continue
            if nv[0] * x[0] + nv[1] * x[1] == off:
                return False
    return True


def _circle_family(k: int, seed: int) -> Arrangement:
    if k < 4:
        raise ValueError("circle family needs k >= 4 points")
    rng = random.Random(seed)
    for _ in range(MAX_RETRIES):
        ts = []
        for j in range(k):
            theta = -math.pi + 2 * math.pi * (j + 0.5 + rng.uniform(-0.2, 0.2)) / k
            ts.append(Fraction(math.tan(theta / 2)).limit_denominator(200))
        if len(set(ts)) < k:
            continue
        points = [_circle_point(t) for t in ts]
        if not _diagonals_generic(points):
            continue
        rows, labels = [], []
        for i, j in itertools.combinations(range(k), 2):
            rows.append(_line_through(points[i], points[j]))
            labels.append(f"p{i + 1}p{j + 1}")
        return Arrangement.from_rows(2, rows, labels)
    raise GenerationError(f"no generic {k}-gon within {MAX_RETRIES} retries")


def generate(family: str, seed: int = 0, **params) -> Arrangement:
    """Build an arrangement from a named family.

    ``random``: ``d``, ``n``, optional ``bound`` (default 50); integer coefficients,
    redrawn until in general position.  ``grid``: ``counts`` (hyperplanes per axis,
    at ``x_i = 1..c``).  ``circle`` / ``circle_degenerate``: ``k`` points on the unit
    circle and all lines through pairs of them.
    """
    if family == "random":
        return _random_family(int(params["d"]), int(params["n"]), int(params.get("bound", 50)), seed)
    if family == "grid":
        return _grid_family(params["counts"])
    if family in ("circle", "circle_degenerate"):
        return _circle_family(int(params["k"]), seed)
    raise ValueError(f"unknown family {family!r}")


def circle_points(arr: Arrangement) -> list:
    """Recover the polygon vertices of a circle-family arrangement from its labels."""
    index = {}
    for i, lab in enumerate(arr.labels):
        if not (lab.startswith("p") and "p" in lab[1:]):
            raise ValueError("not a circle-family arrangement")
        a, b = lab[1:].split("p")
        index[(int(a) - 1, int(b) - 1)] = i
    k = max(b for _, b in index) + 1
    pts = []
    for j in range(k):
        prev, nxt = tuple(sorted(((j - 1) % k, j))), tuple(sorted((j, (j + 1) % k)))
        amap = _subspace(arr, (index[prev], index[nxt]))
        pts.append(tuple(amap.origin))
    return pts


def polygon_interior(arr: Arrangement, chambers: Sequence[Face]) -> list:
    """Indices of circle-family chambers that lie inside the convex polygon."""
    pts = circle_points(arr)
    k = len(pts)
    centre = (sum(p[0] for p in pts) / k, sum(p[1] for p in pts) / k)
    sides = []
    for j in range(k):
        nv, off = _line_through(pts[j], pts[(j + 1) % k])
        sides.append((nv, off, sign(nv[0] * centre[0] + nv[1] * centre[1] - off)))
    inside = []
    for cid, ch in enumerate(chambers):
        w = ch.witness
        if all(sign(nv[0] * w[0] + nv[1] * w[1] - off) == s for nv, off, s in sides):
            inside.append(cid)
    return inside


def bounded_flags(arr: Arrangement, chambers: Sequence[Face]) -> list:
    """Whether each chamber is bounded.

    A chamber with signs s is unbounded iff some nonzero direction y has
    ``s_i * (a_i . y) >= 0`` for every i, i.e. iff a face of positive
    dimension of the central arrangement ``{a_i . y = 0}`` is conformal to s.
    """
    central = Arrangement(arr.d, tuple(Hyperplane(h.normal, 0) for h in arr.hyperplanes))
    rays = [f.signs for f in enumerate_faces(central) if f.dim > 0]
    out = []
    for ch in chambers:
        s = ch.signs
        out.append(not any(all(r == 0 or r == t for r, t in zip(ray, s)) for ray in rays))
    return out
