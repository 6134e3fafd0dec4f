"""Thickenings of chamber sets and their stratification by flats.

Every face of the arrangement is a relatively open cell, so the thickening
``T_S`` and each stratum ``T_S(A) = T_S ∩ L_A`` are unions of faces.  All
per-set work is done with integer bitmasks over a precomputed face poset.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .arrangement import Arrangement, enumerate_faces
from .chamber_graph import ChamberGraph, ChamberSet, build_graph

__all__ = [
    "FaceLattice",
    "Stratification",
    "GluingGraph",
    "stratify",
    "is_strata_connected",
    "gluing_graph",
    "full_flats",
    "bound_lift_holds",
    "mask_key",
]


def _bits(mask: int) -> list:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _row_to_int(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def mask_key(mask: int) -> str:
    """Stable text key for an index set: ``"0,2"``; the empty set is ``""``."""
    return ",".join(str(i) for i in _bits(mask))


def _sort_key(mask: int) -> tuple:
    return (mask.bit_count(), _bits(mask))


class FaceLattice:
    """Face poset of an arrangement, aligned with a chamber graph's vertex order.

    Attributes are plain lists indexed by face id:
    ``above[F]`` chamber bitmask of chambers whose closure contains F,
    ``below[F]`` face bitmask of faces in the closure of F (F included),
    ``touch[F]`` face bitmask of faces related to F by a cover relation.
    """

    def __init__(self, arr: Arrangement, graph: Optional[ChamberGraph] = None, faces=None):
        self.arr = arr
        self.graph = graph if graph is not None else build_graph(arr)
        self.faces = list(faces) if faces is not None else enumerate_faces(arr)
        nf, n = len(self.faces), arr.n
        signs = np.array([f.signs for f in self.faces], dtype=np.int8).reshape(nf, n)
        self.signs = signs
        self.dims = np.array([f.dim for f in self.faces], dtype=np.int64)
        self.zero = [f.zero_mask for f in self.faces]

        chamber_ids = self.graph._index
        ch_rows = np.array([c.signs for c in self.graph.chambers], dtype=np.int8).reshape(-1, n)
        self.chamber_face = [None] * self.graph.n_vertices
        for fid, f in enumerate(self.faces):
            if f.dim == arr.d:
                self.chamber_face[chamber_ids[f.signs]] = fid

        self.above = []
        self.below = []
        self.touch = [0] * nf
        for fid in range(nf):
            row = signs[fid]
            conf = ((row == 0) | (ch_rows == row)).all(axis=1)
            self.above.append(_row_to_int(conf))
            # faces G in the closure of F: G agrees with F wherever G is nonzero
            low = ((signs == 0) | (signs == row)).all(axis=1)
            self.below.append(_row_to_int(low))
            covers = low & (self.dims == self.dims[fid] - 1)
            for g in np.flatnonzero(covers):
                self.touch[fid] |= 1 << int(g)
                self.touch[int(g)] |= 1 << fid
        self.pos = [_row_to_int(signs[:, f] > 0) for f in range(n)]
        self.neg = [_row_to_int(signs[:, f] < 0) for f in range(n)]
        self.on = [_row_to_int(signs[:, f] == 0) for f in range(n)]
        self.chamber_pos = [0] * n
        for i, c in enumerate(self.graph.chambers):
            for f, s in enumerate(c.signs):
                if s > 0:
                    self.chamber_pos[f] |= 1 << i

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def flat_faces(self, A: int) -> int:
        """Bitmask of all faces lying in the flat ``L_A``."""
        m = (1 << self.n_faces) - 1
        for f in _bits(A):
            m &= self.on[f]
        return m

    def side(self, S: ChamberSet, e: int, s: int) -> ChamberSet:
        """Chambers of S on side ``s`` of hyperplane e."""
        half = self.chamber_pos[e] if s > 0 else ~self.chamber_pos[e]
        return ChamberSet(S.bits & half & ((1 << S.universe) - 1), S.universe)

    def components_of(self, faces_mask: int) -> list:
        """Connected pieces of a union of faces, via the cover relation."""
        comps = []
        rest = faces_mask
        touch = self.touch
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                grow = 0
                for x in _bits(frontier):
                    grow |= touch[x]
                frontier = grow & rest & ~comp
                comp |= frontier
            comps.append(comp)
            rest &= ~comp
        return comps


@dataclass
class Stratification:
    """Support, per-stratum components and bounding hyperplanes of one chamber set.

    Index sets ``A`` are stored as integer bitmasks over hyperplane indices.
    Components are face bitmasks, ordered by their lowest face id.
    """

    S: ChamberSet
    d: int
    members: int
    support: tuple
    strata: dict
    components: dict
    bounding: dict
    conn_counts: tuple = field(default=())

    def conn(self, A: int) -> int:
        return len(self.components.get(A, ()))

    @property
    def total_components(self) -> int:
        return sum(len(c) for c in self.components.values())

    def support_sets(self) -> list:
        return [frozenset(_bits(A)) for A in self.support]

    def bounding_sets(self) -> dict:
        return {frozenset(_bits(A)): frozenset(_bits(b)) for A, b in self.bounding.items()}

    def level(self, i: int) -> list:
        return [A for A in self.support if A.bit_count() == i]

    def to_dict(self) -> dict:
        return {
            "support": [_bits(A) for A in self.support],
            "components": {mask_key(A): len(self.components[A]) for A in self.support},
            "bounding": {mask_key(A): _bits(self.bounding[A]) for A in self.support},
            "connCounts": list(self.conn_counts),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


def _submasks(z: int):
    sub = z
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & z


def stratify(lat: FaceLattice, S: ChamberSet) -> Stratification:
    """Thickening, support, components and bounding sets of S.

    A face lies in ``T_S`` iff every chamber whose closure contains it is in S.
    ``H_f`` bounds ``T_S(A)`` iff the stratum sits strictly on one side of
    ``H_f`` and its closure contains a face on ``H_f``.
    """
    bits = S.bits
    members = 0
    zeros = set()
    for fid, up in enumerate(lat.above):
        if up & ~bits == 0:
            members |= 1 << fid
            zeros.add(lat.zero[fid])
    support_set = set()
    for z in zeros:
        if z in support_set:
            continue
        support_set.update(_submasks(z))
    support = tuple(sorted(support_set, key=_sort_key))

    member_ids = _bits(members)
    strata, components, bounding = {}, {}, {}
    n = lat.arr.n
    for A in support:
        fa = 0
        closure = 0
        for fid in member_ids:
            if A & ~lat.zero[fid] == 0:
                fa |= 1 << fid
                closure |= lat.below[fid]
        strata[A] = fa
        components[A] = lat.components_of(fa)
        b = 0
        for f in range(n):
            if A >> f & 1:
                continue
            if (fa & ~lat.pos[f] == 0 or fa & ~lat.neg[f] == 0) and closure & lat.on[f]:
                b |= 1 << f
        bounding[A] = b

    top = max([lat.arr.d] + [A.bit_count() for A in support])
    counts = [0] * (top + 1)
    for A in support:
        counts[A.bit_count()] += len(components[A])
    return Stratification(S, lat.arr.d, members, support, strata, components, bounding, tuple(counts))


def is_strata_connected(strat: Stratification) -> bool:
    return all(len(strat.components[A]) == 1 for A in strat.support)


@dataclass
class GluingGraph:
    """Bipartite graph gluing the + and - pieces of ``T_S(A)`` across ``H_e``."""

    e: int
    A: int
    left: list
    right: list
    edges: list
    component_count: int
    conn_count: int
    endpoint_multiplicities: list

    @property
    def lhs(self) -> int:
        return len(self.left) + len(self.right)

    @property
    def rhs(self) -> int:
        return self.conn_count + len(self.edges)

    @property
    def inequality_holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def endpoints_unique(self) -> bool:
        return all(m == (1, 1) for m in self.endpoint_multiplicities)


def _closure(lat: FaceLattice, comp: int) -> int:
    c = 0
    for fid in _bits(comp):
        c |= lat.below[fid]
    return c


def gluing_graph(lat: FaceLattice, S: ChamberSet, e: int, A: int, strat: Optional[Stratification] = None) -> GluingGraph:
    if A >> e & 1:
        raise ValueError("e must not belong to A")
    strat = strat if strat is not None else stratify(lat, S)
    if A not in strat.components:
        raise ValueError("A is not in the support of S")
    plus = stratify(lat, lat.side(S, e, 1))
    minus = stratify(lat, lat.side(S, e, -1))
    left = plus.components.get(A, [])
    right = minus.components.get(A, [])
    glue = strat.components.get(A | 1 << e, [])
    left_cl = [_closure(lat, c) for c in left]
    right_cl = [_closure(lat, c) for c in right]

    edges, mult = [], []
    for D in glue:
        ls = [i for i, cl in enumerate(left_cl) if cl & D]
        rs = [j for j, cl in enumerate(right_cl) if cl & D]
        mult.append((len(ls), len(rs)))
        if ls and rs:
            edges.append((ls[0], rs[0]))

    parent = list(range(len(left) + len(right)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        a, b = find(i), find(len(left) + j)
        if a != b:
            parent[a] = b
    comps = len({find(x) for x in range(len(parent))})
    return GluingGraph(e, A, left, right, edges, comps, len(strat.components[A]), mult)


def full_flats(strat: Stratification, lat: FaceLattice) -> tuple:
    """``(L, M)``: strata components that are an entire line / entire plane (d = 3)."""
    if lat.arr.d != 3:
        raise ValueError("full_flats is defined for arrangements in R^3")
    L = M = 0
    for A in strat.support:
        k = A.bit_count()
        if k not in (1, 2):
            continue
        if strat.strata[A] == lat.flat_faces(A):
            if k == 2:
                L += 1
            else:
                M += 1
    return L, M


def bound_lift_holds(lat: FaceLattice, S: ChamberSet, e: int, A: int, strat: Optional[Stratification] = None) -> bool:
    """Check how bounding hyperplanes of ``T_S(A)`` (e in A) lift to ``A - {e}``.

    Each ``H_f`` bounding ``T_S(A)`` must bound both half-restrictions
    ``T_{S+}(A')``, ``T_{S-}(A')``, or bound one and intersect the other.
    """
    strat = strat if strat is not None else stratify(lat, S)
    if not A >> e & 1 or A not in strat.bounding:
        raise ValueError("need e in A and A in the support of S")
    Ap = A & ~(1 << e)
    halves = [stratify(lat, lat.side(S, e, s)) for s in (1, -1)]
    for f in _bits(strat.bounding[A]):
        bounds = [Ap in h.bounding and bool(h.bounding[Ap] >> f & 1) for h in halves]
        meets = [(Ap | 1 << f) in h.components for h in halves]
        if all(bounds):
            continue
        if (bounds[0] and meets[1]) or (bounds[1] and meets[0]):
            continue
        return False
    return True
