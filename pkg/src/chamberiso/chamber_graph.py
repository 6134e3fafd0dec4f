"""Chamber graphs, edge boundaries and convex chamber sets."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .arrangement import Arrangement, Face, enumerate_chambers, feasible_witness

__all__ = [
    "ChamberGraph",
    "ChamberSet",
    "BudgetExceeded",
    "build_graph",
    "edge_boundary",
    "enumerate_convex_sets",
    "is_graph_convex",
]

DEFAULT_CONVEX_MAX_N = 12


class BudgetExceeded(RuntimeError):
    """A guarded enumeration would exceed its configured budget."""


@dataclass(frozen=True)
class ChamberSet:
    """Subset of chamber ids stored as an integer bitset."""

    bits: int
    universe: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.universe:
            raise ValueError("bitset has members outside the universe")

    @classmethod
    def from_ids(cls, ids: Iterable[int], universe: int) -> "ChamberSet":
        bits = 0
        for i in ids:
            if not 0 <= i < universe:
                raise ValueError(f"chamber id {i} out of range")
            bits |= 1 << i
        return cls(bits, universe)

    @classmethod
    def empty(cls, universe: int) -> "ChamberSet":
        return cls(0, universe)

    @classmethod
    def full(cls, universe: int) -> "ChamberSet":
        return cls((1 << universe) - 1, universe)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, i: int) -> bool:
        return bool(self.bits >> i & 1)

    def __iter__(self):
        b, i = self.bits, 0
        while b:
            if b & 1:
                yield i
            b >>= 1
            i += 1

    def ids(self) -> list:
        return list(self)

    def complement(self) -> "ChamberSet":
        return ChamberSet(((1 << self.universe) - 1) & ~self.bits, self.universe)

    def hex(self) -> str:
        return format(self.bits, "x")

    @classmethod
    def from_hex(cls, text: str, universe: int) -> "ChamberSet":
        return cls(int(text, 16), universe)


@dataclass(frozen=True)
class ChamberGraph:
    """Chamber graph; vertex ``i`` is ``chambers[i]``, edges are ``(u, v, label)`` with u < v."""

    chambers: tuple
    edges: tuple

    @property
    def n_vertices(self) -> int:
        return len(self.chambers)

    @cached_property
    def adjacency(self) -> tuple:
        adj = [[] for _ in self.chambers]
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def neighbor_masks(self) -> tuple:
        return tuple(sum(1 << v for v in a) for a in self.adjacency)

    @cached_property
    def degree(self) -> tuple:
        return tuple(len(a) for a in self.adjacency)

    @cached_property
    def distances(self) -> np.ndarray:
        """All-pairs BFS distances (-1 for unreachable)."""
        nv = self.n_vertices
        dist = np.full((nv, nv), -1, dtype=np.int64)
        for s in range(nv):
            dist[s, s] = 0
            q = deque([s])
            while q:
                u = q.popleft()
                for v in self.adjacency[u]:
                    if dist[s, v] < 0:
                        dist[s, v] = dist[s, u] + 1
                        q.append(v)
        return dist

    def is_connected(self) -> bool:
        return bool((self.distances[0] >= 0).all())

    def index_of(self, signs: Sequence[int]) -> int:
        return self._index[tuple(signs)]

    @cached_property
    def _index(self) -> dict:
        return {c.signs: i for i, c in enumerate(self.chambers)}

    def to_dict(self) -> dict:
        return {"vertices": self.n_vertices, "edges": [list(e) for e in self.edges]}

    def dumps(self) -> str:
        return json.dumps(self.to_dict()) + "\n"

    def edge_list_text(self) -> str:
        return "".join(f"{u} {v} {lab}\n" for u, v, lab in self.edges)


def build_graph(arr: Arrangement, chambers: Optional[Sequence[Face]] = None) -> ChamberGraph:
    """Edges join chambers whose sign vectors differ in one coordinate and share a facet."""
    if chambers is None:
        chambers = enumerate_chambers(arr)
    index = {c.signs: i for i, c in enumerate(chambers)}
    edges = []
    for u, c in enumerate(chambers):
        for e, s in enumerate(c.signs):
            if s != -1:
                continue
            flipped = c.signs[:e] + (1,) + c.signs[e + 1:]
            v = index.get(flipped)
            if v is None:
                continue
            shared = {f: t for f, t in enumerate(c.signs) if f != e}
            if feasible_witness(arr, (e,), shared) is not None:
                edges.append((min(u, v), max(u, v), e))
    edges.sort()
    return ChamberGraph(tuple(chambers), tuple(edges))


def edge_boundary(g: ChamberGraph, S: ChamberSet) -> tuple:
    """``(|dS|, [(u, v, label), ...])`` for edges with exactly one endpoint in S."""
    bits = S.bits
    out = [e for e in g.edges if (bits >> e[0] & 1) != (bits >> e[1] & 1)]
    return len(out), out


def boundary_size(g: ChamberGraph, bits: int) -> int:
    """Fast ``|dS|`` from the bitset alone."""
    total = 0
    nbr = g.neighbor_masks
    deg = g.degree
    b, i = bits, 0
    while b:
        if b & 1:
            total += deg[i] - (nbr[i] & bits).bit_count()
        b >>= 1
        i += 1
    return total


def enumerate_convex_sets(
    arr: Arrangement, g: ChamberGraph, max_n: int = DEFAULT_CONVEX_MAX_N
) -> list:
    """All nonempty chamber sets cut out by a partial sign condition, deduplicated.

    Sorted by (size, bits).  Refuses arrangements with more than ``max_n``
    hyperplanes since the scan is over 3^n sign conditions.
    """
    if arr.n > max_n:
        raise BudgetExceeded(f"convex enumeration capped at n <= {max_n} (n = {arr.n})")
    nv = g.n_vertices
    pos = [0] * arr.n
    for i, c in enumerate(g.chambers):
        for e, s in enumerate(c.signs):
            if s > 0:
                pos[e] |= 1 << i
    full = (1 << nv) - 1
    neg = [full & ~p for p in pos]
    found = set()

    def walk(e: int, mask: int) -> None:
        if e == arr.n:
            found.add(mask)
            return
        walk(e + 1, mask)
        for side in (pos[e], neg[e]):
            sub = mask & side
            if sub:
                walk(e + 1, sub)

    walk(0, full)
    return [ChamberSet(b, nv) for b in sorted(found, key=lambda b: (b.bit_count(), b))]


def is_graph_convex(g: ChamberGraph, S: ChamberSet) -> bool:
    """True iff every shortest path between members of S stays in S."""
    ids = S.ids()
    if len(ids) <= 1:
        return True
    dist = g.distances
    inside = np.zeros(g.n_vertices, dtype=bool)
    inside[ids] = True
    for a_pos, a in enumerate(ids):
        for b in ids[a_pos + 1:]:
            on_interval = dist[a] + dist[b] == dist[a, b]
            if (on_interval & ~inside).any():
                return False
    return True
