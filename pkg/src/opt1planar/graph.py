"""Dynamic graph core for the reduction engine.

Vertices are dense integer ids.  Ids of removed vertices are never reused,
so an id identifies the same vertex for the lifetime of a run.  Adjacency
is one hash set per vertex, giving constant expected time edge queries;
the query counter exists so tests can pin the probe budget of local
inspections.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class StructuralFault(Exception):
    """An edit referenced a missing vertex/edge or would create a parallel edge."""


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Canonical undirected key for the edge (u, v)."""
    return (u, v) if u < v else (v, u)


class DynamicGraph:
    """Simple undirected graph under vertex and edge deletions/insertions."""

    __slots__ = ("_adj", "_m", "_alive", "probes")

    def __init__(self) -> None:
        self._adj: list[set[int] | None] = []
        self._m = 0
        self._alive = 0
        self.probes = 0

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "DynamicGraph":
        g = cls()
        for _ in range(n):
            g.add_vertex()
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def copy(self) -> "DynamicGraph":
        g = DynamicGraph()
        g._adj = [None if s is None else set(s) for s in self._adj]
        g._m = self._m
        g._alive = self._alive
        return g

    # -- queries -----------------------------------------------------------

    @property
    def n(self) -> int:
        return self._alive

    @property
    def m(self) -> int:
        return self._m

    @property
    def id_bound(self) -> int:
        """One past the largest id ever allocated."""
        return len(self._adj)

    def is_alive(self, v: int) -> bool:
        return 0 <= v < len(self._adj) and self._adj[v] is not None

    def degree(self, v: int) -> int:
        adj = self._adj[v]
        if adj is None:
            raise StructuralFault(f"vertex {v} was removed")
        return len(adj)

    def neighbors(self, v: int) -> set[int]:
        adj = self._adj[v]
        if adj is None:
            raise StructuralFault(f"vertex {v} was removed")
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        self.probes += 1
        adj = self._adj[u]
        return adj is not None and v in adj

    def vertices(self) -> Iterator[int]:
        for v, adj in enumerate(self._adj):
            if adj is not None:
                yield v

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, adj in enumerate(self._adj):
            if adj is not None:
                for w in adj:
                    if w > v:
                        yield (v, w)

    # -- edits -------------------------------------------------------------

    def add_vertex(self) -> int:
        self._adj.append(set())
        self._alive += 1
        return len(self._adj) - 1

    def restore_vertex(self, v: int) -> None:
        """Bring back a removed or never-seen id, isolated.  For trace replay."""
        if v < 0 or (v < len(self._adj) and self._adj[v] is not None):
            raise StructuralFault(f"vertex {v} cannot be restored")
        while len(self._adj) <= v:
            self._adj.append(None)
        self._adj[v] = set()
        self._alive += 1

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise StructuralFault(f"self loop at {u}")
        au, av = self._adj[u], self._adj[v]
        if au is None or av is None:
            raise StructuralFault(f"edge ({u}, {v}) touches a removed vertex")
        if v in au:
            raise StructuralFault(f"edge ({u}, {v}) already present")
        au.add(v)
        av.add(u)
        self._m += 1

    def remove_edge(self, u: int, v: int) -> None:
        au, av = self._adj[u], self._adj[v]
        if au is None or av is None or v not in au:
            raise StructuralFault(f"edge ({u}, {v}) not present")
        au.discard(v)
        av.discard(u)
        self._m -= 1

    def remove_vertex(self, v: int) -> None:
        adj = self._adj[v]
        if adj is None:
            raise StructuralFault(f"vertex {v} already removed")
        for w in adj:
            self._adj[w].discard(v)
        self._m -= len(adj)
        self._adj[v] = None
        self._alive -= 1


def mutate_edges(
    g: DynamicGraph,
    removals: Iterable[tuple[int, int]],
    insertions: Iterable[tuple[int, int]],
) -> None:
    """Apply a batch edit, validating the whole batch before touching the graph.

    Raises StructuralFault if any removal is absent or any insertion is
    present or degenerate; the graph is left unchanged in that case.
    """
    removals = list(removals)
    insertions = list(insertions)
    for u, v in removals:
        if not g.has_edge(u, v):
            raise StructuralFault(f"cannot remove missing edge ({u}, {v})")
    seen: set[tuple[int, int]] = set()
    for u, v in insertions:
        k = edge_key(u, v)
        if u == v or g.has_edge(u, v) or k in seen:
            raise StructuralFault(f"cannot insert edge ({u}, {v})")
        seen.add(k)
    for u, v in removals:
        g.remove_edge(u, v)
    for u, v in insertions:
        g.add_edge(u, v)


def precheck_reason(g: DynamicGraph) -> str | None:
    """Counting conditions every optimal 1-planar graph satisfies.

    Edge count 4n - 8, all degrees even and at least 6, n >= 8 and n != 9.
    Necessary but not sufficient; the reduction engine decides membership.
    Returns None when all conditions hold, otherwise the first violated one.
    """
    n = g.n
    if g.m != 4 * n - 8:
        return "edge count"
    if n < 8 or n == 9:
        return "vertex count"
    for v in g.vertices():
        d = g.degree(v)
        if d & 1:
            return "odd degree"
        if d < 6:
            return "degree below 6"
    return None


def precheck(g: DynamicGraph) -> bool:
    return precheck_reason(g) is None


# -- local neighborhood inspection ----------------------------------------

#: degree vectors that can occur at a degree-6 vertex of an optimal
#: 1-planar graph; anything else disproves membership on the spot
VALID_VECTORS = frozenset(
    [
        (3, 3, 3, 5, 5, 5, 6),
        (3, 3, 4, 5, 5, 6, 6),
        (3, 4, 4, 5, 5, 5, 6),
        (3, 4, 5, 5, 5, 6, 6),
        (4, 4, 5, 5, 5, 5, 6),
        (4, 4, 5, 5, 6, 6, 6),
        (5, 5, 5, 5, 5, 5, 6),
    ]
)


class Neighborhood:
    """Induced subgraph on a degree-6 vertex and its six neighbors.

    ring holds the neighbor ids sorted ascending; masks[i] is a 6-bit
    adjacency row of ring[i] against the ring.  Local degrees count the
    center as well.
    """

    __slots__ = ("center", "ring", "masks")

    def __init__(self, center: int, ring: list[int], masks: list[int]) -> None:
        self.center = center
        self.ring = ring
        self.masks = masks

    def local_degree(self, v: int) -> int:
        if v == self.center:
            return 6
        i = self.ring.index(v)
        return bin(self.masks[i]).count("1") + 1

    def ring_adjacent(self, u: int, v: int) -> bool:
        i = self.ring.index(u)
        j = self.ring.index(v)
        return bool(self.masks[i] >> j & 1)


def neighborhood(g: DynamicGraph, x: int) -> Neighborhood:
    """Probe the 15 ring pairs around x.  x must have degree exactly 6."""
    adj = g.neighbors(x)
    if len(adj) != 6:
        raise ValueError(f"vertex {x} has degree {len(adj)}, not a candidate")
    ring = sorted(adj)
    masks = [0] * 6
    for i in range(6):
        ai = ring[i]
        for j in range(i + 1, 6):
            if g.has_edge(ai, ring[j]):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return Neighborhood(x, ring, masks)


class DegreeVector:
    """Sorted 7-tuple of local degrees of H(x) plus its minimum tau."""

    __slots__ = ("d", "tau")

    def __init__(self, d: tuple[int, ...]) -> None:
        self.d = d
        self.tau = d[0]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DegreeVector) and self.d == other.d

    def __hash__(self) -> int:
        return hash(self.d)

    def __repr__(self) -> str:
        return f"DegreeVector{self.d}"

    @property
    def valid(self) -> bool:
        return self.d in VALID_VECTORS


def degree_vector(nb: Neighborhood) -> DegreeVector:
    locals_ = sorted(bin(m).count("1") + 1 for m in nb.masks)
    locals_.append(6)
    return DegreeVector(tuple(locals_))
