"""The two reduction rules, their classification, and extended wheels.

A degree-6 vertex is a candidate.  Its degree vector (the sorted local
degrees of the closed neighborhood) separates candidates whose
neighborhood is a crossed star from those sitting inside a crossed
cube; anything outside the seven admissible vectors disproves
membership of the whole graph.  Classification works entirely on the 15
probed ring pairs plus a constant number of extra probes for the
crossed-cube pattern, so it costs O(1) per candidate.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .graph import (
    DynamicGraph,
    Neighborhood,
    StructuralFault,
    degree_vector,
    edge_key,
    mutate_edges,
    neighborhood,
)
from .records import CREdit, SREdit

EdgeKey = tuple[int, int]

#: the only degree vector a crossed-cube inner vertex can show
CC_VECTOR = (4, 4, 5, 5, 5, 5, 6)


class NotOptimal(Exception):
    """A local inspection disproved membership of the whole input."""

    def __init__(self, vertex: int, why: str) -> None:
        super().__init__(f"vertex {vertex}: {why}")
        self.vertex = vertex
        self.why = why


class Kind(Enum):
    GOOD = "good"
    BLOCKED_RED = "blocked-red"
    BLOCKED_BLACK = "blocked-black"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    blocking: tuple[EdgeKey, ...] = ()


GOOD = Classification(Kind.GOOD)
INFEASIBLE = Classification(Kind.INFEASIBLE)


@dataclass(frozen=True)
class SRReduction:
    """Contract candidate x into ring vertex target.

    mates are target's two neighbors on the crossed-star ring (the edge
    between them goes away), others are the three remaining ring
    vertices (each gains an edge to target).  red_keys are the two
    insertions whose presence merely delays the reduction, black_key the
    one whose presence kills it.
    """

    x: int
    target: int
    mates: tuple[int, int]
    others: tuple[int, int, int]
    black_key: EdgeKey
    red_keys: tuple[EdgeKey, EdgeKey]

    @property
    def edit(self) -> SREdit:
        return SREdit(
            x=self.x,
            target=self.target,
            a=self.mates[0],
            b=self.mates[1],
            others=self.others,
        )


@dataclass(frozen=True)
class CRReduction:
    """Remove the inner cycle of a crossed cube.

    inner[i] is pillared to outer[i] and misses outer[(i + 2) % 4];
    red_keys are the two outer diagonals to be inserted.
    """

    inner: tuple[int, int, int, int]
    outer: tuple[int, int, int, int]
    red_keys: tuple[EdgeKey, EdgeKey]

    @property
    def edit(self) -> CREdit:
        return CREdit(inner=self.inner, outer=self.outer)


Reduction = SRReduction | CRReduction


# -- crossed star classification --------------------------------------------


def _sr_roles(x: int, nb: Neighborhood) -> tuple[int, int, int, int, int, int]:
    """Label the ring of a crossed star as (x1, ra, a, anchor, b, rb).

    The hexagon runs x1, ra, a, anchor, b, rb with chords (x1, a),
    (a, b), (b, x1); anchor, ra, rb sit at the low-degree positions.
    Rooted at an arbitrary local-degree-3 vertex; every consistent
    labeling gives a legitimate reduction set, so the first one found
    (in a fixed order) wins.  Raises NotOptimal when no labeling fits,
    which disproves membership outright.
    """
    loc = {v: nb.local_degree(v) for v in nb.ring}
    low = [v for v in nb.ring if loc[v] == 3]
    if not low:
        raise NotOptimal(x, "minimum local degree 3 without a degree-3 vertex")
    anchor = low[0]
    mates = [v for v in nb.ring if v != anchor and nb.ring_adjacent(anchor, v)]
    if len(mates) != 2:
        raise NotOptimal(x, "degree-3 ring vertex without exactly two ring neighbors")
    a, b = mates
    rest = [v for v in nb.ring if v not in (anchor, a, b)]
    for x1 in sorted(rest, key=lambda v: (-loc[v], v)):
        if not (nb.ring_adjacent(x1, a) and nb.ring_adjacent(x1, b)):
            continue
        u, w = (v for v in rest if v != x1)
        for ra, rb in ((u, w), (w, u)):
            if (
                nb.ring_adjacent(ra, a)
                and nb.ring_adjacent(rb, b)
                and nb.ring_adjacent(ra, x1)
                and nb.ring_adjacent(rb, x1)
                and nb.ring_adjacent(a, b)
            ):
                return (x1, ra, a, anchor, b, rb)
    raise NotOptimal(x, "neighborhood of a minimum-degree-3 candidate is not a crossed star")


def _classify_sr(x: int, nb: Neighborhood) -> list[tuple[SRReduction, Classification]]:
    x1, ra, a, anchor, b, rb = _sr_roles(x, nb)
    plan = (
        (anchor, (a, b), (x1, ra, rb), x1),
        (ra, (x1, a), (anchor, b, rb), b),
        (rb, (x1, b), (anchor, a, ra), a),
    )
    out: list[tuple[SRReduction, Classification]] = []
    for target, mates, others, opp in plan:
        red_partners = tuple(r for r in others if r != opp)
        red = SRReduction(
            x=x,
            target=target,
            mates=mates,
            others=others,
            black_key=edge_key(target, opp),
            red_keys=tuple(edge_key(target, r) for r in red_partners),
        )
        if nb.ring_adjacent(target, opp):
            cls = Classification(Kind.BLOCKED_BLACK, (red.black_key,))
        else:
            present = tuple(
                k
                for k, r in zip(red.red_keys, red_partners)
                if nb.ring_adjacent(target, r)
            )
            cls = GOOD if not present else Classification(Kind.BLOCKED_RED, present)
        out.append((red, cls))
    return out


# -- crossed cube matching ---------------------------------------------------


def match_cc(g: DynamicGraph, x: int, nb: Neighborhood | None = None) -> CRReduction | None:
    """Recognize x as an inner vertex of a crossed cube.

    The two local-degree-4 ring vertices are the endpoints of the
    missing outer diagonal; among the four local-degree-5 vertices
    exactly one pair is non-adjacent, and the member of global degree 6
    is the opposite inner vertex.  Every adjacency of the pattern is
    verified before a reduction is reported.
    """
    if nb is None:
        nb = neighborhood(g, x)
    loc = {v: nb.local_degree(v) for v in nb.ring}
    low4 = sorted(v for v in nb.ring if loc[v] == 4)
    mid5 = sorted(v for v in nb.ring if loc[v] == 5)
    if len(low4) != 2 or len(mid5) != 4:
        return None
    if nb.ring_adjacent(low4[0], low4[1]):
        return None
    gaps = [
        (mid5[i], mid5[j])
        for i in range(4)
        for j in range(i + 1, 4)
        if not nb.ring_adjacent(mid5[i], mid5[j])
    ]
    if len(gaps) != 1:
        return None
    far_pair = gaps[0]
    mids = [v for v in mid5 if v not in far_pair]
    if any(g.degree(v) != 6 for v in mids):
        return None
    ring_set = set(nb.ring)
    for x3 in sorted(v for v in far_pair if g.degree(v) == 6):
        v1 = far_pair[0] if x3 == far_pair[1] else far_pair[1]
        extra = g.neighbors(x3) - ring_set - {x}
        if len(extra) != 1:
            continue
        v3 = next(iter(extra))
        excl = []
        for mid in mids:
            miss = [w for w in low4 if not nb.ring_adjacent(mid, w)]
            if len(miss) != 1:
                excl = []
                break
            excl.append(miss[0])
        if len(excl) != 2 or excl[0] == excl[1]:
            continue
        inner = (x, mids[0], x3, mids[1])
        outer = (v1, excl[1], v3, excl[0])
        if _cc_pattern_holds(g, inner, outer):
            return CRReduction(
                inner=inner,
                outer=outer,
                red_keys=(edge_key(outer[0], outer[2]), edge_key(outer[1], outer[3])),
            )
    return None


def _cc_pattern_holds(
    g: DynamicGraph,
    inner: tuple[int, int, int, int],
    outer: tuple[int, int, int, int],
) -> bool:
    if len(set(inner) | set(outer)) != 8:
        return False
    inner_set = set(inner)
    for i, u in enumerate(inner):
        want = (inner_set - {u}) | {outer[i], outer[(i + 1) % 4], outer[i - 1]}
        if g.neighbors(u) != want:
            return False
    return all(g.has_edge(outer[i], outer[(i + 1) % 4]) for i in range(4))


# -- unified classification --------------------------------------------------


def classify(
    g: DynamicGraph,
    x: int,
    nb: Neighborhood | None = None,
) -> list[tuple[Reduction, Classification]]:
    """All reductions rooted at candidate x, each with its classification.

    Raises NotOptimal when the degree vector (or finer ring structure)
    rules the whole graph out.  An empty list means x currently offers
    nothing, which is fine.
    """
    if nb is None:
        nb = neighborhood(g, x)
    dv = degree_vector(nb)
    if not dv.valid:
        raise NotOptimal(x, f"degree vector {dv.d} is not admissible")
    if dv.tau == 3:
        return [(r, c) for r, c in _classify_sr(x, nb)]
    if dv.d == CC_VECTOR:
        red = match_cc(g, x, nb)
        if red is None:
            return []
        present = tuple(k for k in red.red_keys if g.has_edge(*k))
        cls = GOOD if not present else Classification(Kind.BLOCKED_RED, present)
        return [(red, cls)]
    return []


# -- applying reductions ------------------------------------------------------


def apply_sr(g: DynamicGraph, red: SRReduction) -> SREdit:
    """Execute a crossed-star reduction.  n drops by 1, m by 4.

    The mates lose two edges each, so their degree must still be >= 8;
    a violation means the input was never in the class and surfaces as
    StructuralFault for the engine to turn into a reject.
    """
    for w in red.mates:
        if g.degree(w) < 8:
            raise StructuralFault(
                f"mate {w} of reduction at {red.x} has degree {g.degree(w)} < 8"
            )
    edit = red.edit
    mutate_edges(g, edit.removals, edit.insertions)
    g.remove_vertex(red.x)
    return edit


def apply_cr(g: DynamicGraph, red: CRReduction) -> CREdit:
    """Execute a crossed-cube reduction.  n drops by 4, m by 16."""
    for w in red.outer:
        if g.degree(w) < 8:
            raise StructuralFault(
                f"outer vertex {w} of crossed cube at {red.inner[0]} has degree "
                f"{g.degree(w)} < 8"
            )
    edit = red.edit
    mutate_edges(g, edit.removals, edit.insertions)
    for u in red.inner:
        g.remove_vertex(u)
    return edit


# -- extended wheels -----------------------------------------------------------


@dataclass(frozen=True)
class XWStructure:
    """An extended wheel located inside a graph: poles and rim order."""

    k: int
    p: int
    q: int
    cycle: tuple[int, ...]


def make_xw(k: int):
    """Build the extended wheel with 2k rim vertices and its embedding.

    Vertex ids: pole p = 0, pole q = 1, rim 2 .. 2k + 1 in cyclic order.
    Returns (graph, embedding).
    """
    from .embedding import xw_embedding

    if k < 3:
        raise ValueError(f"extended wheels need k >= 3, got {k}")
    g = DynamicGraph()
    p = g.add_vertex()
    q = g.add_vertex()
    rim = [g.add_vertex() for _ in range(2 * k)]
    t = 2 * k
    for j in range(t):
        g.add_edge(rim[j], rim[(j + 1) % t])
        g.add_edge(p, rim[j])
        g.add_edge(q, rim[j])
    for j in range(t):
        g.add_edge(rim[j], rim[(j + 2) % t])
    return g, xw_embedding(g, p, q, rim)


def _verify_xw(g: DynamicGraph, p: int, q: int, cycle: list[int]) -> bool:
    t = len(cycle)
    if t < 6 or t % 2 or len(set(cycle)) != t:
        return False
    if g.m != 4 * t or g.has_edge(p, q):
        return False
    for j in range(t):
        cj = cycle[j]
        if not (
            g.has_edge(cj, cycle[(j + 1) % t])
            and g.has_edge(cj, cycle[(j + 2) % t])
            and g.has_edge(p, cj)
            and g.has_edge(q, cj)
        ):
            return False
    return True


def detect_xw(g: DynamicGraph) -> XWStructure | None:
    """Decide whether g is an extended wheel and recover its structure.

    For n = 8 the graph must be 6-regular with the complement a perfect
    matching (all such graphs are the same extended wheel); for larger n
    the two poles are the unique vertices of degree n - 2 and the rim
    order falls out of the chord pattern.
    """
    n = g.n
    if n < 8 or n % 2 or g.m != 4 * n - 8:
        return None
    verts = sorted(g.vertices())
    if n == 8:
        anti: dict[int, int] = {}
        for v in verts:
            non = [w for w in verts if w != v and not g.has_edge(v, w)]
            if len(non) != 1:
                return None
            anti[v] = non[0]
        p = verts[0]
        q = anti[p]
        rest = [v for v in verts if v not in (p, q)]
        w0 = rest[0]
        w1 = min(v for v in rest if v not in (w0, anti[w0]))
        w2 = min(v for v in rest if v not in (w0, anti[w0], w1, anti[w1]))
        cycle = [w0, w1, w2, anti[w0], anti[w1], anti[w2]]
        if _verify_xw(g, p, q, cycle):
            return XWStructure(k=3, p=p, q=q, cycle=tuple(cycle))
        return None
    poles = [v for v in verts if g.degree(v) == n - 2]
    if len(poles) != 2 or g.has_edge(*poles):
        return None
    p, q = poles
    rim = [v for v in verts if v not in (p, q)]
    if any(g.degree(v) != 6 for v in rim):
        return None
    pole_set = {p, q}

    def near(w: int) -> list[int]:
        ring = g.neighbors(w) - pole_set
        if len(ring) != 4:
            return []
        return [u for u in ring if len(g.neighbors(u) & ring) == 2]

    start = rim[0]
    first = near(start)
    if len(first) != 2:
        return None
    cycle = [start, min(first)]
    while len(cycle) < len(rim):
        step = [u for u in near(cycle[-1]) if u != cycle[-2]]
        if len(step) != 1:
            return None
        cycle.append(step[0])
    if _verify_xw(g, p, q, cycle):
        return XWStructure(k=(n - 2) // 2, p=p, q=q, cycle=tuple(cycle))
    return None
