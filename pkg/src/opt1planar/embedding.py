"""1-planar embeddings: rotation systems with paired crossing edges.

An embedding of an optimal 1-planar graph is stored as a cyclic neighbor
order per vertex plus an involution pairing the crossing (red) edges.
Edges not in the pairing are planar (black).  The black subgraph of a
valid embedding is a 3-connected quadrangulation and every black face
holds one crossing pair drawn as a kite; verify_embedding checks exactly
that, clause by clause.

The two expansion surgeries below are the inverses of the engine's
reductions.  They serve both the generator (growing random instances)
and reconstruct (replaying a reduction trace backwards to recover an
embedding of the input).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .graph import DynamicGraph, StructuralFault, edge_key
from .records import CREdit, EditRecord, SREdit

EdgeKey = tuple[int, int]


class EmbeddedGraph:
    """A DynamicGraph together with rotations and crossing pairs.

    rot[v] lists the neighbors of v in cyclic drawing order; crossings
    maps each red edge key to its crossing partner (in both directions).
    """

    __slots__ = ("graph", "rot", "crossings")

    def __init__(
        self,
        graph: DynamicGraph,
        rot: dict[int, list[int]] | None = None,
        crossings: dict[EdgeKey, EdgeKey] | None = None,
    ) -> None:
        self.graph = graph
        self.rot = rot if rot is not None else {}
        self.crossings = crossings if crossings is not None else {}

    def is_red(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.crossings

    def color(self, u: int, v: int) -> str:
        return "red" if self.is_red(u, v) else "black"

    def copy(self) -> "EmbeddedGraph":
        return EmbeddedGraph(
            self.graph.copy(),
            {v: list(r) for v, r in self.rot.items()},
            dict(self.crossings),
        )

    def pair(self, e: EdgeKey, f: EdgeKey) -> None:
        self.crossings[e] = f
        self.crossings[f] = e

    def unpair(self, e: EdgeKey) -> EdgeKey:
        f = self.crossings.pop(e)
        del self.crossings[f]
        return f


# -- face traversal ---------------------------------------------------------


def face_orbits(rot_map: dict[int, list[int]]) -> list[list[int]]:
    """All faces of a rotation system, one vertex list per face.

    The successor of the directed edge (u, v) is (v, w) with w following
    u in the rotation at v; each directed edge lies on exactly one face.
    """
    pos = {v: {w: i for i, w in enumerate(nbrs)} for v, nbrs in rot_map.items()}
    seen: set[tuple[int, int]] = set()
    faces: list[list[int]] = []
    for v0, nbrs in rot_map.items():
        for w0 in nbrs:
            if (v0, w0) in seen:
                continue
            face: list[int] = []
            u, v = v0, w0
            while (u, v) not in seen:
                seen.add((u, v))
                face.append(u)
                nxt = rot_map[v]
                u, v = v, nxt[(pos[v][u] + 1) % len(nxt)]
            faces.append(face)
    return faces


def skeleton_rotation(emb: EmbeddedGraph) -> dict[int, list[int]]:
    """Rotation system restricted to the planar (black) edges."""
    cr = emb.crossings
    out: dict[int, list[int]] = {}
    for v, nbrs in emb.rot.items():
        out[v] = [w for w in nbrs if ((v, w) if v < w else (w, v)) not in cr]
    return out


def kite_corners(emb: EmbeddedGraph, e: EdgeKey) -> tuple[int, int, int, int]:
    """Cyclic corner order (w0, w1, w2, w3) of the kite crossed by red edge e.

    e = (w0, w2) and its partner is (w1, w3); w1 precedes w2 in the
    rotation at w0.  Raises StructuralFault if the pair is not drawn as
    a kite.
    """
    f = emb.crossings.get(e)
    if f is None:
        raise StructuralFault(f"edge {e} is not a crossing edge")
    w0, w2 = e
    r = emb.rot[w0]
    i = r.index(w2)
    w1, w3 = r[i - 1], r[(i + 1) % len(r)]
    if {w1, w3} != set(f):
        raise StructuralFault(f"crossing pair {e} x {f} is not drawn as a kite")
    return (w0, w1, w2, w3)


def separating_quad(emb: EmbeddedGraph) -> tuple[int, int, int, int] | None:
    """A skeleton 4-cycle that bounds no face, or None if all are facial.

    The corners of such a cycle form a 4-separator of the whole graph:
    a non-facial 4-cycle of the quadrangulation has vertices strictly
    inside and outside (an enclosed region without interior vertices
    would need a skeleton vertex of degree two), and crossing edges
    cannot bridge it because each one stays inside a single face.  So
    the graph is 5-connected exactly when this returns None.

    Opposite corners of a face are joined by a red diagonal, and a red
    edge lies in only one face.  Hence a vertex pair with two common
    skeleton neighbors and no red edge between them, or with three or
    more common skeleton neighbors, pins down a non-facial cycle.
    """
    skel = skeleton_rotation(emb)
    common: dict[EdgeKey, list[int]] = {}
    for v, nbrs in skel.items():
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                common.setdefault(edge_key(nbrs[i], nbrs[j]), []).append(v)
    for (u, w), mids in common.items():
        if len(mids) < 2:
            continue
        host = emb.crossings.get((u, w))
        if host is None:
            return (u, mids[0], w, mids[1])
        if len(mids) > 2:
            # one mid is not a corner of the hosting face, so pairing it
            # with any other mid closes a cycle distinct from that face
            extra = next(m for m in mids if m not in host)
            other = next(m for m in mids if m != extra)
            return (u, extra, w, other)
    return None


# -- verification -----------------------------------------------------------


@dataclass
class VerificationReport:
    ok: bool
    failures: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _planarize(emb: EmbeddedGraph) -> dict[int, list[int]] | str:
    """Rotation system with every crossing replaced by a virtual vertex."""
    rot_map = {v: list(r) for v, r in emb.rot.items()}
    next_id = emb.graph.id_bound
    handled: set[EdgeKey] = set()
    plan: list[tuple[int, EdgeKey, EdgeKey]] = []
    for e, f in emb.crossings.items():
        if e in handled:
            continue
        handled.add(e)
        handled.add(f)
        try:
            kite_corners(emb, e)
            kite_corners(emb, f)  # consistency from both endpoints' rotations
        except StructuralFault as exc:
            return str(exc)
        plan.append((next_id, e, f))
        next_id += 1
    for w, e, f in plan:
        a, b = e
        c, d = f
        ra = emb.rot[a]
        i = ra.index(b)
        x, y = ra[i - 1], ra[(i + 1) % len(ra)]
        rot_map[w] = [a, x, b, y]
        for u, v in ((a, b), (b, a), (c, d), (d, c)):
            rm = rot_map[u]
            rm[rm.index(v)] = w
    return rot_map


def verify_embedding(g: DynamicGraph, emb: EmbeddedGraph) -> VerificationReport:
    """Check the five properties of an optimal 1-planar embedding.

    (a) the planarization is connected and satisfies Euler's formula,
    (b) every face of the black skeleton is a quadrilateral,
    (c) each skeleton face holds exactly one crossing pair as a kite,
    (d) the skeleton is bipartite,
    (e) black and red edges alternate around every vertex.
    """
    failures: list[str] = []
    # structural sanity before the clauses mean anything
    alive = set(g.vertices())
    if set(emb.rot) != alive:
        return VerificationReport(False, ["rotation vertex set differs from graph"])
    for v in alive:
        if sorted(emb.rot[v]) != sorted(g.neighbors(v)):
            return VerificationReport(False, [f"rotation at {v} does not match adjacency"])
    for e, f in emb.crossings.items():
        if emb.crossings.get(f) != e or e == f:
            return VerificationReport(False, [f"crossing map is not an involution at {e}"])
        if not g.has_edge(*e):
            return VerificationReport(False, [f"crossing edge {e} missing from graph"])

    n_pairs = len(emb.crossings) // 2

    # (a) genus zero and connected after planarizing the crossings
    rot_map = _planarize(emb)
    if isinstance(rot_map, str):
        failures.append(f"(a) {rot_map}")
    else:
        n_faces = len(face_orbits(rot_map))
        v_cnt = len(rot_map)
        e_cnt = g.m + 2 * n_pairs
        if v_cnt - e_cnt + n_faces != 2:
            failures.append(
                f"(a) Euler count V-E+F = {v_cnt}-{e_cnt}+{n_faces} != 2"
            )
        stack = [next(iter(rot_map))] if rot_map else []
        seen = set(stack)
        while stack:
            for w in rot_map[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != v_cnt:
            failures.append("(a) planarization is disconnected")

    # (b) skeleton faces are quadrilaterals
    sk = skeleton_rotation(emb)
    sk_faces = face_orbits(sk)
    quads = [f for f in sk_faces if len(f) == 4 and len(set(f)) == 4]
    if len(quads) != len(sk_faces):
        failures.append(
            f"(b) {len(sk_faces) - len(quads)} skeleton faces are not quadrilaterals"
        )

    # (c) one kite per skeleton face, every pair used exactly once
    used: set[EdgeKey] = set()
    for q0, q1, q2, q3 in quads:
        d1, d2 = edge_key(q0, q2), edge_key(q1, q3)
        if emb.crossings.get(d1) != d2:
            failures.append(f"(c) face {(q0, q1, q2, q3)} lacks its crossing pair")
            break
        if d1 in used:
            failures.append(f"(c) crossing pair {d1} x {d2} claimed by two faces")
            break
        used.add(d1)
        used.add(d2)
    else:
        if len(quads) == len(sk_faces) and len(used) != len(emb.crossings):
            failures.append("(c) some crossing pairs lie in no skeleton face")

    # (d) skeleton bipartite
    color: dict[int, int] = {}
    for s in sk:
        if s in color:
            continue
        color[s] = 0
        bfs = [s]
        while bfs:
            u = bfs.pop()
            for w in sk[u]:
                if w not in color:
                    color[w] = color[u] ^ 1
                    bfs.append(w)
                elif color[w] == color[u]:
                    failures.append("(d) skeleton contains an odd cycle")
                    bfs = []
                    break
            else:
                continue
            break
        if any(f.startswith("(d)") for f in failures):
            break

    # (e) colors alternate around every vertex
    cr = emb.crossings
    for v in alive:
        nbrs = emb.rot[v]
        if len(nbrs) % 2:
            failures.append(f"(e) odd degree at {v}")
            break
        flags = [((v, w) if v < w else (w, v)) in cr for w in nbrs]
        if any(flags[i] == flags[i - 1] for i in range(len(flags))):
            failures.append(f"(e) colors do not alternate at {v}")
            break

    return VerificationReport(not failures, failures)


# -- expansion surgeries ----------------------------------------------------


def _new_vertex(g: DynamicGraph, want: int | None) -> int:
    if want is None:
        return g.add_vertex()
    g.restore_vertex(want)
    return want


def expand_cr(
    emb: EmbeddedGraph,
    red: EdgeKey,
    new_ids: tuple[int, int, int, int] | None = None,
) -> CREdit:
    """Replace the kite crossed by `red` with a crossed cube (in place).

    The four new inner vertices take over the face: inner cycle plus
    diagonals, a pillar to each corner and a kite in each of the five new
    skeleton faces.  Inverse of the engine's crossed-cube reduction;
    grows n by 4 and m by 16.
    """
    g = emb.graph
    w = kite_corners(emb, red)
    partner = emb.crossings[red]
    u = tuple(_new_vertex(g, None if new_ids is None else new_ids[i]) for i in range(4))

    emb.unpair(red)
    g.remove_edge(*red)
    g.remove_edge(*partner)
    for i in range(4):
        g.add_edge(u[i], u[(i + 1) % 4])
        g.add_edge(u[i], w[i])
        g.add_edge(u[i], w[(i + 1) % 4])
        g.add_edge(u[i], w[i - 1])
    g.add_edge(u[0], u[2])
    g.add_edge(u[1], u[3])

    emb.pair(edge_key(u[0], u[2]), edge_key(u[1], u[3]))
    for i in range(4):
        emb.pair(edge_key(w[i], u[(i + 1) % 4]), edge_key(u[i], w[(i + 1) % 4]))

    rot = emb.rot
    for i in range(4):
        r = rot[w[i]]
        j = r.index(w[(i + 2) % 4])
        # the removed diagonal sat between w[i+1] and w[i-1]; the new
        # entries keep w[i+1] on the same side
        if r[j - 1] == w[(i + 1) % 4]:
            r[j : j + 1] = [u[(i + 1) % 4], u[i], u[(i - 1) % 4]]
        else:
            r[j : j + 1] = [u[(i - 1) % 4], u[i], u[(i + 1) % 4]]
        rot[u[i]] = [
            u[(i + 1) % 4],
            u[(i + 2) % 4],
            u[(i - 1) % 4],
            w[i - 1],
            w[i],
            w[(i + 1) % 4],
        ]
    return CREdit(inner=u, outer=w)


def expand_sr(
    emb: EmbeddedGraph,
    v: int,
    pos: int,
    new_id: int | None = None,
) -> SREdit:
    """Split a new degree-6 vertex off `v` (in place).

    pos indexes a planar entry m in the rotation at v; the five entries
    [a, r2, m, r6, b] centered there define the site.  The new vertex
    takes over the middle three edges, v keeps a and b, and the face
    (v, a, x, b) gains a kite.  Inverse of the crossed-star reduction;
    requires deg(v) >= 8 and the edge (a, b) absent.
    """
    g = emb.graph
    rv = emb.rot[v]
    d = len(rv)
    if d < 8:
        raise StructuralFault(f"vertex {v} has degree {d} < 8, cannot split")
    m_ = rv[pos]
    if emb.is_red(v, m_):
        raise StructuralFault(f"rotation entry {m_} at {v} is not planar")
    a, r2 = rv[pos - 2], rv[pos - 1]
    r6, b = rv[(pos + 1) % d], rv[(pos + 2) % d]
    if g.has_edge(a, b):
        raise StructuralFault(f"splitting {v} would duplicate edge ({a}, {b})")

    x = _new_vertex(g, new_id)
    for r in (r2, m_, r6):
        g.remove_edge(v, r)
        g.add_edge(x, r)
    for r in (r2, r6):
        old = edge_key(v, r)
        other = emb.unpair(old)
        emb.pair(edge_key(x, r), other)
    g.add_edge(x, a)
    g.add_edge(x, b)
    g.add_edge(x, v)
    g.add_edge(a, b)
    emb.pair(edge_key(x, v), edge_key(a, b))

    rot = emb.rot
    # v: [.., a, r2, m, r6, b, ..] -> [.., a, x, b, ..]
    if pos >= 2 and pos + 2 < d:
        rot[v] = rv[: pos - 1] + [x] + rv[pos + 2 :]
    else:
        keep = [rv[(pos + 2 + t) % d] for t in range(d - 3)]  # b .. a inclusive
        rot[v] = keep + [x]
    rot[x] = [r6, b, v, a, r2, m_]
    for r in (r2, m_, r6):
        rr = rot[r]
        rr[rr.index(v)] = x
    for end, far in ((a, b), (b, a)):
        re_ = rot[end]
        i = re_.index(v)
        if re_[(i + 1) % len(re_)] == m_:
            re_[i + 1 : i + 1] = [far, x]
        elif re_[i - 1] == m_:
            re_[i:i] = [x, far]
        else:
            raise StructuralFault(f"site at {v} is not two consecutive kites")
    return SREdit(x=x, target=v, a=a, b=b, others=(r2, m_, r6))


# -- trace replay -----------------------------------------------------------


def _replay_cr(emb: EmbeddedGraph, rec: CREdit) -> None:
    d1, d2 = rec.diagonals
    d1, d2 = edge_key(*d1), edge_key(*d2)
    have = kite_corners(emb, d1)
    want = rec.outer
    for shift in range(4):
        for flip in (1, -1):
            perm = [want[(shift + flip * t) % 4] for t in range(4)]
            if list(have) == perm:
                ids = tuple(rec.inner[(shift + flip * t) % 4] for t in range(4))
                expand_cr(emb, d1, new_ids=ids)
                return
    raise StructuralFault(f"kite {have} does not match recorded corners {want}")


def _replay_sr(emb: EmbeddedGraph, rec: SREdit) -> None:
    rv = emb.rot[rec.target]
    d = len(rv)
    expect = set(rec.others)
    for i, w in enumerate(rv):
        if w == rec.a and rv[(i + 4) % d] == rec.b:
            arc = {rv[(i + 1) % d], rv[(i + 2) % d], rv[(i + 3) % d]}
            if arc == expect:
                expand_sr(emb, rec.target, (i + 2) % d, new_id=rec.x)
                return
        if w == rec.b and rv[(i + 4) % d] == rec.a:
            arc = {rv[(i + 1) % d], rv[(i + 2) % d], rv[(i + 3) % d]}
            if arc == expect:
                expand_sr(emb, rec.target, (i + 2) % d, new_id=rec.x)
                return
    raise StructuralFault(
        f"rotation at {rec.target} holds no arc matching the recorded split"
    )


def _xw_drawings(tg: DynamicGraph, xws) -> Iterator[tuple[int, int, list[int]]]:
    """Parameter sets for every inequivalent drawing of an extended wheel.

    Wheels are the only members drawn in more than one way: the rim
    chords can cross either pole's spokes (two drawings), and on 8
    vertices any of the four antipodal pairs can serve as poles besides.
    The detected parameters come first so the common case stays cheap.
    """
    yield xws.p, xws.q, list(xws.cycle)
    yield xws.q, xws.p, list(xws.cycle)
    if xws.k > 3:
        return
    verts = sorted(tg.vertices())
    anti = {
        v: next(w for w in verts if w != v and not tg.has_edge(v, w)) for v in verts
    }
    for p in verts:
        q = anti[p]
        rest = [v for v in verts if v not in (p, q)]
        w0 = rest[0]
        others = [v for v in rest[1:] if v != anti[w0]]
        for x in others:
            for y in others:
                if y in (x, anti[x]):
                    continue
                yield p, q, [w0, x, y, anti[w0], anti[x], anti[y]]


def reconstruct(
    trace: list[EditRecord],
    k: int,
    terminal: tuple[DynamicGraph, "XWStructure"] | None = None,
) -> EmbeddedGraph:
    """Replay a reduction trace backwards from the terminal extended wheel.

    With no terminal given, the trace must end in the canonical labeling
    of make_xw(k); the engine's RecognitionResult carries the detected
    terminal structure for the general case.  Returns an embedding whose
    underlying graph equals the engine's input.

    Every intermediate graph has a unique drawing, so the only choice to
    make is the drawing of the terminal wheel itself; the first recorded
    edit arbitrates, and we simply retry the replay per drawing.
    """
    if terminal is None:
        from .rules import detect_xw, make_xw

        tg = make_xw(k)[0]
        xws = detect_xw(tg)
    else:
        tg, xws = terminal
        if xws.k != k:
            raise ValueError(f"terminal structure has k={xws.k}, expected {k}")
    last: StructuralFault | None = None
    for p, q, cycle in _xw_drawings(tg, xws):
        g = tg.copy()
        emb = xw_embedding(g, p, q, cycle)
        try:
            for rec in reversed(trace):
                if isinstance(rec, CREdit):
                    _replay_cr(emb, rec)
                else:
                    _replay_sr(emb, rec)
            return emb
        except StructuralFault as ex:
            last = ex
    raise last if last is not None else StructuralFault("empty drawing candidate list")


# -- extended wheel embedding ------------------------------------------------


def xw_embedding(g: DynamicGraph, p: int, q: int, cycle: list[int]) -> EmbeddedGraph:
    """Canonical embedding of an extended wheel already present in g.

    cycle lists the degree-6 rim in cyclic order; p is drawn inside the
    rim, q outside.  Spokes from p to odd rim positions are planar, as
    are spokes from q to even positions; every rim chord crosses the
    non-planar spoke of the vertex it skips.
    """
    t = len(cycle)
    rot: dict[int, list[int]] = {p: list(cycle), q: list(reversed(cycle))}
    crossings: dict[EdgeKey, EdgeKey] = {}
    for j, vj in enumerate(cycle):
        nxt, prv = cycle[(j + 1) % t], cycle[j - 1]
        nx2, pv2 = cycle[(j + 2) % t], cycle[j - 2]
        if j % 2:
            rot[vj] = [nxt, nx2, p, pv2, prv, q]
        else:
            rot[vj] = [nxt, p, prv, pv2, q, nx2]
        pole = q if j % 2 == 0 else p
        e = edge_key(pole, cycle[(j + 1) % t])
        f = edge_key(vj, nx2)
        crossings[e] = f
        crossings[f] = e
    return EmbeddedGraph(g, rot, crossings)
