"""Instance generation: random members, exhaustive small classes, mutants.

Random members grow from an extended wheel by running the two reductions
backwards at randomly chosen sites, so every output comes with a valid
embedding by construction.  The exhaustive enumerator applies the same
expansions breadth-first from all wheel seeds and deduplicates by
canonical form, which is complete because every member reduces to a
wheel and reductions are exactly inverse to these expansions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .canon import canonical_form
from .embedding import EmbeddedGraph, expand_cr, expand_sr
from .graph import DynamicGraph, edge_key
from .rules import make_xw

EdgeKey = tuple[int, int]


@dataclass
class GeneratedGraph:
    """A generated member plus how it was built."""

    graph: DynamicGraph
    embedding: EmbeddedGraph
    seed: int
    base_k: int
    sr_steps: int
    cr_steps: int

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def used_cr(self) -> bool:
        return self.cr_steps > 0


class GenerationError(RuntimeError):
    """No admissible expansion site was found."""


def _random_cr(emb: EmbeddedGraph, rng: random.Random, pool: list[EdgeKey]) -> None:
    while pool:
        i = rng.randrange(len(pool))
        e = pool[i]
        if e not in emb.crossings:
            pool[i] = pool[-1]
            pool.pop()
            continue
        rec = expand_cr(emb, e)
        u, w = rec.inner, rec.outer
        pool.append(edge_key(u[0], u[2]))
        for i4 in range(4):
            pool.append(edge_key(w[i4], u[(i4 + 1) % 4]))
        return
    raise GenerationError("no crossing pair left to expand")


def _random_sr(emb: EmbeddedGraph, rng: random.Random, big: list[int]) -> None:
    g = emb.graph
    # random attempts first, then an exhaustive sweep before giving up
    for _ in range(64):
        if not big:
            break
        i = rng.randrange(len(big))
        v = big[i]
        if not g.is_alive(v) or g.degree(v) < 8:
            big[i] = big[-1]
            big.pop()
            continue
        rv = emb.rot[v]
        d = len(rv)
        pos = rng.randrange(d)
        if emb.is_red(v, rv[pos]):
            pos = (pos + 1) % d
        if not g.has_edge(rv[pos - 2], rv[(pos + 2) % d]):
            _do_sr(emb, v, pos, big)
            return
    for v in sorted(big):
        if not g.is_alive(v) or g.degree(v) < 8:
            continue
        rv = emb.rot[v]
        d = len(rv)
        for pos in range(d):
            if emb.is_red(v, rv[pos]):
                continue
            if not g.has_edge(rv[pos - 2], rv[(pos + 2) % d]):
                _do_sr(emb, v, pos, big)
                return
    raise GenerationError("no admissible split site")


def _do_sr(emb: EmbeddedGraph, v: int, pos: int, big: list[int]) -> None:
    rec = expand_sr(emb, v, pos)
    g = emb.graph
    for w in (rec.a, rec.b):
        if g.degree(w) >= 8:
            big.append(w)


def random_optimal(n: int, seed: int = 0, prefer: str = "cr") -> GeneratedGraph:
    """A pseudorandom n-vertex member of the class, deterministic per seed.

    prefer="cr" grows by splits first and spends the rest of the budget
    on crossed-cube insertions (4 vertices per step, fast at scale);
    prefer="sr" uses splits only.  Splits preserve 5-connectedness while
    every cube plants a separating 4-cycle.  Cubes go last precisely so
    those separators survive to the output: a later split at a corner
    could stretch the 4-cycle open again.  The used_cr tag is therefore
    a connectivity certificate, not just a construction note.
    """
    if n < 8 or n == 9:
        raise ValueError(f"no optimal 1-planar graph on {n} vertices exists")
    if prefer not in ("cr", "sr"):
        raise ValueError(f"unknown growth preference {prefer!r}")
    rng = random.Random(seed)
    feasible = []
    for k in range(3, (n - 2) // 2 + 1):
        rem = n - (2 * k + 2)
        if prefer == "sr":
            if k >= 4 or rem == 0:
                feasible.append(k)
        elif k >= 4 or rem % 4 == 0:
            # the smallest wheel offers no split site, so from there the
            # budget must be a whole number of cubes
            feasible.append(k)
    if not feasible:
        raise ValueError(f"no growth plan reaches {n} vertices with prefer={prefer!r}")
    k = rng.choice(feasible)
    rem = n - (2 * k + 2)
    cr_steps = rem // 4 if prefer == "cr" else 0
    sr_steps = rem - 4 * cr_steps
    g, emb = make_xw(k)
    big = [v for v in emb.rot if g.degree(v) >= 8]
    for _ in range(sr_steps):
        _random_sr(emb, rng, big)
    pool = sorted(emb.crossings)
    for _ in range(cr_steps):
        _random_cr(emb, rng, pool)
    assert g.n == n
    return GeneratedGraph(
        graph=g, embedding=emb, seed=seed, base_k=k,
        sr_steps=sr_steps, cr_steps=cr_steps,
    )


def mutate_2switch(g: DynamicGraph, seed: int = 0, attempts: int = 200) -> DynamicGraph:
    """Degree-preserving double edge swap; usually leaves the class.

    Picks two independent edges (a, b), (c, d) and rewires them to
    (a, c), (b, d).  Degrees and counts are untouched, so the result
    still passes the counting precheck and exercises the engines proper.
    """
    rng = random.Random(seed)
    edges = sorted(g.edges())
    for _ in range(attempts):
        (a, b), (c, d) = rng.sample(edges, 2)
        if rng.random() < 0.5:
            c, d = d, c
        if len({a, b, c, d}) != 4 or g.has_edge(a, c) or g.has_edge(b, d):
            continue
        out = g.copy()
        out.remove_edge(a, b)
        out.remove_edge(c, d)
        out.add_edge(a, c)
        out.add_edge(b, d)
        return out
    raise GenerationError(f"no 2-switch found in {attempts} attempts")


# -- exhaustive enumeration ---------------------------------------------------


def _children(emb: EmbeddedGraph, n_max: int):
    g = emb.graph
    if g.n + 1 <= n_max:
        for v in sorted(emb.rot):
            rv = emb.rot[v]
            d = len(rv)
            if d < 8:
                continue
            for pos in range(d):
                if emb.is_red(v, rv[pos]):
                    continue
                if g.has_edge(rv[pos - 2], rv[(pos + 2) % d]):
                    continue
                child = emb.copy()
                expand_sr(child, v, pos)
                yield child
    if g.n + 4 <= n_max:
        for e in sorted(emb.crossings):
            if e < emb.crossings[e]:
                child = emb.copy()
                expand_cr(child, e)
                yield child


def _skeleton_cert(emb: EmbeddedGraph) -> bytes:
    """Certificate of the planar (black) subgraph.

    The skeleton is a 3-connected quadrangulation, so it pins the whole
    embedded structure: rotations are unique by 3-connectivity and the
    crossing pairs are the face diagonals.  Deduplicating exploration
    states by skeleton rather than by the full graph matters, because
    two distinct skeletons can complete to isomorphic graphs while
    offering different expansion sites.
    """
    g = emb.graph
    sk = DynamicGraph()
    ids = {v: sk.add_vertex() for v in sorted(g.vertices())}
    for u, v in g.edges():
        if edge_key(u, v) not in emb.crossings:
            sk.add_edge(ids[u], ids[v])
    return canonical_form(sk)


def enumerate_classes(n: int) -> list[EmbeddedGraph]:
    """All members on exactly n vertices, one embedding per isomorphism class.

    Supported for n <= 14; larger levels get big quickly and deserve a
    smarter canonical form.  Levels 7 and 9 come out empty.
    """
    if n < 1 or n > 14:
        raise ValueError(f"exhaustive enumeration supports 1 <= n <= 14, got {n}")
    states: dict[int, dict[bytes, EmbeddedGraph]] = {s: {} for s in range(8, 15)}
    for k in range(3, (n - 2) // 2 + 1):
        g, emb = make_xw(k)
        if g.n <= n:
            states[g.n][_skeleton_cert(emb)] = emb
    for s in range(8, n):
        for emb in list(states[s].values()):
            for child in _children(emb, n):
                states[child.graph.n].setdefault(_skeleton_cert(child), child)
    classes: dict[bytes, EmbeddedGraph] = {}
    for emb in states.get(n, {}).values():
        classes.setdefault(canonical_form(emb.graph), emb)
    return list(classes.values())
