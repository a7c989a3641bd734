"""Canonical forms for small graphs.

Individualization plus color refinement, returning the lexicographically
smallest adjacency encoding over all refinement-respecting orderings.
Exponential in the worst case but instant at the sizes the exhaustive
enumerator handles; for anything bigger use a real canonical labeling
package.
"""

from __future__ import annotations

from .graph import DynamicGraph


def _refine(rows: list[int], colors: list[int]) -> list[int]:
    n = len(rows)
    while True:
        keys = []
        for v in range(n):
            nb = rows[v]
            seen: dict[int, int] = {}
            w = 0
            while nb:
                if nb & 1:
                    c = colors[w]
                    seen[c] = seen.get(c, 0) + 1
                nb >>= 1
                w += 1
            keys.append((colors[v], tuple(sorted(seen.items()))))
        order = {k: i for i, k in enumerate(sorted(set(keys)))}
        nxt = [order[k] for k in keys]
        if nxt == colors:
            return colors
        colors = nxt


def _encode(rows: list[int], perm: list[int]) -> int:
    pos = {v: i for i, v in enumerate(perm)}
    out = 0
    n = len(perm)
    for i in range(n):
        ri = rows[perm[i]]
        for j in range(i + 1, n):
            out = (out << 1) | (ri >> perm[j] & 1)
    return out


def canonical_form(g: DynamicGraph) -> bytes:
    """Isomorphism-invariant certificate of g."""
    verts = sorted(g.vertices())
    n = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    rows = [0] * n
    for v in verts:
        for w in g.neighbors(v):
            rows[idx[v]] |= 1 << idx[w]
    best: int | None = None

    def search(colors: list[int]) -> None:
        nonlocal best
        colors = _refine(rows, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            perm = sorted(range(n), key=lambda v: colors[v])
            code = _encode(rows, perm)
            if best is None or code < best:
                best = code
            return
        for v in target:
            split = [c * 2 + 1 for c in colors]
            split[v] -= 1
            search(split)

    if n:
        search([0] * n)
    width = (n * (n - 1) // 2 + 7) // 8
    body = (best or 0).to_bytes(width, "big") if width else b""
    return n.to_bytes(2, "big") + body
