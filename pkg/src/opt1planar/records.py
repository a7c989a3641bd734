"""Edit records written by the reduction engine.

A trace of these records is enough to replay a run forward on a bare
graph, or backward on an embedding (see embedding.reconstruct).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SREdit:
    """Contraction of a crossed-star center x into the target vertex.

    a and b are the two common neighbors of x and target (they lose the
    edge between them), others are the remaining three ring vertices,
    each of which gains an edge to target.
    """

    x: int
    target: int
    a: int
    b: int
    others: tuple[int, int, int]

    @property
    def removals(self) -> list[tuple[int, int]]:
        out = [(self.x, self.target), (self.x, self.a), (self.x, self.b)]
        out += [(self.x, r) for r in self.others]
        out.append((self.a, self.b))
        return out

    @property
    def insertions(self) -> list[tuple[int, int]]:
        return [(self.target, r) for r in self.others]


@dataclass(frozen=True)
class CREdit:
    """Removal of the inner cycle of a crossed cube.

    inner[i] is the inner vertex whose excluded outer vertex is
    outer[(i + 2) % 4]; outer is in cycle order.  The two diagonals of the
    outer cycle are inserted.
    """

    inner: tuple[int, int, int, int]
    outer: tuple[int, int, int, int]

    @property
    def diagonals(self) -> tuple[tuple[int, int], tuple[int, int]]:
        o = self.outer
        return ((o[0], o[2]), (o[1], o[3]))

    @property
    def removals(self) -> list[tuple[int, int]]:
        u, w = self.inner, self.outer
        out = []
        for i in range(4):
            out.append((u[i], u[(i + 1) % 4]))
            out += [(u[i], w[i]), (u[i], w[(i + 1) % 4]), (u[i], w[i - 1])]
        out += [(u[0], u[2]), (u[1], u[3])]
        return out

    @property
    def insertions(self) -> list[tuple[int, int]]:
        return list(self.diagonals)


EditRecord = SREdit | CREdit


def apply_record(g, rec: EditRecord) -> None:
    """Replay one edit record forward on a bare graph."""
    from .graph import mutate_edges

    mutate_edges(g, rec.removals, rec.insertions)
    if isinstance(rec, SREdit):
        g.remove_vertex(rec.x)
    else:
        for u in rec.inner:
            g.remove_vertex(u)
