"""Graph interchange: edgelist, graph6, DOT, and rotation dumps.

Edgelist is the working format: a ``n m`` header, then one ``u v`` pair
per line, 0-indexed.  graph6 exists for interop with the usual
enumeration tooling and follows the published byte layout exactly.  DOT
and the rotation dump are write-only views for eyeballing small cases.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from .graph import DynamicGraph, StructuralFault, edge_key

if TYPE_CHECKING:
    from .embedding import EmbeddedGraph
    from .rules import XWStructure


class ParseError(Exception):
    """Malformed input; carries the 1-based line of the offense."""

    def __init__(self, message: str, line: int = 0) -> None:
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


# -- edgelist ----------------------------------------------------------------


def parse_edgelist(text: str) -> DynamicGraph:
    lines = text.splitlines()
    header = 0
    while header < len(lines) and (not lines[header].strip()
                                   or lines[header].lstrip().startswith("#")):
        header += 1
    if header >= len(lines):
        raise ParseError("empty input", max(1, len(lines)))
    parts = lines[header].split()
    if len(parts) != 2:
        raise ParseError(f"expected 'n m' header, got {lines[header]!r}", header + 1)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"non-numeric header {lines[header]!r}", header + 1) from None
    if n < 0 or m < 0:
        raise ParseError("negative count in header", header + 1)
    g = DynamicGraph.from_edges(n, ())
    read = 0
    for off, raw in enumerate(lines[header + 1:], start=header + 2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {raw!r}", off)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-numeric endpoint in {raw!r}", off) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range 0..{n - 1}: {raw!r}", off)
        try:
            g.add_edge(u, v)
        except StructuralFault as exc:
            raise ParseError(str(exc), off) from None
        read += 1
    if read != m:
        raise ParseError(f"header promised {m} edges, found {read}", len(lines))
    return g


def serialize_edgelist(g: DynamicGraph) -> str:
    """Compacts alive ids to 0..n-1 in ascending order."""
    ids = {v: i for i, v in enumerate(sorted(g.vertices()))}
    out = [f"{g.n} {g.m}"]
    for u, v in sorted(g.edges()):
        out.append(f"{ids[u]} {ids[v]}")
    return "\n".join(out) + "\n"


# -- graph6 ------------------------------------------------------------------

_G6_MAX = (1 << 36) - 1


def _g6_size(n: int) -> bytes:
    if n < 0 or n > _G6_MAX:
        raise ValueError(f"graph6 cannot hold n={n}")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in range(30, -1, -6)])


def serialize_graph6(g: DynamicGraph) -> str:
    ids = {v: i for i, v in enumerate(sorted(g.vertices()))}
    n = g.n
    bits = bytearray((n * (n - 1) // 2 + 5) // 6)
    have = {(ids[u], ids[v]) for u, v in g.edges()}
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if (i, j) in have or (j, i) in have:
                bits[pos // 6] |= 1 << (5 - pos % 6)
            pos += 1
    return (_g6_size(n) + bytes(b + 63 for b in bits)).decode("ascii") + "\n"


def parse_graph6(text: str) -> DynamicGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    data = s.encode("ascii")
    if not data:
        raise ParseError("empty graph6 payload", 1)
    if any(b < 63 or b > 126 for b in data):
        raise ParseError("byte outside graph6 alphabet", 1)
    if data[0] != 126:
        n, body = data[0] - 63, data[1:]
    elif len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise ParseError("truncated graph6 size", 1)
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
    else:
        if len(data) < 8:
            raise ParseError("truncated graph6 size", 1)
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        body = data[8:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ParseError(f"graph6 body for n={n} needs {need} bytes, got {len(body)}", 1)
    g = DynamicGraph.from_edges(n, ())
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if (body[pos // 6] - 63) >> (5 - pos % 6) & 1:
                g.add_edge(i, j)
            pos += 1
    return g


# -- sniffing ----------------------------------------------------------------


def sniff(text: str) -> str:
    """'edgelist' or 'graph6'.  The edgelist header always has a space."""
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        return "edgelist" if " " in line else "graph6"
    raise ParseError("no content to sniff", 1)


def parse_auto(text: str) -> DynamicGraph:
    kind = sniff(text)
    return parse_edgelist(text) if kind == "edgelist" else parse_graph6(text)


# -- write-only views --------------------------------------------------------


def to_dot(g: DynamicGraph, emb: "EmbeddedGraph | None" = None,
           xw: "XWStructure | None" = None) -> str:
    """Red edges dashed red, poles doubled.  Meant for n small enough to read."""
    poles = {xw.p, xw.q} if xw is not None else set()
    out = ["graph {"]
    for v in sorted(g.vertices()):
        shape = " [shape=doublecircle]" if v in poles else ""
        out.append(f"  {v}{shape};")
    for u, v in sorted(g.edges()):
        red = emb is not None and edge_key(u, v) in emb.crossings
        attr = ' [color=red, style=dashed]' if red else ""
        out.append(f"  {u} -- {v}{attr};")
    out.append("}")
    return "\n".join(out) + "\n"


def dump_rotation(emb: "EmbeddedGraph") -> str:
    """One line per vertex: ``v: w1 w2 ...`` in rotation order, plus pairs."""
    out = []
    for v in sorted(emb.rot):
        out.append(f"{v}: " + " ".join(str(w) for w in emb.rot[v]))
    pairs = sorted({tuple(sorted((e, p))) for e, p in emb.crossings.items()})
    for e, p in pairs:
        out.append(f"x {e[0]} {e[1]} {p[0]} {p[1]}")
    return "\n".join(out) + "\n"
