"""graph6, edge-list and DOT serialization."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, TextIO

from .graph import Graph, GraphError, build

G6_MAX = 258047
G6_HEADER = b">>graph6<<"


class ParseError(ValueError):
    def __init__(self, message: str, offset: Optional[int] = None):
        super().__init__(f"{message} at offset {offset}" if offset is not None else message)
        self.offset = offset


@dataclass(frozen=True)
class GraphRecord:
    graph: Graph
    source: str
    line: int


def _decode_n(data: bytes, base: int) -> tuple[int, int]:
    if not data:
        raise ParseError("empty graph6 string", base)
    for i, b in enumerate(data[:4]):
        if not 63 <= b <= 126:
            raise ParseError(f"byte {b} outside 63..126", base + i)
    if data[0] < 126:
        return data[0] - 63, 1
    if len(data) < 4:
        raise ParseError("truncated size header", base + len(data))
    if data[1] == 126:
        raise ParseError("graphs above 258047 vertices are not supported", base + 1)
    return ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63), 4


def parse_graph6(line: bytes | str) -> Graph:
    """Decode one graph6 line (an optional ``>>graph6<<`` prefix is skipped)."""
    if isinstance(line, str):
        bad = next((i for i, ch in enumerate(line) if ord(ch) > 126), None)
        if bad is not None:
            raise ParseError(f"character {ord(line[bad])} outside 63..126", bad)
        line = line.encode("ascii")
    data = bytes(line)
    data = data.rstrip(b"\r\n")
    base = 0
    if data.startswith(G6_HEADER):
        data = data[len(G6_HEADER):]
        base = len(G6_HEADER)
    n, pos = _decode_n(data, base)
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = data[pos:]
    for i, b in enumerate(body):
        if not 63 <= b <= 126:
            raise ParseError(f"byte {b} outside 63..126", base + pos + i)
    if len(body) < nbytes:
        raise ParseError(f"truncated payload: expected {nbytes} bytes, got {len(body)}", base + pos + len(body))
    if len(body) > nbytes:
        raise ParseError("trailing bytes after payload", base + pos + nbytes)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if nbits % 6:
        last = body[-1] - 63
        if last & ((1 << (6 - nbits % 6)) - 1):
            raise ParseError("nonzero padding bits", base + pos + nbytes - 1)
    return build(n, edges)


def emit_graph6(g: Graph) -> bytes:
    n = g.n
    if n > G6_MAX:
        raise GraphError(f"graph6 supports at most {G6_MAX} vertices")
    if n <= 62:
        out = bytearray([63 + n])
    else:
        out = bytearray([126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)])
    acc, k = 0, 0
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | g.has_edge(i, j)
            k += 1
            if k == 6:
                out.append(63 + acc)
                acc, k = 0, 0
    if k:
        out.append(63 + (acc << (6 - k)))
    return bytes(out)


def parse_edgelist(text: str) -> Graph:
    """One graph: an ``n m`` header then ``m`` lines ``u v`` (0-indexed)."""
    graphs = list(iter_edgelists(text.splitlines()))
    if len(graphs) != 1:
        raise ParseError(f"expected one graph, found {len(graphs)}")
    return graphs[0][1]


def iter_edgelists(lines: Iterable[str]) -> Iterator[tuple[int, Graph]]:
    """Consecutive edge-list graphs; yields (header line number, graph)."""
    it = iter(enumerate(lines, 1))
    for lineno, raw in it:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            n, m = (int(x) for x in line.split())
        except ValueError:
            raise ParseError(f"line {lineno}: expected 'n m' header, got {raw!r}") from None
        if n < 0 or m < 0:
            raise ParseError(f"line {lineno}: negative size")
        edges = []
        while len(edges) < m:
            try:
                eno, eraw = next(it)
            except StopIteration:
                raise ParseError(f"line {lineno}: expected {m} edges, found {len(edges)}") from None
            eline = eraw.split("#", 1)[0].strip()
            if not eline:
                continue
            try:
                u, v = (int(x) for x in eline.split())
            except ValueError:
                raise ParseError(f"line {eno}: bad edge {eraw!r}") from None
            edges.append((u, v))
        try:
            g = build(n, edges)
        except GraphError as e:
            raise ParseError(f"line {lineno}: {e}") from None
        if g.m != m:
            raise ParseError(f"line {lineno}: duplicate edges")
        yield lineno, g


def emit_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


PALETTE = ("#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628",
           "#f781bf", "#999999", "#66c2a5", "#fc8d62", "#8da0cb")


def emit_dot(g: Graph, coloring: Optional[dict[int, int]] = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        if coloring is not None:
            c = coloring[v]
            fill = PALETTE[c] if c < len(PALETTE) else f"/set312/{c % 12 + 1}"
            lines.append(f'  {v} [style=filled, fillcolor="{fill}", label="{v}:{c}"];')
        else:
            lines.append(f"  {v};")
    lines += [f"  {u} -- {v};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_graphs(stream: TextIO, fmt: str = "g6", source: str = "-") -> Iterator[GraphRecord]:
    """Stream graphs from ``stream``, one record at a time."""
    if fmt == "g6":
        for lineno, raw in enumerate(stream, 1):
            line = raw.strip()
            if not line:
                continue
            try:
                g = parse_graph6(line)
            except ParseError as e:
                raise ParseError(f"{source}:{lineno}: {e}") from None
            yield GraphRecord(g, source, lineno)
    elif fmt == "edges":
        for lineno, g in iter_edgelists(stream):
            yield GraphRecord(g, source, lineno)
    else:
        raise ValueError(f"unknown format {fmt!r}")


def write_graph(g: Graph, fmt: str = "g6") -> str:
    if fmt == "g6":
        return emit_graph6(g).decode("ascii") + "\n"
    if fmt == "edges":
        return emit_edgelist(g)
    raise ValueError(f"unknown format {fmt!r}")
