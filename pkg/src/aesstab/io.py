"""graph6 and plain edge-list serialization.

graph6 follows the usual bit packing: a size header N(n), then the upper
triangle read column by column (x(0,1), x(0,2), x(1,2), x(0,3), ...), six
bits per printable byte offset by 63.  An optional ``>>graph6<<`` prefix is
accepted on input.
"""
from __future__ import annotations

from pathlib import Path

from .errors import Graph6Error, InputError
from .graph import Graph, build_graph

HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 0:
        raise InputError("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise InputError(f"{n} vertices is too many for graph6")


def serialize_graph6(g: Graph) -> str:
    out = [_encode_n(g.n)]
    acc, nbits = 0, 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc, nbits = 0, 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Parse one graph6 string.  Errors carry the offending byte offset."""
    s = text.strip()
    base = 0
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        base = len(HEADER)
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside the graph6 range", base + k)

    def val(k: int) -> int:
        if k >= len(s):
            raise Graph6Error("truncated size header", base + k)
        return ord(s[k]) - 63

    if s[0] != "~":
        n, pos = val(0), 1
    elif len(s) > 1 and s[1] == "~":
        n = 0
        for k in range(2, 8):
            n = n << 6 | val(k)
        pos = 8
    else:
        n = 0
        for k in range(1, 4):
            n = n << 6 | val(k)
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = s[pos:]
    if len(payload) < need:
        raise Graph6Error(f"truncated payload: need {need} bytes, have {len(payload)}",
                          base + len(s))
    if len(payload) > need:
        raise Graph6Error("trailing bytes after payload", base + pos + need)
    edges = []
    bit = 0
    i, j = 0, 1
    for k in range(need):
        b = ord(payload[k]) - 63
        for shift in range(5, -1, -1):
            if bit == nbits:
                if b & ((1 << (shift + 1)) - 1):
                    raise Graph6Error("nonzero padding bits", base + pos + k)
                break
            if b >> shift & 1:
                edges.append((i, j))
            bit += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return build_graph(n, edges)


def serialize_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines of ``u v``; ``#`` starts a comment."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise InputError("empty edge-list input")
    try:
        header = [int(x) for x in rows[0]]
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise InputError(f"malformed edge list: {exc}") from None
    if len(header) != 2:
        raise InputError("edge-list header must be 'n m'")
    n, m = header
    if len(pairs) != m:
        raise InputError(f"edge-list header promises {m} edges, found {len(pairs)}")
    return build_graph(n, pairs)


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


def read_graphs(path: str | Path) -> list[Graph]:
    """Read a file holding either graph6 lines or one edge list.

    Lines starting with ``#`` (provenance lines) are skipped.
    """
    text = Path(path).read_text()
    lines = _content_lines(text)
    if not lines:
        raise InputError(f"{path}: no graph found")
    first = lines[0].split()
    if len(first) == 2 and all(tok.lstrip("-").isdigit() for tok in first):
        return [parse_edge_list(text)]
    return [parse_graph6(ln) for ln in lines]


def write_graph6(path: str | Path, graphs, provenance: str | None = None) -> None:
    lines = [serialize_graph6(g) for g in graphs]
    if provenance:
        lines.append(f"# {provenance}")
    Path(path).write_text("\n".join(lines) + "\n")
