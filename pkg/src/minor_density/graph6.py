"""graph6 encoding for graphs with at most 32 vertices."""

from __future__ import annotations

from .graph import MAX_VERTICES, GraphError, SimpleGraph

HEADER = ">>graph6<<"


def encode_graph6(g: SimpleGraph) -> str:
    out = [chr(63 + g.n)]
    acc = nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def decode_graph6(text: str) -> SimpleGraph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise GraphError("empty graph6 string")
    codes = [ord(ch) - 63 for ch in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise GraphError(f"invalid graph6 character in {text!r}")
    n = codes[0]
    if n == 63:
        raise GraphError(f"graph6 size overflow: more than {MAX_VERTICES} vertices")
    if n == 0 or n > MAX_VERTICES:
        raise GraphError(f"graph6 vertex count {n} outside 1..{MAX_VERTICES}")
    pairs = n * (n - 1) // 2
    need = (pairs + 5) // 6
    body = codes[1:]
    if len(body) != need:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {need}")
    if pairs % 6 and body[-1] & ((1 << (6 - pairs % 6)) - 1):
        raise GraphError("graph6 padding bits must be zero")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return SimpleGraph.from_edges(n, edges)
