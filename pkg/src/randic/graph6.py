"""graph6 encoding and decoding.

Bit-exact with McKay's format: ``N(n)`` is one byte ``n + 63`` for
``n <= 62``, ``~`` plus three 6-bit bytes for ``n <= 258047`` and ``~~``
plus six bytes beyond that.  The upper triangle is written column by
column (``x(0,1), x(0,2), x(1,2), x(0,3), ...``), zero-padded to a multiple
of six bits.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from typing import TextIO

from .graph import Graph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    pass


def _encode_size(n: int) -> bytes:
    if n < 0:
        raise Graph6Error("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise Graph6Error(f"n={n} too large for graph6")


def encode(g: Graph) -> str:
    n = g.n
    adj = g.adjacency()
    out = bytearray(_encode_size(n))
    acc = 0
    nbits = 0
    for j in range(1, n):
        nbrs = adj[j]
        for i in range(j):
            acc = (acc << 1) | (i in nbrs)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def _decode_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise Graph6Error("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte size prefix")
        groups, start = data[2:8], 8
    else:
        if len(data) < 4:
            raise Graph6Error("truncated 4-byte size prefix")
        groups, start = data[1:4], 4
    n = 0
    for c in groups:
        if not 63 <= c <= 126:
            raise Graph6Error(f"invalid size byte {c}")
        n = (n << 6) | (c - 63)
    return n, start


def decode(text: str | bytes) -> Graph:
    if isinstance(text, str):
        try:
            data = text.strip().encode("ascii")
        except UnicodeEncodeError as exc:
            raise Graph6Error("graph6 must be ASCII") from exc
    else:
        data = text.strip()
    if data.startswith(HEADER.encode()):
        data = data[len(HEADER):]
    if data.startswith(b":") or data.startswith(b"&"):
        raise Graph6Error("sparse6/digraph6 input is not supported")
    n, pos = _decode_size(data)
    body = data[pos:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}")
    for c in body:
        if not 63 <= c <= 126:
            raise Graph6Error(f"invalid graph6 byte {c!r}")
    edges = []
    q = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[q // 6] - 63
            if byte >> (5 - q % 6) & 1:
                edges.append((i, j))
            q += 1
    if need and (body[-1] - 63) & ((1 << (need * 6 - nbits)) - 1):
        raise Graph6Error("non-zero padding bits")
    return Graph.from_edges(n, edges)


def read_lines(lines: Iterable[str]) -> Iterator[tuple[int, Graph | Graph6Error]]:
    """Decode a newline-separated graph6 stream.

    Yields ``(line_number, graph)`` or ``(line_number, error)`` so a caller can
    report bad lines and keep going.  Blank lines are skipped.
    """
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if not s:
            continue
        try:
            yield lineno, decode(s)
        except Graph6Error as exc:
            yield lineno, exc


def write_lines(graphs: Iterable[Graph], fh: TextIO) -> None:
    for g in graphs:
        fh.write(encode(g))
        fh.write("\n")
