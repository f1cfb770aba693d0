"""graph6 encoding (McKay's format) for :class:`~treesym.graph.Graph`.

Bit order is the upper triangle by columns: ``(0,1), (0,2), (1,2), (0,3), ...``.
Bits are packed six at a time, each group offset by 63.
"""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .graph import Graph

__all__ = ["Graph6Error", "graph6_encode", "graph6_decode", "read_graph6_lines"]

_HEADER = b">>graph6<<"
_MAX_N = 68719476735  # 2**36 - 1


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the byte index of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= _MAX_N:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError(f"graph6 cannot encode n={n}")


def graph6_encode(g: Graph) -> bytes:
    n = g.n
    nbits = n * (n - 1) // 2
    bits = bytearray(nbits + (-nbits) % 6)
    for i, j in g.edges:
        # (i, j) with i < j sits at j*(j-1)/2 + i
        bits[j * (j - 1) // 2 + i] = 1
    out = bytearray(_encode_n(n))
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k : k + 6]:
            v = (v << 1) | b
        out.append(v + 63)
    return bytes(out)


def _decode_n(data: bytes, start: int) -> tuple[int, int]:
    def sextet(pos: int) -> int:
        if pos >= len(data):
            raise Graph6Error("truncated length header", pos)
        c = data[pos]
        if not 63 <= c <= 126:
            raise Graph6Error(f"byte {c!r} outside graph6 range 63..126", pos)
        return c - 63

    first = sextet(start)
    if first < 63:
        return first, start + 1
    if start + 1 < len(data) and data[start + 1] == 126:
        n = 0
        for k in range(6):
            n = (n << 6) | sextet(start + 2 + k)
        if n <= 258047:
            raise Graph6Error(f"8-byte length header used for small n={n}", start)
        return n, start + 8
    n = 0
    for k in range(3):
        n = (n << 6) | sextet(start + 1 + k)
    if n <= 62:
        raise Graph6Error(f"4-byte length header used for small n={n}", start)
    return n, start + 4


def graph6_decode(s: bytes | str) -> Graph:
    """Parse one graph6 record; an optional ``>>graph6<<`` header and trailing newline are accepted."""
    data = s.encode("ascii") if isinstance(s, str) else bytes(s)
    data = data.rstrip(b"\r\n")
    start = len(_HEADER) if data.startswith(_HEADER) else 0
    if start >= len(data):
        raise Graph6Error("empty graph6 record", start)
    n, pos = _decode_n(data, start)
    if n == 0:
        raise Graph6Error("graph with zero vertices is not supported", start)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos != nbytes:
        raise Graph6Error(
            f"expected {nbytes} edge bytes for n={n}, found {len(data) - pos}",
            min(pos + nbytes, len(data)),
        )
    edges = []
    k = 0
    i, j = 0, 1
    for off in range(pos, pos + nbytes):
        c = data[off]
        if not 63 <= c <= 126:
            raise Graph6Error(f"byte {c!r} outside graph6 range 63..126", off)
        v = c - 63
        for shift in range(5, -1, -1):
            bit = (v >> shift) & 1
            if k < nbits:
                if bit:
                    edges.append((i, j))
                i += 1
                if i == j:
                    i, j = 0, j + 1
            elif bit:
                raise Graph6Error("nonzero padding bit", off)
            k += 1
    return Graph(n, frozenset(edges))


def read_graph6_lines(stream: TextIO | Iterable[str]) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, record)`` for each non-blank line, lazily."""
    for lineno, line in enumerate(stream, start=1):
        rec = line.strip()
        if rec:
            yield lineno, rec
