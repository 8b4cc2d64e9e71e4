"""Simple digraphs: representation, arc-list I/O, degrees and BFS distances."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

UNREACHABLE = -1


class ArcListError(ValueError):
    """Base class for arc-list parse and validation errors."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedLine(ArcListError):
    pass


class IndexOutOfRange(ArcListError):
    pass


class DuplicateArc(ArcListError):
    pass


class LoopArc(ArcListError):
    pass


@dataclass(frozen=True)
class Digraph:
    """Immutable simple digraph on vertices ``0..n-1``.

    ``out_adj[v]`` is the sorted tuple of out-neighbours of ``v``. Loops and
    multiple arcs are rejected at construction.
    """

    n: int
    out_adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(self.out_adj) != self.n:
            raise ValueError(f"expected {self.n} out-lists, got {len(self.out_adj)}")
        normalised = []
        for u, nbrs in enumerate(self.out_adj):
            seen = set()
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise IndexOutOfRange(f"arc {u}->{v} leaves [0, {self.n})")
                if v == u:
                    raise LoopArc(f"loop at vertex {u}")
                if v in seen:
                    raise DuplicateArc(f"arc {u}->{v} repeated")
                seen.add(v)
            normalised.append(tuple(sorted(nbrs)))
        object.__setattr__(self, "out_adj", tuple(normalised))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        out: list[list[int]] = [[] for _ in range(n)]
        for u, v in arcs:
            if not (0 <= u < n):
                raise IndexOutOfRange(f"arc {u}->{v} leaves [0, {n})")
            out[u].append(v)
        return cls(n, tuple(tuple(x) for x in out))

    @classmethod
    def cycle(cls, n: int) -> "Digraph":
        """Directed cycle ``0 -> 1 -> ... -> n-1 -> 0``."""
        return cls.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete(cls, n: int) -> "Digraph":
        return cls.from_arcs(n, [(u, v) for u in range(n) for v in range(n) if u != v])

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.out_adj[u]]

    @property
    def arc_count(self) -> int:
        return sum(len(x) for x in self.out_adj)

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out_adj[u]

    def out_masks(self) -> list[int]:
        """Out-neighbourhoods as integer bitmasks."""
        masks = []
        for nbrs in self.out_adj:
            m = 0
            for v in nbrs:
                m |= 1 << v
            masks.append(m)
        return masks

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Image of the digraph under the vertex map ``v -> perm[v]``."""
        return Digraph.from_arcs(self.n, [(perm[u], perm[v]) for u, v in self.arcs()])

    def adjacency(self) -> list[list[int]]:
        rows = [[0] * self.n for _ in range(self.n)]
        for u, v in self.arcs():
            rows[u][v] = 1
        return rows


def parse_arc_list(text: str | IO[str]) -> Digraph:
    """Parse the arc-list format.

    The first non-comment line holds the vertex count; every following
    non-comment line is ``u v`` with 0-based indices. Blank lines and lines
    starting with ``#`` are skipped.
    """
    if not isinstance(text, str):
        text = text.read()
    n = None
    out: list[list[int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise MalformedLine(f"expected vertex count, got {line!r}", lineno)
            n = _parse_int(fields[0], lineno)
            if n < 0:
                raise MalformedLine("vertex count must be non-negative", lineno)
            out = [[] for _ in range(n)]
            continue
        if len(fields) != 2:
            raise MalformedLine(f"expected 'u v', got {line!r}", lineno)
        u, v = (_parse_int(f, lineno) for f in fields)
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"arc {u} {v} outside [0, {n})", lineno)
        if u == v:
            raise LoopArc(f"loop at vertex {u}", lineno)
        if (u, v) in seen:
            raise DuplicateArc(f"arc {u} {v} repeated", lineno)
        seen.add((u, v))
        out[u].append(v)
    if n is None:
        raise MalformedLine("missing vertex count")
    return Digraph(n, tuple(tuple(x) for x in out))


def _parse_int(field: str, lineno: int) -> int:
    try:
        return int(field, 10)
    except ValueError:
        raise MalformedLine(f"not a decimal integer: {field!r}", lineno) from None


def read_arc_list(path) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        return parse_arc_list(fh.read())


def serialize_arc_list(G: Digraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(str(G.n))
    lines.extend(f"{u} {v}" for u, v in G.arcs())
    return "\n".join(lines) + "\n"


def degrees(G: Digraph) -> tuple[list[int], list[int]]:
    """Return ``(out_degrees, in_degrees)``."""
    outd = [len(nbrs) for nbrs in G.out_adj]
    ind = [0] * G.n
    for nbrs in G.out_adj:
        for v in nbrs:
            ind[v] += 1
    return outd, ind


def is_out_regular(G: Digraph, d: int) -> bool:
    return all(len(nbrs) == d for nbrs in G.out_adj)


def is_diregular(G: Digraph, d: int) -> bool:
    outd, ind = degrees(G)
    return all(x == d for x in outd) and all(x == d for x in ind)


def distance_matrix(G: Digraph) -> list[list[int]]:
    """All-pairs directed distances by BFS; ``UNREACHABLE`` when no walk exists."""
    dist = []
    for s in range(G.n):
        row = [UNREACHABLE] * G.n
        row[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in G.out_adj[u]:
                if row[v] == UNREACHABLE:
                    row[v] = row[u] + 1
                    queue.append(v)
        dist.append(row)
    return dist
