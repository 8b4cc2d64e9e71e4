"""Canonical labelling of digraphs by individualisation-refinement.

The search tree is built from an isomorphism-invariant initial colouring
(degrees and distance profiles), 1-dimensional colour refinement and
individualisation of vertices in the first smallest non-singleton cell. The
canonical form is the lexicographically least adjacency code over all leaves.
Automorphisms discovered between equal leaves prune the tree in two ways:
subtrees equivalent to already explored ones are abandoned, and at each node
only one child per orbit of the known automorphisms fixing the current path
is expanded.
"""

from __future__ import annotations

from typing import Optional

from .digraph import UNREACHABLE, Digraph, distance_matrix


def _initial_cells(G: Digraph, in_adj) -> list[list[int]]:
    dist = distance_matrix(G)
    inv = []
    for v in range(G.n):
        out_prof = sorted(x for x in dist[v] if x != UNREACHABLE)
        in_prof = sorted(dist[u][v] for u in range(G.n) if dist[u][v] != UNREACHABLE)
        inv.append((len(G.out_adj[v]), len(in_adj[v]), tuple(out_prof), tuple(in_prof)))
    groups: dict = {}
    for v in range(G.n):
        groups.setdefault(inv[v], []).append(v)
    return [groups[key] for key in sorted(groups)]


def _refine(cells: list[list[int]], out_adj, in_adj, n: int) -> list[list[int]]:
    while True:
        color = [0] * n
        for i, cell in enumerate(cells):
            for v in cell:
                color[v] = i
        new_cells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            split: dict = {}
            for v in cell:
                sig = (tuple(sorted(color[u] for u in out_adj[v])), tuple(sorted(color[u] for u in in_adj[v])))
                split.setdefault(sig, []).append(v)
            if len(split) == 1:
                new_cells.append(cell)
            else:
                changed = True
                new_cells.extend(split[s] for s in sorted(split))
        cells = new_cells
        if not changed:
            return cells


def _orbit_finder(gens: list[tuple[int, ...]], n: int):
    """Union-find over the orbits of the group generated by ``gens``."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return find


class _Canonizer:
    def __init__(self, G: Digraph):
        self.G = G
        self.n = G.n
        self.out_adj = G.out_adj
        ins = [[] for _ in range(G.n)]
        for u, v in G.arcs():
            ins[v].append(u)
        self.in_adj = ins
        self.first: Optional[tuple] = None  # (cert, order, path)
        self.best: Optional[tuple] = None
        self.gens: list[tuple[int, ...]] = []
        self.leaves = 0

    def _cert(self, order: list[int]) -> tuple[int, ...]:
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        code = []
        for v in order:
            m = 0
            for u in self.out_adj[v]:
                m |= 1 << pos[u]
            code.append(m)
        return tuple(code)

    def _automorphism(self, order_a, order_b) -> tuple[int, ...]:
        g = [0] * self.n
        for a, b in zip(order_a, order_b):
            g[a] = b
        return tuple(g)

    @staticmethod
    def _divergence(p: list[int], q: list[int]) -> int:
        i = 0
        while i < len(p) and i < len(q) and p[i] == q[i]:
            i += 1
        return i

    def run(self):
        cells = _refine(_initial_cells(self.G, self.in_adj), self.out_adj, self.in_adj, self.n)
        self._search(cells, [])
        return self.best

    def _search(self, cells: list[list[int]], path: list[int]) -> Optional[int]:
        if len(cells) == self.n:
            return self._leaf(cells, path)
        target = min((c for c in cells if len(c) > 1), key=len)
        ti = next(i for i, c in enumerate(cells) if c is target)
        explored: list[int] = []
        depth = len(path)
        for v in sorted(target):
            if explored:
                fixing = [g for g in self.gens if all(g[x] == x for x in path)]
                if fixing:
                    find = _orbit_finder(fixing, self.n)
                    if any(find(v) == find(e) for e in explored):
                        continue
            explored.append(v)
            rest = [u for u in target if u != v]
            child = cells[:ti] + [[v], rest] + cells[ti + 1:]
            child = _refine(child, self.out_adj, self.in_adj, self.n)
            jump = self._search(child, path + [v])
            if jump is not None and jump < depth:
                return jump
        return None

    def _leaf(self, cells, path) -> Optional[int]:
        self.leaves += 1
        order = [c[0] for c in cells]
        cert = self._cert(order)
        if self.first is None:
            self.first = self.best = (cert, order, list(path))
            return None
        for ref in (self.first, self.best):
            if cert == ref[0]:
                self.gens.append(self._automorphism(ref[1], order))
                return self._divergence(ref[2], path)
        if cert < self.best[0]:
            self.best = (cert, order, list(path))
        return None


def canonical_labeling(G: Digraph) -> list[int]:
    """Vertex order ``order`` such that relabelling ``order[i] -> i`` is canonical."""
    if G.n == 0:
        return []
    return list(_Canonizer(G).run()[1])


def canonical_digraph(G: Digraph) -> Digraph:
    order = canonical_labeling(G)
    perm = [0] * G.n
    for i, v in enumerate(order):
        perm[v] = i
    return G.relabel(perm)


def canonical_form(G: Digraph) -> bytes:
    """Byte string equal for two digraphs exactly when they are isomorphic."""
    width = max(1, (G.n + 7) // 8)
    out = bytearray(G.n.to_bytes(4, "big"))
    if G.n:
        for m in _Canonizer(G).run()[0]:
            out += m.to_bytes(width, "little")
    return bytes(out)


def automorphisms_found(G: Digraph) -> list[tuple[int, ...]]:
    """Automorphisms discovered while canonising ``G`` (generators, not the whole group)."""
    c = _Canonizer(G)
    if G.n:
        c.run()
    return c.gens
