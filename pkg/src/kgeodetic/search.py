"""Exhaustive generation of d-out-regular k-geodetic digraphs of a given order.

The generator backtracks over out-neighbourhoods, vertex by vertex in index
order, adding one arc at a time. Symmetry is broken up front by fixing the
depth-``k`` Moore tree of vertex 0 in breadth-first (heap) numbering: vertex
``i`` of depth below ``k`` has children ``d*i + 1 .. d*i + d``. Any
d-out-regular k-geodetic digraph has such a labelling, because the tree's
vertices are all distinct.

Remaining symmetry handled during the search:

* vertices outside the tree that have not been touched by any arc are
  interchangeable, so only the least of them may receive the next arc;
* automorphisms of the fixed tree that fix every vertex assigned so far
  (and the vertex being assigned) map partial assignments onto equivalent
  ones; an out-neighbourhood is kept only if it is the least in its orbit.

Isomorphs among completed digraphs are removed with :func:`canonical_form`.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from pathlib import Path
from typing import Optional

from .canon import canonical_digraph, canonical_form
from .digraph import Digraph, is_diregular, is_out_regular, serialize_arc_list
from .geodecity import is_k_geodetic, moore_bound
from .report import CertificateReport

MAX_VERIFY_ORDER = 24
MAX_TREE_GROUP = 50_000


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, result: "SearchResult"):
        super().__init__(message)
        self.result = result


class RangeExhausted(RuntimeError):
    pass


class _Abort(Exception):
    pass


@dataclass(frozen=True)
class SearchConfig:
    d: int
    k: int
    n: int
    diregular: bool = False
    node_budget: Optional[int] = None
    time_budget: Optional[float] = None
    shards: int = 1
    workers: int = 1

    def __post_init__(self):
        if self.d < 1 or self.k < 1 or self.n < 1:
            raise ValueError("d, k and n must be positive")
        if self.node_budget is not None and self.node_budget <= 0:
            raise ValueError("node budget must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")
        if self.shards < 1 or self.workers < 1:
            raise ValueError("shards and workers must be >= 1")

    def to_dict(self) -> dict:
        return {
            "d": self.d, "k": self.k, "n": self.n, "diregular": self.diregular,
            "node_budget": self.node_budget, "time_budget": self.time_budget,
            "shards": self.shards, "workers": self.workers,
        }


@dataclass
class SearchResult:
    config: SearchConfig
    digraphs: list[Digraph] = field(default_factory=list)
    nodes: int = 0
    exhaustive: bool = True
    labelled_solutions: int = 0

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "count": len(self.digraphs),
            "exhaustive": self.exhaustive,
            "nodes": self.nodes,
            "labelled_solutions": self.labelled_solutions,
            "digraphs": [G.arcs() for G in self.digraphs],
        }

    def summary(self) -> str:
        state = "exhaustive" if self.exhaustive else "budget exceeded, incomplete"
        noun = "digraph" if len(self.digraphs) == 1 else "digraphs"
        return f"{len(self.digraphs)} {noun}, {state} ({self.nodes} nodes)"


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def tree_automorphisms(d: int, k: int, n: int) -> list[tuple[int, ...]]:
    """Automorphisms of the heap-numbered depth-``k`` d-ary tree, extended by the identity to ``n`` vertices."""
    internal = moore_bound(d, k - 1) if k > 1 else 1
    perms = list(permutations(range(d)))
    group = []
    for sigmas in product(perms, repeat=internal):
        g = list(range(n))
        for v in range(internal):
            gv = g[v]
            sigma = sigmas[v]
            for i in range(d):
                g[d * v + 1 + i] = d * gv + 1 + sigma[i]
        group.append(tuple(g))
    return group


def _tree_group_size(d: int, k: int) -> int:
    internal = moore_bound(d, k - 1) if k > 1 else 1
    f = 1
    for i in range(2, d + 1):
        f *= i
    return f ** internal


class _Search:
    def __init__(self, cfg: SearchConfig, shard: int = 0, symmetry: bool = True):
        self.cfg = cfg
        self.n, self.d, self.k = cfg.n, cfg.d, cfg.k
        self.shard = shard
        self.symmetry = symmetry
        self.out = [0] * self.n
        self.inn = [0] * self.n
        self.outdeg = [0] * self.n
        self.indeg = [0] * self.n
        self.nodes = 0
        self.prefixes = 0
        self.found: list[tuple[int, ...]] = []
        self.node_limit = None
        if cfg.node_budget is not None:
            self.node_limit = -(-cfg.node_budget // cfg.shards)
        self.deadline = None
        if cfg.time_budget is not None:
            self.deadline = time.monotonic() + cfg.time_budget
        self.tree_size = moore_bound(self.d, self.k)
        # vertices at depth < k of the fixed Moore tree
        self.internal = moore_bound(self.d, self.k - 1) if self.k > 1 else 1
        self.group: list[tuple[int, ...]] = []
        if symmetry and self.n >= self.tree_size and _tree_group_size(self.d, self.k) <= MAX_TREE_GROUP:
            self.group = tree_automorphisms(self.d, self.k, self.n)

    def _add(self, u: int, v: int):
        self.out[u] |= 1 << v
        self.inn[v] |= 1 << u
        self.outdeg[u] += 1
        self.indeg[v] += 1

    def _remove(self, u: int, v: int):
        self.out[u] &= ~(1 << v)
        self.inn[v] &= ~(1 << u)
        self.outdeg[u] -= 1
        self.indeg[v] -= 1

    def _sources(self, u: int) -> int:
        # vertices with a walk of length <= k-1 to u
        reach = layer = 1 << u
        for _ in range(self.k - 1):
            nxt = 0
            for y in _bits(layer):
                nxt |= self.inn[y]
            layer = nxt & ~reach
            if not layer:
                break
            reach |= layer
        return reach

    def _unique_walks_from(self, x: int) -> bool:
        out = self.out
        seen = layer = 1 << x
        for _ in range(self.k):
            nxt = 0
            for y in _bits(layer):
                o = out[y]
                if o & (seen | nxt):
                    return False
                nxt |= o
            if not nxt:
                return True
            seen |= nxt
            layer = nxt
        return True

    def _geodetic_after_arc(self, u: int) -> bool:
        return all(self._unique_walks_from(x) for x in _bits(self._sources(u)))

    def run(self) -> tuple[list[tuple[int, ...]], int, bool]:
        if self.n < self.tree_size or self.d >= self.n:
            return [], 0, True
        for i in range(self.internal):
            for c in range(self.d * i + 1, self.d * i + self.d + 1):
                self._add(i, c)
        if self.cfg.diregular and any(x > self.d for x in self.indeg):
            return [], 0, True
        try:
            self._vertex(self.internal, self.group)
        except _Abort:
            return self.found, self.nodes, False
        return self.found, self.nodes, True

    def _tick(self):
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise _Abort
        if self.deadline is not None and not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise _Abort

    def _vertex(self, u: int, stab: list[tuple[int, ...]]):
        if u == self.n:
            self.found.append(tuple(self.out))
            return
        self._choose(u, 0, self.d, [g for g in stab if g[u] == u])

    def _choose(self, u: int, start: int, remaining: int, stab: list[tuple[int, ...]]):
        if remaining == 0:
            S = self.out[u]
            keep = []
            for g in stab:
                image = 0
                for v in _bits(S):
                    image |= 1 << g[v]
                if image < S:
                    return
                if image == S:
                    keep.append(g)
            if u == self.internal and self.cfg.shards > 1:
                idx = self.prefixes
                self.prefixes += 1
                if idx % self.cfg.shards != self.shard:
                    return
            self._vertex(u + 1, keep)
            return
        n, d = self.n, self.d
        direg = self.cfg.diregular
        fresh_floor = None
        if self.symmetry:
            # least untouched vertex outside the tree, beyond u
            for y in range(max(u + 1, self.tree_size), n):
                if self.indeg[y] == 0:
                    fresh_floor = y
                    break
        for v in range(start, n - remaining + 1):
            if v == u or (direg and self.indeg[v] >= d):
                continue
            if (
                fresh_floor is not None and v > fresh_floor and v >= self.tree_size
                and self.indeg[v] == 0
            ):
                # v untouched and interchangeable with fresh_floor
                continue
            self._add(u, v)
            self._tick()
            if self._geodetic_after_arc(u):
                self._choose(u, v + 1, remaining - 1, stab)
            self._remove(u, v)


def _masks_to_digraph(n: int, masks: tuple[int, ...]) -> Digraph:
    return Digraph(n, tuple(tuple(_bits(m)) for m in masks))


def _run_shard(args) -> tuple[list[tuple[int, ...]], int, bool]:
    cfg, shard, symmetry = args
    return _Search(cfg, shard, symmetry).run()


def generate(cfg: SearchConfig, symmetry: bool = True) -> SearchResult:
    """All d-out-regular (optionally diregular) k-geodetic digraphs of order ``cfg.n``, up to isomorphism.

    On budget exhaustion the partial result is returned with
    ``exhaustive=False``. Representatives are canonically relabelled and
    sorted by canonical form, so results do not depend on sharding.
    """
    jobs = [(cfg, s, symmetry) for s in range(cfg.shards)]
    if cfg.shards > 1 and cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.workers, cfg.shards)) as pool:
            outcomes = list(pool.map(_run_shard, jobs))
    else:
        outcomes = [_run_shard(j) for j in jobs]
    classes: dict[bytes, Digraph] = {}
    nodes = 0
    exhaustive = True
    labelled = 0
    for found, shard_nodes, complete in outcomes:
        nodes += shard_nodes
        exhaustive &= complete
        labelled += len(found)
        for masks in found:
            G = _masks_to_digraph(cfg.n, masks)
            _post_check(G, cfg)
            key = canonical_form(G)
            if key not in classes:
                classes[key] = G
    reps = [canonical_digraph(classes[key]) for key in sorted(classes)]
    return SearchResult(cfg, reps, nodes, exhaustive, labelled)


def _post_check(G: Digraph, cfg: SearchConfig):
    ok_degree = is_diregular(G, cfg.d) if cfg.diregular else is_out_regular(G, cfg.d)
    if not ok_degree or not is_k_geodetic(G, cfg.k).is_geodetic:
        raise AssertionError("search emitted a digraph that fails independent verification")


def find_cage(
    d: int, k: int, n_start: int, n_max: int,
    node_budget: Optional[int] = None, time_budget: Optional[float] = None,
    diregular: bool = False,
) -> tuple[int, SearchResult]:
    """Smallest order in ``[n_start, n_max]`` admitting a k-geodetic digraph of out-degree d."""
    if n_start < moore_bound(d, k):
        raise ValueError(f"n_start must be at least the Moore bound {moore_bound(d, k)}")
    for n in range(n_start, n_max + 1):
        res = generate(SearchConfig(d, k, n, diregular, node_budget, time_budget))
        if not res.exhaustive:
            raise BudgetExceeded(f"budget exhausted at order {n}", res)
        if res.digraphs:
            return n, res
    raise RangeExhausted(f"no k-geodetic digraph with d={d}, k={k} of order {n_start}..{n_max}")


def verify_excess_one_nonexistence(
    d: int, k: int, node_budget: Optional[int] = None, time_budget: Optional[float] = None,
    shards: int = 1, workers: int = 1,
) -> CertificateReport:
    """Exhaustive diregular search at order ``M(d, k) + 1``; passes when nothing is found."""
    n = moore_bound(d, k) + 1
    if n > MAX_VERIFY_ORDER:
        raise ValueError(f"order {n} is beyond desk-scale search (limit {MAX_VERIFY_ORDER})")
    res = generate(SearchConfig(d, k, n, True, node_budget, time_budget, shards, workers))
    inputs = {"d": d, "k": k, "N": n}
    if not res.exhaustive:
        raise BudgetExceeded(f"search at order {n} did not finish", res)
    if res.digraphs:
        return CertificateReport.failed(
            "excess_one_nonexistence", inputs, found=len(res.digraphs),
            digraphs=[G.arcs() for G in res.digraphs], nodes=res.nodes,
        )
    return CertificateReport.ok("excess_one_nonexistence", inputs, nodes=res.nodes, exhaustive=True)


def digraph_file_name(G: Digraph) -> str:
    return hashlib.sha256(canonical_form(G)).hexdigest()[:16] + ".arcs"


def write_results(res: SearchResult, out_dir) -> Path:
    """Write one arc-list file per representative plus ``manifest.json``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    cfg = res.config
    for G in res.digraphs:
        name = digraph_file_name(G)
        note = f"d={cfg.d} k={cfg.k} n={cfg.n}{' diregular' if cfg.diregular else ''}"
        (out / name).write_text(serialize_arc_list(G, note), encoding="utf-8")
        files.append(name)
    manifest = {
        "config": cfg.to_dict(),
        "count": len(res.digraphs),
        "exhaustive": res.exhaustive,
        "nodes": res.nodes,
        "labelled_solutions": res.labelled_solutions,
        "files": files,
    }
    path = out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return path


def default_workers() -> int:
    return max(1, (os.cpu_count() or 1))
