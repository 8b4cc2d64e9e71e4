"""Orbital-connection quotient of a digraph over a vertex partition."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

from .digraph import Digraph, is_out_regular
from .exact import IntMatrix
from .geodecity import count_walks_upto
from .permutation import OrbitPartition, Permutation
from .report import CertificateReport


class NotOutRegular(ValueError):
    pass


@dataclass(frozen=True)
class QuotientPseudodigraph:
    """Arc multiplicities between classes, counted from each class representative.

    ``mult[i][j]`` is the number of arcs from the representative of class
    ``i`` into class ``j``; diagonal entries are loops. Only shape is
    validated here so that synthetic integer matrices can be carried through
    the certificate checks; :attr:`is_pseudodigraph` reports whether the
    entries are non-negative with constant row sum.
    """

    mult: IntMatrix
    orbit_sizes: tuple[int, ...]
    d: int = field(default=-1)

    def __post_init__(self):
        if not isinstance(self.mult, IntMatrix):
            object.__setattr__(self, "mult", IntMatrix.of(self.mult))
        object.__setattr__(self, "orbit_sizes", tuple(self.orbit_sizes))
        if len(self.orbit_sizes) != self.mult.w:
            raise ValueError("one orbit size per quotient vertex required")
        if self.d == -1:
            sums = {sum(r) for r in self.mult.rows}
            object.__setattr__(self, "d", sums.pop() if len(sums) == 1 else -1)

    @property
    def w(self) -> int:
        return self.mult.w

    @property
    def N(self) -> int:
        return sum(self.orbit_sizes)

    @property
    def is_pseudodigraph(self) -> bool:
        return all(x >= 0 for r in self.mult.rows for x in r) and all(
            sum(r) == self.d for r in self.mult.rows
        )

    def to_text(self) -> str:
        lines = [f"{self.w} {self.d}"]
        lines.extend(" ".join(str(x) for x in r) for r in self.mult.rows)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, orbit_sizes=None) -> "QuotientPseudodigraph":
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        w, d = int(lines[0][0]), int(lines[0][1])
        rows = [[int(x) for x in ln] for ln in lines[1 : 1 + w]]
        sizes = tuple(orbit_sizes) if orbit_sizes is not None else (1,) * w
        return cls(IntMatrix.of(rows), sizes, d)


def _multiplicities(G: Digraph, part: OrbitPartition, reps=None) -> list[list[int]]:
    cls = part.class_of()
    reps = part.representatives if reps is None else reps
    rows = []
    for r in reps:
        row = [0] * part.w
        for v in G.out_adj[r]:
            row[cls[v]] += 1
        rows.append(row)
    return rows


def quotient(G: Digraph, part: OrbitPartition) -> QuotientPseudodigraph:
    if part.n != G.n:
        raise ValueError("partition does not cover the digraph's vertices")
    d = len(G.out_adj[0]) if G.n else 0
    if not is_out_regular(G, d):
        raise NotOutRegular("quotient requires an out-regular digraph")
    return QuotientPseudodigraph(IntMatrix.of(_multiplicities(G, part)), tuple(part.sizes), d)


def verify_lemma_properties(
    G: Digraph, k: int, part: OrbitPartition, outlier: Optional[Permutation] = None
) -> CertificateReport:
    """Unique short walks from each representative into every class.

    From ``v = rep(O_j)`` there must be exactly one walk of length <= k to
    every vertex outside ``O_j``, and to every vertex of ``O_j`` except one,
    the outlier of ``v``, which is unreachable within ``k`` steps. When
    ``outlier`` is omitted, the unreachable member is inferred.
    """
    inputs = {"n": G.n, "k": k, "w": part.w}
    wc = count_walks_upto(G, k)
    bad = wc.first_many()
    if bad is not None:
        return CertificateReport.failed(
            "lemma_properties", inputs, clause="geodetic", pair=list(bad),
            reason=f"two walks of length <= {k} from {bad[0]} to {bad[1]}",
        )
    cls = part.class_of()
    for j, rep in enumerate(part.representatives):
        row = wc.counts[rep]
        for x in range(G.n):
            if cls[x] != j and row[x] != 1:
                return CertificateReport.failed(
                    "lemma_properties", inputs, clause="i", orbit=j, representative=rep,
                    vertex=x, walks=row[x],
                )
        missing = [y for y in part.classes[j] if row[y] == 0]
        expected = outlier(rep) if outlier is not None else None
        if len(missing) != 1 or (expected is not None and missing[0] != expected):
            return CertificateReport.failed(
                "lemma_properties", inputs, clause="ii", orbit=j, representative=rep,
                unreachable=missing, expected_outlier=expected,
                reason="no outlier in own orbit" if not missing else "outlier mismatch",
            )
    return CertificateReport.ok("lemma_properties", inputs)


def _weighted_isomorphic(A: list[list[int]], B: list[list[int]]) -> bool:
    w = len(A)
    if sorted(map(sorted, A)) != sorted(map(sorted, B)):
        return False
    for perm in permutations(range(w)):
        if all(A[i][j] == B[perm[i]][perm[j]] for i in range(w) for j in range(w)):
            return True
    return False


def representative_invariance_check(
    G: Digraph, part: OrbitPartition, trials: int = 20, seed: int = 0, exhaustive: bool = False
) -> bool:
    """Quotients from other representative choices are isomorphic to the default one.

    Only meaningful when ``part`` is closed under an automorphism of ``G``;
    otherwise a ``False`` answer is expected. Limited to ``w <= 8``.
    """
    if part.w > 8:
        raise ValueError("representative invariance check limited to w <= 8")
    base = _multiplicities(G, part)
    if exhaustive:
        from itertools import product

        choices = product(*part.classes)
    else:
        rng = random.Random(seed)
        choices = (tuple(rng.choice(c) for c in part.classes) for _ in range(trials))
    return all(_weighted_isomorphic(base, _multiplicities(G, part, reps)) for reps in choices)


def equitable_check(G: Digraph, part: OrbitPartition) -> tuple[bool, Optional[dict]]:
    """Every vertex of a class sends the same number of arcs into each class.

    On failure the witness names two vertices of one class whose counts into
    a target class differ.
    """
    cls = part.class_of()
    for i, members in enumerate(part.classes):
        profiles = {}
        for x in members:
            row = [0] * part.w
            for v in G.out_adj[x]:
                row[cls[v]] += 1
            profiles[x] = row
        first = members[0]
        for x in members[1:]:
            if profiles[x] != profiles[first]:
                j = next(t for t in range(part.w) if profiles[x][t] != profiles[first][t])
                return False, {
                    "class": i, "target_class": j, "vertices": [first, x],
                    "counts": [profiles[first][j], profiles[x][j]],
                }
    return True, None
