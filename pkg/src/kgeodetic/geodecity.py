"""Moore bound, bounded walk counting, k-geodecity, excess and outliers."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from .digraph import Digraph, degrees, is_diregular
from .permutation import Permutation

MANY = 2  # saturation value: "two or more walks"


class GeodecityError(ValueError):
    pass


class NotGeodetic(GeodecityError):
    pass


class DegreeTooLow(GeodecityError):
    pass


class NotExcessOne(GeodecityError):
    pass


class NotDiregular(GeodecityError):
    pass


class NonUniqueOutlier(GeodecityError):
    pass


def moore_bound(d: int, k: int) -> int:
    """``1 + d + d**2 + ... + d**k``."""
    if d < 1 or k < 1:
        raise ValueError("moore_bound needs d >= 1 and k >= 1")
    total = 0
    for _ in range(k + 1):
        total = total * d + 1
    return total


@dataclass(frozen=True)
class WalkCountMatrix:
    """Counts of walks of length ``0..k``, saturated at :data:`MANY`."""

    counts: tuple[tuple[int, ...], ...]
    k: int

    def __getitem__(self, uv: tuple[int, int]) -> int:
        u, v = uv
        return self.counts[u][v]

    def first_many(self) -> Optional[tuple[int, int]]:
        for u, row in enumerate(self.counts):
            for v, c in enumerate(row):
                if c >= MANY:
                    return (u, v)
        return None


def count_walks_upto(G: Digraph, k: int) -> WalkCountMatrix:
    if k < 1:
        raise ValueError("k must be >= 1")
    rows = []
    for u in range(G.n):
        total = [0] * G.n
        total[u] = 1
        layer = list(total)
        for _ in range(k):
            nxt = [0] * G.n
            for x, c in enumerate(layer):
                if c:
                    for y in G.out_adj[x]:
                        nxt[y] = min(MANY, nxt[y] + c)
            for y, c in enumerate(nxt):
                if c:
                    total[y] = min(MANY, total[y] + c)
            layer = nxt
            if not any(layer):
                break
        rows.append(tuple(total))
    return WalkCountMatrix(tuple(rows), k)


@dataclass(frozen=True)
class GeodecityReport:
    is_geodetic: bool
    witness: Optional[tuple[int, int]]
    n: int
    d: int
    k: int
    moore: int
    excess: Optional[int]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["witness"] = list(self.witness) if self.witness else None
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "GeodecityReport":
        data = dict(data)
        if data.get("witness") is not None:
            data["witness"] = tuple(data["witness"])
        return cls(**data)

    def to_text(self) -> str:
        w = "none" if self.witness is None else f"{self.witness[0]} {self.witness[1]}"
        ex = "undefined" if self.excess is None else str(self.excess)
        return "\n".join([
            f"n: {self.n}",
            f"d: {self.d}",
            f"k: {self.k}",
            f"geodetic: {str(self.is_geodetic).lower()}",
            f"witness: {w}",
            f"moore: {self.moore}",
            f"excess: {ex}",
        ])


def is_k_geodetic(G: Digraph, k: int, d: Optional[int] = None) -> GeodecityReport:
    """Check k-geodecity.

    ``d`` defaults to the minimum out-degree and is only used for the Moore
    bound and excess fields; excess is left undefined when the digraph is not
    geodetic or some out-degree is below ``d``.
    """
    outd, _ = degrees(G)
    min_out = min(outd, default=0)
    if d is None:
        d = max(min_out, 1)
    wc = count_walks_upto(G, k)
    witness = wc.first_many()
    moore = moore_bound(d, k)
    ok = witness is None
    excess_value = G.n - moore if ok and min_out >= d else None
    return GeodecityReport(ok, witness, G.n, d, k, moore, excess_value)


def excess(G: Digraph, d: int, k: int) -> int:
    outd, _ = degrees(G)
    if min(outd, default=0) < d:
        raise DegreeTooLow(f"minimum out-degree {min(outd, default=0)} < {d}")
    report = is_k_geodetic(G, k, d)
    if not report.is_geodetic:
        u, v = report.witness
        raise NotGeodetic(f"two walks of length <= {k} from {u} to {v}")
    return report.excess


def outlier_map(G: Digraph, d: int, k: int) -> Permutation:
    """The outlier function of an excess-one digraph, as a permutation."""
    if not is_diregular(G, d):
        raise NotDiregular(f"digraph is not diregular of degree {d}")
    eps = excess(G, d, k)
    if eps != 1:
        raise NotExcessOne(f"excess is {eps}, not 1")
    wc = count_walks_upto(G, k)
    image = []
    for u, row in enumerate(wc.counts):
        zeros = [v for v, c in enumerate(row) if c == 0]
        if len(zeros) != 1:
            raise NonUniqueOutlier(f"vertex {u} has {len(zeros)} vertices beyond distance {k}")
        image.append(zeros[0])
    try:
        return Permutation(tuple(image))
    except ValueError:
        raise NonUniqueOutlier("outlier function is not a bijection") from None


def verify_outlier_automorphism(G: Digraph, o: Permutation) -> tuple[bool, Optional[tuple[int, int]]]:
    """True iff ``o`` maps arcs onto arcs; otherwise the first arc whose image is missing.

    For a bijection on a finite vertex set this is equivalent to
    ``u -> v  <=>  o(u) -> o(v)``.
    """
    if len(o) != G.n:
        raise ValueError("permutation size does not match digraph order")
    out_sets = [set(x) for x in G.out_adj]
    for u, v in G.arcs():
        if o(v) not in out_sets[o(u)]:
            return False, (u, v)
    return True, None
