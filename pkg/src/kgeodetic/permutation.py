"""Permutations of vertex sets and their orbit decompositions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(self.image)
        if sorted(image) != list(range(len(image))):
            raise ValueError("image is not a bijection on [0, n)")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        image = list(range(n))
        for cyc in cycles:
            for i, v in enumerate(cyc):
                image[v] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(image))

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self ∘ other``: apply ``other`` first."""
        return Permutation(tuple(self.image[other.image[v]] for v in range(len(self))))

    def __pow__(self, e: int) -> "Permutation":
        if e < 0:
            return self.inverse() ** (-e)
        result = Permutation.identity(len(self))
        base = self
        while e:
            if e & 1:
                result = result.compose(base)
            base = base.compose(base)
            e >>= 1
        return result

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for v, w in enumerate(self.image):
            inv[w] = v
        return Permutation(tuple(inv))

    def fixed_points(self) -> list[int]:
        return [v for v, w in enumerate(self.image) if v == w]


@dataclass(frozen=True)
class OrbitPartition:
    """Disjoint vertex classes covering ``[0, n)``.

    Classes are ordered by representative. For partitions built by
    :func:`orbits`, each class lists its cycle starting from the
    representative.
    """

    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...] = field(default=())

    def __post_init__(self):
        classes = tuple(tuple(c) for c in self.classes)
        if any(not c for c in classes):
            raise ValueError("empty class")
        flat = sorted(v for c in classes for v in c)
        if flat != list(range(len(flat))):
            raise ValueError("classes must partition [0, n)")
        reps = tuple(self.representatives) or tuple(min(c) for c in classes)
        if len(reps) != len(classes) or any(r not in c for r, c in zip(reps, classes)):
            raise ValueError("each representative must belong to its class")
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "representatives", reps)

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[int]]) -> "OrbitPartition":
        """Build a partition with least-index representatives, classes sorted by them."""
        cl = sorted((tuple(c) for c in classes), key=min)
        return cls(tuple(cl))

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.classes)

    @property
    def w(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def class_of(self) -> list[int]:
        """Vertex -> class index lookup table."""
        idx = [0] * self.n
        for i, c in enumerate(self.classes):
            for v in c:
                idx[v] = i
        return idx

    def with_representatives(self, reps: Sequence[int]) -> "OrbitPartition":
        return OrbitPartition(self.classes, tuple(reps))

    def is_closed_under(self, p: Permutation) -> bool:
        return all(set(p(v) for v in c) == set(c) for c in self.classes)


@dataclass(frozen=True)
class PermutationStructure:
    """Counts ``m[j]`` of classes of size ``j``; zero counts are omitted."""

    m: dict[int, int]
    N: int

    def __post_init__(self):
        if any(c < 0 for c in self.m.values()):
            raise ValueError("negative orbit count")
        if sum(j * c for j, c in self.m.items()) != self.N:
            raise ValueError("sum of j*m_j must equal N")

    def count(self, j: int) -> int:
        return self.m.get(j, 0)

    @property
    def lengths(self) -> list[int]:
        return sorted(j for j, c in self.m.items() if c > 0)


def orbits(p: Permutation) -> OrbitPartition:
    """Cycle decomposition of ``p``; representative is the least vertex of each cycle."""
    seen = [False] * len(p)
    classes = []
    for v in range(len(p)):
        if seen[v]:
            continue
        cyc = []
        u = v
        while not seen[u]:
            seen[u] = True
            cyc.append(u)
            u = p(u)
        classes.append(tuple(cyc))
    return OrbitPartition(tuple(classes))


def permutation_structure(part: OrbitPartition) -> PermutationStructure:
    return PermutationStructure(dict(sorted(Counter(part.sizes).items())), part.n)


def validate_excess_one_structure(ps: PermutationStructure) -> tuple[bool, str]:
    """An outlier permutation has no fixed points and some orbit of length at least three."""
    if ps.count(1):
        return False, f"{ps.count(1)} fixed point(s): m_1 must be 0"
    if not any(j >= 3 for j in ps.lengths):
        return False, "no vertex of order at least 3"
    return True, "ok"


def index_omega(part: OrbitPartition) -> int:
    """Smallest class size."""
    return min(part.sizes)
