import itertools
import random
from pathlib import Path

import pytest

from kgeodetic import Digraph, read_arc_list

DATA = Path(__file__).resolve().parent.parent / "data"


def diamond() -> Digraph:
    # u=0 -> a=1, b=2 -> v=3
    return Digraph.from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def path(n: int) -> Digraph:
    return Digraph.from_arcs(n, [(i, i + 1) for i in range(n - 1)])


def random_digraph(rng: random.Random, n: int, p: float = 0.4) -> Digraph:
    arcs = [(u, v) for u, v in itertools.permutations(range(n), 2) if rng.random() < p]
    return Digraph.from_arcs(n, arcs)


def random_out_regular(rng: random.Random, n: int, d: int) -> Digraph:
    arcs = []
    for u in range(n):
        for v in rng.sample([x for x in range(n) if x != u], d):
            arcs.append((u, v))
    return Digraph.from_arcs(n, arcs)


@pytest.fixture(scope="session")
def cage_a() -> Digraph:
    return read_arc_list(DATA / "cage_d2k3_a.arcs")


@pytest.fixture(scope="session")
def cage_b() -> Digraph:
    return read_arc_list(DATA / "cage_d2k3_b.arcs")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
