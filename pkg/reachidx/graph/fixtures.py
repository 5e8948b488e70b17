"""Small named graphs used throughout the docs and tests (0-based ids)."""
from reachidx.graph.models import Dag


def chain(length: int) -> Dag:
    return Dag.from_edges(length, [(i, i + 1) for i in range(length - 1)])


def diamond() -> Dag:
    return Dag.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


CHAIN3 = chain(3)
CHAIN4 = chain(4)
DIAMOND = diamond()
